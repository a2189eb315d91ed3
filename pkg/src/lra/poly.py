"""Exact multivariate polynomial arithmetic over the rationals.

A polynomial is stored as a mapping from exponent tuples to nonzero
``Fraction`` coefficients; the number of variables (arity) is fixed per
polynomial.  Everything is exact -- no floats anywhere.

This module also owns the text grammar shared by all document formats:
terms like ``3/2*x^2*y`` joined by ``+`` and ``-``, with variable names
declared externally (per algebra).
"""

from __future__ import annotations

import re
from fractions import Fraction


def grevlex_key(exp):
    """Graded reverse lexicographic key; larger key means larger monomial."""
    return (sum(exp), tuple(-e for e in reversed(exp)))


def grlex_key(exp):
    return (sum(exp), exp)


def lex_key(exp):
    return exp


MONOMIAL_ORDERS = {"grevlex": grevlex_key, "grlex": grlex_key, "lex": lex_key}


def order_key(order):
    try:
        return MONOMIAL_ORDERS[order]
    except KeyError:
        raise ValueError("unknown monomial order %r" % (order,)) from None


def _as_fraction(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError("coefficients must be integers or Fractions, got %r" % (value,))


class MPoly:
    """A multivariate polynomial with a fixed arity.

    ``terms`` maps exponent tuples to nonzero Fractions; zero coefficients
    are never stored, so equality of polynomials is dict equality.
    """

    __slots__ = ("arity", "terms")

    def __init__(self, arity, terms=None):
        if arity < 0:
            raise ValueError("arity must be nonnegative")
        self.arity = arity
        clean = {}
        if terms:
            for exp, coeff in terms.items():
                exp = tuple(exp)
                if len(exp) != arity:
                    raise ValueError(
                        "exponent %r does not match arity %d" % (exp, arity)
                    )
                if any(e < 0 for e in exp):
                    raise ValueError("negative exponent in %r" % (exp,))
                coeff = _as_fraction(coeff)
                if coeff != 0:
                    clean[exp] = coeff
        self.terms = clean

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls, arity):
        return cls(arity)

    @classmethod
    def const(cls, arity, value):
        value = _as_fraction(value)
        if value == 0:
            return cls(arity)
        return cls(arity, {(0,) * arity: value})

    @classmethod
    def one(cls, arity):
        return cls.const(arity, 1)

    @classmethod
    def variable(cls, arity, index):
        if not 0 <= index < arity:
            raise ValueError("variable index %d out of range for arity %d" % (index, arity))
        exp = tuple(1 if i == index else 0 for i in range(arity))
        return cls(arity, {exp: Fraction(1)})

    @classmethod
    def monomial(cls, arity, exp, coeff=1):
        return cls(arity, {tuple(exp): _as_fraction(coeff)})

    # -- predicates / accessors ---------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self):
        return self.terms.get((0,) * self.arity, Fraction(0))

    def coeff(self, exp):
        return self.terms.get(tuple(exp), Fraction(0))

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def leading(self, key=grevlex_key):
        """Leading (exponent, coefficient) under the given key; None if zero."""
        if not self.terms:
            return None
        exp = max(self.terms, key=key)
        return exp, self.terms[exp]

    # -- arithmetic ----------------------------------------------------

    def _check_same_arity(self, other):
        if self.arity != other.arity:
            raise ValueError(
                "arity mismatch: %d vs %d" % (self.arity, other.arity)
            )

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(self.arity, other)
        self._check_same_arity(other)
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            acc = terms.get(exp, Fraction(0)) + c
            if acc == 0:
                terms.pop(exp, None)
            else:
                terms[exp] = acc
        return MPoly(self.arity, terms)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.arity, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(self.arity, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check_same_arity(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                acc = out.get(exp, Fraction(0)) + c1 * c2
                if acc == 0:
                    out.pop(exp, None)
                else:
                    out[exp] = acc
        return MPoly(self.arity, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def scale(self, value):
        value = _as_fraction(value)
        if value == 0:
            return MPoly(self.arity)
        return MPoly(self.arity, {e: c * value for e, c in self.terms.items()})

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = MPoly.one(self.arity)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def partial(self, index):
        """Formal partial derivative with respect to variable ``index``."""
        if not 0 <= index < self.arity:
            raise ValueError("variable index out of range")
        out = {}
        for exp, c in self.terms.items():
            e = exp[index]
            if e == 0:
                continue
            lowered = exp[:index] + (e - 1,) + exp[index + 1 :]
            acc = out.get(lowered, Fraction(0)) + c * e
            if acc == 0:
                out.pop(lowered, None)
            else:
                out[lowered] = acc
        return MPoly(self.arity, out)

    def subs(self, images):
        """Substitute ``images[i]`` (all of one common arity) for variable i."""
        if len(images) != self.arity:
            raise ValueError(
                "expected %d images, got %d" % (self.arity, len(images))
            )
        if images:
            target_arity = images[0].arity
            for q in images:
                if q.arity != target_arity:
                    raise ValueError("substitution images have mixed arities")
        else:
            target_arity = 0
        # cache powers of each image
        powers = [{0: MPoly.one(target_arity)} for _ in images]

        def power(i, e):
            cache = powers[i]
            if e not in cache:
                cache[e] = power(i, e - 1) * images[i]
            return cache[e]

        out = MPoly.zero(target_arity)
        for exp, c in self.terms.items():
            term = MPoly.const(target_arity, c)
            for i, e in enumerate(exp):
                if e:
                    term = term * power(i, e)
            out = out + term
        return out

    def lift(self, arity, offset=0):
        """Reinterpret in a larger variable list, shifting variables by ``offset``."""
        if offset < 0 or offset + self.arity > arity:
            raise ValueError("lift does not fit target arity")
        out = {}
        for exp, c in self.terms.items():
            new = (0,) * offset + exp + (0,) * (arity - offset - self.arity)
            out[new] = c
        return MPoly(arity, out)

    # -- comparisons ----------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(self.arity, other)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.arity == other.arity and self.terms == other.terms

    def __hash__(self):
        return hash((self.arity, frozenset(self.terms.items())))

    def __repr__(self):
        return "MPoly(%d, %r)" % (self.arity, self.terms)

    def __bool__(self):
        return bool(self.terms)


# -- text format -------------------------------------------------------


class PolyParseError(ValueError):
    """Syntax error in the polynomial grammar, with 1-based position."""

    def __init__(self, message, line, column):
        super().__init__("%s (line %d, column %d)" % (message, line, column))
        self.line = line
        self.column = column


_TOKEN_RE = re.compile(r"(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^])")


class _Tokens:
    def __init__(self, text):
        self.text = text
        self.pos = 0
        self.items = []
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
                continue
            m = _TOKEN_RE.match(text, i)
            if m is None:
                raise PolyParseError("unexpected character %r" % ch, *_line_col(text, i))
            kind = m.lastgroup
            self.items.append((kind, m.group(), i))
            i = m.end()
        self.items.append(("end", "", len(text)))

    def peek(self):
        return self.items[self.pos]

    def advance(self):
        tok = self.items[self.pos]
        if tok[0] != "end":
            self.pos += 1
        return tok

    def error(self, message, tok=None):
        tok = tok or self.peek()
        raise PolyParseError(message, *_line_col(self.text, tok[2]))


def _line_col(text, index):
    line = text.count("\n", 0, index) + 1
    last_nl = text.rfind("\n", 0, index)
    return line, index - last_nl


def parse_poly(text, names):
    """Parse a polynomial in the declared variables ``names``.

    Grammar: ``poly := [-] term {(+|-) term}``; ``term := factor {* factor}``;
    ``factor := int [/ int] | name [^ int]``.
    """
    index = {name: i for i, name in enumerate(names)}
    arity = len(names)
    toks = _Tokens(text)
    result = MPoly.zero(arity)

    def parse_int(what):
        kind, value, _ = toks.peek()
        if kind != "num":
            toks.error("expected %s" % what)
        toks.advance()
        return int(value)

    def parse_factor():
        kind, value, _ = toks.peek()
        if kind == "num":
            toks.advance()
            coeff = Fraction(int(value))
            if toks.peek()[:2] == ("op", "/"):
                toks.advance()
                den = parse_int("denominator")
                if den == 0:
                    toks.error("zero denominator")
                coeff /= den
            return MPoly.const(arity, coeff)
        if kind == "name":
            toks.advance()
            if value not in index:
                raise PolyParseError(
                    "unknown variable %r" % value, *_line_col(text, toks.items[toks.pos - 1][2])
                )
            exponent = 1
            if toks.peek()[:2] == ("op", "^"):
                toks.advance()
                exponent = parse_int("exponent")
            return MPoly.variable(arity, index[value]) ** exponent
        toks.error("expected a coefficient or variable")

    def parse_term():
        factor = parse_factor()
        while toks.peek()[:2] == ("op", "*"):
            toks.advance()
            factor = factor * parse_factor()
        return factor

    negative = False
    if toks.peek()[:2] == ("op", "-"):
        toks.advance()
        negative = True
    term = parse_term()
    result = result + (-term if negative else term)
    while True:
        kind, value, _ = toks.peek()
        if kind == "end":
            break
        if (kind, value) == ("op", "+"):
            toks.advance()
            result = result + parse_term()
        elif (kind, value) == ("op", "-"):
            toks.advance()
            result = result - parse_term()
        else:
            toks.error("expected '+' or '-'")
    return result


def poly_to_string(p, names, order="grevlex"):
    """Canonical rendering; ``parse_poly`` inverts it exactly."""
    if len(names) != p.arity:
        raise ValueError("name list does not match arity")
    if p.is_zero():
        return "0"
    key = order_key(order)
    pieces = []
    for exp in sorted(p.terms, key=key, reverse=True):
        coeff = p.terms[exp]
        mono = "*".join(
            name if e == 1 else "%s^%d" % (name, e)
            for name, e in zip(names, exp)
            if e
        )
        mag = abs(coeff)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = "%s*%s" % (mag, mono)
        pieces.append(("-" if coeff < 0 else "+", body))
    sign, body = pieces[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in pieces[1:]:
        out += " %s %s" % (sign, body)
    return out


def monomials_up_to(arity, degree):
    """All exponent tuples of total degree <= degree, in grevlex order."""
    out = []

    def rec(prefix, remaining, slots):
        if slots == 0:
            out.append(tuple(prefix))
            return
        for e in range(remaining + 1):
            rec(prefix + [e], remaining - e, slots - 1)

    rec([], degree, arity)
    out.sort(key=grevlex_key)
    return out
