"""Groebner bases over the rationals.

Multivariate division with remainder, Buchberger completion to a reduced
basis, and presented ideals with canonical (reduced, sorted) bases that
make ideal membership decidable.

Every reduction draws on a step budget.  Exhausting the budget raises
``ResourceCapExceeded`` -- out of resources, never a wrong answer.
"""

from __future__ import annotations

from fractions import Fraction

from .poly import MPoly, order_key

DEFAULT_STEP_CAP = 10**6

# process-wide default, adjustable via the CLI environment hook
_step_cap = DEFAULT_STEP_CAP


def set_default_step_cap(cap):
    global _step_cap
    _step_cap = int(cap)


def default_step_cap():
    return _step_cap


class ResourceCapExceeded(RuntimeError):
    """The reduction-step budget ran out before the computation finished."""


class _Budget:
    __slots__ = ("left",)

    def __init__(self, cap):
        self.left = cap if cap is not None else default_step_cap()

    def spend(self, n=1):
        self.left -= n
        if self.left < 0:
            raise ResourceCapExceeded(
                "reduction step cap exceeded; raise the cap to continue"
            )


def _divides(small, big):
    return all(a <= b for a, b in zip(small, big))


def _prepare(basis, key):
    prepared = []
    for g in basis:
        if g.is_zero():
            continue
        exp, coeff = g.leading(key)
        prepared.append((exp, coeff, g))
    return prepared


def _reduce_terms(arity, work, prepared, key, budget):
    """Full remainder of the term dict ``work`` against a prepared basis."""
    remainder = {}
    while work:
        exp = max(work, key=key)
        coeff = work.pop(exp)
        for lead, lc, g in prepared:
            if _divides(lead, exp):
                budget.spend()
                shift = tuple(a - b for a, b in zip(exp, lead))
                factor = coeff / lc
                for gexp, gc in g.terms.items():
                    tgt = tuple(a + b for a, b in zip(gexp, shift))
                    if tgt == exp:
                        continue
                    acc = work.get(tgt, Fraction(0)) - factor * gc
                    if acc == 0:
                        work.pop(tgt, None)
                    else:
                        work[tgt] = acc
                break
        else:
            remainder[exp] = coeff
    return MPoly(arity, remainder)


def normal_form(p, basis, order="grevlex", cap=None):
    """Remainder of ``p`` under multivariate division by ``basis``.

    Unique (depends only on the residue class of ``p``) whenever ``basis``
    is a Groebner basis for the chosen order.
    """
    key = order_key(order)
    for g in basis:
        if g.arity != p.arity:
            raise ValueError("arity mismatch between polynomial and basis")
    return _reduce_terms(p.arity, dict(p.terms), _prepare(basis, key), key, _Budget(cap))


def s_polynomial(f, g, order="grevlex"):
    key = order_key(order)
    (ef, cf) = f.leading(key)
    (eg, cg) = g.leading(key)
    lcm = tuple(max(a, b) for a, b in zip(ef, eg))
    mf = MPoly.monomial(f.arity, tuple(a - b for a, b in zip(lcm, ef)), Fraction(1, 1) / cf)
    mg = MPoly.monomial(g.arity, tuple(a - b for a, b in zip(lcm, eg)), Fraction(1, 1) / cg)
    return mf * f - mg * g


def _monic(p, key):
    _, c = p.leading(key)
    return p.scale(Fraction(1, 1) / c)


def buchberger(generators, order="grevlex", cap=None):
    """Reduced Groebner basis of the ideal spanned by ``generators``.

    The result is autoreduced, monic and sorted by leading monomial, so
    equal ideals (over the same order) get structurally equal bases.
    """
    key = order_key(order)
    budget = _Budget(cap)
    arity = None
    basis = []
    for p in generators:
        if arity is None:
            arity = p.arity
        elif p.arity != arity:
            raise ValueError("generators have mixed arities")
        if not p.is_zero():
            basis.append(_monic(p, key))
    if arity is None:
        raise ValueError("cannot infer arity from an empty generator list; use IdealPres")
    if not basis:
        return []

    prepared = _prepare(basis, key)
    pairs = [(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))]

    def pair_weight(ij):
        # normal selection: smallest lcm of the leading monomials first
        return key(tuple(max(a, b) for a, b in zip(prepared[ij[0]][0], prepared[ij[1]][0])))

    while pairs:
        i, j = min(pairs, key=pair_weight)
        pairs.remove((i, j))
        budget.spend()
        lead_i, lead_j = prepared[i][0], prepared[j][0]
        if all(a == 0 or b == 0 for a, b in zip(lead_i, lead_j)):
            continue  # coprime leading monomials: S-polynomial reduces to zero
        s = s_polynomial(basis[i], basis[j], order)
        r = _reduce_terms(arity, dict(s.terms), prepared, key, budget)
        if not r.is_zero():
            r = _monic(r, key)
            basis.append(r)
            prepared.append((r.leading(key)[0], r.leading(key)[1], r))
            new = len(basis) - 1
            pairs.extend((k, new) for k in range(new))

    # minimalize: drop any element whose lead another element's lead divides
    leads = [g.leading(key)[0] for g in basis]
    minimal = []
    for i, g in enumerate(basis):
        dominated = False
        for j in range(len(basis)):
            if j == i or not _divides(leads[j], leads[i]):
                continue
            if leads[j] != leads[i] or j < i:  # equal leads: keep first only
                dominated = True
                break
        if not dominated:
            minimal.append(g)

    # autoreduce tails until stable
    changed = True
    while changed:
        changed = False
        for i in range(len(minimal)):
            others = minimal[:i] + minimal[i + 1 :]
            r = _reduce_terms(
                arity, dict(minimal[i].terms), _prepare(others, key), key, budget
            )
            if r.is_zero():
                minimal.pop(i)
                changed = True
                break
            r = _monic(r, key)
            if r != minimal[i]:
                minimal[i] = r
                changed = True
                break

    minimal.sort(key=lambda g: key(g.leading(key)[0]))
    return minimal


class IdealPres:
    """An ideal of Q[x1..xn] presented by generators plus a reduced basis."""

    __slots__ = ("arity", "generators", "order", "groebner")

    def __init__(self, arity, generators=(), order="grevlex", cap=None):
        order_key(order)  # validate tag
        gens = []
        for p in generators:
            if p.arity != arity:
                raise ValueError("generator arity %d does not match ideal arity %d" % (p.arity, arity))
            if not p.is_zero():
                gens.append(p)
        self.arity = arity
        self.generators = tuple(gens)
        self.order = order
        self.groebner = tuple(buchberger(gens, order, cap)) if gens else ()

    def normal_form(self, p, cap=None):
        if p.arity != self.arity:
            raise ValueError("arity mismatch: polynomial has %d variables, ideal %d" % (p.arity, self.arity))
        if not self.groebner:
            return p
        return normal_form(p, self.groebner, self.order, cap)

    def contains(self, p):
        return self.normal_form(p).is_zero()

    def is_trivial(self):
        """True when the ideal is the whole ring (1 reduces everything)."""
        return any(g.is_constant() and not g.is_zero() for g in self.groebner)

    def is_empty(self):
        return not self.groebner

    def __eq__(self, other):
        if not isinstance(other, IdealPres):
            return NotImplemented
        return (
            self.arity == other.arity
            and self.order == other.order
            and self.groebner == other.groebner
        )

    def __hash__(self):
        return hash((self.arity, self.order, self.groebner))

    def __repr__(self):
        return "IdealPres(arity=%d, groebner=%r)" % (self.arity, list(self.groebner))


def ideal_membership(p, ideal):
    """True iff ``p`` reduces to zero against the ideal's basis."""
    return ideal.contains(p)
