"""Presented commutative algebras Q[x1..xn]/I, their morphisms and derivations.

Every element is canonicalized by normal form against the ideal's reduced
Groebner basis, so equality of residue classes is equality of stored
polynomials.
"""

from __future__ import annotations

from .groebner import IdealPres
from .poly import MPoly, parse_poly, poly_to_string
from .verdict import VerdictReport


class AlgebraPres:
    """A commutative unitary Q-algebra presented by variables and an ideal."""

    __slots__ = ("variables", "ideal")

    def __init__(self, variables, ideal=None, order="grevlex"):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError("duplicate variable names")
        if ideal is None:
            ideal = IdealPres(len(variables), (), order)
        if ideal.arity != len(variables):
            raise ValueError("ideal arity does not match the variable count")
        if ideal.is_trivial():
            raise ValueError("ideal contains 1; the quotient algebra is zero")
        self.variables = variables
        self.ideal = ideal

    @classmethod
    def free(cls, *names):
        return cls(names)

    @classmethod
    def scalars(cls):
        """The ground field Q, presented with no variables."""
        return cls(())

    @property
    def arity(self):
        return len(self.variables)

    def is_free(self):
        return self.ideal.is_empty()

    def nf(self, p):
        return self.ideal.normal_form(p)

    def zero(self):
        return MPoly.zero(self.arity)

    def one(self):
        return MPoly.one(self.arity)

    def const(self, value):
        return MPoly.const(self.arity, value)

    def variable(self, which):
        if isinstance(which, str):
            which = self.variables.index(which)
        return MPoly.variable(self.arity, which)

    def parse(self, text):
        return self.nf(parse_poly(text, self.variables))

    def render(self, p):
        return poly_to_string(p, self.variables, self.ideal.order)

    def tensor(self, other):
        """Tensor product over Q: disjoint variables, union of lifted ideals.

        Returns (algebra, left_renaming, right_renaming); colliding right
        variable names get a numeric suffix.
        """
        left_names = list(self.variables)
        used = set(left_names)
        right_names = []
        right_renaming = {}
        for name in other.variables:
            candidate = name
            k = 1
            while candidate in used:
                candidate = "%s_%d" % (name, k)
                k += 1
            used.add(candidate)
            right_names.append(candidate)
            if candidate != name:
                right_renaming[name] = candidate
        arity = len(left_names) + len(right_names)
        gens = [g.lift(arity, 0) for g in self.ideal.generators]
        gens += [g.lift(arity, len(left_names)) for g in other.ideal.generators]
        algebra = AlgebraPres(
            left_names + right_names,
            IdealPres(arity, gens, self.ideal.order),
        )
        return algebra, {}, right_renaming

    def __eq__(self, other):
        if not isinstance(other, AlgebraPres):
            return NotImplemented
        return self.variables == other.variables and self.ideal == other.ideal

    def __hash__(self):
        return hash((self.variables, self.ideal))

    def __repr__(self):
        if self.ideal.is_empty():
            return "AlgebraPres(%r)" % (list(self.variables),)
        return "AlgebraPres(%r mod %r)" % (
            list(self.variables),
            [self.render(g) for g in self.ideal.groebner],
        )


class AlgMorphism:
    """An algebra map, stored as one target element per source variable."""

    __slots__ = ("source", "target", "images", "_report")

    def __init__(self, source, target, images):
        images = [target.nf(q) for q in images]
        if len(images) != source.arity:
            raise ValueError(
                "expected %d images, got %d" % (source.arity, len(images))
            )
        for q in images:
            if q.arity != target.arity:
                raise ValueError("image arity does not match the target algebra")
        self.source = source
        self.target = target
        self.images = tuple(images)
        self._report = None

    @classmethod
    def identity(cls, algebra):
        return cls(algebra, algebra, [algebra.variable(i) for i in range(algebra.arity)])

    def check(self):
        """Pass iff every source-ideal generator maps into the target ideal."""
        if self._report is not None:
            return self._report
        report = VerdictReport()
        for g in self.source.ideal.generators:
            image = self.target.nf(g.subs(list(self.images)))
            report.add(
                "generator %s maps into the target ideal" % self.source.render(g),
                image.is_zero(),
                "normal form of the image is %s" % self.target.render(image),
            )
        if not self.source.ideal.generators:
            report.add("source ideal is empty", True)
        self._report = report
        return report

    def apply(self, p):
        """Substitute variable images, then reduce in the target."""
        self.check().require("morphism does not map the ideal into the ideal")
        if p.arity != self.source.arity:
            raise ValueError("element arity does not match the source algebra")
        if self.source.arity == 0:
            return self.target.const(p.constant_value())
        return self.target.nf(p.subs(list(self.images)))

    def compose(self, then):
        """The composite ``then . self`` (self: A->B, then: B->C)."""
        if then.source != self.target:
            raise ValueError("morphisms are not composable")
        return AlgMorphism(self.source, then.target, [then.apply(q) for q in self.images])

    def __eq__(self, other):
        if not isinstance(other, AlgMorphism):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.images == other.images
        )

    def __repr__(self):
        body = ", ".join(
            "%s->%s" % (name, self.target.render(q))
            for name, q in zip(self.source.variables, self.images)
        )
        return "AlgMorphism(%s)" % body


class Derivation:
    """A K-linear derivation of an algebra, stored by variable images.

    Well-definedness on the quotient requires the Leibniz extension to map
    the ideal into itself; checking the Groebner generators suffices since
    every ideal element is an algebra combination of them.
    """

    __slots__ = ("algebra", "images", "_report")

    def __init__(self, algebra, images):
        images = [algebra.nf(q) for q in images]
        if len(images) != algebra.arity:
            raise ValueError(
                "expected %d images, got %d" % (algebra.arity, len(images))
            )
        self.algebra = algebra
        self.images = tuple(images)
        self._report = None

    @classmethod
    def zero(cls, algebra):
        return cls(algebra, [algebra.zero()] * algebra.arity)

    @classmethod
    def partial(cls, algebra, index):
        images = [
            algebra.one() if i == index else algebra.zero()
            for i in range(algebra.arity)
        ]
        return cls(algebra, images)

    def _extend(self, p):
        out = MPoly.zero(self.algebra.arity)
        for i, image in enumerate(self.images):
            if image.is_zero():
                continue
            out = out + p.partial(i) * image
        return out

    def check(self):
        if self._report is not None:
            return self._report
        report = VerdictReport()
        for g in self.algebra.ideal.groebner:
            value = self.algebra.nf(self._extend(g))
            report.add(
                "ideal generator %s stays in the ideal" % self.algebra.render(g),
                value.is_zero(),
                "derivative has normal form %s" % self.algebra.render(value),
            )
        if not self.algebra.ideal.groebner:
            report.add("free algebra: every derivation preserves the zero ideal", True)
        self._report = report
        return report

    def apply(self, p):
        """Leibniz extension from the variable images, in normal form."""
        self.check().require("derivation does not preserve the ideal")
        if p.arity != self.algebra.arity:
            raise ValueError("element arity does not match the algebra")
        return self.algebra.nf(self._extend(p))

    def commutator(self, other):
        if other.algebra != self.algebra:
            raise ValueError("derivations live on different algebras")
        images = [
            self.algebra.nf(self.apply(other.images[i]) - other.apply(self.images[i]))
            for i in range(self.algebra.arity)
        ]
        return Derivation(self.algebra, images)

    def scaled(self, a):
        return Derivation(self.algebra, [self.algebra.nf(a * q) for q in self.images])

    def __add__(self, other):
        if other.algebra != self.algebra:
            raise ValueError("derivations live on different algebras")
        return Derivation(
            self.algebra,
            [self.algebra.nf(p + q) for p, q in zip(self.images, other.images)],
        )

    def __neg__(self):
        return Derivation(self.algebra, [-q for q in self.images])

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, Derivation):
            return NotImplemented
        return self.algebra == other.algebra and self.images == other.images

    def __repr__(self):
        body = ", ".join(
            "%s->%s" % (name, self.algebra.render(q))
            for name, q in zip(self.algebra.variables, self.images)
        )
        return "Derivation(%s)" % body


def check_morphism(m):
    return m.check()


def apply_morphism(m, a):
    return m.apply(a)


def check_derivation(d):
    return d.check()


def apply_derivation(d, a):
    return d.apply(a)
