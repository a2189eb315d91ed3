"""Direct sums and twisted sums of pseudoalgebras along an algebra map.

Given pseudoalgebras E over A and F over B and an algebra map psi: A -> B,
the twisted sum lives inside (E tensor_A B) + F.  Because E is free, the
tensor factor is the free B-module on E's basis, so a mixed element is a
vector of B-coefficients on E's basis plus an element of F.  The kernel
ideal of the multiplication map A tensor B -> B is never materialized:
membership is decided by the equivalent identity

    sum_i psi([X_i, a]) b_i  =  [Y, psi(a)]   for all a in A,

checked on the variables of A only -- both sides are psi-twisted
derivations in a, so agreement on generators propagates to all of A (the
sampling test in the suite guards this reduction).
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import Derivation
from .pseudoalgebra import PAlg, PAElement, bracket, anchor_apply, axioms_check
from .verdict import VerdictReport, VerificationError


class PsiSumCtx:
    """Two pseudoalgebras joined along a verified algebra map psi: A -> B."""

    __slots__ = ("e", "f", "psi")

    def __init__(self, e, f, psi):
        if psi.source != e.algebra or psi.target != f.algebra:
            raise ValueError("psi must map E's algebra into F's algebra")
        psi.check().require("psi is not an algebra morphism")
        axioms_check(e).require("the first summand fails its axioms")
        axioms_check(f).require("the second summand fails its axioms")
        self.e = e
        self.f = f
        self.psi = psi

    def zero(self):
        b = self.f.algebra
        return MixedElement(self, [b.zero()] * self.e.rank, [b.zero()] * self.f.rank)

    def tensor_generator(self, i, coeff=None):
        """The element e_i tensor coeff (coeff defaults to 1)."""
        b = self.f.algebra
        tensor = [b.zero()] * self.e.rank
        tensor[i] = b.one() if coeff is None else coeff
        return MixedElement(self, tensor, [b.zero()] * self.f.rank)

    def f_generator(self, j):
        b = self.f.algebra
        f_part = [b.zero()] * self.f.rank
        f_part[j] = b.one()
        return MixedElement(self, [b.zero()] * self.e.rank, f_part)


class MixedElement:
    """An element of (E tensor_A B) + F in free-module normal form.

    ``tensor`` holds one B-coefficient per E-basis vector (coefficients on
    one basis vector are always merged); ``f_part`` holds B-coordinates on
    F's basis.  All entries are reduced modulo B's ideal.
    """

    __slots__ = ("ctx", "tensor", "f_part")

    def __init__(self, ctx, tensor, f_part):
        b = ctx.f.algebra
        tensor = [b.nf(c) for c in tensor]
        f_part = [b.nf(c) for c in f_part]
        if len(tensor) != ctx.e.rank:
            raise ValueError("tensor part needs one coefficient per E-basis vector")
        if len(f_part) != ctx.f.rank:
            raise ValueError("F-part needs one coordinate per F-basis vector")
        self.ctx = ctx
        self.tensor = tuple(tensor)
        self.f_part = tuple(f_part)

    @classmethod
    def from_pairs(cls, ctx, pairs, f_coords=None):
        """Build from (E-basis index, B-coefficient) pairs, merging indices."""
        b = ctx.f.algebra
        tensor = [b.zero()] * ctx.e.rank
        for index, coeff in pairs:
            tensor[index] = tensor[index] + coeff
        if f_coords is None:
            f_coords = [b.zero()] * ctx.f.rank
        return cls(ctx, tensor, f_coords)

    def f_element(self):
        return PAElement(self.ctx.f, list(self.f_part))

    def is_zero(self):
        return all(c.is_zero() for c in self.tensor) and all(
            c.is_zero() for c in self.f_part
        )

    def _same_ctx(self, other):
        if self.ctx is not other.ctx and (
            self.ctx.e != other.ctx.e
            or self.ctx.f != other.ctx.f
            or self.ctx.psi != other.ctx.psi
        ):
            raise ValueError("mixed elements belong to different twisted sums")

    def __add__(self, other):
        self._same_ctx(other)
        return MixedElement(
            self.ctx,
            [a + b for a, b in zip(self.tensor, other.tensor)],
            [a + b for a, b in zip(self.f_part, other.f_part)],
        )

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return MixedElement(self.ctx, [-c for c in self.tensor], [-c for c in self.f_part])

    def scale(self, b_elem):
        """Multiply by an element of B (the sum is a B-module)."""
        return MixedElement(
            self.ctx,
            [b_elem * c for c in self.tensor],
            [b_elem * c for c in self.f_part],
        )

    def __eq__(self, other):
        if not isinstance(other, MixedElement):
            return NotImplemented
        return (
            self.ctx.e == other.ctx.e
            and self.ctx.f == other.ctx.f
            and self.ctx.psi == other.ctx.psi
            and self.tensor == other.tensor
            and self.f_part == other.f_part
        )

    def __repr__(self):
        b = self.ctx.f.algebra
        return "MixedElement(tensor=%s, f=%s)" % (
            [b.render(c) for c in self.tensor],
            [b.render(c) for c in self.f_part],
        )


# -- the direct sum ------------------------------------------------------


@dataclass
class DirectSum:
    """A direct sum pseudoalgebra over the tensor algebra.

    ``left_vars``/``right_vars`` record how the factor variables appear in
    the tensor algebra (right-hand names may have been renamed to avoid
    collisions; the renaming is part of the result).
    """

    palg: PAlg
    left_vars: dict
    right_vars: dict

    @property
    def renamed(self):
        return {k: v for k, v in self.right_vars.items() if k != v}


def direct_sum(e, f):
    """The direct sum of two pseudoalgebras over the tensor product algebra.

    Basis: E's basis followed by F's basis.  Anchors act through the
    factor they came from; cross brackets vanish; brackets within a factor
    keep their structure coefficients, lifted to the tensor algebra.
    """
    axioms_check(e).require("the first summand fails its axioms")
    axioms_check(f).require("the second summand fails its axioms")
    a, b = e.algebra, f.algebra
    tensor_algebra, _, right_renaming = a.tensor(b)
    n_left = a.arity
    arity = tensor_algebra.arity

    def lift_left(p):
        return p.lift(arity, 0)

    def lift_right(p):
        return p.lift(arity, n_left)

    anchors = []
    for d in e.anchors:
        images = [lift_left(q) for q in d.images] + [tensor_algebra.zero()] * b.arity
        anchors.append(Derivation(tensor_algebra, images))
    for d in f.anchors:
        images = [tensor_algebra.zero()] * a.arity + [lift_right(q) for q in d.images]
        anchors.append(Derivation(tensor_algebra, images))

    rank = e.rank + f.rank
    structure = {}
    for i in range(e.rank):
        for j in range(i + 1, e.rank):
            row = [lift_left(c) for c in e.structure[(i, j)]]
            structure[(i, j)] = row + [tensor_algebra.zero()] * f.rank
    for i in range(f.rank):
        for j in range(i + 1, f.rank):
            row = [lift_right(c) for c in f.structure[(i, j)]]
            structure[(e.rank + i, e.rank + j)] = [tensor_algebra.zero()] * e.rank + row
    # cross brackets [e_i, f_j] are zero: omitted entries default to zero

    palg = PAlg(tensor_algebra, rank, anchors, structure)
    left_vars = {name: name for name in a.variables}
    right_vars = {name: right_renaming.get(name, name) for name in b.variables}
    return DirectSum(palg, left_vars, right_vars)


# -- membership and structure maps ---------------------------------------


def _membership_identity_holds(ctx, z, a):
    """The defining identity of the twisted sum, tested at one element a of A."""
    b_alg = ctx.f.algebra
    lhs = b_alg.zero()
    for i, coeff in enumerate(z.tensor):
        if coeff.is_zero():
            continue
        lhs = lhs + ctx.psi.apply(ctx.e.anchors[i].apply(a)) * coeff
    rhs = anchor_apply(z.f_element(), ctx.psi.apply(a))
    return b_alg.nf(lhs) == b_alg.nf(rhs)


def membership(ctx, z):
    """Decide membership of a mixed element in the twisted sum."""
    return membership_report(ctx, z).verdict


def membership_report(ctx, z):
    report = VerdictReport()
    a_alg = ctx.e.algebra
    for v in range(a_alg.arity):
        var = a_alg.variable(v)
        report.add(
            "membership identity at %s" % a_alg.variables[v],
            _membership_identity_holds(ctx, z, var),
            "sum_i psi([X_i, %s]) b_i differs from [Y, psi(%s)]"
            % (a_alg.variables[v], a_alg.variables[v]),
        )
    if a_alg.arity == 0:
        report.add("membership identity is vacuous over the scalars", True)
    return report


def psisum_anchor(ctx, z, b_elem):
    """Anchor of the twisted sum: only the F-part acts."""
    if not membership(ctx, z):
        raise VerificationError(
            "anchor is only defined on members of the twisted sum",
            membership_report(ctx, z),
        )
    return anchor_apply(z.f_element(), b_elem)


def psisum_bracket(ctx, z1, z2, check=True):
    """Bracket of two members of the twisted sum.

    [sum_i e_i@b_i + Y, sum_j e_j@b'_j + Y']
      = sum_{i,j} [e_i, e_j]@(b_i b'_j) + sum_j e_j@[Y, b'_j]
        - sum_i e_i@[Y', b_i] + [Y, Y'],
    with A-coefficients of [e_i, e_j] pushed through psi into B.
    """
    z1._same_ctx(z2)
    if check:
        for label, z in (("first", z1), ("second", z2)):
            if not membership(ctx, z):
                raise VerificationError(
                    "%s argument is not a member of the twisted sum" % label,
                    membership_report(ctx, z),
                )
    b_alg = ctx.f.algebra
    y1 = z1.f_element()
    y2 = z2.f_element()
    tensor = [b_alg.zero()] * ctx.e.rank
    for i, bi in enumerate(z1.tensor):
        if bi.is_zero():
            continue
        for j, bj in enumerate(z2.tensor):
            if bj.is_zero() or i == j:
                continue
            prod = b_alg.nf(bi * bj)
            if prod.is_zero():
                continue
            for k, c in enumerate(ctx.e.struct_coeffs(i, j)):
                if not c.is_zero():
                    tensor[k] = tensor[k] + ctx.psi.apply(c) * prod
    for k in range(ctx.e.rank):
        tensor[k] = tensor[k] + anchor_apply(y1, z2.tensor[k]) - anchor_apply(y2, z1.tensor[k])
    f_part = bracket(y1, y2).coords
    return MixedElement(ctx, tensor, list(f_part))


# -- the triple sum ------------------------------------------------------


class TripleSumCtx:
    """Three pseudoalgebras chained along composable algebra maps.

    Elements of the left association ((E + F along psi) + G along theta)
    are stored as a list of (member of the inner sum, coefficient in C)
    pairs plus an element of G; flattening lands everything in the common
    ambient module (E tensor C) + (F tensor C) + G.
    """

    __slots__ = ("inner", "right", "composed", "g", "theta")

    def __init__(self, e, f, g, psi, theta):
        if theta.source != f.algebra or theta.target != g.algebra:
            raise ValueError("theta must map F's algebra into G's algebra")
        self.inner = PsiSumCtx(e, f, psi)       # E + F along psi
        self.right = PsiSumCtx(f, g, theta)     # F + G along theta
        self.composed = PsiSumCtx(e, g, psi.compose(theta))
        self.g = g
        self.theta = theta


class TripleElement:
    """A member of the left association, as constructed by the caller."""

    __slots__ = ("ctx", "parts", "g_part")

    def __init__(self, ctx, parts, g_part):
        c_alg = ctx.g.algebra
        self.ctx = ctx
        self.parts = [(z, c_alg.nf(c)) for z, c in parts]
        self.g_part = PAElement(ctx.g, list(g_part.coords))

    def flatten(self):
        """Coordinates in the ambient (E tensor C) + (F tensor C) + G."""
        ctx = self.ctx
        c_alg = ctx.g.algebra
        e_coeffs = [c_alg.zero()] * ctx.inner.e.rank
        f_coeffs = [c_alg.zero()] * ctx.inner.f.rank
        for z, c in self.parts:
            for i, coeff in enumerate(z.tensor):
                if not coeff.is_zero():
                    e_coeffs[i] = e_coeffs[i] + ctx.theta.apply(coeff) * c
            for j, coeff in enumerate(z.f_part):
                if not coeff.is_zero():
                    f_coeffs[j] = f_coeffs[j] + ctx.theta.apply(coeff) * c
        return (
            [c_alg.nf(q) for q in e_coeffs],
            [c_alg.nf(q) for q in f_coeffs],
            self.g_part,
        )


def _left_membership_report(ctx, elem):
    """The outer membership identity of the left association, on B-variables."""
    report = VerdictReport()
    b_alg = ctx.inner.f.algebra
    c_alg = ctx.g.algebra
    for v in range(b_alg.arity):
        var = b_alg.variable(v)
        lhs = c_alg.zero()
        for z, c in elem.parts:
            lhs = lhs + ctx.theta.apply(anchor_apply(z.f_element(), var)) * c
        rhs = anchor_apply(elem.g_part, ctx.theta.apply(var))
        report.add(
            "outer membership identity at %s" % b_alg.variables[v],
            c_alg.nf(lhs) == c_alg.nf(rhs),
            "theta-twisted anchors disagree at %s" % b_alg.variables[v],
        )
    if b_alg.arity == 0:
        report.add("outer membership identity is vacuous over the scalars", True)
    return report


def _right_membership_report(ctx, e_coeffs, f_coeffs, g_part):
    """Membership of flattened coordinates in E + (F + G along theta)."""
    report = VerdictReport()
    inner_right = MixedElement(ctx.right, list(f_coeffs), list(g_part.coords))
    report.merge(membership_report(ctx.right, inner_right), prefix="inner: ")
    a_alg = ctx.inner.e.algebra
    c_alg = ctx.g.algebra
    composed_psi = ctx.composed.psi
    for v in range(a_alg.arity):
        var = a_alg.variable(v)
        lhs = c_alg.zero()
        for i, coeff in enumerate(e_coeffs):
            if coeff.is_zero():
                continue
            lhs = lhs + composed_psi.apply(ctx.inner.e.anchors[i].apply(var)) * coeff
        rhs = anchor_apply(g_part, composed_psi.apply(var))
        report.add(
            "outer membership identity at %s" % a_alg.variables[v],
            c_alg.nf(lhs) == c_alg.nf(rhs),
            "composed-map identity fails at %s" % a_alg.variables[v],
        )
    if a_alg.arity == 0:
        report.add("outer membership identity is vacuous over the scalars", True)
    return report


def _left_bracket(ctx, t1, t2):
    """Bracket in the left association, returned as a TripleElement."""
    parts = []
    c_alg = ctx.g.algebra
    for z1, c1 in t1.parts:
        for z2, c2 in t2.parts:
            prod = c_alg.nf(c1 * c2)
            if not prod.is_zero():
                parts.append((psisum_bracket(ctx.inner, z1, z2, check=False), prod))
    for z2, c2 in t2.parts:
        coeff = anchor_apply(t1.g_part, c2)
        if not coeff.is_zero():
            parts.append((z2, coeff))
    for z1, c1 in t1.parts:
        coeff = anchor_apply(t2.g_part, c1)
        if not coeff.is_zero():
            parts.append((z1, -coeff))
    return TripleElement(ctx, parts, bracket(t1.g_part, t2.g_part))


def _right_bracket(ctx, flat1, flat2):
    """Bracket in the right association, on flattened coordinates."""
    e1, f1, w1 = flat1
    e2, f2, w2 = flat2
    c_alg = ctx.g.algebra
    e_alg = ctx.inner.e
    composed_psi = ctx.composed.psi
    v1 = MixedElement(ctx.right, list(f1), list(w1.coords))
    v2 = MixedElement(ctx.right, list(f2), list(w2.coords))
    e_out = [c_alg.zero()] * e_alg.rank
    for i, ci in enumerate(e1):
        if ci.is_zero():
            continue
        for j, cj in enumerate(e2):
            if cj.is_zero() or i == j:
                continue
            prod = c_alg.nf(ci * cj)
            if prod.is_zero():
                continue
            for k, c in enumerate(e_alg.struct_coeffs(i, j)):
                if not c.is_zero():
                    e_out[k] = e_out[k] + composed_psi.apply(c) * prod
    for k in range(e_alg.rank):
        e_out[k] = e_out[k] + anchor_apply(w1, e2[k]) - anchor_apply(w2, e1[k])
    v_out = psisum_bracket(ctx.right, v1, v2, check=False)
    return ([c_alg.nf(q) for q in e_out], list(v_out.tensor), v_out.f_element())


def triple_inclusion_check(e, f, g, psi, theta, elements):
    """Re-associate members of the left triple sum and verify the inclusion.

    Preconditions (violations raise): every inner component is a member of
    E + F along psi, and each supplied element satisfies the outer
    membership identity of the left association.  The report then asserts
    that every flattened element is a member of the right association and
    that pairwise brackets agree after re-association.
    """
    ctx = TripleSumCtx(e, f, g, psi, theta)
    checked = []
    for n, (parts, g_part) in enumerate(elements):
        for z, _ in parts:
            if not membership(ctx.inner, z):
                raise VerificationError(
                    "element %d has a non-member inner component" % n,
                    membership_report(ctx.inner, z),
                )
        t = TripleElement(ctx, parts, g_part)
        _left_membership_report(ctx, t).require(
            "element %d is not a member of the left association" % n
        )
        checked.append(t)

    report = VerdictReport()
    flats = []
    for n, t in enumerate(checked):
        flat = t.flatten()
        sub = _right_membership_report(ctx, *flat)
        report.add(
            "element %d re-associates into the right sum" % n,
            sub.verdict,
            "; ".join(c.witness for c in sub.failures()),
        )
        flats.append(flat)

    for n1 in range(len(checked)):
        for n2 in range(n1 + 1, len(checked)):
            left = _left_bracket(ctx, checked[n1], checked[n2]).flatten()
            right = _right_bracket(ctx, flats[n1], flats[n2])
            agree = (
                left[0] == right[0]
                and left[1] == right[1]
                and left[2] == right[2]
            )
            report.add(
                "brackets of elements %d and %d agree under re-association" % (n1, n2),
                agree,
                "left association gives %r / %r / %r, right gives %r / %r / %r"
                % (left[0], left[1], left[2], right[0], right[1], right[2]),
            )
    return report
