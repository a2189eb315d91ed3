"""Morphisms and comorphisms of Lie pseudoalgebras.

A morphism from E over A to F over B covers an algebra map psi: A -> B and
sends E into F, extending psi-semilinearly from basis images.  A
comorphism from F to E runs against psi: its module map sends F into
E tensor_A B, stored as one row of B-coefficients (on E's basis) per
F-basis vector.

Both notions are verified on basis data; the graph of either map is a
family of mixed elements of the twisted sum, and the graph checker
decides the subalgebra property, which matches the direct verifiers
case by case.
"""

from __future__ import annotations

from .algebra import AlgMorphism, Derivation
from .pseudoalgebra import (
    KForm,
    PAElement,
    anchor_apply,
    bracket,
    differential,
)
from .psisum import MixedElement, PsiSumCtx, membership_report, psisum_bracket
from .verdict import VerdictReport


class PAMorphism:
    """A pseudoalgebra morphism candidate: psi plus basis images in F."""

    __slots__ = ("source", "target", "psi", "images")

    def __init__(self, source, target, psi, images):
        if psi.source != source.algebra or psi.target != target.algebra:
            raise ValueError("psi must map the source algebra into the target algebra")
        images = [PAElement(target, list(img.coords)) for img in images]
        if len(images) != source.rank:
            raise ValueError("need one image per source basis vector")
        self.source = source
        self.target = target
        self.psi = psi
        self.images = tuple(images)

    @classmethod
    def identity(cls, e):
        return cls(e, e, AlgMorphism.identity(e.algebra), [e.basis(i) for i in range(e.rank)])

    def apply(self, x):
        """psi-semilinear extension from basis images."""
        out = self.target.zero_element()
        for coord, image in zip(x.coords, self.images):
            if not coord.is_zero():
                out = out + image.scale(self.psi.apply(coord))
        return out

    def __eq__(self, other):
        if not isinstance(other, PAMorphism):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.psi == other.psi
            and self.images == other.images
        )

    def __repr__(self):
        return "PAMorphism(%d -> %d basis images)" % (self.source.rank, self.target.rank)


class PAComorphism:
    """A comorphism candidate from F (over B) to E (over A), over psi: A -> B.

    ``images[j][k]`` is the B-coefficient of the k-th E-basis vector in the
    image of the j-th F-basis vector.
    """

    __slots__ = ("source", "target", "psi", "images")

    def __init__(self, source, target, psi, images):
        if psi.source != target.algebra or psi.target != source.algebra:
            raise ValueError("psi must map the target algebra into the source algebra")
        b_alg = source.algebra
        rows = []
        for row in images:
            row = [b_alg.nf(c) for c in row]
            if len(row) != target.rank:
                raise ValueError("each image row needs one coefficient per E-basis vector")
            rows.append(tuple(row))
        if len(rows) != source.rank:
            raise ValueError("need one image row per F-basis vector")
        self.source = source
        self.target = target
        self.psi = psi
        self.images = tuple(rows)

    @classmethod
    def identity(cls, e):
        rows = [
            [e.algebra.one() if k == j else e.algebra.zero() for k in range(e.rank)]
            for j in range(e.rank)
        ]
        return cls(e, e, AlgMorphism.identity(e.algebra), rows)

    def apply(self, y):
        """B-linear extension: the tensor coefficients of the image of y."""
        b_alg = self.source.algebra
        out = [b_alg.zero()] * self.target.rank
        for coord, row in zip(y.coords, self.images):
            if coord.is_zero():
                continue
            for k, c in enumerate(row):
                if not c.is_zero():
                    out[k] = out[k] + coord * c
        return [b_alg.nf(c) for c in out]

    def __eq__(self, other):
        if not isinstance(other, PAComorphism):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.psi == other.psi
            and self.images == other.images
        )

    def __repr__(self):
        return "PAComorphism(%d -> %d tensor rows)" % (self.source.rank, self.target.rank)


# -- direct verifiers ------------------------------------------------------


def check_pamorphism(m):
    """Both defining conditions, on basis vectors against algebra variables.

    (1) psi([e_i, a]) = [Psi(e_i), psi(a)] for every source variable a;
    (2) Psi([e_i, e_j]) = [Psi(e_i), Psi(e_j)] for i < j.
    Basis data suffices: both sides of (1) are psi-twisted derivations in a,
    and (2) extends to general elements via (1) and semilinearity.
    """
    report = VerdictReport()
    e, f = m.source, m.target
    a_alg, b_alg = e.algebra, f.algebra
    for i in range(e.rank):
        for v in range(a_alg.arity):
            var = a_alg.variable(v)
            lhs = m.psi.apply(e.anchors[i].apply(var))
            rhs = anchor_apply(m.images[i], m.psi.apply(var))
            report.add(
                "anchor condition on e_%d at %s" % (i, a_alg.variables[v]),
                lhs == rhs,
                "psi([e_%d, %s]) = %s but [image, psi(%s)] = %s"
                % (i, a_alg.variables[v], b_alg.render(lhs), a_alg.variables[v], b_alg.render(rhs)),
            )
    for i in range(e.rank):
        for j in range(i + 1, e.rank):
            lhs = m.apply(e.bracket_basis(i, j))
            rhs = bracket(m.images[i], m.images[j])
            report.add(
                "bracket condition on (e_%d, e_%d)" % (i, j),
                lhs == rhs,
                "image of the bracket is %s but bracket of the images is %s"
                % (f.render_element(lhs.coords), f.render_element(rhs.coords)),
            )
    if not report.checks:
        report.add("no conditions to check (rank <= 1 over the scalars)", True)
    return report


def check_pacomorphism(m):
    """Both defining conditions of a comorphism, on basis data.

    (1) [f_j, psi(a)] = sum_k b_{jk} psi([e_k, a]) for every A-variable a;
    (2) the image of [f_i, f_j] equals the twisted-sum bracket formula
        evaluated on the image rows.
    """
    report = VerdictReport()
    f, e = m.source, m.target
    a_alg, b_alg = e.algebra, f.algebra
    for j in range(f.rank):
        for v in range(a_alg.arity):
            var = a_alg.variable(v)
            lhs = anchor_apply(f.basis(j), m.psi.apply(var))
            rhs = b_alg.zero()
            for k, c in enumerate(m.images[j]):
                if not c.is_zero():
                    rhs = rhs + c * m.psi.apply(e.anchors[k].apply(var))
            rhs = b_alg.nf(rhs)
            report.add(
                "anchor condition on f_%d at %s" % (j, a_alg.variables[v]),
                lhs == rhs,
                "[f_%d, psi(%s)] = %s but sum_k b_k psi([e_k, %s]) = %s"
                % (j, a_alg.variables[v], b_alg.render(lhs), a_alg.variables[v], b_alg.render(rhs)),
            )
    for i in range(f.rank):
        for j in range(i + 1, f.rank):
            lhs = m.apply(f.bracket_basis(i, j))
            rhs = _comorphism_bracket_rows(m, i, j)
            report.add(
                "bracket condition on (f_%d, f_%d)" % (i, j),
                lhs == rhs,
                "image of the bracket is (%s) but the bracket formula gives (%s)"
                % (
                    ", ".join(b_alg.render(c) for c in lhs),
                    ", ".join(b_alg.render(c) for c in rhs),
                ),
            )
    if not report.checks:
        report.add("no conditions to check (rank <= 1 over the scalars)", True)
    return report


def _comorphism_bracket_rows(m, i, j):
    """The right side of the comorphism bracket condition for f_i, f_j."""
    f, e = m.source, m.target
    b_alg = f.algebra
    out = [b_alg.zero()] * e.rank
    for k, bk in enumerate(m.images[i]):
        if bk.is_zero():
            continue
        for l, bl in enumerate(m.images[j]):
            if bl.is_zero() or k == l:
                continue
            prod = b_alg.nf(bk * bl)
            if prod.is_zero():
                continue
            for p, c in enumerate(e.struct_coeffs(k, l)):
                if not c.is_zero():
                    out[p] = out[p] + m.psi.apply(c) * prod
    for k in range(e.rank):
        out[k] = out[k] + anchor_apply(f.basis(i), m.images[j][k]) - anchor_apply(
            f.basis(j), m.images[i][k]
        )
    return [b_alg.nf(c) for c in out]


# -- graphs ----------------------------------------------------------------


def graph(m):
    """Graph generators of a map candidate, as mixed elements.

    Morphism case: e_i tensor 1 + Psi(e_i); comorphism case: Psi(f_j) + f_j.
    Returns (twisted-sum context, generator list).
    """
    if isinstance(m, PAMorphism):
        ctx = PsiSumCtx(m.source, m.target, m.psi)
        gens = []
        for i in range(m.source.rank):
            z = ctx.tensor_generator(i)
            gens.append(MixedElement(ctx, list(z.tensor), list(m.images[i].coords)))
        return ctx, gens
    if isinstance(m, PAComorphism):
        ctx = PsiSumCtx(m.target, m.source, m.psi)
        gens = []
        for j in range(m.source.rank):
            f_coords = [
                m.source.algebra.one() if jj == j else m.source.algebra.zero()
                for jj in range(m.source.rank)
            ]
            gens.append(MixedElement(ctx, list(m.images[j]), f_coords))
        return ctx, gens
    raise TypeError("expected a PAMorphism or PAComorphism")


def graph_subalgebra_check(ctx, generators, kind):
    """Decide whether the generated B-submodule is a subalgebra of the sum.

    Checks that every generator is a member and that every pairwise
    bracket lies in the B-span of the generators.  Span membership uses
    the graph shape: the distinguished block (tensor coordinates for
    morphism graphs, F-coordinates for comorphism graphs) determines the
    only possible combination, so subtracting it must leave zero.
    """
    if kind not in ("morphism", "comorphism"):
        raise ValueError("kind must be 'morphism' or 'comorphism'")
    report = VerdictReport()
    for n, gen in enumerate(generators):
        sub = membership_report(ctx, gen)
        report.add(
            "generator %d is a member of the twisted sum" % n,
            sub.verdict,
            "; ".join(c.witness for c in sub.failures()),
        )
    if not report.verdict:
        return report
    for n1 in range(len(generators)):
        for n2 in range(n1 + 1, len(generators)):
            w = psisum_bracket(ctx, generators[n1], generators[n2], check=False)
            residual = _span_residual(ctx, generators, w, kind)
            report.add(
                "bracket of generators %d and %d stays in the span" % (n1, n2),
                residual.is_zero(),
                "residual after subtracting the span combination: %r" % (residual,),
            )
    if not generators:
        report.add("empty generator family is trivially closed", True)
    return report


def _span_residual(ctx, generators, w, kind):
    combo = ctx.zero()
    if kind == "morphism":
        coeffs = w.tensor
    else:
        coeffs = w.f_part
    for coeff, gen in zip(coeffs, generators):
        if not coeff.is_zero():
            combo = combo + gen.scale(coeff)
    return w - combo


# -- composition -----------------------------------------------------------


def compose_morphisms(m1, m2):
    """The composite of morphisms m1: E -> F and m2: F -> G."""
    if m2.source != m1.target:
        raise ValueError("morphisms are not composable")
    images = [m2.apply(img) for img in m1.images]
    return PAMorphism(m1.source, m2.target, m1.psi.compose(m2.psi), images)


def compose_comorphisms(m1, m2):
    """The composite of comorphisms m1: F => E over psi and m2: G => F over theta.

    The result maps G into E tensor C over theta . psi, pushing m1's
    B-coefficients through theta and multiplying by m2's C-coefficients.
    """
    if m2.target != m1.source:
        raise ValueError("comorphisms are not composable")
    theta = m2.psi
    c_alg = m2.source.algebra
    rows = []
    for u in range(m2.source.rank):
        row = [c_alg.zero()] * m1.target.rank
        for j, q in enumerate(m2.images[u]):
            if q.is_zero():
                continue
            for k, b in enumerate(m1.images[j]):
                if not b.is_zero():
                    row[k] = row[k] + theta.apply(b) * q
        rows.append([c_alg.nf(c) for c in row])
    return PAComorphism(m2.source, m1.target, m1.psi.compose(theta), rows)


# -- the dual chain map ----------------------------------------------------


def _dual_one_form(m, xi_coeffs):
    """Pull a one-form on E back to a one-form on F through the tensor rows."""
    b_alg = m.source.algebra
    out = []
    for j in range(m.source.rank):
        acc = b_alg.zero()
        for k, c in enumerate(xi_coeffs):
            if not c.is_zero():
                acc = acc + m.psi.apply(c) * m.images[j][k]
        out.append(b_alg.nf(acc))
    return out


def _dual_two_form(m, omega_table):
    """Pull a two-form on E back to F: antisymmetrized products of rows."""
    b_alg = m.source.algebra
    e_rank = m.target.rank
    table = {}
    for i in range(m.source.rank):
        for j in range(i + 1, m.source.rank):
            acc = b_alg.zero()
            for p in range(e_rank):
                for q in range(p + 1, e_rank):
                    c = omega_table[(p, q)]
                    if c.is_zero():
                        continue
                    minor = m.images[i][p] * m.images[j][q] - m.images[i][q] * m.images[j][p]
                    acc = acc + m.psi.apply(c) * minor
            table[(i, j)] = b_alg.nf(acc)
    return table


def chain_map_check(m):
    """The dual map commutes with the differentials on degrees 0 and 1.

    Degree 0 is tested on every variable of A, degree 1 on every dual
    basis covector of E; free modules make the dual map explicit from the
    tensor rows.
    """
    report = VerdictReport()
    f, e = m.source, m.target
    a_alg = e.algebra
    for v in range(a_alg.arity):
        var = a_alg.variable(v)
        lhs = differential(f, KForm.scalar(f, m.psi.apply(var)))
        rhs = KForm.one_form(f, _dual_one_form(m, differential(e, KForm.scalar(e, var)).data))
        report.add(
            "degree 0 at %s" % a_alg.variables[v],
            lhs == rhs,
            "d(psi(%s)) = %r but the pulled-back differential is %r"
            % (a_alg.variables[v], lhs.data, rhs.data),
        )
    for k in range(e.rank):
        covector = [e.algebra.one() if i == k else e.algebra.zero() for i in range(e.rank)]
        pulled = KForm.one_form(f, _dual_one_form(m, covector))
        lhs = differential(f, pulled)
        rhs = KForm.two_form(f, _dual_two_form(m, differential(e, KForm.one_form(e, covector)).data))
        report.add(
            "degree 1 at the dual covector of e_%d" % k,
            lhs == rhs,
            "d of the pullback is %r but the pullback of d is %r" % (lhs.data, rhs.data),
        )
    if not report.checks:
        report.add("no conditions to check (scalars and rank zero)", True)
    return report


# -- induced infinitesimal actions ------------------------------------------


def induced_infinitesimal_action(m):
    """Derivations induced by composing a verified map with the target anchor.

    The input carries morphism data from a pseudoalgebra S (typically a
    Lie algebra over Q) to a pseudoalgebra with anchor; each S-basis
    vector yields the derivation of the target algebra obtained by pushing
    its image through the anchor.  The verdict confirms, per basis pair,
    that brackets are preserved, that each output is a valid derivation,
    and that the outputs project onto the source anchor through psi
    (semilinearity holds by the semilinear extension of the map).
    """
    check_pamorphism(m).require("the map is not a pseudoalgebra morphism")
    e, f = m.source, m.target
    a_alg, b_alg = e.algebra, f.algebra
    derivations = [
        Derivation(b_alg, [anchor_apply(img, b_alg.variable(v)) for v in range(b_alg.arity)])
        for img in m.images
    ]
    report = VerdictReport()
    for i, d in enumerate(derivations):
        sub = d.check()
        report.add(
            "induced map %d is a derivation" % i,
            sub.verdict,
            "; ".join(c.witness for c in sub.failures()),
        )
    for i in range(e.rank):
        for v in range(a_alg.arity):
            var = a_alg.variable(v)
            lhs = derivations[i].apply(m.psi.apply(var))
            rhs = m.psi.apply(e.anchors[i].apply(var))
            report.add(
                "induced map %d projects onto the source anchor at %s" % (i, a_alg.variables[v]),
                lhs == rhs,
                "derivation gives %s, projected anchor gives %s"
                % (b_alg.render(lhs), b_alg.render(rhs)),
            )
    for i in range(e.rank):
        for j in range(i + 1, e.rank):
            comm = derivations[i].commutator(derivations[j])
            expected = Derivation.zero(b_alg)
            for k, c in enumerate(e.struct_coeffs(i, j)):
                if not c.is_zero():
                    expected = expected + derivations[k].scaled(m.psi.apply(c))
            report.add(
                "brackets preserved on (e_%d, e_%d)" % (i, j),
                comm == expected,
                "commutator is %r but the image of the bracket is %r" % (comm, expected),
            )
    if not report.checks:
        report.add("nothing to verify (empty action data)", True)
    return derivations, report
