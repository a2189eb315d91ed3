"""Shared objects and candidate-suite builders.

Mutation protocol (kept reproducible on purpose): a mutant copies a valid
map and perturbs exactly one polynomial entry of one image, either adding
1 or multiplying by the first variable of the coefficient algebra the
entry lives in.  Mutants are enumerated deterministically.
"""

from __future__ import annotations

from lra import (
    AlgebraPres,
    AlgMorphism,
    Derivation,
    FiniteGroup,
    GroupoidAction,
    PAComorphism,
    PAElement,
    PAMorphism,
    make_action_groupoid,
    make_der,
    make_klie,
    make_pair,
    restrict_groupoid,
)


# -- pseudoalgebra test objects ------------------------------------------


def algebras():
    return {
        "x": AlgebraPres.free("x"),
        "y": AlgebraPres.free("y"),
        "z": AlgebraPres.free("z"),
        "w": AlgebraPres.free("w"),
        "s": AlgebraPres.free("s"),
        "uv": AlgebraPres.free("u", "v"),
        "xy": AlgebraPres.free("x", "y"),
        "Q": AlgebraPres.scalars(),
    }


def sl2():
    """Basis order (h, e, f): [h,e]=2e, [h,f]=-2f, [e,f]=h."""
    return make_klie({(0, 1): [0, 2, 0], (0, 2): [0, 0, -2], (1, 2): [1, 0, 0]})


def sl2_action_images(algebra):
    """h -> -2x d/dx, e -> d/dx, f -> -x^2 d/dx."""
    x = algebra.variable(0)
    return [
        Derivation(algebra, [(-2) * x]),
        Derivation.partial(algebra, 0),
        Derivation(algebra, [-(x ** 2)]),
    ]


# -- mutation protocol ------------------------------------------------------


def _morphism_with_entry(m, i, k, value):
    images = [PAElement(m.target, list(img.coords)) for img in m.images]
    coords = list(images[i].coords)
    coords[k] = value
    images[i] = PAElement(m.target, coords)
    return PAMorphism(m.source, m.target, m.psi, images)


def morphism_mutants(m, count):
    """Deterministic single-entry mutants of a morphism candidate."""
    b = m.target.algebra
    out = []
    for i in range(m.source.rank):
        for k in range(m.target.rank):
            entry = m.images[i].coords[k]
            out.append(_morphism_with_entry(m, i, k, entry + b.one()))
            if b.arity and not entry.is_zero():
                out.append(_morphism_with_entry(m, i, k, entry * b.variable(0)))
            if len(out) >= count:
                return out[:count]
    return out[:count]


def _comorphism_with_entry(m, j, k, value):
    rows = [list(row) for row in m.images]
    rows[j][k] = value
    return PAComorphism(m.source, m.target, m.psi, rows)


def comorphism_mutants(m, count):
    b = m.source.algebra
    out = []
    for j in range(m.source.rank):
        for k in range(m.target.rank):
            entry = m.images[j][k]
            out.append(_comorphism_with_entry(m, j, k, entry + b.one()))
            if b.arity and not entry.is_zero():
                out.append(_comorphism_with_entry(m, j, k, entry * b.variable(0)))
            if len(out) >= count:
                return out[:count]
    return out[:count]


# -- candidate suites --------------------------------------------------------


def morphism_suite():
    """At least 20 candidates: valid morphisms plus single-entry mutants."""
    alg = algebras()
    dx, dy = make_der(alg["x"]), make_der(alg["y"])
    duv, dxy = make_der(alg["uv"]), make_der(alg["xy"])
    q = alg["Q"]
    x = alg["x"].variable(0)
    ab = make_klie({}, rank=1)
    g_sl2 = sl2()
    incl_x = AlgMorphism(q, alg["x"], [])

    relabel = PAMorphism(
        dx, dy, AlgMorphism(alg["x"], alg["y"], [alg["y"].variable(0)]), [dy.basis(0)]
    )
    relabel2 = PAMorphism(
        duv,
        dxy,
        AlgMorphism(alg["uv"], alg["xy"], [alg["xy"].variable(0), alg["xy"].variable(1)]),
        [dxy.basis(0), dxy.basis(1)],
    )
    action_ab = PAMorphism(ab, dx, incl_x, [dx.basis(0)])
    action_sl2 = PAMorphism(
        g_sl2,
        dx,
        incl_x,
        [
            dx.basis(0).scale((-2) * x),
            dx.basis(0),
            dx.basis(0).scale(-(x ** 2)),
        ],
    )
    zero_map = PAMorphism(ab, dx, incl_x, [dx.zero_element()])
    borel = make_klie({(0, 1): [0, 2]})
    borel_incl = PAMorphism(
        borel, g_sl2, AlgMorphism.identity(q), [g_sl2.basis(0), g_sl2.basis(1)]
    )
    # rank-2 bases with a nonzero polynomial structure table on both sides
    dx2 = make_der(alg["x"], [Derivation.partial(alg["x"], 0), Derivation(alg["x"], [x])])
    dy2 = make_der(
        alg["y"],
        [Derivation.partial(alg["y"], 0), Derivation(alg["y"], [alg["y"].variable(0)])],
    )
    basis_change = PAMorphism(
        dx2,
        dy2,
        AlgMorphism(alg["x"], alg["y"], [alg["y"].variable(0)]),
        [dy2.basis(0), dy2.basis(1)],
    )
    valids = [
        ("relabel-rank1", relabel),
        ("identity-rank1", PAMorphism.identity(dx)),
        ("relabel-rank2", relabel2),
        ("identity-rank2", PAMorphism.identity(duv)),
        ("abelian-action", action_ab),
        ("sl2-action", action_sl2),
        ("zero-map", zero_map),
        ("borel-inclusion", borel_incl),
        ("sl2-identity", PAMorphism.identity(g_sl2)),
        ("structured-relabel", basis_change),
    ]
    suite = list(valids)
    for label, m in valids:
        for n, mut in enumerate(morphism_mutants(m, 2)):
            suite.append(("%s-mutant%d" % (label, n), mut))
    return suite


def comorphism_suite():
    alg = algebras()
    dx = make_der(alg["x"])
    dw = make_der(alg["w"])
    ds = make_der(alg["s"])
    dt_ = make_der(alg["y"])
    duv = make_der(alg["uv"])
    dxy = make_der(alg["xy"])
    x = alg["x"].variable(0)
    s = alg["s"].variable(0)
    y = alg["y"].variable(0)

    curve_uv = PAComorphism(
        dx, duv, AlgMorphism(alg["uv"], alg["x"], [x, x ** 2]), [[alg["x"].one(), 2 * x]]
    )
    relabel_w = PAComorphism(
        dw, dx, AlgMorphism(alg["x"], alg["w"], [alg["w"].variable(0)]), [[alg["w"].one()]]
    )
    square_s = PAComorphism(
        ds, dx, AlgMorphism(alg["x"], alg["s"], [s ** 2]), [[2 * s]]
    )
    relabel_2d = PAComorphism(
        dxy,
        duv,
        AlgMorphism(alg["uv"], alg["xy"], [alg["xy"].variable(0), alg["xy"].variable(1)]),
        [
            [alg["xy"].one(), alg["xy"].zero()],
            [alg["xy"].zero(), alg["xy"].one()],
        ],
    )
    curve_2d = PAComorphism(
        dt_, dxy, AlgMorphism(alg["xy"], alg["y"], [y, y ** 2]), [[alg["y"].one(), 2 * y]]
    )
    ab = make_klie({}, rank=1)
    q = AlgebraPres.scalars()
    zero_co = PAComorphism(ab, make_klie({}, rank=1), AlgMorphism.identity(q), [[q.const(3)]])

    # source with a nonzero structure table: basis {d/dx, x d/dx} of the line
    qu = AlgebraPres.free("u")
    du = make_der(qu)
    dx2 = make_der(alg["x"], [Derivation.partial(alg["x"], 0), Derivation(alg["x"], [x])])
    structured = PAComorphism(
        dx2, du, AlgMorphism(qu, alg["x"], [x]), [[alg["x"].one()], [x]]
    )

    valids = [
        ("curve-uv", curve_uv),
        ("identity-rank1", PAComorphism.identity(dx)),
        ("identity-rank2", PAComorphism.identity(duv)),
        ("relabel-w", relabel_w),
        ("square-s", square_s),
        ("relabel-2d", relabel_2d),
        ("curve-2d", curve_2d),
        ("scalars", zero_co),
        ("structured-source", structured),
    ]
    suite = list(valids)
    for label, m in valids:
        for n, mut in enumerate(comorphism_mutants(m, 2)):
            suite.append(("%s-mutant%d" % (label, n), mut))
    return suite


# -- groupoid corpus ---------------------------------------------------------


def groupoid_corpus():
    """Named groupoids with at most 6 arrows each."""
    z2 = FiniteGroup.cyclic(2)
    z3 = FiniteGroup.cyclic(3)
    swap = make_action_groupoid(
        z2, ["1", "2"], {("1", 0): "1", ("2", 0): "2", ("1", 1): "2", ("2", 1): "1"}
    )
    return {
        "pair1": make_pair(["p"]),
        "pair2": make_pair(["a", "b"]),
        "z2": make_action_groupoid(z2, ["o"], {("o", 0): "o", ("o", 1): "o"}),
        "z3": make_action_groupoid(z3, ["o"], {("o", g): "o" for g in range(3)}),
        "swap": swap,
        "swap-restricted": restrict_groupoid(swap, ["1"]),
    }


def all_base_maps(gamma, pi):
    """Every map from gamma's objects to pi's objects."""
    import itertools

    domain = list(gamma.objects)
    for values in itertools.product(pi.objects, repeat=len(domain)):
        yield dict(zip(domain, values))


def action_tables():
    """Five distinct verified groupoid actions for round-trip tests."""
    corpus = groupoid_corpus()
    z2g = corpus["z2"]
    z3g = corpus["z3"]
    swap = corpus["swap"]
    pair2 = corpus["pair2"]
    pair1 = corpus["pair1"]

    tautological = GroupoidAction(
        swap,
        ["1", "2"],
        {"1": "1", "2": "2"},
        {a: {swap.src[a]: swap.tgt[a]} for a in swap.arrows},
    )
    z2_swap = GroupoidAction(
        z2g,
        ["1", "2"],
        {"1": "o", "2": "o"},
        {("o", 0): {"1": "1", "2": "2"}, ("o", 1): {"1": "2", "2": "1"}},
    )
    z2_mixed = GroupoidAction(
        z2g,
        ["1", "2", "3"],
        {"1": "o", "2": "o", "3": "o"},
        {
            ("o", 0): {"1": "1", "2": "2", "3": "3"},
            ("o", 1): {"1": "2", "2": "1", "3": "3"},
        },
    )
    z3_cycle = GroupoidAction(
        z3g,
        ["1", "2", "3"],
        {"1": "o", "2": "o", "3": "o"},
        {
            ("o", 0): {"1": "1", "2": "2", "3": "3"},
            ("o", 1): {"1": "2", "2": "3", "3": "1"},
            ("o", 2): {"1": "3", "2": "1", "3": "2"},
        },
    )
    pair_action = GroupoidAction(
        pair2,
        ["a", "b"],
        {"a": "a", "b": "b"},
        {(u, v): {u: v} for (u, v) in pair2.arrows},
    )
    trivial = GroupoidAction(
        pair1,
        ["1", "2"],
        {"1": "p", "2": "p"},
        {("p", "p"): {"1": "1", "2": "2"}},
    )
    return [tautological, z2_swap, z2_mixed, z3_cycle, pair_action, trivial]
