import random

import pytest

from jordangeo.geometry import constructions, core, finite, intrinsic, laws, polarity
from jordangeo.geometry.core import (
    GrasCoPoint,
    GrasPoint,
    Grassmann,
    NotASubspace,
    NotTransversal,
    chart,
    inner_dilation,
    parse_geometry,
    pi_minus,
    pi_plus,
    projector,
    sigma_sum,
    transversal,
    unchart,
)
from jordangeo.linalg import Matrix, is_direct_sum, random_matrix
from jordangeo.rings import Dual, GaussianRational, Modular, NotAUnit, Rational, RingMismatch, parse_ring

Q = Rational()
DQ = Dual(Q)


def pt(ring, *coords):
    """[a:b:...] as a line, or several columns given as tuples."""
    if isinstance(coords[0], tuple):
        cols = coords
        return GrasPoint(Matrix.from_rows(ring, [list(r) for r in zip(*cols)]))
    return GrasPoint(Matrix.from_rows(ring, [[c] for c in coords]))


def cp(ring, *rows):
    return GrasCoPoint(Matrix.from_rows(ring, [list(r) for r in rows]))


# -- transversality and structure maps on the projective line ---------------


def test_transversal_examples():
    assert not transversal(pt(Q, 1, 0), cp(Q, (0, 1)))
    assert transversal(pt(Q, 1, 1), cp(Q, (0, 1)))
    e = DQ.eps
    assert not transversal(pt(DQ, 1, e), cp(DQ, (e, 1)))


def test_transversal_dimension_mismatch():
    with pytest.raises(ValueError):
        transversal(pt(Q, 1, 0, 0), cp(Q, (0, 1)))


def test_transversal_is_complementarity():
    # x ⊤ a iff W = im x ⊕ ker a
    G = Grassmann(Q, 2, 2)
    rng = random.Random(0)
    for _ in range(100):
        x, a = G.random_point(rng), G.random_copoint(rng)
        assert transversal(x, a) == is_direct_sum(x.rep, a.subspace())


def test_point_requires_full_rank():
    with pytest.raises(NotASubspace):
        GrasPoint(Matrix.from_rows(Q, [[1, 2], [2, 4]]))
    with pytest.raises(NotASubspace):
        GrasCoPoint(Matrix.from_rows(Q, [[1, 2], [2, 4]]))


def test_points_compare_by_span():
    assert pt(Q, 1, 2) == pt(Q, 2, 4)
    assert pt(Q, 1, 2) != pt(Q, 2, 1)
    assert cp(Q, (1, 1)) == cp(Q, (3, 3))
    assert len({pt(Q, 1, 2), pt(Q, -1, -2), pt(Q, 1, 0)}) == 2


def test_pi_example():
    x, a, y = pt(Q, 0, 1), cp(Q, (0, 1)), pt(Q, 3, 1)
    assert pi_plus(x, a, y, 2) == pt(Q, 6, 1)
    assert pi_plus(x, a, y, 0) == x
    assert pi_plus(x, a, y, 1) == y
    assert pi_plus(x, a, x, 5) == x


def test_pi_is_affine_combination_in_chart():
    # chart at a = row (1, 0): [1:t] ↔ t, so Π_r = (1−r)t_x + r t_y
    a = cp(Q, (1, 0))
    rng = random.Random(1)
    for _ in range(100):
        tx, ty, r = (Q.random(rng) for _ in range(3))
        got = pi_plus(pt(Q, 1, tx), a, pt(Q, 1, ty), r)
        assert got == pt(Q, 1, (1 - r) * tx + r * ty)


def test_pi_requires_transversality():
    with pytest.raises(NotTransversal):
        pi_plus(pt(Q, 1, 0), cp(Q, (0, 1)), pt(Q, 1, 1), 2)


def test_pi_minus_matches_dual_picture():
    # Π⁻ on co-points is Π⁺ on their transposes as points of the dual space
    G = Grassmann(Q, 1, 2)
    rng = random.Random(2)
    for _ in range(50):
        a, b, x = G.random_copoint(rng), G.random_copoint(rng), G.random_point(rng)
        if not (transversal(x, a) and transversal(x, b)):
            continue
        r = Q.random(rng)
        got = pi_minus(a, x, b, r)
        want = pi_plus(GrasPoint(a.rep.T), GrasCoPoint(x.rep.T), GrasPoint(b.rep.T), r)
        assert GrasPoint(got.rep.T) == want


def test_chart_examples():
    x, a = pt(Q, 0, 1), cp(Q, (0, 1))
    assert chart(x, a, x).is_zero()
    assert chart(x, a, pt(Q, 7, 1)) == Matrix.from_rows(Q, [[7], [0]])
    assert sigma_sum(x, a, pt(Q, 3, 1), pt(Q, 5, 1)) == pt(Q, 8, 1)


def test_chart_round_trip_and_projector():
    G = Grassmann(Q, 2, 2)
    rng = random.Random(3)
    for _ in range(50):
        x, a, y = laws._transversal_triple(G, rng)
        P = projector(x, a)
        assert P @ P == P
        assert unchart(x, a, chart(x, a, y)) == y
        assert (P @ chart(x, a, y)).is_zero()


def test_pi_equals_scaled_chart():
    G = Grassmann(Modular(7), 2, 3)
    assert laws.check_chart_consistency(G, 50, 0).ok


def test_inner_dilation_basics():
    G = Grassmann(Q, 2, 2)
    rng = random.Random(4)
    o, a, y = laws._transversal_triple(G, rng)
    assert inner_dilation(o, a, 1).is_identity()
    g = inner_dilation(o, a, 3)
    assert chart(o, a, g(y)) == chart(o, a, y).scale(Q.coerce(3))
    assert g.inverse()(g(y)) == y
    with pytest.raises(NotAUnit):
        inner_dilation(o, a, 0)
    with pytest.raises(NotAUnit):
        inner_dilation(pt(DQ, 0, 1), cp(DQ, (0, 1)), DQ.eps)


# -- the two laws -----------------------------------------------------------


@pytest.mark.parametrize("spec,ring", [("gras:1x1", "Q"), ("gras:2x1", "Zmod:5"), ("gras:1x2", "dual:Q"),
                                       ("lagr-sym:2", "Q"), ("lagr-skew:2", "Zmod:7"), ("lagr-herm:1", "Qi")])
def test_laws_pass(spec, ring):
    G = parse_geometry(spec, parse_ring(ring))
    assert laws.check_pg1(G, 20, 1).ok
    assert laws.check_pg2(G, 20, 1).ok


def test_laws_on_nested_dual():
    G = parse_geometry("gras:1x1", parse_ring("dual:dual:Q"))
    assert laws.check_pg1(G, 10, 0).ok and laws.check_pg2(G, 10, 0).ok


def test_wrong_pi_detected_with_witness():
    G = Grassmann(Q, 1, 2)
    res = laws.check_pg1(G, 30, 0, pi=laws.wrong_pi)
    assert res.failed > 0
    w = res.witnesses[0]
    assert {"o", "alpha", "x", "beta", "y", "r", "s"} <= set(w)


def test_squared_r_mutation_detected():
    G = Grassmann(Q, 1, 1)
    sq = lambda x, a, y, r: pi_plus(x, a, y, x.ring.coerce(r) * x.ring.coerce(r))  # noqa: E731
    assert laws.check_pg2(G, 30, 0, pi=sq).failed > 0


def test_pg1_sides_agree_on_hand_configuration():
    # projective line, everything in one affine chart
    o, x, y = pt(Q, 0, 1), pt(Q, 1, 1), pt(Q, 2, 1)
    alpha, beta = cp(Q, (0, 1)), cp(Q, (1, 3))
    sides = laws.pg1_sides(Grassmann(Q, 1, 1), o, alpha, x, beta, y, Q.coerce(2), Q.coerce(3))
    assert sides is not None
    lhs, rhs = sides
    assert lhs == rhs


def test_pi_half_symmetric():
    G = Grassmann(Q, 2, 2)
    rng = random.Random(5)
    for _ in range(50):
        x, a, y = laws._transversal_triple(G, rng)
        assert pi_plus(x, a, y, Q.inv2) == pi_plus(y, a, x, Q.inv2)


def test_representative_independence():
    assert laws.check_rep_independence(Grassmann(Q, 2, 2), 50, 0).ok
    assert laws.check_rep_independence(parse_geometry("lagr-herm:2", GaussianRational()), 20, 0).ok


def test_dilations_check():
    assert laws.check_dilations(Grassmann(Modular(7), 2, 2), 30, 0).ok


# -- Lagrangian geometries --------------------------------------------------


@pytest.mark.parametrize("kind,ring", [("lagr-herm", "Qi"), ("lagr-sym", "Q"), ("lagr-skew", "Q"),
                                       ("lagr-sym", "dual:Q")])
def test_lagrangian_closed_under_pi(kind, ring):
    G = parse_geometry(f"{kind}:2", parse_ring(ring))
    rng = random.Random(6)
    for _ in range(20):
        x, a, y = laws._transversal_triple(G, rng)
        assert G.contains_point(x) and G.contains_copoint(a)
        assert G.is_lagrangian(a.subspace())
        z = pi_plus(x, a, y, G.random_scalar(rng))
        assert G.contains_point(z)
        assert G.point_of(G.copoint_of(x)) == x


def test_lagrangian_needs_conjugation():
    with pytest.raises(ValueError):
        parse_geometry("lagr-herm:2", Q)


def test_lagrangian_herm_scalars_are_real():
    G = parse_geometry("lagr-herm:2", GaussianRational())
    assert G.scalar_ring == Q


# -- polarities, null systems, midpoints ------------------------------------


def test_mu_example():
    G = Grassmann(Q, 1, 1)
    p = polarity.polarity_from_form(G)
    assert polarity.mu(p, pt(Q, 1, 0), pt(Q, 1, 1)) == pt(Q, 1, -1)
    assert p.plus(pt(Q, 1, 0)) == cp(Q, (1, 0))


def test_mu_rejects_isotropic():
    G = Grassmann(Modular(5), 1, 1)
    p = polarity.polarity_from_form(G)
    iso = pt(G.ring, 1, 2)  # 1 + 4 = 0 mod 5
    assert polarity.is_isotropic(p, iso)
    with pytest.raises(polarity.IsotropicPoint):
        polarity.mu(p, iso, pt(G.ring, 1, 0))


def test_polarity_involutive():
    G = Grassmann(Q, 2, 2)
    p = polarity.polarity_from_form(G)
    rng = random.Random(7)
    for _ in range(30):
        x = G.random_point(rng)
        assert p.minus(p.plus(x)) == x


@pytest.mark.parametrize("spec", ["gras:1x1", "gras:1x2", "gras:2x2"])
def test_symmetric_space(spec):
    p = polarity.polarity_from_form(parse_geometry(spec, Q))
    res = polarity.check_symmetric_space(p, 30, 0)
    assert res.ok


def test_null_system():
    x = pt(Q, (1, 0, 0, 0), (0, 1, 0, 0))
    n = polarity.null_system(x)
    assert not transversal(x, n)
    assert polarity.check_null_system(Grassmann(Q, 2, 2), 20, 0, dilations=10).ok


def test_midpoint_examples():
    x, y, a = pt(Q, 0, 1), pt(Q, 2, 1), cp(Q, (0, 1))
    assert polarity.midpoint_map(x, y, a) == pt(Q, 1, 1)
    assert polarity.midpoint_map(x, x, a) == x


def test_midpoint_injective_on_projective_line_mod5():
    G = Grassmann(Modular(5), 1, 1)
    pts = finite.enumerate_points(G)
    x = pts[0]
    y = next(p for p in pts if is_direct_sum(x.rep, p.rep))
    res = finite.check_midpoint_injective(G, x, y)
    assert res.ok and res.details["copoints"] == 4


# -- flags and states --------------------------------------------------------


def test_intrinsic_line_in_plane():
    G = Grassmann(Q, 1, 2)
    F1 = Matrix.zeros(Q, 3, 0)
    F2 = Matrix.from_rows(Q, [[1, 0], [0, 1], [0, 0]])
    I = intrinsic.intrinsic_from_flag(G, F1, F2)
    assert I.member(pt(Q, 1, 2, 0))
    assert not I.member(pt(Q, 1, 2, 3))
    assert intrinsic.check_intrinsic_linearity(I, 30, 0).ok


def test_invalid_flags():
    G = Grassmann(Q, 1, 2)
    a = Matrix.from_rows(Q, [[1], [0], [0]])
    b = Matrix.from_rows(Q, [[0], [1], [0]])
    with pytest.raises(intrinsic.InvalidFlag):
        intrinsic.intrinsic_from_flag(G, a, b)
    with pytest.raises(intrinsic.InvalidFlag):
        intrinsic.intrinsic_from_flag(G, Matrix.zeros(Q, 3, 0), Matrix.zeros(Q, 3, 0))


def test_pure_state_chart_rank_one():
    G = Grassmann(Q, 2, 2)
    I = intrinsic.pure_state_flag(G, random.Random(8))
    assert I.is_pure_state
    res = intrinsic.check_intrinsic_linearity(I, 30, 0)
    assert res.ok and res.details["max_chart_rank"] == 1


# -- tangent, dual and product geometries -----------------------------------


def test_lift_project():
    G = Grassmann(Q, 1, 2)
    TG = constructions.scalar_extend_tangent(G)
    assert TG.ring == DQ
    rng = random.Random(9)
    for _ in range(50):
        x = G.random_point(rng)
        assert constructions.project(constructions.lift(x, TG), G) == x


def test_perturbed_base_part():
    # (x, a, y) ↦ (x + εu, a, y + εv): base part of Π is unchanged
    G = Grassmann(Q, 1, 1)
    TG = constructions.scalar_extend_tangent(G)
    x, a, y = pt(Q, 0, 1), cp(Q, (0, 1)), pt(Q, 3, 1)
    lx = GrasPoint(Matrix.from_rows(DQ, [[DQ.make(0, 1)], [1]]))
    ly = GrasPoint(Matrix.from_rows(DQ, [[3], [DQ.make(1, 2)]]))
    la = constructions.lift(a, TG)
    got = constructions.project(pi_plus(lx, la, ly, DQ.make(2, 5)), G)
    assert got == pi_plus(x, a, y, 2)


def test_tangent_check():
    assert constructions.check_tangent(Grassmann(Q, 1, 2), 30, 0).ok


def test_product_and_exchange():
    G = Grassmann(Q, 1, 1)
    P = constructions.product_geometry(G, G)
    assert laws.check_pg1(P, 20, 0).ok and laws.check_pg2(P, 20, 0).ok
    assert constructions.check_exchange_polarity(G, 20, 0).ok
    x1, x2, a1, a2 = pt(Q, 1, 0), pt(Q, 1, 1), cp(Q, (0, 1)), cp(Q, (0, 1))
    assert P.transversal((x1, x2), (a1, a2)) == (transversal(x1, a1) and transversal(x2, a2))
    assert constructions.exchange(constructions.exchange((x1, a1))) == (x1, a1)


def test_product_ring_mismatch():
    with pytest.raises(RingMismatch):
        constructions.product_geometry(Grassmann(Q, 1, 1), Grassmann(Modular(5), 1, 1))


def test_dual_geometry_laws():
    D = constructions.DualGeometry(Grassmann(Q, 1, 2))
    assert laws.check_pg1(D, 20, 0).ok and laws.check_pg2(D, 20, 0).ok


# -- finite enumeration -----------------------------------------------------


def _brute_count(q, n, k):
    # count k-dim subspaces by listing all spans of k-tuples of vectors
    ring = Modular(q)
    from itertools import product
    vecs = [list(v) for v in product(range(q), repeat=n)]
    seen = set()
    for cols in product(vecs, repeat=k):
        m = Matrix.from_rows(ring, [list(r) for r in zip(*cols)])
        try:
            seen.add(GrasPoint(m))
        except NotASubspace:
            pass
    return len(seen)


@pytest.mark.parametrize("n,k", [(2, 1), (3, 1), (3, 2)])
def test_gaussian_binomial_against_brute_force(n, k):
    assert finite.count_echelon(5, n, k) == _brute_count(5, n, k)


def test_known_counts():
    assert finite.count_echelon(5, 2, 1) == 6
    assert finite.count_echelon(5, 4, 2) == 806


def test_enumeration_projective_line():
    G = Grassmann(Modular(5), 1, 1)
    res = finite.check_enumeration(G)
    assert res.ok
    assert res.details["points"] == 6
    assert res.details["visible_world_sizes"] == [5]


def test_enumeration_limit():
    with pytest.raises(finite.TooLarge):
        finite.enumerate_points(Grassmann(Modular(11), 2, 2))
    with pytest.raises(ValueError):
        finite.enumerate_points(Grassmann(Q, 1, 1))


def test_faithful_small():
    assert finite.check_faithful_small(Grassmann(Modular(5), 1, 1)).ok


def test_common_chart():
    G = Grassmann(Q, 1, 1)
    x, y = pt(Q, 1, 0), pt(Q, 0, 1)
    a = finite.find_common_chart(G, x, y)
    assert transversal(x, a) and transversal(y, a)
    rng = random.Random(10)
    G2 = Grassmann(Q, 2, 2)
    for _ in range(20):
        x, y = G2.random_point(rng), G2.random_point(rng)
        a = finite.find_common_chart(G2, x, y)
        assert transversal(x, a) and transversal(y, a)


def test_random_points_have_right_shape():
    G = Grassmann(Q, 2, 3)
    rng = random.Random(11)
    x, a = G.random_point(rng), G.random_copoint(rng)
    assert G.contains_point(x) and G.contains_copoint(a)
    assert x.rep.shape == (5, 2) and a.rep.shape == (2, 5)
    assert not G.contains_point(GrasPoint(random_matrix(Q, 5, 3, rng), check=False))


def test_parse_geometry_errors():
    for bad in ["gras:1", "lagr-foo:2", "grass:1x1"]:
        with pytest.raises(ValueError):
            parse_geometry(bad, Q)
    assert core.is_geometry_spec("gras:2x3") and not core.is_geometry_spec("rect:2x3")
