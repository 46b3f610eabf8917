import random

import pytest

from jordangeo import tkk
from jordangeo.jordan import MINUS, PLUS, parse_family
from jordangeo.rings import GaussianRational, Rational, parse_ring

Q = Rational()


# dimension of g0 from the classical list of 3-graded simple algebras:
# sl(p+q), sp(2n), so(d+2), su(n,n) as a real form, so(2n)
@pytest.mark.parametrize("spec,ring,d0", [
    ("rect:1x1", "Q", 1), ("rect:1x2", "Q", 4), ("rect:2x3", "Q", 12), ("rect:3x3", "Q", 17),
    ("full:2", "Q", 7), ("sym:2", "Q", 4), ("sym:3", "Q", 9), ("spin:3", "Q", 4), ("spin:4", "Q", 7),
    ("herm:2", "Qi", 7), ("skew:4", "Q", 16), ("rect:2x2", "Zmod:7", 7), ("rect:1x2", "dual:Q", 4),
])
def test_g0_dimension_matches_classical_value(spec, ring, d0):
    J = parse_family(spec, parse_ring(ring))
    L = tkk.build_tkk(J)
    assert L.dims == (J.dim(MINUS), d0, J.dim(PLUS))


@pytest.mark.parametrize("p", [1, 2, 3])
@pytest.mark.parametrize("q", [1, 2, 3])
def test_rect_total_dimension(p, q):
    L = tkk.build_tkk(parse_family(f"rect:{p}x{q}", Q))
    assert L.dim == (p + q) ** 2 - 1


@pytest.mark.parametrize("spec,ring", [("rect:2x2", "Q"), ("sym:2", "Q"), ("spin:3", "Zmod:7"), ("herm:2", "Qi"),
                                       ("rect:1x2", "dual:Q")])
def test_structure_checks_pass(spec, ring):
    L = tkk.build_tkk(parse_family(spec, parse_ring(ring)))
    for check in (tkk.check_grading, tkk.check_jacobi, tkk.check_recover, tkk.check_delta_ljp2):
        res = check(L)
        assert res.ok and not res.witnesses, res.name
    if L.J.unary:
        assert tkk.check_theta(L).ok


def test_recover_on_random_elements():
    J = parse_family("rect:2x3", Q)
    L = tkk.build_tkk(J)
    rng = random.Random(0)
    for _ in range(20):
        for side in (PLUS, MINUS):
            other = MINUS if side == PLUS else PLUS
            x, y, z = J.random(rng, side), J.random(rng, other), J.random(rng, side)
            assert tkk.recover_T(L, x, y, z, side) == J.triple(x, y, z)


def test_bracket_is_antisymmetric_and_graded():
    L = tkk.build_tkk(parse_family("rect:1x2", Q))
    for i in range(L.dim):
        for j in range(L.dim):
            a, b = L.unit_vector(i), L.unit_vector(j)
            ab, ba = L.bracket(a, b), L.bracket(b, a)
            assert ab == [-t for t in ba]
            g = L.grades[i] + L.grades[j]
            if abs(g) > 1:
                assert not any(ab)
            elif any(ab):
                assert L.grade_of(ab) == g


def test_sparse_and_direct_bracket_agree():
    L = tkk.build_tkk(parse_family("sym:2", Q))
    for i in range(L.dim):
        for j in range(L.dim):
            direct = L.bracket_direct(L.unit_vector(i), L.unit_vector(j))
            assert direct == L.bracket(L.unit_vector(i), L.unit_vector(j))


def test_recover_rejects_wrong_grade():
    J = parse_family("rect:1x2", Q)
    L = tkk.build_tkk(J)
    x = J.basis(PLUS)[0]
    with pytest.raises(tkk.GradeError):
        tkk.recover_T(L, x, x, x)


def test_minus_action_mutation_caught_by_jacobi():
    L = tkk.build_tkk(parse_family("rect:2x2", Q), mutation="minus-action")
    res = tkk.check_jacobi(L)
    assert res.failed > 0 and res.witnesses
    assert "triple" in res.witnesses[0]


def test_delta_sign_mutation_caught_by_recover():
    # a global sign on δ is an isomorphism, so only the read-back sees it
    L = tkk.build_tkk(parse_family("rect:2x2", Q), mutation="delta-sign")
    assert tkk.check_jacobi(L).ok
    res = tkk.check_recover(L)
    assert res.failed > 0
    w = res.witnesses[0]
    assert w["bracket"] != w["triple"]


def test_mutated_triple_breaks_closure_or_recover():
    J = parse_family("rect:2x2", Q)
    bad = lambda x, y, z: x @ y @ z - z @ y @ x  # noqa: E731
    try:
        L = tkk.build_tkk(J, triple=bad)
    except tkk.ClosureFailure:
        return
    assert not (tkk.check_jacobi(L).ok and tkk.check_recover(L, triple=bad).ok)


def test_unknown_mutation():
    with pytest.raises(ValueError):
        tkk.build_tkk(parse_family("rect:1x1", Q), mutation="nope")


def test_theta_needs_unary():
    L = tkk.build_tkk(parse_family("rect:1x2", Q))
    with pytest.raises(tkk.GradeError):
        tkk.theta(L, L.zero())


def test_summary_fields():
    s = tkk.tkk_summary(parse_family("rect:2x2", Q))
    assert s["dims"] == [4, 7, 4] and s["total"] == 15
    assert s["grading"]["pass"] and s["jacobi"]["pass"] and s["recover"]["pass"]


def test_herm_uses_fixed_ring():
    L = tkk.build_tkk(parse_family("herm:2", GaussianRational()))
    assert L.ring == Q
