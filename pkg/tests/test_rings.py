import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from jordangeo.rings import (
    Dual,
    GaussianRational,
    Modular,
    NotAUnit,
    Rational,
    RingMismatch,
    base_part,
    embed_dual,
    parse_ring,
)

RING_SPECS = ["Q", "Qi", "Zmod:5", "Zmod:7", "dual:Q", "dual:Qi", "dual:Zmod:5", "dual:dual:Q"]


@pytest.mark.parametrize("spec", RING_SPECS)
def test_ring_axioms_on_seeded_triples(spec):
    ring = parse_ring(spec)
    rng = random.Random(spec)
    zero, one = ring.zero(), ring.one()
    for _ in range(200):
        a, b, c = (ring.random(rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a
        assert a * b == b * a
        assert a + zero == a and a * one == a
        assert a - a == zero


@pytest.mark.parametrize("spec", RING_SPECS)
def test_two_and_three_are_units(spec):
    ring = parse_ring(spec)
    assert ring.coerce(2) * ring.inv2 == ring.one()
    assert ring.coerce(3) * ring.inv3 == ring.one()


@pytest.mark.parametrize("p", [2, 3])
def test_small_moduli_rejected(p):
    with pytest.raises(ValueError, match="modulus must make 2 and 3 units"):
        Modular(p)


@pytest.mark.parametrize("p", [1, 4, 9, 25])
def test_composite_moduli_rejected(p):
    with pytest.raises(ValueError):
        Modular(p)


def test_parse_ring_names():
    assert parse_ring("Q") == Rational()
    assert parse_ring("Zmod:11") == Modular(11)
    assert parse_ring("dual:dual:Q") == Dual(Dual(Rational()))
    assert parse_ring("dual:dual:Q").name == "dual:dual:Q"
    for bad in ["R", "Zmod:x", "dual:", "Zmod:"]:
        with pytest.raises(ValueError):
            parse_ring(bad)


def test_rational_payload_lowest_terms():
    ring = Rational()
    x = ring.coerce(Fraction(6, -4))
    assert x.numerator == -3 and x.denominator == 2
    assert ring.format(x) == "-3/2"


def test_modular_payload_in_range():
    ring = Modular(7)
    assert ring.coerce(-1).v == 6
    assert ring.coerce(Fraction(1, 2)).v == 4  # 2·4 = 8 ≡ 1
    rng = random.Random(0)
    assert all(0 <= ring.random(rng).v < 7 for _ in range(100))


def test_dual_epsilon_squares_to_zero():
    for spec in ["dual:Q", "dual:Zmod:5", "dual:dual:Q"]:
        ring = parse_ring(spec)
        assert ring.eps * ring.eps == ring.zero()
        assert ring.eps != ring.zero()


def test_dual_nested_epsilons_differ():
    inner = Dual(Rational())
    outer = Dual(inner)
    e1 = outer.coerce(inner.eps)
    e2 = outer.eps
    assert e1 * e1 == outer.zero() and e2 * e2 == outer.zero()
    assert e1 * e2 != outer.zero()


def test_dual_is_local_by_enumeration():
    ring = Dual(Modular(5))
    for x in ring.elements():
        assert ring.is_unit(x) == bool(base_part(x))
        if ring.is_unit(x):
            assert x * ring.inv(x) == ring.one()
        else:
            with pytest.raises(NotAUnit):
                ring.inv(x)


def test_dual_inverse_formula():
    ring = Dual(Rational())
    x = ring.make(2, 3)
    # (u + vε)⁻¹ = u⁻¹ − v u⁻² ε
    assert ring.inv(x) == ring.make(Fraction(1, 2), Fraction(-3, 4))


def test_embed_dual_is_a_homomorphism():
    base = Rational()
    rng = random.Random(1)
    for _ in range(50):
        a, b = base.random(rng), base.random(rng)
        assert embed_dual(a + b, base) == embed_dual(a, base) + embed_dual(b, base)
        assert embed_dual(a * b, base) == embed_dual(a, base) * embed_dual(b, base)


@pytest.mark.parametrize("spec", ["Qi", "dual:Qi"])
def test_conjugation_is_involutive_automorphism(spec):
    ring = parse_ring(spec)
    rng = random.Random(2)
    for _ in range(200):
        a, b = ring.random(rng), ring.random(rng)
        assert ring.conj(ring.conj(a)) == a
        assert ring.conj(a * b) == ring.conj(a) * ring.conj(b)
        assert ring.conj(a + b) == ring.conj(a) + ring.conj(b)


def test_gaussian_i_squared():
    ring = GaussianRational()
    assert ring.i * ring.i == ring.coerce(-1)
    assert ring.conj(ring.i) == -ring.i
    assert ring.fixed_ring() == Rational()


def test_mixed_ring_arithmetic_refused():
    with pytest.raises(RingMismatch):
        Modular(5).coerce(Modular(7).one())


@pytest.mark.parametrize("spec", RING_SPECS)
def test_format_parse_round_trip(spec):
    ring = parse_ring(spec)
    rng = random.Random(3)
    for _ in range(100):
        x = ring.random(rng)
        assert ring.parse(ring.format(x)) == x


@given(st.integers(-50, 50), st.integers(1, 50), st.integers(-50, 50), st.integers(1, 50))
def test_rational_field_inverse(a, b, c, d):
    ring = Rational()
    x = ring.coerce(Fraction(a, b))
    y = ring.coerce(Fraction(c, d))
    if x:
        assert x * ring.inv(x) == ring.one()
    assert (x + y) - y == x


@given(st.integers(0, 10_000), st.sampled_from([5, 7, 11, 13]))
def test_modular_inverse_property(v, p):
    ring = Modular(p)
    x = ring.coerce(v)
    if x:
        assert x * ring.inv(x) == ring.one()
    else:
        assert not ring.is_unit(x)


def test_mixed_depth_dual_arithmetic():
    inner = Dual(Rational())
    outer = Dual(inner)
    e1, e2 = inner.eps, outer.eps
    assert e1 * e2 == e2 * e1 == outer.coerce(e1) * e2
    assert e1 * e2 != outer.zero()
    assert (e2 - e1) == -(e1 - e2)
    assert e1 + e2 == outer.coerce(e1) + e2
    with pytest.raises(RingMismatch):
        inner.coerce(e2)
