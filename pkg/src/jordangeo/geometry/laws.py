"""Seeded checks of the five-variable laws and the basic chart identities."""

from __future__ import annotations

from typing import Callable

from jordangeo.geometry.core import (
    GrasCoPoint,
    GrasPoint,
    PairGeometry,
    chart,
    inner_dilation,
    pi_plus,
    transversal,
    unchart,
)
from jordangeo.linalg import Matrix, is_invertible, random_matrix
from jordangeo.report import CheckResult, make_rng, rejection


def dump(p) -> list:
    if isinstance(p, tuple):
        return [dump(q) for q in p]
    return p.to_json()


def _result(name: str, G: PairGeometry, samples: int, seed: int) -> CheckResult:
    return CheckResult(name=name, target=G.name, ring=G.ring.name, samples=samples, seed=seed)


def _witness(G: PairGeometry, points: dict, scalars: dict, **extra) -> dict:
    out = {k: dump(v) for k, v in points.items()}
    out.update({k: G.ring.format(v) for k, v in scalars.items()})
    out.update(extra)
    return out


def pg1_sides(G: PairGeometry, o, alpha, x, beta, y, r, s, pi: Callable | None = None):
    """Both sides of the first law, or None if some structure map is undefined."""
    P = pi or G.pi_plus
    T = G.transversal
    if not (T(o, alpha) and T(o, beta) and T(x, alpha) and T(y, alpha)):
        return None
    gamma = G.pi_minus(alpha, o, beta, r)
    if not (T(x, gamma) and T(y, gamma)):
        return None
    inner = P(x, gamma, y, s)
    u, v = P(o, alpha, x, r), P(o, alpha, y, r)
    if not (T(inner, alpha) and T(u, beta) and T(v, beta)):
        return None
    return P(o, alpha, inner, r), P(u, beta, v, s)


def pg2_sides(G: PairGeometry, x, alpha, y, beta, gamma, r, s, pi: Callable | None = None):
    P = pi or G.pi_plus
    T = G.transversal
    if not (T(x, alpha) and T(y, alpha) and T(x, beta) and T(y, beta) and T(x, gamma) and T(y, gamma)):
        return None
    w = P(y, beta, x, r)
    if not (T(w, alpha) and T(w, gamma)):
        return None
    delta = G.pi_minus(alpha, w, gamma, s)
    u, v = P(x, alpha, y, r), P(x, gamma, y, r)
    if not (T(x, delta) and T(y, delta) and T(u, beta) and T(v, beta)):
        return None
    return P(x, delta, y, r), P(u, beta, v, s)


def check_pg1(G: PairGeometry, samples: int = 100, seed: int = 0, pi: Callable | None = None) -> CheckResult:
    res = _result("pg1", G, samples, seed)
    rng = make_rng(seed, "pg1")

    def draw():
        o, x, y = G.random_point(rng), G.random_point(rng), G.random_point(rng)
        alpha, beta = G.random_copoint(rng), G.random_copoint(rng)
        r, s = G.random_scalar(rng), G.random_scalar(rng)
        sides = pg1_sides(G, o, alpha, x, beta, y, r, s, pi)
        return None if sides is None else (o, alpha, x, beta, y, r, s, sides)

    for _ in range(samples):
        o, alpha, x, beta, y, r, s, (lhs, rhs) = rejection(draw)
        ok = lhs == rhs and G.contains_point(lhs)
        res.record(ok, lambda: _witness(G, dict(o=o, alpha=alpha, x=x, beta=beta, y=y, lhs=lhs, rhs=rhs),
                                                dict(r=r, s=s)))
    return res


def check_pg2(G: PairGeometry, samples: int = 100, seed: int = 0, pi: Callable | None = None) -> CheckResult:
    """The second law, plus the symmetry Π_{1/2}(x, α, y) = Π_{1/2}(y, α, x)."""
    res = _result("pg2", G, samples, seed)
    rng = make_rng(seed, "pg2")
    P = pi or G.pi_plus
    half = G.ring.inv2
    sym_fail = 0

    def draw():
        x, y = G.random_point(rng), G.random_point(rng)
        alpha, beta, gamma = G.random_copoint(rng), G.random_copoint(rng), G.random_copoint(rng)
        r, s = G.random_scalar(rng), G.random_scalar(rng)
        sides = pg2_sides(G, x, alpha, y, beta, gamma, r, s, pi)
        return None if sides is None else (x, alpha, y, beta, gamma, r, s, sides)

    for _ in range(samples):
        x, alpha, y, beta, gamma, r, s, (lhs, rhs) = rejection(draw)
        sym = P(x, alpha, y, half) == P(y, alpha, x, half)
        sym_fail += not sym
        res.record(lhs == rhs and sym and G.contains_point(lhs),
                   lambda: _witness(G, dict(x=x, alpha=alpha, y=y, beta=beta, gamma=gamma, lhs=lhs, rhs=rhs),
                                    dict(r=r, s=s), midpoint_symmetric=sym))
    res.details["midpoint_symmetry_failures"] = sym_fail
    return res


def _transversal_triple(G, rng):
    def draw():
        x, y, a = G.random_point(rng), G.random_point(rng), G.random_copoint(rng)
        return (x, a, y) if G.transversal(x, a) and G.transversal(y, a) else None

    return rejection(draw)


def _random_invertible(ring, n: int, rng) -> Matrix:
    def draw():
        m = random_matrix(ring, n, n, rng)
        return m if is_invertible(m) else None

    return rejection(draw)


def check_rep_independence(G, samples: int = 200, seed: int = 0) -> CheckResult:
    """Π_r is unchanged when every representative is replaced by rep·M or M·rep."""
    res = _result("rep-indep", G, samples, seed)
    rng = make_rng(seed, "rep-indep")
    for _ in range(samples):
        x, a, y = _transversal_triple(G, rng)
        r = G.random_scalar(rng)
        k = x.dim
        x2 = GrasPoint(x.rep @ _random_invertible(G.ring, k, rng), check=False)
        y2 = GrasPoint(y.rep @ _random_invertible(G.ring, k, rng), check=False)
        a2 = GrasCoPoint(_random_invertible(G.ring, k, rng) @ a.rep, check=False)
        base = G.pi_plus(x, a, y, r)
        other = G.pi_plus(x2, a2, y2, r)
        res.record(base == other, lambda: _witness(G, dict(x=x, a=a, y=y, x2=x2, a2=a2, y2=y2), dict(r=r)))
    return res


def check_chart_consistency(G, samples: int = 200, seed: int = 0) -> CheckResult:
    """Π_r(x, a, y) = unchart(r·chart(y)), chart(x) = 0 and Σ agrees with chart addition."""
    res = _result("chart", G, samples, seed)
    rng = make_rng(seed, "chart")
    for _ in range(samples):
        x, a, y = _transversal_triple(G, rng)
        r = G.random_scalar(rng)
        c = chart(x, a, y)
        ok = G.pi_plus(x, a, y, r) == unchart(x, a, c.scale(r)) and chart(x, a, x).is_zero()
        ok = ok and unchart(x, a, c) == y
        res.record(ok, lambda: _witness(G, dict(x=x, a=a, y=y), dict(r=r)))
    return res


def check_dilations(G, samples: int = 100, seed: int = 0) -> CheckResult:
    """Inner dilations fix (o, a), scale charts by r and preserve transversality."""
    res = _result("dilation", G, samples, seed)
    rng = make_rng(seed, "dilation")
    for _ in range(samples):
        o, a, y = _transversal_triple(G, rng)
        r = G.random_unit(rng)
        g = inner_dilation(o, a, r)
        b = G.random_copoint(rng)
        ok = g(o) == o and g(a) == a
        ok = ok and chart(o, a, g(y)) == chart(o, a, y).scale(r)
        ok = ok and transversal(y, b) == transversal(g(y), g(b))
        res.record(ok, lambda: _witness(G, dict(o=o, a=a, y=y, b=b), dict(r=r)))
    return res


def wrong_pi(x, a, y, r):
    """Π with the weights swapped; used to show the law checkers are not vacuous."""
    ring = x.ring
    return pi_plus(x, a, y, ring.one() - ring.coerce(r))

