"""Exhaustive checks on Grassmannians over Z/p, and common charts."""

from __future__ import annotations

from itertools import combinations, product

from jordangeo.geometry.core import (
    GrasCoPoint,
    GrasPoint,
    Grassmann,
    chart,
    copoint_from_subspace,
    pi_plus,
    transversal,
)
from jordangeo.linalg import Matrix, find_common_complement
from jordangeo.report import CheckResult

MAX_POINTS = 10_000


class TooLarge(ValueError):
    pass


def count_echelon(q: int, n: int, k: int) -> int:
    """Gaussian binomial [n choose k]_q: the number of k-subspaces of (Z/q)^n."""
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def _echelon_rows(ring, n: int, k: int):
    """All k×n reduced row echelon matrices of rank k over a finite field."""
    elems = list(ring.elements())
    zero, one = ring.zero(), ring.one()
    for pivots in combinations(range(n), k):
        free = [(i, j) for i, p in enumerate(pivots) for j in range(p + 1, n) if j not in pivots]
        for values in product(elems, repeat=len(free)):
            rows = [[zero] * n for _ in range(k)]
            for i, p in enumerate(pivots):
                rows[i][p] = one
            for (i, j), v in zip(free, values):
                rows[i][j] = v
            yield Matrix(ring, rows, n)


def _require_small(G: Grassmann):
    ring = G.ring
    if not ring.is_finite or not ring.is_field:
        raise ValueError(f"enumeration needs a finite field, not {ring.name}")
    size = count_echelon(len(list(ring.elements())), G.ambient, G.e)
    if size > MAX_POINTS:
        raise TooLarge(f"{size} points exceed the enumeration limit {MAX_POINTS}")
    return size


def enumerate_points(G: Grassmann) -> list[GrasPoint]:
    _require_small(G)
    return [GrasPoint(m.T, check=False) for m in _echelon_rows(G.ring, G.ambient, G.e)]


def enumerate_copoints(G: Grassmann) -> list[GrasCoPoint]:
    _require_small(G)
    return [GrasCoPoint(m, check=False) for m in _echelon_rows(G.ring, G.ambient, G.e)]


def visible_world(a: GrasCoPoint, points: list[GrasPoint]) -> list[GrasPoint]:
    """a^⊤ inside a list of points."""
    return [x for x in points if transversal(x, a)]


def _res(name: str, G: Grassmann) -> CheckResult:
    return CheckResult(name=name, target=G.name, ring=G.ring.name, samples=0, seed=0)


def check_enumeration(G: Grassmann) -> CheckResult:
    """Point count, distinct canonical forms, visible-world sizes and the two covering axioms."""
    res = _res("enumerate", G)
    points = enumerate_points(G)
    copoints = enumerate_copoints(G)
    q = len(list(G.ring.elements()))
    expected = count_echelon(q, G.ambient, G.e)
    res.record(len(points) == expected and len(set(points)) == len(points),
               {"points": len(points), "expected": expected})
    worlds = {}
    for a in copoints:
        w = visible_world(a, points)
        worlds[a] = len(w)
        # (a) every co-point sees some point
        res.record(bool(w), {"copoint": a.to_json(), "axiom": "a"})
    for x in points:
        # (b) every point is seen by some co-point
        res.record(any(transversal(x, a) for a in copoints), {"point": x.to_json(), "axiom": "b"})
    expected_world = q ** (G.e * G.f)
    for a, n in worlds.items():
        res.record(n == expected_world, {"copoint": a.to_json(), "visible": n, "expected": expected_world})
    res.samples = res.passed + res.failed
    res.details.update(points=len(points), copoints=len(copoints), visible_world_sizes=sorted(set(worlds.values())),
                       point_list=[x.canonical.to_json() for x in points])
    return res


def _chart_table(G: Grassmann, o: GrasPoint, a: GrasCoPoint, world: list[GrasPoint]) -> dict:
    return {y: chart(o, a, y).key() for y in world}


def check_faithful_small(G: Grassmann) -> CheckResult:
    """Distinct co-points differ in visible world or in chart structure at a shared origin."""
    res = _res("faithful-small", G)
    points = enumerate_points(G)
    copoints = enumerate_copoints(G)
    worlds = {a: frozenset(visible_world(a, points)) for a in copoints}
    for a, b in combinations(copoints, 2):
        if worlds[a] != worlds[b]:
            res.record(True)
            continue
        shared = worlds[a]
        distinguished = any(
            _chart_table(G, o, a, list(shared)) != _chart_table(G, o, b, list(shared)) for o in shared
        )
        res.record(distinguished, {"a": a.to_json(), "b": b.to_json()})
    res.samples = res.passed + res.failed
    return res


def find_common_chart(G: Grassmann, x: GrasPoint, y: GrasPoint, seed: int = 0) -> GrasCoPoint:
    """A co-point transversal to both x and y (raises NotFound)."""
    c = find_common_complement(x.rep, y.rep, seed=seed)
    a = copoint_from_subspace(c) if c.ncols else GrasCoPoint(Matrix.identity(G.ring, G.ambient), check=False)
    assert transversal(x, a) and transversal(y, a)
    return a


def check_midpoint_injective(G: Grassmann, x: GrasPoint, y: GrasPoint) -> CheckResult:
    """a ↦ Π_{1/2}(x, a, y) is injective on the co-points seeing both x and y."""
    res = _res("midpoint", G)
    half = G.ring.inv2
    seen: dict = {}
    for a in enumerate_copoints(G):
        if not (transversal(x, a) and transversal(y, a)):
            continue
        m = pi_plus(x, a, y, half)
        res.record(m not in seen, lambda: {"a": a.to_json(), "b": seen[m].to_json(), "midpoint": m.to_json()})
        seen.setdefault(m, a)
    res.samples = res.passed + res.failed
    res.details["copoints"] = len(seen)
    return res
