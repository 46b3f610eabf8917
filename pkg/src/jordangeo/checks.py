"""Registry of named checks runnable from the command line."""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable

from jordangeo import jordan, tkk
from jordangeo.geometry import core as gcore
from jordangeo.geometry import constructions, finite, intrinsic, laws, polarity
from jordangeo.linalg import is_direct_sum
from jordangeo.report import MAX_WITNESSES, CheckResult, DegenerateSampling, make_rng, rejection
from jordangeo.rings import GaussianRational, Ring


class NotApplicable(ValueError):
    """The check does not make sense for this (ring, target)."""


@dataclass(frozen=True)
class Check:
    name: str
    anchor: str
    kind: str  # "family" or "geometry"
    run: Callable[..., CheckResult]
    example: tuple[str, str]  # a (ring, target) it runs on


REGISTRY: dict[str, Check] = {}


def register(name: str, anchor: str, kind: str, example: tuple[str, str]):
    def deco(fn):
        REGISTRY[name] = Check(name, anchor, kind, fn, example)
        return fn

    return deco


def list_checks() -> list[str]:
    return [f"{c.name} — {c.anchor}" for c in sorted(REGISTRY.values(), key=lambda c: c.name)]


def _merge(name: str, target: str, ring: str, samples: int, seed: int, parts: list[CheckResult]) -> CheckResult:
    out = CheckResult(name=name, target=target, ring=ring, samples=samples, seed=seed)
    for p in parts:
        out.passed += p.passed
        out.failed += p.failed
        for w in p.witnesses:
            if len(out.witnesses) < MAX_WITNESSES:
                out.witnesses.append(dict(w, part=p.name))
        out.details[p.name] = {"passed": p.passed, "failed": p.failed, **p.details}
    return out


# ---------------------------------------------------------------------------
# Jordan structures


def _unary(J):
    if not J.unary:
        raise NotApplicable(f"{J.name} is not a triple system on one space")


@register("ljp1", "triple symmetry T(x,y,z) = T(z,y,x) (LJP1)", "family", ("Q", "full:2"))
def _ljp1(J, samples, seed):
    return jordan.check_ljp1(J, samples, seed)


@register("ljp2", "five-variable Jordan pair identity (LJP2)", "family", ("Q", "rect:2x3"))
def _ljp2(J, samples, seed):
    return jordan.check_ljp2(J, samples, seed)


@register("fundamental", "fundamental formula Q(Q(x)y) = Q(x)Q(y)Q(x)", "family", ("Q", "sym:2"))
def _fundamental(J, samples, seed):
    return jordan.check_fundamental(J, samples, seed)


@register("jordan-id", "Jordan identity (x²•y)•x = x²•(y•x)", "family", ("Q", "spin:4"))
def _jordan_id(J, samples, seed):
    _unary(J)
    if not J.has_bullet:
        raise NotApplicable(f"{J.name} carries no Jordan product")
    return jordan.check_jordan_identity(J, samples, seed)


@register("lts", "Jordan-Lie functor gives a Lie triple system", "family", ("Q", "full:2"))
def _lts(J, samples, seed):
    _unary(J)
    return jordan.check_lts(J, samples, seed)


@register("isotope", "unit e = Q(x)⁻¹x of the isotope at invertible x", "family", ("Q", "sym:2"))
def _isotope(J, samples, seed):
    if not jordan.is_invertible_element(J, _some_invertible(J), jordan.MINUS):
        raise NotApplicable(f"{J.name} has no invertible elements")
    return jordan.check_isotope(J, samples, seed)


def _some_invertible(J):
    rng = make_rng(0, "probe")
    for _ in range(200):
        x = J.random(rng, jordan.MINUS)
        if jordan.is_invertible_element(J, x, jordan.MINUS):
            return x
    return J.zero(jordan.MINUS)


@register("inner-ideal", "inner ideals T(I, V⁻, I) ⊆ I by complete basis check", "family", ("Q", "full:2"))
def _inner_ideal(J, samples, seed):
    parts = []
    for label, basis, expected in jordan.default_inner_ideals(J):
        r = jordan.check_inner_ideal(J, basis, name=label)
        ok = r.ok == expected
        rep = CheckResult(name=label, target=J.name, ring=J.ring.name, samples=1, seed=seed)
        rep.record(ok, {"ideal": label, "expected_inner": expected, "witnesses": r.witnesses[:1]})
        parts.append(rep)
    return _merge("inner-ideal", J.name, J.ring.name, len(parts), seed, parts)


@register("tkk", "Kantor-Koecher-Tits algebra: grading, Jacobi, [[x,y],z] = T(x,y,z)", "family", ("Q", "rect:2x2"))
def _tkk(J, samples, seed):
    try:
        L = tkk.build_tkk(J)
    except tkk.ClosureFailure as e:
        r = CheckResult(name="tkk", target=J.name, ring=J.ring.name, samples=1, seed=seed)
        r.record(False, {"closure": str(e)})
        return r
    parts = [tkk.check_grading(L), tkk.check_jacobi(L), tkk.check_recover(L), tkk.check_delta_ljp2(L)]
    if J.unary:
        parts.append(tkk.check_theta(L))
    out = _merge("tkk", J.name, J.ring.name, 0, seed, parts)
    out.samples = out.passed + out.failed
    out.details["dims"] = list(L.dims)
    out.details["total_dim"] = L.dim
    return out


@register("herm-spin", "Herm(2) over Qi matches Spin(4) with β = diag(1,−1,−1,−1)", "family", ("Qi", "herm:2"))
def _herm_spin(J, samples, seed):
    if J.name != "herm:2" or not isinstance(J.ring, GaussianRational):
        raise NotApplicable("herm-spin runs on herm:2 over Qi")
    r = jordan.herm_to_spin_iso(J.ring)
    r.seed = seed
    return r


# ---------------------------------------------------------------------------
# geometries


def _grassmann_only(G):
    if isinstance(G, gcore.Lagrangian):
        raise NotApplicable(f"this check runs on Grassmannians, not {G.name}")


def _finite(G):
    if not (G.ring.is_finite and G.ring.is_field):
        raise NotApplicable("this check enumerates a Grassmannian over Z/p")


@register("pg1", "first generalized projective law (PG1)", "geometry", ("Q", "gras:2x2"))
def _pg1(G, samples, seed):
    return laws.check_pg1(G, samples, seed)


@register("pg2", "second generalized projective law (PG2)", "geometry", ("Q", "gras:2x2"))
def _pg2(G, samples, seed):
    return laws.check_pg2(G, samples, seed)


@register("rep-indep", "Π_r independent of representatives", "geometry", ("Q", "gras:2x2"))
def _rep(G, samples, seed):
    return laws.check_rep_independence(G, samples, seed)


@register("chart", "Π_r = unchart(r·chart) and Σ in the affine chart", "geometry", ("Q", "gras:1x2"))
def _chart(G, samples, seed):
    return laws.check_chart_consistency(G, samples, seed)


@register("dilation", "inner dilations scale charts and preserve transversality", "geometry", ("Q", "gras:2x2"))
def _dilation(G, samples, seed):
    return laws.check_dilations(G, samples, seed)


@register("symm-space", "symmetric space μ(x,y) = Π₋₁(x, p(x), y): (S1), (S2), (S3)", "geometry", ("Q", "gras:1x2"))
def _symm(G, samples, seed):
    _grassmann_only(G)
    return polarity.check_symmetric_space(polarity.polarity_from_form(G), samples, seed)


@register("null-system", "null system: x never transversal to itself, dilation-equivariant", "geometry",
          ("Q", "gras:2x2"))
def _null(G, samples, seed):
    _grassmann_only(G)
    if G.e != G.f:
        raise NotApplicable("a null system needs a Grassmannian gras:nxn")
    return polarity.check_null_system(G, samples, seed, dilations=max(1, samples // 2))


@register("midpoint", "midpoint Π_½(x, a, y) is injective in a for complementary x, y", "geometry",
          ("Zmod:5", "gras:1x1"))
def _midpoint(G, samples, seed):
    if G.e != G.f:
        raise NotApplicable("the midpoint map is injective only on gras:nxn")
    rng = make_rng(seed, "midpoint")
    small = G.ring.is_finite and G.ring.is_field and not isinstance(G, gcore.Lagrangian)
    if small:
        try:
            pts = finite.enumerate_points(G)
        except finite.TooLarge:
            small = False
    if small:
        x = pts[0]
        y = next(p for p in pts if is_direct_sum(x.rep, p.rep))
        return finite.check_midpoint_injective(G, x, y)

    def draw():
        x, y = G.random_point(rng), G.random_point(rng)
        return (x, y) if is_direct_sum(x.rep, y.rep) else None

    def seeing_both():
        c = G.random_copoint(rng)
        return c if G.transversal(x, c) and G.transversal(y, c) else None

    x, y = rejection(draw)
    res = CheckResult(name="midpoint", target=G.name, ring=G.ring.name, samples=samples, seed=seed)
    seen: dict = {}
    half = G.ring.inv2
    for _ in range(samples):
        a = rejection(seeing_both)
        m = G.pi_plus(x, a, y, half)
        fresh = seen.setdefault(m, a) == a
        ok = fresh and G.pi_plus(y, a, x, half) == m and G.pi_plus(x, a, x, half) == x
        res.record(ok, lambda: {"x": x.to_json(), "y": y.to_json(), "a": a.to_json()})
    return res


@register("intrinsic", "flag-intrinsic subspaces are linear in charts; pure states have rank ≤ 1", "geometry",
          ("Q", "gras:2x2"))
def _intrinsic(G, samples, seed):
    _grassmann_only(G)
    if not G.ring.is_field:
        raise NotApplicable(f"chart ranks need a field, not {G.ring.name}")
    I = intrinsic.pure_state_flag(G, make_rng(seed, "flag"))
    return intrinsic.check_intrinsic_linearity(I, samples, seed)


@register("tangent", "tangent geometry over K[ε]: laws and base-part projection", "geometry", ("Q", "gras:1x2"))
def _tangent(G, samples, seed):
    TG = constructions.scalar_extend_tangent(G)
    parts = [constructions.check_tangent(G, samples, seed), laws.check_pg1(TG, samples, seed),
             laws.check_pg2(TG, samples, seed)]
    return _merge("tangent", G.name, G.ring.name, samples, seed, parts)


@register("product", "direct product geometry and the exchange polarity", "geometry", ("Q", "gras:1x1"))
def _product(G, samples, seed):
    P = constructions.product_geometry(G, G)
    parts = [laws.check_pg1(P, samples, seed), laws.check_pg2(P, samples, seed),
             constructions.check_exchange_polarity(G, samples, seed)]
    return _merge("product", G.name, G.ring.name, samples, seed, parts)


@register("enumerate", "finite Grassmannian: point count, visible worlds, covering axioms", "geometry",
          ("Zmod:5", "gras:1x1"))
def _enumerate(G, samples, seed):
    _grassmann_only(G)
    _finite(G)
    r = finite.check_enumeration(G)
    r.seed = seed
    return r


@register("faithful-small", "distinct co-points are distinguishable", "geometry", ("Zmod:5", "gras:1x1"))
def _faithful(G, samples, seed):
    _grassmann_only(G)
    _finite(G)
    r = finite.check_faithful_small(G)
    r.seed = seed
    return r


# ---------------------------------------------------------------------------


def build_target(target: str, ring: Ring):
    """A Jordan structure or a geometry, by name."""
    if gcore.is_geometry_spec(target):
        return "geometry", gcore.parse_geometry(target, ring)
    return "family", jordan.parse_family(target, ring)


def applicable(kind: str) -> list[str]:
    return [n for n, c in REGISTRY.items() if c.kind == kind]


def run_check(name: str, kind: str, obj, samples: int, seed: int) -> CheckResult:
    check = REGISTRY[name]
    if check.kind != kind:
        raise NotApplicable(f"{name} runs on a {check.kind}, not a {kind}")
    t0 = time.perf_counter()
    try:
        res = check.run(obj, samples, seed)
    except DegenerateSampling as e:
        res = CheckResult(name=name, target=obj.name, ring=obj.ring.name, samples=samples, seed=seed)
        res.record(False, {"error": str(e)})
    res.name = name
    res.elapsed_ms = round((time.perf_counter() - t0) * 1000, 3)
    return res
