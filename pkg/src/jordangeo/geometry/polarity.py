"""Polarities from nondegenerate forms, the induced symmetric space, and null systems."""

from __future__ import annotations

from jordangeo.geometry.core import (
    GrasCoPoint,
    GrasPoint,
    Grassmann,
    NotTransversal,
    chart,
    copoint_from_subspace,
    inner_dilation,
    pi_plus,
    transversal,
)
from jordangeo.geometry.laws import _result, _transversal_triple, _witness
from jordangeo.linalg import Form, is_invertible, orth_complement
from jordangeo.report import CheckResult, make_rng, rejection


class IsotropicPoint(ValueError):
    """μ(x, ·) needs x transversal to its own polar."""


class Polarity:
    """x ↦ x^⊥ (as a co-point) and α ↦ ker(α)^⊥ for a form ω(u, v) = adj(u)·G·v."""

    def __init__(self, G: Grassmann, form: Form, search: int = 1000):
        if form.dim != G.ambient:
            raise ValueError("form and geometry live on different spaces")
        self.G = G
        self.form = form
        # at least one non-isotropic point has to exist
        rng = make_rng(0, "polarity")
        for _ in range(search):
            if not self.is_isotropic(G.random_point(rng)):
                break
        else:
            raise ValueError("no non-isotropic point found")

    def plus(self, x: GrasPoint) -> GrasCoPoint:
        adj = self.form.adj
        return GrasCoPoint(adj(x.rep) @ adj(self.form.gram), check=False)

    def minus(self, a: GrasCoPoint) -> GrasPoint:
        return GrasPoint(orth_complement(self.form, a.subspace()), check=False)

    def __call__(self, x: GrasPoint) -> GrasCoPoint:
        return self.plus(x)

    def is_isotropic(self, x: GrasPoint) -> bool:
        return not is_invertible(self.plus(x).rep @ x.rep)


def polarity_from_form(G: Grassmann, form: Form | None = None) -> Polarity:
    """Default: the dot product (standard form of the ring)."""
    return Polarity(G, form or Form.standard(G.ring, G.ambient))


def is_isotropic(p: Polarity, x: GrasPoint) -> bool:
    return p.is_isotropic(x)


def mu(p: Polarity, x: GrasPoint, y: GrasPoint) -> GrasPoint:
    """μ(x, y) = Π_{−1}(x, p(x), y)."""
    if p.is_isotropic(x):
        raise IsotropicPoint("base point is isotropic")
    px = p.plus(x)
    if not transversal(y, px):
        raise NotTransversal("y is not transversal to the polar of x")
    return pi_plus(x, px, y, -x.ring.one())


def _active(p: Polarity, x: GrasPoint, *ys: GrasPoint) -> bool:
    if p.is_isotropic(x):
        return False
    px = p.plus(x)
    return all(transversal(y, px) for y in ys)


def check_symmetric_space(p: Polarity, samples: int = 100, seed: int = 0) -> CheckResult:
    """μ(x,x) = x, μ(x,μ(x,y)) = y, μ(x,μ(y,z)) = μ(μ(x,y),μ(x,z)), charts negated, p⁻p⁺ = id."""
    G = p.G
    res = _result("symm-space", G, samples, seed)
    rng = make_rng(seed, "symm-space")
    counts = {"S1": 0, "S2": 0, "S3": 0, "negation": 0, "involution": 0}

    def draw():
        x, y, z = G.random_point(rng), G.random_point(rng), G.random_point(rng)
        if not (_active(p, x, y, z) and _active(p, y, z)):
            return None
        mxy, mxz, myz = mu(p, x, y), mu(p, x, z), mu(p, y, z)
        if not (_active(p, x, myz) and _active(p, mxy, mxz)):
            return None
        return x, y, z, mxy, mxz, myz

    for _ in range(samples):
        x, y, z, mxy, mxz, myz = rejection(draw)
        px = p.plus(x)
        fails = []
        if mu(p, x, x) != x:
            fails.append("S1")
        if mu(p, x, mxy) != y:
            fails.append("S2")
        if mu(p, x, myz) != mu(p, mxy, mxz):
            fails.append("S3")
        if chart(x, px, mxy) != -chart(x, px, y):
            fails.append("negation")
        if p.minus(px) != x:
            fails.append("involution")
        for f in fails:
            counts[f] += 1
        res.record(not fails, lambda: _witness(G, dict(x=x, y=y, z=z), {}, failed=fails))
    res.details["failures_by_property"] = counts
    return res


# ---------------------------------------------------------------------------
# null systems


def null_system(x: GrasPoint) -> GrasCoPoint:
    """The co-point naming the subspace x itself."""
    return copoint_from_subspace(x.rep)


def check_null_system(G: Grassmann, samples: int = 100, seed: int = 0, dilations: int = 50) -> CheckResult:
    if G.e != G.f:
        raise ValueError("a null system needs dim E = dim F")
    res = _result("null-system", G, samples, seed)
    rng = make_rng(seed, "null-system")
    for _ in range(samples):
        x = G.random_point(rng)
        res.record(not transversal(x, null_system(x)), lambda: _witness(G, dict(x=x), {}, property="self-transversal"))
    equiv_fail = 0
    for _ in range(dilations):
        o, a, y = _transversal_triple(G, rng)
        r = G.random_unit(rng)
        g = inner_dilation(o, a, r)
        ok = g(null_system(y)) == null_system(g(y))
        equiv_fail += not ok
        res.record(ok, lambda: _witness(G, dict(o=o, a=a, y=y), dict(r=r), property="equivariance"))
    res.details["dilations"] = dilations
    res.details["equivariance_failures"] = equiv_fail
    return res


def midpoint_map(x: GrasPoint, y: GrasPoint, a: GrasCoPoint) -> GrasPoint:
    return pi_plus(x, a, y, x.ring.inv2)
