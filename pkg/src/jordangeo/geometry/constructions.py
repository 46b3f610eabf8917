"""New geometries from old: scalar extension to K[ε], duals and products."""

from __future__ import annotations

from jordangeo.geometry.core import Grassmann, PairGeometry
from jordangeo.geometry.laws import _result, _transversal_triple, _witness
from jordangeo.linalg import Matrix
from jordangeo.report import CheckResult, make_rng, rejection
from jordangeo.rings import Dual, RingMismatch, base_part, embed_dual


# ---------------------------------------------------------------------------
# tangent geometry


def scalar_extend_tangent(G: Grassmann) -> Grassmann:
    return G.with_ring(Dual(G.ring))


def lift(p, TG: Grassmann):
    """Embed a point or co-point over K into the extension over K[ε]."""
    base = TG.ring.base
    m = Matrix(TG.ring, [[embed_dual(x, base) for x in row] for row in p.rep.rows], p.rep.ncols)
    return type(p)(m, check=False)


def project(p, G: Grassmann):
    """Base-part projection K[ε] → K applied entrywise to a representative."""
    m = Matrix(G.ring, [[base_part(x) for x in row] for row in p.rep.rows], p.rep.ncols)
    return type(p)(m, check=False)


def _perturb(p, TG: Grassmann, rng):
    ring = TG.ring
    noise = Matrix(ring, [[ring.make(0, ring.base.random(rng)) for _ in row] for row in p.rep.rows], p.rep.ncols)
    return type(p)(p.rep + noise, check=False)


def check_tangent(G: Grassmann, samples: int = 100, seed: int = 0) -> CheckResult:
    """Lift-then-project is the identity, and base-part projection commutes with Π±_r."""
    TG = scalar_extend_tangent(G)
    res = _result("tangent", G, samples, seed)
    rng = make_rng(seed, "tangent")

    def draw():
        x, a, y = _transversal_triple(G, rng)
        b = G.random_copoint(rng)
        return (x, a, y, b) if G.transversal(x, b) else None

    for _ in range(samples):
        x, a, y, b = rejection(draw)
        r = G.random_scalar(rng)
        lx, la, ly, lb = (_perturb(lift(p, TG), TG, rng) for p in (x, a, y, b))
        lr = TG.ring.make(r, G.ring.random(rng))
        ok = all(project(lift(p, TG), G) == p for p in (x, a, y, b))
        # units of K[ε] are detected on the base part, so transversality lifts
        ok = ok and TG.transversal(lx, la) and TG.transversal(ly, la) and TG.transversal(lx, lb)
        ok = ok and project(TG.pi_plus(lx, la, ly, lr), G) == G.pi_plus(x, a, y, r)
        ok = ok and project(TG.pi_minus(la, lx, lb, lr), G) == G.pi_minus(a, x, b, r)
        res.record(ok, lambda: _witness(TG, dict(x=lx, a=la, y=ly, b=lb), dict(r=lr)))
    return res


# ---------------------------------------------------------------------------
# dual and product geometries


class DualGeometry(PairGeometry):
    """(X⁻, X⁺): points and co-points exchange roles."""

    def __init__(self, base: PairGeometry):
        self.base = base
        self.ring = base.ring
        self.name = f"dual({base.name})"

    @property
    def scalar_ring(self):
        return self.base.scalar_ring

    def random_point(self, rng):
        return self.base.random_copoint(rng)

    def random_copoint(self, rng):
        return self.base.random_point(rng)

    def transversal(self, x, a) -> bool:
        return self.base.transversal(a, x)

    def pi_plus(self, x, a, y, r):
        return self.base.pi_minus(x, a, y, r)

    def pi_minus(self, a, x, b, r):
        return self.base.pi_plus(a, x, b, r)

    def contains_point(self, x) -> bool:
        return self.base.contains_copoint(x)

    def contains_copoint(self, a) -> bool:
        return self.base.contains_point(a)


class ProductGeometry(PairGeometry):
    """Componentwise transversality and structure maps on tuples."""

    def __init__(self, *factors: PairGeometry):
        if not factors:
            raise ValueError("empty product")
        ring = factors[0].ring
        if any(g.ring != ring for g in factors):
            raise RingMismatch("product factors must share the ring")
        self.factors = factors
        self.ring = ring
        self.name = " × ".join(g.name for g in factors)

    @property
    def scalar_ring(self):
        rings = {g.scalar_ring for g in self.factors}
        return rings.pop() if len(rings) == 1 else self.factors[0].scalar_ring

    def random_point(self, rng):
        return tuple(g.random_point(rng) for g in self.factors)

    def random_copoint(self, rng):
        return tuple(g.random_copoint(rng) for g in self.factors)

    def transversal(self, x, a) -> bool:
        return all(g.transversal(xi, ai) for g, xi, ai in zip(self.factors, x, a))

    def pi_plus(self, x, a, y, r):
        return tuple(g.pi_plus(*t, r) for g, *t in zip(self.factors, x, a, y))

    def pi_minus(self, a, x, b, r):
        return tuple(g.pi_minus(*t, r) for g, *t in zip(self.factors, a, x, b))

    def contains_point(self, x) -> bool:
        return all(g.contains_point(xi) for g, xi in zip(self.factors, x))

    def contains_copoint(self, a) -> bool:
        return all(g.contains_copoint(ai) for g, ai in zip(self.factors, a))


def product_geometry(*factors: PairGeometry) -> ProductGeometry:
    return ProductGeometry(*factors)


def exchange(p: tuple) -> tuple:
    """τ((x, α)) = (α, x)."""
    x, a = p
    return a, x


def check_exchange_polarity(G: PairGeometry, samples: int = 50, seed: int = 0) -> CheckResult:
    """τ on G × dual(G): τ² = id and τ(Π⁺_r(p, q, p')) = Π⁻_r(τp, τq, τp')."""
    P = ProductGeometry(G, DualGeometry(G))
    res = _result("exchange", P, samples, seed)
    res.target = G.name
    rng = make_rng(seed, "exchange")

    def draw():
        p, p2, q = P.random_point(rng), P.random_point(rng), P.random_copoint(rng)
        return (p, q, p2) if P.transversal(p, q) and P.transversal(p2, q) else None

    for _ in range(samples):
        p, q, p2 = rejection(draw)
        r = P.random_scalar(rng)
        ok = exchange(exchange(p)) == p
        ok = ok and P.transversal(p, q) == P.transversal(exchange(q), exchange(p))
        ok = ok and exchange(P.pi_plus(p, q, p2, r)) == P.pi_minus(exchange(p), exchange(q), exchange(p2), r)
        res.record(ok, lambda: _witness(P, dict(p=p, q=q, p2=p2), dict(r=r)))
    return res

