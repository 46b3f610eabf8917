"""Subspaces squeezed by a flag F1 ⊆ A ⊆ F2, and their linearity in charts."""

from __future__ import annotations

from dataclasses import dataclass

from jordangeo.geometry.core import GrasPoint, Grassmann, chart, pi_plus, sigma_sum
from jordangeo.geometry.laws import _result, _witness
from jordangeo.linalg import Matrix, has_full_column_rank, hstack, random_matrix, rank, span_contains
from jordangeo.report import CheckResult, make_rng, rejection


class InvalidFlag(ValueError):
    pass


@dataclass(frozen=True)
class IntrinsicSubspace:
    G: Grassmann
    F1: Matrix
    F2: Matrix

    @property
    def is_pure_state(self) -> bool:
        return self.F1.ncols == self.G.e - 1 and self.F2.ncols == self.G.e + 1

    def member(self, x: GrasPoint) -> bool:
        return span_contains(x.rep, self.F1) and span_contains(self.F2, x.rep)

    def random_member(self, rng) -> GrasPoint:
        """F1 plus random vectors of F2, rejected until the span has dim E."""
        G = self.G
        k = G.e - self.F1.ncols

        def draw():
            coeffs = random_matrix(G.ring, self.F2.ncols, k, rng)
            m = hstack(self.F1, self.F2 @ coeffs) if self.F1.ncols else self.F2 @ coeffs
            return GrasPoint(m, check=False) if has_full_column_rank(m) else None

        return rejection(draw)


def intrinsic_from_flag(G: Grassmann, F1: Matrix, F2: Matrix) -> IntrinsicSubspace:
    for F in (F1, F2):
        if F.nrows != G.ambient:
            raise InvalidFlag("flag member outside the ambient space")
        if F.ncols and not has_full_column_rank(F):
            raise InvalidFlag("flag members must be given by bases")
    if not span_contains(F2, F1):
        raise InvalidFlag("F1 is not contained in F2")
    if not F1.ncols <= G.e <= F2.ncols:
        raise InvalidFlag("need dim F1 ≤ dim E ≤ dim F2")
    return IntrinsicSubspace(G, F1, F2)


def pure_state_flag(G: Grassmann, rng) -> IntrinsicSubspace:
    """A random flag with dim F1 = E − 1 and dim F2 = E + 1."""
    if G.e < 1 or G.f < 1:
        raise InvalidFlag("pure states need E, F ≥ 1")

    def draw():
        F2 = random_matrix(G.ring, G.ambient, G.e + 1, rng)
        return F2 if has_full_column_rank(F2) else None

    F2 = rejection(draw)
    return IntrinsicSubspace(G, F2.cols(range(G.e - 1)), F2)


def check_intrinsic_linearity(I: IntrinsicSubspace, samples: int = 100, seed: int = 0) -> CheckResult:
    """Chart images of I ∩ a^⊤ at an origin o ∈ I are closed under sums and unit scaling.

    For pure-state flags the chart members are also required to have rank ≤ 1.
    """
    G = I.G
    res = _result("intrinsic", G, samples, seed)
    rng = make_rng(seed, "intrinsic")
    max_rank = 0

    def draw():
        o, y, z = I.random_member(rng), I.random_member(rng), I.random_member(rng)
        a = G.random_copoint(rng)
        ok = all(G.transversal(p, a) for p in (o, y, z))
        return (o, a, y, z) if ok else None

    for _ in range(samples):
        o, a, y, z = rejection(draw)
        r = G.random_unit(rng)
        ok = I.member(sigma_sum(o, a, y, z)) and I.member(pi_plus(o, a, y, r))
        if I.is_pure_state:
            rk = max(rank(chart(o, a, y)), rank(chart(o, a, z)))
            max_rank = max(max_rank, rk)
            ok = ok and rk <= 1
        res.record(ok, lambda: _witness(G, dict(o=o, a=a, y=y, z=z), dict(r=r)))
    res.details["pure_state"] = I.is_pure_state
    if I.is_pure_state:
        res.details["max_chart_rank"] = max_rank
    return res
