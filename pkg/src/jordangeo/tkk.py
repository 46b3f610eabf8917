"""The 3-graded Lie algebra g = V- ⊕ g0 ⊕ V+ of a Jordan pair.

g0 is the span of the operator pairs δ(x, y) = (T(x, y, ·), −T(y, x, ·)) realized
as concrete matrices on V+ and V-.  Elements of g are flat coordinate lists
ordered (V+ | g0 | V-) and carry grades +1, 0, −1 respectively.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable

from jordangeo.jordan import MINUS, PLUS, JordanStructure, linear_map_matrix
from jordangeo.linalg import Matrix, row_echelon
from jordangeo.report import CheckResult
from jordangeo.rings import Ring


class ClosureFailure(ArithmeticError):
    """An operator pair that should lie in g0 does not."""


class GradeError(ValueError):
    pass


MUTATIONS = ("delta-sign", "minus-action")


@dataclass
class GradedLie:
    J: JordanStructure
    ring: Ring
    dims: tuple[int, int, int]  # (d-, d0, d+)
    g0_action: list[tuple[Matrix, Matrix]]
    labels: list[tuple[int, str]]
    _pivots: list[int] = field(repr=False, default_factory=list)
    _g0_rows: list[list] = field(repr=False, default_factory=list)
    _delta: dict = field(repr=False, default_factory=dict)
    mutation: str | None = None
    _table: dict | None = field(repr=False, default=None)

    @property
    def dim(self) -> int:
        return sum(self.dims)

    @property
    def grades(self) -> list[int]:
        return [g for g, _ in self.labels]

    # -- layout -----------------------------------------------------------
    def split(self, w: list) -> tuple[list, list, list]:
        dm, d0, dp = self.dims
        return w[:dp], w[dp:dp + d0], w[dp + d0:]

    def join(self, u: list, c: list, v: list) -> list:
        return list(u) + list(c) + list(v)

    def zero(self) -> list:
        return [self.ring.zero()] * self.dim

    def unit_vector(self, i: int) -> list:
        w = self.zero()
        w[i] = self.ring.one()
        return w

    def embed(self, x: Matrix, side: str) -> list:
        """The element x of V+ (grade +1) or V- (grade −1) as a vector of g."""
        dm, d0, dp = self.dims
        c = [self.ring.coerce(t) for t in self.J.coords(x, side)]
        z = self.ring.zero()
        if side == PLUS:
            return self.join(c, [z] * d0, [z] * dm)
        return self.join([z] * dp, [z] * d0, c)

    def grade_of(self, w: list) -> int | None:
        """The unique grade carrying w, or None for mixed or zero vectors."""
        u, c, v = self.split(w)
        parts = [g for g, part in ((1, u), (0, c), (-1, v)) if any(part)]
        return parts[0] if len(parts) == 1 else None

    # -- g0 ---------------------------------------------------------------
    def _flatten(self, dp: Matrix, dm: Matrix) -> list:
        return dp.entries() + dm.entries()

    def _unflatten(self, flat: list) -> tuple[Matrix, Matrix]:
        dm, _, dp = self.dims
        a = Matrix(self.ring, [flat[i * dp:(i + 1) * dp] for i in range(dp)], dp)
        off = dp * dp
        b = Matrix(self.ring, [flat[off + i * dm:off + (i + 1) * dm] for i in range(dm)], dm)
        return a, b

    def g0_coords(self, dplus: Matrix, dminus: Matrix) -> list:
        flat = self._flatten(dplus, dminus)
        c = [flat[p] for p in self._pivots]
        back = [self.ring.zero()] * len(flat)
        for ck, row in zip(c, self._g0_rows):
            if ck:
                back = [s + ck * r for s, r in zip(back, row)]
        if back != flat:
            raise ClosureFailure("operator pair outside the span of δ(V+, V-)")
        return c

    def g0_element(self, c: list) -> tuple[Matrix, Matrix]:
        flat = [self.ring.zero()] * len(self._g0_rows[0]) if self._g0_rows else []
        for ck, row in zip(c, self._g0_rows):
            if ck:
                flat = [s + ck * r for s, r in zip(flat, row)]
        if not flat:
            dm, _, dp = self.dims
            return Matrix.zeros(self.ring, dp, dp), Matrix.zeros(self.ring, dm, dm)
        return self._unflatten(flat)

    def delta(self, u: list, v: list) -> tuple[Matrix, Matrix]:
        """δ(u, v) for coordinate vectors u ∈ V+, v ∈ V-, by bilinearity."""
        dm, _, dp = self.dims
        acc_p = Matrix.zeros(self.ring, dp, dp)
        acc_m = Matrix.zeros(self.ring, dm, dm)
        for i, ui in enumerate(u):
            if not ui:
                continue
            for j, vj in enumerate(v):
                if not vj:
                    continue
                a, b = self._delta[i, j]
                acc_p = acc_p + a.scale(ui * vj)
                acc_m = acc_m + b.scale(ui * vj)
        return acc_p, acc_m

    # -- bracket ----------------------------------------------------------
    def bracket_direct(self, w1: list, w2: list) -> list:
        """Bracket evaluated from the defining formula (no structure constants)."""
        u1, c1, v1 = self.split(w1)
        u2, c2, v2 = self.split(w2)
        A1, B1 = self.g0_element(c1)
        A2, B2 = self.g0_element(c2)
        col = lambda xs: Matrix(self.ring, [[x] for x in xs], 1)  # noqa: E731
        act_minus = -1 if self.mutation == "minus-action" else 1
        u = (A1 @ col(u2) - A2 @ col(u1)).entries()
        v = (B1 @ col(v2) - B2 @ col(v1)).scale(act_minus).entries()
        p12, m12 = self.delta(u1, v2)
        p21, m21 = self.delta(u2, v1)
        # a global sign flip of δ is an isomorphic algebra; only recover_T sees it
        sign = -1 if self.mutation == "delta-sign" else 1
        dp = A1 @ A2 - A2 @ A1 + (p12 - p21).scale(sign)
        dm = B1 @ B2 - B2 @ B1 + (m12 - m21).scale(sign)
        return self.join(u, self.g0_coords(dp, dm), v)

    def table(self) -> dict:
        """Sparse structure constants {(i, j): {k: c}} for i < j."""
        if self._table is None:
            n = self.dim
            t = {}
            for i in range(n):
                for j in range(i + 1, n):
                    w = self.bracket_direct(self.unit_vector(i), self.unit_vector(j))
                    t[i, j] = {k: c for k, c in enumerate(w) if c}
            self._table = t
        return self._table

    def _basis_bracket(self, i: int, j: int) -> dict:
        if i == j:
            return {}
        if i < j:
            return self.table()[i, j]
        return {k: -c for k, c in self.table()[j, i].items()}

    def bracket_sparse(self, a: dict, b: dict) -> dict:
        out: dict = {}
        for i, ai in a.items():
            for j, bj in b.items():
                for k, c in self._basis_bracket(i, j).items():
                    out[k] = out.get(k, 0) + ai * bj * c
        return {k: c for k, c in out.items() if c}

    def bracket(self, w1: list, w2: list) -> list:
        a = {i: c for i, c in enumerate(w1) if c}
        b = {i: c for i, c in enumerate(w2) if c}
        out = self.zero()
        for k, c in self.bracket_sparse(a, b).items():
            out[k] = self.ring.coerce(c)
        return out

    def to_dict(self) -> dict:
        return {"target": self.J.name, "ring": self.ring.name, "dims": list(self.dims), "total": self.dim}


def build_tkk(J: JordanStructure, triple: Callable | None = None, mutation: str | None = None) -> GradedLie:
    if mutation is not None and mutation not in MUTATIONS:
        raise ValueError(f"unknown mutation {mutation!r}")
    T = triple or J.triple
    ring = J.scalar_ring
    bp, bm = J.basis(PLUS), J.basis(MINUS)
    dp, dm = len(bp), len(bm)
    delta = {}
    flats = []
    for i, x in enumerate(bp):
        for j, y in enumerate(bm):
            a = linear_map_matrix(J, lambda z, x=x, y=y: T(x, y, z), PLUS, PLUS)
            b = linear_map_matrix(J, lambda w, x=x, y=y: T(y, x, w), MINUS, MINUS).scale(-1)
            delta[i, j] = (a, b)
            flats.append(a.entries() + b.entries())
    width = dp * dp + dm * dm
    R, rk, _ = row_echelon(Matrix(ring, flats, width))
    rows = [R.rows[k] for k in range(rk)]
    pivots = [next(c for c, x in enumerate(r) if x) for r in rows]
    labels = [(1, f"x{i}") for i in range(dp)] + [(0, f"h{k}") for k in range(rk)] + [(-1, f"y{j}") for j in range(dm)]
    L = GradedLie(J=J, ring=ring, dims=(dm, rk, dp), g0_action=[], labels=labels,
                  _pivots=pivots, _g0_rows=rows, _delta=delta, mutation=mutation)
    L.g0_action = [L._unflatten(r) for r in rows]
    # closure of g0 under commutators; raises ClosureFailure otherwise
    for a, b in combinations(L.g0_action, 2):
        L.g0_coords(a[0] @ b[0] - b[0] @ a[0], a[1] @ b[1] - b[1] @ a[1])
    return L


def recover_T(L: GradedLie, x: Matrix, y: Matrix, z: Matrix, side: str = PLUS) -> Matrix:
    """[[x, y], z] read back as an element of V^side (x, z ∈ V^side, y opposite)."""
    other = MINUS if side == PLUS else PLUS
    J = L.J
    for v, s in ((x, side), (y, other), (z, side)):
        if not J.contains(v, s):
            raise GradeError(f"{v.shape} is not an element of V{s} of {J.name}")
    w = L.bracket(L.bracket(L.embed(x, side), L.embed(y, other)), L.embed(z, side))
    u, _, v = L.split(w)
    return J.from_coords(u if side == PLUS else v, side)


def _res(name: str, L: GradedLie) -> CheckResult:
    return CheckResult(name=name, target=L.J.name, ring=L.J.ring.name, samples=0, seed=0)


def _fmt(L: GradedLie, d: dict) -> dict:
    return {L.labels[k][1]: L.ring.format(L.ring.coerce(c)) for k, c in sorted(d.items())}


def check_grading(L: GradedLie) -> CheckResult:
    res = _res("tkk-grading", L)
    g = L.grades
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            out = L.table()[i, j]
            target = g[i] + g[j]
            ok = all(g[k] == target for k in out) and (abs(target) <= 1 or not out)
            res.record(ok, lambda: {"pair": [L.labels[i][1], L.labels[j][1]], "bracket": _fmt(L, out)})
    res.samples = res.passed + res.failed
    return res


def check_jacobi(L: GradedLie) -> CheckResult:
    """Exhaustive on unordered basis triples; repeated indices follow from antisymmetry."""
    res = _res("tkk-jacobi", L)
    n = L.dim
    for i, j, k in combinations(range(n), 3):
        ei, ej, ek = {i: 1}, {j: 1}, {k: 1}
        total: dict = {}
        for a, b, c in ((ei, ej, ek), (ej, ek, ei), (ek, ei, ej)):
            for m, x in L.bracket_sparse(a, L.bracket_sparse(b, c)).items():
                total[m] = total.get(m, 0) + x
        bad = {m: x for m, x in total.items() if x}
        res.record(not bad, lambda: {"triple": [L.labels[t][1] for t in (i, j, k)], "jacobiator": _fmt(L, bad)})
    res.samples = res.passed + res.failed
    return res


def check_recover(L: GradedLie, triple: Callable | None = None) -> CheckResult:
    """[[x, y], z] against the source triple product on all basis triples, both sides."""
    J = L.J
    T = triple or J.triple
    res = _res("tkk-recover", L)
    for side in (PLUS, MINUS):
        other = MINUS if side == PLUS else PLUS
        for x in J.basis(side):
            for y in J.basis(other):
                for z in J.basis(side):
                    got = recover_T(L, x, y, z, side)
                    want = T(x, y, z)
                    res.record(got == want, lambda: {"side": side, "x": x.to_json(), "y": y.to_json(),
                                                     "z": z.to_json(), "bracket": got.to_json(),
                                                     "triple": want.to_json()})
    res.samples = res.passed + res.failed
    return res


def check_delta_ljp2(L: GradedLie) -> CheckResult:
    """[δ(a,b), δ(x,y)] = δ(T(a,b,x), y) − δ(x, T(b,a,y)) on basis pairs."""
    J = L.J
    res = _res("tkk-delta", L)
    bp, bm = J.basis(PLUS), J.basis(MINUS)
    dm, d0, dp = L.dims
    for ia, a in enumerate(bp):
        for ib, b in enumerate(bm):
            A1, B1 = L._delta[ia, ib]
            for ix, x in enumerate(bp):
                for iy, y in enumerate(bm):
                    A2, B2 = L._delta[ix, iy]
                    lhs = (A1 @ A2 - A2 @ A1, B1 @ B2 - B2 @ B1)
                    u = [L.ring.coerce(t) for t in J.coords(J.triple(a, b, x), PLUS)]
                    v = [L.ring.coerce(t) for t in J.coords(J.triple(b, a, y), MINUS)]
                    e_y = [L.ring.coerce(t) for t in J.coords(y, MINUS)]
                    e_x = [L.ring.coerce(t) for t in J.coords(x, PLUS)]
                    p1, m1 = L.delta(u, e_y)
                    p2, m2 = L.delta(e_x, v)
                    ok = lhs == (p1 - p2, m1 - m2)
                    res.record(ok, lambda: {"a": a.to_json(), "b": b.to_json(), "x": x.to_json(), "y": y.to_json()})
    res.samples = res.passed + res.failed
    return res


def theta(L: GradedLie, w: list) -> list:
    """(u, (D+, D-), v) ↦ (v, (D-, D+), u); only for unary families."""
    if not L.J.unary:
        raise GradeError("θ needs V+ = V-")
    u, c, v = L.split(w)
    a, b = L.g0_element(c)
    return L.join(v, L.g0_coords(b, a), u)


def check_theta(L: GradedLie) -> CheckResult:
    """θ is an involutive automorphism and T(x, y, z) = [[x, θy], z]."""
    res = _res("tkk-theta", L)
    J = L.J
    n = L.dim
    for i in range(n):
        ei = L.unit_vector(i)
        res.record(theta(L, theta(L, ei)) == ei, {"involution": L.labels[i][1]})
        for j in range(i + 1, n):
            ej = L.unit_vector(j)
            ok = theta(L, L.bracket(ei, ej)) == L.bracket(theta(L, ei), theta(L, ej))
            res.record(ok, lambda: {"automorphism": [L.labels[i][1], L.labels[j][1]]})
    for x in J.basis():
        for y in J.basis():
            for z in J.basis():
                ty = theta(L, L.embed(y, PLUS))
                w = L.bracket(L.bracket(L.embed(x, PLUS), ty), L.embed(z, PLUS))
                got = J.from_coords(L.split(w)[0], PLUS)
                res.record(got == J.triple(x, y, z), lambda: {"x": x.to_json(), "y": y.to_json(), "z": z.to_json()})
    res.samples = res.passed + res.failed
    return res


def tkk_summary(J: JordanStructure, mutation: str | None = None) -> dict:
    L = build_tkk(J, mutation=mutation)
    checks = [check_grading(L), check_jacobi(L), check_recover(L)]
    out = L.to_dict()
    for r in checks:
        out[r.name.removeprefix("tkk-")] = {"pass": r.ok, "checked": r.samples, "failed": r.failed}
    return out
