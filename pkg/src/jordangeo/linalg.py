"""Dense exact linear algebra over the rings in :mod:`jordangeo.rings`.

Elimination always pivots on units, so the same code serves fields and the
local rings K[ε]; over K[ε] a column with only non-unit entries is skipped
and leftovers signal a span that is not a free direct summand.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from jordangeo import kernels
from jordangeo.rings import Ring


class DimensionMismatch(ValueError):
    pass


class NoUnitPivot(ArithmeticError):
    """The span is not a free direct summand (no unit pivot available)."""


class NonInvertible(ArithmeticError):
    def __init__(self, det):
        super().__init__(f"matrix is not invertible (det = {det!r})")
        self.det = det


class NotFound(LookupError):
    pass


class Matrix:
    """Immutable dense matrix; all entries belong to ``ring``."""

    __slots__ = ("ring", "rows", "nrows", "ncols")

    def __init__(self, ring: Ring, rows: list, ncols: int | None = None):
        self.ring = ring
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = len(rows[0]) if rows else (ncols or 0)

    # construction -----------------------------------------------------
    @classmethod
    def from_rows(cls, ring: Ring, rows: Iterable[Iterable], ncols: int | None = None) -> "Matrix":
        data = [[ring.coerce(x) for x in row] for row in rows]
        widths = {len(r) for r in data}
        if len(widths) > 1:
            raise DimensionMismatch("ragged rows")
        return cls(ring, data, ncols)

    @classmethod
    def column(cls, ring: Ring, entries: Iterable) -> "Matrix":
        return cls.from_rows(ring, [[x] for x in entries])

    @classmethod
    def zeros(cls, ring: Ring, nrows: int, ncols: int) -> "Matrix":
        z = ring.zero()
        return cls(ring, [[z] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, ring: Ring, n: int) -> "Matrix":
        z, o = ring.zero(), ring.one()
        return cls(ring, [[o if i == j else z for j in range(n)] for i in range(n)], n)

    @classmethod
    def unit(cls, ring: Ring, nrows: int, ncols: int, i: int, j: int) -> "Matrix":
        m = cls.zeros(ring, nrows, ncols)
        m.rows[i][j] = ring.one()
        return m

    @classmethod
    def diag(cls, ring: Ring, entries: Sequence) -> "Matrix":
        n = len(entries)
        z = ring.zero()
        return cls(
            ring,
            [[ring.coerce(entries[i]) if i == j else z for j in range(n)] for i in range(n)],
            n,
        )

    # access -----------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def entries(self) -> list:
        return [x for row in self.rows for x in row]

    def copy_rows(self) -> list:
        return [list(r) for r in self.rows]

    def col(self, j: int) -> "Matrix":
        return Matrix(self.ring, [[r[j]] for r in self.rows], 1)

    def cols(self, idx: Sequence[int]) -> "Matrix":
        return Matrix(self.ring, [[r[j] for j in idx] for r in self.rows], len(idx))

    def row_slice(self, idx: Sequence[int]) -> "Matrix":
        return Matrix(self.ring, [list(self.rows[i]) for i in idx], self.ncols)

    def submatrix(self, r0: int, r1: int, c0: int, c1: int) -> "Matrix":
        return Matrix(self.ring, [row[c0:c1] for row in self.rows[r0:r1]], c1 - c0)

    def map(self, f) -> "Matrix":
        return Matrix(self.ring, [[f(x) for x in row] for row in self.rows], self.ncols)

    def is_zero(self) -> bool:
        return not any(x for row in self.rows for x in row)

    def key(self) -> tuple:
        return (self.nrows, self.ncols, tuple(tuple(r) for r in self.rows))

    # arithmetic -------------------------------------------------------
    def _check_same(self, other: "Matrix"):
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} vs {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix(
            self.ring,
            [[x + y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)],
            self.ncols,
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix(
            self.ring,
            [[x - y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)],
            self.ncols,
        )

    def __neg__(self) -> "Matrix":
        return Matrix(self.ring, [[-x for x in r] for r in self.rows], self.ncols)

    def scale(self, c) -> "Matrix":
        c = self.ring.coerce(c)
        return Matrix(self.ring, [[c * x for x in r] for r in self.rows], self.ncols)

    def __rmul__(self, c) -> "Matrix":
        return self.scale(c)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        if self.nrows == 0 or other.ncols == 0:
            return Matrix.zeros(self.ring, self.nrows, other.ncols)
        if self.ncols == 0:
            return Matrix.zeros(self.ring, self.nrows, other.ncols)
        return Matrix(self.ring, kernels.matmul(self.rows, other.rows, self.ring.zero()), other.ncols)

    @property
    def T(self) -> "Matrix":
        if not self.nrows:
            return Matrix(self.ring, [[] for _ in range(self.ncols)], 0)
        return Matrix(self.ring, [list(c) for c in zip(*self.rows)], self.nrows)

    @property
    def H(self) -> "Matrix":
        if not self.nrows:
            return Matrix(self.ring, [[] for _ in range(self.ncols)], 0)
        conj = self.ring.conj
        return Matrix(self.ring, [[conj(x) for x in c] for c in zip(*self.rows)], self.nrows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and all(
            x == y for r, s in zip(self.rows, other.rows) for x, y in zip(r, s)
        )

    def __hash__(self):
        return hash(self.key())

    def trace(self):
        acc = self.ring.zero()
        for i in range(min(self.nrows, self.ncols)):
            acc = acc + self.rows[i][i]
        return acc

    # serialisation ----------------------------------------------------
    def to_json(self) -> list:
        fmt = self.ring.format
        return [[fmt(x) for x in r] for r in self.rows]

    @classmethod
    def from_json(cls, ring: Ring, data: list) -> "Matrix":
        return cls(ring, [[ring.parse(str(x)) for x in r] for r in data])

    def __repr__(self):
        return f"Matrix({self.ring.name}, {self.to_json()})"

    # linear algebra shortcuts -----------------------------------------
    def det(self):
        return det(self)

    def inverse(self) -> "Matrix":
        return invert_matrix(self)

    def rank(self) -> int:
        return rank(self)


def hstack(*ms: Matrix) -> Matrix:
    ms = [m for m in ms if m.ncols]
    if not ms:
        raise DimensionMismatch("nothing to stack")
    n = ms[0].nrows
    if any(m.nrows != n for m in ms):
        raise DimensionMismatch("row counts differ")
    return Matrix(ms[0].ring, [sum((m.rows[i] for m in ms), []) for i in range(n)], sum(m.ncols for m in ms))


def vstack(*ms: Matrix) -> Matrix:
    ms = [m for m in ms if m.nrows]
    if not ms:
        raise DimensionMismatch("nothing to stack")
    c = ms[0].ncols
    if any(m.ncols != c for m in ms):
        raise DimensionMismatch("column counts differ")
    return Matrix(ms[0].ring, [list(r) for m in ms for r in m.rows], c)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    return a @ b


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return a + b


def transpose(a: Matrix) -> Matrix:
    return a.T


def conj_transpose(a: Matrix) -> Matrix:
    return a.H


def random_matrix(ring: Ring, nrows: int, ncols: int, rng: random.Random) -> Matrix:
    return Matrix(ring, [[ring.random(rng) for _ in range(ncols)] for _ in range(nrows)], ncols)


# ---------------------------------------------------------------------------
# elimination


def _reduce(rows: list, pivot_limit: int, ring: Ring):
    """Row-reduce in place; raise NoUnitPivot if non-unit debris remains."""
    pivots, vals, swaps = kernels.row_reduce(rows, pivot_limit, ring.is_unit, ring.inv)
    for row in rows[len(pivots):]:
        if any(row[j] for j in range(pivot_limit)):
            raise NoUnitPivot("no unit pivot: span is not a free direct summand")
    return pivots, vals, swaps


def row_echelon(m: Matrix) -> tuple[Matrix, int, Matrix]:
    """Reduced row echelon form R = E·m with E invertible; returns (R, rank, E)."""
    ring = m.ring
    n = m.nrows
    rows = [list(r) + e for r, e in zip(m.rows, Matrix.identity(ring, n).rows)]
    pivots, _, _ = _reduce(rows, m.ncols, ring)
    red = Matrix(ring, [r[: m.ncols] for r in rows], m.ncols)
    e = Matrix(ring, [r[m.ncols:] for r in rows], n)
    return red, len(pivots), e


def echelon_canonical(m: Matrix) -> tuple[Matrix, int, Matrix]:
    """Reduced column echelon form with unit pivots.

    Returns ``(canon, rank, transform)`` with ``canon = m @ transform`` and
    ``transform`` invertible.  Equal column spans give equal ``canon``.
    """
    red, rk, e = row_echelon(m.T)
    return red.T, rk, e.T


def rank(m: Matrix) -> int:
    if m.nrows == 0 or m.ncols == 0:
        return 0
    rows = m.copy_rows()
    pivots, _, _ = _reduce(rows, m.ncols, m.ring)
    return len(pivots)


def has_full_column_rank(m: Matrix) -> bool:
    try:
        return rank(m) == m.ncols
    except NoUnitPivot:
        return False


def _laplace_det(rows: list, ring: Ring):
    n = len(rows)
    if n == 0:
        return ring.one()
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    acc = ring.zero()
    for j in range(n):
        a = rows[0][j]
        if not a:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = a * _laplace_det(minor, ring)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


def det(m: Matrix):
    """Exact determinant: product of unit pivots, cofactor expansion otherwise."""
    if m.nrows != m.ncols:
        raise DimensionMismatch("det of a non-square matrix")
    ring = m.ring
    n = m.nrows
    if n == 0:
        return ring.one()
    rows = m.copy_rows()
    pivots, vals, swaps = kernels.row_reduce(rows, n, ring.is_unit, ring.inv)
    if len(pivots) == n:
        d = ring.one()
        for v in vals:
            d = d * v
        return -d if swaps % 2 else d
    if ring.is_field:
        return ring.zero()
    return _laplace_det(m.rows, ring)


def invert_matrix(m: Matrix) -> Matrix:
    if m.nrows != m.ncols:
        raise DimensionMismatch("inverse of a non-square matrix")
    ring = m.ring
    n = m.nrows
    rows = [list(r) + e for r, e in zip(m.rows, Matrix.identity(ring, n).rows)]
    pivots, _, _ = kernels.row_reduce(rows, n, ring.is_unit, ring.inv)
    if len(pivots) != n:
        raise NonInvertible(det(m))
    return Matrix(ring, [r[n:] for r in rows], n)


def is_invertible(m: Matrix) -> bool:
    if m.nrows != m.ncols:
        return False
    rows = m.copy_rows()
    pivots, _, _ = kernels.row_reduce(rows, m.ncols, m.ring.is_unit, m.ring.inv)
    return len(pivots) == m.nrows


def solve(a: Matrix, b: Matrix) -> Matrix | None:
    """Some X with a @ X = b, or None if inconsistent."""
    ring = a.ring
    rows = [list(r) + list(s) for r, s in zip(a.rows, b.rows)]
    pivots, _, _ = _reduce(rows, a.ncols, ring)
    k = len(pivots)
    for row in rows[k:]:
        if any(row[a.ncols:]):
            return None
    x = Matrix.zeros(ring, a.ncols, b.ncols)
    for i, c in enumerate(pivots):
        x.rows[c] = rows[i][a.ncols:]
    return x


def kernel(m: Matrix) -> Matrix:
    """Basis of the right null space as the columns of an ncols × d matrix."""
    ring = m.ring
    n = m.ncols
    if m.nrows == 0:
        return Matrix.identity(ring, n)
    rows = m.copy_rows()
    pivots, _, _ = _reduce(rows, n, ring)
    free = [j for j in range(n) if j not in pivots]
    zero, one = ring.zero(), ring.one()
    basis = Matrix.zeros(ring, n, len(free))
    for t, f in enumerate(free):
        basis.rows[f][t] = one
        for i, c in enumerate(pivots):
            x = rows[i][f]
            basis.rows[c][t] = -x if x else zero
    return basis


def span_contains(a: Matrix, b: Matrix) -> bool:
    """Column span of ``b`` is inside the column span of ``a``."""
    if b.ncols == 0:
        return True
    if a.ncols == 0:
        return b.is_zero()
    return solve(a, b) is not None


def subspace_equal(a: Matrix, b: Matrix) -> bool:
    if a.nrows != b.nrows:
        raise DimensionMismatch("different ambient spaces")
    ca, ra, _ = echelon_canonical(a)
    cb, rb, _ = echelon_canonical(b)
    return ra == rb and ca.cols(range(ra)) == cb.cols(range(rb))


def is_direct_sum(*parts: Matrix) -> bool:
    m = hstack(*parts)
    return m.nrows == m.ncols and is_invertible(m)


# ---------------------------------------------------------------------------
# forms


@dataclass(frozen=True)
class Form:
    """Nondegenerate form ω(u, v) = u^H · gram · v (u^T for non-hermitian)."""

    gram: Matrix
    symmetry: str  # "symmetric" | "skew" | "hermitian"

    def __post_init__(self):
        g = self.gram
        if g.nrows != g.ncols:
            raise DimensionMismatch("gram matrix must be square")
        if self.symmetry == "symmetric":
            ok = g.T == g
        elif self.symmetry == "skew":
            ok = g.T == -g
        elif self.symmetry == "hermitian":
            if not g.ring.involutive:
                raise ValueError(f"hermitian form needs an involutive ring, not {g.ring.name}")
            ok = g.H == g
        else:
            raise ValueError(f"unknown symmetry {self.symmetry!r}")
        if not ok:
            raise ValueError(f"gram matrix is not {self.symmetry}")
        if not is_invertible(g):
            raise ValueError("form is degenerate")

    @property
    def ring(self) -> Ring:
        return self.gram.ring

    @property
    def dim(self) -> int:
        return self.gram.nrows

    def adj(self, m: Matrix) -> Matrix:
        return m.H if self.symmetry == "hermitian" else m.T

    def value(self, u: Matrix, v: Matrix) -> Matrix:
        return self.adj(u) @ self.gram @ v

    @classmethod
    def standard(cls, ring: Ring, n: int) -> "Form":
        """The dot product (hermitian when the ring has an involution)."""
        sym = "hermitian" if ring.involutive else "symmetric"
        return cls(Matrix.identity(ring, n), sym)

    @classmethod
    def split(cls, ring: Ring, n: int, symmetry: str) -> "Form":
        """ω((u,v),(u',v')) = <u,v'> ± <v,u'> on K^n ⊕ K^n."""
        z, one = ring.zero(), ring.one()
        sign = -one if symmetry == "skew" else one
        rows = [[z] * (2 * n) for _ in range(2 * n)]
        for i in range(n):
            rows[i][n + i] = one
            rows[n + i][i] = sign
        return cls(Matrix(ring, rows, 2 * n), symmetry)


def orth_complement(form: Form, sub: Matrix) -> Matrix:
    """Basis of {w : ω(w, s) = 0 for all s in span(sub)}."""
    if sub.nrows != form.dim:
        raise DimensionMismatch("subspace not in the ambient space of the form")
    if sub.ncols == 0:
        return Matrix.identity(form.ring, form.dim)
    # ω(w, s) = 0  <=>  adj(G s) w = 0
    return kernel(form.adj(form.gram @ sub))


def _candidate_vectors(ring: Ring, n: int, rng: random.Random):
    one = ring.one()
    for i in range(n):
        yield Matrix.unit(ring, n, 1, i, 0)
    for i, j in itertools.combinations(range(n), 2):
        v = Matrix.zeros(ring, n, 1)
        v.rows[i][0] = one
        v.rows[j][0] = one
        yield v
    for i, j in itertools.combinations(range(n), 2):
        v = Matrix.zeros(ring, n, 1)
        v.rows[i][0] = one
        v.rows[j][0] = -one
        yield v
    for _ in range(1000):
        yield random_matrix(ring, n, 1, rng)


def find_common_complement(u1: Matrix, u2: Matrix, seed: int = 0) -> Matrix:
    """A subspace C with W = u1 ⊕ C = u2 ⊕ C, by greedy basis extension."""
    if u1.nrows != u2.nrows:
        raise DimensionMismatch("different ambient spaces")
    if u1.ncols != u2.ncols:
        raise DimensionMismatch("subspaces of different dimension")
    ring = u1.ring
    n, k = u1.nrows, u1.ncols
    chosen: list[Matrix] = []
    rng = random.Random(seed)
    for v in _candidate_vectors(ring, n, rng):
        if len(chosen) == n - k:
            break
        if has_full_column_rank(hstack(u1, *chosen, v)) and has_full_column_rank(hstack(u2, *chosen, v)):
            chosen.append(v)
    if len(chosen) < n - k:
        raise NotFound("no common complement found")
    if not chosen:
        return Matrix.zeros(ring, n, 0)
    return hstack(*chosen)


def annihilator(sub: Matrix) -> Matrix:
    """Rows spanning the linear functionals that vanish on span(sub)."""
    if sub.ncols == 0:
        return Matrix.identity(sub.ring, sub.nrows)
    return kernel(sub.T).T
