"""Points, co-points and the structure maps of Grassmann and Lagrangian geometries.

A point is the column span of an injective W×k matrix; a co-point is the row
span of a surjective k×W matrix (its kernel is the geometric subspace).  The
pair (x, a) is transversal when a·x is invertible.
"""

from __future__ import annotations

import random
import re

from jordangeo.linalg import (
    DimensionMismatch,
    Form,
    Matrix,
    NoUnitPivot,
    annihilator,
    echelon_canonical,
    has_full_column_rank,
    invert_matrix,
    is_invertible,
    kernel,
    random_matrix,
)
from jordangeo.report import rejection
from jordangeo.rings import NotAUnit, Ring


class NotTransversal(ValueError):
    """A structure map was applied outside its domain."""


class NotASubspace(ValueError):
    """A representative does not span a free direct summand of the right rank."""


class _Span:
    __slots__ = ("rep", "_key")

    def __init__(self, rep: Matrix):
        self.rep = rep
        self._key = None

    @property
    def ring(self) -> Ring:
        return self.rep.ring

    @property
    def key(self) -> tuple:
        if self._key is None:
            self._key = self._canonical().key()
        return self._key

    def __eq__(self, other):
        return type(self) is type(other) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def to_json(self) -> list:
        return self.rep.to_json()


class GrasPoint(_Span):
    """Column span of ``rep`` (W × k)."""

    def __init__(self, rep: Matrix, check: bool = True):
        if check and not has_full_column_rank(rep):
            raise NotASubspace("point representative must have full column rank")
        super().__init__(rep)

    @property
    def dim(self) -> int:
        return self.rep.ncols

    @property
    def ambient(self) -> int:
        return self.rep.nrows

    def _canonical(self) -> Matrix:
        canon, rk, _ = echelon_canonical(self.rep)
        return canon.cols(range(rk))

    @property
    def canonical(self) -> Matrix:
        return self._canonical()

    def __repr__(self):
        return f"GrasPoint({self.canonical.to_json()})"


class GrasCoPoint(_Span):
    """Row span of ``rep`` (k × W); the subspace it names is ``kernel(rep)``."""

    def __init__(self, rep: Matrix, check: bool = True):
        if check and not has_full_column_rank(rep.T):
            raise NotASubspace("co-point representative must have full row rank")
        super().__init__(rep)

    @property
    def dim(self) -> int:
        return self.rep.nrows

    @property
    def ambient(self) -> int:
        return self.rep.ncols

    def _canonical(self) -> Matrix:
        canon, rk, _ = echelon_canonical(self.rep.T)
        return canon.cols(range(rk)).T

    @property
    def canonical(self) -> Matrix:
        return self._canonical()

    def subspace(self) -> Matrix:
        return kernel(self.rep)

    def __repr__(self):
        return f"GrasCoPoint({self.canonical.to_json()})"


# ---------------------------------------------------------------------------
# structure maps


def _pair(x: GrasPoint, a: GrasCoPoint) -> Matrix:
    if a.ambient != x.ambient or a.dim != x.dim:
        raise DimensionMismatch(f"point of dim {x.dim} in W^{x.ambient} vs co-point of rank {a.dim} on W^{a.ambient}")
    return a.rep @ x.rep


def transversal(x: GrasPoint, a: GrasCoPoint) -> bool:
    return is_invertible(_pair(x, a))


def _inv_pair(x: GrasPoint, a: GrasCoPoint) -> Matrix:
    m = _pair(x, a)
    if not is_invertible(m):
        raise NotTransversal("point and co-point are not transversal")
    return invert_matrix(m)


def normalized(x: GrasPoint, a: GrasCoPoint) -> Matrix:
    """The representative f(φf)⁻¹ of x, which φ maps to the identity."""
    return x.rep @ _inv_pair(x, a)


def pi_plus(x: GrasPoint, a: GrasCoPoint, y: GrasPoint, r) -> GrasPoint:
    """Π_r(x, a, y) = [(1−r) f(φf)⁻¹ + r h(φh)⁻¹]."""
    ring = x.ring
    r = ring.coerce(r)
    m = normalized(x, a).scale(ring.one() - r) + normalized(y, a).scale(r)
    return GrasPoint(m, check=False)  # a·m = I, so m is injective


def pi_minus(a: GrasCoPoint, x: GrasPoint, b: GrasCoPoint, r) -> GrasCoPoint:
    """Π_r(a, x, b) = [(1−r)(φf)⁻¹φ + r(ψf)⁻¹ψ] as a row span."""
    ring = x.ring
    r = ring.coerce(r)
    m = (_inv_pair(x, a) @ a.rep).scale(ring.one() - r) + (_inv_pair(x, b) @ b.rep).scale(r)
    return GrasCoPoint(m, check=False)  # m·f = I


def projector(x: GrasPoint, a: GrasCoPoint) -> Matrix:
    """P = f(φf)⁻¹φ: projection onto x along ker(a)."""
    return normalized(x, a) @ a.rep


def chart(x: GrasPoint, a: GrasCoPoint, y: GrasPoint) -> Matrix:
    """Affine coordinate of y in the chart a^⊤ with origin x: (I−P)·g(φg)⁻¹·(φf)."""
    P = projector(x, a)
    n = P.nrows
    return (Matrix.identity(x.ring, n) - P) @ normalized(y, a) @ _pair(x, a)


def unchart(x: GrasPoint, a: GrasCoPoint, c: Matrix) -> GrasPoint:
    return GrasPoint(x.rep + c, check=False)


def sigma_sum(x: GrasPoint, a: GrasCoPoint, y: GrasPoint, z: GrasPoint) -> GrasPoint:
    return unchart(x, a, chart(x, a, y) + chart(x, a, z))


def copoint_from_subspace(sub: Matrix) -> GrasCoPoint:
    """The co-point whose kernel is span(sub)."""
    return GrasCoPoint(annihilator(sub))


class ProjectiveMap:
    """An invertible W×W matrix acting on points (f ↦ g f) and co-points (φ ↦ φ g⁻¹)."""

    def __init__(self, g: Matrix, g_inv: Matrix | None = None):
        self.g = g
        self.g_inv = g_inv if g_inv is not None else invert_matrix(g)

    def point(self, x: GrasPoint) -> GrasPoint:
        return GrasPoint(self.g @ x.rep, check=False)

    def copoint(self, a: GrasCoPoint) -> GrasCoPoint:
        return GrasCoPoint(a.rep @ self.g_inv, check=False)

    def __call__(self, p):
        return self.point(p) if isinstance(p, GrasPoint) else self.copoint(p)

    def inverse(self) -> "ProjectiveMap":
        return ProjectiveMap(self.g_inv, self.g)

    def is_identity(self) -> bool:
        return self.g == Matrix.identity(self.g.ring, self.g.nrows)


def inner_dilation(o: GrasPoint, a: GrasCoPoint, r) -> ProjectiveMap:
    """g = P + r(I−P): fixes o and a, scales chart coordinates at (o, a) by r."""
    ring = o.ring
    r = ring.coerce(r)
    if not ring.is_unit(r):
        raise NotAUnit(f"dilation factor {ring.format(r)} is not a unit")
    P = projector(o, a)
    Q = Matrix.identity(ring, P.nrows) - P
    return ProjectiveMap(P + Q.scale(r), P + Q.scale(ring.inv(r)))


# ---------------------------------------------------------------------------
# geometries


class PairGeometry:
    """Interface shared by the concrete geometries and their products and duals."""

    name: str
    ring: Ring

    @property
    def scalar_ring(self) -> Ring:
        return self.ring

    def random_scalar(self, rng: random.Random):
        return self.ring.coerce(self.scalar_ring.random(rng))

    def random_unit(self, rng: random.Random):
        return self.ring.coerce(self.scalar_ring.random_unit(rng))

    def transversal(self, x, a) -> bool:
        return transversal(x, a)

    def pi_plus(self, x, a, y, r):
        return pi_plus(x, a, y, r)

    def pi_minus(self, a, x, b, r):
        return pi_minus(a, x, b, r)

    def contains_point(self, x) -> bool:
        return True

    def contains_copoint(self, a) -> bool:
        return True

    def random_point(self, rng: random.Random):
        raise NotImplementedError

    def random_copoint(self, rng: random.Random):
        raise NotImplementedError


def _random_full_rank(ring: Ring, nrows: int, ncols: int, rng: random.Random) -> Matrix:
    def draw():
        m = random_matrix(ring, nrows, ncols, rng)
        return m if has_full_column_rank(m) else None

    return rejection(draw)


class Grassmann(PairGeometry):
    """Subspaces of type E and co-type F in W = F ⊕ E (dim W = e + f)."""

    def __init__(self, ring: Ring, e: int, f: int):
        if e < 0 or f < 0 or e + f == 0:
            raise ValueError("Grassmannian needs e, f ≥ 0 and e + f > 0")
        self.ring = ring
        self.e = e
        self.f = f
        self.name = f"gras:{e}x{f}"

    @property
    def ambient(self) -> int:
        return self.e + self.f

    def random_point(self, rng):
        return GrasPoint(_random_full_rank(self.ring, self.ambient, self.e, rng), check=False)

    def random_copoint(self, rng):
        return GrasCoPoint(_random_full_rank(self.ring, self.ambient, self.e, rng).T, check=False)

    def base_point(self) -> tuple[GrasPoint, GrasCoPoint]:
        """o = [0; I_E] and o′ = [0  I_E]."""
        ring = self.ring
        o = Matrix(ring, [[ring.zero()] * self.e for _ in range(self.f)] + Matrix.identity(ring, self.e).rows, self.e)
        return GrasPoint(o, check=False), GrasCoPoint(o.T, check=False)

    def graph(self, A: Matrix) -> GrasPoint:
        """The point [A; I] of the affine chart at the base point."""
        return GrasPoint(Matrix(self.ring, A.rows + Matrix.identity(self.ring, self.e).rows, self.e), check=False)

    def with_ring(self, ring: Ring) -> "Grassmann":
        return Grassmann(ring, self.e, self.f)

    def contains_point(self, x) -> bool:
        return isinstance(x, GrasPoint) and x.ambient == self.ambient and x.dim == self.e

    def contains_copoint(self, a) -> bool:
        return isinstance(a, GrasCoPoint) and a.ambient == self.ambient and a.dim == self.e


LAGRANGIAN_KINDS = {"lagr-herm": "hermitian", "lagr-sym": "symmetric", "lagr-skew": "skew"}


class Lagrangian(Grassmann):
    """Self-orthogonal n-dimensional subspaces of W = H ⊕ H for a split form.

    Co-points are Lagrangians as well, represented by V^H·G^H so that their
    kernel is V^⊥ = V.
    """

    def __init__(self, ring: Ring, n: int, kind: str):
        if kind not in LAGRANGIAN_KINDS:
            raise ValueError(f"unknown Lagrangian kind {kind!r}")
        symmetry = LAGRANGIAN_KINDS[kind]
        if symmetry == "hermitian" and not ring.involutive:
            raise ValueError(f"{kind} needs a ring with conjugation, not {ring.name}")
        super().__init__(ring, n, n)
        self.n = n
        self.kind = kind
        self.form = Form.split(ring, n, symmetry)
        self.name = f"{kind}:{n}"

    @property
    def scalar_ring(self) -> Ring:
        # Π_r preserves Lagrangians only for involution-fixed r
        return self.ring.fixed_ring() if self.kind == "lagr-herm" else self.ring

    def with_ring(self, ring: Ring) -> "Lagrangian":
        return Lagrangian(ring, self.n, self.kind)

    def chart_model(self, rng: random.Random) -> Matrix:
        """Random n×n A whose graph [A; I] is Lagrangian."""
        ring = self.ring
        n = self.n
        rows = [[ring.zero()] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                v = ring.random(rng)
                if self.kind == "lagr-skew":
                    rows[i][j] = rows[j][i] = v
                elif self.kind == "lagr-sym":
                    if i != j:
                        rows[i][j], rows[j][i] = v, -v
                else:  # skew-Hermitian
                    if i == j:
                        rows[i][i] = ring.i * ring.coerce(self.scalar_ring.random(rng))
                    else:
                        rows[i][j], rows[j][i] = v, -ring.conj(v)
        return Matrix(ring, rows, n)

    def is_lagrangian(self, sub: Matrix) -> bool:
        return sub.ncols == self.n and has_full_column_rank(sub) and self.form.value(sub, sub).is_zero()

    def copoint_of(self, x: GrasPoint) -> GrasCoPoint:
        adj = self.form.adj
        return GrasCoPoint(adj(x.rep) @ adj(self.form.gram), check=False)

    def point_of(self, a: GrasCoPoint) -> GrasPoint:
        return GrasPoint(a.subspace(), check=False)

    def random_point(self, rng):
        # [[I, 0], [B, I]] is an isometry for B in the chart model
        A, B = self.chart_model(rng), self.chart_model(rng)
        I = Matrix.identity(self.ring, self.n)
        v = Matrix(self.ring, A.rows + (B @ A + I).rows, self.n)
        assert self.is_lagrangian(v)
        return GrasPoint(v, check=False)

    def random_copoint(self, rng):
        return self.copoint_of(self.random_point(rng))

    def contains_point(self, x) -> bool:
        return super().contains_point(x) and self.is_lagrangian(x.rep)

    def contains_copoint(self, a) -> bool:
        if not super().contains_copoint(a):
            return False
        try:
            return self.is_lagrangian(a.subspace())
        except NoUnitPivot:
            return False


_GEOM_RE = re.compile(r"^gras:(\d+)x(\d+)$|^(lagr-herm|lagr-sym|lagr-skew):(\d+)$")


def parse_geometry(spec: str, ring: Ring) -> Grassmann:
    m = _GEOM_RE.match(spec.strip())
    if not m:
        raise ValueError(f"unknown geometry {spec!r}")
    if m.group(1):
        return Grassmann(ring, int(m.group(1)), int(m.group(2)))
    return Lagrangian(ring, int(m.group(4)), m.group(3))


def is_geometry_spec(spec: str) -> bool:
    return bool(_GEOM_RE.match(spec.strip()))
