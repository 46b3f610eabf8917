"""Jordan algebras, pairs and triple systems of the classical families.

A structure exposes two spaces V+ and V- (identical for the unary
families), a trilinear product ``triple(x, y, z)`` with x, z on one side and
y on the other, and, where it exists, a Jordan product ``bullet``.  Linear
algebra on the spaces goes through ``coords``/``from_coords`` over the
scalar ring (the involution-fixed subring for Hermitian matrices).
"""

from __future__ import annotations

import random
import re
from typing import Callable

from jordangeo.linalg import DimensionMismatch, Form, Matrix, hstack, invert_matrix, is_invertible, rank, solve
from jordangeo.report import CheckResult, make_rng, rejection
from jordangeo.rings import GaussianRational, Ring

PLUS, MINUS = "+", "-"


class Unsupported(ValueError):
    """The family does not carry the requested operation."""


def opposite(side: str) -> str:
    return MINUS if side == PLUS else PLUS


class JordanStructure:
    """Common interface; see :class:`MatrixFamily` and :class:`SpinFactor`."""

    name: str
    ring: Ring
    unary: bool = True

    @property
    def scalar_ring(self) -> Ring:
        return self.ring

    @property
    def has_bullet(self) -> bool:
        return True

    def dim(self, side: str = PLUS) -> int:
        return len(self.basis(side))

    def basis(self, side: str = PLUS) -> list[Matrix]:
        raise NotImplementedError

    def coords(self, v: Matrix, side: str = PLUS) -> list:
        raise NotImplementedError

    def from_coords(self, c, side: str = PLUS) -> Matrix:
        out = self.zero(side)
        for ci, b in zip(c, self.basis(side)):
            if ci:
                out = out + b.scale(self.ring.coerce(ci))
        return out

    def zero(self, side: str = PLUS) -> Matrix:
        raise NotImplementedError

    def random(self, rng: random.Random, side: str = PLUS) -> Matrix:
        raise NotImplementedError

    def contains(self, v: Matrix, side: str = PLUS) -> bool:
        raise NotImplementedError

    def triple(self, x: Matrix, y: Matrix, z: Matrix) -> Matrix:
        raise NotImplementedError

    def bullet(self, x: Matrix, y: Matrix) -> Matrix:
        raise NotImplementedError

    def quad(self, x: Matrix, y: Matrix) -> Matrix:
        """Q(x)y = ½ T(x, y, x)."""
        return self.triple(x, y, x).scale(self.ring.inv2)

    def __repr__(self):
        return f"<{self.name} over {self.ring.name}>"


# ---------------------------------------------------------------------------
# matrix families


def symplectic_unit(ring: Ring, n: int) -> Matrix:
    """J = [[0, I], [-I, 0]] of size n (n even)."""
    if n % 2:
        raise Unsupported("the symplectic unit needs even size")
    h = n // 2
    z, one = ring.zero(), ring.one()
    rows = [[z] * n for _ in range(n)]
    for i in range(h):
        rows[i][h + i] = one
        rows[h + i][i] = -one
    return Matrix(ring, rows, n)


class MatrixFamily(JordanStructure):
    """full:n, sym:n, herm:n, skew:n and rect:pxq with T(x,y,z) = xyz + zyx."""

    KINDS = ("full", "sym", "herm", "skew", "rect")

    def __init__(self, kind: str, ring: Ring, p: int, q: int | None = None):
        if kind not in self.KINDS:
            raise ValueError(f"unknown matrix family {kind!r}")
        q = p if q is None else q
        if p < 1 or q < 1:
            raise ValueError("matrix sizes must be positive")
        if kind != "rect" and p != q:
            raise ValueError(f"{kind} needs square matrices")
        if kind == "herm" and not ring.involutive:
            raise ValueError(f"herm needs a ring with conjugation, not {ring.name}")
        self.kind = kind
        self.ring = ring
        self.p = p
        self.q = q
        self.unary = kind != "rect"
        self.name = f"rect:{p}x{q}" if kind == "rect" else f"{kind}:{p}"
        self._basis = {PLUS: self._make_basis(p, q), MINUS: self._make_basis(q, p)}
        self._J = symplectic_unit(ring, p) if kind == "skew" and p % 2 == 0 else None

    @property
    def scalar_ring(self) -> Ring:
        return self.ring.fixed_ring() if self.kind == "herm" else self.ring

    @property
    def has_bullet(self) -> bool:
        if self.kind == "skew":
            return self._J is not None
        return self.p == self.q

    def shape(self, side: str) -> tuple[int, int]:
        return (self.p, self.q) if side == PLUS else (self.q, self.p)

    def _make_basis(self, r: int, c: int) -> list[Matrix]:
        ring = self.ring
        E = lambda i, j: Matrix.unit(ring, r, c, i, j)  # noqa: E731
        if self.kind in ("full", "rect"):
            return [E(i, j) for i in range(r) for j in range(c)]
        n = r
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        if self.kind == "sym":
            return [E(i, i) for i in range(n)] + [E(i, j) + E(j, i) for i, j in pairs]
        if self.kind == "skew":
            return [E(i, j) - E(j, i) for i, j in pairs]
        # herm: a basis over the fixed subring
        im = ring.i
        out = [E(i, i) for i in range(n)]
        for i, j in pairs:
            out.append(E(i, j) + E(j, i))
            out.append((E(i, j) - E(j, i)).scale(im))
        return out

    def basis(self, side: str = PLUS) -> list[Matrix]:
        return self._basis[side]

    def zero(self, side: str = PLUS) -> Matrix:
        return Matrix.zeros(self.ring, *self.shape(side))

    def coords(self, v: Matrix, side: str = PLUS) -> list:
        if v.shape != self.shape(side):
            raise DimensionMismatch(f"{v.shape} is not a {side}-element of {self.name}")
        n = v.nrows
        if self.kind in ("full", "rect"):
            return v.entries()
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        if self.kind == "sym":
            return [v[i, i] for i in range(n)] + [v[i, j] for i, j in pairs]
        if self.kind == "skew":
            return [v[i, j] for i, j in pairs]
        ri = self.ring.real_imag
        out = [ri(v[i, i])[0] for i in range(n)]
        for i, j in pairs:
            re_part, im_part = ri(v[i, j])
            out += [re_part, im_part]
        return out

    def contains(self, v: Matrix, side: str = PLUS) -> bool:
        if v.shape != self.shape(side):
            return False
        if self.kind == "sym":
            return v.T == v
        if self.kind == "skew":
            return v.T == -v
        if self.kind == "herm":
            return v.H == v
        return True

    def random(self, rng: random.Random, side: str = PLUS) -> Matrix:
        ring = self.ring
        r, c = self.shape(side)
        if self.kind in ("full", "rect"):
            return Matrix(ring, [[ring.random(rng) for _ in range(c)] for _ in range(r)], c)
        if self.kind == "herm":
            fixed = self.scalar_ring
            rows = [[ring.zero()] * c for _ in range(r)]
            for i in range(r):
                rows[i][i] = ring.coerce(fixed.random(rng))
                for j in range(i + 1, r):
                    x = ring.random(rng)
                    rows[i][j] = x
                    rows[j][i] = ring.conj(x)
            return Matrix(ring, rows, c)
        return self.from_coords([ring.random(rng) for _ in self.basis(side)], side)

    def _check_triple(self, x, y, z):
        if x.shape != z.shape or y.shape != (x.ncols, x.nrows):
            raise DimensionMismatch(f"bad triple shapes {x.shape}, {y.shape}, {z.shape}")

    def triple(self, x: Matrix, y: Matrix, z: Matrix) -> Matrix:
        self._check_triple(x, y, z)
        return x @ y @ z + z @ y @ x

    def bullet(self, x: Matrix, y: Matrix) -> Matrix:
        if not self.has_bullet:
            raise Unsupported(f"{self.name} carries no Jordan product")
        h = self.ring.inv2
        if self.kind == "skew":
            # isotope at the symplectic unit keeps the product skew
            J = self._J
            return (x @ J @ y + y @ J @ x).scale(h)
        return (x @ y + y @ x).scale(h)

    @property
    def unit_element(self) -> Matrix:
        if self.kind == "skew":
            return -self._J
        return Matrix.identity(self.ring, self.p)


# ---------------------------------------------------------------------------
# spin factors


class SpinFactor(JordanStructure):
    """V = K^d with x•y = β(x,e)y + β(y,e)x − β(x,y)e, β symmetric, β(e,e) = 1."""

    def __init__(self, ring: Ring, d: int, gram: Matrix | None = None, e: Matrix | None = None):
        if d < 1:
            raise ValueError("spin factor dimension must be positive")
        if gram is None:
            gram = Matrix.diag(ring, [1] + [-1] * (d - 1))
        if e is None:
            e = Matrix.unit(ring, d, 1, 0, 0)
        Form(gram, "symmetric")  # validates symmetry and nondegeneracy
        self.ring = ring
        self.d = d
        self.gram = gram
        self.e = e
        self.unary = True
        self.name = f"spin:{d}"
        if self.beta(e, e) != ring.one():
            raise ValueError("spin factor needs β(e, e) = 1")
        self._basis = [Matrix.unit(ring, d, 1, i, 0) for i in range(d)]

    def beta(self, x: Matrix, y: Matrix):
        return (x.T @ self.gram @ y)[0, 0]

    def basis(self, side: str = PLUS) -> list[Matrix]:
        return self._basis

    def zero(self, side: str = PLUS) -> Matrix:
        return Matrix.zeros(self.ring, self.d, 1)

    def coords(self, v: Matrix, side: str = PLUS) -> list:
        if v.shape != (self.d, 1):
            raise DimensionMismatch(f"{v.shape} is not an element of {self.name}")
        return v.entries()

    def contains(self, v: Matrix, side: str = PLUS) -> bool:
        return v.shape == (self.d, 1)

    def random(self, rng: random.Random, side: str = PLUS) -> Matrix:
        return Matrix(self.ring, [[self.ring.random(rng)] for _ in range(self.d)], 1)

    def bullet(self, x: Matrix, y: Matrix) -> Matrix:
        e = self.e
        return y.scale(self.beta(x, e)) + x.scale(self.beta(y, e)) - e.scale(self.beta(x, y))

    def triple(self, x: Matrix, y: Matrix, z: Matrix) -> Matrix:
        # T(x,y,z) = 2((x•y)•z + (y•z)•x − (x•z)•y)
        b = self.bullet
        t = b(b(x, y), z) + b(b(y, z), x) - b(b(x, z), y)
        return t.scale(2)

    @property
    def unit_element(self) -> Matrix:
        return self.e


_FAMILY_RE = re.compile(r"^(full|sym|herm|skew|spin):(\d+)$|^rect:(\d+)x(\d+)$")


def parse_family(spec: str, ring: Ring) -> JordanStructure:
    """Build a structure from ``full:n``, ``sym:n``, ``herm:n``, ``skew:n``, ``spin:d`` or ``rect:pxq``."""
    m = _FAMILY_RE.match(spec.strip())
    if not m:
        raise ValueError(f"unknown family {spec!r}")
    if m.group(1) == "spin":
        return SpinFactor(ring, int(m.group(2)))
    if m.group(1):
        return MatrixFamily(m.group(1), ring, int(m.group(2)))
    return MatrixFamily("rect", ring, int(m.group(3)), int(m.group(4)))


# ---------------------------------------------------------------------------
# derived operators


def triple_T(J: JordanStructure, x: Matrix, y: Matrix, z: Matrix) -> Matrix:
    return J.triple(x, y, z)


def bullet(J: JordanStructure, x: Matrix, y: Matrix) -> Matrix:
    return J.bullet(x, y)


def linear_map_matrix(J: JordanStructure, f: Callable[[Matrix], Matrix], src: str, dst: str) -> Matrix:
    """Matrix (over the scalar ring) of a linear map V^src -> V^dst."""
    cols = [J.coords(f(b), dst) for b in J.basis(src)]
    ring = J.scalar_ring
    return Matrix(ring, [[ring.coerce(c[i]) for c in cols] for i in range(J.dim(dst))], len(cols))


def quad_matrix(J: JordanStructure, x: Matrix, side: str) -> Matrix:
    """Matrix of Q(x): V^{-side} -> V^{side} for x in V^{side}."""
    return linear_map_matrix(J, lambda y: J.quad(x, y), opposite(side), side)


def is_invertible_element(J: JordanStructure, x: Matrix, side: str = MINUS) -> bool:
    q = quad_matrix(J, x, side)
    return q.nrows == q.ncols and is_invertible(q)


def jordan_unit_from(J: JordanStructure, x: Matrix, side: str = MINUS) -> Matrix:
    """e = Q(x)^{-1}(x), an element of the opposite side."""
    q = quad_matrix(J, x, side)
    ring = J.scalar_ring
    rhs = Matrix(ring, [[ring.coerce(c)] for c in J.coords(x, side)], 1)
    c = invert_matrix(q) @ rhs
    return J.from_coords([row[0] for row in c.rows], opposite(side))


def isotope_product(J: JordanStructure, y: Matrix, z: Matrix, x: Matrix) -> Matrix:
    """y • z = ½ T(y, x, z) in the isotope at x."""
    return J.triple(y, x, z).scale(J.ring.inv2)


def jordan_lie_R(J: JordanStructure, x: Matrix, y: Matrix, z: Matrix, triple=None) -> Matrix:
    """[x, y, z] = T(x,y,z) − T(y,x,z)."""
    T = triple or J.triple
    return T(x, y, z) - T(y, x, z)


def in_span(J: JordanStructure, basis: list[Matrix], v: Matrix, side: str = PLUS) -> bool:
    ring = J.scalar_ring
    if not basis:
        return all(not c for c in J.coords(v, side))
    cols = [J.coords(b, side) for b in basis]
    a = Matrix(ring, [[ring.coerce(c[i]) for c in cols] for i in range(J.dim(side))], len(cols))
    t = Matrix(ring, [[ring.coerce(c)] for c in J.coords(v, side)], 1)
    return solve(a, t) is not None


# ---------------------------------------------------------------------------
# checkers


def _w(ring: Ring, **mats) -> dict:
    return {k: (v.to_json() if isinstance(v, Matrix) else ring.format(v)) for k, v in mats.items()}


def _result(name: str, J: JordanStructure, samples: int, seed: int) -> CheckResult:
    return CheckResult(name=name, target=J.name, ring=J.ring.name, samples=samples, seed=seed)


def check_ljp1(J: JordanStructure, samples: int = 200, seed: int = 0, triple=None) -> CheckResult:
    T = triple or J.triple
    res = _result("ljp1", J, samples, seed)
    rng = make_rng(seed, "ljp1")
    for _ in range(samples):
        ok = True
        for side in (PLUS, MINUS):
            x, z = J.random(rng, side), J.random(rng, side)
            y = J.random(rng, opposite(side))
            if T(x, y, z) != T(z, y, x):
                ok = False
                res.record(False, _w(J.ring, side=side, x=x, y=y, z=z) | {"side": side})
                break
        if ok:
            res.record(True)
    return res


def ljp2_sides(J: JordanStructure, a, b, x, y, z, triple=None):
    T = triple or J.triple
    lhs = T(a, b, T(x, y, z))
    rhs = T(T(a, b, x), y, z) - T(x, T(b, a, y), z) + T(x, y, T(a, b, z))
    return lhs, rhs


def check_ljp2(J: JordanStructure, samples: int = 200, seed: int = 0, triple=None) -> CheckResult:
    res = _result("ljp2", J, samples, seed)
    rng = make_rng(seed, "ljp2")
    for _ in range(samples):
        ok = True
        for side in (PLUS, MINUS):
            o = opposite(side)
            a, x, z = J.random(rng, side), J.random(rng, side), J.random(rng, side)
            b, y = J.random(rng, o), J.random(rng, o)
            lhs, rhs = ljp2_sides(J, a, b, x, y, z, triple)
            if lhs != rhs:
                ok = False
                res.record(False, _w(J.ring, a=a, b=b, x=x, y=y, z=z) | {"side": side})
                break
        if ok:
            res.record(True)
    return res


def check_fundamental(J: JordanStructure, samples: int = 200, seed: int = 0, triple=None) -> CheckResult:
    """Q(Q(x)y) = Q(x)Q(y)Q(x), compared on a full basis for each sample."""
    T = triple or J.triple
    h = J.ring.inv2
    Q = lambda u, v: T(u, v, u).scale(h)  # noqa: E731
    res = _result("fundamental", J, samples, seed)
    rng = make_rng(seed, "fundamental")
    for _ in range(samples):
        bad = None
        for side in (MINUS, PLUS):
            o = opposite(side)
            x, y = J.random(rng, side), J.random(rng, o)
            qxy = Q(x, y)
            for z in J.basis(o):
                if Q(qxy, z) != Q(x, Q(y, Q(x, z))):
                    bad = _w(J.ring, x=x, y=y, z=z) | {"side": side}
                    break
            if bad:
                break
        res.record(bad is None, bad)
    return res


def check_jordan_identity(J: JordanStructure, samples: int = 200, seed: int = 0, bullet_fn=None) -> CheckResult:
    """(x²•y)•x = x²•(y•x)."""
    if not J.unary or not J.has_bullet:
        raise Unsupported(f"{J.name} has no Jordan product")
    b = bullet_fn or J.bullet
    res = _result("jordan-id", J, samples, seed)
    rng = make_rng(seed, "jordan-id")
    for _ in range(samples):
        x, y = J.random(rng), J.random(rng)
        x2 = b(x, x)
        ok = b(b(x2, y), x) == b(x2, b(y, x))
        res.record(ok, lambda: _w(J.ring, x=x, y=y))
    return res


def check_commutative(J: JordanStructure, samples: int = 200, seed: int = 0) -> CheckResult:
    res = _result("bullet-commutative", J, samples, seed)
    rng = make_rng(seed, "commutative")
    for _ in range(samples):
        x, y = J.random(rng), J.random(rng)
        res.record(J.bullet(x, y) == J.bullet(y, x), lambda: _w(J.ring, x=x, y=y))
    return res


def _commutator(a: Matrix, b: Matrix) -> Matrix:
    return a @ b - b @ a


def check_lts(J: JordanStructure, samples: int = 200, seed: int = 0, triple=None, bracket=None) -> CheckResult:
    """Lie triple system axioms for R_T; for full:n also R_T(x,y)z = [[x,y],z].

    ``bracket`` replaces R_T outright (mutation tests).
    """
    if not J.unary:
        raise Unsupported("the Jordan-Lie functor needs a triple system on one space")
    R = bracket or (lambda x, y, z: jordan_lie_R(J, x, y, z, triple))
    res = _result("lts", J, samples, seed)
    rng = make_rng(seed, "lts")
    counts = {"antisymmetry": 0, "jacobi": 0, "derivation": 0, "double-commutator": 0}
    full = isinstance(J, MatrixFamily) and J.kind == "full"
    for _ in range(samples):
        a, b, x, y, z = (J.random(rng) for _ in range(5))
        failures = []
        if R(x, y, z) != -R(y, x, z):
            failures.append("antisymmetry")
        if not (R(x, y, z) + R(y, z, x) + R(z, x, y)).is_zero():
            failures.append("jacobi")
        lhs = R(a, b, R(x, y, z))
        rhs = R(R(a, b, x), y, z) + R(x, R(a, b, y), z) + R(x, y, R(a, b, z))
        if lhs != rhs:
            failures.append("derivation")
        if full and R(x, y, z) != _commutator(_commutator(x, y), z):
            failures.append("double-commutator")
        for f in failures:
            counts[f] += 1
        res.record(not failures, lambda: _w(J.ring, a=a, b=b, x=x, y=y, z=z) | {"axioms": failures})
    res.details["failures_by_axiom"] = counts
    return res


def check_isotope(J: JordanStructure, samples: int = 50, seed: int = 0) -> CheckResult:
    """For sampled invertible x in V-, e = Q(x)^{-1}x is a unit of the isotope at x."""
    res = _result("isotope", J, samples, seed)
    rng = make_rng(seed, "isotope")

    def draw():
        x = J.random(rng, MINUS)
        return x if is_invertible_element(J, x, MINUS) else None

    for _ in range(samples):
        x = rejection(draw)
        e = jordan_unit_from(J, x, MINUS)
        ok = all(
            isotope_product(J, e, y, x) == y and isotope_product(J, y, e, x) == y for y in J.basis(PLUS)
        )
        res.record(ok, lambda: _w(J.ring, x=x, e=e))
    return res


def check_inner_ideal(J: JordanStructure, ideal: list[Matrix], name: str = "inner-ideal") -> CheckResult:
    """Complete basis check of T(I, V-, I) ⊆ I."""
    res = _result(name, J, 0, 0)
    if len(ideal) and rank(hstack(*[_coord_col(J, b) for b in ideal])) != len(ideal):
        raise ValueError("inner ideal basis is not linearly independent")
    for i1 in ideal:
        for v in J.basis(MINUS):
            for i2 in ideal:
                t = J.triple(i1, v, i2)
                res.record(in_span(J, ideal, t), lambda: _w(J.ring, i1=i1, v=v, i2=i2, image=t))
    res.samples = res.passed + res.failed
    return res


def _coord_col(J: JordanStructure, v: Matrix, side: str = PLUS) -> Matrix:
    ring = J.scalar_ring
    return Matrix(ring, [[ring.coerce(c)] for c in J.coords(v, side)], 1)


def default_inner_ideals(J: JordanStructure) -> list[tuple[str, list[Matrix], bool]]:
    """Some (label, basis, expected) cases used by the CLI."""
    out: list[tuple[str, list[Matrix], bool]] = [("whole", list(J.basis(PLUS)), True)]
    if isinstance(J, MatrixFamily) and J.kind in ("full", "rect"):
        ring = J.ring
        p, q = J.p, J.q
        out.append(("corner E11", [Matrix.unit(ring, p, q, 0, 0)], True))
        out.append(("first row", [Matrix.unit(ring, p, q, 0, j) for j in range(q)], True))
        out.append(("first column", [Matrix.unit(ring, p, q, i, 0) for i in range(p)], True))
        if p == q and p > 1:
            out.append(("identity line", [Matrix.identity(ring, p)], False))
    return out


# ---------------------------------------------------------------------------
# Herm(2) and Minkowski space


def pauli_basis(ring: Ring) -> list[Matrix]:
    i = ring.i
    one, z = ring.one(), ring.zero()
    return [
        Matrix(ring, [[one, z], [z, one]], 2),
        Matrix(ring, [[z, one], [one, z]], 2),
        Matrix(ring, [[z, -i], [i, z]], 2),
        Matrix(ring, [[one, z], [z, -one]], 2),
    ]


def herm2_to_minkowski(x: Matrix, ring: Ring, target: Ring) -> Matrix:
    """Coordinates of a Hermitian 2×2 matrix in the basis {I, σ1, σ2, σ3}."""
    ri = ring.real_imag
    h = target.inv2
    a = ri(x[0, 0])[0]
    d = ri(x[1, 1])[0]
    re12, im12 = ri(x[0, 1])
    coords = [(a + d) * h, re12, -im12, (a - d) * h]
    return Matrix(target, [[target.coerce(c)] for c in coords], 1)


def herm_to_spin_iso(ring: Ring | None = None) -> CheckResult:
    """Compare the bullet tables of Herm(2) and Spin(4, diag(1,−1,−1,−1), e0)."""
    ring = ring or GaussianRational()
    herm = MatrixFamily("herm", ring, 2)
    target = ring.fixed_ring()
    spin = SpinFactor(target, 4)
    basis = pauli_basis(ring)
    images = [herm2_to_minkowski(b, ring, target) for b in basis]
    res = CheckResult(name="herm-spin", target="herm:2", ring=ring.name, samples=10, seed=0)
    table = []
    for i in range(4):
        if images[i] != Matrix.unit(target, 4, 1, i, 0):
            raise AssertionError("Pauli basis does not map to the standard basis")
        for j in range(i, 4):
            lhs = herm2_to_minkowski(herm.bullet(basis[i], basis[j]), ring, target)
            rhs = spin.bullet(images[i], images[j])
            table.append({"pair": [i, j], "herm": lhs.T.to_json()[0], "spin": rhs.T.to_json()[0]})
            res.record(lhs == rhs, {"pair": [i, j], "herm": lhs.to_json(), "spin": rhs.to_json()})
    res.details["table"] = table
    return res


