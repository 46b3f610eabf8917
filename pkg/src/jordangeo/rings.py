"""Exact base rings: Q, Q(i), Z/p and dual numbers over any of them.

Elements are plain Python numbers with operator overloading
(``gmpy2.mpq`` for Q, :class:`Gaussian`, :class:`ModInt`,
:class:`DualNumber`).  A ring descriptor knows how to build, sample,
test, invert, conjugate, parse and format its elements.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

from gmpy2 import mpq

MPQ = type(mpq())
RATIONALS = (MPQ, Fraction)


class RingMismatch(TypeError):
    """Arithmetic between elements of different rings."""


class NotAUnit(ArithmeticError):
    """Inversion of a non-unit."""


# ---------------------------------------------------------------------------
# element types


def _rat(x) -> MPQ:
    if isinstance(x, MPQ):
        return x
    if isinstance(x, (int, Fraction)):
        return mpq(x)
    raise RingMismatch(f"cannot use {type(x).__name__} as a rational")


class Gaussian:
    """a + b·i with rational a, b."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _rat(re)
        self.im = _rat(im)

    @staticmethod
    def _coerce(other) -> "Gaussian":
        if isinstance(other, Gaussian):
            return other
        if isinstance(other, (int,) + RATIONALS):
            return Gaussian(other, 0)
        raise RingMismatch(f"cannot combine Gaussian with {type(other).__name__}")

    def __add__(self, other):
        if isinstance(other, DualNumber):
            return NotImplemented
        o = self._coerce(other)
        return Gaussian(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, DualNumber):
            return NotImplemented
        o = self._coerce(other)
        return Gaussian(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, DualNumber):
            return NotImplemented
        o = self._coerce(other)
        return Gaussian(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __neg__(self):
        return Gaussian(-self.re, -self.im)

    def __eq__(self, other):
        if isinstance(other, DualNumber):
            return NotImplemented
        try:
            o = self._coerce(other)
        except RingMismatch:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def conjugate(self) -> "Gaussian":
        return Gaussian(self.re, -self.im)

    def __repr__(self):
        return f"Gaussian({self.re}, {self.im})"


class ModInt:
    """Residue class modulo a prime p, stored in [0, p)."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.p = p
        self.v = v % p

    def _coerce(self, other) -> int:
        if isinstance(other, ModInt):
            if other.p != self.p:
                raise RingMismatch(f"Z/{self.p} vs Z/{other.p}")
            return other.v
        if isinstance(other, int):
            return other
        raise RingMismatch(f"cannot combine Z/{self.p} with {type(other).__name__}")

    def __add__(self, other):
        if isinstance(other, DualNumber):
            return NotImplemented
        return ModInt(self.v + self._coerce(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, DualNumber):
            return NotImplemented
        return ModInt(self.v - self._coerce(other), self.p)

    def __rsub__(self, other):
        return ModInt(self._coerce(other) - self.v, self.p)

    def __mul__(self, other):
        if isinstance(other, DualNumber):
            return NotImplemented
        return ModInt(self.v * self._coerce(other), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return ModInt(-self.v, self.p)

    def __eq__(self, other):
        if isinstance(other, DualNumber):
            return NotImplemented
        try:
            o = self._coerce(other)
        except RingMismatch:
            return NotImplemented
        return (self.v - o) % self.p == 0

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"ModInt({self.v}, {self.p})"


class DualNumber:
    """a + b·ε with ε² = 0; a and b live in the base ring."""

    __slots__ = ("a", "b")

    def __init__(self, a, b=0):
        self.a = a
        self.b = b

    def _coerce(self, other) -> "DualNumber | None":
        if isinstance(other, DualNumber):
            ds, do = _dual_depth(self), _dual_depth(other)
            if do == ds:
                return other
            if do > ds:
                return None  # caller lets the deeper operand do the work
        # anything else is embedded from the base ring; incompatible
        # base types fail inside the component arithmetic
        return DualNumber(other, 0)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return other + self
        return DualNumber(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return -(other - self)
        return DualNumber(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._coerce(other)
        return other - self if o is None else o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return other * self
        return DualNumber(self.a * o.a, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __neg__(self):
        return DualNumber(-self.a, -self.b)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return other == self
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        if not self.b:
            return hash(self.a)
        return hash((self.a, self.b))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __repr__(self):
        return f"DualNumber({self.a!r}, {self.b!r})"


Scalar = Union[MPQ, Gaussian, ModInt, DualNumber]


# ---------------------------------------------------------------------------
# descriptors


class Ring:
    """Base class of ring descriptors.  Subclasses are frozen dataclasses."""

    involutive = False

    @property
    def name(self) -> str:
        raise NotImplementedError

    def __str__(self):
        return self.name

    # construction
    def coerce(self, x) -> Scalar:
        raise NotImplementedError

    def zero(self) -> Scalar:
        return self.coerce(0)

    def one(self) -> Scalar:
        return self.coerce(1)

    # predicates and unary maps
    def is_unit(self, x) -> bool:
        raise NotImplementedError

    def inv(self, x) -> Scalar:
        raise NotImplementedError

    def conj(self, x) -> Scalar:
        return x

    @property
    def is_field(self) -> bool:
        return True

    @property
    def is_finite(self) -> bool:
        return False

    def fixed_ring(self) -> "Ring":
        """Subring fixed by the involution."""
        return self

    # sampling / text
    def random(self, rng: random.Random, lo: int = -3, hi: int = 3) -> Scalar:
        raise NotImplementedError

    def random_unit(self, rng: random.Random, lo: int = -3, hi: int = 3) -> Scalar:
        for _ in range(1000):
            x = self.random(rng, lo, hi)
            if self.is_unit(x):
                return x
        raise RuntimeError(f"no unit found in {self.name}")

    def format(self, x) -> str:
        raise NotImplementedError

    def parse(self, s: str) -> Scalar:
        raise NotImplementedError

    def elements(self) -> Iterator[Scalar]:
        raise ValueError(f"{self.name} is not finite")

    @property
    def inv2(self) -> Scalar:
        return self.inv(self.coerce(2))

    @property
    def inv3(self) -> Scalar:
        return self.inv(self.coerce(3))


_RAT_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def _parse_rational(s: str) -> MPQ:
    s = s.strip()
    if not _RAT_RE.match(s):
        raise ValueError(f"not a rational number: {s!r}")
    return mpq(s)


def _strip_parens(s: str) -> str:
    s = s.strip()
    while s.startswith("(") and s.endswith(")") and _depth_closes_at_end(s):
        s = s[1:-1].strip()
    return s


def _depth_closes_at_end(s: str) -> bool:
    depth = 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth == 0 and i != len(s) - 1:
                return False
    return True


def _split_symbolic(s: str, sym: str) -> tuple[str, str]:
    """Split ``A+B<sym>`` at the top level into (A, B).

    Missing parts come back as "0"; a bare symbol has coefficient "1".
    """
    s = s.strip()
    if not s.endswith(sym):
        return s, "0"
    body = s[: -len(sym)]
    depth = 0
    split = -1
    for i, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and i > 0 and body[i - 1] not in "(/":
            split = i
    if split == -1:
        a, b = "0", body
    else:
        a, b = body[:split], body[split:]
    b = b.strip()
    if b.startswith("+"):
        b = b[1:].strip()
    if b == "":
        b = "1"
    elif b == "-":
        b = "-1"
    return a, b


def _format_symbolic(a: str, b: str, b_zero: bool, a_zero: bool, sym: str) -> str:
    if b_zero:
        return a
    if b == "1":
        bs = sym
    elif b == "-1":
        bs = "-" + sym
    else:
        bs = b + sym
    if a_zero:
        return bs
    if bs.startswith("-"):
        return f"{a}{bs}"
    return f"{a}+{bs}"


@dataclass(frozen=True)
class Rational(Ring):
    @property
    def name(self) -> str:
        return "Q"

    def coerce(self, x):
        if isinstance(x, MPQ):
            return x
        if isinstance(x, (int, Fraction)):
            return mpq(x)
        raise RingMismatch(f"cannot coerce {x!r} into Q")

    def is_unit(self, x) -> bool:
        return x != 0

    def inv(self, x):
        if x == 0:
            raise NotAUnit("0 is not invertible")
        return 1 / x

    def random(self, rng, lo=-3, hi=3):
        return mpq(rng.randint(lo, hi))

    def format(self, x) -> str:
        return str(x)

    def parse(self, s: str):
        return _parse_rational(_strip_parens(s))


@dataclass(frozen=True)
class GaussianRational(Ring):
    """Q(i); the involution is complex conjugation unless disabled."""

    conjugation: bool = True

    @property
    def involutive(self) -> bool:  # type: ignore[override]
        return self.conjugation

    @property
    def name(self) -> str:
        return "Qi" if self.conjugation else "Qi[id]"

    def coerce(self, x):
        if isinstance(x, Gaussian):
            return x
        if isinstance(x, (int,) + RATIONALS):
            return Gaussian(x, 0)
        raise RingMismatch(f"cannot coerce {x!r} into Qi")

    def is_unit(self, x) -> bool:
        return bool(x)

    def inv(self, x):
        if not x:
            raise NotAUnit("0 is not invertible")
        n = x.re * x.re + x.im * x.im
        return Gaussian(x.re / n, -x.im / n)

    def conj(self, x):
        return x.conjugate() if self.conjugation else x

    def fixed_ring(self) -> Ring:
        return Rational() if self.conjugation else self

    def real_imag(self, x) -> tuple[MPQ, MPQ]:
        return x.re, x.im

    def from_real_imag(self, re_part, im_part):
        return Gaussian(re_part, im_part)

    @property
    def i(self) -> Gaussian:
        return Gaussian(0, 1)

    def random(self, rng, lo=-3, hi=3):
        return Gaussian(rng.randint(lo, hi), rng.randint(lo, hi))

    def format(self, x) -> str:
        return _format_symbolic(str(x.re), str(x.im), x.im == 0, x.re == 0, "i")

    def parse(self, s: str):
        a, b = _split_symbolic(_strip_parens(s), "i")
        return Gaussian(_parse_rational(a), _parse_rational(b))


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class Modular(Ring):
    p: int

    def __post_init__(self):
        if self.p in (2, 3):
            raise ValueError("modulus must make 2 and 3 units")
        if not _is_prime(self.p):
            raise ValueError(f"modulus must be a prime >= 5, got {self.p}")

    @property
    def name(self) -> str:
        return f"Zmod:{self.p}"

    @property
    def is_finite(self) -> bool:
        return True

    def coerce(self, x):
        if isinstance(x, ModInt):
            if x.p != self.p:
                raise RingMismatch(f"Z/{x.p} element in Z/{self.p}")
            return x
        if isinstance(x, int):
            return ModInt(x, self.p)
        if isinstance(x, RATIONALS):
            return ModInt(int(x.numerator) * pow(int(x.denominator), -1, self.p), self.p)
        raise RingMismatch(f"cannot coerce {x!r} into Z/{self.p}")

    def is_unit(self, x) -> bool:
        return bool(x)

    def inv(self, x):
        if not x:
            raise NotAUnit("0 is not invertible")
        return ModInt(pow(x.v, -1, self.p), self.p)

    def random(self, rng, lo=-3, hi=3):
        return ModInt(rng.randrange(self.p), self.p)

    def format(self, x) -> str:
        return str(x.v)

    def parse(self, s: str):
        return self.coerce(_parse_rational(_strip_parens(s)))

    def elements(self):
        for v in range(self.p):
            yield ModInt(v, self.p)


@dataclass(frozen=True)
class Dual(Ring):
    """K[ε] = K ⊕ εK.  A local ring: u + vε is a unit iff u is."""

    base: Ring

    @property
    def involutive(self) -> bool:  # type: ignore[override]
        return self.base.involutive

    @property
    def name(self) -> str:
        return f"dual:{self.base.name}"

    @property
    def is_field(self) -> bool:
        return False

    @property
    def is_finite(self) -> bool:
        return self.base.is_finite

    @property
    def eps(self) -> DualNumber:
        return DualNumber(self.base.zero(), self.base.one())

    @property
    def depth(self) -> int:
        return 1 + getattr(self.base, "depth", 0)

    def coerce(self, x):
        if isinstance(x, DualNumber):
            d = _dual_depth(x)
            if d > self.depth:
                raise RingMismatch(f"cannot coerce {x!r} into {self.name}")
            if d == self.depth:
                return DualNumber(self.base.coerce(x.a), self.base.coerce(x.b))
        # an element of the base ring (possibly itself a dual number)
        return DualNumber(self.base.coerce(x), self.base.zero())

    def make(self, a, b=0) -> DualNumber:
        return DualNumber(self.base.coerce(a), self.base.coerce(b))

    def is_unit(self, x) -> bool:
        return self.base.is_unit(x.a)

    def inv(self, x):
        if not self.base.is_unit(x.a):
            raise NotAUnit(f"{self.format(x)} is not a unit")
        ui = self.base.inv(x.a)
        return DualNumber(ui, -(ui * ui * x.b))

    def conj(self, x):
        return DualNumber(self.base.conj(x.a), self.base.conj(x.b))

    def fixed_ring(self) -> Ring:
        fb = self.base.fixed_ring()
        return self if fb is self.base else Dual(fb)

    def real_imag(self, x):
        ra, ia = self.base.real_imag(x.a)
        rb, ib = self.base.real_imag(x.b)
        return DualNumber(ra, rb), DualNumber(ia, ib)

    def from_real_imag(self, re_part, im_part):
        return DualNumber(
            self.base.from_real_imag(re_part.a, im_part.a),
            self.base.from_real_imag(re_part.b, im_part.b),
        )

    @property
    def i(self):
        return DualNumber(self.base.i, self.base.zero())

    def random(self, rng, lo=-3, hi=3):
        return DualNumber(self.base.random(rng, lo, hi), self.base.random(rng, lo, hi))

    def _fmt_part(self, x) -> str:
        s = self.base.format(x)
        if isinstance(self.base, (Rational, Modular)):
            return s
        if _RAT_RE.match(s):
            return s
        return f"({s})"

    def format(self, x) -> str:
        a = self._fmt_part(x.a)
        b = self._fmt_part(x.b)
        return _format_symbolic(a, b, not x.b, not x.a, "e")

    def _parse_part(self, s: str):
        s = s.strip()
        if s.startswith("-("):
            return -self.base.parse(s[1:])
        return self.base.parse(s)

    def parse(self, s: str):
        a, b = _split_symbolic(_strip_parens(s), "e")
        return DualNumber(self._parse_part(a), self._parse_part(b))

    def elements(self):
        for a in self.base.elements():
            for b in self.base.elements():
                yield DualNumber(a, b)


def _dual_depth(x) -> int:
    d = 0
    while isinstance(x, DualNumber):
        x, d = x.a, d + 1
    return d


def embed_dual(x, ring: Ring) -> DualNumber:
    """Ring homomorphism K -> K[ε]."""
    return DualNumber(ring.coerce(x), ring.zero())


def parts(x) -> tuple:
    """(base part, ε part) of a dual number."""
    if not isinstance(x, DualNumber):
        raise TypeError(f"parts() needs a dual number, got {type(x).__name__}")
    return x.a, x.b


def base_part(x):
    return parts(x)[0]


def parse_ring(spec: str) -> Ring:
    """Parse ``Q``, ``Qi``, ``Zmod:<p>`` or ``dual:<inner>``."""
    spec = spec.strip()
    if spec == "Q":
        return Rational()
    if spec == "Qi":
        return GaussianRational()
    if spec.startswith("Zmod:"):
        tail = spec[len("Zmod:"):]
        if not tail.isdigit():
            raise ValueError(f"bad modulus in ring {spec!r}")
        return Modular(int(tail))
    if spec.startswith("dual:"):
        return Dual(parse_ring(spec[len("dual:"):]))
    raise ValueError(f"unknown ring {spec!r}")
