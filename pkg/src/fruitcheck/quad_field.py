"""Exact arithmetic in the ring of integers of Q(sqrt(t)), plus the behaviour of 2.

Elements are stored in the integral basis {1, w} with

    w = sqrt(t)          if t = 2, 3 (mod 4)
    w = (1 + sqrt(t))/2  if t = 1 (mod 4)

so that ``2 | x`` is simply "both coordinates even".  The rational field is the
degenerate case ``QuadField(None)`` whose elements all have ``v == 0``.

When 2 splits (t = 1 mod 8) each prime P above 2 has O_K/P^n = Z/2^nZ.  The map
is realised by sending sqrt(t) to a 2-adic square root of t, built bit by bit
with a fixed Hensel chain; the conjugate prime uses the negated root.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional, Union

from sympy import factorint

from .errors import DomainError, PrecisionError, UnsupportedPrime

__all__ = [
    "BasisKind",
    "SplitType",
    "QuadField",
    "QuadInt",
    "PrimeAbove2",
    "RATIONAL",
    "is_squarefree",
    "splitting_of_two",
    "t_k_nonempty",
    "hensel_sqrt",
    "prime_above_two",
    "residue_map",
    "divisible_by_two",
    "parse_field",
    "parse_quadint",
]

DEFAULT_PRECISION = 64


class BasisKind(enum.Enum):
    OMEGA_IS_SQRT = "OmegaIsSqrt"
    OMEGA_IS_HALF_ONE_PLUS_SQRT = "OmegaIsHalfOnePlusSqrt"
    RATIONAL = "Rational"


class SplitType(enum.Enum):
    SPLIT = "Split"
    INERT = "Inert"
    RAMIFIED = "Ramified"
    RATIONAL = "Rational"


def is_squarefree(n: int) -> bool:
    """True iff no prime square divides ``|n|``."""
    if n == 0:
        raise DomainError("is_squarefree: 0 is not a valid input")
    return all(e == 1 for e in factorint(abs(n)).values())


@dataclass(frozen=True)
class QuadField:
    """The field Q(sqrt(t)) for square-free t not in {0, 1}; ``t=None`` is Q."""

    t: Optional[int]

    def __post_init__(self):
        t = self.t
        if t is None:
            return
        if not isinstance(t, int) or isinstance(t, bool):
            raise DomainError(f"field parameter must be an integer, got {t!r}")
        if t in (0, 1):
            raise DomainError(f"t = {t} does not define a quadratic field")
        if not is_squarefree(t):
            raise DomainError(f"t = {t} is not square-free")

    @property
    def is_rational(self) -> bool:
        return self.t is None

    @property
    def basis_kind(self) -> BasisKind:
        if self.t is None:
            return BasisKind.RATIONAL
        if self.t % 4 == 1:
            return BasisKind.OMEGA_IS_HALF_ONE_PLUS_SQRT
        return BasisKind.OMEGA_IS_SQRT

    @property
    def field_discriminant(self) -> int:
        if self.t is None:
            return 1
        return self.t if self.t % 4 == 1 else 4 * self.t

    @property
    def omega_square(self) -> tuple[int, int]:
        """(p, q) with w^2 = p + q*w."""
        kind = self.basis_kind
        if kind is BasisKind.OMEGA_IS_SQRT:
            return self.t, 0
        if kind is BasisKind.OMEGA_IS_HALF_ONE_PLUS_SQRT:
            return (self.t - 1) // 4, 1
        return 0, 0

    def __call__(self, u: int, v: int = 0) -> "QuadInt":
        return QuadInt(u, v, self)

    @property
    def zero(self) -> "QuadInt":
        return QuadInt(0, 0, self)

    @property
    def one(self) -> "QuadInt":
        return QuadInt(1, 0, self)

    @property
    def omega(self) -> "QuadInt":
        if self.is_rational:
            raise DomainError("the rational field has no generator w")
        return QuadInt(0, 1, self)

    def label(self) -> str:
        return "Q" if self.t is None else str(self.t)

    def __str__(self):
        return "Q" if self.t is None else f"Q(sqrt({self.t}))"


RATIONAL = QuadField(None)

_Operand = Union["QuadInt", int]


@dataclass(frozen=True)
class QuadInt:
    """The element ``u + v*w`` of O_K."""

    u: int
    v: int
    field: QuadField

    def __post_init__(self):
        if self.field.is_rational and self.v != 0:
            raise DomainError("elements of Z must have v = 0")

    def _coerce(self, other: _Operand) -> "QuadInt":
        if isinstance(other, QuadInt):
            if other.field != self.field:
                raise DomainError(f"cannot mix elements of {self.field} and {other.field}")
            return other
        if isinstance(other, int):
            return QuadInt(other, 0, self.field)
        return NotImplemented

    def __add__(self, other: _Operand) -> "QuadInt":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QuadInt(self.u + other.u, self.v + other.v, self.field)

    __radd__ = __add__

    def __neg__(self) -> "QuadInt":
        return QuadInt(-self.u, -self.v, self.field)

    def __sub__(self, other: _Operand) -> "QuadInt":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QuadInt(self.u - other.u, self.v - other.v, self.field)

    def __rsub__(self, other: _Operand) -> "QuadInt":
        return (-self) + other

    def __mul__(self, other: _Operand) -> "QuadInt":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p, q = self.field.omega_square
        vv = self.v * other.v
        return QuadInt(
            self.u * other.u + p * vv,
            self.u * other.v + self.v * other.u + q * vv,
            self.field,
        )

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "QuadInt":
        if k < 0:
            raise DomainError("negative powers are not defined in O_K")
        result = self.field.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return self.v == 0 and self.u == other
        if isinstance(other, QuadInt):
            return (self.u, self.v, self.field) == (other.u, other.v, other.field)
        return NotImplemented

    def __hash__(self):
        return hash((self.u, self.v, self.field))

    def __bool__(self):
        return bool(self.u or self.v)

    @property
    def coords(self) -> tuple[int, int]:
        return self.u, self.v

    def __str__(self):
        return f"{self.u},{self.v}"

    def __repr__(self):
        return f"QuadInt({self.u}, {self.v}, {self.field.label()})"


def parse_field(text: str) -> QuadField:
    """Parse a field parameter: a signed decimal t or the literal ``Q``."""
    text = text.strip()
    if text.upper() == "Q":
        return RATIONAL
    try:
        t = int(text)
    except ValueError:
        raise DomainError(f"bad field parameter {text!r}: expected an integer or 'Q'") from None
    return QuadField(t)


def parse_quadint(text: str, field: QuadField) -> QuadInt:
    """Parse ``"u,v"`` (or a bare ``"u"``) into an element of ``field``."""
    parts = [p.strip() for p in text.split(",")]
    if len(parts) not in (1, 2):
        raise DomainError(f"bad element {text!r}: expected 'u,v'")
    try:
        coords = [int(p) for p in parts]
    except ValueError:
        raise DomainError(f"bad element {text!r}: coordinates must be integers") from None
    if len(coords) == 1:
        coords.append(0)
    return QuadInt(coords[0], coords[1], field)


def splitting_of_two(t: int) -> SplitType:
    if t in (0, 1) or not is_squarefree(t):
        raise DomainError(f"t = {t} is not a square-free integer outside {{0, 1}}")
    if t % 8 == 1:
        return SplitType.SPLIT
    if t % 8 == 5:
        return SplitType.INERT
    return SplitType.RAMIFIED


def _split_type(field: QuadField) -> SplitType:
    if field.is_rational:
        return SplitType.RATIONAL
    return splitting_of_two(field.t)


def t_k_nonempty(field: QuadField) -> bool:
    """Whether some prime above 2 has e = f = 1."""
    return _split_type(field) in (SplitType.SPLIT, SplitType.RATIONAL)


def hensel_sqrt(t: int, n: int) -> int:
    """Square root of t modulo 2^n from the chain that starts at 1.

    At step k (3 <= k < n) the current s satisfies s^2 = t mod 2^k and is
    corrected by 2^(k-1) when needed to hold mod 2^(k+1).  Bits 0..n-2 of the
    result agree with one fixed 2-adic square root of t; bit n-1 is always 0.
    """
    if t % 8 != 1:
        raise DomainError(f"t = {t} is not 1 mod 8, so it has no 2-adic square root")
    if n < 3:
        raise DomainError(f"hensel_sqrt needs n >= 3, got {n}")
    s = 1
    for k in range(3, n):
        if (s * s - t) % (1 << (k + 1)):
            s += 1 << (k - 1)
    return s


@dataclass(frozen=True)
class PrimeAbove2:
    """A prime of K above 2, with its 2-adic root of t when 2 splits.

    ``canonical_root`` is the 2-adic square root of t reduced mod
    ``2**precision``; ``branch`` 0 follows the Hensel chain and branch 1 is its
    negative, i.e. the conjugate prime.
    """

    field: QuadField
    split_type: SplitType
    canonical_root: Optional[int]
    precision: int
    branch: int = 0


def prime_above_two(field: QuadField, precision: int = DEFAULT_PRECISION, branch: int = 0) -> PrimeAbove2:
    if precision < 1:
        raise DomainError("precision must be positive")
    if branch not in (0, 1):
        raise DomainError("branch must be 0 or 1")
    split = _split_type(field)
    root = None
    if split is SplitType.SPLIT:
        # hensel_sqrt(t, P+1) is already reduced mod 2^P and agrees with the 2-adic root there.
        root = hensel_sqrt(field.t, max(precision, 2) + 1) % (1 << precision)
        if branch == 1:
            root = (-root) % (1 << precision)
    return PrimeAbove2(field, split, root, precision, branch)


def residue_map(x: QuadInt, p: PrimeAbove2, n: int) -> int:
    """Image of x in O_K/P^n = Z/2^nZ."""
    if n < 1:
        raise DomainError("residue_map needs n >= 1")
    if x.field != p.field:
        raise DomainError("element and prime live in different fields")
    mod = 1 << n
    if p.split_type is SplitType.RATIONAL:
        return x.u % mod
    if p.split_type is not SplitType.SPLIT:
        raise UnsupportedPrime(
            f"2 is {p.split_type.value.lower()} in {x.field}; no residue map onto Z/2^nZ"
        )
    if p.precision < n + 1:
        raise PrecisionError(f"root known to {p.precision} bits, need {n + 1} for n = {n}")
    s = p.canonical_root % (mod << 1)
    # split implies t = 1 mod 4, so w = (1 + sqrt t)/2 and s is odd
    sigma = (1 + s) >> 1
    return (x.u + x.v * sigma) % mod


def divisible_by_two(x: QuadInt) -> bool:
    return x.u % 2 == 0 and x.v % 2 == 0


def isqrt_exact(n: int) -> Optional[int]:
    """Non-negative integer square root of n, or None when n is not a square."""
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None
