"""Square-free integers in residue classes: sieve counts against the asymptotic.

For a class t = r (mod N) with s = gcd(r, N) square-free, the count of
square-free t in [2, X] grows like q * (6/pi^2) * X, where

    q = phi(N) / (s * phi(N/s) * N * prod_{p | N} (1 - 1/p^2)).

q is also the limiting share of the class among all square-free integers, so
for t = 1 (mod 8) the relative density is 1/6.  Predictions are kept as exact
fractions; pi only appears when a decimal is rendered.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

import numpy as np

from .config import DEFAULT_SEGMENT
from .errors import DomainError
from .quad_field import is_squarefree

SIX_OVER_PI2 = 6 / math.pi**2


def _factor_small(n: int) -> dict[int, int]:
    """Trial factorization; moduli here are small."""
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def totient(n: int) -> int:
    if n < 1:
        raise DomainError("totient needs a positive integer")
    result = n
    for p in _factor_small(n):
        result -= result // p
    return result


def _primes_upto(n: int) -> np.ndarray:
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    flags = np.ones(n + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return np.flatnonzero(flags)


def _segment(lo: int, hi: int, prime_squares: Iterable[int]) -> np.ndarray:
    """Square-free indicator for lo <= t < hi."""
    seg = np.ones(hi - lo, dtype=bool)
    for p2 in prime_squares:
        if p2 >= hi:
            break
        start = -(-lo // p2) * p2
        seg[start - lo :: p2] = False
    return seg


def _prime_squares(X: int) -> list[int]:
    return [int(p) * int(p) for p in _primes_upto(math.isqrt(X))]


def squarefree_sieve(X: int) -> np.ndarray:
    """Boolean table ``ind`` of length X+1 with ind[t] True iff 2 <= t and t is square-free."""
    if X < 2:
        raise DomainError("squarefree_sieve needs X >= 2")
    ind = np.zeros(X + 1, dtype=bool)
    ind[2:] = _segment(2, X + 1, _prime_squares(X))
    return ind


def class_counts(X: int, N: int, checkpoints: Optional[Iterable[int]] = None,
                 segment: int = DEFAULT_SEGMENT) -> dict[int, list[int]]:
    """Per-residue square-free counts in [2, c] for each checkpoint c (default: just X).

    Returns ``{c: [count of t = 0 mod N, ..., count of t = N-1 mod N]}``.  The
    range is sieved in segments of ``segment`` integers.
    """
    if X < 2:
        raise DomainError("density limits must be at least 2")
    if N < 1:
        raise DomainError("modulus must be positive")
    cps = sorted(set(checkpoints or [X]))
    if cps[0] < 2 or cps[-1] > X:
        raise DomainError("checkpoints must lie in [2, X]")
    squares = _prime_squares(X)
    running = np.zeros(N, dtype=np.int64)
    result: dict[int, list[int]] = {}
    lo = 2
    ci = 0
    while lo <= X:
        hi = min(lo + segment, X + 1)
        seg = _segment(lo, hi, squares)
        done = lo
        while ci < len(cps) and cps[ci] < hi:
            cp = cps[ci]
            running += _residue_hist(seg[done - lo : cp + 1 - lo], done, N)
            done = cp + 1
            result[cp] = [int(v) for v in running]
            ci += 1
        running += _residue_hist(seg[done - lo :], done, N)
        lo = hi
    return result


def _residue_hist(block: np.ndarray, start: int, N: int) -> np.ndarray:
    if N == 1:
        return np.array([int(block.sum())], dtype=np.int64)
    hist = np.zeros(N, dtype=np.int64)
    for r in range(N):
        off = (r - start) % N
        hist[r] = int(block[off::N].sum())
    return hist


@dataclass(frozen=True)
class ResidueClassQuery:
    r: int
    N: int
    X: int

    def __post_init__(self):
        if self.N < 1:
            raise DomainError("modulus N must be positive")
        if not 0 <= self.r < self.N:
            raise DomainError(f"residue r must satisfy 0 <= r < N, got r={self.r}, N={self.N}")
        if self.X < 2:
            raise DomainError("limit X must be at least 2")


def count_squarefree(X: int, segment: int = DEFAULT_SEGMENT) -> int:
    return sum(class_counts(X, 1, segment=segment)[X])


def count_residue_class(q: ResidueClassQuery, segment: int = DEFAULT_SEGMENT) -> int:
    return class_counts(q.X, q.N, segment=segment)[q.X][q.r]


def fs_asymptotic_constant(r: int, N: int) -> Fraction:
    """Exact q with #{square-free t <= X, t = r mod N} ~ q * (6/pi^2) * X."""
    if N < 1:
        raise DomainError("modulus N must be positive")
    s = math.gcd(r, N)
    if not is_squarefree(s):
        raise DomainError(f"gcd(r, N) = {s} is not square-free; the asymptotic does not apply")
    euler = Fraction(1)
    for p in _factor_small(N):
        euler *= 1 - Fraction(1, p * p)
    return Fraction(totient(N)) / (s * totient(N // s) * N * euler)


def render(x: float) -> str:
    return format(x, ".12g")


@dataclass(frozen=True)
class DensityReport:
    r: int
    N: int
    X: int
    count_class: int
    count_squarefree: int
    asymptotic_constant: Fraction

    @property
    def rel_density_empirical(self) -> Fraction:
        return Fraction(self.count_class, self.count_squarefree)

    @property
    def abs_density_empirical(self) -> Fraction:
        return Fraction(self.count_class, self.X)

    @property
    def predicted_rel_density(self) -> Fraction:
        return self.asymptotic_constant

    @property
    def predicted_abs_density(self) -> float:
        return float(self.asymptotic_constant) * SIX_OVER_PI2

    @property
    def abs_predicted_times_pi2(self) -> Fraction:
        """Predicted absolute density times pi^2, exact: 6q."""
        return 6 * self.asymptotic_constant

    def as_dict(self) -> dict:
        return {
            "r": str(self.r),
            "N": str(self.N),
            "X": str(self.X),
            "count_class": str(self.count_class),
            "count_squarefree": str(self.count_squarefree),
            "rel_empirical": str(self.rel_density_empirical),
            "rel_empirical_decimal": render(float(self.rel_density_empirical)),
            "rel_predicted": str(self.predicted_rel_density),
            "abs_empirical": str(self.abs_density_empirical),
            "abs_empirical_decimal": render(float(self.abs_density_empirical)),
            "abs_predicted_times_pi2": str(self.abs_predicted_times_pi2),
            "abs_predicted_decimal": render(self.predicted_abs_density),
        }


def density_report(q: ResidueClassQuery, segment: int = DEFAULT_SEGMENT) -> DensityReport:
    const = fs_asymptotic_constant(q.r, q.N)
    counts = class_counts(q.X, q.N, segment=segment)[q.X]
    return DensityReport(q.r, q.N, q.X, counts[q.r], sum(counts), const)


def density_series(r: int, N: int, limits: Iterable[int], segment: int = DEFAULT_SEGMENT) -> list[DensityReport]:
    """Reports at several limits from a single sieve pass up to the largest."""
    limits = sorted(set(limits))
    for X in limits:
        ResidueClassQuery(r, N, X)
    const = fs_asymptotic_constant(r, N)
    table = class_counts(limits[-1], N, limits, segment=segment)
    return [DensityReport(r, N, X, table[X][r], sum(table[X]), const) for X in limits]
