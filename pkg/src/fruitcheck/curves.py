"""The curves E_alpha : y^2 - alpha*x*y = x^3 - (alpha^2 + 5).

A point (x, y) on E_alpha gives (x, y, alpha) solving x^3 - y^2 - z^2 + xyz - 5 = 0,
so the fruit obstruction forbids integral points with even x whenever some prime
above 2 has residue field F_2.  This module builds the curves, checks them,
searches for integral points, and lists Nagell-Lutz torsion candidates over Q.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from sympy import factorint

from .config import GlobalConfig
from .errors import CostCapExceeded, DomainError
from .quad_field import QuadField, QuadInt, divisible_by_two, isqrt_exact
from .search import Witness, verify_witness


@dataclass(frozen=True)
class WeierstrassCurve:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over O_K."""

    a1: QuadInt
    a2: QuadInt
    a3: QuadInt
    a4: QuadInt
    a6: QuadInt

    @property
    def field(self) -> QuadField:
        return self.a1.field

    @property
    def b2(self):
        return self.a1 * self.a1 + 4 * self.a2

    @property
    def b4(self):
        return 2 * self.a4 + self.a1 * self.a3

    @property
    def b6(self):
        return self.a3 * self.a3 + 4 * self.a6

    @property
    def b8(self):
        a1, a2, a3, a4, a6 = self.a1, self.a2, self.a3, self.a4, self.a6
        return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4

    @property
    def delta(self):
        b2, b4, b6, b8 = self.b2, self.b4, self.b6, self.b8
        return -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    @property
    def c4(self):
        return self.b2 * self.b2 - 24 * self.b4

    @property
    def c6(self):
        return -self.b2**3 + 36 * self.b2 * self.b4 - 216 * self.b6

    def b_identity_holds(self) -> bool:
        return 4 * self.b8 == self.b2 * self.b6 - self.b4 * self.b4

    @property
    def is_elliptic(self) -> bool:
        return bool(self.delta)

    def coefficients(self) -> dict[str, QuadInt]:
        return {"a1": self.a1, "a2": self.a2, "a3": self.a3, "a4": self.a4, "a6": self.a6}


@dataclass(frozen=True)
class CurvePoint:
    x: QuadInt
    y: QuadInt

    def __str__(self):
        return f"x=({self.x}) y=({self.y})"


def curve_from_alpha(alpha: QuadInt) -> WeierstrassCurve:
    K = alpha.field
    return WeierstrassCurve(a1=-alpha, a2=K.zero, a3=K.zero, a4=K.zero, a6=-(alpha * alpha + 5))


def paper_polynomial(alpha: QuadInt) -> QuadInt:
    """The degree-8 polynomial printed as the discriminant of E_alpha (audit only)."""
    a2 = alpha * alpha
    return a2**4 + 5 * a2**3 - 432 * a2 * a2 - 5184 * a2 - 15552


@dataclass(frozen=True)
class AlphaAudit:
    alpha: QuadInt
    delta: QuadInt
    paper_poly_at_alpha: QuadInt

    @property
    def valid(self) -> bool:
        return bool(self.delta)

    @property
    def discrepancy(self) -> bool:
        return self.delta != self.paper_poly_at_alpha


def audit_alpha(alpha: QuadInt) -> AlphaAudit:
    return AlphaAudit(alpha, curve_from_alpha(alpha).delta, paper_polynomial(alpha))


def is_valid_alpha(alpha: QuadInt) -> bool:
    """Whether E_alpha is nonsingular, judged by the standard discriminant."""
    return audit_alpha(alpha).valid


def _on_curve(curve: WeierstrassCurve, x, y) -> bool:
    c = curve
    return y * y + c.a1 * x * y + c.a3 * y == x**3 + c.a2 * x * x + c.a4 * x + c.a6


def point_on_curve(curve: WeierstrassCurve, p: CurvePoint) -> bool:
    return _on_curve(curve, p.x, p.y)


def _require_elliptic(curve: WeierstrassCurve):
    if not curve.is_elliptic:
        raise DomainError("curve is singular (delta = 0)")


def integral_point_search(
    curve: WeierstrassCurve,
    bound: int,
    even_x_only: bool = False,
    config: Optional[GlobalConfig] = None,
    allow_singular: bool = False,
) -> list[CurvePoint]:
    """Integral points with x-coordinates in [-B, B].

    Over Q the quadratic in y is solved exactly, so every y belonging to an x
    in range is returned whatever its size.  Over a quadratic field both x and
    y coordinates are scanned over [-B, B].  Singular curves are refused unless
    ``allow_singular`` is set (useful for control cubics like y^2 = x^3).
    """
    if not allow_singular:
        _require_elliptic(curve)
    if bound < 1:
        raise DomainError("search bound must be at least 1")
    config = config or GlobalConfig.from_env()
    K = curve.field
    xs = [u for u in range(-bound, bound + 1) if not even_x_only or u % 2 == 0]
    side = 2 * bound + 1
    cost = len(xs) if K.is_rational else len(xs) ** 2 * side**2
    if cost > config.cost_cap:
        raise CostCapExceeded(cost, config.cost_cap)

    points = []
    if K.is_rational:
        a1, a2, a3, a4, a6 = (c.u for c in curve.coefficients().values())
        for x in xs:
            lin = a1 * x + a3
            # (2y + lin)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
            disc = lin * lin + 4 * (x**3 + a2 * x * x + a4 * x + a6)
            r = isqrt_exact(disc)
            if r is None:
                continue
            for num in sorted({-lin - r, -lin + r}):
                if num % 2 == 0:
                    points.append(CurvePoint(K(x), K(num // 2)))
        return points

    rng = range(-bound, bound + 1)
    ys = [K(u, v) for u, v in itertools.product(rng, rng)]
    for ux, vx in itertools.product(xs, xs):
        x = K(ux, vx)
        lin = curve.a1 * x + curve.a3
        rhs = x**3 + curve.a2 * x * x + curve.a4 * x + curve.a6
        for y in ys:
            if y * (y + lin) == rhs:
                points.append(CurvePoint(x, y))
    return points


def point_to_fruit_witness(alpha: QuadInt, p: CurvePoint) -> Witness:
    """Turn a point of E_alpha into (x, y, alpha) solving x^3 - y^2 - z^2 + xyz - 5 = 0."""
    if not point_on_curve(curve_from_alpha(alpha), p):
        raise DomainError(f"point {p} is not on E_alpha for alpha = {alpha}")
    K = alpha.field
    w = Witness(p.x, p.y, alpha, divisible_by_two(p.x))
    assert verify_witness(K, K.one, K(5), 3, w)
    return w


# --- torsion over Q --------------------------------------------------------


@dataclass(frozen=True)
class TorsionCandidate:
    """A rational point allowed by Nagell-Lutz on the integral short model.

    ``order`` is the exact order when it is at most 12 (Mazur's bound), else
    None, meaning the point has infinite order.
    """

    x: Fraction
    y: Fraction
    order: Optional[int]

    @property
    def even_x_numerator(self) -> bool:
        return self.x.numerator % 2 == 0

    def as_dict(self) -> dict:
        return {
            "x": str(self.x),
            "y": str(self.y),
            "order": None if self.order is None else str(self.order),
            "even_x_numerator": self.even_x_numerator,
        }


def short_model(curve: WeierstrassCurve) -> tuple[int, int]:
    """(A, B) of the integral model Y^2 = X^3 + A X + B.

    X = 36x + 3 b2 and Y = 108 (2y + a1 x + a3), giving A = -27 c4, B = -54 c6.
    """
    if not curve.field.is_rational:
        raise DomainError("torsion candidates are only computed over Q")
    return -27 * curve.c4.u, -54 * curve.c6.u


def _integer_roots_cubic(A: int, k: int) -> list[int]:
    """Integer roots of X^3 + A X + k, by bisection on its monotone pieces."""

    def f(X):
        return X**3 + A * X + k

    M = 1 + max(abs(A), abs(k))
    if A < 0:
        # critical points at +-sqrt(-A/3)
        fl = math.isqrt(-A // 3)
        ce = fl if 3 * fl * fl == -A else fl + 1
        pieces = [(-M, -ce), (-fl, fl), (ce, M)]
    else:
        pieces = [(-M, M)]
    roots = set()
    for lo, hi in pieces:
        if lo > hi:
            continue
        flo, fhi = f(lo), f(hi)
        for end, val in ((lo, flo), (hi, fhi)):
            if val == 0:
                roots.add(end)
        if flo == 0 or fhi == 0 or (flo < 0) == (fhi < 0):
            continue
        rising = fhi > flo
        while hi - lo > 1:
            mid = (lo + hi) // 2
            fm = f(mid)
            if fm == 0:
                roots.add(mid)
                break
            if (fm < 0) == rising:
                lo = mid
            else:
                hi = mid
    return sorted(roots)


def _square_divisors(n: int) -> list[int]:
    """Positive Y with Y^2 | n."""
    ys = [1]
    for p, e in factorint(abs(n)).items():
        ys = [y * p**j for y in ys for j in range(e // 2 + 1)]
    return sorted(ys)


def _short_add(P, Q, A):
    if P is None:
        return Q
    if Q is None:
        return P
    (x1, y1), (x2, y2) = P, Q
    if x1 == x2 and y1 == -y2:
        return None
    if P == Q:
        lam = (3 * x1 * x1 + A) / (2 * y1)
    else:
        lam = (y2 - y1) / (x2 - x1)
    x3 = lam * lam - x1 - x2
    return x3, lam * (x1 - x3) - y1


def _order(P, A, limit: int = 12) -> Optional[int]:
    Q = P
    for n in range(2, limit + 1):
        Q = _short_add(Q, P, A)
        if Q is None:
            return n
    return None


def torsion_candidates_over_Q(curve: WeierstrassCurve) -> list[TorsionCandidate]:
    """Nagell-Lutz candidates mapped back to the given model.

    On Y^2 = X^3 + A X + B a torsion point has integer coordinates with Y = 0
    or Y^2 | 4A^3 + 27B^2.  Each such integral point is pulled back through
    x = (X - 3 b2)/36, y = (Y/108 - a1 x - a3)/2 and kept if it lies on the
    curve.  Orders are computed on the short model.
    """
    _require_elliptic(curve)
    A, B = short_model(curve)
    D = 4 * A**3 + 27 * B * B
    b2 = curve.b2.u
    a1, a3 = curve.a1.u, curve.a3.u
    out = []
    for Y in [0] + [s * y for y in _square_divisors(D) for s in (1, -1)]:
        for X in _integer_roots_cubic(A, B - Y * Y):
            x = Fraction(X - 3 * b2, 36)
            y = (Fraction(Y, 108) - a1 * x - a3) / 2
            lhs = y * y + a1 * x * y + a3 * y
            rhs = x**3 + curve.a2.u * x * x + curve.a4.u * x + curve.a6.u
            if lhs != rhs:
                continue
            order = 2 if Y == 0 else _order((Fraction(X), Fraction(Y)), A)
            out.append(TorsionCandidate(x, y, order))
    out.sort(key=lambda c: (c.x, c.y))
    return out
