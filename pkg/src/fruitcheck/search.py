"""Exhaustive box search for solutions of a*x^d - y^2 - z^2 + x*y*z - c = 0.

Coordinates (in the integral basis) of x, y, z all range over [-B, B].  Over Q
the inner loop solves the quadratic in y exactly; over a quadratic field every
(y, z) pair is scanned, vectorised with numpy one x at a time.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .config import GlobalConfig
from .errors import CostCapExceeded, DomainError
from .quad_field import QuadField, QuadInt, divisible_by_two, isqrt_exact

_INT64_SAFE = 1 << 62


@dataclass(frozen=True)
class SearchBox:
    bound: int

    def __post_init__(self):
        if self.bound < 1:
            raise DomainError("search bound must be at least 1")

    def size(self, field: QuadField) -> int:
        side = 2 * self.bound + 1
        return side**3 if field.is_rational else side**6


@dataclass(frozen=True)
class Witness:
    x: QuadInt
    y: QuadInt
    z: QuadInt
    even_x: bool

    def __str__(self):
        return f"x=({self.x}) y=({self.y}) z=({self.z})"

    def as_dict(self) -> dict:
        return {"x": str(self.x), "y": str(self.y), "z": str(self.z), "even_x": self.even_x}


def fruit_residual(a, c, d: int, x, y, z):
    return a * x**d - y * y - z * z + x * y * z - c


def verify_witness(field: QuadField, a: QuadInt, c: QuadInt, d: int, w: Witness) -> bool:
    for elt in (w.x, w.y, w.z):
        if elt.field != field:
            return False
    return fruit_residual(a, c, d, w.x, w.y, w.z) == 0


def _x_values(bound: int, even_x_only: bool) -> list[int]:
    return [u for u in range(-bound, bound + 1) if not even_x_only or u % 2 == 0]


def search_cost(field: QuadField, box: SearchBox, even_x_only: bool) -> int:
    """Number of (x, y, z) tuples the box contains after the even-x filter."""
    side = 2 * box.bound + 1
    nx = len(_x_values(box.bound, even_x_only))
    if field.is_rational:
        return nx * side * side
    return nx * nx * side**4


def _check_inputs(field, a, c, d):
    if a.field != field or c.field != field:
        raise DomainError("a and c must be elements of the search field")
    if not a:
        raise DomainError("a must be nonzero")
    if d < 1:
        raise DomainError("d must be a positive integer")


def _rational_slice(a: int, c: int, d: int, bound: int, ux: int) -> list[tuple[int, int, int]]:
    # y^2 - (x z) y + (z^2 + c - a x^d) = 0
    x = ux
    k = a * x**d - c
    hits = []
    for z in range(-bound, bound + 1):
        lin = x * z
        disc = lin * lin - 4 * (z * z - k)
        r = isqrt_exact(disc)
        if r is None:
            continue
        for num in {lin - r, lin + r}:
            if num % 2 == 0 and -bound <= num // 2 <= bound:
                hits.append((x, num // 2, z))
    hits.sort()
    return hits


def _quadratic_slice(t: int, a, c, d: int, bound: int, ux: int, even_x_only: bool):
    field = QuadField(t)
    p, q = field.omega_square
    a = field(*a)
    c = field(*c)
    rng = range(-bound, bound + 1)
    grid = np.array(list(itertools.product(rng, rng)), dtype=object)
    # |coords| of x*y*z and y^2 + z^2 stay below this for every element in the box
    cmul = 1 + abs(p) + abs(q)
    lhs_bound = 2 * cmul * bound**2 + cmul**2 * bound**3
    dtype = np.int64 if lhs_bound < _INT64_SAFE else object
    gu = grid[:, 0].astype(dtype)
    gv = grid[:, 1].astype(dtype)
    sq_u = gu * gu + p * gv * gv
    sq_v = 2 * gu * gv + q * gv * gv
    hits = []
    for vx in _x_values(bound, even_x_only):
        x = field(ux, vx)
        k = a * x**d - c
        if abs(k.u) > lhs_bound or abs(k.v) > lhs_bound:
            continue
        # xz for every z in the grid
        xz_u = ux * gu + p * vx * gv
        xz_v = ux * gv + vx * gu + q * vx * gv
        # (xz) * y laid out as [y, z]
        prod_u = gu[:, None] * xz_u[None, :] + p * gv[:, None] * xz_v[None, :]
        prod_v = gu[:, None] * xz_v[None, :] + gv[:, None] * xz_u[None, :] + q * gv[:, None] * xz_v[None, :]
        res_u = sq_u[:, None] + sq_u[None, :] - prod_u
        res_v = sq_v[:, None] + sq_v[None, :] - prod_v
        iy, iz = np.nonzero((res_u == k.u) & (res_v == k.v))
        for i, j in zip(iy.tolist(), iz.tolist()):
            hits.append(((ux, vx), tuple(grid[i]), tuple(grid[j])))
    return hits


def _slice_job(job):
    kind = job[0]
    if kind == "Q":
        return _rational_slice(*job[1:])
    return _quadratic_slice(*job[1:])


def enumerate_solutions(
    field: QuadField,
    a: QuadInt,
    c: QuadInt,
    d: int,
    box: SearchBox,
    even_x_only: bool = False,
    config: Optional[GlobalConfig] = None,
    workers: int = 1,
) -> list[Witness]:
    """All witnesses in the box, in lexicographic order of (u_x, v_x, u_y, v_y, u_z, v_z).

    The box is cut into u_x slices; with ``workers > 1`` the slices run in a
    process pool and are merged back in slice order.
    """
    _check_inputs(field, a, c, d)
    config = config or GlobalConfig.from_env()
    cost = search_cost(field, box, even_x_only)
    if cost > config.cost_cap:
        raise CostCapExceeded(cost, config.cost_cap)

    B = box.bound
    if field.is_rational:
        jobs = [("Q", a.u, c.u, d, B, ux) for ux in _x_values(B, even_x_only)]
    else:
        jobs = [
            ("K", field.t, a.coords, c.coords, d, B, ux, even_x_only)
            for ux in _x_values(B, even_x_only)
        ]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            slices = list(pool.map(_slice_job, jobs))
    else:
        slices = [_slice_job(job) for job in jobs]

    out = []
    for hits in slices:
        for xs, ys, zs in hits:
            if field.is_rational:
                x, y, z = field(xs), field(ys), field(zs)
            else:
                x, y, z = field(*xs), field(*ys), field(*zs)
            out.append(Witness(x, y, z, divisible_by_two(x)))
    return out
