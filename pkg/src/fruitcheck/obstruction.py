"""Local non-solvability of a*x^d - y^2 - z^2 + x*y*z - c = 0 with 2 | x.

If (x, y, z) were a solution in O_K with x = 2*x1, then Y = y - x1*z, Z = z satisfy

    Y^2 - (x1^2 - 1)*Z^2 = 2^d * x1^d * a - c.

Reducing modulo P^2 for a prime P above 2 with O_K/P^2 = Z/4Z leaves a finite
question: does any residue triple with x in {0, 2} satisfy the equation mod 4?
``local_obstruction_mod_p2`` answers it by enumerating all 32 triples; when none
works, no global solution with even x exists.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .errors import DomainError, UnsupportedPrime
from .quad_field import (
    DEFAULT_PRECISION,
    QuadField,
    QuadInt,
    prime_above_two,
    residue_map,
    t_k_nonempty,
)


class Verdict(enum.Enum):
    NO_SOLUTION_WITH_EVEN_X = "NoSolutionWithEvenX"
    INCONCLUSIVE = "Inconclusive"


def compute_c(b: QuadInt, r: int, d: int) -> QuadInt:
    """c = 2^d * b - 3^r."""
    if not b:
        raise DomainError("b must be nonzero")
    if r < 1 or d < 1:
        raise DomainError("r and d must be positive integers")
    return (1 << d) * b - 3**r


@dataclass(frozen=True)
class FruitParams:
    a: QuadInt
    b: QuadInt
    r: int
    d: int

    def __post_init__(self):
        if not self.a:
            raise DomainError("a must be nonzero")
        if self.a.field != self.b.field:
            raise DomainError("a and b must lie in the same field")
        compute_c(self.b, self.r, self.d)  # validates b, r, d

    @property
    def c(self) -> QuadInt:
        return compute_c(self.b, self.r, self.d)

    @property
    def field(self) -> QuadField:
        return self.a.field


@dataclass(frozen=True)
class HypothesisReport:
    """Stated parameter conditions (d odd, r >= 2) next to the ones the mod-4 argument needs (d >= 2, r odd)."""

    d_is_odd: bool
    d_at_least_2: bool
    r_at_least_2: bool
    r_is_odd: bool

    @classmethod
    def from_params(cls, r: int, d: int) -> "HypothesisReport":
        return cls(d_is_odd=d % 2 == 1, d_at_least_2=d >= 2, r_at_least_2=r >= 2, r_is_odd=r % 2 == 1)

    @property
    def statement_satisfied(self) -> bool:
        return self.d_is_odd and self.r_at_least_2

    @property
    def proof_effective(self) -> bool:
        return self.d_at_least_2 and self.r_is_odd

    @property
    def mismatch(self) -> bool:
        return self.statement_satisfied != self.proof_effective

    def as_dict(self) -> dict:
        return {
            "d_is_odd": self.d_is_odd,
            "d_at_least_2": self.d_at_least_2,
            "r_at_least_2": self.r_at_least_2,
            "r_is_odd": self.r_is_odd,
            "statement_satisfied": self.statement_satisfied,
            "proof_effective": self.proof_effective,
        }


@dataclass(frozen=True)
class ObstructionReport:
    field: QuadField
    params: FruitParams
    tk_nonempty: bool
    a_residue_mod4: Optional[int]
    c_residue_mod4: Optional[int]
    locally_obstructed: bool
    hypothesis: HypothesisReport
    verdict: Verdict


def reduce_completed_square(alpha1: QuadInt, beta: QuadInt, gamma: QuadInt) -> tuple[QuadInt, QuadInt]:
    return beta - alpha1 * gamma, gamma


def verify_reduction_identity(alpha1, beta, gamma, a, c, d: int) -> bool:
    """Check the completed-square rewrite on concrete values.

    The original equation (after x = 2*alpha1) and the reduced one are compared
    through their residuals, LHS - RHS.  Equal residuals is the algebraic
    identity itself and implies the two equations hold or fail together.
    """
    Y, Z = reduce_completed_square(alpha1, beta, gamma)
    original = beta * beta - 2 * alpha1 * beta * gamma + gamma * gamma - (a * (2 * alpha1) ** d - c)
    reduced = Y * Y - (alpha1 * alpha1 - 1) * Z * Z - ((1 << d) * alpha1**d * a - c)
    return original == reduced


def local_obstruction_mod_p2(a_res: int, c_res: int, d: int) -> bool:
    """True iff no (x, y, z) mod 4 with x even solves a*x^d - y^2 - z^2 + xyz = c."""
    if d < 1:
        raise DomainError("d must be a positive integer")
    a_res %= 4
    c_res %= 4
    for x in (0, 2):
        xd = pow(x, d, 4)
        for y in range(4):
            for z in range(4):
                if (a_res * xd - y * y - z * z + x * y * z - c_res) % 4 == 0:
                    return False
    return True


def decide(field: QuadField, params: FruitParams, branch: int = 0) -> ObstructionReport:
    """Run the mod-P^2 obstruction for ``params`` over ``field``.

    ``branch`` picks which prime above 2 (when 2 splits) supplies the residue
    map.  The verdict is never "solvable": without an obstruction the answer is
    Inconclusive.
    """
    if params.field != field:
        raise DomainError("parameters are not elements of the given field")
    hyp = HypothesisReport.from_params(params.r, params.d)
    c = params.c
    tk = t_k_nonempty(field)
    a_res = c_res = None
    obstructed = False
    if tk:
        prime = prime_above_two(field, DEFAULT_PRECISION, branch)
        try:
            a_res = residue_map(params.a, prime, 2)
            c_res = residue_map(c, prime, 2)
        except UnsupportedPrime:
            tk = False
        else:
            obstructed = local_obstruction_mod_p2(a_res, c_res, params.d)
    verdict = Verdict.NO_SOLUTION_WITH_EVEN_X if tk and obstructed else Verdict.INCONCLUSIVE
    return ObstructionReport(
        field=field,
        params=params,
        tk_nonempty=tk,
        a_residue_mod4=a_res,
        c_residue_mod4=c_res,
        locally_obstructed=obstructed,
        hypothesis=hyp,
        verdict=verdict,
    )
