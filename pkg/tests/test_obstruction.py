import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import elements, random_element
from fruitcheck.errors import DomainError
from fruitcheck.obstruction import (
    FruitParams,
    HypothesisReport,
    Verdict,
    compute_c,
    decide,
    local_obstruction_mod_p2,
    reduce_completed_square,
    verify_reduction_identity,
)
from fruitcheck.quad_field import RATIONAL, QuadField


def brute_mod4(a_res, c_res, d):
    """Independent oracle: any (x, y, z) in (Z/4)^3 with x even solving the equation mod 4?"""
    triples = itertools.product(range(4), repeat=3)
    return not any(
        x % 2 == 0 and (a_res * x**d - y**2 - z**2 + x * y * z - c_res) % 4 == 0 for x, y, z in triples
    )


@pytest.mark.parametrize("b, r, d, expected", [(1, 1, 3, 5), (1, 2, 3, -1), (2, 3, 5, 37)])
def test_compute_c_examples(b, r, d, expected):
    assert compute_c(RATIONAL(b), r, d) == expected


def test_compute_c_in_quadratic_field_and_big_exponents():
    K = QuadField(17)
    c = compute_c(K(1, 2), 5, 200)
    assert c == K(2**200 - 3**5, 2**201)
    with pytest.raises(DomainError):
        compute_c(K.zero, 1, 1)
    with pytest.raises(DomainError):
        compute_c(K.one, 0, 1)


def test_fruit_params_validation():
    with pytest.raises(DomainError):
        FruitParams(RATIONAL(0), RATIONAL(1), 1, 3)
    with pytest.raises(DomainError):
        FruitParams(QuadField(17).one, QuadField(33).one, 1, 3)
    p = FruitParams(RATIONAL(1), RATIONAL(1), 1, 3)
    assert p.c == 5


def test_reduce_completed_square_examples():
    K = QuadField(17)
    assert reduce_completed_square(K(0), K(7), K(3)) == (K(7), K(3))
    assert reduce_completed_square(K(1), K(5), K(5)) == (K(0), K(5))
    assert reduce_completed_square(K(2, 1), K.omega, K.one) == (K(-2), K.one)


def test_verify_reduction_identity_examples():
    Q = RATIONAL
    assert verify_reduction_identity(Q(1), Q(3), Q(2), Q(1), Q(5), 3)
    assert verify_reduction_identity(Q(0), Q(0), Q(0), Q(1), Q(1), 1)


@pytest.mark.parametrize("field", [RATIONAL, QuadField(17), QuadField(-7), QuadField(3)])
@settings(max_examples=150, deadline=None)
@given(data=st.data())
def test_reduction_identity_property(field, data):
    draw = lambda: data.draw(elements(field, -10**4, 10**4))  # noqa: E731
    d = data.draw(st.integers(1, 9))
    assert verify_reduction_identity(draw(), draw(), draw(), draw(), draw(), d)


def test_reduction_identity_detects_a_wrong_rewrite(monkeypatch):
    import fruitcheck.obstruction as ob

    monkeypatch.setattr(ob, "reduce_completed_square", lambda a1, b, g: (b + a1 * g, g))
    Q = RATIONAL
    assert not ob.verify_reduction_identity(Q(1), Q(3), Q(2), Q(1), Q(5), 3)


# expected values below were produced by brute_mod4 and then frozen
@pytest.mark.parametrize("a_res, c_res, d, expected", [(1, 1, 3, True), (1, 3, 3, False), (3, 1, 2, True)])
def test_local_obstruction_examples(a_res, c_res, d, expected):
    assert brute_mod4(a_res, c_res, d) is expected
    assert local_obstruction_mod_p2(a_res, c_res, d) is expected


def test_local_obstruction_matches_oracle_for_all_d():
    for a_res, c_res, d in itertools.product(range(4), range(4), range(1, 12)):
        assert local_obstruction_mod_p2(a_res, c_res, d) == brute_mod4(a_res, c_res, d)


def test_d_equal_one_depends_on_a():
    # with d = 1 the term 2a no longer vanishes mod 4
    assert [local_obstruction_mod_p2(a, 1, 1) for a in range(4)] == [brute_mod4(a, 1, 1) for a in range(4)]
    assert not local_obstruction_mod_p2(1, 1, 1)


def test_closed_form():
    for a_res, c_res, d in itertools.product(range(4), range(4), (2, 3, 4, 5)):
        assert local_obstruction_mod_p2(a_res, c_res, d) == (c_res == 1)


def test_hypothesis_sufficiency():
    # d >= 2 and r odd force c = 1 mod 4 for every b
    for b, d, r in itertools.product(range(4), range(2, 9), range(1, 12, 2)):
        if b == 0:
            continue
        assert compute_c(RATIONAL(b), r, d).u % 4 == 1
        assert decide(RATIONAL, FruitParams(RATIONAL(1), RATIONAL(b), r, d)).verdict is Verdict.NO_SOLUTION_WITH_EVEN_X


def test_hypothesis_report():
    h = HypothesisReport.from_params(r=1, d=3)
    assert h.proof_effective and not h.statement_satisfied and h.mismatch
    h = HypothesisReport.from_params(r=2, d=3)
    assert h.statement_satisfied and not h.proof_effective
    h = HypothesisReport.from_params(r=3, d=5)
    assert h.statement_satisfied and h.proof_effective and not h.mismatch


def test_decide_examples():
    K = QuadField(17)
    rep = decide(K, FruitParams(K.one, K.one, 1, 3))
    assert rep.verdict is Verdict.NO_SOLUTION_WITH_EVEN_X
    assert rep.tk_nonempty and rep.locally_obstructed and rep.c_residue_mod4 == 1

    K5 = QuadField(5)
    rep = decide(K5, FruitParams(K5.one, K5.one, 1, 3))
    assert rep.verdict is Verdict.INCONCLUSIVE and not rep.tk_nonempty
    assert rep.c_residue_mod4 is None

    rep = decide(RATIONAL, FruitParams(RATIONAL(1), RATIONAL(1), 3, 5))
    assert rep.params.c == 5
    assert rep.verdict is Verdict.NO_SOLUTION_WITH_EVEN_X


def test_decide_even_r_is_inconclusive():
    # r = 2: c = 8b - 9 = 3 mod 4 and the residue triple (0, 1, 0) solves it
    rep = decide(RATIONAL, FruitParams(RATIONAL(1), RATIONAL(1), 2, 3))
    assert rep.c_residue_mod4 == 3
    assert rep.verdict is Verdict.INCONCLUSIVE


def test_branch_independence_for_d_at_least_2():
    K = QuadField(17)
    rng = random.Random(7)
    for _ in range(200):
        a = random_element(rng, K, 50) or K.one
        b = random_element(rng, K, 50) or K.one
        r, d = rng.randint(1, 6), rng.randint(2, 6)
        reps = [decide(K, FruitParams(a, b, r, d), branch=br) for br in (0, 1)]
        assert reps[0].verdict == reps[1].verdict
        assert reps[0].c_residue_mod4 == reps[1].c_residue_mod4


def test_branches_can_disagree_when_d_is_one():
    # a*x survives mod 4 when d = 1, and conjugate primes send w to different residues
    K = QuadField(17)
    reps = [decide(K, FruitParams(K(1, 1), K.one, 2, 1), branch=br) for br in (0, 1)]
    assert {rep.verdict for rep in reps} == {Verdict.NO_SOLUTION_WITH_EVEN_X, Verdict.INCONCLUSIVE}
    assert reps[0].a_residue_mod4 != reps[1].a_residue_mod4


def test_decide_rejects_mismatched_field():
    with pytest.raises(DomainError):
        decide(QuadField(17), FruitParams(RATIONAL(1), RATIONAL(1), 1, 3))
