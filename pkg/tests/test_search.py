import itertools

import pytest

import fruitcheck.search as search_mod
from fruitcheck.config import GlobalConfig
from fruitcheck.errors import CostCapExceeded, DomainError
from fruitcheck.obstruction import FruitParams, Verdict, compute_c, decide
from fruitcheck.quad_field import RATIONAL, QuadField, divisible_by_two
from fruitcheck.search import SearchBox, Witness, enumerate_solutions, search_cost, verify_witness


def naive_search(field, a, c, d, bound, even_x_only=False):
    """Oracle: plain triple loop over QuadInt values in lexicographic coordinate order."""
    rng = range(-bound, bound + 1)
    if field.is_rational:
        elems = [field(u) for u in rng]
    else:
        elems = [field(u, v) for u, v in itertools.product(rng, rng)]
    out = []
    for x in elems:
        if even_x_only and not divisible_by_two(x):
            continue
        axd = a * x**d - c
        for y in elems:
            for z in elems:
                if axd - y * y - z * z + x * y * z == 0:
                    out.append((x, y, z))
    return out


def triples(ws):
    return [(w.x, w.y, w.z) for w in ws]


def test_fruit_equation_over_z_has_no_solutions_b30():
    assert enumerate_solutions(RATIONAL, RATIONAL(1), RATIONAL(5), 3, SearchBox(30)) == []


def test_contains_all_ones():
    Q = RATIONAL
    ws = enumerate_solutions(Q, Q(2), Q(1), 3, SearchBox(2))
    assert (Q(1), Q(1), Q(1)) in triples(ws)


def test_split_field_even_x_empty():
    K = QuadField(17)
    assert enumerate_solutions(K, K.one, K(5), 3, SearchBox(4), even_x_only=True) == []


@pytest.mark.parametrize("a, c, d, bound", [(2, 1, 3, 6), (1, -1, 1, 6), (3, 7, 2, 8), (1, 5, 3, 10), (-2, 9, 5, 5)])
def test_rational_matches_naive(a, c, d, bound):
    Q = RATIONAL
    got = triples(enumerate_solutions(Q, Q(a), Q(c), d, SearchBox(bound)))
    assert got == naive_search(Q, Q(a), Q(c), d, bound)


@pytest.mark.parametrize(
    "t, a, c, d, bound",
    [
        (17, (2, 0), (1, 0), 3, 2),
        (17, (1, 0), (-1, 0), 1, 2),
        (-7, (1, 1), (0, 1), 2, 1),
        (3, (2, 0), (1, 0), 3, 2),
        (-1, (1, 0), (2, 0), 2, 2),
        (33, (1, 0), (5, 0), 3, 1),
    ],
)
def test_quadratic_matches_naive(t, a, c, d, bound):
    K = QuadField(t)
    a, c = K(*a), K(*c)
    got = triples(enumerate_solutions(K, a, c, d, SearchBox(bound)))
    assert got == naive_search(K, a, c, d, bound)
    got_even = triples(enumerate_solutions(K, a, c, d, SearchBox(bound), even_x_only=True))
    assert got_even == naive_search(K, a, c, d, bound, even_x_only=True)


def test_object_dtype_path_agrees(monkeypatch):
    K = QuadField(17)
    a, c = K(2), K(1)
    fast = triples(enumerate_solutions(K, a, c, 3, SearchBox(2)))
    monkeypatch.setattr(search_mod, "_INT64_SAFE", 0)
    slow = triples(enumerate_solutions(K, a, c, 3, SearchBox(2)))
    assert fast == slow and fast


def test_huge_coefficients_stay_exact():
    # 2^200 forces object arithmetic; the equation still has the planted solution x=1,y=1,z=0
    K = QuadField(17)
    big = 2**200
    a, c = K(big + 1), K(big)
    ws = enumerate_solutions(K, a, c, 3, SearchBox(1))
    assert (K.one, K.one, K.zero) in triples(ws)
    assert all(verify_witness(K, a, c, 3, w) for w in ws)


def test_witnesses_verify_and_are_swap_closed():
    for field, a, c, d in [(RATIONAL, 2, 1, 3), (QuadField(17), 2, 1, 3), (QuadField(-7), 1, -1, 1)]:
        a, c = field(a), field(c)
        ws = enumerate_solutions(field, a, c, d, SearchBox(2))
        assert ws
        found = set(triples(ws))
        for w in ws:
            assert verify_witness(field, a, c, d, w)
            assert w.even_x == divisible_by_two(w.x)
            assert (w.x, w.z, w.y) in found


def test_lexicographic_order():
    K = QuadField(-7)
    ws = enumerate_solutions(K, K(1, 1), K(0, 1), 2, SearchBox(2))
    keys = [(w.x.u, w.x.v, w.y.u, w.y.v, w.z.u, w.z.v) for w in ws]
    assert keys == sorted(keys)


def test_subset_monotone_in_bound():
    for field in (RATIONAL, QuadField(17)):
        a, c = field(2), field(1)
        small = set(triples(enumerate_solutions(field, a, c, 3, SearchBox(1))))
        large = set(triples(enumerate_solutions(field, a, c, 3, SearchBox(2))))
        assert small <= large


def test_parallel_slices_merge_in_order():
    K = QuadField(17)
    a, c = K(2), K(1)
    serial = enumerate_solutions(K, a, c, 3, SearchBox(2))
    parallel = enumerate_solutions(K, a, c, 3, SearchBox(2), workers=2)
    assert serial == parallel


def test_cost_cap_refusal():
    cfg = GlobalConfig(cost_cap=10**4)
    K = QuadField(17)
    with pytest.raises(CostCapExceeded) as exc:
        enumerate_solutions(K, K.one, K(5), 3, SearchBox(4), config=cfg)
    assert exc.value.estimate == 9**6
    assert "531441" in str(exc.value)
    assert search_cost(K, SearchBox(4), True) == 25 * 9**4
    assert search_cost(RATIONAL, SearchBox(4), False) == 9**3


def test_cost_cap_from_env(monkeypatch):
    monkeypatch.setenv("FRUIT_COST_CAP", "20000")
    with pytest.raises(CostCapExceeded):
        enumerate_solutions(RATIONAL, RATIONAL(1), RATIONAL(5), 3, SearchBox(30))


def test_verify_witness_examples():
    Q = RATIONAL
    assert verify_witness(Q, Q(2), Q(1), 3, Witness(Q(1), Q(1), Q(1), False))
    assert not verify_witness(Q, Q(1), Q(5), 3, Witness(Q(0), Q(0), Q(0), True))
    assert verify_witness(Q, Q(1), Q(-1), 1, Witness(Q(0), Q(1), Q(0), True))


def test_bad_inputs():
    with pytest.raises(DomainError):
        SearchBox(0)
    with pytest.raises(DomainError):
        enumerate_solutions(RATIONAL, RATIONAL(0), RATIONAL(5), 3, SearchBox(2))
    with pytest.raises(DomainError):
        enumerate_solutions(QuadField(17), RATIONAL(1), RATIONAL(5), 3, SearchBox(2))


def test_oracle_agrees_with_engine_when_obstructed():
    # every decided NoSolutionWithEvenX case must have an empty even-x box
    for t in (None, 17, -7):
        K = RATIONAL if t is None else QuadField(t)
        for b, r, d in itertools.product((1, 2), (1, 2, 3), (2, 3)):
            params = FruitParams(K.one, K(b), r, d)
            rep = decide(K, params)
            if rep.verdict is Verdict.NO_SOLUTION_WITH_EVEN_X:
                bound = 10 if K.is_rational else 2
                c = compute_c(K(b), r, d)
                assert enumerate_solutions(K, K.one, c, d, SearchBox(bound), even_x_only=True) == []
