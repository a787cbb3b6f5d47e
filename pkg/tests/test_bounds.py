import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kfold_sidon.bounds import (
    THM12_MODES,
    check_lemma21,
    diff_counts,
    group_bound,
    group_bound_holds,
    paper_m,
    sidon_zn_bound,
    sumset,
    thm12_bound,
    thm12_expression,
    thm12_root,
)


def test_group_bound_examples():
    r = group_bound(2, 1)
    assert r.value == pytest.approx((1 + math.sqrt(5)) / 2, abs=1e-12)
    assert r.integer_cap == 1
    r = group_bound(21, 2)
    assert r.value == pytest.approx(math.sqrt(10.25) + 0.5, abs=1e-12)
    assert r.integer_cap == 3
    assert sidon_zn_bound(7).value == pytest.approx(3.0)
    assert sidon_zn_bound(7).integer_cap == 3
    with pytest.raises(ValueError):
        group_bound(1, 1)


@given(st.integers(2, 10**6), st.integers(1, 16))
def test_group_cap_is_exact(N, k):
    r = group_bound(N, k)
    s = r.integer_cap
    assert group_bound_holds(s, N, k) and not group_bound_holds(s + 1, N, k)
    assert s == math.floor(r.value)


def test_sidon_zn_matches_group_k1():
    for N in range(2, 500):
        assert sidon_zn_bound(N).integer_cap == group_bound(N, 1).integer_cap


def test_diff_counts_and_sumset():
    r = diff_counts({0, 1, 3}, {0, 1, 3})
    assert r[0] == 3
    assert all(r[x] == 1 for x in (1, 2, 3, -1, -2, -3))
    assert sum(r.values()) == 9
    assert sumset({0, 1}, {0, 10}) == {0, 1, 10, 11}


def test_sumset_inequality_hand_cases():
    assert check_lemma21({0}, {0}) == (True, Fraction(1), Fraction(1))
    assert check_lemma21({0, 1}, {0, 1}) == (True, Fraction(16, 3), Fraction(6))
    with pytest.raises(ValueError):
        check_lemma21(set(), {1})


@settings(max_examples=200)
@given(st.sets(st.integers(-40, 40), min_size=1, max_size=10), st.sets(st.integers(-40, 40), min_size=1, max_size=10))
def test_sumset_inequality_property(B, C):
    ok, lhs, rhs = check_lemma21(B, C)
    assert ok and lhs <= rhs


def test_paper_m_example():
    assert paper_m(10**4, 2, 2) == 841
    # exact ceiling: m^4 c^2 >= N^3 k and (m-1)^4 c^2 < N^3 k
    for N, k, c in [(10**3, 1, 1), (12345, 3, 7), (10**7, 8, 32)]:
        m = paper_m(N, k, c)
        assert m**4 * c * c >= N**3 * k > (m - 1) ** 4 * c * c


def test_thm12_modes_example():
    pm, sw, sh = (thm12_bound(10**4, 2, 2, mode) for mode in THM12_MODES)
    assert pm.parameters["m"] == 841
    assert pm.value == pytest.approx(90.58, abs=0.01)
    assert sw.value == pytest.approx(90.22, abs=0.01)
    assert sh.value == pytest.approx(83.64, abs=0.01)


def test_thm12_k1_large_n_range():
    v = thm12_bound(10**6, 1, 1, "paper_m").value
    assert 1000 <= v <= 1200


@pytest.mark.parametrize("N", [1, 2, 10, 137, 10**3, 10**5])
@pytest.mark.parametrize("k,c", [(1, 1), (2, 2), (2, 5), (4, 8)])
def test_mode_ordering_and_caps(N, k, c):
    pm, sw, sh = (thm12_bound(N, k, c, mode) for mode in THM12_MODES)
    assert sh.value <= sw.value + 1e-9
    assert sw.value <= pm.value + 1e-9
    for r in (pm, sw, sh):
        assert r.integer_cap == math.floor(r.value)


def test_root_never_exceeds_expression():
    for N in (10, 1000, 10**6):
        for k, c in [(1, 1), (3, 4), (8, 64)]:
            for m in (1, 7, 100, N):
                assert thm12_root(N, k, c, m) <= thm12_expression(N, k, c, m) + 1e-9


def test_sharp_cap_exact_quadratic():
    for N, k, c in [(100, 1, 1), (777, 2, 3), (10**4, 4, 4)]:
        r = thm12_bound(N, k, c, "sharp")
        m, s = r.parameters["m"], r.integer_cap
        w = N + c * m
        assert k * m * s * s - k * w * s - m * w <= 0
        assert k * m * (s + 1) ** 2 - k * w * (s + 1) - m * w > 0


def test_monotone_in_k():
    for N in (100, 10**4):
        vals = [thm12_bound(N, k, 8, "sharp").value for k in (1, 2, 4, 8)]
        assert vals == sorted(vals, reverse=True)
        gv = [group_bound(N, k).value for k in range(1, 9)]
        assert gv == sorted(gv, reverse=True)


def test_thm12_validation():
    with pytest.raises(ValueError):
        thm12_bound(100, 3, 2)
    with pytest.raises(ValueError):
        thm12_bound(0, 1, 1)
    with pytest.raises(ValueError):
        thm12_bound(100, 1, 1, "bogus")


def test_bound_dominates_brute_force_maximum():
    """Exhaustive maxima of Sidon subsets of [N] for small N stay under the sharp cap."""
    from itertools import combinations

    def sidon(s):
        d = [a - b for a, b in combinations(s, 2)]
        return len(d) == len(set(d))

    for N in range(1, 16):
        best = max(len(s) for r in range(0, 6) for s in combinations(range(1, N + 1), r) if sidon(s))
        assert best <= thm12_bound(N, 1, 1).integer_cap


def test_json_shape():
    d = thm12_bound(500, 2, 3).to_json()
    assert set(d) == {"name", "value", "integer_cap", "parameters"}
    assert d["parameters"]["mode"] == "sharp" and "m" in d["parameters"]


def test_sumset_inequality_seeded():
    rng = random.Random(7)
    for _ in range(300):
        B = set(rng.sample(range(-50, 50), rng.randint(1, 12)))
        C = set(rng.sample(range(-50, 50), rng.randint(1, 12)))
        assert check_lemma21(B, C)[0]
