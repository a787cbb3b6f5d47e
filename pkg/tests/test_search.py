from itertools import combinations

import pytest

from kfold_sidon.search import (
    DILATE,
    INTERVAL,
    KFOLD,
    MODULAR,
    SearchTask,
    admissible,
    emit_table,
    greedy_seed,
    max_set,
    table_rows,
)
from kfold_sidon.verify import ResidueSet, verify_dilate_family_oracle, verify_kfold


def _brute_max(task: SearchTask) -> int:
    """Largest feasible subset by plain enumeration of all subsets, largest size first."""
    universe = range(task.n) if task.modular else range(1, task.n + 1)
    for size in range(task.n, -1, -1):
        for s in combinations(universe, size):
            A = ResidueSet(s, task.n, task.ambient)
            ok = verify_kfold(A, task.k) if task.family == KFOLD else verify_dilate_family_oracle(A, task.coeffs)
            if ok:
                return size
    return 0


def test_examples():
    r = max_set(SearchTask(INTERVAL, 7, 1))
    assert (r.optimum, r.witness.elements, r.proven_optimal) == (4, (1, 2, 5, 7), True)
    r = max_set(SearchTask(MODULAR, 7, 1))
    assert (r.optimum, r.witness.elements) == (3, (0, 1, 3))
    assert greedy_seed(SearchTask(INTERVAL, 10, 1)).elements == (1, 2, 4, 8)


def test_trivial_sizes():
    assert max_set(SearchTask(MODULAR, 0, 1)).optimum == 0
    assert max_set(SearchTask(MODULAR, 1, 1)).optimum == 1
    assert max_set(SearchTask(INTERVAL, 1, 3)).optimum == 1
    assert max_set(SearchTask(INTERVAL, 2, 1)).optimum == 2


@pytest.mark.parametrize(
    "task",
    [SearchTask(MODULAR, n, 1) for n in range(2, 14)]
    + [SearchTask(INTERVAL, n, 1) for n in range(1, 13)]
    + [SearchTask(INTERVAL, n, 2) for n in range(1, 13)]
    + [SearchTask(MODULAR, n, 2) for n in (5, 7, 9, 11, 13)]
    + [SearchTask(MODULAR, n, 3) for n in (7, 11, 13)]
    + [SearchTask(INTERVAL, n, 2, DILATE, (1, 3)) for n in range(3, 12)],
    ids=str,
)
def test_matches_exhaustive_enumeration(task):
    r = max_set(task)
    assert r.proven_optimal
    assert r.optimum == _brute_max(task)
    assert r.optimum <= task.cap()
    assert task.verify(r.witness)


def test_witness_is_lexicographically_first():
    for n in range(2, 12):
        task = SearchTask(INTERVAL, n, 1)
        r = max_set(task)
        first = next(
            s
            for s in combinations(range(1, n + 1), r.optimum)
            if verify_kfold(ResidueSet.interval(s, n), 1)
        )
        assert r.witness.elements == first


def test_monotone_in_n_and_k():
    s1 = [max_set(SearchTask(INTERVAL, n, 1)).optimum for n in range(1, 30)]
    s2 = [max_set(SearchTask(INTERVAL, n, 2)).optimum for n in range(1, 30)]
    assert all(a <= b for a, b in zip(s1, s1[1:]))
    assert all(a <= b for a, b in zip(s2, s2[1:]))
    assert all(b <= a for a, b in zip(s1, s2))


def test_deterministic():
    t = SearchTask(MODULAR, 41, 2)
    a, b = max_set(t), max_set(t)
    assert a == b
    assert a.witness.elements == (0, 1, 4, 11, 29)


def test_budget_flag():
    r = max_set(SearchTask(INTERVAL, 60, 1, budget=5))
    assert not r.proven_optimal
    assert r.task.verify(r.witness)
    assert r.to_json()["proven_optimal"] is False
    assert max_set(SearchTask(INTERVAL, 60, 1)).optimum >= r.optimum


def test_task_validation():
    with pytest.raises(ValueError):
        SearchTask(MODULAR, 8, 2)
    with pytest.raises(ValueError):
        SearchTask("torus", 8, 1)
    with pytest.raises(ValueError):
        SearchTask(INTERVAL, 8, 1, KFOLD, (1, 2))
    with pytest.raises(ValueError):
        SearchTask(INTERVAL, 8, 2, DILATE, (2, 1))
    assert not admissible(MODULAR, 9, 3)
    assert admissible(INTERVAL, 9, 3)


def test_table_row_golden():
    rows = table_rows([6, 7], 1)
    assert emit_table(rows).splitlines() == [
        "N,S,group_cap,thm12_cap,ratio,proven,witness",
        "6,2,2,,0.816,proven,0 1",
        "7,3,3,,1.134,proven,0 1 3",
    ]


def test_table_skips_inadmissible_and_parallel_agrees():
    serial = table_rows(range(2, 20), 2)
    assert [r["N"] for r in serial] == [n for n in range(2, 20) if n % 2]
    assert table_rows(range(2, 20), 2, jobs=2) == serial
