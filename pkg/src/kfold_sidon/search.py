"""Exact extremal sizes by branch and bound.

S_k(N) is the largest k-fold Sidon set in Z_N. The same machinery answers the
interval question (largest such set in [N]) and dilate-only families.
"""
from __future__ import annotations

import csv
import io
import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .bounds import group_bound, thm12_bound
from .equations import enumerate_kfold_equations, is_dilate_form
from .verify import INTERVAL, MODULAR, ResidueSet, verify_dilate_family_oracle, verify_kfold

log = logging.getLogger(__name__)

KFOLD = "kfold"
DILATE = "dilate"
DEFAULT_BUDGET = 10**9
JOBS_ENV = "KFOLD_SIDON_JOBS"


@dataclass(frozen=True)
class SearchTask:
    ambient: str
    n: int
    k: int = 1
    family: str = KFOLD
    coeffs: tuple[int, ...] | None = None
    budget: int = DEFAULT_BUDGET

    def __post_init__(self):
        if self.ambient not in (MODULAR, INTERVAL):
            raise ValueError(f"unknown ambient {self.ambient!r}")
        if self.family not in (KFOLD, DILATE):
            raise ValueError(f"unknown family {self.family!r}")
        if self.n < 0 or self.k < 1 or self.budget < 1:
            raise ValueError("need n >= 0, k >= 1 and a positive budget")
        if self.family == DILATE:
            coeffs = tuple(self.coeffs) if self.coeffs else tuple(range(1, self.k + 1))
            if coeffs[0] < 1 or any(b <= a for a, b in zip(coeffs, coeffs[1:])):
                raise ValueError(f"coefficients must be strictly increasing positive integers, got {coeffs}")
            object.__setattr__(self, "coeffs", coeffs)
            object.__setattr__(self, "k", len(coeffs))
        elif self.coeffs is not None:
            raise ValueError("coefficient lists apply to the dilate family only")
        if self.ambient == MODULAR and self.n > 1:
            bad = [c for c in self.dilate_coeffs if math.gcd(c, self.n) != 1]
            if bad:
                raise ValueError(f"modulus {self.n} shares a factor with coefficient(s) {bad}")

    @property
    def modular(self) -> bool:
        return self.ambient == MODULAR

    @property
    def dilate_coeffs(self) -> tuple[int, ...]:
        return tuple(range(1, self.k + 1)) if self.family == KFOLD else self.coeffs

    def cap(self) -> int:
        """Largest size any feasible set can have, from the explicit bounds."""
        if self.n <= 1:
            return self.n
        k = len(self.dilate_coeffs)
        if self.modular:
            return group_bound(self.n, k).integer_cap
        return min(self.n, thm12_bound(self.n, k, max(self.dilate_coeffs), "sharp").integer_cap)

    def empty_set(self, elements=()) -> ResidueSet:
        return ResidueSet(tuple(int(a) for a in elements), self.n, self.ambient)

    def verify(self, A: ResidueSet):
        """Independent re-check of a witness (oracle route, not the search state)."""
        if self.family == KFOLD:
            return verify_kfold(A, self.k)
        return verify_dilate_family_oracle(A, self.dilate_coeffs)


@dataclass(frozen=True)
class SearchResult:
    task: SearchTask
    optimum: int
    witness: ResidueSet
    nodes_explored: int
    proven_optimal: bool

    def to_json(self) -> dict:
        t = self.task
        return {
            "ambient": t.ambient,
            "N": t.n,
            "k": t.k,
            "family": t.family,
            "coefficients": list(t.dilate_coeffs),
            "optimum": self.optimum,
            "witness": list(self.witness.elements),
            "nodes_explored": self.nodes_explored,
            "proven_optimal": self.proven_optimal,
        }


def _kernel_args(task: SearchTask):
    """Dilate coefficients plus the extra equations the difference state misses."""
    n = task.n
    coeffs = np.asarray(task.dilate_coeffs, dtype=np.int64)
    if task.modular:
        coeffs = coeffs % n
    extra = []
    if task.family == KFOLD:
        extra = [eq.coefficients for eq in enumerate_kfold_equations(task.k) if not is_dilate_form(eq.coefficients)]
    eqs = np.zeros((len(extra), 4), dtype=np.int64)
    inv = np.zeros((len(extra), 4), dtype=np.int64)
    lens = np.zeros(len(extra), dtype=np.int64)
    for e, c in enumerate(extra):
        active = [v for v in c if v]
        lens[e] = len(active)
        eqs[e, : len(active)] = active
        if task.modular:
            inv[e, : len(active)] = [pow(v, -1, n) for v in active]
    return coeffs, eqs, inv, lens


def greedy_seed(task: SearchTask) -> ResidueSet:
    """Scan candidates upward, keeping each one the family still allows."""
    if task.n <= 0:
        return task.empty_set()
    coeffs, eqs, inv, lens = _kernel_args(task)
    elems = kernels.greedy(task.n, task.modular, coeffs, eqs, inv, lens, task.cap())
    return task.empty_set(elems)


def max_set(task: SearchTask) -> SearchResult:
    """Largest feasible set; the witness is the lexicographically smallest one.

    The smallest element is fixed (0 in Z_N, 1 in [N]): every invariant
    equation is translation invariant, so some optimum contains it.
    """
    if task.n <= 0:
        return SearchResult(task, 0, task.empty_set(), 0, True)
    cap = task.cap()
    seed = greedy_seed(task)
    coeffs, eqs, inv, lens = _kernel_args(task)
    # floor one below the seed so the search rediscovers the lexicographically first set of that size
    best, witness, nodes, complete = kernels.branch_and_bound(
        task.n, task.modular, coeffs, eqs, inv, lens, cap, len(seed) - 1, task.budget
    )
    witness_set = task.empty_set(witness)
    if len(witness_set) < len(seed):  # budget ran out before the seed size was matched
        witness_set = seed
    optimum = len(witness_set)
    proven = bool(complete) or optimum >= cap
    if not task.verify(witness_set):
        raise RuntimeError(f"search produced an infeasible witness {witness_set}")
    if optimum > cap:
        raise RuntimeError(f"optimum {optimum} exceeds the bound cap {cap}")
    if not proven:
        log.warning("node budget exhausted for %s; optimum %d not proven", task, optimum)
    return SearchResult(task, optimum, witness_set, int(nodes), proven)


def admissible(ambient: str, n: int, k: int, family: str = KFOLD, coeffs: Sequence[int] | None = None) -> bool:
    if ambient == INTERVAL:
        return n >= 1
    cs = coeffs if family == DILATE and coeffs else range(1, k + 1)
    return n >= 1 and all(math.gcd(c, n) == 1 for c in cs)


TABLE_COLUMNS = ["N", "S", "group_cap", "thm12_cap", "ratio", "proven", "witness"]


def _row(task: SearchTask) -> dict:
    res = max_set(task)
    k = len(task.dilate_coeffs)
    n = task.n
    return {
        "N": n,
        "S": res.optimum,
        "group_cap": group_bound(n, k).integer_cap if task.modular and n >= 2 else "",
        "thm12_cap": thm12_bound(n, k, max(task.dilate_coeffs)).integer_cap if not task.modular else "",
        "ratio": f"{res.optimum / math.sqrt(n):.3f}",
        "proven": "proven" if res.proven_optimal else "unproven",
        "witness": " ".join(map(str, res.witness.elements)),
    }


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get(JOBS_ENV, "1")))
    except ValueError:
        return 1


def table_rows(
    ns: Iterable[int],
    k: int,
    ambient: str = MODULAR,
    family: str = KFOLD,
    coeffs: Sequence[int] | None = None,
    budget: int = DEFAULT_BUDGET,
    jobs: int | None = None,
) -> list[dict]:
    """One row per admissible N; inadmissible N (coprimality) are skipped."""
    tasks = [
        SearchTask(ambient, n, k, family, tuple(coeffs) if coeffs else None, budget)
        for n in ns
        if admissible(ambient, n, k, family, coeffs)
    ]
    jobs = default_jobs() if jobs is None else jobs
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_row, tasks))
    return [_row(t) for t in tasks]


def emit_table(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=TABLE_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()
