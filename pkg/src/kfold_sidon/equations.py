"""Invariant linear equations c_1 x_1 + ... + c_r x_r = 0 with sum(c) = 0.

Partitions are reported as tuples of parts, each part a tuple of 0-based
variable indices.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Sequence

MAX_VARIABLES = 8

Partition = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class InvariantEquation:
    coefficients: tuple[int, ...]

    def __post_init__(self):
        c = tuple(int(v) for v in self.coefficients)
        object.__setattr__(self, "coefficients", c)
        if len(c) < 2:
            raise ValueError("an invariant equation needs at least two variables")
        if sum(c) != 0:
            raise ValueError(f"coefficients {c} do not sum to zero")
        if not any(c):
            raise ValueError("coefficients are all zero")

    @property
    def r(self) -> int:
        return len(self.coefficients)

    def evaluate(self, x: Sequence[int], modulus: int | None = None) -> int:
        s = sum(c * v for c, v in zip(self.coefficients, x))
        return s % modulus if modulus else s

    def to_json(self) -> list[int]:
        return list(self.coefficients)


@dataclass(frozen=True)
class SolutionVerdict:
    trivial: bool
    witness_partition: Partition | None = None

    def __bool__(self):
        return self.trivial


def set_partitions(r: int):
    """Set partitions of range(r) in lexicographic restricted-growth-string order."""
    if r == 0:
        yield ()
        return
    rgs = [0] * r

    def emit():
        parts: list[list[int]] = [[] for _ in range(max(rgs) + 1)]
        for idx, block in enumerate(rgs):
            parts[block].append(idx)
        return tuple(tuple(p) for p in parts)

    while True:
        yield emit()
        # next restricted growth string: bump the rightmost position that can grow
        i = r - 1
        while i > 0:
            if rgs[i] <= max(rgs[:i]):
                rgs[i] += 1
                for j in range(i + 1, r):
                    rgs[j] = 0
                break
            i -= 1
        else:
            return


def _check_size(r: int) -> None:
    if r > MAX_VARIABLES:
        raise ValueError(f"partition enumeration supports r <= {MAX_VARIABLES}, got {r}")


def _equality_pattern(x: Sequence) -> tuple[int, ...]:
    seen: dict = {}
    return tuple(seen.setdefault(v, len(seen)) for v in x)


@lru_cache(maxsize=65536)
def _trivial_witness(coefficients: tuple[int, ...], pattern: tuple[int, ...]) -> Partition | None:
    for parts in set_partitions(len(coefficients)):
        if all(
            sum(coefficients[j] for j in part) == 0 and len({pattern[j] for j in part}) == 1
            for part in parts
        ):
            return parts
    return None


def is_trivial_solution(eq: InvariantEquation, x: Sequence[int]) -> SolutionVerdict:
    """Classify ``x`` as a trivial or nontrivial assignment for ``eq``.

    Only equality between entries matters, so residues should be passed in
    reduced form. Whether ``x`` actually solves ``eq`` is not checked.
    """
    if len(x) != eq.r:
        raise ValueError(f"assignment has {len(x)} entries, equation has {eq.r} variables")
    _check_size(eq.r)
    witness = _trivial_witness(eq.coefficients, _equality_pattern(x))
    return SolutionVerdict(witness is not None, witness)


def genus(eq: InvariantEquation) -> int:
    """Largest number of zero-sum parts in a partition of the variables.

    Parts made only of zero-coefficient variables are not counted.
    """
    _check_size(eq.r)
    c = eq.coefficients
    best = 0
    for parts in set_partitions(eq.r):
        if all(sum(c[j] for j in part) == 0 for part in parts):
            best = max(best, sum(1 for part in parts if any(c[j] for j in part)))
    return best


def _canonical(vec: Sequence[int]) -> tuple[int, ...]:
    # Largest permutation is the descending sort; take the larger of it and its negation.
    return max(tuple(sorted(vec, reverse=True)), tuple(sorted((-v for v in vec), reverse=True)))


def is_dilate_form(coefficients: Sequence[int]) -> bool:
    """True when the vector is a permutation/negation of (a, -a, -b, b), a, b > 0."""
    if len(coefficients) != 4:
        return False
    pos = sorted(v for v in coefficients if v > 0)
    neg = sorted(-v for v in coefficients if v < 0)
    return len(pos) == 2 and pos == neg


@lru_cache(maxsize=None)
def enumerate_kfold_equations(k: int) -> tuple[InvariantEquation, ...]:
    """Four-variable equations with |c_i| <= k, sum zero, up to permutation and sign.

    Each class is represented by its lexicographically largest vector; the
    result is sorted ascending. Classes with only two nonzero coefficients,
    c(x - y) = 0, are left out: they have no nontrivial solutions wherever
    c is invertible.
    """
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    reps = set()
    for multiset in combinations_with_replacement(range(-k, k + 1), 4):
        if sum(multiset) != 0 or sum(1 for v in multiset if v) < 3:
            continue
        reps.add(_canonical(multiset))
    return tuple(InvariantEquation(c) for c in sorted(reps))


def dilate_equation(ci: int, cj: int) -> InvariantEquation:
    """ci(x1 - x2) = cj(x3 - x4) as the vector (ci, -ci, -cj, cj)."""
    if ci < 1 or cj < 1:
        raise ValueError(f"dilate coefficients must be positive, got ({ci}, {cj})")
    return InvariantEquation((ci, -ci, -cj, cj))
