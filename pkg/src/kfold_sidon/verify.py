"""Decide whether a set has only trivial solutions to dilate or k-fold equations.

``verify_dilate_family`` and ``verify_kfold`` return ``True`` on success and a
:class:`Violation` otherwise. Violations are falsy, so ``if verify(...)``
reads naturally while the counterexample stays available.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from itertools import product
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .equations import InvariantEquation, dilate_equation, enumerate_kfold_equations, is_trivial_solution

MODULAR = "modular"
INTERVAL = "interval"


@dataclass(frozen=True)
class ResidueSet:
    """Elements of Z_N (``0 <= a < N``) or of the interval [N] (``1 <= a <= N``)."""

    elements: tuple[int, ...]
    modulus: int
    ambient: str = MODULAR

    def __post_init__(self):
        if self.ambient not in (MODULAR, INTERVAL):
            raise ValueError(f"unknown ambient {self.ambient!r}")
        if self.modulus < 0:
            raise ValueError("modulus/limit must be nonnegative")
        elems = tuple(sorted(int(a) for a in self.elements))
        if len(set(elems)) != len(elems):
            raise ValueError("duplicate elements")
        lo, hi = (0, self.modulus - 1) if self.modular else (1, self.modulus)
        for a in elems:
            if not lo <= a <= hi:
                raise ValueError(f"element {a} outside {self.describe()}")
        object.__setattr__(self, "elements", elems)

    @classmethod
    def mod(cls, elements: Iterable[int], n: int) -> "ResidueSet":
        return cls(tuple(elements), n, MODULAR)

    @classmethod
    def interval(cls, elements: Iterable[int], n: int) -> "ResidueSet":
        return cls(tuple(elements), n, INTERVAL)

    @property
    def modular(self) -> bool:
        return self.ambient == MODULAR

    def describe(self) -> str:
        return f"Z_{self.modulus}" if self.modular else f"[1..{self.modulus}]"

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, a):
        return a in self.elements

    def as_array(self) -> np.ndarray:
        return np.asarray(self.elements, dtype=np.int64)

    def to_json(self) -> dict:
        return {"ambient": self.ambient, "modulus_or_limit": self.modulus, "elements": list(self.elements)}

    @classmethod
    def from_json(cls, obj: dict) -> "ResidueSet":
        return cls(tuple(obj["elements"]), int(obj["modulus_or_limit"]), obj.get("ambient", MODULAR))


@dataclass(frozen=True)
class Violation:
    """A nontrivial solution: ``equation`` evaluated at ``assignment`` is zero."""

    equation: InvariantEquation
    assignment: tuple[int, ...]
    ambient: str
    modulus: int

    def __bool__(self):
        return False

    def to_json(self) -> dict:
        return {
            "equation": self.equation.to_json(),
            "assignment": list(self.assignment),
            "ambient": "Z_N" if self.ambient == MODULAR else "interval",
            "modulus": self.modulus,
        }


def _check_coeffs(coeffs: Sequence[int]) -> tuple[int, ...]:
    coeffs = tuple(int(c) for c in coeffs)
    if not coeffs:
        raise ValueError("coefficient list is empty")
    if coeffs[0] < 1 or any(b <= a for a, b in zip(coeffs, coeffs[1:])):
        raise ValueError(f"coefficients must be strictly increasing positive integers, got {coeffs}")
    return coeffs


def _check_coprime(A: ResidueSet, values: Iterable[int]) -> None:
    if not A.modular:
        return
    for c in values:
        if gcd(c, A.modulus) != 1:
            raise ValueError(f"coefficient {c} is not coprime to the modulus {A.modulus}")


def _violation(A: ResidueSet, eq: InvariantEquation, x: Sequence[int]) -> Violation:
    return Violation(eq, tuple(int(v) for v in x), A.ambient, A.modulus)


def _first_dilate_violation(A: ResidueSet, coeffs: tuple[int, ...]) -> Violation | None:
    """Smallest (i, j, a, b, c, d), i <= j, with c_i(a-b) = c_j(c-d) nontrivially."""
    n = A.modulus
    groups = defaultdict(list)
    for i, c in enumerate(coeffs):
        for a, b in product(A.elements, repeat=2):
            if a != b:
                v = c * (a - b)
                groups[v % n if A.modular else v].append((i, a, b))
    best = None
    for entries in groups.values():
        for e in entries:
            for f in entries:
                if e != f and e[0] <= f[0]:
                    key = (e[0], f[0], e[1], e[2], f[1], f[2])
                    if best is None or key < best:
                        best = key
    if best is None:
        return None
    i, j, a, b, c, d = best
    return _violation(A, dilate_equation(coeffs[i], coeffs[j]), (a, b, c, d))


def verify_dilate_family(A: ResidueSet, coeffs: Sequence[int]) -> bool | Violation:
    """Only trivial solutions to c_i(x1 - x2) = c_j(x3 - x4) for all i <= j?

    Holds exactly when the values c_i(a - b), a != b, are pairwise distinct
    and nonzero.
    """
    coeffs = _check_coeffs(coeffs)
    _check_coprime(A, coeffs)
    if len(A) <= 1:
        return True
    if not kernels.dilate_collides(A.as_array(), np.asarray(coeffs, dtype=np.int64), A.modulus, A.modular):
        return True
    v = _first_dilate_violation(A, coeffs)
    if v is None:  # pragma: no cover - the kernel and the grouping disagree
        raise RuntimeError("collision reported but no violating quadruple found")
    return v


def verify_dilate_family_oracle(A: ResidueSet, coeffs: Sequence[int]) -> bool | Violation:
    """Exhaustive quadruple check, classifying each solution by partitions."""
    coeffs = _check_coeffs(coeffs)
    _check_coprime(A, coeffs)
    n = A.modulus
    elems = A.elements

    def red(v):
        return v % n if A.modular else v

    for i, ci in enumerate(coeffs):
        for cj in coeffs[i:]:
            eq = dilate_equation(ci, cj)
            left = defaultdict(list)
            for a1, a2 in product(elems, repeat=2):
                left[red(ci * (a1 - a2))].append((a1, a2))
            found = []
            for a3, a4 in product(elems, repeat=2):
                for a1, a2 in left.get(red(cj * (a3 - a4)), ()):
                    x = (a1, a2, a3, a4)
                    if not is_trivial_solution(eq, x):
                        found.append(x)
            if found:
                return _violation(A, eq, min(found))
    return True


def _active_split(coefficients: tuple[int, ...]) -> tuple[list[int], list[int]]:
    active = [j for j, c in enumerate(coefficients) if c]
    cut = (len(active) + 1) // 2
    return active[:cut], active[cut:]


def _equation_violation(A: ResidueSet, eq: InvariantEquation) -> Violation | None:
    """First nontrivial solution of ``eq`` over A, by matching partial sums."""
    n = A.modulus
    c = eq.coefficients
    left, right = _active_split(c)

    def red(v):
        return v % n if A.modular else v

    index = defaultdict(list)
    for vals in product(A.elements, repeat=len(left)):
        index[red(sum(c[j] * v for j, v in zip(left, vals)))].append(vals)
    rep = A.elements[0]  # stand-in for zero-coefficient variables
    best = None
    for rvals in product(A.elements, repeat=len(right)):
        target = red(-sum(c[j] * v for j, v in zip(right, rvals)))
        for lvals in index.get(target, ()):
            x = [rep] * eq.r
            for j, v in zip(left, lvals):
                x[j] = v
            for j, v in zip(right, rvals):
                x[j] = v
            x = tuple(x)
            if not is_trivial_solution(eq, x) and (best is None or x < best):
                best = x
    return None if best is None else _violation(A, eq, best)


def verify_kfold(A: ResidueSet, k: int) -> bool | Violation:
    """Only trivial solutions to every four-variable equation with |c_i| <= k?"""
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    _check_coprime(A, range(1, k + 1))
    if len(A) <= 1:
        return True
    for eq in enumerate_kfold_equations(k):
        v = _equation_violation(A, eq)
        if v is not None:
            return v
    return True


def holds(A: ResidueSet, eq: InvariantEquation, x: Sequence[int]) -> bool:
    """Does ``x`` solve ``eq`` in the ambient of A?"""
    return eq.evaluate(x, A.modulus if A.modular else None) == 0
