"""Explicit upper bounds on sets free of nontrivial dilate solutions.

Every bound is reported as a float ``value`` together with an ``integer_cap``
decided by exact integer arithmetic, so caps never flip on rounding.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor, sqrt
from typing import Iterable

import numpy as np

THM12_MODES = ("paper_m", "sweep", "sharp")
_SWEEP_CHUNK = 1 << 20


@dataclass(frozen=True)
class BoundReport:
    name: str
    value: float
    integer_cap: int
    parameters: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"name": self.name, "value": self.value, "integer_cap": self.integer_cap, "parameters": self.parameters}


def diff_counts(B: Iterable[int], C: Iterable[int]) -> Counter:
    """r_{B-C}(x) = #{(b, c) in B x C : b - c = x}."""
    C = list(C)
    return Counter(b - c for b in B for c in C)


def sumset(B: Iterable[int], C: Iterable[int]) -> set[int]:
    C = list(C)
    return {b + c for b in B for c in C}


def check_lemma21(B: Iterable[int], C: Iterable[int]) -> tuple[bool, Fraction, Fraction]:
    """(|B||C|)^2 / |B+C| <= |B||C| + sum_{x != 0} r_{B-B}(x) r_{C-C}(x).

    Returns ``(holds, lhs, rhs)`` with both sides as exact fractions.
    """
    B, C = set(B), set(C)
    if not B or not C:
        raise ValueError("check_lemma21 needs nonempty sets")
    rb, rc = diff_counts(B, B), diff_counts(C, C)
    lhs = Fraction((len(B) * len(C)) ** 2, len(sumset(B, C)))
    rhs = Fraction(len(B) * len(C) + sum(rb[x] * rc[x] for x in rb if x != 0))
    return lhs <= rhs, lhs, rhs


def _largest_s(pred, hi_guess: int) -> int:
    """Largest s >= 0 with pred(s), for pred monotone (true then false)."""
    s = max(hi_guess, 0)
    while s > 0 and not pred(s):
        s -= 1
    while pred(s + 1):
        s += 1
    return s


def group_bound(N: int, k: int) -> BoundReport:
    """sqrt((N-1)/k + 1/4) + 1/2; the cap is the largest s with k s(s-1) <= N-1."""
    if N < 2 or k < 1:
        raise ValueError(f"group_bound needs N >= 2 and k >= 1, got N={N}, k={k}")
    value = sqrt((N - 1) / k + 0.25) + 0.5
    cap = _largest_s(lambda s: k * s * (s - 1) <= N - 1, floor(value))
    return BoundReport("group", value, cap, {"N": N, "k": k})


def sidon_zn_bound(N: int) -> BoundReport:
    """sqrt(N - 3/4) + 1/2 for a Sidon set in Z_N."""
    if N < 1:
        raise ValueError(f"sidon_zn_bound needs N >= 1, got {N}")
    value = sqrt(N - 0.75) + 0.5
    cap = _largest_s(lambda s: s * (s - 1) <= N - 1, floor(value))
    return BoundReport("sidon_zn", value, cap, {"N": N})


def paper_m(N: int, k: int, c_k: int) -> int:
    """ceil(N^{3/4} k^{1/4} / c_k^{1/2}), i.e. the least m with m^4 c_k^2 >= N^3 k."""
    target = N**3 * k
    m = max(1, ceil((N**0.75) * (k**0.25) / sqrt(c_k)))
    while m > 1 and (m - 1) ** 4 * c_k**2 >= target:
        m -= 1
    while m**4 * c_k**2 < target:
        m += 1
    return m


def thm12_expression(N, k, c_k, m):
    """The explicit upper bound for |A| at a given m (scalar or array m)."""
    m = np.asarray(m, dtype=np.float64)
    return (
        sqrt(N / k)
        + c_k * m / (sqrt(k) * sqrt(N))
        + N**1.5 * sqrt(k) / (2 * m**2)
        + sqrt(k) * c_k**2 / (2 * sqrt(N))
        + N / (2 * m)
        + c_k / 2
    )


def thm12_root(N, k, c_k, m):
    """Positive root of k m s^2 - k(N + c_k m) s - m(N + c_k m) = 0."""
    m = np.asarray(m, dtype=np.float64)
    w = N + c_k * m
    return (k * w + np.sqrt((k * w) ** 2 + 4.0 * k * m * m * w)) / (2.0 * k * m)


def _quadratic_ok(N: int, k: int, c_k: int, m: int, s: int) -> bool:
    w = N + c_k * m
    return k * m * s * s - k * w * s - m * w <= 0


def _argmin_over_m(fn, N: int) -> tuple[int, float]:
    best_m, best_v = 1, float("inf")
    for start in range(1, N + 1, _SWEEP_CHUNK):
        ms = np.arange(start, min(start + _SWEEP_CHUNK, N + 1), dtype=np.float64)
        vals = fn(ms)
        i = int(np.argmin(vals))
        if vals[i] < best_v:
            best_m, best_v = int(ms[i]), float(vals[i])
    return best_m, best_v


def thm12_bound(N: int, k: int, c_k: int, mode: str = "sharp") -> BoundReport:
    """Upper bound for A in [N] free of c_i(x1-x2) = c_j(x3-x4), 1 <= i <= j <= k.

    ``paper_m`` evaluates the loosened closed form at the prescribed m;
    ``sweep`` minimizes that closed form over integer m in [1, N];
    ``sharp`` minimizes the exact quadratic root over the same range.
    """
    if mode not in THM12_MODES:
        raise ValueError(f"mode must be one of {THM12_MODES}, got {mode!r}")
    if k < 1 or c_k < k or N < 1:
        raise ValueError(f"need N >= 1, k >= 1 and c_k >= k, got N={N}, k={k}, c_k={c_k}")
    params = {"N": N, "k": k, "c_k": c_k, "mode": mode}
    if mode == "paper_m":
        m = paper_m(N, k, c_k)
        value = float(thm12_expression(N, k, c_k, m))
    elif mode == "sweep":
        m, value = _argmin_over_m(lambda ms: thm12_expression(N, k, c_k, ms), N)
    else:
        m, value = _argmin_over_m(lambda ms: thm12_root(N, k, c_k, ms), N)
        cap = _largest_s(lambda s: _quadratic_ok(N, k, c_k, m, s), floor(value))
        params["m"] = m
        return BoundReport("thm12", value, cap, params)
    params["m"] = m
    return BoundReport("thm12", value, floor(value), params)


def group_bound_holds(size: int, N: int, k: int) -> bool:
    """k s(s-1) <= N - 1, the counting inequality behind group_bound."""
    return k * size * (size - 1) <= N - 1

