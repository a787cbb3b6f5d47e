"""Bose-Chowla and Lindstrom Sidon sets in Z_{q^2-1}, and their cycle-pruned subsets.

Multiplication by p permutes the Lindstrom set. Keeping every k-th element
of each orbit (and dropping orbits shorter than k) leaves a set with only
trivial solutions to x1 - x2 = p^j (x3 - x4) for 0 <= j < k.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

import numpy as np

from . import kernels
from .ring_field import FieldElement, GaloisField, factorize, field_pow, find_generator, is_prime
from .verify import ResidueSet

# q^2 - 1 must fit comfortably in int64 products; larger fields are rejected.
MAX_MODULUS = 2**31
_SCAN_CHUNK = 1 << 16


@dataclass(frozen=True)
class ConstructionParams:
    p: int
    t: int
    k: int
    M: int | None = None
    r: int | None = None
    i: int | None = None

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"p must be prime, got {self.p}")
        if self.t < 1:
            raise ValueError(f"t must be >= 1, got {self.t}")
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if self.modulus > MAX_MODULUS:
            raise ValueError(f"q^2 - 1 = {self.modulus} exceeds the desk-scale limit {MAX_MODULUS}")
        if self.M is not None and self.M < 2:
            raise ValueError(f"M must be >= 2, got {self.M}")
        if (self.r is None) != (self.i is None):
            raise ValueError("r and i must be given together")
        if self.r is not None:
            if self.M is None:
                raise ValueError("r and i need M")
            if not is_prime(self.r) or self.i < 1:
                raise ValueError(f"r must be prime and i >= 1, got r={self.r}, i={self.i}")
            if self.r <= self.M * self.k:
                raise ValueError(f"need r > M k, got r={self.r}, M k={self.M * self.k}")
            if self.r**self.i != self.t:
                raise ValueError(f"need t = r^i, got t={self.t}, r^i={self.r ** self.i}")

    @property
    def q(self) -> int:
        return self.p**self.t

    @property
    def modulus(self) -> int:
        return self.q**2 - 1

    @property
    def regime_valid(self) -> bool:
        return self.r is not None

    @property
    def coefficients(self) -> tuple[int, ...]:
        return tuple(self.p**j for j in range(self.k))


@dataclass(frozen=True)
class CycleDecomposition:
    cycles: tuple[tuple[int, ...], ...]
    base: ResidueSet
    multiplier: int

    @property
    def lengths(self) -> list[int]:
        return [len(c) for c in self.cycles]


@lru_cache(maxsize=None)
def field_and_generator(p: int, t: int) -> tuple[GaloisField, FieldElement]:
    """GF(q^2) as GF(p)[x]/(f), deg f = 2t, with its deterministic generator."""
    _check_size(p, t)
    fld = GaloisField.of(p, 2 * t)
    return fld, find_generator(fld)


def _check_size(p: int, t: int) -> None:
    if not is_prime(p) or t < 1:
        raise ValueError(f"need prime p and t >= 1, got p={p}, t={t}")
    if p ** (2 * t) - 1 > MAX_MODULUS:
        raise ValueError(f"q^2 - 1 = {p ** (2 * t) - 1} exceeds the desk-scale limit {MAX_MODULUS}")


def _scan(p: int, t: int, keep) -> list[int]:
    """Exponents a in [0, q^2 - 2] whose power theta^a satisfies ``keep``.

    Powers are generated in chunks, each seeded with theta^start, and
    ``keep`` receives the chunk as rows of coefficient vectors.
    """
    fld, theta = field_and_generator(p, t)
    n = fld.order - 1
    step = fld.mul_matrix(theta)
    hits = []
    for start in range(0, n, _SCAN_CHUNK):
        count = min(_SCAN_CHUNK, n - start)
        seed = np.asarray(field_pow(theta, start).coeffs, dtype=np.int64)
        rows = kernels.power_table(step, seed, count, p)
        hits.extend(int(a) + start for a in np.flatnonzero(keep(rows)))
    return hits


def bose_chowla(p: int, t: int) -> ResidueSet:
    """{a : theta^a - theta lies in GF(q)}, tested as v^q == v."""
    fld, theta = field_and_generator(p, t)
    frob_q = fld.frobenius_matrix(t)
    th = np.asarray(theta.coeffs, dtype=np.int64)

    def keep(rows):
        v = (rows - th) % p
        return np.all((v @ frob_q.T) % p == v, axis=1)

    return ResidueSet.mod(_scan(p, t, keep), fld.order - 1)


def lindstrom(p: int, t: int) -> ResidueSet:
    """{b : theta^b + theta^(qb) = 1}."""
    fld, _ = field_and_generator(p, t)
    frob_q = fld.frobenius_matrix(t)
    one = np.zeros(fld.m, dtype=np.int64)
    one[0] = 1

    def keep(rows):
        return np.all((rows + rows @ frob_q.T) % p == one, axis=1)

    return ResidueSet.mod(_scan(p, t, keep), fld.order - 1)


def cycle_decompose(B: ResidueSet, p: int) -> CycleDecomposition:
    """Orbits of b -> p b (mod N) on B, each rotated to start at its minimum."""
    if not B.modular:
        raise ValueError("cycle_decompose needs a modular set")
    n = B.modulus
    members = set(B.elements)
    if {p * b % n for b in members} != members:
        raise ValueError(f"multiplication by {p} does not map the set onto itself")
    seen = set()
    cycles = []
    for b in B.elements:  # ascending, so each orbit is met first at its minimum
        if b in seen:
            continue
        cyc = [b]
        seen.add(b)
        nxt = p * b % n
        while nxt != b:
            cyc.append(nxt)
            seen.add(nxt)
            nxt = p * nxt % n
        cycles.append(tuple(cyc))
    return CycleDecomposition(tuple(cycles), B, p)


def prune(cycles: CycleDecomposition, k: int) -> ResidueSet:
    """Keep b_j (1-based position j) when k divides j; short cycles drop out."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    kept = [c[j - 1] for c in cycles.cycles for j in range(k, len(c) + 1, k)]
    return ResidueSet.mod(kept, cycles.base.modulus)


def short_cycle_bound(p: int, t: int, M: int, k: int) -> int:
    """gcd(p^4 - 1, q^2 - 1), which caps the cycles of length <= Mk - 1.

    Only meaningful when t = r^i for a prime r > Mk.
    """
    primes = set(factorize(t))
    if len(primes) != 1 or min(primes) <= M * k:
        raise ValueError(f"t={t} is not a power of a prime r > M k = {M * k}")
    q = p**t
    return gcd(p**4 - 1, q * q - 1)


def size_lower_bound(q: int, k: int, p: int, M: int) -> Fraction:
    """q/k (1 - 1/M) - (p^4 - 1)(M - 1)."""
    return Fraction(q, k) * (1 - Fraction(1, M)) - (p**4 - 1) * (M - 1)


@dataclass(frozen=True)
class ConstructionReport:
    params: ConstructionParams
    theta: tuple[int, ...]
    A: ResidueSet
    cycle_lengths: tuple[int, ...]
    short_cycle_count: int | None = None
    short_cycle_bound: int | None = None
    size_lower_bound: Fraction | None = None

    @property
    def bound_binds(self) -> bool:
        return self.size_lower_bound is not None and self.size_lower_bound > 0

    def to_json(self) -> dict:
        pr = self.params
        slb = self.size_lower_bound
        if slb is not None:
            slb = int(slb) if slb.denominator == 1 else float(slb)
        return {
            "p": pr.p,
            "t": pr.t,
            "q": pr.q,
            "k": pr.k,
            "modulus": pr.modulus,
            "theta": list(self.theta),
            "coefficients": list(pr.coefficients),
            "set": list(self.A.elements),
            "size": len(self.A),
            "cycle_lengths": list(self.cycle_lengths),
            "short_cycle_count": self.short_cycle_count,
            "short_cycle_bound": self.short_cycle_bound,
            "size_lower_bound": slb,
            "bound_binds": self.bound_binds,
            "regime_valid": pr.regime_valid,
        }


def theorem14_construct(params: ConstructionParams) -> ConstructionReport:
    """Pruned Lindstrom set, free of x1 - x2 = p^j (x3 - x4) for j < k."""
    B = lindstrom(params.p, params.t)
    cyc = cycle_decompose(B, params.p)
    A = prune(cyc, params.k)
    _, theta = field_and_generator(params.p, params.t)
    lengths = tuple(cyc.lengths)

    count = bound = lower = None
    if params.M is not None:
        count = sum(1 for m in lengths if m <= params.M * params.k - 1)
    if params.regime_valid:
        bound = short_cycle_bound(params.p, params.t, params.M, params.k)
        lower = size_lower_bound(params.q, params.k, params.p, params.M)
        if count > bound:
            raise RuntimeError(f"{count} short cycles exceed the bound {bound}")
        if len(A) < lower:
            raise RuntimeError(f"|A| = {len(A)} is below the lower bound {lower}")
    return ConstructionReport(params, theta.coeffs, A, lengths, count, bound, lower)
