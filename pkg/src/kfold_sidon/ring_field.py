"""Exact arithmetic over GF(p) polynomials and finite fields GF(p^m).

Fields are represented as GF(p)[x]/(f) for a monic irreducible f of degree m.
Elements carry their coefficient vector (low degree first) and a reference to
the field they belong to.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from math import gcd, isqrt
from typing import Iterable, Sequence

import numpy as np

# Largest integer factorize() accepts; trial division beyond this is not desk scale.
FACTOR_LIMIT = 10**12


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def factorize(n: int) -> list[int]:
    """Prime factors of ``n`` with multiplicity, ascending. ``factorize(1) == []``."""
    if n < 1:
        raise ValueError(f"factorize needs n >= 1, got {n}")
    if n > FACTOR_LIMIT:
        raise ValueError(f"{n} exceeds the trial-division limit {FACTOR_LIMIT}")
    out = []
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.append(d)
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def prime_divisors(n: int) -> list[int]:
    return sorted(set(factorize(n)))


# ---------------------------------------------------------------------------
# Polynomials over GF(p), as lists of ints, low degree first, no trailing zeros.


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_sub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _trim([c % p for c in out])


def _poly_divmod(a: Sequence[int], b: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    a = list(a)
    db = len(b) - 1
    if db < 0:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(b[-1], -1, p)
    quot = [0] * max(len(a) - db, 0)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] * inv_lead % p
        if c:
            quot[i - db] = c
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % p
    return _trim(quot), _trim(a[:db])


def _poly_mod(a: Sequence[int], f: Sequence[int], p: int) -> list[int]:
    return _poly_divmod(a, f, p)[1]


def _poly_gcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_mod(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def _poly_powmod(a: Sequence[int], e: int, f: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _poly_mod(a, f, p)
    while e:
        if e & 1:
            result = _poly_mod(_poly_mul(result, base, p), f, p)
        base = _poly_mod(_poly_mul(base, base, p), f, p)
        e >>= 1
    return result


def _x_pow_p_pow(j: int, f: Sequence[int], p: int) -> list[int]:
    """x^(p^j) mod f by j successive p-th powers."""
    r = _poly_mod([0, 1], f, p)
    for _ in range(j):
        r = _poly_powmod(r, p, f, p)
    return r


@dataclass(frozen=True)
class PrimePolynomial:
    """Polynomial over GF(p); ``coefficients[i]`` multiplies x^i."""

    characteristic: int
    coefficients: tuple[int, ...]

    def __post_init__(self):
        if not self.coefficients or self.coefficients[-1] % self.characteristic == 0:
            raise ValueError("leading coefficient must be nonzero")

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def is_monic(self) -> bool:
        return self.coefficients[-1] == 1

    def __str__(self) -> str:
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coefficients[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}{mono}")
        return " + ".join(terms) if terms else "0"


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic ``f`` of degree m >= 1 over GF(p)."""
    m = len(f) - 1
    if m < 1:
        return False
    if _poly_sub(_x_pow_p_pow(m, f, p), _poly_mod([0, 1], f, p), p):
        return False
    for ell in prime_divisors(m):
        h = _poly_sub(_x_pow_p_pow(m // ell, f, p), [0, 1], p)
        if len(_poly_gcd(h, f, p)) != 1:
            return False
    return True


@lru_cache(maxsize=None)
def find_irreducible(p: int, m: int) -> PrimePolynomial:
    """Lexicographically smallest monic irreducible of degree ``m`` over GF(p).

    Candidates are ordered by (c_{m-1}, ..., c_0) read as a base-p integer.
    """
    if not is_prime(p):
        raise ValueError(f"characteristic must be prime, got {p}")
    if m < 1:
        raise ValueError(f"degree must be >= 1, got {m}")
    for n in range(p**m):
        low = [(n // p**i) % p for i in range(m)]
        f = low + [1]
        if is_irreducible(f, p):
            return PrimePolynomial(p, tuple(f))
    raise AssertionError("no irreducible polynomial found")  # unreachable: one always exists


# ---------------------------------------------------------------------------
# Fields


@dataclass(frozen=True, eq=False)
class GaloisField:
    """GF(p^m) = GF(p)[x]/(modulus). Contexts compare by (p, modulus)."""

    modulus: PrimePolynomial
    _frob_cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if not self.modulus.is_monic:
            raise ValueError("field modulus must be monic")

    @classmethod
    def of(cls, p: int, m: int) -> "GaloisField":
        return cls(find_irreducible(p, m))

    @property
    def p(self) -> int:
        return self.modulus.characteristic

    @property
    def m(self) -> int:
        return self.modulus.degree

    @property
    def order(self) -> int:
        return self.p**self.m

    def __eq__(self, other):
        return isinstance(other, GaloisField) and self.modulus == other.modulus

    def __hash__(self):
        return hash(self.modulus)

    def __repr__(self):
        return f"GF({self.p}^{self.m}) mod ({self.modulus})"

    def __call__(self, coeffs: Iterable[int] | int) -> "FieldElement":
        if isinstance(coeffs, int):
            coeffs = [coeffs]
        reduced = _poly_mod(_trim([c % self.p for c in coeffs]), self.modulus.coefficients, self.p)
        return FieldElement(tuple(reduced + [0] * (self.m - len(reduced))), self)

    def zero(self) -> "FieldElement":
        return self([0])

    def one(self) -> "FieldElement":
        return self([1])

    def gen(self) -> "FieldElement":
        return self([0, 1])

    def from_int(self, n: int) -> "FieldElement":
        """Element whose base-p digits (least significant first) are its coefficients."""
        return FieldElement(tuple((n // self.p**i) % self.p for i in range(self.m)), self)

    def elements(self):
        for n in range(self.order):
            yield self.from_int(n)

    @cached_property
    def mul_x_matrix(self) -> np.ndarray:
        """Matrix of v -> x*v on coefficient column vectors."""
        return self.mul_matrix(self.gen())

    def mul_matrix(self, a: "FieldElement") -> np.ndarray:
        """Matrix of v -> a*v on coefficient column vectors."""
        cols = [(a * self.from_int(self.p**j)).coeffs for j in range(self.m)]
        return np.array(cols, dtype=np.int64).T.copy()

    def frobenius_matrix(self, j: int = 1) -> np.ndarray:
        """Matrix of v -> v^(p^j), which is GF(p)-linear."""
        if j not in self._frob_cache:
            e = self.p**j
            cols = [(self.from_int(self.p**i) ** e).coeffs for i in range(self.m)]
            self._frob_cache[j] = np.array(cols, dtype=np.int64).T.copy()
        return self._frob_cache[j]


@dataclass(frozen=True, eq=False)
class FieldElement:
    coeffs: tuple[int, ...]
    field: GaloisField

    def _check(self, other: "FieldElement") -> None:
        if not isinstance(other, FieldElement):
            raise TypeError(f"expected FieldElement, got {type(other).__name__}")
        if other.field != self.field:
            raise ValueError(f"mixed field contexts: {self.field!r} vs {other.field!r}")

    def __eq__(self, other):
        return isinstance(other, FieldElement) and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.coeffs, self.field))

    def __add__(self, other):
        self._check(other)
        p = self.field.p
        return FieldElement(tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)), self.field)

    def __sub__(self, other):
        self._check(other)
        p = self.field.p
        return FieldElement(tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs)), self.field)

    def __neg__(self):
        p = self.field.p
        return FieldElement(tuple(-a % p for a in self.coeffs), self.field)

    def __mul__(self, other):
        return field_mul(self, other)

    def __pow__(self, e: int):
        return field_pow(self, e)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def to_int(self) -> int:
        p = self.field.p
        return sum(c * p**i for i, c in enumerate(self.coeffs))

    def __repr__(self):
        body = _trim(list(self.coeffs))
        if not body:
            return "0"
        return str(PrimePolynomial(self.field.p, tuple(body)))


def field_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    a._check(b)
    fld = a.field
    prod = _poly_mul(_trim(list(a.coeffs)), _trim(list(b.coeffs)), fld.p)
    r = _poly_mod(prod, fld.modulus.coefficients, fld.p)
    return FieldElement(tuple(r + [0] * (fld.m - len(r))), fld)


def field_pow(a: FieldElement, e: int) -> FieldElement:
    """Square-and-multiply power; ``e`` must be nonnegative."""
    if e < 0:
        raise ValueError("negative exponents are not supported")
    result = a.field.one()
    base = a
    while e:
        if e & 1:
            result = field_mul(result, base)
        base = field_mul(base, base)
        e >>= 1
    return result


def is_generator(a: FieldElement) -> bool:
    if a.is_zero():
        return False
    n = a.field.order - 1
    one = a.field.one()
    if a ** n != one:
        return False
    return all(a ** (n // ell) != one for ell in prime_divisors(n))


@lru_cache(maxsize=None)
def find_generator(fld: GaloisField) -> FieldElement:
    """First generator of GF(p^m)* in base-p integer order, starting from x mod f.

    Enumeration wraps past p^m - 1 back to 0, so constants are tried last when
    m >= 2.
    """
    start = fld.gen().to_int()
    q = fld.order
    for j in range(q):
        cand = fld.from_int((start + j) % q)
        if is_generator(cand):
            return cand
    raise AssertionError("multiplicative group has no generator")  # unreachable


def multiplicative_order(a: int, n: int) -> int:
    """Order of ``a`` in (Z/nZ)*; requires gcd(a, n) == 1."""
    if gcd(a, n) != 1:
        raise ValueError(f"{a} is not a unit modulo {n}")
    if n == 1:
        return 1
    order = _euler_phi(n)
    for ell in prime_divisors(order):
        while order % ell == 0 and pow(a, order // ell, n) == 1:
            order //= ell
    return order


def _euler_phi(n: int) -> int:
    result = n
    for ell in prime_divisors(n):
        result -= result // ell
    return result
