"""Exact integer power series truncated at an explicit bound.

Three carriers: dense QSeries over arbitrary-precision integers, SparseSeries
for expansions with few terms (the pentagonal-number expansion of the Euler
product), and ResidueSeries holding the same coefficients modulo a fixed
word-size prime.  The residue lane exists so a scan can certify a(n) != 0 from
a single nonzero residue; only an all-lanes-zero index needs exact arithmetic.

All values are immutable after construction and every operation is a pure
function, so anything here may be called from concurrent code.  Truncation
bounds are always explicit: operations on mismatched bounds raise rather than
resize.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .arith import is_prime

# Residue-lane moduli, fixed at build time: odd primes below 2^31, so lane
# values and the sparse-accumulation intermediates stay well inside int64.
LANE_PRIMES = (998244353, 1004535809, 2147483647)


@dataclass(frozen=True)
class QSeries:
    """Integer power series known exactly for indices 0..trunc_bound."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) < 2:
            raise ValueError("trunc_bound must be >= 1")

    @classmethod
    def from_coeffs(cls, coeffs) -> QSeries:
        return cls(tuple(int(c) for c in coeffs))

    @classmethod
    def one(cls, bound: int) -> QSeries:
        return cls((1,) + (0,) * bound)

    @classmethod
    def zero(cls, bound: int) -> QSeries:
        return cls((0,) * (bound + 1))

    @property
    def trunc_bound(self) -> int:
        return len(self.coeffs) - 1

    @property
    def valuation(self) -> int | None:
        """Smallest index with a nonzero coefficient; None for the zero series."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def __getitem__(self, n: int) -> int:
        return self.coeffs[n]

    def __repr__(self):
        head = ", ".join(str(c) for c in self.coeffs[:6])
        tail = ", ..." if len(self.coeffs) > 6 else ""
        return f"QSeries(bound={self.trunc_bound}, coeffs=[{head}{tail}])"

    def __add__(self, other: QSeries) -> QSeries:
        _check_bounds(self, other)
        return QSeries(tuple(x + y for x, y in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: QSeries) -> QSeries:
        _check_bounds(self, other)
        return QSeries(tuple(x - y for x, y in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other: QSeries) -> QSeries:
        return mul(self, other)

    def __pow__(self, e: int) -> QSeries:
        return power(self, e)


@dataclass(frozen=True)
class SparseSeries:
    """Few-term series as sorted (index, coefficient) pairs, indices <= trunc_bound."""

    terms: tuple[tuple[int, int], ...]
    trunc_bound: int

    def __post_init__(self):
        if self.trunc_bound < 1:
            raise ValueError("trunc_bound must be >= 1")
        prev = -1
        for idx, c in self.terms:
            if idx <= prev:
                raise ValueError("term indices must be strictly increasing")
            if idx > self.trunc_bound:
                raise ValueError("term index exceeds trunc_bound")
            if c == 0:
                raise ValueError("zero coefficients are not stored")
            prev = idx

    def densify(self) -> QSeries:
        dense = [0] * (self.trunc_bound + 1)
        for idx, c in self.terms:
            dense[idx] = c
        return QSeries(tuple(dense))


@dataclass(frozen=True)
class ResidueSeries:
    """Coefficients reduced modulo an odd word-size prime, as an int64 array.

    The array is frozen by convention (never written after construction).
    """

    modulus: int
    coeffs: np.ndarray

    def __post_init__(self):
        m = self.modulus
        if m % 2 == 0 or m >= 2**31 or not is_prime(m):
            raise ValueError("modulus must be an odd prime below 2^31")
        if self.coeffs.dtype != np.int64:
            raise ValueError("residue coefficients must be int64")
        if len(self.coeffs) < 2:
            raise ValueError("trunc_bound must be >= 1")
        if int(self.coeffs.min()) < 0 or int(self.coeffs.max()) >= m:
            raise ValueError("residues must lie in [0, modulus)")

    @property
    def trunc_bound(self) -> int:
        return len(self.coeffs) - 1

    def __repr__(self):
        return f"ResidueSeries(modulus={self.modulus}, bound={self.trunc_bound})"


def _check_bounds(a, b):
    if a.trunc_bound != b.trunc_bound:
        raise ValueError(
            f"truncation bounds differ: {a.trunc_bound} vs {b.trunc_bound}"
        )


def mul(a: QSeries, b: QSeries) -> QSeries:
    """Product truncated at the common bound.  Schoolbook O(B^2), exact."""
    _check_bounds(a, b)
    bound = a.trunc_bound
    out = [0] * (bound + 1)
    bc = b.coeffs
    for i, ai in enumerate(a.coeffs):
        if ai:
            seg = bc[: bound + 1 - i]
            out[i:] = [x + ai * y for x, y in zip(out[i:], seg)]
    return QSeries(tuple(out))


def mul_sparse(a: QSeries, s: SparseSeries) -> QSeries:
    """a * s, costing O(bound * len(s.terms)); equals mul(a, s.densify())."""
    _check_bounds(a, s)
    bound = a.trunc_bound
    out = [0] * (bound + 1)
    ac = a.coeffs
    for idx, c in s.terms:
        seg = ac[: bound + 1 - idx]
        if c == 1:
            out[idx:] = [x + y for x, y in zip(out[idx:], seg)]
        elif c == -1:
            out[idx:] = [x - y for x, y in zip(out[idx:], seg)]
        else:
            out[idx:] = [x + c * y for x, y in zip(out[idx:], seg)]
    return QSeries(tuple(out))


def power(a: QSeries, e: int) -> QSeries:
    """a^e by binary exponentiation; the result is strategy-independent."""
    if e < 1:
        raise ValueError("exponent must be >= 1")
    result = None
    base = a
    while True:
        if e & 1:
            result = base if result is None else mul(result, base)
        e >>= 1
        if not e:
            return result
        base = mul(base, base)


def shift(a: QSeries, j: int) -> QSeries:
    """Multiply by q^j, truncating at the same bound (top j coefficients drop)."""
    if j < 0:
        raise ValueError("shift must be nonnegative")
    if j == 0:
        return a
    bound = a.trunc_bound
    if j > bound:
        return QSeries.zero(bound)
    return QSeries((0,) * j + a.coeffs[: bound + 1 - j])


def exact_divide(a: QSeries, d: int) -> QSeries:
    """Coefficientwise division by d, raising if any coefficient is not divisible."""
    out = []
    for n, c in enumerate(a.coeffs):
        q, r = divmod(c, d)
        if r:
            raise ValueError(f"coefficient at index {n} is not divisible by {d}")
        out.append(q)
    return QSeries(tuple(out))


def eta_raw(bound: int) -> SparseSeries:
    """Euler's pentagonal expansion of prod_{n>=1} (1 - q^n), truncated.

    Terms sit at the generalized pentagonal numbers m(3m-1)/2 and m(3m+1)/2
    with coefficient (-1)^m, so only Theta(sqrt(bound)) of them survive.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    terms = {0: 1}
    m = 1
    while True:
        g1 = m * (3 * m - 1) // 2
        g2 = m * (3 * m + 1) // 2
        if g1 > bound:
            break
        sign = -1 if m % 2 else 1
        terms[g1] = sign
        if g2 <= bound:
            terms[g2] = sign
        m += 1
    return SparseSeries(tuple(sorted(terms.items())), bound)


def reduce_mod(a: QSeries, m: int) -> ResidueSeries:
    """Coefficientwise residues of a modulo the odd prime m."""
    arr = np.fromiter((c % m for c in a.coeffs), dtype=np.int64, count=len(a.coeffs))
    return ResidueSeries(m, arr)


def one_mod(bound: int, m: int) -> ResidueSeries:
    arr = np.zeros(bound + 1, dtype=np.int64)
    arr[0] = 1
    return ResidueSeries(m, arr)


def mul_sparse_mod(a: ResidueSeries, s: SparseSeries) -> ResidueSeries:
    """Residue-lane twin of mul_sparse, vectorized over int64.

    Accumulates len(s.terms) shifted copies before reducing; the guard below
    keeps the unreduced partial sums inside int64.
    """
    _check_bounds(a, s)
    m = a.modulus
    if (len(s.terms) + 1) * m >= 2**62:
        raise OverflowError("sparse accumulation would overflow int64")
    bound = a.trunc_bound
    out = np.zeros(bound + 1, dtype=np.int64)
    ac = a.coeffs
    for idx, c in s.terms:
        seg = ac[: bound + 1 - idx]
        if c == 1:
            out[idx:] += seg
        elif c == -1:
            out[idx:] -= seg
        else:
            out[idx:] += (c % m) * seg % m
    out %= m
    return ResidueSeries(m, out)


def shift_mod(a: ResidueSeries, j: int) -> ResidueSeries:
    """Residue-lane twin of shift."""
    if j < 0:
        raise ValueError("shift must be nonnegative")
    if j == 0:
        return a
    out = np.zeros(len(a.coeffs), dtype=np.int64)
    out[j:] = a.coeffs[: len(a.coeffs) - j]
    return ResidueSeries(a.modulus, out)
