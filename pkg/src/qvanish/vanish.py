"""Exact classification of prime-power vanishing and first-vanishing scans.

For a good prime p with a_p != 0, the prime-power coefficients a(p^r) vanish
exactly when the ratio of the Satake parameters is a root of unity zeta with
zeta^(r+1) = 1.  Over a quadratic extension of Q the candidates are the
roots of unity of order 1, 2, 3, 4, 6, and which one occurs is decided by the
trace zeta + 1/zeta = a_p^2 / p^(k-1) - 2.  Everything therefore reduces to
comparing a_p^2 against t * p^(k-1) for t in {1, 2, 3, 4} in exact integers:

    t = 0  (a_p = 0)      zeros at every odd r
    t = 1  (order 3)      zeros at r = 2 mod 3     -- no integer instance:
                          p^(k-1) is never a square for even k
    t = 2  (order 4)      zeros at r = 3 mod 4     -- forces p = 2, a_2 = +-2^(k/2)
    t = 3  (order 6)      zeros at r = 5 mod 6     -- forces p = 3, a_3 = +-3^(k/2)
    t = 4  (zeta = 1)     a(p^r) = (r+1) alpha^r, never zero
    else                  zeta is not a root of unity, never zero

At a bad prime a(p^r) = a_p^r, so zeros occur at every r >= 1 or never.

The obstruction modulus M_f records which of p = 2, 3 can actually vanish at
prime powers: the optimal choice keeps 2 iff 2 does not divide the level and
a(2) = +-2^(k/2), likewise for 3, so M_f | 6 and gcd(M_f, level) = 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Callable

import numpy as np

from .arith import is_prime
from .forms import FormSpec
from .hecke import CoefficientOracle
from .series import LANE_PRIMES, QSeries, ResidueSeries, reduce_mod

AP_ZERO = "ap_zero"
PERIODIC = "periodic"
NEVER_ZERO = "never_zero"
BAD_PRIME = "bad_prime"


class GuaranteeViolationError(RuntimeError):
    """A scan hit contradicts a proven guarantee; signals an implementation bug."""


@dataclass(frozen=True)
class VanishClass:
    """Verdict for one prime: exactly which exponents r give a(p^r) = 0.

    kind is one of AP_ZERO (zeros at odd r), PERIODIC with order m in
    {3, 4, 6} (zeros at r = m-1 mod m), NEVER_ZERO, or BAD_PRIME (zeros at
    every r >= 1 iff a_p = 0, signalled by witness = 1, else never).
    witness is the smallest vanishing exponent, when one exists.
    """

    kind: str
    order: int | None = None
    witness: int | None = None

    def __post_init__(self):
        if self.kind == PERIODIC and self.witness != self.order - 1:
            raise ValueError("periodic witness must be order - 1")
        if self.kind == AP_ZERO and self.witness != 1:
            raise ValueError("ap_zero witness must be 1")


def classify(a_p: int, p: int, k: int, p_divides_level: bool = False) -> VanishClass:
    """Classify the zero set of r -> a(p^r) from a_p, in exact integers.

    Purely algebraic: a_p outside the Hasse/Deligne range is accepted (any
    t > 4 lands in the generic never-zero branch).
    """
    if k < 2 or k % 2:
        raise ValueError("even weight k >= 2 required")
    if p_divides_level:
        return VanishClass(BAD_PRIME, witness=1 if a_p == 0 else None)
    if a_p == 0:
        return VanishClass(AP_ZERO, witness=1)
    s = a_p * a_p
    pk = p ** (k - 1)
    if s == 2 * pk:
        return VanishClass(PERIODIC, order=4, witness=3)
    if s == 3 * pk:
        return VanishClass(PERIODIC, order=6, witness=5)
    if s == pk:
        # Unreachable for integral a_p and even k (p^(k-1) is not a square);
        # kept so the trace case analysis is total.
        return VanishClass(PERIODIC, order=3, witness=2)
    return VanishClass(NEVER_ZERO)


def zeros_up_to(vc: VanishClass, bound: int) -> set[int]:
    """Exactly the exponents r <= bound with a(p^r) = 0."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    if vc.kind == NEVER_ZERO:
        return set()
    if vc.kind == AP_ZERO:
        return set(range(1, bound + 1, 2))
    if vc.kind == BAD_PRIME:
        return set(range(1, bound + 1)) if vc.witness == 1 else set()
    m = vc.order
    return set(range(m - 1, bound + 1, m))


@dataclass(frozen=True)
class MfResult:
    """The obstruction modulus M_f | 6 with its per-prime justification."""

    value: int
    factors_kept: tuple[int, ...]
    justification: dict[int, dict]

    def __post_init__(self):
        if self.value not in (1, 2, 3, 6):
            raise ValueError("M_f must divide 6")


def compute_mf(level: int, a2: int, a3: int, k: int) -> MfResult:
    """Optimal M_f for trivial character and integer coefficients.

    Start from 2^[2 not dividing N] * 3^[3 not dividing N], then drop 2
    unless a(2) = +-2^(k/2) and drop 3 unless a(3) = +-3^(k/2).  The result
    divides 6 and is coprime to the level by construction.
    """
    if k < 2 or k % 2:
        raise ValueError("even weight k >= 2 required")
    if level < 1:
        raise ValueError("level must be >= 1")
    kept = []
    justification: dict[int, dict] = {}
    for p, ap in ((2, a2), (3, a3)):
        divides_level = level % p == 0
        critical = (not divides_level) and ap * ap == p**k
        if critical:
            kept.append(p)
        justification[p] = {
            "ap": ap,
            "divides_level": divides_level,
            "ap_is_critical": critical,  # a_p = +-p^(k/2)
        }
    value = 1
    for p in kept:
        value *= p
    return MfResult(value=value, factors_kept=tuple(kept), justification=justification)


# Per-index certification codes in ScanReport.certification (index n-1).
CERT_RESIDUE = ord("r")
CERT_EXACT = ord("e")
CERT_ZERO = ord("z")


@dataclass
class ScanReport:
    """Result of a first-vanishing scan over 1 <= n <= bound.

    certification records, per index, whether the coefficient was certified
    nonzero by a residue lane ('r') or by exact arithmetic ('e'), or found to
    be an exact zero ('z').  Every index below a reported zero is certified.
    """

    form: FormSpec | None
    bound: int
    first_zero: int | None
    first_zero_is_prime: bool | None
    first_zero_divides_level: bool | None
    coprime_to: int | None
    first_zero_coprime: int | None
    first_zero_coprime_is_prime: bool | None
    first_zero_coprime_divides_level: bool | None
    zeros: list[int] = field(repr=False)
    certification: bytes = field(repr=False)
    lane_moduli: tuple[int, ...]


@dataclass
class ResidueLaneSource:
    """Scan source: residue-lane series plus an exact per-index fallback.

    Used when materializing the exact series is too expensive: the lanes are
    computed directly modulo each prime and only all-lanes-zero indices reach
    the exact callback.
    """

    lanes: list[ResidueSeries]
    exact: Callable[[int], int]

    def __post_init__(self):
        if not self.lanes:
            raise ValueError("at least one residue lane required")
        bounds = {lane.trunc_bound for lane in self.lanes}
        if len(bounds) != 1:
            raise ValueError("residue lanes must share a truncation bound")


def _lanes_and_exact(source, bound):
    if isinstance(source, QSeries):
        if source.trunc_bound < bound:
            raise ValueError(
                f"series bound {source.trunc_bound} below scan bound {bound}"
            )
        lanes = [reduce_mod(source, m) for m in LANE_PRIMES]
        return lanes, source.__getitem__
    if isinstance(source, CoefficientOracle):
        if source.primes.bound < bound:
            raise ValueError(
                f"prime table bound {source.primes.bound} below scan bound {bound}"
            )
        return [], source.coeff
    if isinstance(source, ResidueLaneSource):
        if source.lanes[0].trunc_bound < bound:
            raise ValueError(
                f"lane bound {source.lanes[0].trunc_bound} below scan bound {bound}"
            )
        return source.lanes, source.exact
    raise TypeError(f"cannot scan a {type(source).__name__}")


def first_vanishing(
    source,
    bound: int,
    coprime_to: int | None = None,
    *,
    mf_guarantee: bool = False,
    form: FormSpec | None = None,
) -> ScanReport:
    """Scan for vanishing coefficients over 1 <= n <= bound.

    source is a QSeries (residue lanes are derived from it), a
    CoefficientOracle (exact per-index checks), or a ResidueLaneSource.
    Every nonzero is certified -- by a nonzero residue in some lane or by an
    exact check -- and every reported zero is verified in exact arithmetic.

    With coprime_to set, the first zero coprime to it is also reported.  Set
    mf_guarantee when coprime_to is (a multiple of) the form's M_f: a
    composite coprime hit is then mathematically impossible and raises
    GuaranteeViolationError instead of being reported quietly.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    if form is None and isinstance(source, CoefficientOracle):
        form = source.spec
    lanes, exact = _lanes_and_exact(source, bound)

    cert = bytearray(bound)
    if lanes:
        nonzero = np.zeros(bound + 1, dtype=bool)
        for lane in lanes:
            nonzero |= lane.coeffs[: bound + 1] != 0
        cert = bytearray(
            np.where(nonzero[1:], np.uint8(CERT_RESIDUE), np.uint8(0)).tobytes()
        )
    zeros: list[int] = []
    for n in range(1, bound + 1):
        if cert[n - 1]:
            continue
        if exact(n) == 0:
            cert[n - 1] = CERT_ZERO
            zeros.append(n)
        else:
            cert[n - 1] = CERT_EXACT

    level = form.level if form is not None else None

    def _flags(n):
        if n is None:
            return None, None
        divides = None if level is None else gcd(n, level) > 1
        return is_prime(n), divides

    first_zero = zeros[0] if zeros else None
    fz_prime, fz_bad = _flags(first_zero)

    first_coprime = None
    fc_prime = fc_bad = None
    if coprime_to is not None:
        for n in zeros:
            if gcd(n, coprime_to) == 1:
                first_coprime = n
                break
        fc_prime, fc_bad = _flags(first_coprime)
        if mf_guarantee and first_coprime is not None and not fc_prime:
            raise GuaranteeViolationError(
                f"composite n = {first_coprime} coprime to M_f = {coprime_to} "
                f"has a(n) = 0; this contradicts the primality guarantee"
            )

    return ScanReport(
        form=form,
        bound=bound,
        first_zero=first_zero,
        first_zero_is_prime=fz_prime,
        first_zero_divides_level=fz_bad,
        coprime_to=coprime_to,
        first_zero_coprime=first_coprime,
        first_zero_coprime_is_prime=fc_prime,
        first_zero_coprime_divides_level=fc_bad,
        zeros=zeros,
        certification=bytes(cert),
        lane_moduli=tuple(lane.modulus for lane in lanes),
    )
