"""
lattice.py — Arithmetic of the exceptional set A(t, η)

A(t, η) = {1 ≤ x ≤ t/2π : ‖t/(2πx)‖ < η}

When n = t/2π is an integer, {n/x} = (n mod x)/x and every comparison is
made in exact integer arithmetic. Thresholds given as floats are read
through their shortest decimal spelling (0.1 means 1/10).
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import List

import numpy as np
from mpmath import mp

from .errors import DomainError
from .numerics import digamma, riemann_zeta

logger = logging.getLogger(__name__)

INTEGER_LENGTH_TOL = 1e-9


@dataclass
class ExceptionalSet:
    t: float
    eta: float
    members: List[int] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, x: int) -> bool:
        return x in self.members

    def to_dict(self) -> dict:
        return {"t": self.t, "eta": self.eta, "count": len(self.members), "members": list(self.members)}


def _exact(value: float) -> Fraction:
    return Fraction(repr(float(value)))


def _check_eta(eta: float) -> None:
    if not 0 < eta < 0.5:
        raise DomainError("η must lie in (0, 1/2)", eta=eta)


def _check_delta(delta: float) -> None:
    if not 0 < delta < 1:
        raise DomainError("δ must lie in (0, 1)", delta=delta)


# ═══════════════════════════════════════════════════════════════════════════
# ENUMERATION
# ═══════════════════════════════════════════════════════════════════════════

def enumerate_A_integer(n: int, eta: float) -> ExceptionalSet:
    """A(2πn, η): x ∈ A ⇔ min(r, x − r) < η·x with r = n mod x."""
    _check_eta(eta)
    if n < 1:
        raise DomainError("n must be >= 1", n=n)
    bound = _exact(eta)
    p, q = bound.numerator, bound.denominator
    members = []
    for x in range(1, n + 1):
        r = n % x
        if min(r, x - r) * q < p * x:
            members.append(x)
    return ExceptionalSet(t=2 * math.pi * n, eta=eta, members=members)


def enumerate_A(t: float, eta: float) -> ExceptionalSet:
    _check_eta(eta)
    if t <= 2 * math.pi:
        raise DomainError("t must exceed 2π", t=t)
    length = t / (2 * math.pi)
    n = round(length)
    if abs(length - n) <= INTEGER_LENGTH_TOL * length:
        found = enumerate_A_integer(n, eta)
        return ExceptionalSet(t=t, eta=eta, members=found.members)

    xs = np.arange(1, int(math.floor(length)) + 1)
    y = length / xs
    dist = np.abs(y - np.rint(y))
    members = [int(x) for x in xs[dist < eta]]
    logger.debug(f"enumerate_A: t={t} eta={eta} members={len(members)}")
    return ExceptionalSet(t=t, eta=eta, members=members)


def count_frac_below(n: int, delta: float) -> int:
    """#{1 ≤ x ≤ n : {n/x} < δ}."""
    _check_delta(delta)
    bound = _exact(delta)
    p, q = bound.numerator, bound.denominator
    return sum(1 for x in range(1, n + 1) if (n % x) * q < p * x)


def count_frac_above(n: int, delta: float) -> int:
    """#{1 ≤ x ≤ n : {n/x} > 1 − δ}."""
    _check_delta(delta)
    bound = _exact(delta)
    p, q = bound.numerator, bound.denominator
    return sum(1 for x in range(1, n + 1) if (n % x) * q > (q - p) * x)


# ═══════════════════════════════════════════════════════════════════════════
# DENSITIES
# ═══════════════════════════════════════════════════════════════════════════

def saffari_density(delta: float) -> float:
    """Σ_{m≥1} δ/(m(m+δ)) = γ + ψ(1+δ)."""
    _check_delta(delta)
    return float(mp.euler + digamma(1 + mp.mpf(delta)))


def saffari_partial_sum(delta: float, M: int) -> float:
    _check_delta(delta)
    m = np.arange(1, M + 1, dtype=float)
    return math.fsum(delta / (m * (m + delta)))


def count_A_estimate(t: float, eta: float) -> float:
    """(t/2π)(1 + ψ(1+η) − ψ(2−η))."""
    _check_eta(eta)
    if t <= 2 * math.pi:
        raise DomainError("t must exceed 2π", t=t)
    n = t / (2 * math.pi)
    return float(n * (1 + digamma(1 + mp.mpf(eta)) - digamma(2 - mp.mpf(eta))))


def count_frac_above_estimate(n: int, delta: float) -> float:
    """n − (γ + ψ(2−δ))n."""
    _check_delta(delta)
    return float(n - (mp.euler + digamma(2 - mp.mpf(delta))) * n)


# ═══════════════════════════════════════════════════════════════════════════
# HYPERBOLA SUMS
# ═══════════════════════════════════════════════════════════════════════════

@lru_cache(maxsize=16)
def harmonic_prefix(N: int, sigma: float) -> np.ndarray:
    """P[k] = Σ_{m≤k} m^{2σ−2}, with P[0] = 0."""
    m = np.arange(1, N + 1, dtype=float)
    prefix = np.zeros(N + 1)
    prefix[1:] = np.cumsum(m ** (2 * sigma - 2))
    prefix.setflags(write=False)
    return prefix


def hyperbola_double_sum(N: int, sigma: float) -> float:
    """
    Σ_{x≤N} Σ_{m≤N/x} m^{2σ−2}
      = Σ_{x≤√N} P(⌊N/x⌋) + Σ_{m≤√N} ⌊N/m⌋ m^{2σ−2} − ⌊√N⌋ P(⌊√N⌋).
    """
    if N < 1:
        raise DomainError("N must be >= 1", N=N)
    prefix = harmonic_prefix(N, sigma)
    root = math.isqrt(N)
    k = np.arange(1, root + 1)
    first = prefix[N // k]
    second = (N // k) * k.astype(float) ** (2 * sigma - 2)
    return math.fsum(first) + math.fsum(second) - root * prefix[root]


def naive_double_sum(N: int, sigma: float) -> float:
    if N < 1:
        raise DomainError("N must be >= 1", N=N)
    parts = []
    for x in range(1, N + 1):
        parts.extend(np.arange(1, N // x + 1, dtype=float) ** (2 * sigma - 2))
    return math.fsum(parts)


def hyperbola_asymptotic(N: int, sigma: float) -> float:
    """N ζ(3−2σ); N π²/6 at σ = ½."""
    return float(N * riemann_zeta(3 - 2 * mp.mpf(sigma)).real)


def hyperbola_deviation(N: int, sigma: float, total: float = None) -> float:
    """(sum − Nζ(3−2σ))/N^σ."""
    if total is None:
        total = hyperbola_double_sum(N, sigma)
    return (total - hyperbola_asymptotic(N, sigma)) / N ** sigma
