"""
hurwitz.py — Hurwitz zeta, modified Hurwitz zeta and the kernel K(s)

CONVENTIONS:
  ζ(s, α)    = Σ_{n≥0} (n+α)^{−s}, continued to s ≠ 1
  ζ_x(s, α)  = Σ_{n≥x} (n+α)^{−s} for x ≥ 1, and ζ_0 = ζ(s, α)
  K(s)       = (−2πi)^{s−1} Γ(1−s),  log(−2πi) = ln 2π − iπ/2

Cell geometry: for an integer x ≥ 1 and t > 0 the cell parameter is
y = t/(2πx); [y] is the nearest integer (ties to even), ‖y‖ = |y − [y]|
and the offset a = ([y] − y)/y.
"""

import logging
import math
from dataclasses import asdict, dataclass
from typing import List, Optional

import numpy as np
from mpmath import mp

from .errors import ConvergenceError, DomainError, PoleError
from .numerics import (
    ComplexValue,
    NumericPolicy,
    Scalar,
    bernoulli_ratios_float,
    ensure_finite,
    euler_maclaurin_cutoff,
    euler_maclaurin_hurwitz,
    is_integer,
    log_gamma,
    resolve_policy,
    to_mpc,
)

logger = logging.getLogger(__name__)


# ═══════════════════════════════════════════════════════════════════════════
# GEOMETRY
# ═══════════════════════════════════════════════════════════════════════════

@dataclass(frozen=True)
class StripPoint:
    """s = σ + it with t > 1."""
    sigma: float
    t: float

    def __post_init__(self):
        if not self.t > 1:
            raise DomainError("StripPoint requires t > 1", t=self.t)

    @property
    def s(self) -> ComplexValue:
        return mp.mpc(self.sigma, self.t)

    def conjugate(self) -> ComplexValue:
        return mp.mpc(self.sigma, -self.t)

    def require_critical_strip(self) -> None:
        if not 0 < self.sigma < 1:
            raise DomainError("σ must lie in (0, 1)", sigma=self.sigma)

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class CellCoords:
    x: int
    y: float
    nearest: int
    dist: float
    offset: float

    def in_A(self, eta: float) -> bool:
        return self.dist < eta

    def to_dict(self) -> dict:
        return asdict(self)


def cell_coords(t: float, x: int) -> CellCoords:
    if x < 1:
        raise DomainError("cell index x must be >= 1", x=x)
    y = t / (2 * math.pi * x)
    nearest = round(y)
    return CellCoords(
        x=x,
        y=y,
        nearest=nearest,
        dist=abs(y - nearest),
        offset=(nearest - y) / y,
    )


# ═══════════════════════════════════════════════════════════════════════════
# POCHHAMMER
# ═══════════════════════════════════════════════════════════════════════════

def pochhammer(s: Scalar, n: int) -> ComplexValue:
    """(s)_n = Γ(s+n)/Γ(s) as a product; n < 0 uses 1/((s−1)(s−2)…(s+n))."""
    s = to_mpc(s)
    value = mp.mpc(1)
    if n >= 0:
        for k in range(n):
            value *= s + k
        return value
    for k in range(1, -n + 1):
        factor = s - k
        if factor == 0:
            raise PoleError("Pochhammer quotient is singular", s=s, n=n)
        value /= factor
    return value


# ═══════════════════════════════════════════════════════════════════════════
# HURWITZ ZETA
# ═══════════════════════════════════════════════════════════════════════════

def _check_args(s: ComplexValue, alpha, x: int = 0) -> None:
    if s == 1:
        raise PoleError("Hurwitz zeta has a pole at s = 1")
    if alpha <= 0:
        raise DomainError("Hurwitz zeta needs α > 0", alpha=alpha)
    if x < 0:
        raise DomainError("modified Hurwitz zeta needs x >= 0", x=x)


def hurwitz_zeta(s: Scalar, alpha, policy: Optional[NumericPolicy] = None) -> ComplexValue:
    return modified_hurwitz_zeta(s, alpha, 0, policy)


def modified_hurwitz_zeta(
    s: Scalar, alpha, x: int, policy: Optional[NumericPolicy] = None
) -> ComplexValue:
    """ζ_x(s, α) = Σ_{n≥x}(n+α)^{−s}; x = 0 gives ζ(s, α)."""
    policy = resolve_policy(policy)
    with policy.workprec():
        s = to_mpc(s)
        alpha = mp.mpf(alpha)
        _check_args(s, alpha, x)
        value = euler_maclaurin_hurwitz(s, alpha, int(x), policy)
        return ensure_finite(value, "modified_hurwitz_zeta")


def hurwitz_remainder(s: Scalar, alpha, policy: Optional[NumericPolicy] = None) -> ComplexValue:
    """ζ_1(s, α) − α^{1−s}/(s−1) + α^{−s}/2."""
    policy = resolve_policy(policy)
    with policy.workprec():
        s = to_mpc(s)
        alpha = mp.mpf(alpha)
        zeta_1 = modified_hurwitz_zeta(s, alpha, 1, policy)
        return zeta_1 - alpha ** (1 - s) / (s - 1) + alpha ** (-s) / 2


class HurwitzPrefixSums:
    """
    ζ_x(s, α) for many x at fixed (s, α): ζ(s, α) once, then the partial
    sums Σ_{n<x}(n+α)^{−s} extended incrementally.
    """

    def __init__(self, s: Scalar, alpha, policy: Optional[NumericPolicy] = None):
        self.policy = resolve_policy(policy)
        with self.policy.workprec():
            self.s = to_mpc(s)
            self.alpha = mp.mpf(alpha)
            self.full = hurwitz_zeta(self.s, self.alpha, self.policy)
            self._partials: List[ComplexValue] = [mp.mpc(0)]

    def partial(self, x: int) -> ComplexValue:
        with self.policy.workprec():
            while len(self._partials) <= x:
                n = len(self._partials) - 1
                self._partials.append(self._partials[-1] + (n + self.alpha) ** (-self.s))
            return self._partials[x]

    def modified(self, x: int) -> ComplexValue:
        if x < 0:
            raise DomainError("modified Hurwitz zeta needs x >= 0", x=x)
        with self.policy.workprec():
            return self.full - self.partial(x)


# ─── vectorized 53-bit path ─────────────────────────────────────────────────

ARRAY_BERNOULLI_TERMS = 60
ARRAY_SERIES_TOL = 1e-14


def _real_power(base: np.ndarray, exponent: complex) -> np.ndarray:
    return np.exp(exponent * np.log(base))


def modified_hurwitz_zeta_array(
    s: complex, alphas: np.ndarray, x: int, safety: float = 2.0
) -> np.ndarray:
    """
    ζ_x(s, α) over an array of α > 0 in double precision.
    Same Euler–Maclaurin scheme as the scalar path with one shared
    direct-sum length for the whole array.
    """
    s = complex(s)
    if s == 1:
        raise PoleError("Hurwitz zeta has a pole at s = 1")
    alphas = np.asarray(alphas, dtype=float)
    if alphas.size == 0:
        return np.zeros(0, dtype=complex)
    if np.any(alphas <= 0):
        raise DomainError("Hurwitz zeta needs α > 0")

    base = alphas + x
    target = euler_maclaurin_cutoff(s, safety, 53)
    n_direct = max(0, int(math.ceil(target - float(base.min()))))

    if n_direct:
        shifts = np.arange(n_direct, dtype=float)
        head = _real_power(shifts[:, None] + base[None, :], -s).sum(axis=0)
    else:
        head = np.zeros(base.shape, dtype=complex)

    w = base + n_direct
    log_w = np.log(w)
    total = head + np.exp((1 - s) * log_w) / (s - 1) + 0.5 * np.exp(-s * log_w)

    ratios = bernoulli_ratios_float(ARRAY_BERNOULLI_TERMS)
    rising = s
    w_power = np.exp((-s - 1) * log_w)
    w_inv2 = w ** -2.0
    for j, ratio in enumerate(ratios, start=1):
        term = ratio * rising * w_power
        total = total + term
        last = np.max(np.abs(term))
        if last <= 1e-17 * np.max(np.abs(total)):
            break
        rising *= (s + 2 * j - 1) * (s + 2 * j)
        w_power = w_power * w_inv2
    else:
        if last > ARRAY_SERIES_TOL * np.max(np.abs(total)):
            raise ConvergenceError(
                "float Euler–Maclaurin tail did not settle; use the mp engine",
                s=s,
                x=x,
                last_term=float(last),
                terms=ARRAY_BERNOULLI_TERMS,
            )
    return total


# ═══════════════════════════════════════════════════════════════════════════
# KERNEL
# ═══════════════════════════════════════════════════════════════════════════

def kernel_K(s: Scalar, policy: Optional[NumericPolicy] = None) -> ComplexValue:
    """K(s) = (−2πi)^{s−1}Γ(1−s); both spellings (−2πi, 2π/i) are this one."""
    policy = resolve_policy(policy)
    with policy.workprec():
        s = to_mpc(s)
        if is_integer(s) and s.real >= 1:
            raise PoleError("K(s) has poles at s = 1, 2, 3, ...", s=s)
        log_base = mp.log(2 * mp.pi) - 1j * mp.pi / 2
        value = mp.exp((s - 1) * log_base + log_gamma(1 - s, policy))
        return ensure_finite(value, "kernel_K")
