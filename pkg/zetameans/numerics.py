"""
numerics.py — Special-function foundation for zetameans

PURPOSE:
Complex Gamma, digamma, the Riemann zeta function, the Fresnel-type
function Ψ and the complex upper incomplete gamma function, all evaluated
under an explicit NumericPolicy.

ENGINE:
mpmath is the arbitrary-precision engine. Every public operation runs under
`mp.workprec(policy.precision_bits)` and returns `mpmath.mpc` values
(ComplexValue). Operations are pure functions of their arguments and the
policy, so they may be called concurrently from worker processes.

BRANCHES:
Principal branch everywhere: complex powers w**p = exp(p·Log w) with
Arg w ∈ (−π, π].
"""

import logging
from dataclasses import asdict, dataclass, replace
from functools import lru_cache
from typing import Optional, Tuple, Union

import numpy as np
import mpmath
from mpmath import mp
from mpmath.libmp import NoConvergence

from .errors import ConvergenceError, DomainError, PoleError

logger = logging.getLogger(__name__)

ComplexValue = mpmath.mpc
Scalar = Union[int, float, complex, mpmath.mpf, mpmath.mpc]

INTEGER_TOL = 1e-12
MAX_BERNOULLI_TERMS = 400


# ═══════════════════════════════════════════════════════════════════════════
# POLICY
# ═══════════════════════════════════════════════════════════════════════════

@dataclass(frozen=True)
class NumericPolicy:
    """
    Working precision and tolerances shared by every numeric operation.

    precision_bits <= 53 selects the vectorized numpy engine for the
    α-quadratures of the oracle module; anything higher runs through mpmath.
    """
    precision_bits: int = 106
    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    max_subdivisions: int = 4096
    series_safety_factor: float = 2.0

    def __post_init__(self):
        if not 53 <= self.precision_bits <= 256:
            raise DomainError(
                "precision_bits must lie in [53, 256]",
                precision_bits=self.precision_bits,
            )
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise DomainError(
                "tolerances must be strictly positive",
                abs_tol=self.abs_tol,
                rel_tol=self.rel_tol,
            )
        if self.max_subdivisions < 16:
            raise DomainError(
                "max_subdivisions must be at least 16",
                max_subdivisions=self.max_subdivisions,
            )
        if self.series_safety_factor < 1:
            raise DomainError(
                "series_safety_factor must be >= 1",
                series_safety_factor=self.series_safety_factor,
            )

    @property
    def uses_fast_engine(self) -> bool:
        return self.precision_bits <= 53

    def workprec(self):
        return mp.workprec(self.precision_bits)

    def with_tolerance(self, tol: float) -> "NumericPolicy":
        return replace(self, abs_tol=tol, rel_tol=tol)

    def fast(self) -> "NumericPolicy":
        return replace(self, precision_bits=53)

    def to_dict(self) -> dict:
        return asdict(self)


def resolve_policy(policy: Optional[NumericPolicy]) -> NumericPolicy:
    if policy is not None:
        return policy
    from .config import default_policy

    return default_policy()


# ═══════════════════════════════════════════════════════════════════════════
# SCALAR HELPERS
# ═══════════════════════════════════════════════════════════════════════════

def to_mpc(z: Scalar) -> ComplexValue:
    return mp.mpc(z)


def nearest_integer(value) -> Tuple[int, float]:
    """Nearest integer to a real value and the distance to it."""
    n = int(mp.nint(value))
    return n, float(abs(value - n))


def is_integer(z: Scalar, tol: float = INTEGER_TOL) -> bool:
    z = to_mpc(z)
    if abs(z.imag) > tol:
        return False
    n, dist = nearest_integer(z.real)
    return dist <= tol * max(1.0, abs(n))


def is_nonpositive_integer(z: Scalar, tol: float = INTEGER_TOL) -> bool:
    z = to_mpc(z)
    return is_integer(z, tol) and int(mp.nint(z.real)) <= 0


def ensure_finite(value, what: str):
    parts = (mp.re(value), mp.im(value))
    if any(mp.isnan(p) or mp.isinf(p) for p in parts):
        raise ConvergenceError(f"{what} produced a non-finite value", value=str(value))
    return value


# ═══════════════════════════════════════════════════════════════════════════
# GAMMA FAMILY
# ═══════════════════════════════════════════════════════════════════════════

def gamma(z: Scalar, policy: Optional[NumericPolicy] = None) -> ComplexValue:
    """Γ(z); poles at 0, −1, −2, … raise PoleError."""
    policy = resolve_policy(policy)
    with policy.workprec():
        z = to_mpc(z)
        if is_nonpositive_integer(z):
            raise PoleError("Gamma has a pole at a non-positive integer", z=z)
        return ensure_finite(mp.gamma(z), "gamma")


def reciprocal_gamma(z: Scalar, policy: Optional[NumericPolicy] = None) -> ComplexValue:
    """1/Γ(z), entire; zero at the poles of Γ."""
    policy = resolve_policy(policy)
    with policy.workprec():
        return ensure_finite(mp.rgamma(to_mpc(z)), "rgamma")


def log_gamma(z: Scalar, policy: Optional[NumericPolicy] = None) -> ComplexValue:
    """Principal log Γ(z), continuous away from the negative real axis."""
    policy = resolve_policy(policy)
    with policy.workprec():
        z = to_mpc(z)
        if is_nonpositive_integer(z):
            raise PoleError("log-Gamma has a singularity at a non-positive integer", z=z)
        return ensure_finite(mp.loggamma(z), "loggamma")


def digamma(x, policy: Optional[NumericPolicy] = None) -> mpmath.mpf:
    """ψ(x) = Γ'(x)/Γ(x) for real x > 0."""
    policy = resolve_policy(policy)
    with policy.workprec():
        x = mp.mpf(x)
        if x <= 0:
            raise DomainError("digamma is restricted to x > 0", x=x)
        return ensure_finite(mp.digamma(x), "digamma")


def upper_incomplete_gamma(
    a: Scalar, z: Scalar, policy: Optional[NumericPolicy] = None
) -> ComplexValue:
    """
    Γ(a, z) = ∫_z^∞ w^{a−1} e^{−w} dw on the principal branch.
    Γ(a, 0) = Γ(a) for Re a > 0.
    """
    policy = resolve_policy(policy)
    with policy.workprec():
        a = to_mpc(a)
        z = to_mpc(z)
        if z == 0:
            if a.real <= 0:
                raise DomainError("Γ(a, 0) diverges for Re a <= 0", a=a)
            return gamma(a, policy)
        try:
            value = mp.gammainc(a, z, mp.inf)
        except NoConvergence as exc:
            raise ConvergenceError(
                "incomplete gamma evaluation did not converge", a=a, z=z, detail=str(exc)
            ) from exc
        return ensure_finite(value, "upper_incomplete_gamma")


# ═══════════════════════════════════════════════════════════════════════════
# EULER–MACLAURIN CORE
# ═══════════════════════════════════════════════════════════════════════════

@lru_cache(maxsize=None)
def bernoulli_ratio(j: int, prec: int) -> mpmath.mpf:
    """B_{2j}/(2j)! at the given precision."""
    with mp.workprec(prec + 20):
        return mp.bernoulli(2 * j) / mp.factorial(2 * j)


def bernoulli_ratios(count: int, prec: int = 106) -> Tuple[mpmath.mpf, ...]:
    return tuple(bernoulli_ratio(j, prec) for j in range(1, count + 1))


@lru_cache(maxsize=4)
def bernoulli_ratios_float(count: int) -> np.ndarray:
    return np.array([float(bernoulli_ratio(j, 64)) for j in range(1, count + 1)])


def euler_maclaurin_cutoff(s: Scalar, safety: float, precision_bits: int) -> float:
    """
    Evaluation point for the Euler–Maclaurin tail: the Bernoulli corrections
    decay like (|s|/2πw)^{2j} and bottom out near e^{−2πw}.
    """
    magnitude = float(abs(to_mpc(s)))
    return max(safety * (magnitude / (2 * np.pi) + 10), 0.12 * precision_bits + 4)


def euler_maclaurin_hurwitz(
    s: ComplexValue, alpha, skip: int, policy: NumericPolicy, prec: Optional[int] = None
) -> ComplexValue:
    """
    Σ_{n≥skip} (n+α)^{−s}, continued to s ≠ 1.
    Callers hold the working precision and have validated s and α; `prec`
    overrides the policy precision when the caller works above it.
    """
    prec = prec or policy.precision_bits
    base = alpha + skip
    target = euler_maclaurin_cutoff(s, policy.series_safety_factor, prec)
    n_direct = max(0, int(mp.ceil(target - base)))

    head = mp.fsum((base + k) ** (-s) for k in range(n_direct))
    w = base + n_direct
    tail = w ** (1 - s) / (s - 1) + w ** (-s) / 2

    eps = mp.mpf(2) ** (-prec)
    rising = s
    w_power = w ** (-s - 1)
    w_inv2 = w ** -2
    correction = mp.mpc(0)
    for j in range(1, MAX_BERNOULLI_TERMS + 1):
        term = bernoulli_ratio(j, prec) * rising * w_power
        correction += term
        scale = abs(head) + abs(tail) + abs(correction)
        if abs(term) <= eps * scale:
            logger.debug(f"Euler–Maclaurin: {n_direct} direct terms, {j} Bernoulli terms")
            break
        rising *= (s + 2 * j - 1) * (s + 2 * j)
        w_power *= w_inv2
    else:
        raise ConvergenceError(
            "Euler–Maclaurin corrections did not settle", s=s, alpha=alpha, skip=skip
        )
    return head + tail + correction


# ═══════════════════════════════════════════════════════════════════════════
# RIEMANN ZETA
# ═══════════════════════════════════════════════════════════════════════════

def riemann_zeta(s: Scalar, policy: Optional[NumericPolicy] = None) -> ComplexValue:
    """ζ(s) = ζ(s, 1) through Euler–Maclaurin; PoleError at s = 1."""
    policy = resolve_policy(policy)
    with policy.workprec():
        s = to_mpc(s)
        if s == 1:
            raise PoleError("Riemann zeta has a pole at s = 1")
        value = euler_maclaurin_hurwitz(s, mp.mpf(1), 0, policy)
        return ensure_finite(value, "riemann_zeta")


# ═══════════════════════════════════════════════════════════════════════════
# FRESNEL-TYPE Ψ
# ═══════════════════════════════════════════════════════════════════════════

def fresnel_psi_closed_form(eps, policy: Optional[NumericPolicy] = None) -> ComplexValue:
    """
    Ψ(ε) = 2e^{−iπε²}e^{−iπ/4}∫_ε^∞ e^{iπs²}ds
         = e^{−iπε²}·erfc(√π·e^{−iπ/4}·ε).
    """
    policy = resolve_policy(policy)
    with policy.workprec():
        eps = mp.mpf(eps)
        if eps < 0:
            raise DomainError("Ψ is defined for ε >= 0", eps=eps)
        rotation = mp.expjpi(mp.mpf(-1) / 4)
        value = mp.expjpi(-eps ** 2) * mp.erfc(mp.sqrt(mp.pi) * rotation * eps)
        return ensure_finite(value, "fresnel_psi_closed_form")


def fresnel_psi(
    eps, policy: Optional[NumericPolicy] = None, check: bool = True
) -> ComplexValue:
    """
    Ψ(ε) = 2e^{−iπ/4}∫₀^∞ e^{iπs²}e^{2πisε}ds.

    The ray is rotated to s = r·e^{iπ/4}, where the integrand becomes
    exp(−πr² + 2πiε·e^{iπ/4}r) and decays like a Gaussian. With check=True
    the erfc spelling of the first form must agree to 10·abs_tol.
    """
    policy = resolve_policy(policy)
    with policy.workprec():
        eps = mp.mpf(eps)
        if eps < 0:
            raise DomainError("Ψ is defined for ε >= 0", eps=eps)
        phase = 2j * mp.pi * eps * mp.expjpi(mp.mpf(1) / 4)
        integrand = lambda r: mp.exp(-mp.pi * r * r + phase * r)
        # Gaussian width ~ 1/√π; splitting keeps the quadrature near the mass.
        value = 2 * mp.quad(integrand, [0, 1, 3, mp.inf])
        value = ensure_finite(value, "fresnel_psi")
        if check:
            other = fresnel_psi_closed_form(eps, policy)
            if abs(value - other) > 10 * policy.abs_tol:
                raise ConvergenceError(
                    "the two Ψ representations disagree",
                    eps=eps,
                    difference=abs(value - other),
                )
        return value
