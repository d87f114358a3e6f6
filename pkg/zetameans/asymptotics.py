"""
asymptotics.py — Estimators for J_x, I_x and the large-interval mean

PURPOSE:
Every closed or asymptotic formula the harness compares against the oracle
module:

  • theorem1_Jx      exact identity for J_x(u,v) with finite N
  • corollary1_Jx    N → ∞ version (two infinite n-series)
  • corollary2_Ix    I_x(s) off the critical line, error x^{2−2σ}/t
  • corollary3_Ix    I_x(½+it), error x/t
  • theorem2_Ix      stationary-phase main term plus the Fresnel boundary
                     correction for cells with ‖y‖ < η
  • theorem3_mean    leading term of ∫₀^{t/2π}|ζ_1|²
  • reconciliation_identities   functional-equation and tail-sum checks

T_N:
T_N(u,v;x) = (u)_N/(1−v)_N · ∫₀^x α^{N−v} ζ_1(u+N,α) dα
           = (u)_N x^{N+1−v}/(1−v)_N · Σ_{l≥1} l^{1−u−v} ∫_l^∞ β^{u+v−2}(x+β)^{−u−N} dβ.
The l-sum decays only like l^{−Re u−N}, so for l ≥ L = max(4, 4x) the
inner integral is expanded binomially in x/β and summed against Hurwitz
zeta values. The binomial series cancels from a size of roughly
e^{|b|x/L}; working precision is raised by that many bits while it runs.

Every estimator returns an EstimateReport whose predicted_error_scale is
the literal error term evaluated at the inputs (constant 1).
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional, Tuple

from mpmath import mp

from .errors import (
    ConvergenceError,
    DegenerateSigmaError,
    DomainError,
    ExcludedSetError,
    PoleError,
    StripConditionError,
)
from .hurwitz import (
    StripPoint,
    cell_coords,
    kernel_K,
    modified_hurwitz_zeta,
    pochhammer,
)
from .meansq_oracle import oscillatory_tail_integral, zeta_head_integral
from .numerics import (
    ComplexValue,
    NumericPolicy,
    Scalar,
    euler_maclaurin_hurwitz,
    fresnel_psi,
    fresnel_psi_closed_form,
    gamma,
    is_integer,
    reciprocal_gamma,
    resolve_policy,
    riemann_zeta,
    to_mpc,
)
from .quadrature import mp_quadrature, panel_edges

logger = logging.getLogger(__name__)

EXCLUSION_TOL = 1e-12
BINOMIAL_TERM_BUDGET = 2000
SERIES_TERM_BUDGET = 10_000


# ═══════════════════════════════════════════════════════════════════════════
# REPORT TYPES
# ═══════════════════════════════════════════════════════════════════════════

@dataclass
class EstimateReport:
    value: ComplexValue
    predicted_error_scale: float
    terms_used: int = 0
    branch_notes: str = ""
    components: Dict[str, float] = field(default_factory=dict)

    def to_dict(self) -> dict:
        value = complex(self.value)
        return {
            "value": [value.real, value.imag],
            "predicted_error_scale": float(self.predicted_error_scale),
            "terms_used": self.terms_used,
            "branch_notes": self.branch_notes,
            "components": {k: float(v) for k, v in self.components.items()},
        }


@dataclass(frozen=True)
class ExceptionalFlag:
    in_a: bool
    eta: float

    def to_dict(self) -> dict:
        return {"in_a": self.in_a, "eta": self.eta}


@dataclass
class ReconciliationReport:
    sigma: float
    t: float
    eta: float
    tail_start: float
    functional_lhs: float
    functional_rhs: float
    functional_residual: float
    tail_identity: float
    tail_oracle: float
    tail_residual: float
    expansion: float
    expansion_oracle: float
    expansion_residual: float
    expansion_scale: float
    stirling_difference: float
    stirling_scaled: float

    def to_dict(self) -> dict:
        return dict(self.__dict__)


# ═══════════════════════════════════════════════════════════════════════════
# PARAMETER CHECKS
# ═══════════════════════════════════════════════════════════════════════════

def epsilon_x(x: int) -> float:
    return x / (x + 1)


def decay_envelope(u: Scalar, v: Scalar, x: int, N: int) -> float:
    """N^{Re(u+v)−1} ε_x^N."""
    exponent = float(to_mpc(u).real + to_mpc(v).real) - 1
    return N ** exponent * epsilon_x(x) ** N


def in_excluded_set(u: Scalar, v: Scalar, tol: float = EXCLUSION_TOL) -> bool:
    """E: u + v ∈ {2, 1, 0, −1, …} or u ∈ ℤ or v ∈ ℤ."""
    u, v = to_mpc(u), to_mpc(v)
    if is_integer(u, tol) or is_integer(v, tol):
        return True
    w = u + v
    return is_integer(w, tol) and int(mp.nint(w.real)) <= 2


def exceptional_flag(t: float, x: int, eta: float) -> ExceptionalFlag:
    if not 0 < eta < 0.5:
        raise DomainError("η must lie in (0, 1/2)", eta=eta)
    return ExceptionalFlag(in_a=cell_coords(t, x).in_A(eta), eta=eta)


def _check_strip(u: ComplexValue, v: ComplexValue, N: int) -> None:
    if N < 1:
        raise DomainError("N must be >= 1", N=N)
    for name, w in (("u", u), ("v", v)):
        if not -N + 1 < w.real < N + 1:
            raise StripConditionError(
                f"Re {name} must lie in (−N+1, N+1)", N=N, value=w
            )


def _check_theorem(u: ComplexValue, v: ComplexValue, N: int) -> None:
    if in_excluded_set(u, v):
        raise ExcludedSetError("(u, v) lies in the excluded set", u=u, v=v)
    _check_strip(u, v, N)


# ═══════════════════════════════════════════════════════════════════════════
# S_N
# ═══════════════════════════════════════════════════════════════════════════

def S_N_term(
    u: Scalar, v: Scalar, x: int, n: int, policy: Optional[NumericPolicy] = None
) -> ComplexValue:
    """(u)_n x^{n+1−v}/(1−v)_{n+1} · ζ_x(u+n, 1)."""
    policy = resolve_policy(policy)
    with policy.workprec():
        u, v = to_mpc(u), to_mpc(v)
        if u + n == 1:
            raise PoleError("ζ_x(u+n, 1) has a pole at u + n = 1", u=u, n=n)
        denominator = pochhammer(1 - v, n + 1)
        if denominator == 0:
            raise PoleError("(1−v)_{n+1} vanishes", v=v, n=n)
        return (
            pochhammer(u, n) * mp.mpf(x) ** (n + 1 - v) / denominator
            * modified_hurwitz_zeta(u + n, 1, x, policy)
        )


def S_N(
    u: Scalar, v: Scalar, x: int, N: int, policy: Optional[NumericPolicy] = None
) -> ComplexValue:
    policy = resolve_policy(policy)
    with policy.workprec():
        return mp.fsum(S_N_term(u, v, x, n, policy) for n in range(N))


# ═══════════════════════════════════════════════════════════════════════════
# LATTICE INTEGRAL SUMS (T_N machinery)
# ═══════════════════════════════════════════════════════════════════════════

def _split_point(x: int) -> int:
    return max(4, int(math.ceil(4 * x)))


def _series_boost(b: ComplexValue, x: int, L: int) -> int:
    return int(math.ceil(float(abs(b)) * x / L / math.log(2))) + 10


def _binomial_series(
    b: ComplexValue, x: int, weight: Callable[[int], ComplexValue], prec: int, kmin: int
) -> Tuple[ComplexValue, int]:
    """Σ_k binom(−b, k) x^k weight(k), stopped 2^{−prec} below its largest term."""
    total = mp.mpc(0)
    coefficient = mp.mpc(1)
    peak = mp.mpf(0)
    threshold = mp.mpf(2) ** (-prec)
    for k in range(BINOMIAL_TERM_BUDGET):
        term = coefficient * weight(k)
        total += term
        peak = max(peak, abs(term))
        if k >= kmin and abs(term) <= threshold * peak:
            return total, k + 1
        coefficient *= (-b - k) / (k + 1) * x
    raise ConvergenceError("binomial lattice series exceeded its term budget", b=b, x=x)


def _hurwitz_at(s: ComplexValue, L: int, policy: NumericPolicy, prec: int) -> ComplexValue:
    if s == 1:
        raise PoleError("Hurwitz zeta pole inside the lattice series")
    return euler_maclaurin_hurwitz(s, mp.mpf(L), 0, policy, prec)


def _unit_piece(a: ComplexValue, b: ComplexValue, x: int, j: int, policy: NumericPolicy):
    """∫_j^{j+1} β^a (x+β)^{−b} dβ."""
    frequency = (abs(float(a.imag)) / j + abs(float(b.imag)) / (x + j)) / (2 * math.pi)
    panels = max(1, int(math.ceil(8 * frequency)))
    points = [j + mp.mpf(e) for e in panel_edges(0, 1, panels)]
    return mp_quadrature(lambda beta: beta ** a * (x + beta) ** (-b), points, policy).value


def lattice_integral_sum(
    c: Scalar, a: Scalar, b: Scalar, x: int, policy: Optional[NumericPolicy] = None
) -> ComplexValue:
    """
    G(c, a, b) = Σ_{l≥1} l^c ∫_l^∞ β^a (x+β)^{−b} dβ.

    l < L: unit-interval quadratures accumulated from the top down.
    l ≥ L: Σ_k binom(−b,k) x^k ζ(b+k−a−1−c, L)/(b+k−a−1).
    """
    policy = resolve_policy(policy)
    L = _split_point(x)
    with policy.workprec():
        c, a, b = to_mpc(c), to_mpc(a), to_mpc(b)
        pieces = [_unit_piece(a, b, x, j, policy) for j in range(1, L)]

    prec = policy.precision_bits + _series_boost(b, x, L)
    kmin = int(math.ceil(float(abs(b)) * x / L)) + 2
    with mp.workprec(prec):
        shift = b - a - 1
        far, _ = _binomial_series(
            b, x, lambda k: mp.mpf(L) ** (-(shift + k)) / (shift + k), prec, kmin
        )
        tail, terms = _binomial_series(
            b, x, lambda k: _hurwitz_at(shift + k - c, L, policy, prec) / (shift + k), prec, kmin
        )
        head = mp.mpc(0)
        running = far
        for l in range(L - 1, 0, -1):
            running += pieces[l - 1]
            head += mp.mpf(l) ** c * running
        logger.debug(f"lattice_integral_sum: L={L} binomial terms={terms} prec={prec}")
        return head + tail


def lattice_power_sum(
    p: Scalar, q: Scalar, x: int, policy: Optional[NumericPolicy] = None
) -> ComplexValue:
    """H(p, q) = Σ_{l≥1} l^{−p}(x+l)^{−q}."""
    policy = resolve_policy(policy)
    L = _split_point(x)
    with policy.workprec():
        p, q = to_mpc(p), to_mpc(q)
        direct = mp.fsum(mp.mpf(l) ** (-p) * (x + mp.mpf(l)) ** (-q) for l in range(1, L))
    prec = policy.precision_bits + _series_boost(q, x, L)
    kmin = int(math.ceil(float(abs(q)) * x / L)) + 2
    with mp.workprec(prec):
        tail, _ = _binomial_series(q, x, lambda k: _hurwitz_at(p + q + k, L, policy, prec), prec, kmin)
        return direct + tail


# ═══════════════════════════════════════════════════════════════════════════
# T_N
# ═══════════════════════════════════════════════════════════════════════════

def T_N_integral(
    u: Scalar, v: Scalar, x: int, N: int, policy: Optional[NumericPolicy] = None
) -> ComplexValue:
    """(u)_N x^{N+1−v}/(1−v)_N · Σ_l l^{1−u−v}∫_l^∞ β^{u+v−2}(x+β)^{−u−N}dβ."""
    policy = resolve_policy(policy)
    with policy.workprec():
        u, v = to_mpc(u), to_mpc(v)
        _check_theorem(u, v, N)
        prefactor = pochhammer(u, N) * mp.mpf(x) ** (N + 1 - v) / pochhammer(1 - v, N)
        return prefactor * lattice_integral_sum(1 - u - v, u + v - 2, u + N, x, policy)


def T_N_alpha_form(
    u: Scalar, v: Scalar, x: int, N: int, policy: Optional[NumericPolicy] = None
) -> ComplexValue:
    """(u)_N/(1−v)_N · ∫₀^x α^{N−v} ζ_1(u+N, α) dα."""
    policy = resolve_policy(policy)
    with policy.workprec():
        u, v = to_mpc(u), to_mpc(v)
        _check_theorem(u, v, N)
        prefactor = pochhammer(u, N) / pochhammer(1 - v, N)
        return prefactor * zeta_head_integral(u + N, v - N, x, policy)


def _expanded_parts(u, v, x, N, M, policy):
    w = u + v
    denominator = pochhammer(1 - v, N)
    terms = []
    for m in range(1, M + 1):
        coefficient = (-1) ** (m - 1) * pochhammer(2 - w, m - 1) * pochhammer(u, N - m) / denominator
        terms.append(coefficient * lattice_power_sum(m, u + N - m, x, policy))
    remainder_coefficient = (-1) ** M * pochhammer(2 - w, M) * pochhammer(u, N - M) / denominator
    remainder = remainder_coefficient * lattice_integral_sum(1 - w, w - M - 2, u + N - M, x, policy)
    scale = mp.mpf(x) ** (N + 1 - v)
    return scale * mp.fsum(terms), scale * remainder


def T_N_expanded(
    u: Scalar, v: Scalar, x: int, N: int, M: int, policy: Optional[NumericPolicy] = None
) -> ComplexValue:
    """
    x^{N+1−v}[Σ_{m=1}^M (−1)^{m−1}(2−u−v)_{m−1}(u)_{N−m}/(1−v)_N · Σ_l l^{−m}(x+l)^{−u−N+m}
              + (−1)^M (2−u−v)_M (u)_{N−M}/(1−v)_N · Σ_l l^{1−u−v}∫_l^∞β^{u+v−M−2}(x+β)^{−u−N+M}dβ]
    M = 0 is T_N_integral.
    """
    policy = resolve_policy(policy)
    if M < 0:
        raise DomainError("M must be >= 0", M=M)
    with policy.workprec():
        u, v = to_mpc(u), to_mpc(v)
        _check_theorem(u, v, N)
        main, remainder = _expanded_parts(u, v, x, N, M, policy)
        return main + remainder


def T_N_expanded_remainder(
    u: Scalar, v: Scalar, x: int, N: int, M: int, policy: Optional[NumericPolicy] = None
) -> ComplexValue:
    """The remainder integral term of T_N_expanded alone."""
    policy = resolve_policy(policy)
    with policy.workprec():
        u, v = to_mpc(u), to_mpc(v)
        _check_theorem(u, v, N)
        return _expanded_parts(u, v, x, N, M, policy)[1]


# ═══════════════════════════════════════════════════════════════════════════
# EXACT J_x IDENTITY AND ITS N → ∞ LIMIT
# ═══════════════════════════════════════════════════════════════════════════

def _exact_part(u: ComplexValue, v: ComplexValue, x: int, policy: NumericPolicy) -> ComplexValue:
    """x^{1−u−v}/(u+v−1) + [Γ(1−u)/Γ(v) + Γ(1−v)/Γ(u)]Γ(u+v−1)ζ(u+v−1)."""
    w = u + v
    head = mp.mpf(x) ** (1 - w) / (w - 1)
    ratios = (
        gamma(1 - u, policy) * reciprocal_gamma(v, policy)
        + gamma(1 - v, policy) * reciprocal_gamma(u, policy)
    )
    return head + ratios * gamma(w - 1, policy) * riemann_zeta(w - 1, policy)


def theorem1_Jx(
    u: Scalar, v: Scalar, x: int, N: int, policy: Optional[NumericPolicy] = None
) -> EstimateReport:
    policy = resolve_policy(policy)
    with policy.workprec():
        u, v = to_mpc(u), to_mpc(v)
        _check_theorem(u, v, N)
        value = (
            _exact_part(u, v, x, policy)
            - S_N(u, v, x, N, policy)
            - S_N(v, u, x, N, policy)
            - T_N_integral(u, v, x, N, policy)
            - T_N_integral(v, u, x, N, policy)
        )
    logger.debug(f"theorem1_Jx: u={u} v={v} x={x} N={N}")
    return EstimateReport(
        value=value,
        predicted_error_scale=max(policy.abs_tol, policy.rel_tol * float(abs(value))),
        terms_used=N,
        branch_notes="exact identity; principal branches",
    )


def corollary1_Jx(
    u: Scalar, v: Scalar, x: int, policy: Optional[NumericPolicy] = None
) -> EstimateReport:
    """
    theorem1_Jx with N → ∞. The n-th pair of S-terms is bounded by
    C·n^{Re(u+v)−1}ε_x^n; C is the largest ratio term/envelope over the
    last three terms, and summation stops once C·envelope/(1−ε_x) is
    below a hundredth of the tolerance.
    """
    policy = resolve_policy(policy)
    with policy.workprec():
        u, v = to_mpc(u), to_mpc(v)
        if in_excluded_set(u, v):
            raise ExcludedSetError("(u, v) lies in the excluded set", u=u, v=v)
        eps_x = epsilon_x(x)
        target = 0.01 * policy.abs_tol
        terms = []
        recent = []
        for n in range(SERIES_TERM_BUDGET):
            pair = S_N_term(u, v, x, n, policy) + S_N_term(v, u, x, n, policy)
            terms.append(pair)
            if n == 0:
                continue
            envelope = decay_envelope(u, v, x, n)
            recent = (recent + [float(abs(pair)) / envelope])[-3:]
            if len(recent) == 3 and max(recent) * envelope / (1 - eps_x) <= target:
                break
        else:
            raise ConvergenceError("the S-term series did not converge", u=u, v=v, x=x)
        value = _exact_part(u, v, x, policy) - mp.fsum(terms)
    return EstimateReport(
        value=value,
        predicted_error_scale=policy.abs_tol,
        terms_used=len(terms),
        branch_notes=f"series truncated at n={len(terms) - 1}",
    )


# ═══════════════════════════════════════════════════════════════════════════
# I_x ESTIMATORS
# ═══════════════════════════════════════════════════════════════════════════

def corollary2_Ix(
    sp: StripPoint, x: int, N: int, policy: Optional[NumericPolicy] = None
) -> EstimateReport:
    """
    x^{1−2σ}/(2σ−1) + 2Γ(2σ−1)ζ(2σ−1)Re[Γ(1−σ+it)/Γ(σ+it)] − 2Re S_N(s, s̄; x).
    """
    policy = resolve_policy(policy)
    sigma, t = sp.sigma, sp.t
    shift = 2 * sigma - 1
    if is_integer(shift) and round(shift) <= 1:
        raise DegenerateSigmaError(
            "2σ−1 lies in {1, 0, −1, ...}; use corollary3_Ix on the critical line",
            sigma=sigma,
        )
    if not -N + 1 < sigma < N + 1:
        raise StripConditionError("σ must lie in (−N+1, N+1)", sigma=sigma, N=N)

    with policy.workprec():
        s, s_bar = sp.s, sp.conjugate()
        shift = mp.mpf(shift)
        head = mp.mpf(x) ** (-shift) / shift
        ratio = gamma(1 - s_bar, policy) * reciprocal_gamma(s, policy)
        middle = 2 * gamma(shift, policy) * riemann_zeta(shift, policy) * ratio.real
        value = head + middle - 2 * S_N(s, s_bar, x, N, policy).real
        scale = mp.mpf(x) ** (2 - 2 * mp.mpf(sigma)) / t
    return EstimateReport(
        value=mp.mpc(value.real),
        predicted_error_scale=float(scale),
        terms_used=N,
        branch_notes="T_N terms dropped",
    )


def corollary3_Ix(t: float, x: int, policy: Optional[NumericPolicy] = None) -> EstimateReport:
    """log y + γ − 2Re[x^s ζ_x(s,1)/s] at s = ½ + it."""
    policy = resolve_policy(policy)
    if t <= 1:
        raise DomainError("t must exceed 1", t=t)
    with policy.workprec():
        s = mp.mpc(0.5, t)
        y = mp.mpf(t) / (2 * mp.pi * x)
        zeta_x = modified_hurwitz_zeta(s, 1, x, policy)
        value = mp.log(y) + mp.euler - 2 * (mp.mpf(x) ** s * zeta_x / s).real
    return EstimateReport(
        value=mp.mpc(value),
        predicted_error_scale=x / t,
        terms_used=1,
        branch_notes="critical line",
    )


def corollary3_from_riemann(t: float, policy: Optional[NumericPolicy] = None) -> ComplexValue:
    """log(t/2π) + γ − 2Re[ζ(½+it)/(½+it)]: the x = 1 case spelled with ζ(s)."""
    policy = resolve_policy(policy)
    with policy.workprec():
        s = mp.mpc(0.5, t)
        value = mp.log(mp.mpf(t) / (2 * mp.pi)) + mp.euler - 2 * (riemann_zeta(s, policy) / s).real
        return mp.mpc(value)


# ═══════════════════════════════════════════════════════════════════════════
# BOUNDARY LAYER 𝓔(t, a)
# ═══════════════════════════════════════════════════════════════════════════

def _check_offset(a) -> None:
    if a <= -1:
        raise DomainError("𝓔(t, a) needs a > −1", a=a)


def script_E_integral_form(t: float, a: float, policy: Optional[NumericPolicy] = None) -> ComplexValue:
    """
    H(−a) + e^{ita−iπ/4} sgn(a) (1+a)^{−it} ∫₀^∞ e^{iπτ²} e^{2πiτ√(t/2π)|a|} dτ,
    the τ-integral evaluated on the rotated ray τ = r·e^{iπ/4}.
    """
    policy = resolve_policy(policy)
    _check_offset(a)
    with policy.workprec():
        if a == 0:
            return mp.mpc(0.5)
        t, a = mp.mpf(t), mp.mpf(a)
        eps = mp.sqrt(t / (2 * mp.pi)) * abs(a)
        # ∫₀^∞ e^{iπτ²}e^{2πiτε}dτ = e^{iπ/4}·Ψ(ε)/2
        integral = mp.expjpi(mp.mpf(1) / 4) * fresnel_psi(eps, policy, check=False) / 2
        heaviside = 1 if a < 0 else 0
        sign = 1 if a > 0 else -1
        phase = mp.exp(1j * t * a - 1j * mp.pi / 4) * (1 + a) ** (-1j * t)
        return heaviside + sign * phase * integral


def script_E(
    t: float, a: float, policy: Optional[NumericPolicy] = None, check: bool = True
) -> ComplexValue:
    """
    𝓔(t, 0) = ½ and 𝓔(t, a) = H(−a) + sgn(a)·e^{ith(a)}/2·Ψ(√(t/2π)|a|),
    h(a) = a − log(1+a). With check the integral spelling must agree to
    10·abs_tol.
    """
    policy = resolve_policy(policy)
    _check_offset(a)
    with policy.workprec():
        if a == 0:
            return mp.mpc(0.5)
        t_mp, a_mp = mp.mpf(t), mp.mpf(a)
        eps = mp.sqrt(t_mp / (2 * mp.pi)) * abs(a_mp)
        h = a_mp - mp.log(1 + a_mp)
        heaviside = 1 if a < 0 else 0
        sign = 1 if a > 0 else -1
        value = heaviside + sign * mp.exp(1j * t_mp * h) / 2 * fresnel_psi_closed_form(eps, policy)
        if check:
            other = script_E_integral_form(t, a, policy)
            if abs(value - other) > 10 * policy.abs_tol:
                raise ConvergenceError(
                    "the two 𝓔(t, a) spellings disagree", t=t, a=a, difference=abs(value - other)
                )
        return mp.mpc(value)


# ═══════════════════════════════════════════════════════════════════════════
# STATIONARY-PHASE ESTIMATE AND LARGE-INTERVAL MEAN
# ═══════════════════════════════════════════════════════════════════════════

def main_sum_count(y: float, eta: float) -> int:
    """Number of m ≥ 1 with m < y − η; m within 10⁻¹²·y of y − η is left out."""
    bound = y - eta
    return max(0, int(math.ceil(bound - 1e-12 * y)) - 1)


def fresnel_band_term(sp: StripPoint, x: int, policy: Optional[NumericPolicy] = None):
    """|∫_x^∞ β^{−s}e^{2πimβ}dβ|² at m = [y], the Fourier term the correction models."""
    policy = resolve_policy(policy)
    coords = cell_coords(sp.t, x)
    if coords.nearest < 1:
        raise DomainError("[y] must be >= 1", y=coords.y)
    with policy.workprec():
        value = oscillatory_tail_integral(sp.s, coords.nearest, x, policy, cross_check=False)
        return abs(value) ** 2


def theorem2_Ix(
    sp: StripPoint,
    x: int,
    eta: float,
    correction_factor: float = 0.25,
    policy: Optional[NumericPolicy] = None,
) -> EstimateReport:
    """
    |K(s)|² Σ_{m<y−η} m^{2σ−2}, plus for ‖y‖ < η
    correction_factor·(t/2π)^{1−2σ}[y]^{2σ−2}|𝓔(t, ([y]−y)/y)|².
    """
    policy = resolve_policy(policy)
    sp.require_critical_strip()
    if not 0 < eta < 0.5:
        raise DomainError("η must lie in (0, 1/2)", eta=eta)
    if x < 1 or x > sp.t / (2 * math.pi):
        raise DomainError("x must satisfy 1 <= x <= t/2π", x=x, t=sp.t)

    coords = cell_coords(sp.t, x)
    count = main_sum_count(coords.y, eta)
    with policy.workprec():
        sigma, t = mp.mpf(sp.sigma), mp.mpf(sp.t)
        exponent = 2 * sigma - 2
        kernel_sq = abs(kernel_K(sp.s, policy)) ** 2
        main = kernel_sq * mp.fsum(mp.mpf(m) ** exponent for m in range(1, count + 1))
        scale = (
            mp.mpf(x) ** (-2 * sigma) / eta ** 2
            + t ** -0.5 * mp.mpf(x) ** (1 - 2 * sigma) * mp.log(coords.y + 2) / eta
        )
        components = {"main": float(main), "band_unit": 0.0}
        value = main
        notes = "regular cell"
        if coords.in_A(eta):
            boundary = script_E(sp.t, coords.offset, policy)
            band_unit = (t / (2 * mp.pi)) ** (1 - 2 * sigma) * mp.mpf(coords.nearest) ** exponent * abs(boundary) ** 2
            components["band_unit"] = float(band_unit)
            value = main + correction_factor * band_unit
            scale += mp.mpf(x) ** (2 - 2 * sigma) / t ** 1.5
            notes = f"exceptional cell, [y]={coords.nearest}, factor={correction_factor}"
    return EstimateReport(
        value=mp.mpc(value),
        predicted_error_scale=float(scale),
        terms_used=count,
        branch_notes=notes,
        components=components,
    )


def theorem3_mean(sigma: float, t: float, policy: Optional[NumericPolicy] = None) -> EstimateReport:
    """(t/2π)^{2−2σ} ζ(3−2σ); error t^{1−σ} + t^{7/4−2σ}."""
    policy = resolve_policy(policy)
    if not 0 < sigma < 1:
        raise DomainError("σ must lie in (0, 1)", sigma=sigma)
    if t <= 1:
        raise DomainError("t must exceed 1", t=t)
    with policy.workprec():
        sigma_mp = mp.mpf(sigma)
        value = (mp.mpf(t) / (2 * mp.pi)) ** (2 - 2 * sigma_mp) * riemann_zeta(3 - 2 * sigma_mp, policy)
    return EstimateReport(
        value=mp.mpc(value.real),
        predicted_error_scale=t ** (1 - sigma) + t ** (1.75 - 2 * sigma),
        terms_used=1,
    )


# ═══════════════════════════════════════════════════════════════════════════
# RECONCILIATION
# ═══════════════════════════════════════════════════════════════════════════

def _periodic_integral(Y, p):
    """
    ∫_Y^∞ ({α} − ½) α^p dα for p < 0, p ∉ {−1, −2}.

    The partial cell [Y, K) with K = ⌊Y⌋+1 is integrated directly. The full
    cells telescope: with q = p+2 and r = p+1,
      Σ_{k≥K} ∫_k^{k+1}(α−k−½)α^p dα = −K^q/q + K^q/r + ζ(−r, K)/r − K^r/(2r),
    read by analytic continuation in p, so the tail costs one Hurwitz value.
    """
    q, r = p + 2, p + 1

    def piece(lo, hi, k):
        def antiderivative(z):
            return z ** q / q - (k + mp.mpf(0.5)) * z ** r / r
        return antiderivative(hi) - antiderivative(lo)

    k0 = int(mp.floor(Y))
    K = mp.mpf(k0 + 1)
    first = piece(Y, K, k0)
    rest = -K ** q / q + K ** q / r + mp.zeta(-r, K) / r - K ** r / (2 * r)
    return first + rest


def _power_sum(count: int, exponent):
    return mp.fsum(mp.mpf(m) ** exponent for m in range(1, count + 1))


def reconciliation_identities(
    sigma: float, t: float, eta: float, policy: Optional[NumericPolicy] = None, x: int = 1
) -> ReconciliationReport:
    """
    Residuals of:
      2Γ(2σ−1)ζ(2σ−1) = ζ(2−2σ)/((2π)^{1−2σ} sin πσ)
      Σ_{m>Y} m^{2σ−2} = −Y^{2σ−1}/(2σ−1) + ({Y}−½)Y^{2σ−2} + (2σ−2)∫_Y^∞({α}−½)α^{2σ−3}dα
      ζ(2−2σ) − Σ_{m≤y−η} m^{2σ−2} ≈ −y^{2σ−1}/(2σ−1) + ({y−η}+η−½)y^{2σ−2}
      2Γ(2σ−1)ζ(2σ−1)Re[Γ(1−σ+it)/Γ(σ+it)] ≈ (t/2π)^{1−2σ}ζ(2−2σ)
    with Y = y − η and y = t/(2πx). Divergent tails are read as
    ζ(2−2σ) − Σ_{m≤Y}.
    """
    policy = resolve_policy(policy)
    if not 0 < sigma < 1:
        raise DomainError("σ must lie in (0, 1)", sigma=sigma)
    if abs(sigma - 0.5) <= EXCLUSION_TOL:
        raise DegenerateSigmaError("σ = 1/2 is excluded", sigma=sigma)
    if not 0 < eta < 0.5:
        raise DomainError("η must lie in (0, 1/2)", eta=eta)

    with policy.workprec():
        s_mp = mp.mpf(sigma)
        t_mp = mp.mpf(t)
        two_pi = 2 * mp.pi
        zeta_reflected = riemann_zeta(2 - 2 * s_mp, policy).real
        gamma_zeta = 2 * gamma(2 * s_mp - 1, policy).real * riemann_zeta(2 * s_mp - 1, policy).real

        functional_rhs = zeta_reflected / (two_pi ** (1 - 2 * s_mp) * mp.sin(mp.pi * s_mp))

        y = t_mp / (two_pi * x)
        Y = y - eta
        if Y <= 1:
            raise DomainError("y − η must exceed 1", y=y, eta=eta)
        exponent = 2 * s_mp - 2
        frac_Y = Y - mp.floor(Y)
        tail_identity = (
            -Y ** (2 * s_mp - 1) / (2 * s_mp - 1)
            + (frac_Y - mp.mpf(0.5)) * Y ** exponent
            + exponent * _periodic_integral(Y, 2 * s_mp - 3)
        )
        tail_oracle = zeta_reflected - _power_sum(int(mp.floor(Y)), exponent)

        expansion = -y ** (2 * s_mp - 1) / (2 * s_mp - 1) + (frac_Y + eta - mp.mpf(0.5)) * y ** exponent
        expansion_oracle = zeta_reflected - _power_sum(main_sum_count(float(y), eta), exponent)

        ratio = gamma(mp.mpc(1 - s_mp, t_mp), policy) * reciprocal_gamma(mp.mpc(s_mp, t_mp), policy)
        stirling = gamma_zeta * ratio.real - (t_mp / two_pi) ** (1 - 2 * s_mp) * zeta_reflected

    return ReconciliationReport(
        sigma=sigma,
        t=t,
        eta=eta,
        tail_start=float(Y),
        functional_lhs=float(gamma_zeta),
        functional_rhs=float(functional_rhs),
        functional_residual=float(abs(gamma_zeta - functional_rhs)),
        tail_identity=float(tail_identity),
        tail_oracle=float(tail_oracle),
        tail_residual=float(abs(tail_identity - tail_oracle)),
        expansion=float(expansion),
        expansion_oracle=float(expansion_oracle),
        expansion_residual=float(abs(expansion - expansion_oracle)),
        expansion_scale=float(y ** (2 * s_mp - 3)),
        stirling_difference=float(stirling),
        stirling_scaled=float(abs(stirling) * t_mp ** (1 + 2 * s_mp)),
    )
