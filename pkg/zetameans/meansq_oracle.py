"""
meansq_oracle.py — Ground-truth mean-square integrals

PURPOSE:
Brute-force numerical values for everything the estimators predict:

  J_x(u, v)  = ∫₀¹ ζ_x(u,α) ζ_x(v,α) dα
  I_x(s)     = J_x(s, s̄) = ∫₀¹ |ζ_x(s,α)|² dα
  ∫₀^{t/2π} |ζ_1(s,α)|² dα   as a sum of cells
  ∫_x^∞ β^{−s} e^{2πimβ} dβ  (the Fourier coefficients of ζ_x in α)
  ∫_x^∞ α^{−b} ζ_1(a,α) dα    and its head ∫₀^x

DESIGN:
- The α-integrals start from 1/(8(1+y)) wide panels so that every panel
  sees at most an eighth of an oscillation of ζ_x(s,α).
- A 53-bit policy routes α-integrals through the vectorized numpy engine;
  everything else runs through mpmath at the policy precision.
- Above 53 bits the cells of the large-interval mean share one node set
  and take ζ_x from prefix sums over x.
- Sums over cells and over Fourier modes are reduced in ascending order
  with compensated summation so that results are bit-stable.
"""

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional, Tuple

import numpy as np
from mpmath import mp

from .errors import BranchMismatch, DomainError, PoleError, ToleranceNotMet
from .hurwitz import HurwitzPrefixSums, StripPoint, hurwitz_zeta, modified_hurwitz_zeta_array
from .numerics import (
    ComplexValue,
    NumericPolicy,
    Scalar,
    bernoulli_ratio,
    euler_maclaurin_hurwitz,
    resolve_policy,
    to_mpc,
    upper_incomplete_gamma,
)
from .quadrature import (
    QuadratureResult,
    gauss_legendre_adaptive,
    mp_gauss_legendre_rule,
    mp_quadrature,
    panel_edges,
)

logger = logging.getLogger(__name__)


def _oscillation_panels(x: int, *points: ComplexValue, width: float = 1.0) -> int:
    y_total = sum(abs(float(mp.im(w))) / (2 * math.pi * x) for w in points)
    return max(1, int(math.ceil(8 * (1 + y_total) * width)))


def _check_cell(x: int) -> None:
    if x < 1:
        raise DomainError("cell integrals are defined for x >= 1", x=x)


# ═══════════════════════════════════════════════════════════════════════════
# CELL INTEGRALS
# ═══════════════════════════════════════════════════════════════════════════

def integral_Jx(
    u: Scalar, v: Scalar, x: int, policy: Optional[NumericPolicy] = None
) -> QuadratureResult:
    """J_x(u, v) = ∫₀¹ ζ_x(u,α) ζ_x(v,α) dα."""
    policy = resolve_policy(policy)
    _check_cell(x)
    u, v = to_mpc(u), to_mpc(v)
    if u == 1 or v == 1:
        raise PoleError("J_x needs u, v != 1", u=u, v=v)
    panels = _oscillation_panels(x, u, v)

    if policy.uses_fast_engine:
        uc, vc = complex(u), complex(v)
        safety = policy.series_safety_factor

        def integrand(alphas):
            return (
                modified_hurwitz_zeta_array(uc, alphas, x, safety)
                * modified_hurwitz_zeta_array(vc, alphas, x, safety)
            )

        return gauss_legendre_adaptive(integrand, 0.0, 1.0, policy, panels)

    with policy.workprec():
        def integrand(alpha):
            return (
                euler_maclaurin_hurwitz(u, alpha, x, policy)
                * euler_maclaurin_hurwitz(v, alpha, x, policy)
            )

        edges = [mp.mpf(e) for e in panel_edges(0, 1, panels)]
        return mp_quadrature(integrand, edges, policy)


def _abs_square_integral(
    s: ComplexValue, x: int, upper: float, policy: NumericPolicy
) -> QuadratureResult:
    """∫₀^upper |ζ_x(s,α)|² dα."""
    panels = _oscillation_panels(x, s, width=upper)

    if policy.uses_fast_engine:
        sc = complex(s)
        safety = policy.series_safety_factor

        def integrand(alphas):
            values = modified_hurwitz_zeta_array(sc, alphas, x, safety)
            return (values.real ** 2 + values.imag ** 2).astype(complex)

        return gauss_legendre_adaptive(integrand, 0.0, float(upper), policy, panels)

    with policy.workprec():
        def integrand(alpha):
            value = euler_maclaurin_hurwitz(s, alpha, x, policy)
            return value.real ** 2 + value.imag ** 2

        edges = [mp.mpf(upper) * e for e in panel_edges(0, 1, panels)]
        return mp_quadrature(integrand, edges, policy)


def integral_Ix(
    sp: StripPoint, x: int, policy: Optional[NumericPolicy] = None
) -> QuadratureResult:
    """I_x(s) = ∫₀¹ |ζ_x(s,α)|² dα = J_x(s, s̄)."""
    policy = resolve_policy(policy)
    _check_cell(x)
    return _abs_square_integral(sp.s, x, 1.0, policy)


def interval_mean_direct(
    sp: StripPoint, upper: float, policy: Optional[NumericPolicy] = None
) -> QuadratureResult:
    """∫₀^upper |ζ_1(s,α)|² dα as one quadrature, no cell decomposition."""
    policy = resolve_policy(policy)
    if upper <= 0:
        raise DomainError("upper limit must be positive", upper=upper)
    return _abs_square_integral(sp.s, 1, upper, policy)


# ═══════════════════════════════════════════════════════════════════════════
# LARGE INTERVAL
# ═══════════════════════════════════════════════════════════════════════════

def _cell_job(job: Tuple[StripPoint, int, float, NumericPolicy]):
    sp, x, upper, policy = job
    try:
        return x, _abs_square_integral(sp.s, x, upper, policy), None
    except ToleranceNotMet as exc:
        return x, None, (exc.best_estimate, exc.error_estimate)


def _shared_node_sums(s: ComplexValue, cells: int, panels: int, degree: int, policy: NumericPolicy):
    """Σ_j w_j|ζ_x(s,β_j)|² for x = 1..cells on one composite rule over [0, 1]."""
    rule = mp_gauss_legendre_rule(degree)
    half = mp.mpf(1) / (2 * panels)
    sums = [mp.mpf(0)] * cells
    for p in range(panels):
        mid = (2 * p + 1) * half
        for node, weight in rule:
            prefix = HurwitzPrefixSums(s, mid + half * node, policy)
            for x in range(1, cells + 1):
                value = prefix.modified(x)
                sums[x - 1] += half * weight * (value.real ** 2 + value.imag ** 2)
    return sums


def _shared_node_cells(sp: StripPoint, cells: int, policy: NumericPolicy) -> List[QuadratureResult]:
    """
    I_1 … I_cells at the policy precision. All cells integrate over the same
    β-nodes, so ζ(s,β) is evaluated once per node and every ζ_x(s,β) comes
    from the incremental prefix sums. The 6- and 12-point rules are compared
    cell by cell; the panel count doubles until every cell agrees.
    """
    panels = _oscillation_panels(1, sp.s)
    evaluations = 0
    with policy.workprec():
        s = sp.s
        while True:
            coarse = _shared_node_sums(s, cells, panels, 2, policy)
            fine = _shared_node_sums(s, cells, panels, 3, policy)
            evaluations += 18 * panels
            errors = [float(abs(f - c)) for f, c in zip(fine, coarse)]
            allowed = [max(policy.abs_tol, policy.rel_tol * float(abs(f))) for f in fine]
            worst = max(range(cells), key=lambda i: errors[i] / allowed[i])
            if errors[worst] <= allowed[worst]:
                logger.debug(f"shared-node cells: {cells} cells, {panels} panels, {evaluations} ζ evaluations")
                # the node set is shared, so only the first cell carries its cost
                return [
                    QuadratureResult(
                        value=mp.mpc(f),
                        error_estimate=e,
                        panels=panels if index == 0 else 0,
                        evaluations=evaluations if index == 0 else 0,
                    )
                    for index, (f, e) in enumerate(zip(fine, errors))
                ]
            if 2 * panels > policy.max_subdivisions:
                raise ToleranceNotMet(
                    "shared-node cell quadrature did not reach tolerance",
                    best_estimate=mp.mpc(fine[worst]),
                    error_estimate=errors[worst],
                    cell=worst + 1,
                )
            panels *= 2


def large_interval_mean(
    sp: StripPoint, policy: Optional[NumericPolicy] = None, workers: int = 1
) -> QuadratureResult:
    """
    ∫₀^{t/2π} |ζ_1(s,α)|² dα = Σ_{x ≤ t/2π} I_x(s) + ∫₀^{frac} |ζ_{⌈t/2π⌉}(s,α)|² dα.

    On [x−1, x) the substitution α = x−1+β turns ζ_1(s,α) into ζ_x(s,β).
    The 53-bit engine integrates each cell on its own (across `workers`
    processes); at higher precision the full cells share one node set and
    reuse prefix sums, and `workers` is ignored.
    """
    policy = resolve_policy(policy)
    sp.require_critical_strip()
    if sp.t <= 2 * math.pi:
        raise DomainError("large_interval_mean needs t > 2π", t=sp.t)

    length = sp.t / (2 * math.pi)
    n_full = int(math.floor(length))
    frac = length - n_full
    shared = not policy.uses_fast_engine
    jobs = [] if shared else [(sp, x, 1.0, policy) for x in range(1, n_full + 1)]
    if frac > 1e-12:
        jobs.append((sp, n_full + 1, frac, policy))

    logger.info(
        f"🔢 large_interval_mean: σ={sp.sigma} t={sp.t} cells={n_full} "
        f"partial={frac:.6f} {'shared nodes' if shared else f'workers={workers}'}"
    )

    if workers > 1 and not shared:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_cell_job, jobs))
    else:
        outcomes = [_cell_job(job) for job in jobs]
    if shared:
        full_cells = _shared_node_cells(sp, n_full, policy)
        outcomes = [(x, result, None) for x, result in enumerate(full_cells, start=1)] + outcomes

    values: List[ComplexValue] = []
    error = 0.0
    panels = 0
    evaluations = 0
    for x, result, failure in outcomes:
        if failure is not None:
            best, err = failure
            raise ToleranceNotMet(
                "cell quadrature did not reach tolerance",
                best_estimate=best,
                error_estimate=err,
                cell=x,
            )
        values.append(result.value)
        error += result.error_estimate
        panels += result.panels
        evaluations += result.evaluations

    with policy.workprec():
        total = mp.fsum(values)
    logger.info(f"✅ large_interval_mean: value={mp.nstr(total.real, 12)} error≈{error:.2e}")
    return QuadratureResult(value=total, error_estimate=error, panels=panels, evaluations=evaluations)


# ═══════════════════════════════════════════════════════════════════════════
# OSCILLATORY TAIL INTEGRALS
# ═══════════════════════════════════════════════════════════════════════════

def _rotated_tail_integral(s: ComplexValue, m: int, x: int, policy: NumericPolicy) -> ComplexValue:
    """
    β = x + i·sgn(m)·r turns e^{2πimβ} into e^{2πimx}e^{−2π|m|r}. When
    sgn(m)·Im s > 0, |β^{−s}| grows like e^{|t|·arg β} along the ray and the
    integral cancels down from that size, so precision is raised to match.
    """
    sign = 1 if m > 0 else -1
    extra = 16
    if sign * s.imag > 0:
        extra += int(math.ceil(abs(float(s.imag)) * math.pi / (2 * math.log(2))))

    with mp.workprec(policy.precision_bits + extra):
        s = mp.mpc(s)
        decay = 2 * mp.pi * abs(m)
        scale = 1 / decay
        points = {mp.mpf(0), scale, 4 * scale, 16 * scale}
        y = abs(s.imag) / (2 * mp.pi * x)
        if sign * s.imag > 0 and y > abs(m):
            peak = x * mp.sqrt(y / abs(m) - 1)
            points.update(peak * k for k in (mp.mpf(0.5), 1, mp.mpf(1.5), 2, 3))
        points = sorted(points) + [mp.inf]

        def integrand(r):
            return (x + 1j * sign * r) ** (-s) * mp.exp(-decay * r)

        value = 1j * sign * mp.expjpi(2 * m * x) * mp.quad(integrand, points)
    return value


def oscillatory_tail_integral(
    s: Scalar,
    m: int,
    x: int,
    policy: Optional[NumericPolicy] = None,
    cross_check: bool = True,
) -> ComplexValue:
    """
    ∫_x^∞ β^{−s} e^{2πimβ} dβ = (−2πim)^{s−1} Γ(1−s, −2πimx), principal branches.

    With cross_check the rotated-contour quadrature must agree to
    100·rel_tol·|value| + 100·abs_tol, otherwise BranchMismatch.
    """
    policy = resolve_policy(policy)
    if m == 0:
        raise DomainError("m must be a nonzero integer")
    _check_cell(x)
    with policy.workprec():
        s = to_mpc(s)
        if s.real <= 0:
            raise DomainError("oscillatory tail integral needs Re s > 0", s=s)
        c = -2j * mp.pi * m
        closed = mp.exp((s - 1) * mp.log(c)) * upper_incomplete_gamma(1 - s, c * x, policy)

        if cross_check:
            rotated = _rotated_tail_integral(s, m, x, policy)
            difference = abs(closed - rotated)
            allowed = 100 * policy.rel_tol * abs(closed) + 100 * policy.abs_tol
            if difference > allowed:
                raise BranchMismatch(
                    "closed form and rotated contour disagree",
                    s=s,
                    m=m,
                    x=x,
                    difference=difference,
                )
        return closed


def fourier_tail_estimate(
    sp: StripPoint, x: int, M: int, policy: Optional[NumericPolicy] = None
):
    """
    Σ_{|m|>M} |∫_x^∞ β^{−s}e^{2πimβ}dβ|² from the endpoint term
    x^{−2σ}/(4π²(m−y)²): x^{−2σ}/(4π²)·[ζ(2, M+1−y) + ζ(2, M+1+y)].
    """
    policy = resolve_policy(policy)
    y = sp.t / (2 * math.pi * x)
    if M + 1 <= y:
        raise DomainError("tail completion needs M + 1 > y", M=M, y=y)
    with policy.workprec():
        upper = hurwitz_zeta(2, M + 1 - mp.mpf(y), policy)
        lower = hurwitz_zeta(2, M + 1 + mp.mpf(y), policy)
        return (mp.mpf(x) ** (-2 * mp.mpf(sp.sigma)) / (4 * mp.pi ** 2) * (upper + lower)).real


def fourier_representation_Ix(
    sp: StripPoint,
    x: int,
    M: int,
    policy: Optional[NumericPolicy] = None,
    complete_tail: bool = False,
):
    """
    x^{2−2σ}/(t²+(σ−1)²) + Σ_{0<|m|≤M} |∫_x^∞ β^{−s}e^{2πimβ}dβ|²,
    summed in pairs (m, −m) by ascending |m|. Nondecreasing in M unless
    complete_tail adds the analytic remainder beyond M.
    """
    policy = resolve_policy(policy)
    sp.require_critical_strip()
    _check_cell(x)
    if M < 1:
        raise DomainError("M must be >= 1", M=M)

    with policy.workprec():
        s = sp.s
        sigma, t = mp.mpf(sp.sigma), mp.mpf(sp.t)
        zero_mode = mp.mpf(x) ** (2 - 2 * sigma) / (t ** 2 + (sigma - 1) ** 2)
        pairs = []
        for k in range(1, M + 1):
            plus = oscillatory_tail_integral(s, k, x, policy, cross_check=False)
            minus = oscillatory_tail_integral(s, -k, x, policy, cross_check=False)
            pairs.append(abs(plus) ** 2 + abs(minus) ** 2)
        total = zero_mode + mp.fsum(pairs)
        logger.debug(f"Fourier sum: x={x} M={M} partial={mp.nstr(total, 12)}")
        if complete_tail:
            total += fourier_tail_estimate(sp, x, M, policy)
        return total


# ═══════════════════════════════════════════════════════════════════════════
# ζ_1 WEIGHTED INTEGRALS
# ═══════════════════════════════════════════════════════════════════════════

def _tail_cutoff(a: ComplexValue, b: ComplexValue, x: int) -> float:
    excess = float((a + b).real) - 2
    steps = math.ceil(10 / min(1.0, excess))
    return x + steps * max(x, abs(float(a.imag)), abs(float(b.imag)))


def _asymptotic_tail(a: ComplexValue, b: ComplexValue, X, policy: NumericPolicy) -> ComplexValue:
    """
    ∫_X^∞ α^{−b}ζ_1(a,α)dα with ζ_1(a,α) ~ α^{1−a}/(a−1) − α^{−a}/2
    + Σ_j B_{2j}/(2j)!·(a)_{2j−1}α^{−a−2j+1}, integrated term by term.
    """
    def power_integral(p):
        # ∫_X^∞ α^{p−b} dα
        return X ** (p - b + 1) / (b - p - 1)

    total = power_integral(1 - a) / (a - 1) - power_integral(-a) / 2
    eps = mp.mpf(2) ** (-policy.precision_bits)
    rising = a
    for j in range(1, 60):
        term = bernoulli_ratio(j, policy.precision_bits) * rising * power_integral(1 - a - 2 * j)
        total += term
        if abs(term) <= eps * abs(total):
            break
        rising *= (a + 2 * j - 1) * (a + 2 * j)
    return total


def zeta_tail_integral(
    a: Scalar, b: Scalar, x: int, policy: Optional[NumericPolicy] = None
) -> ComplexValue:
    """∫_x^∞ α^{−b} ζ_1(a,α) dα for Re(a+b) > 2."""
    policy = resolve_policy(policy)
    _check_cell(x)
    with policy.workprec():
        a, b = to_mpc(a), to_mpc(b)
        if (a + b).real <= 2:
            raise DomainError("zeta_tail_integral needs Re(a+b) > 2", a=a, b=b)
        if a == 1:
            raise PoleError("ζ_1(a, α) has a pole at a = 1")
        X = _tail_cutoff(a, b, x)
        ratio = X / x
        oscillations = (abs(float(a.imag)) + abs(float(b.imag))) / (2 * math.pi) * math.log(ratio)
        count = max(4, int(math.ceil(max(8 * oscillations, math.log(ratio) / math.log(1.25)))))

        if policy.uses_fast_engine:
            ac, bc = complex(a), complex(b)
            safety = policy.series_safety_factor

            def integrand(alphas):
                return np.exp(-bc * np.log(alphas)) * modified_hurwitz_zeta_array(ac, alphas, 1, safety)

            head = gauss_legendre_adaptive(integrand, float(x), float(X), policy, count).value
        else:
            points = [mp.mpf(x) * mp.mpf(ratio) ** (mp.mpf(k) / count) for k in range(count + 1)]

            def integrand(alpha):
                return alpha ** (-b) * euler_maclaurin_hurwitz(a, alpha, 1, policy)

            head = mp_quadrature(integrand, points, policy).value

        tail = _asymptotic_tail(a, b, mp.mpf(X), policy)
        logger.debug(f"zeta_tail_integral: X={X} panels={count}")
        return head + tail


def zeta_head_integral(
    a: Scalar, b: Scalar, x, policy: Optional[NumericPolicy] = None
) -> ComplexValue:
    """∫₀^x α^{−b} ζ_1(a,α) dα for Re b < 1, tanh-sinh at the α^{−b} endpoint."""
    policy = resolve_policy(policy)
    with policy.workprec():
        a, b = to_mpc(a), to_mpc(b)
        if b.real >= 1:
            raise DomainError("zeta_head_integral needs Re b < 1", b=b)
        if a == 1:
            raise PoleError("ζ_1(a, α) has a pole at a = 1")
        x = mp.mpf(x)
        if x <= 0:
            raise DomainError("upper limit must be positive", x=x)
        panels = _oscillation_panels(1, a, b, width=float(x))
        points = [x * mp.mpf(e) for e in panel_edges(0, 1, panels)]

        def integrand(alpha):
            return alpha ** (-b) * euler_maclaurin_hurwitz(a, alpha, 1, policy)

        return mp_quadrature(integrand, points, policy, method="tanh-sinh").value
