"""
quadrature.py — Adaptive quadrature engines

Two engines share one result type:

  • gauss_legendre_adaptive: numpy, 53-bit. Composite 10/20-node
    Gauss–Legendre; panels whose two rules disagree are bisected.
    The integrand receives a whole array of nodes per call.

  • mp_quadrature: mpmath.quad over fixed breakpoints at the policy's
    working precision, refined by bisecting every panel until the
    reported error meets tolerance. mp_gauss_legendre_rule exposes
    the underlying node sets for callers that share nodes across integrands.

Both raise ToleranceNotMet (with the best estimate attached) once the
policy's panel budget is exhausted.
"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, List, Sequence, Tuple

import numpy as np
from numpy.polynomial.legendre import leggauss
from mpmath import mp
from mpmath.calculus.quadrature import GaussLegendre

from .errors import ToleranceNotMet
from .numerics import ComplexValue, NumericPolicy

logger = logging.getLogger(__name__)

NODE_CHUNK = 2048
ROUNDOFF_FLOOR = 64 * np.finfo(float).eps


@dataclass
class QuadratureResult:
    value: ComplexValue
    error_estimate: float
    panels: int
    evaluations: int

    def to_dict(self) -> dict:
        value = complex(self.value)
        return {
            "value": [value.real, value.imag],
            "error_estimate": float(self.error_estimate),
            "panels": self.panels,
            "evaluations": self.evaluations,
        }


def complex_fsum(values: Iterable[complex]) -> complex:
    """Correctly rounded sum of complex floats (real and imaginary parts separately)."""
    values = [complex(v) for v in values]
    return complex(math.fsum(v.real for v in values), math.fsum(v.imag for v in values))


def panel_edges(a: float, b: float, count: int) -> List[float]:
    count = max(1, int(count))
    return [a + (b - a) * k / count for k in range(count + 1)]


# ═══════════════════════════════════════════════════════════════════════════
# NUMPY ENGINE
# ═══════════════════════════════════════════════════════════════════════════

@lru_cache(maxsize=None)
def _rule(order: int) -> Tuple[np.ndarray, np.ndarray]:
    return leggauss(order)


def _evaluate_nodes(func: Callable[[np.ndarray], np.ndarray], nodes: np.ndarray) -> np.ndarray:
    flat = nodes.ravel()
    out = np.empty(flat.shape, dtype=complex)
    for start in range(0, flat.size, NODE_CHUNK):
        out[start:start + NODE_CHUNK] = func(flat[start:start + NODE_CHUNK])
    return out.reshape(nodes.shape)


def _apply_rules(func, panels: np.ndarray):
    x10, w10 = _rule(10)
    x20, w20 = _rule(20)
    mid = 0.5 * (panels[:, 0] + panels[:, 1])
    half = 0.5 * (panels[:, 1] - panels[:, 0])
    f10 = _evaluate_nodes(func, mid[:, None] + half[:, None] * x10[None, :])
    f20 = _evaluate_nodes(func, mid[:, None] + half[:, None] * x20[None, :])
    q10 = half * (f10 @ w10)
    q20 = half * (f20 @ w20)
    magnitude = half * (np.abs(f20) @ w20)
    return q10, q20, magnitude


def gauss_legendre_adaptive(
    func: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    policy: NumericPolicy,
    initial_panels: int = 1,
) -> QuadratureResult:
    """
    ∫_a^b func(α) dα for a vectorized complex integrand.

    A panel is accepted when |Q20 − Q10| is below its width share of
    max(abs_tol, rel_tol·|I|), or below the roundoff floor of its own
    absolute mass.
    """
    edges = np.linspace(a, b, max(1, int(initial_panels)) + 1)
    pending = np.column_stack([edges[:-1], edges[1:]])
    total_width = b - a
    accepted_values: List[complex] = []
    accepted_errors: List[float] = []
    evaluations = 0

    while pending.shape[0]:
        if len(accepted_values) + pending.shape[0] > policy.max_subdivisions:
            q10, q20, _ = _apply_rules(func, pending)
            best = complex_fsum(accepted_values + list(q20))
            error = math.fsum(accepted_errors) + float(np.sum(np.abs(q20 - q10)))
            raise ToleranceNotMet(
                "adaptive Gauss–Legendre exhausted its panel budget",
                best_estimate=best,
                error_estimate=error,
                panels=len(accepted_values) + pending.shape[0],
            )

        q10, q20, magnitude = _apply_rules(func, pending)
        evaluations += 30 * pending.shape[0]
        errors = np.abs(q20 - q10)

        scale = abs(complex_fsum(accepted_values + list(q20)))
        share = (pending[:, 1] - pending[:, 0]) / total_width
        allowed = max(policy.abs_tol, policy.rel_tol * scale) * share
        allowed = np.maximum(allowed, ROUNDOFF_FLOOR * magnitude)
        ok = errors <= allowed

        accepted_values.extend(q20[ok])
        accepted_errors.extend(errors[ok])

        bad = pending[~ok]
        if bad.shape[0]:
            mid = 0.5 * (bad[:, 0] + bad[:, 1])
            pending = np.concatenate([
                np.column_stack([bad[:, 0], mid]),
                np.column_stack([mid, bad[:, 1]]),
            ])
            pending = pending[np.argsort(pending[:, 0])]
        else:
            pending = pending[:0]

    logger.debug(f"Gauss–Legendre: {len(accepted_values)} panels, {evaluations} evaluations")
    return QuadratureResult(
        value=mp.mpc(complex_fsum(accepted_values)),
        error_estimate=math.fsum(accepted_errors),
        panels=len(accepted_values),
        evaluations=evaluations,
    )


# ═══════════════════════════════════════════════════════════════════════════
# MPMATH ENGINE
# ═══════════════════════════════════════════════════════════════════════════

def _refine(points: Sequence) -> List:
    refined = [points[0]]
    for lo, hi in zip(points[:-1], points[1:]):
        if hi == mp.inf:
            refined.append(hi)
            continue
        refined.extend([(lo + hi) / 2, hi])
    return refined


@lru_cache(maxsize=None)
def _mp_rule(degree: int, prec: int) -> Tuple[Tuple, ...]:
    return tuple(GaussLegendre(mp).calc_nodes(degree, prec))


def mp_gauss_legendre_rule(degree: int) -> Tuple[Tuple, ...]:
    """(node, weight) pairs on [−1, 1], 3·2^{degree−1} of them, at the current precision."""
    return _mp_rule(degree, mp.prec)


def mp_quadrature(
    func: Callable,
    points: Sequence,
    policy: NumericPolicy,
    method: str = "gauss-legendre",
) -> QuadratureResult:
    """
    ∫ func over the breakpoints `points` at the policy's working precision.
    `method` is passed through to mpmath ("gauss-legendre" for smooth
    integrands, "tanh-sinh" for endpoint singularities).
    """
    points = list(points)
    evaluations = 0

    def counted(alpha):
        nonlocal evaluations
        evaluations += 1
        return func(alpha)

    with policy.workprec():
        while True:
            value, error = mp.quad(counted, points, error=True, method=method)
            error = float(error)
            allowed = max(policy.abs_tol, policy.rel_tol * float(abs(value)))
            panels = len(points) - 1
            if error <= allowed:
                logger.debug(f"mp.quad: {panels} panels, {evaluations} evaluations, error {error:.3e}")
                return QuadratureResult(
                    value=mp.mpc(value),
                    error_estimate=error,
                    panels=panels,
                    evaluations=evaluations,
                )
            if 2 * panels > policy.max_subdivisions:
                raise ToleranceNotMet(
                    "mpmath quadrature did not reach tolerance",
                    best_estimate=mp.mpc(value),
                    error_estimate=error,
                    panels=panels,
                )
            points = _refine(points)
