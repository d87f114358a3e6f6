import pytest
from mpmath import mp

from zetameans.errors import ConvergenceError, DomainError, PoleError, ToleranceNotMet
from zetameans.numerics import (
    NumericPolicy,
    bernoulli_ratios,
    digamma,
    ensure_finite,
    euler_maclaurin_hurwitz,
    fresnel_psi,
    fresnel_psi_closed_form,
    gamma,
    is_integer,
    is_nonpositive_integer,
    log_gamma,
    reciprocal_gamma,
    riemann_zeta,
    upper_incomplete_gamma,
)


# ─── policy ─────────────────────────────────────────────────────────────────

def test_policy_defaults(policy):
    assert policy.precision_bits == 106
    assert policy.abs_tol == policy.rel_tol == 1e-10
    assert not policy.uses_fast_engine


@pytest.mark.parametrize("kwargs", [
    {"precision_bits": 40},
    {"precision_bits": 300},
    {"abs_tol": 0.0},
    {"rel_tol": -1e-3},
    {"max_subdivisions": 8},
    {"series_safety_factor": 0.5},
])
def test_policy_rejects_bad_values(kwargs):
    with pytest.raises(DomainError):
        NumericPolicy(**kwargs)


def test_policy_helpers(policy):
    assert policy.fast().uses_fast_engine
    loose = policy.with_tolerance(1e-6)
    assert loose.abs_tol == loose.rel_tol == 1e-6
    assert loose.precision_bits == policy.precision_bits
    assert policy.to_dict()["max_subdivisions"] == 4096


# ─── scalar helpers ─────────────────────────────────────────────────────────

def test_integer_predicates():
    assert is_integer(3)
    assert is_integer(complex(-2, 0))
    assert not is_integer(complex(2, 1e-3))
    assert not is_integer(2.5)
    assert is_nonpositive_integer(0)
    assert is_nonpositive_integer(-4)
    assert not is_nonpositive_integer(1)


def test_ensure_finite_rejects_nan():
    with pytest.raises(ConvergenceError):
        ensure_finite(mp.mpc(mp.nan, 0), "nan_check")


# ─── gamma family ───────────────────────────────────────────────────────────

def test_gamma_values(policy):
    assert abs(gamma(5, policy) - 24) < 1e-25
    with policy.workprec():
        assert abs(gamma(0.5, policy) - mp.sqrt(mp.pi)) < 1e-25


@pytest.mark.parametrize("z", [0, -1, -7])
def test_gamma_poles(z, policy):
    with pytest.raises(PoleError):
        gamma(z, policy)
    with pytest.raises(PoleError):
        log_gamma(z, policy)
    assert reciprocal_gamma(z, policy) == 0


def test_log_gamma_matches_gamma(policy):
    z = complex(0.3, 7)
    with policy.workprec():
        assert abs(mp.exp(log_gamma(z, policy)) - gamma(z, policy)) < 1e-25


def test_digamma(policy):
    with policy.workprec():
        assert abs(digamma(1, policy) + mp.euler) < 1e-25
        assert abs(digamma(1.5, policy) - (2 - mp.euler - 2 * mp.log(2))) < 1e-25
    with pytest.raises(DomainError):
        digamma(0, policy)


GAMMA_GRID = [complex(0.3, 0), complex(2.5, 1), complex(-1.7, 0.4), complex(0.5, 30), complex(7, -3)]


@pytest.mark.parametrize("z", GAMMA_GRID)
def test_gamma_recurrence_and_reflection(z, policy):
    with policy.workprec():
        shifted = gamma(z + 1, policy)
        assert abs(shifted - z * gamma(z, policy)) <= 1e-25 * abs(shifted)
        product = gamma(z, policy) * gamma(1 - z, policy)
        reflected = mp.pi / mp.sin(mp.pi * mp.mpc(z))
        assert abs(product - reflected) <= 1e-25 * abs(reflected)


@pytest.mark.parametrize("x", [0.3, 1, 2.5, 17])
def test_digamma_recurrence(x, policy):
    with policy.workprec():
        assert abs(digamma(x + 1, policy) - digamma(x, policy) - 1 / mp.mpf(x)) < 1e-25
        assert abs(digamma(2, policy) - (1 - mp.euler)) < 1e-25


def test_upper_incomplete_gamma(policy):
    z = complex(2, 3)
    with policy.workprec():
        assert abs(upper_incomplete_gamma(1, z, policy) - mp.exp(-mp.mpc(z))) < 1e-25
    assert abs(upper_incomplete_gamma(2, 0, policy) - 1) < 1e-25
    with pytest.raises(DomainError):
        upper_incomplete_gamma(-0.5, 0, policy)


@pytest.mark.parametrize("a, z", [
    (complex(0.3, 2), complex(1.5, -0.7)),
    (complex(-0.6, 1), complex(2, 3)),
    (complex(1.5, 0), complex(0.4, 0)),
])
def test_upper_incomplete_gamma_recurrence(a, z, policy):
    with policy.workprec():
        a, z = mp.mpc(a), mp.mpc(z)
        lhs = upper_incomplete_gamma(a + 1, z, policy)
        rhs = a * upper_incomplete_gamma(a, z, policy) + z ** a * mp.exp(-z)
        assert abs(lhs - rhs) <= 1e-25 * abs(lhs)


def test_upper_incomplete_gamma_erfc_anchor(policy):
    with policy.workprec():
        value = upper_incomplete_gamma(0.5, 1, policy)
        assert abs(value - mp.sqrt(mp.pi) * mp.erfc(1)) < 1e-25
        # ∫₁^∞ w^{−1/2}e^{−w}dw along the real axis
        direct = mp.quad(lambda w: w ** -0.5 * mp.exp(-w), [1, 10, mp.inf])
        assert abs(value - direct) < 1e-20


# ─── Euler–Maclaurin and ζ ─────────────────────────────────────────────────

def test_bernoulli_ratios():
    b = bernoulli_ratios(3)
    with mp.workprec(106):
        assert abs(b[0] - mp.mpf(1) / 12) < 1e-30
        assert abs(b[1] + mp.mpf(1) / 720) < 1e-30
        assert abs(b[2] - mp.mpf(1) / 30240) < 1e-30


@pytest.mark.parametrize("s, alpha, skip", [
    (complex(0.5, 14), 1, 0),
    (complex(0.5, 80), 0.25, 3),
    (complex(2.5, -4), 0.9, 1),
    (complex(-0.7, 2), 1.5, 0),
])
def test_euler_maclaurin_matches_mpmath(s, alpha, skip, policy):
    with policy.workprec():
        s = mp.mpc(s)
        ours = euler_maclaurin_hurwitz(s, mp.mpf(alpha), skip, policy)
        reference = mp.zeta(s, mp.mpf(alpha) + skip)
        assert abs(ours - reference) <= 1e-25 * max(1, abs(reference))


def test_riemann_zeta(policy):
    with policy.workprec():
        assert abs(riemann_zeta(2, policy) - mp.pi ** 2 / 6) < 1e-28
        assert abs(riemann_zeta(complex(0.5, 14.134725141734693), policy)) < 1e-12
        s = mp.mpc(0.5, 100)
        assert abs(riemann_zeta(s, policy) - mp.zeta(s)) < 1e-25
    with pytest.raises(PoleError):
        riemann_zeta(1, policy)


# ─── Ψ ──────────────────────────────────────────────────────────────────────

def test_psi_at_zero(policy):
    assert abs(fresnel_psi_closed_form(0, policy) - 1) < 1e-12
    assert abs(fresnel_psi(0, policy) - 1) < 1e-12


@pytest.mark.parametrize("eps", [0.1, 0.5, 1, 2, 5, 10])
def test_psi_forms_agree(eps, policy):
    quad = fresnel_psi(eps, policy, check=False)
    closed = fresnel_psi_closed_form(eps, policy)
    assert abs(quad - closed) < 1e-9


def test_psi_decays_like_inverse_eps(policy):
    with policy.workprec():
        for eps in (5, 10, 20):
            assert abs(abs(fresnel_psi_closed_form(eps, policy)) * mp.pi * eps - 1) < 0.02


def test_psi_rejects_negative(policy):
    with pytest.raises(DomainError):
        fresnel_psi(-0.1, policy)


# ─── errors ─────────────────────────────────────────────────────────────────

def test_error_payload():
    err = PoleError("pole", s=mp.mpc(1, 0))
    payload = err.to_dict()
    assert payload["error_type"] == "PoleError"
    assert payload["detail"]["s"] == [1.0, 0.0]


def test_tolerance_not_met_carries_cell():
    err = ToleranceNotMet("stuck", best_estimate=1.5, error_estimate=1e-3).with_cell(7)
    assert err.cell == 7
    assert err.best_estimate == 1.5
    assert err.to_dict()["detail"]["cell"] == 7
