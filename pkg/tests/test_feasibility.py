import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as hst

from heliumqed import feasibility as fz
from heliumqed.constants import C_LIGHT, EPS0, HBAR, K_B, M_E

TWO_PI = 2 * math.pi


def test_default_params_lambda_consistent():
    p = fz.PhysicalParams()
    assert p.check_lambda_consistency()
    assert fz.lambda_from_epsilon(1.0568) == pytest.approx(0.0069, rel=0.01)


def test_params_reject_nonpositive():
    with pytest.raises(fz.ParameterError):
        fz.PhysicalParams(e_perp=-1.0)
    with pytest.raises(fz.ParameterError):
        fz.PhysicalParams(temperature=0.0)
    with pytest.raises(fz.ParameterError):
        fz.PhysicalParams(finesse=0.5)
    with pytest.raises(fz.ParameterError):
        fz.PhysicalParams(standing_phase=0.1)


def test_trap_frequency_reference():
    nu = fz.trap_frequency(3e4, 5e-7)
    assert nu / TWO_PI == pytest.approx(16e9, rel=0.05)


def test_trap_frequency_sqrt_scaling():
    nu1 = fz.trap_frequency(3e4, 5e-7)
    nu4 = fz.trap_frequency(4 * 3e4, 5e-7)
    assert nu4 == pytest.approx(2 * nu1, rel=1e-12)


def test_trap_frequency_derived_point():
    # direct formula evaluation with CODATA constants
    nu = fz.trap_frequency(1e4, 5e-7)
    assert nu / TWO_PI == pytest.approx(9.4394e9, rel=1e-4)


def test_trap_frequency_domain_errors():
    with pytest.raises(fz.ParameterError):
        fz.trap_frequency(0.0, 5e-7)
    with pytest.raises(fz.ParameterError):
        fz.trap_frequency(3e4, -1.0)


def test_lamb_dicke_reference():
    nu = TWO_PI * 16e9
    eta = fz.lamb_dicke(TWO_PI * 0.27e12, nu)
    assert 0.5e-4 <= eta <= 2e-4


def test_lamb_dicke_limits_and_scaling():
    nu = TWO_PI * 16e9
    assert fz.lamb_dicke(0.0, nu) == 0.0
    omega = TWO_PI * 0.27e12
    assert fz.lamb_dicke(omega, 4 * nu) == pytest.approx(
        fz.lamb_dicke(omega, nu) / 2, rel=1e-12
    )
    with pytest.raises(fz.ParameterError):
        fz.lamb_dicke(omega, 0.0)


def test_coupling_strengths_g0():
    r_b = 7.67e-9
    omega_c = TWO_PI * 0.27e12
    volume = math.pi * (20e-6 / 2) ** 2 * 1e-3
    rc, rct, rl, rlt = fz.coupling_strengths(0.0, 0.5 * r_b, 4.5 * r_b,
                                             omega_c, volume)
    assert 2 * rc == pytest.approx(33e6, rel=0.10)
    assert rl == 0.0 and rlt == 0.0


def test_coupling_volume_scaling_and_ratio():
    r_b = 7.67e-9
    omega_c = TWO_PI * 0.27e12
    v = 3.14e-13
    rc, rct, _, _ = fz.coupling_strengths(1.0, 0.5 * r_b, 4.5 * r_b, omega_c, v)
    rc4, _, _, _ = fz.coupling_strengths(1.0, 0.5 * r_b, 4.5 * r_b, omega_c, 4 * v)
    assert rc4 == pytest.approx(rc / 2, rel=1e-12)
    # sqrt(1/8) vs sqrt(1/32) prefactor ratio
    assert rct / rc == pytest.approx((4.5 / 0.5) / 2, rel=1e-12)
    with pytest.raises(fz.ParameterError):
        fz.coupling_strengths(0.0, r_b, r_b, omega_c, 0.0)


def test_cavity_figures_reference():
    nu = TWO_PI * 16e9
    kappa, n0, cap_n0, volume, loc = fz.cavity_figures(
        4.4e5, 1e-3, 20e-6, 1e4, nu, 33e6
    )
    assert kappa == pytest.approx(1.1e6, rel=0.05)
    assert n0 == pytest.approx(4.6e-8, rel=0.15)
    assert cap_n0 == pytest.approx(2e-5, rel=0.15)
    assert volume == pytest.approx(3.14e-13, rel=0.01)
    assert loc == pytest.approx(34e-9, rel=0.05)


def test_cavity_figures_short_cavity():
    nu = TWO_PI * 16e9
    kappa, *_ = fz.cavity_figures(4.4e5, 0.12e-3, 20e-6, 1e4, nu, 33e6)
    assert kappa == pytest.approx(8.9e6, rel=0.05)


def test_kappa_inverse_identity():
    kappa, *_ = fz.cavity_figures(4.4e5, 1e-3, 20e-6, 1e4, 1.0, 1.0)
    assert kappa * (2 * 4.4e5 * 1e-3) / (C_LIGHT * math.pi) == pytest.approx(
        1.0, rel=1e-14
    )


def test_cavity_figures_zero_g0():
    with pytest.raises(fz.ParameterError):
        fz.cavity_figures(4.4e5, 1e-3, 20e-6, 1e4, 1.0, 0.0)


def test_thermal_vacuum_probability_reference():
    assert fz.thermal_vacuum_probability(TWO_PI * 1e12, 2.2) > 0.96
    assert fz.thermal_vacuum_probability(TWO_PI * 0.27e12, 2.2) == pytest.approx(
        0.99723, abs=1e-3
    )


def test_thermal_vacuum_probability_low_t_limit():
    assert fz.thermal_vacuum_probability(TWO_PI * 1e12, 1e-3) == pytest.approx(1.0)


# ranges chosen so hbar*omega/(kB*T) stays below ~16, keeping the
# probability strictly inside (0, 1) in double precision
@settings(max_examples=40, deadline=None)
@given(
    hst.floats(min_value=1e11, max_value=1e12),
    hst.floats(min_value=0.5, max_value=10.0),
)
def test_p0_monotonicity(omega, temp):
    p = fz.thermal_vacuum_probability(omega, temp)
    assert fz.thermal_vacuum_probability(omega * 1.1, temp) > p
    assert fz.thermal_vacuum_probability(omega, temp * 1.1) < p


def test_dimensional_consistency_two_unit_paths():
    # evaluate nu and eta once in SI and once in scaled units
    # (lengths in um, masses in me units, time in ns)
    e_perp, h = 3e4, 5e-7
    nu_si = fz.trap_frequency(e_perp, h)
    # scaled path: nu^2 = eE/(m h); express each factor as a pure number
    # times its unit, cancel units symbolically, recombine
    from heliumqed.constants import E_CHARGE, M_E

    nu_scaled = math.sqrt((E_CHARGE * 1e9) * e_perp / ((M_E * 1e9) * h))
    assert nu_si == pytest.approx(nu_scaled, rel=1e-12)
    eta_si = fz.lamb_dicke(TWO_PI * 0.27e12, nu_si)
    eta_alt = (TWO_PI * 0.27e12 / C_LIGHT) * math.sqrt(HBAR / (2 * M_E * nu_si))
    assert eta_si == pytest.approx(eta_alt, rel=1e-12)


def test_build_report_wiring():
    p = fz.PhysicalParams()
    r_b = 7.669e-9
    rep = fz.build_report(p, TWO_PI * 0.2556e12, 0.5587 * r_b, 1.85 * r_b, r_b)
    assert rep.g0 == pytest.approx(2 * rep.omega_rabi_c, rel=1e-15)
    assert rep.omega_c == rep.omega_a
    assert 0 <= rep.p0 <= 1
    assert any("0.3 nm" in n for n in rep.notes)
    flat = rep.as_dict()
    assert flat["kappa"] == rep.kappa
