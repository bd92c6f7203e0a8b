import numpy as np
import pytest

from shockrecon import eos
from shockrecon.eos import (
    EosParams,
    IdealGas,
    MieGruneisen,
    NOMINAL_STEEL,
    ideal_gas_pressure,
    mg_energy_of_temperature,
    mg_pressure,
    mg_pressure_from_energy,
    mg_sound_speed,
)
from shockrecon.errors import CompressionSingularity, NonPositiveDensity

# High-precision reference values (mpmath, 40 digits) for the nominal
# steel parameters rho0=7.896, cs=0.4569, s1=1.49, Gamma0=2.17, cV=5.18e10.
CV_CANONICAL = 4.4637856004136326e-06
P_THERMAL_100K = 7.6483930888879314e-03
P_COLD_1P1RHO0 = 0.18070956498359024


def test_reference_state_pressure_is_zero():
    assert mg_pressure(NOMINAL_STEEL.rho0, NOMINAL_STEEL.T0) == pytest.approx(0.0, abs=1e-300)


def test_unit_conversion_of_specific_heat():
    assert NOMINAL_STEEL.cv_canonical == pytest.approx(CV_CANONICAL, rel=1e-14)


def test_thermal_term_against_high_precision_value():
    p = mg_pressure(NOMINAL_STEEL.rho0, NOMINAL_STEEL.T0 + 100.0)
    assert p == pytest.approx(P_THERMAL_100K, rel=1e-13)


def test_cold_term_against_high_precision_value():
    p = mg_pressure(1.1 * NOMINAL_STEEL.rho0, NOMINAL_STEEL.T0)
    assert p == pytest.approx(P_COLD_1P1RHO0, rel=1e-13)


def test_pressure_increases_with_temperature():
    rng = np.random.default_rng(7)
    for _ in range(50):
        rho = NOMINAL_STEEL.rho0 * rng.uniform(0.8, 1.3)
        t1, t2 = sorted(rng.uniform(100.0, 3000.0, size=2))
        if t1 == t2:
            continue
        assert mg_pressure(rho, t2) > mg_pressure(rho, t1)


def test_compression_singularity_raised():
    # chi -> 1/s1 as rho -> rho0 / (1 - 1/s1)
    rho_pole = NOMINAL_STEEL.rho0 / (1.0 - 1.0 / NOMINAL_STEEL.s1)
    with pytest.raises(CompressionSingularity):
        mg_pressure(rho_pole, NOMINAL_STEEL.T0)


def test_non_positive_density_raised():
    with pytest.raises(NonPositiveDensity):
        mg_pressure(0.0, 300.0)
    with pytest.raises(NonPositiveDensity):
        mg_pressure_from_energy(-1.0, 0.0)


def test_energy_form_reference_state():
    assert mg_pressure_from_energy(NOMINAL_STEEL.rho0, 0.0) == pytest.approx(0.0, abs=1e-300)


def test_energy_form_reduces_to_cold_curve_at_reference_energy():
    params = NOMINAL_STEEL
    for ratio in (0.9, 1.05, 1.2, 1.35):
        rho = ratio * params.rho0
        chi = 1.0 - params.rho0 / rho
        p_cold = eos._cold_pressure(chi, params)
        e_ref = eos._reference_energy(chi, params)
        assert mg_pressure_from_energy(rho, e_ref) == pytest.approx(p_cold, rel=1e-14, abs=1e-16)


def test_temperature_and_energy_forms_agree():
    rng = np.random.default_rng(11)
    params = NOMINAL_STEEL
    for _ in range(100):
        rho = params.rho0 * rng.uniform(0.7, 1.4)
        T = rng.uniform(50.0, 5000.0)
        e = mg_energy_of_temperature(rho, T, params)
        p_t = mg_pressure(rho, T, params)
        p_e = mg_pressure_from_energy(rho, e, params)
        assert p_e == pytest.approx(p_t, rel=1e-12, abs=1e-18)


def _fd_sound_speed_sq(rho, e, params, h=1e-6):
    """Central finite differences of the (rho, e) closure."""
    dp_drho = (
        mg_pressure_from_energy(rho * (1 + h), e, params)
        - mg_pressure_from_energy(rho * (1 - h), e, params)
    ) / (2 * rho * h)
    de = max(abs(e), 1e-3) * h
    dp_de = (
        mg_pressure_from_energy(rho, e + de, params)
        - mg_pressure_from_energy(rho, e - de, params)
    ) / (2 * de)
    p = mg_pressure_from_energy(rho, e, params)
    return dp_drho + p / rho**2 * dp_de


def test_sound_speed_at_reference_state_is_cs():
    c = mg_sound_speed(NOMINAL_STEEL.rho0, 0.0)
    assert c == pytest.approx(NOMINAL_STEEL.cs, rel=1e-10)


def test_sound_speed_matches_finite_differences_on_grid():
    params = NOMINAL_STEEL
    rhos = np.linspace(0.8, 1.35, 10) * params.rho0
    es = np.linspace(0.0, 5e-3, 10)
    for rho in rhos:
        for e in es:
            c = float(mg_sound_speed(rho, e, params))
            c2 = _fd_sound_speed_sq(rho, e, params)
            assert c**2 == pytest.approx(c2, rel=1e-6)


def test_sound_speed_floor_clamp():
    # a strongly negative energy drives c^2 below zero at mild expansion
    c = mg_sound_speed(0.8 * NOMINAL_STEEL.rho0, -0.5)
    assert c == pytest.approx(eos.SOUND_SPEED_FLOOR)


def test_ideal_gas_values():
    assert ideal_gas_pressure(1.0, 2.5, 1.4) == pytest.approx(1.0, rel=1e-15)
    assert ideal_gas_pressure(3.7, 0.0, 1.4) == 0.0
    rng = np.random.default_rng(3)
    for _ in range(20):
        rho, e, g = rng.uniform(0.1, 5.0), rng.uniform(0.0, 10.0), rng.uniform(1.1, 2.0)
        assert ideal_gas_pressure(rho, e, g) == pytest.approx((g - 1) * rho * e, rel=1e-15)
    with pytest.raises(NonPositiveDensity):
        ideal_gas_pressure(-0.1, 1.0)


def test_param_invariants_enforced():
    with pytest.raises(ValueError):
        EosParams(s1=0.9)
    with pytest.raises(ValueError):
        EosParams(rho0=-1.0)
    with pytest.raises(ValueError):
        EosParams(Gamma0=0.0)


def test_json_roundtrip():
    p = EosParams(T0=300.0, cs=0.5, s1=1.5, Gamma0=2.0, cV=5e10, rho0=7.9)
    q = EosParams.from_json(p.to_json())
    assert p == q
    assert '"T0_K"' in p.to_json()


def test_with_offsets():
    p = NOMINAL_STEEL.with_offsets([0.1, -0.1, 0.02, 0.0, -0.04])
    assert p.T0 == pytest.approx(NOMINAL_STEEL.T0 * 1.1)
    assert p.cs == pytest.approx(NOMINAL_STEEL.cs * 0.9)
    assert p.s1 == pytest.approx(NOMINAL_STEEL.s1 * 1.02)
    assert p.Gamma0 == NOMINAL_STEEL.Gamma0
    assert p.cV == pytest.approx(NOMINAL_STEEL.cV * 0.96)
    assert p.rho0 == NOMINAL_STEEL.rho0


def test_adapters_dispatch():
    mg = eos.as_eos(NOMINAL_STEEL)
    assert isinstance(mg, MieGruneisen)
    ig = eos.as_eos(IdealGas(1.4))
    assert isinstance(ig, IdealGas)
    with pytest.raises(TypeError):
        eos.as_eos("steel")
