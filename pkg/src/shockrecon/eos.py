"""Mie-Gruneisen and ideal-gas equations of state.

Canonical unit system: length cm, mass g, time us (microseconds).
Pressure then comes out in g cm^-1 us^-2 (= 100 GPa), specific energy in
cm^2/us^2, velocity in cm/us.  Specific heat values quoted in erg g^-1 eV^-1
are converted with 1 eV = 11604.5 K and 1 erg/g = 1e-12 cm^2/us^2.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import CompressionSingularity, NonPositiveDensity

EV_IN_KELVIN = 11604.5
ERG_PER_G = 1.0e-12          # cm^2/us^2 per erg/g

#: margin kept between the compression and the 1/s1 pole of the cold curve
EPS_DENOM = 1.0e-6

#: lower clamp applied to the sound speed [cm/us]
SOUND_SPEED_FLOOR = 1.0e-6


@dataclass(frozen=True)
class EosParams:
    """Parameter vector of the Mie-Gruneisen EOS plus the fixed reference density.

    T0 [K], cs [cm/us], s1 and Gamma0 dimensionless, cV [erg g^-1 eV^-1],
    rho0 [g/cm^3].  cs is the reference-state sound speed and s1 the slope of
    the linear shock Hugoniot.
    """

    T0: float = 293.15
    cs: float = 0.4569
    s1: float = 1.49
    Gamma0: float = 2.17
    cV: float = 5.18e10
    rho0: float = 7.896

    def __post_init__(self):
        if not (self.rho0 > 0 and self.cs > 0 and self.cV > 0 and self.T0 > 0):
            raise ValueError("rho0, cs, cV, T0 must be positive")
        if not self.s1 > 1:
            raise ValueError("s1 must exceed 1")
        if not self.Gamma0 > 0:
            raise ValueError("Gamma0 must be positive")

    @property
    def cv_canonical(self) -> float:
        """Specific heat in cm^2 us^-2 K^-1."""
        return self.cV / EV_IN_KELVIN * ERG_PER_G

    def with_offsets(self, offsets) -> "EosParams":
        """New parameters with fractional offsets on (T0, cs, s1, Gamma0, cV)."""
        dT0, dcs, ds1, dG, dcV = offsets
        return EosParams(
            T0=self.T0 * (1 + dT0),
            cs=self.cs * (1 + dcs),
            s1=self.s1 * (1 + ds1),
            Gamma0=self.Gamma0 * (1 + dG),
            cV=self.cV * (1 + dcV),
            rho0=self.rho0,
        )

    def to_json(self) -> str:
        return json.dumps(
            {
                "T0_K": self.T0,
                "cs_cm_per_us": self.cs,
                "s1": self.s1,
                "Gamma0": self.Gamma0,
                "cV_erg_per_g_eV": self.cV,
                "rho0_g_per_cc": self.rho0,
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "EosParams":
        d = json.loads(text)
        return cls(
            T0=d["T0_K"],
            cs=d["cs_cm_per_us"],
            s1=d["s1"],
            Gamma0=d["Gamma0"],
            cV=d["cV_erg_per_g_eV"],
            rho0=d["rho0_g_per_cc"],
        )


#: nominal stainless-steel parameter set used throughout
NOMINAL_STEEL = EosParams()


def _compression(rho, params: EosParams):
    """chi = 1 - rho0/rho, guarded against the cold-curve pole."""
    rho = np.asarray(rho, dtype=float)
    if np.any(rho <= 0.0):
        raise NonPositiveDensity(f"density must be positive, got min {rho.min()}")
    chi = 1.0 - params.rho0 / rho
    if np.any(chi >= 1.0 / params.s1 - EPS_DENOM):
        raise CompressionSingularity(
            f"compression {np.max(chi):.6g} too close to pole 1/s1 = {1.0 / params.s1:.6g}"
        )
    return chi


def _cold_pressure(chi, params: EosParams):
    """Cold (T = T0, thermal term removed) part of the pressure."""
    g = params.Gamma0
    return params.rho0 * params.cs**2 * chi * (1.0 - 0.5 * g * chi) / (1.0 - params.s1 * chi) ** 2


def _reference_energy(chi, params: EosParams):
    """Hugoniot energy closure e_ref(chi) = P_cold(chi) * chi / (2 rho0)."""
    return _cold_pressure(chi, params) * chi / (2.0 * params.rho0)


def mg_pressure(rho, T, params: EosParams = NOMINAL_STEEL):
    """Pressure [g cm^-1 us^-2] at density rho [g/cc] and temperature T [K]."""
    chi = _compression(rho, params)
    thermal = params.Gamma0 * params.rho0 * params.cv_canonical * (np.asarray(T, dtype=float) - params.T0)
    return _cold_pressure(chi, params) + thermal


def mg_pressure_from_energy(rho, e, params: EosParams = NOMINAL_STEEL):
    """Pressure from (rho, e) with the Hugoniot energy closure.

    P = P_cold(chi) + Gamma0 rho0 (e - e_ref(chi)); consistent with
    ``mg_pressure`` under T = T0 + (e - e_ref)/cv_canonical.
    """
    chi = _compression(rho, params)
    return _cold_pressure(chi, params) + params.Gamma0 * params.rho0 * (
        np.asarray(e, dtype=float) - _reference_energy(chi, params)
    )


def mg_energy_of_temperature(rho, T, params: EosParams = NOMINAL_STEEL):
    """Specific internal energy that makes (rho, e) match (rho, T)."""
    chi = _compression(rho, params)
    return _reference_energy(chi, params) + params.cv_canonical * (np.asarray(T, dtype=float) - params.T0)


def mg_sound_speed(rho, e, params: EosParams = NOMINAL_STEEL):
    """Sound speed [cm/us] from c^2 = dP/drho|_e + (P/rho^2) dP/de|_rho.

    The analytic derivative of the closure is used; the result is clamped
    at SOUND_SPEED_FLOOR where the squared speed would be non-positive.
    """
    rho = np.asarray(rho, dtype=float)
    chi = _compression(rho, params)
    g0r0 = params.Gamma0 * params.rho0
    c2ref = params.rho0 * params.cs**2
    s1 = params.s1

    # d/dchi of the cold curve and of the reference energy
    one_ms = 1.0 - s1 * chi
    n = chi * (1.0 - 0.5 * params.Gamma0 * chi)
    dn = 1.0 - params.Gamma0 * chi
    p_cold = c2ref * n / one_ms**2
    dp_cold = c2ref * (dn * one_ms + 2.0 * s1 * n) / one_ms**3
    de_ref = (dp_cold * chi + p_cold) / (2.0 * params.rho0)

    p = p_cold + g0r0 * (np.asarray(e, dtype=float) - p_cold * chi / (2.0 * params.rho0))
    dchi_drho = params.rho0 / rho**2
    c2 = (dp_cold - g0r0 * de_ref) * dchi_drho + (p / rho**2) * g0r0
    return np.sqrt(np.maximum(c2, SOUND_SPEED_FLOOR**2))


def ideal_gas_pressure(rho, e, gamma: float = 1.4):
    """P = (gamma - 1) rho e."""
    rho = np.asarray(rho, dtype=float)
    if np.any(rho <= 0.0):
        raise NonPositiveDensity("density must be positive")
    return (gamma - 1.0) * rho * np.asarray(e, dtype=float)


def ideal_gas_sound_speed(rho, e, gamma: float = 1.4):
    c2 = gamma * (gamma - 1.0) * np.asarray(e, dtype=float)
    return np.sqrt(np.maximum(c2, SOUND_SPEED_FLOOR**2))


class MieGruneisen:
    """(rho, e) -> (P, c) adapter for the hydro solver."""

    def __init__(self, params: EosParams = NOMINAL_STEEL):
        self.params = params

    def pressure(self, rho, e):
        return mg_pressure_from_energy(rho, e, self.params)

    def sound_speed(self, rho, e):
        return mg_sound_speed(rho, e, self.params)

    def linear_coeffs(self, rho):
        """(A, B) with P = A(rho) + B(rho) e; exact for this closure."""
        p = self.params
        chi = _compression(rho, p)
        g0r0 = p.Gamma0 * p.rho0
        a = _cold_pressure(chi, p) - g0r0 * _reference_energy(chi, p)
        return a, np.full_like(np.asarray(rho, dtype=float), g0r0)


class IdealGas:
    """Ideal-gas adapter, used for planar shock-tube verification."""

    def __init__(self, gamma: float = 1.4):
        if gamma <= 1.0:
            raise ValueError("gamma must exceed 1")
        self.gamma = gamma

    def pressure(self, rho, e):
        return ideal_gas_pressure(rho, e, self.gamma)

    def sound_speed(self, rho, e):
        return ideal_gas_sound_speed(rho, e, self.gamma)

    def linear_coeffs(self, rho):
        rho = np.asarray(rho, dtype=float)
        return np.zeros_like(rho), (self.gamma - 1.0) * rho


def as_eos(obj):
    """Coerce EosParams to the solver adapter; pass adapters through."""
    if isinstance(obj, EosParams):
        return MieGruneisen(obj)
    if hasattr(obj, "pressure") and hasattr(obj, "sound_speed"):
        return obj
    raise TypeError(f"not an equation of state: {obj!r}")
