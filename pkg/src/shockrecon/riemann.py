"""Exact solution of the ideal-gas Riemann problem (Toro's method).

Used as an independent verification oracle for the planar shock-tube runs;
no code is shared with the time-marching solver.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class RiemannState:
    rho: float
    u: float
    p: float


SOD_LEFT = RiemannState(1.0, 0.0, 1.0)
SOD_RIGHT = RiemannState(0.125, 0.0, 0.1)


def _f_side(p, s: RiemannState, gamma):
    """Toro's f_K(p): velocity change across the left/right wave."""
    a = math.sqrt(gamma * s.p / s.rho)
    if p > s.p:  # shock
        A = 2.0 / ((gamma + 1.0) * s.rho)
        B = (gamma - 1.0) / (gamma + 1.0) * s.p
        return (p - s.p) * math.sqrt(A / (p + B))
    # rarefaction
    return 2.0 * a / (gamma - 1.0) * ((p / s.p) ** ((gamma - 1.0) / (2.0 * gamma)) - 1.0)


def _f_side_deriv(p, s: RiemannState, gamma):
    a = math.sqrt(gamma * s.p / s.rho)
    if p > s.p:
        A = 2.0 / ((gamma + 1.0) * s.rho)
        B = (gamma - 1.0) / (gamma + 1.0) * s.p
        return math.sqrt(A / (p + B)) * (1.0 - 0.5 * (p - s.p) / (p + B))
    return (p / s.p) ** (-(gamma + 1.0) / (2.0 * gamma)) / (s.rho * a)


def solve_star(left: RiemannState, right: RiemannState, gamma: float = 1.4, tol: float = 1e-12):
    """Star-region pressure and velocity via Newton iteration.

    Starts from the two-rarefaction approximation, which is positive and
    converges for all non-vacuum-generating data.
    """
    a_l = math.sqrt(gamma * left.p / left.rho)
    a_r = math.sqrt(gamma * right.p / right.rho)
    if 2.0 * (a_l + a_r) / (gamma - 1.0) <= right.u - left.u:
        raise ValueError("initial data generate vacuum")

    z = (gamma - 1.0) / (2.0 * gamma)
    p = ((a_l + a_r - 0.5 * (gamma - 1.0) * (right.u - left.u)) /
         (a_l / left.p**z + a_r / right.p**z)) ** (1.0 / z)
    for _ in range(100):
        f = _f_side(p, left, gamma) + _f_side(p, right, gamma) + right.u - left.u
        df = _f_side_deriv(p, left, gamma) + _f_side_deriv(p, right, gamma)
        dp = f / df
        p_new = max(p - dp, tol)
        if abs(p_new - p) < tol * max(p, 1.0):
            p = p_new
            break
        p = p_new
    u = 0.5 * (left.u + right.u) + 0.5 * (_f_side(p, right, gamma) - _f_side(p, left, gamma))
    return p, u


def sample(left: RiemannState, right: RiemannState, xi, gamma: float = 1.4):
    """Self-similar solution (rho, u, p) at speeds xi = x/t.

    xi may be a scalar or array; arrays are returned either way.
    """
    p_star, u_star = solve_star(left, right, gamma)
    xi = np.atleast_1d(np.asarray(xi, dtype=float))
    rho = np.empty_like(xi)
    u = np.empty_like(xi)
    p = np.empty_like(xi)

    gm, gp = gamma - 1.0, gamma + 1.0
    a_l = math.sqrt(gamma * left.p / left.rho)
    a_r = math.sqrt(gamma * right.p / right.rho)

    for k, s in enumerate(xi):
        if s <= u_star:  # left of the contact
            st = left
            a = a_l
            if p_star > st.p:  # left shock
                sh = st.u - a * math.sqrt(gp / (2 * gamma) * p_star / st.p + gm / (2 * gamma))
                if s < sh:
                    rho[k], u[k], p[k] = st.rho, st.u, st.p
                else:
                    r = st.rho * (p_star / st.p + gm / gp) / (gm / gp * p_star / st.p + 1.0)
                    rho[k], u[k], p[k] = r, u_star, p_star
            else:  # left rarefaction
                head = st.u - a
                a_star = a * (p_star / st.p) ** (gm / (2 * gamma))
                tail = u_star - a_star
                if s < head:
                    rho[k], u[k], p[k] = st.rho, st.u, st.p
                elif s > tail:
                    rho[k] = st.rho * (p_star / st.p) ** (1.0 / gamma)
                    u[k], p[k] = u_star, p_star
                else:
                    uu = 2.0 / gp * (a + gm / 2.0 * st.u + s)
                    aa = 2.0 / gp * (a + gm / 2.0 * (st.u - s))
                    rho[k] = st.rho * (aa / a) ** (2.0 / gm)
                    u[k] = uu
                    p[k] = st.p * (aa / a) ** (2.0 * gamma / gm)
        else:  # right of the contact
            st = right
            a = a_r
            if p_star > st.p:  # right shock
                sh = st.u + a * math.sqrt(gp / (2 * gamma) * p_star / st.p + gm / (2 * gamma))
                if s > sh:
                    rho[k], u[k], p[k] = st.rho, st.u, st.p
                else:
                    r = st.rho * (p_star / st.p + gm / gp) / (gm / gp * p_star / st.p + 1.0)
                    rho[k], u[k], p[k] = r, u_star, p_star
            else:  # right rarefaction
                head = st.u + a
                a_star = a * (p_star / st.p) ** (gm / (2 * gamma))
                tail = u_star + a_star
                if s > head:
                    rho[k], u[k], p[k] = st.rho, st.u, st.p
                elif s < tail:
                    rho[k] = st.rho * (p_star / st.p) ** (1.0 / gamma)
                    u[k], p[k] = u_star, p_star
                else:
                    uu = 2.0 / gp * (-a + gm / 2.0 * st.u + s)
                    aa = 2.0 / gp * (a - gm / 2.0 * (st.u - s))
                    rho[k] = st.rho * (aa / a) ** (2.0 / gm)
                    u[k] = uu
                    p[k] = st.p * (aa / a) ** (2.0 * gamma / gm)
    return rho, u, p


def sod_profile(x, t, x0=0.5, gamma: float = 1.4):
    """Exact Sod-tube profile at positions x and time t > 0."""
    xi = (np.asarray(x, dtype=float) - x0) / t
    return sample(SOD_LEFT, SOD_RIGHT, xi, gamma)
