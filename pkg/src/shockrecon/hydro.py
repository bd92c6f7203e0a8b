"""1D Lagrangian hydrodynamics for the imploding-shell test problem.

Staggered-grid scheme with von Neumann-Richtmyer artificial viscosity:
velocities live on nodes, thermodynamic state on cells, cell masses are
constant in time (exact mass conservation).  Only the shell material is
meshed; the surrounding vacuum exerts no forces, so both shell surfaces
are zero-pressure free boundaries and the near-vacuum density floor is
applied when sampling onto the fixed output grid.  A geometry switch
selects spherical shells or a planar slab; the planar mode exists so the
solver can be verified against the exact ideal-gas shock-tube solution.

Units: cm, g, us throughout (see eos module).
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, replace

import numpy as np

from . import eos as eos_mod
from .errors import CompressionSingularity, InvalidSetup, TimestepCollapse

FOUR_PI = 4.0 * np.pi
DT_MIN = 1.0e-9          # us; below this the step is considered collapsed
DT_GROWTH = 1.2          # max per-step growth of dt


@dataclass(frozen=True)
class ImplosionSetup:
    """Initial condition and solver knobs for the spherical implosion.

    n_cells is the domain-equivalent resolution: the shell is meshed with
    n_cells * (r_outer - r_inner) / r_domain cells so the cell size matches
    a uniform n_cells grid over [0, r_domain].
    """

    r_inner: float = 8.0           # cm
    r_outer: float = 10.0          # cm
    v_implosion: float = -0.0675   # cm/us (-675 m/s)
    rho_init: float = 7.896        # g/cc
    r_domain: float = 16.0         # cm
    n_cells: int = 650
    cfl: float = 0.5
    c_quad: float = 2.0            # quadratic viscosity coefficient
    c_lin: float = 0.5             # linear viscosity coefficient
    rho_floor: float = 1.0e-6      # g/cc reported for the void region

    def validate(self):
        if not (0.0 < self.r_inner < self.r_outer <= self.r_domain):
            raise InvalidSetup(
                f"need 0 < r_inner < r_outer <= r_domain, got "
                f"{self.r_inner}, {self.r_outer}, {self.r_domain}"
            )
        if self.n_cells < 10:
            raise InvalidSetup("n_cells must be at least 10")
        if not (0.0 < self.cfl < 1.0):
            raise InvalidSetup("cfl must lie in (0, 1)")
        if self.rho_init <= 0.0 or self.rho_floor <= 0.0:
            raise InvalidSetup("densities must be positive")

    @property
    def dx(self) -> float:
        return self.r_domain / self.n_cells

    @property
    def n_shell_cells(self) -> int:
        n = int(round(self.n_cells * (self.r_outer - self.r_inner) / self.r_domain))
        return max(n, 4)

    def shell_mass(self) -> float:
        return FOUR_PI / 3.0 * (self.r_outer**3 - self.r_inner**3) * self.rho_init


@dataclass(frozen=True)
class SnapshotSchedule:
    """Uniformly spaced sampling times t0 + i*dt, i = 0..n-1."""

    t0: float = 63.0
    dt: float = 0.5
    n: int = 4

    def __post_init__(self):
        if self.dt <= 0.0:
            raise InvalidSetup("snapshot spacing must be positive")
        if self.n < 1:
            raise InvalidSetup("need at least one snapshot")

    @property
    def times(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(self.n)


@dataclass
class HydroState:
    """Lagrangian state; arrays are owned by the state."""

    r: np.ndarray          # node radii, shape (nc+1,)
    u: np.ndarray          # node velocities, shape (nc+1,)
    rho: np.ndarray        # cell densities, shape (nc,)
    e: np.ndarray          # cell specific internal energies, shape (nc,)
    m: np.ndarray          # cell masses, constant, shape (nc,)
    t: float = 0.0
    geometry: str = "spherical"
    inner_bc: str = "free"         # 'free' (P_ext = 0) or 'wall' (u = 0)
    outer_bc: str = "free"
    cfl: float = 0.5
    c_quad: float = 2.0
    c_lin: float = 0.5
    last_dt: float = np.inf

    def copy(self) -> "HydroState":
        return replace(
            self,
            r=self.r.copy(), u=self.u.copy(), rho=self.rho.copy(),
            e=self.e.copy(), m=self.m.copy(),
        )

    @property
    def n_cells(self) -> int:
        return self.m.size

    def cell_volumes(self) -> np.ndarray:
        return _volumes(self.r, self.geometry)

    def total_mass(self) -> float:
        return float(self.m.sum())

    def total_energy(self) -> float:
        """Internal plus kinetic energy (nodal-mass lumping for the latter)."""
        mn = _node_masses(self.m)
        return float(np.dot(self.m, self.e) + 0.5 * np.dot(mn, self.u**2))


def _volumes(r, geometry):
    if geometry == "spherical":
        return FOUR_PI / 3.0 * np.diff(r**3)
    return np.diff(r)


def _areas(r, geometry):
    if geometry == "spherical":
        return FOUR_PI * r**2
    return np.ones_like(r)


def _node_masses(m):
    mn = np.empty(m.size + 1)
    mn[0] = 0.5 * m[0]
    mn[-1] = 0.5 * m[-1]
    mn[1:-1] = 0.5 * (m[:-1] + m[1:])
    return mn


def init_implosion(setup: ImplosionSetup) -> HydroState:
    """Uniform shell moving inward; both surfaces free, vacuum outside.

    Mesh nodes sit exactly on r_inner and r_outer, so the total mass equals
    the closed-form shell volume times rho_init to machine precision.
    """
    setup.validate()
    n = setup.n_shell_cells
    r = np.linspace(setup.r_inner, setup.r_outer, n + 1)
    rho = np.full(n, setup.rho_init)
    m = rho * _volumes(r, "spherical")
    u = np.full(n + 1, setup.v_implosion)
    return HydroState(
        r=r, u=u, rho=rho, e=np.zeros(n), m=m,
        t=0.0, geometry="spherical", inner_bc="free", outer_bc="free",
        cfl=setup.cfl, c_quad=setup.c_quad, c_lin=setup.c_lin,
    )


def init_planar_riemann(rho_l, u_l, p_l, rho_r, u_r, p_r, n_cells=1000,
                        length=1.0, x0=0.5, gamma=1.4, cfl=0.5,
                        c_quad=2.0, c_lin=0.5) -> HydroState:
    """Planar two-state slab between walls, for shock-tube verification."""
    r = np.linspace(0.0, length, n_cells + 1)
    centers = 0.5 * (r[:-1] + r[1:])
    left = centers < x0
    rho = np.where(left, rho_l, rho_r)
    p = np.where(left, p_l, p_r)
    e = p / ((gamma - 1.0) * rho)
    u = np.where(r < x0, u_l, u_r)
    m = rho * np.diff(r)
    return HydroState(
        r=r, u=u, rho=rho, e=e, m=m,
        t=0.0, geometry="planar", inner_bc="wall", outer_bc="wall",
        cfl=cfl, c_quad=c_quad, c_lin=c_lin,
    )


def _try_step(state: HydroState, eos, dt, p, q):
    """Attempt one step of size dt; returns None if the mesh would tangle."""
    mn = _node_masses(state.m)
    ptot = p + q
    area = _areas(state.r, state.geometry)
    a = np.empty(state.n_cells + 1)
    a[1:-1] = area[1:-1] * (ptot[:-1] - ptot[1:]) / mn[1:-1]
    a[0] = -area[0] * ptot[0] / mn[0]             # vacuum inside
    a[-1] = area[-1] * ptot[-1] / mn[-1]          # vacuum outside
    u_new = state.u + dt * a
    if state.inner_bc == "wall":
        u_new[0] = 0.0
    if state.outer_bc == "wall":
        u_new[-1] = 0.0
    r_new = state.r + dt * u_new
    if r_new[0] < 0.0:
        # inner surface crossed the origin: reflect it (energy conserving);
        # the viscous stagnation shock thermalizes the collision
        r_new[0] = -r_new[0]
        u_new[0] = -u_new[0]
    if np.any(np.diff(r_new) <= 0.0):
        return None

    vol_new = _volumes(r_new, state.geometry)
    rho_new = state.m / vol_new
    dv = 1.0 / rho_new - 1.0 / state.rho

    # energy update with time-centered pressure; both EOS forms are linear
    # in e (P = A + B e), which makes the centering exactly solvable
    acoef, bcoef = eos.linear_coeffs(rho_new)
    e_new = (state.e - (0.5 * (p + acoef) + q) * dv) / (1.0 + 0.5 * bcoef * dv)

    return replace(
        state, r=r_new, u=u_new, rho=rho_new, e=e_new,
        t=state.t + dt, last_dt=dt,
    )


def advance(state: HydroState, eos, dt_max=np.inf) -> HydroState:
    """One explicit step; dt from the CFL condition, capped by dt_max."""
    eos = eos_mod.as_eos(eos)
    p = np.asarray(eos.pressure(state.rho, state.e), dtype=float)
    c = np.asarray(eos.sound_speed(state.rho, state.e), dtype=float)

    dr = np.diff(state.r)
    du = np.diff(state.u)
    dt = state.cfl * float(np.min(dr / (c + np.abs(du) + 1e-30)))
    dt = min(dt, dt_max, DT_GROWTH * state.last_dt)
    if not np.isfinite(dt) or dt < DT_MIN:
        raise TimestepCollapse(f"dt = {dt:.3e} us at t = {state.t:.6f} us")

    compress = du < 0.0
    q = np.where(
        compress,
        state.c_quad * state.rho * du**2 + state.c_lin * state.rho * c * np.abs(du),
        0.0,
    )

    for _ in range(60):
        try:
            nxt = _try_step(state, eos, dt, p, q)
        except CompressionSingularity:
            nxt = None       # overshoot past the EOS pole: retry smaller
        if nxt is not None:
            return nxt
        dt *= 0.5
        if dt < DT_MIN:
            break
    raise TimestepCollapse(f"mesh tangling at t = {state.t:.6f} us")


def advance_to(state: HydroState, eos, t_target: float) -> HydroState:
    """Advance until state.t reaches t_target (final step clipped)."""
    while state.t < t_target - 1e-12:
        state = advance(state, eos, dt_max=t_target - state.t)
    return state


# --- uniform-grid output ---

SEQUENCE_MAGIC = b"DSQ1"
SEQUENCE_VERSION = 1
_HEADER = struct.Struct("<4sBHB3d")      # magic, version, Nr, N, dr, t0, dt
assert _HEADER.size == 32


@dataclass
class DensitySequence:
    """N radial density snapshots on a shared uniform grid.

    The grid divides [0, n_radial*dr] into equal cells; samples are cell
    averages attached to cell centers (k + 1/2) * dr.
    """

    rho: np.ndarray              # shape (n_times, n_radial)
    dr: float
    t0: float
    dt: float

    def __post_init__(self):
        self.rho = np.ascontiguousarray(self.rho, dtype=np.float64)
        if self.rho.ndim != 2:
            raise ValueError("rho must be 2-D (snapshots x radius)")

    @property
    def n_times(self) -> int:
        return self.rho.shape[0]

    @property
    def n_radial(self) -> int:
        return self.rho.shape[1]

    @property
    def times(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(self.n_times)

    def centers(self) -> np.ndarray:
        return (np.arange(self.n_radial) + 0.5) * self.dr

    def cell_volumes(self) -> np.ndarray:
        return shell_volumes(self.n_radial, self.dr)

    def masses(self) -> np.ndarray:
        """Enclosed mass per snapshot [g]."""
        return self.rho @ self.cell_volumes()

    def to_bytes(self) -> bytes:
        head = _HEADER.pack(
            SEQUENCE_MAGIC, SEQUENCE_VERSION,
            self.n_radial, self.n_times,
            self.dr, self.t0, self.dt,
        )
        return head + self.rho.astype("<f8").tobytes()

    @classmethod
    def from_bytes(cls, blob: bytes) -> "DensitySequence":
        magic, version, nr, nt, dr, t0, dt = _HEADER.unpack_from(blob, 0)
        if magic != SEQUENCE_MAGIC:
            raise ValueError("bad magic; not a density-sequence blob")
        if version != SEQUENCE_VERSION:
            raise ValueError(f"unsupported version {version}")
        data = np.frombuffer(blob, dtype="<f8", count=nr * nt, offset=_HEADER.size)
        return cls(rho=data.reshape(nt, nr).copy(), dr=dr, t0=t0, dt=dt)

    def save(self, path):
        with open(path, "wb") as f:
            f.write(self.to_bytes())

    @classmethod
    def load(cls, path) -> "DensitySequence":
        with open(path, "rb") as f:
            return cls.from_bytes(f.read())


def shell_volumes(n: int, dr: float) -> np.ndarray:
    """Spherical shell volumes of the n uniform cells [k dr, (k+1) dr]."""
    edges = np.arange(n + 1) * dr
    return FOUR_PI / 3.0 * np.diff(edges**3)


def resample_to_uniform(state: HydroState, n_out: int, dr_out: float,
                        fill: float = 0.0) -> np.ndarray:
    """Conservative remap of cell densities onto the uniform output grid.

    Mass in the overlap of every Lagrangian cell with every output cell is
    transferred exactly; output volume not covered by the mesh is filled
    with density ``fill``.
    """
    edges = np.arange(n_out + 1) * dr_out
    if state.geometry == "spherical":
        vol_of = lambda x: FOUR_PI / 3.0 * x**3
    else:
        vol_of = lambda x: x
    vol_bins = np.diff(vol_of(edges))
    mass_out = np.zeros(n_out)
    covered = np.zeros(n_out)
    r = state.r
    k0 = np.searchsorted(edges, r[:-1], side="right") - 1
    k1 = np.searchsorted(edges, r[1:], side="left")
    for i in range(state.n_cells):
        a, b = r[i], r[i + 1]
        if a >= edges[-1]:
            break
        for k in range(max(k0[i], 0), min(k1[i], n_out)):
            left = max(a, edges[k])
            right = min(b, edges[k + 1])
            if right > left:
                dv = vol_of(right) - vol_of(left)
                mass_out[k] += state.rho[i] * dv
                covered[k] += dv
    mass_out += fill * np.maximum(vol_bins - covered, 0.0)
    return mass_out / vol_bins


def run_and_sample(setup: ImplosionSetup, eos, schedule: SnapshotSchedule,
                   n_out: int = 360, dr_out: float | None = None) -> DensitySequence:
    """Run the implosion and sample densities at the scheduled times."""
    if dr_out is None:
        dr_out = setup.dx
    state = init_implosion(setup)
    frames = np.empty((schedule.n, n_out))
    for k, t_snap in enumerate(schedule.times):
        state = advance_to(state, eos, t_snap)
        frames[k] = resample_to_uniform(state, n_out, dr_out, fill=setup.rho_floor)
    return DensitySequence(rho=frames, dr=dr_out, t0=schedule.t0, dt=schedule.dt)
