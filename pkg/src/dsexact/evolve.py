"""Independent dynamical cross-check: split-step Fourier evolution of the
e1=-1 variant on a periodic box.

The evolution equation splits into an exactly solvable linear part,

    2i u_t + e1 u_xx + u_yy = 0   ->   uhat *= exp(-i (e1 kx^2 + ky^2) dt / 2),

and an exactly solvable nonlinear part,

    2i u_t = 2 e2 |u|^2 u + 2 u v   ->   u *= exp(-i (e2 |u|^2 + v) dt),

where v comes from the spectral inversion of the mean-flow constraint
(e1=-1 makes it elliptic):

    vhat(k) = -2 kx^2 / (kx^2 + ky^2) * ghat(k),   g = |u|^2,  k != 0.

|u| is pointwise invariant under the nonlinear phase rotation, so v is
frozen during that substep and the rotation is exact.  The k=0 mode of v is
a free gauge constant; it feeds a uniform phase into u, so cross-checks pin
it to the box mean of the exact solution's v.

The e1=+1 variant is excluded on purpose: its constraint is a wave operator,
resonant on kx^2 = ky^2 under periodic conditions.  Solutions of that
variant are still verified by the residual oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .catalog import Solution, Variant, eval_solution
from .errors import BlowupError, ConfigError, PeriodicityError, \
    UnsupportedVariant

__all__ = ["Field", "make_field", "poisson_v", "step", "mass", "crosscheck"]

# Wraparound mismatch (relative to the field scale) beyond which a solution
# is rejected as aperiodic on the requested box.
_PERIODICITY_TOL = 1e-9


def _require_power_of_two(n: int, name: str):
    if n < 2 or (n & (n - 1)) != 0:
        raise ConfigError(f"{name} must be a power of two >= 2, got {n}")


@dataclass
class Field:
    """Uniform-grid samples of (u, v) on a periodic box at one time.

    u[ix, iy] lives at (ix*lx/nx, iy*ly/ny).  ``v_mean`` records the gauge
    constant used when reconstructing v from |u|^2.
    """

    lx: float
    ly: float
    u: np.ndarray
    v: np.ndarray
    t: float
    v_mean: float

    def __post_init__(self):
        nx, ny = self.u.shape
        _require_power_of_two(nx, "Nx")
        _require_power_of_two(ny, "Ny")
        if self.v.shape != self.u.shape:
            raise ConfigError("u and v grids must have the same shape")

    @property
    def nx(self) -> int:
        return self.u.shape[0]

    @property
    def ny(self) -> int:
        return self.u.shape[1]


def _wavenumbers(field: Field):
    kx = 2.0 * math.pi * np.fft.fftfreq(field.nx, d=field.lx / field.nx)
    ky = 2.0 * math.pi * np.fft.fftfreq(field.ny, d=field.ly / field.ny)
    return kx[:, None], ky[None, :]


def poisson_v(g: np.ndarray, lx: float, ly: float, variant: Variant,
              v_mean: float) -> np.ndarray:
    """Invert the mean-flow constraint for v given g = |u|^2 (e1=-1 only)."""
    if variant.eps1 != -1:
        raise UnsupportedVariant(
            "spectral inversion of the mean-flow constraint needs eps1=-1; "
            "the eps1=+1 constraint is hyperbolic on a periodic box")
    g = np.asarray(g, dtype=float)
    nx, ny = g.shape
    _require_power_of_two(nx, "Nx")
    _require_power_of_two(ny, "Ny")
    kx = 2.0 * math.pi * np.fft.fftfreq(nx, d=lx / nx)[:, None]
    ky = 2.0 * math.pi * np.fft.fftfreq(ny, d=ly / ny)[None, :]
    k2 = kx * kx + ky * ky
    ghat = np.fft.fft2(g)
    with np.errstate(divide="ignore", invalid="ignore"):
        vhat = np.where(k2 > 0.0, -2.0 * kx * kx / np.where(k2 > 0, k2, 1.0)
                        * ghat, 0.0)
    vhat[0, 0] = v_mean * nx * ny
    return np.real(np.fft.ifft2(vhat))


def mass(field: Field) -> float:
    """Discrete |u|^2 mass, sum |u|^2 dx dy."""
    dx = field.lx / field.nx
    dy = field.ly / field.ny
    return float(np.sum(np.abs(field.u) ** 2)) * dx * dy


def step(field: Field, variant: Variant, dt: float) -> Field:
    """One Strang step: half linear, full nonlinear, half linear."""
    if variant.eps1 != -1:
        raise UnsupportedVariant("time stepping is limited to eps1=-1")
    kx, ky = _wavenumbers(field)
    half = np.exp(-1j * (variant.eps1 * kx * kx + ky * ky) * dt / 4.0)

    u = np.fft.ifft2(np.fft.fft2(field.u) * half)
    g = np.abs(u) ** 2
    v = poisson_v(g, field.lx, field.ly, variant, field.v_mean)
    u = u * np.exp(-1j * (variant.eps2 * g + v) * dt)
    u = np.fft.ifft2(np.fft.fft2(u) * half)
    if not np.all(np.isfinite(u)):
        raise BlowupError("NaN or overflow in u during time step")

    v_out = poisson_v(np.abs(u) ** 2, field.lx, field.ly, variant,
                      field.v_mean)
    return Field(field.lx, field.ly, u, v_out, field.t + dt, field.v_mean)


def make_field(sol: Solution, lx: float, ly: float, n: int,
               t: float = 0.0, v_mean=None) -> Field:
    """Sample a Solution on an n x n periodic box grid.

    ``v_mean`` None takes the grid mean of the exact v (the gauge that keeps
    the reconstructed v aligned with the exact one).
    """
    _require_power_of_two(n, "N")
    xs = np.arange(n) * (lx / n)
    ys = np.arange(n) * (ly / n)
    u = np.empty((n, n), dtype=complex)
    v = np.empty((n, n), dtype=float)
    for i, x in enumerate(xs):
        for j, y in enumerate(ys):
            uc, vc, ok = eval_solution(sol, t, float(x), float(y))
            if not ok:
                raise PeriodicityError(
                    f"solution invalid at grid point ({x:g}, {y:g}); "
                    "cannot seed the evolver")
            u[i, j] = uc
            v[i, j] = vc
    if v_mean is None:
        v_mean = float(np.mean(v))
    return Field(lx, ly, u, v, float(t), float(v_mean))


def _check_box_periodic(sol: Solution, lx: float, ly: float, t: float):
    scale = 1.0
    probes = [(0.13 * lx, 0.29 * ly), (0.61 * lx, 0.83 * ly),
              (0.37 * lx, 0.52 * ly), (0.0, 0.0)]
    for x, y in probes:
        u0, v0, ok0 = eval_solution(sol, t, x, y)
        ux, vx, okx = eval_solution(sol, t, x + lx, y)
        uy, vy, oky = eval_solution(sol, t, x, y + ly)
        if not (ok0 and okx and oky):
            raise PeriodicityError(
                f"solution invalid near box corner at t={t:g}")
        scale = max(scale, abs(u0), abs(v0))
        err = max(abs(ux - u0), abs(uy - u0), abs(vx - v0), abs(vy - v0))
        if err > _PERIODICITY_TOL * scale:
            raise PeriodicityError(
                f"fields not periodic on the {lx:g} x {ly:g} box at t={t:g} "
                f"(wraparound mismatch {err:g})")


def crosscheck(sol: Solution, lx: float, ly: float, n: int, t_final: float,
               dt: float, v_mean=None) -> dict:
    """Evolve a sampled catalog solution and report its drift.

    The solution must carry periodicity metadata and actually wrap around
    the given box (checked numerically at the start and end times).  Returns
    a JSON-ready report with max/L2 deviations of u from the exact solution
    at the end time and the mass drift.
    """
    if sol.variant.eps1 != -1:
        raise UnsupportedVariant("cross-check is limited to eps1=-1")
    if sol.periodicity is None:
        raise PeriodicityError(
            "solution carries no periodicity metadata; cannot cross-check")
    n_steps = int(round(t_final / dt)) if dt > 0 else 0
    t_end = n_steps * dt
    _check_box_periodic(sol, lx, ly, 0.0)
    if n_steps:
        _check_box_periodic(sol, lx, ly, t_end)

    field = make_field(sol, lx, ly, n, t=0.0, v_mean=v_mean)
    mass0 = mass(field)
    for i in range(n_steps):
        try:
            field = step(field, sol.variant, dt)
        except BlowupError as err:
            raise BlowupError(f"{err} (step {i + 1} of {n_steps})") from None

    xs = np.arange(n) * (lx / n)
    ys = np.arange(n) * (ly / n)
    u_exact = np.empty((n, n), dtype=complex)
    for i, x in enumerate(xs):
        for j, y in enumerate(ys):
            uc, _, ok = eval_solution(sol, t_end, float(x), float(y))
            if not ok:
                raise PeriodicityError(
                    f"solution invalid at ({x:g}, {y:g}) at t={t_end:g}")
            u_exact[i, j] = uc

    diff = field.u - u_exact
    dx = lx / n
    dy = ly / n
    mass1 = mass(field)
    return {
        "max_dev": float(np.max(np.abs(diff))),
        "l2_dev": float(math.sqrt(np.sum(np.abs(diff) ** 2) * dx * dy)),
        "mass_initial": mass0,
        "mass_final": mass1,
        "mass_drift": abs(mass1 - mass0),
        "n_steps": n_steps,
        "t_final": t_end,
        "dt": dt,
        "n": n,
        "box": [lx, ly],
        "v_mean": field.v_mean,
    }
