"""Ground-truth oracle: substitute a candidate (u, v) into the governing
system by high-order central finite differences.

At each sample point the two residuals are

    R1 = 2i D_t u + e1 D_xx u + D_yy u - 2 e2 |u|^2 u - 2 u v,
    R2 = D_xx v - e1 (D_yy v + 2 D_xx |u|^2),

with central differences of order 2, 4 or 6.  ``verify`` evaluates them at
steps h and h/2, reports the observed convergence order, and normalizes the
tolerance by the root-mean-square magnitude of the individual PDE terms, so
quadratically growing fields are judged on the same footing as bounded ones.
An exact solution shows residuals that shrink at the nominal order until the
roundoff floor; a wrong constant in the fields shows an O(1) residual that
does not move with h.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .catalog import Solution
from .errors import EmptySampleError, StencilError

__all__ = ["ResidualReport", "residual_at", "verify",
           "DEFAULT_H", "DEFAULT_ORDER", "DEFAULT_TOL_REL", "DEFAULT_FLOOR_REL"]

DEFAULT_H = 1e-3
DEFAULT_ORDER = 4
DEFAULT_TOL_REL = 1e-7
# Residual-to-scale ratio below which a sample is considered to sit on the
# roundoff floor, where the observed order is no longer meaningful.
DEFAULT_FLOOR_REL = 1e-8

# offset: coefficient maps; apply as sum(c * f(x0 + k*h)) / h**deriv_order.
_D1 = {
    2: ((-1, -0.5), (1, 0.5)),
    4: ((-2, 1.0 / 12.0), (-1, -2.0 / 3.0), (1, 2.0 / 3.0), (2, -1.0 / 12.0)),
    6: ((-3, -1.0 / 60.0), (-2, 3.0 / 20.0), (-1, -3.0 / 4.0),
        (1, 3.0 / 4.0), (2, -3.0 / 20.0), (3, 1.0 / 60.0)),
}
_D2 = {
    2: ((-1, 1.0), (0, -2.0), (1, 1.0)),
    4: ((-2, -1.0 / 12.0), (-1, 4.0 / 3.0), (0, -5.0 / 2.0),
        (1, 4.0 / 3.0), (2, -1.0 / 12.0)),
    6: ((-3, 1.0 / 90.0), (-2, -3.0 / 20.0), (-1, 3.0 / 2.0),
        (0, -49.0 / 18.0), (1, 3.0 / 2.0), (2, -3.0 / 20.0), (3, 1.0 / 90.0)),
}


@dataclass(frozen=True)
class ResidualReport:
    """Aggregated residual magnitudes with observed convergence orders.

    ``max*``/``rms*`` are taken at the finer step h/2; ``order*`` compare
    the rms at h against h/2; ``n_points`` counts the samples whose stencils
    stayed inside the valid region.
    """

    max1: float
    rms1: float
    max2: float
    rms2: float
    order1: float
    order2: float
    n_points: int
    passed: bool

    def to_json_dict(self) -> dict:
        return {"max1": self.max1, "rms1": self.rms1,
                "max2": self.max2, "rms2": self.rms2,
                "order1": self.order1, "order2": self.order2,
                "n_points": self.n_points, "pass": self.passed}


def _check_order(order: int):
    if order not in _D1:
        raise StencilError(f"stencil order must be one of {tuple(_D1)}, "
                           f"got {order}")


def _stencil_valid(sol: Solution, t, x, y, h, order) -> bool:
    r = order // 2
    if not sol.valid(t, x, y):
        return False
    for k in range(1, r + 1):
        d = k * h
        if not (sol.valid(t + d, x, y) and sol.valid(t - d, x, y)
                and sol.valid(t, x + d, y) and sol.valid(t, x - d, y)
                and sol.valid(t, x, y + d) and sol.valid(t, x, y - d)):
            return False
    return True


def _residual_terms(sol: Solution, t, x, y, h, order):
    """R1, R2 plus the summed magnitudes of their individual terms."""
    eps1, eps2 = sol.variant.eps1, sol.variant.eps2
    u0 = sol.u(t, x, y)
    v0 = sol.v(t, x, y)

    def diff(eval_pt, table):
        return sum(c * eval_pt(k * h) for k, c in table)

    h2 = h * h
    du_dt = diff(lambda d: sol.u(t + d, x, y), _D1[order]) / h
    du_xx = diff(lambda d: sol.u(t, x + d, y), _D2[order]) / h2
    du_yy = diff(lambda d: sol.u(t, x, y + d), _D2[order]) / h2
    dv_xx = diff(lambda d: sol.v(t, x + d, y), _D2[order]) / h2
    dv_yy = diff(lambda d: sol.v(t, x, y + d), _D2[order]) / h2
    dg_xx = diff(lambda d: abs(sol.u(t, x + d, y)) ** 2, _D2[order]) / h2

    cubic = 2.0 * eps2 * (u0.real ** 2 + u0.imag ** 2) * u0
    coupling = 2.0 * u0 * v0
    r1 = 2j * du_dt + eps1 * du_xx + du_yy - cubic - coupling
    r2 = dv_xx - eps1 * (dv_yy + 2.0 * dg_xx)
    scale1 = (2.0 * abs(du_dt) + abs(du_xx) + abs(du_yy)
              + abs(cubic) + abs(coupling))
    scale2 = abs(dv_xx) + abs(dv_yy) + 2.0 * abs(dg_xx)
    return r1, r2, scale1, scale2


def residual_at(sol: Solution, t: float, x: float, y: float,
                h: float = DEFAULT_H, order: int = DEFAULT_ORDER):
    """Point residuals (R1 complex, R2 real) of the governing system.

    Raises StencilError when the stencil footprint leaves the valid region;
    callers sampling a grid skip such points.
    """
    _check_order(order)
    if not _stencil_valid(sol, t, x, y, h, order):
        raise StencilError(
            f"stencil at (t={t}, x={x}, y={y}, h={h}) touches invalid region")
    r1, r2, _, _ = _residual_terms(sol, t, x, y, h, order)
    return r1, r2


def _rms(values) -> float:
    if not values:
        return 0.0
    return math.sqrt(math.fsum(v * v for v in values) / len(values))


def _order_of(coarse: float, fine: float) -> float:
    tiny = 1e-300
    order = math.log2(max(coarse, tiny) / max(fine, tiny))
    return max(-20.0, min(20.0, order))


def verify(sol: Solution, sample, h: float = DEFAULT_H,
           order: int = DEFAULT_ORDER, tol_rel: float = DEFAULT_TOL_REL,
           floor_rel: float = DEFAULT_FLOOR_REL) -> ResidualReport:
    """Aggregate residuals over sample points at steps h and h/2.

    ``sample`` is an iterable of (t, x, y) points; points whose stencil
    footprint (at either step) leaves the valid region are skipped
    deterministically.  Passing requires, for each equation, rms at h/2
    within tol_rel of the term scale and either the nominal convergence
    order (within 0.5) or a residual already on the roundoff floor.  The
    effective floor is max(floor_rel, tol_rel/10), so an infinite tolerance
    passes vacuously and a loose tolerance does not demand clean convergence
    of residuals it would accept anyway.
    """
    _check_order(order)
    points = [p for p in sample
              if _stencil_valid(sol, *p, h, order)
              and _stencil_valid(sol, *p, h / 2.0, order)]
    if not points:
        raise EmptySampleError("no valid sample points for verification")

    r1_coarse, r2_coarse = [], []
    r1_fine, r2_fine = [], []
    s1_fine, s2_fine = [], []
    max1 = max2 = 0.0
    for t, x, y in points:
        a1, a2, _, _ = _residual_terms(sol, t, x, y, h, order)
        b1, b2, s1, s2 = _residual_terms(sol, t, x, y, h / 2.0, order)
        r1_coarse.append(abs(a1))
        r2_coarse.append(abs(a2))
        r1_fine.append(abs(b1))
        r2_fine.append(abs(b2))
        s1_fine.append(s1)
        s2_fine.append(s2)
        max1 = max(max1, abs(b1))
        max2 = max(max2, abs(b2))

    rms1 = _rms(r1_fine)
    rms2 = _rms(r2_fine)
    order1 = _order_of(_rms(r1_coarse), rms1)
    order2 = _order_of(_rms(r2_coarse), rms2)
    scale1 = 1.0 + _rms(s1_fine)
    scale2 = 1.0 + _rms(s2_fine)
    floor = max(floor_rel, 0.1 * tol_rel)
    order_ok1 = order1 >= order - 0.5 or rms1 <= floor * scale1
    order_ok2 = order2 >= order - 0.5 or rms2 <= floor * scale2
    passed = (rms1 <= tol_rel * scale1 and rms2 <= tol_rel * scale2
              and order_ok1 and order_ok2)
    return ResidualReport(max1, rms1, max2, rms2, order1, order2,
                          len(points), passed)
