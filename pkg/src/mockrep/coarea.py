"""Fiber measures of the intertwining map and the disintegration identities.

For a submersion point y of Y, the fiber measure nu_y is the Riemannian
volume element of the fiber divided by the Jacobian ``jphi``, realized here
as explicit nodes and weights from the per-system analytic fiber
parametrization (point, point pair, circle or truncated line).

The identities checked:

* disintegration of Lebesgue measure: ``int_X f dx = int_Y (int f dnu_y) dy``;
* covariance of the fibers under H: pushing nu_{h[y]} through the ground
  action multiplies it by ``alpha(h) beta(h)``;
* the fiber inner product ``y -> <f_y, (eta^h)_y>`` is the density of the
  image measure of ``f conj(eta^h) dx`` under phi.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import GroupElement, SemidirectSystem
from .errors import DomainError, UnsupportedSystemError
from .fields import Field
from .quadrature import box_rule

FIBER_MEMBERSHIP_TOL = 1e-8


@dataclass(frozen=True)
class FiberMeasure:
    """Quadrature nodes and weights realizing nu_y on the fiber over y."""

    y: np.ndarray
    nodes: np.ndarray
    weights: np.ndarray
    chart_desc: str

    @property
    def mass(self) -> float:
        return float(np.sum(self.weights))

    def integrate(self, f) -> complex:
        return complex(np.sum(self.weights * f(self.nodes)))


def fiber_quadrature(
    sys: SemidirectSystem,
    y,
    resolution: int | None = None,
    radius: float | None = None,
) -> FiberMeasure:
    """Build nu_y.  Raises if y is outside Y or the system has no fibers."""
    if sys.fiber_factory is None:
        raise UnsupportedSystemError(f"system '{sys.name}' has no fiber structure")
    y = np.atleast_1d(np.asarray(y, dtype=float))
    if resolution is None:
        resolution = int(sys.defaults.get("fiber_resolution", 64))
    if radius is None:
        radius = sys.defaults.get("fiber_radius", 12.0)
    nodes, weights, desc = sys.fiber_factory(y, resolution, radius)
    drift = np.max(np.abs(sys.phi(nodes) - y)) if nodes.size else 0.0
    if drift > FIBER_MEMBERSHIP_TOL:
        raise DomainError(f"fiber nodes drift off y by {drift:.2e}")
    if np.any(weights <= 0):
        raise DomainError("fiber weights must be positive")
    return FiberMeasure(y, nodes, weights, desc)


def y_rule(sys: SemidirectSystem, resolution: int | tuple | None = None):
    """Quadrature over the documented truncated region of Y.

    Returns ``(points (N, n), weights)``.  Systems may install an adapted
    rule (e.g. a quadratically mapped one near a critical boundary).
    """
    if resolution is None:
        resolution = [128] * sys.n
    builder = sys.defaults.get("y_rule_builder")
    if builder is not None:
        return builder(resolution)
    lo, hi = sys.defaults.get("y_box", ([-12.0] * sys.n, [12.0] * sys.n))
    res = np.broadcast_to(np.atleast_1d(resolution), (sys.n,))
    rule = box_rule(lo, hi, list(res))
    return rule.points, rule.weights


def coarea_sides(
    sys: SemidirectSystem,
    f: Field,
    y_resolution: int | tuple = 128,
    fiber_resolution: int = 64,
    radius: float | None = None,
) -> tuple[complex, complex]:
    """Both sides of the disintegration identity:

    ``int_X f dx`` (d-dimensional rule) and ``int_Y (int f dnu_y) dy``
    (fiber rules inside the truncated Y rule).
    """
    ypts, yw = y_rule(sys, y_resolution)
    inner = np.empty(ypts.shape[0], dtype=complex)
    for i, y in enumerate(ypts):
        fm = fiber_quadrature(sys, y, fiber_resolution, radius)
        inner[i] = fm.integrate(f)
    rhs = complex(np.sum(yw * inner))

    from .representation import default_quad

    quad = default_quad(sys)
    lhs = complex(np.sum(quad.weights * f(quad.points)))
    return lhs, rhs


def coarea_residual(
    sys: SemidirectSystem,
    f: Field,
    y_resolution: int | tuple = 128,
    fiber_resolution: int = 64,
    radius: float | None = None,
) -> float:
    """|int_X f dx  -  int_Y (int f dnu_y) dy| over the truncated region."""
    lhs, rhs = coarea_sides(sys, f, y_resolution, fiber_resolution, radius)
    return float(abs(lhs - rhs))


def covariance_residual(
    sys: SemidirectSystem,
    y,
    h,
    phi_test: Field,
    fiber_resolution: int = 96,
    radius: float | None = None,
) -> float:
    """Residual of the fiber covariance under the ground action of h.

    Compares ``int phi(h^{-1}.x) dnu_{h[y]}`` with
    ``alpha(h) beta(h) int phi dnu_y``.
    """
    y = np.atleast_1d(np.asarray(y, dtype=float))
    h = np.atleast_1d(np.asarray(h, dtype=float))
    hy = sys.act_n(h, y)
    hinv = sys.h_inverse(h)
    fm_hy = fiber_quadrature(sys, hy, fiber_resolution, radius)
    fm_y = fiber_quadrature(sys, y, fiber_resolution, radius)
    lhs = np.sum(fm_hy.weights * phi_test(sys.act_d(hinv, fm_hy.nodes)))
    rhs = float(sys.alpha(h)) * float(sys.beta(h)) * np.sum(fm_y.weights * phi_test(fm_y.nodes))
    return float(abs(lhs - rhs))


def omega_density(
    sys: SemidirectSystem,
    f: Field,
    eta: Field,
    h,
    y,
    fiber_resolution: int | None = None,
    radius: float | None = None,
) -> complex:
    """<f_y, (eta^h)_y> with respect to nu_y: the transform's fiber density."""
    h = np.atleast_1d(np.asarray(h, dtype=float))
    fm = fiber_quadrature(sys, y, fiber_resolution, radius)
    hinv = sys.h_inverse(h)
    vals = f(fm.nodes) * np.conj(eta(sys.act_d(hinv, fm.nodes)))
    return complex(np.sum(fm.weights * vals))


def image_density_residual(
    sys: SemidirectSystem,
    f: Field,
    eta: Field,
    h,
    y_resolution: int | tuple = 128,
    fiber_resolution: int = 64,
) -> float:
    """Total mass of the fiber density against the direct d-dim integral."""
    ypts, yw = y_rule(sys, y_resolution)
    vals = np.array([omega_density(sys, f, eta, h, y, fiber_resolution) for y in ypts])
    lhs = np.sum(yw * vals)

    from .representation import default_quad

    h = np.atleast_1d(np.asarray(h, dtype=float))
    hinv = sys.h_inverse(h)
    quad = default_quad(sys)
    pts, w = quad.points, quad.weights
    rhs = np.sum(w * f(pts) * np.conj(eta(sys.act_d(hinv, pts))))
    return float(abs(lhs - rhs))
