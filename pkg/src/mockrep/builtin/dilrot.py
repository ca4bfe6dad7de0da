"""Dilation-rotation system: G = R x| (R_+ x T) acting on the plane.

Chart ``h = (t, theta)`` with t > 0 and theta in [0, 2 pi).  H acts on R by
``h[y] = t^2 y`` (so ``alpha = t^-2``) and on R^2 by rotation and scaling
``h . x = t R_theta x`` (``beta = t^2``).  Haar measure of H is
``dt dtheta / (2 pi t)``; the left Haar measure of G is ``t da dt dtheta/2pi``
and the modular function of G is ``t^2``.

``phi(x) = |x|^2`` with ``jphi = 2|x|``.  X = R^2 \\ {0}, Y = (0, inf) is a
single orbit with origin 1, section ``h(y) = (sqrt(y), 0)`` and compact
stabilizer T.  The orbit measure is Lebesgue on Y, making the stabilizer
measure ``dtheta / 4 pi`` (total mass 1/2).  Fibers are circles; the fiber
measure is ``dxi / 2`` on the angle chart, of total mass pi for every y.

The reference analyzing vector has radial profile ``2 t exp(-t^2)/sqrt(pi)``
on every angular mode |m| <= band (default 4): each mode's scale-energy
``int |profile|^2 dt/t`` equals ``1/pi``.
"""

from __future__ import annotations

import numpy as np

from ..core import FactorSpec, OrbitMetadata, SemidirectSystem, StabilizerInfo
from ..errors import ParameterError
from ..fields import from_callable
from ..quadrature import gauss_legendre, periodic


def _rot(theta):
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s], [s, c]])


def radial_profile(t):
    t = np.asarray(t, float)
    return 2.0 * t * np.exp(-t * t) / np.sqrt(np.pi)


def _eta_reference(band=4):
    """Angular-band analyzing vector; the angular factor is a Dirichlet sum."""
    band = int(band)

    def fn(p):
        x1, x2 = p[..., 0], p[..., 1]
        r = np.hypot(x1, x2)
        xi = np.arctan2(x2, x1)
        ang = np.ones(p.shape[:-1], dtype=complex)
        for m in range(1, band + 1):
            ang = ang + 2.0 * np.cos(m * xi)
        return radial_profile(r) * ang

    return from_callable(fn, 2, support=([-6.0, -6.0], [6.0, 6.0]),
                         meta={"name": "reference", "kind": "angular_band",
                               "band": band, "radial": radial_profile,
                               "radial_support": 5.5})


class AngularData:
    """Radial profiles per angular mode, for the angular-Fourier criterion."""

    def __init__(self, profiles: dict):
        self.profiles = dict(profiles)

    def modes(self):
        return sorted(self.profiles)

    def __call__(self, t, mode):
        fn = self.profiles.get(int(mode))
        if fn is None:
            return np.zeros_like(np.asarray(t, float))
        return fn(np.asarray(t, float))


def _eta_reference_angular(band=4) -> AngularData:
    return AngularData({m: radial_profile for m in range(-int(band), int(band) + 1)})


def _f_banded(coeffs=(1.0, 0.6, 0.3)):
    """Gaussian envelope with angular modes 0..len(coeffs)-1 (within the band)."""

    def fn(p):
        x1, x2 = p[..., 0], p[..., 1]
        r2 = x1 * x1 + x2 * x2
        z = x1 + 1j * x2
        out = np.zeros(p.shape[:-1], dtype=complex)
        for m, c in enumerate(coeffs):
            out = out + c * z**m
        return out * np.exp(-r2)

    return from_callable(fn, 2, support=([-6.0, -6.0], [6.0, 6.0]),
                         meta={"name": "banded_gaussian"})


def _tau_rule(z, resolution, radius):
    from ..quadrature import log_rule

    rule = log_rule(1e-10, radius**2, resolution, kind="gauss")
    return rule.nodes[:, None], rule.weights.copy()


def _build(phi, jphi, name):
    def act_d(h, x):
        return float(h[0]) * (np.asarray(x, float) @ _rot(float(h[1])).T)

    def h_compose(h1, h2):
        h1, h2 = np.asarray(h1, float), np.asarray(h2, float)
        out = np.empty(np.broadcast_shapes(h1.shape, h2.shape))
        out[..., 0] = h1[..., 0] * h2[..., 0]
        out[..., 1] = np.mod(h1[..., 1] + h2[..., 1], 2.0 * np.pi)
        return out

    def h_inverse(h):
        h = np.asarray(h, float)
        out = np.empty(h.shape)
        out[..., 0] = 1.0 / h[..., 0]
        out[..., 1] = np.mod(-h[..., 1], 2.0 * np.pi)
        return out

    def fiber_factory(y, resolution, radius):
        y0 = float(np.asarray(y, float).reshape(-1)[0])
        if not y0 > 0:
            from ..errors import DomainError

            raise DomainError(f"{y0} is outside Y = (0, inf)")
        rule = periodic(int(resolution))
        r = np.sqrt(y0)
        nodes = np.stack([r * np.cos(rule.nodes), r * np.sin(rule.nodes)], axis=-1)
        # arclength element r dxi divided by jphi = 2r
        return nodes, rule.weights / 2.0, "circle"

    orbit = OrbitMetadata(
        z_values=(0,),
        orbit_label=lambda y: 0,
        origin=lambda z: np.array([1.0]),
        section_h=lambda y: np.array(
            [np.sqrt(float(np.asarray(y).reshape(-1)[0])), 0.0]
        ),
        stabilizer=lambda z: StabilizerInfo(
            kind="compact",
            volume=0.5,
            param_range=(0.0, 2.0 * np.pi),
            periodic=True,
            embed=lambda s: np.stack(
                [np.ones_like(np.asarray(s, float)), np.asarray(s, float)], axis=-1
            ),
            ds_density=lambda s: np.full_like(np.asarray(s, float), 1.0 / (4.0 * np.pi)),
        ),
        tau_rule=_tau_rule,
        lambda_weights={0: 1.0},
    )

    return SemidirectSystem(
        name=name,
        n=1,
        d=2,
        h_dim=2,
        h_factors=(FactorSpec("scale"), FactorSpec("angle", period=2.0 * np.pi)),
        act_n=lambda h, y: float(h[0]) ** 2 * np.asarray(y, float),
        act_d=act_d,
        alpha=lambda h: np.asarray(h, float)[..., 0] ** -2.0,
        beta=lambda h: np.asarray(h, float)[..., 0] ** 2.0,
        delta_h=lambda h: np.ones_like(np.asarray(h, float)[..., 0]),
        haar_density=lambda h: 1.0 / (2.0 * np.pi * np.asarray(h, float)[..., 0]),
        h_compose=h_compose,
        h_inverse=h_inverse,
        h_identity=np.array([1.0, 0.0]),
        phi=phi,
        jphi=jphi,
        domain_x=lambda x: np.hypot(*np.moveaxis(np.asarray(x, float), -1, 0)) > 0.0,
        orbit_meta=orbit,
        fiber_factory=fiber_factory,
        phi_homogeneous_degree=2.0,
        linear_action_d=True,
        defaults=DEFAULTS,
    )


def build(**params) -> SemidirectSystem:
    if params:
        raise ParameterError(f"dilrot2d takes no parameters, got {sorted(params)}")

    def phi(x):
        x = np.asarray(x, float)
        return (x[..., 0] ** 2 + x[..., 1] ** 2)[..., None]

    def jphi(x):
        x = np.asarray(x, float)
        return 2.0 * np.hypot(x[..., 0], x[..., 1])

    return _build(phi, jphi, "dilrot2d")


def build_corrupted(**params) -> SemidirectSystem:
    """Fixture: same group data, intertwiner broken by a linear perturbation."""
    if params:
        raise ParameterError(f"dilrot2d_corrupted takes no parameters, got {sorted(params)}")

    def phi(x):
        x = np.asarray(x, float)
        return (x[..., 0] ** 2 + x[..., 1] ** 2 + 0.1 * x[..., 0])[..., None]

    def jphi(x):
        x = np.asarray(x, float)
        return np.hypot(2.0 * x[..., 0] + 0.1, 2.0 * x[..., 1])

    return _build(phi, jphi, "dilrot2d_corrupted")


def _volume_probe():
    def fn(p):
        y = np.asarray(p, float)[..., 0]
        return (y * np.exp(-y)).astype(complex)

    return from_callable(fn, 1, meta={"name": "volume_probe"})


def _polar_eval_rule(r_min=0.15, r_max=2.4, n_r=40, n_th=48):
    """Annular evaluation rule.

    The origin is outside the domain (it is the unique fixed point where
    every transformed vector vanishes), so reconstruction errors are
    measured on an annulus holding ~99% of the test-field mass.
    """
    rule = gauss_legendre(r_min, r_max, n_r)
    th = periodic(n_th)
    r, ang = np.meshgrid(rule.nodes, th.nodes, indexing="ij")
    pts = np.stack([(r * np.cos(ang)).ravel(), (r * np.sin(ang)).ravel()], axis=-1)
    w = np.outer(rule.weights * rule.nodes, th.weights).ravel()
    return pts, w


DEFAULTS = {
    "y_box": ([0.0], [144.0]),
    "fiber_radius": 12.0,
    "fiber_resolution": 64,
    "polar_structure": True,
    "volume_probe": _volume_probe,
    "quad_box": {"lo": [-6.0, -6.0], "hi": [6.0, 6.0], "n": [160, 160],
                 "kind": "gauss"},
    "eval_box": {"lo": [-2.4, -2.4], "hi": [2.4, 2.4], "n": [40, 40]},
    "eval_rule_builder": _polar_eval_rule,
    "angular_band_quad": {"angle_nodes": 96, "max_u_nodes": 2048},
    "group_grid": {
        "a": [{"lo": -40.0, "hi": 40.0, "n": 1536, "kind": "uniform"}],
        "h": [
            {"lo": 1.0 / 64.0, "hi": 64.0, "n": 72, "kind": "log"},
            {"n": 24, "kind": "angle"},
        ],
    },
    "f_spec": {"name": "banded_gaussian"},
    "eta_spec": {"name": "reference"},
    "field_builders": {
        "reference": lambda band=4, **kw: _eta_reference(band),
        "banded_gaussian": lambda **kw: _f_banded(**kw),
    },
    "criterion": {
        "band": 4,
        "scale_rule": {"lo": 0.0, "hi": 12.0, "n": 640},
        "h_grid": {"t": {"lo": 1.0 / 64.0, "hi": 64.0, "n": 256}, "n_angle": 32},
    },
    "random_h_log_range": 0.7,
    "x_sample_box": ([-4.0, -4.0], [4.0, 4.0]),
    "y_sample_box": ([0.05], [6.0]),
}
