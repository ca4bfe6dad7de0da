"""One-dimensional wavelet system: G = R x| R_+ (the "ax+b" group).

H = R_+ acts on the line by ``h[y] = y/a`` and on the ground space by
``a . x = x/a``; the intertwiner is the identity map, so the unitary action
reads ``(U_{(b,a)} f)(x) = sqrt(a) exp(-2 pi i b x) f(a x)``.

Chart: ``h = (a,)`` with a > 0 and Haar measure ``da/a``; the left Haar
measure of G is ``db da / a^2``.  X = R \\ {0} = Y carries the two orbits
R_+ and R_- with trivial stabilizers, origins +-1, section ``h(y) = 1/|y|``.
"""

from __future__ import annotations

import numpy as np

from ..core import FactorSpec, OrbitMetadata, SemidirectSystem, StabilizerInfo
from ..errors import ParameterError
from ..fields import from_callable
from ..quadrature import gauss_legendre


def _eta_reference():
    """Analyzing vector whose scale-energy equals 1 on both half-lines.

    eta(s) = 2|s| exp(-s^2); int_0^inf |eta(+-s)|^2 ds/s = 1.
    """

    def fn(p):
        s = p[..., 0]
        return (2.0 * np.abs(s) * np.exp(-s * s)).astype(complex)

    return from_callable(fn, 1, support=([-6.0], [6.0]), meta={"name": "reference"})


def _band_gaussian(center=2.0, width=0.5):
    """Gaussian bump well separated from the fixed point x = 0."""

    def fn(p):
        x = p[..., 0]
        return np.exp(-((x - center) ** 2) / (2 * width**2)).astype(complex)

    return from_callable(fn, 1, support=([center - 8 * width], [center + 8 * width]),
                         meta={"name": "band_gaussian"})


def _tau_rule(z, resolution, radius):
    from ..quadrature import log_rule

    rule = log_rule(1e-10, radius, resolution, kind="gauss")
    return (float(z) * rule.nodes)[:, None], rule.weights.copy()


def _fiber_factory(y, resolution, radius):
    y = np.asarray(y, float).reshape(-1)
    return y.reshape(1, 1), np.array([1.0]), "point"


def build(**params) -> SemidirectSystem:
    if params:
        raise ParameterError(f"wavelet1d takes no parameters, got {sorted(params)}")
    orbit = OrbitMetadata(
        z_values=(1, -1),
        orbit_label=lambda y: int(np.sign(np.asarray(y).reshape(-1)[0])),
        origin=lambda z: np.array([float(z)]),
        section_h=lambda y: np.array([1.0 / abs(float(np.asarray(y).reshape(-1)[0]))]),
        stabilizer=lambda z: StabilizerInfo(kind="trivial", volume=1.0, point_mass=1.0),
        tau_rule=_tau_rule,
        lambda_weights={1: 1.0, -1: 1.0},
    )
    return SemidirectSystem(
        name="wavelet1d",
        n=1,
        d=1,
        h_dim=1,
        h_factors=(FactorSpec("scale"),),
        act_n=lambda h, y: np.asarray(y, float) / h[0],
        act_d=lambda h, x: np.asarray(x, float) / h[0],
        alpha=lambda h: np.asarray(h, float)[..., 0],
        beta=lambda h: 1.0 / np.asarray(h, float)[..., 0],
        delta_h=lambda h: np.ones_like(np.asarray(h, float)[..., 0]),
        haar_density=lambda h: 1.0 / np.asarray(h, float)[..., 0],
        h_compose=lambda h1, h2: np.asarray(h1, float) * np.asarray(h2, float),
        h_inverse=lambda h: 1.0 / np.asarray(h, float),
        h_identity=np.array([1.0]),
        phi=lambda x: np.asarray(x, float).copy(),
        jphi=lambda x: np.ones(np.asarray(x, float).shape[:-1]),
        domain_x=lambda x: np.asarray(x, float)[..., 0] != 0.0,
        orbit_meta=orbit,
        fiber_factory=_fiber_factory,
        phi_homogeneous_degree=1.0,
        linear_action_d=True,
        defaults=DEFAULTS,
    )


def _volume_probe():
    def fn(p):
        y = np.asarray(p, float)[..., 0]
        return (np.abs(y) * np.exp(-y * y)).astype(complex)

    return from_callable(fn, 1, meta={"name": "volume_probe"})


DEFAULTS = {
    "y_box": ([-12.0], [12.0]),
    "volume_probe": _volume_probe,
    "fiber_radius": 12.0,
    "quad_box": {"lo": [-8.0], "hi": [8.0], "n": [384], "kind": "uniform"},
    "eval_box": {"lo": [0.25], "hi": [3.75], "n": [160]},
    "group_grid": {
        "a": [{"lo": -8.0, "hi": 8.0, "n": 320, "kind": "uniform"}],
        "h": [{"lo": 1.0 / 64.0, "hi": 64.0, "n": 96, "kind": "log"}],
    },
    "f_spec": {"name": "band_gaussian"},
    "eta_spec": {"name": "reference"},
    "field_builders": {
        "reference": lambda **kw: _eta_reference(),
        "band_gaussian": lambda **kw: _band_gaussian(**kw),
    },
    "criterion": {"scale_rule": {"lo": 0.0, "hi": 14.0, "n": 640}},
    "random_h_log_range": 1.5,
    "x_sample_box": ([-4.0], [4.0]),
    "y_sample_box": ([-4.0], [4.0]),
}
