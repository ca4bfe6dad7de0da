"""Heisenberg system: G = R^2 x| R with n = 2 > d = 1.

H = R (chart ``h = (q,)``) acts on R^2 through the unipotent matrices
``q |-> [[1, -q], [0, 1]]`` and on R by translation ``q . x = x + q``.  The
intertwiner ``phi(x) = (-x, 1)`` produces the unitary action
``(U_{((p,t),q)} f)(x) = exp(-2 pi i (t - p x)) f(x - q)``.

Since n > d the map ``phi`` has no regular points (``jphi`` vanishes
identically) and the system carries no fiber/orbit structure; it is shipped
as the non-square-integrability demonstration: the coefficient modulus does
not depend on the central variable, so the energy over a central window
grows linearly with the window length.
"""

from __future__ import annotations

import numpy as np

from ..core import FactorSpec, SemidirectSystem
from ..errors import ParameterError
from ..fields import from_callable


def _phi(x):
    x = np.asarray(x, float)
    out = np.empty(x.shape[:-1] + (2,))
    out[..., 0] = -x[..., 0]
    out[..., 1] = 1.0
    return out


def _act_n(h, y):
    y = np.asarray(y, float)
    out = y.copy()
    out[..., 0] = y[..., 0] - h[0] * y[..., 1]
    return out


def _gauss(center=0.0, width=1.0):
    def fn(p):
        x = p[..., 0]
        return np.exp(-((x - center) ** 2) / (2 * width**2)).astype(complex)

    return from_callable(fn, 1, support=([center - 8 * width], [center + 8 * width]),
                         meta={"name": "gaussian"})


def build(**params) -> SemidirectSystem:
    if params:
        raise ParameterError(f"heisenberg takes no parameters, got {sorted(params)}")
    return SemidirectSystem(
        name="heisenberg",
        n=2,
        d=1,
        h_dim=1,
        h_factors=(FactorSpec("line"),),
        act_n=_act_n,
        act_d=lambda h, x: np.asarray(x, float) + h[0],
        alpha=lambda h: np.ones_like(np.asarray(h, float)[..., 0]),
        beta=lambda h: np.ones_like(np.asarray(h, float)[..., 0]),
        delta_h=lambda h: np.ones_like(np.asarray(h, float)[..., 0]),
        haar_density=lambda h: np.ones_like(np.asarray(h, float)[..., 0]),
        h_compose=lambda h1, h2: np.asarray(h1, float) + np.asarray(h2, float),
        h_inverse=lambda h: -np.asarray(h, float),
        h_identity=np.array([0.0]),
        phi=_phi,
        jphi=lambda x: np.zeros(np.asarray(x, float).shape[:-1]),
        domain_x=lambda x: np.ones(np.asarray(x, float).shape[:-1], dtype=bool),
        orbit_meta=None,
        fiber_factory=None,
        phi_homogeneous_degree=None,
        linear_action_d=False,
        defaults=DEFAULTS,
    )


DEFAULTS = {
    "quad_box": {"lo": [-10.0], "hi": [10.0], "n": [512], "kind": "uniform"},
    "group_grid": {
        # a = (p, t): momentum window and one unit of the central direction
        "a": [
            {"lo": -8.0, "hi": 8.0, "n": 128, "kind": "uniform"},
            {"lo": 0.0, "hi": 1.0, "n": 16, "kind": "uniform"},
        ],
        "h": [{"lo": -8.0, "hi": 8.0, "n": 128, "kind": "uniform"}],
    },
    "f_spec": {"name": "gaussian"},
    "eta_spec": {"name": "gaussian"},
    "field_builders": {
        "gaussian": lambda **kw: _gauss(**kw),
        "reference": lambda **kw: _gauss(**kw),
    },
    "random_h_log_range": 2.0,
    "x_sample_box": ([-4.0], [4.0]),
    "y_sample_box": ([-4.0, -4.0], [4.0, 4.0]),
}
