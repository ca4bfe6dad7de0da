"""Translation-dilation system: G = R x| (R^* x R) with a noncompact stabilizer.

Chart ``h = (t, b)`` with t != 0, b in R; H is the direct product of the
multiplicative group R^* (Haar ``dt/|t|``) and the translations R (Haar
``db``).  It acts on R by ``h[y] = t y`` (``alpha = 1/|t|``) and on the plane
by ``h . x = (x1 + b, t x2)`` (``beta = |t|``).  The projection
``phi(x) = x2`` has ``jphi = 1``.

X = {x2 != 0}, Y = R \\ {0} is a single orbit with origin 1, section
``h(y) = (y, 0)`` and noncompact stabilizer {t = 1} ~ R, whose invariant
measure in the orbit-splitting identity is db (infinite volume).  Fibers are
horizontal lines carrying Lebesgue measure in the first coordinate.

The reference analyzing vector is built from its partial frequency data

    eta_hat(y, w) = (|y| exp(-y^2/(2 s(w)^2)) / (sqrt(2 pi) s(w)))^(1/2),

with window s(w) = exp(-w^2): for every frequency w the weighted energy
``int |eta_hat(y, w)|^2 dy / |y|`` equals 1.  The spatial field is obtained
by frequency quadrature and tabulated on a grid (values interpolated).
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from ..core import FactorSpec, OrbitMetadata, SemidirectSystem, StabilizerInfo
from ..errors import ParameterError
from ..fields import from_callable, grid_field
from ..quadrature import gauss_legendre


def window(w):
    return np.exp(-np.asarray(w, float) ** 2)


def eta_hat(y, w):
    """Partial frequency data of the reference vector (real, even in both)."""
    y = np.asarray(y, float)
    s = window(w)
    return np.sqrt(np.abs(y) / (np.sqrt(2.0 * np.pi) * s)) * np.exp(
        -(y * y) / (4.0 * s * s)
    )


class PartialFourierData:
    """Frequency-side representation eta_hat(y, w) used by the criterion."""

    def __init__(self, fn, sample_freqs=(0.0, 0.3, -0.3, 0.7, -0.7, 1.2, -1.2)):
        self.fn = fn
        self.sample_freqs = tuple(sample_freqs)

    def __call__(self, y, w):
        return self.fn(y, w)


@lru_cache(maxsize=2)
def _eta_table(xi_max=14.0, dxi=0.0625, y_max=5.0, dy=0.015625, n_freq=768):
    """Tabulate the spatial reference vector by frequency quadrature.

    eta(xi, y) = 2 int_0^inf eta_hat(y, w) cos(2 pi w xi) dw; the integrand
    is smooth and vanishes rapidly beyond |w| ~ sqrt(log(1/|y|)).  The y
    rows are log-refined near the critical line y = 0, where eta varies on
    logarithmic scale and large dilations sample it.
    """
    xi = np.arange(-xi_max, xi_max + 0.5 * dxi, dxi)
    y_coarse = np.arange(dy, y_max + 0.5 * dy, dy)
    y_fine = np.logspace(-4.0, np.log10(dy), 56, endpoint=False)
    y_pos = np.concatenate([y_fine, y_coarse])
    y = np.concatenate([-y_pos[::-1], [0.0], y_pos])
    rule = gauss_legendre(0.0, 6.0, n_freq)
    vals = np.zeros((xi.size, y.size))
    hat = eta_hat(y[None, :], rule.nodes[:, None])  # (freq, y)
    hat[:, y == 0.0] = 0.0
    for k in range(0, rule.n, 64):
        sl = slice(k, min(k + 64, rule.n))
        cos = np.cos(2.0 * np.pi * np.outer(xi, rule.nodes[sl]))  # (xi, freq)
        vals += 2.0 * (cos * rule.weights[sl]) @ hat[sl]
    return xi, y, vals


def _eta_reference():
    xi, y, vals = _eta_table()
    f = grid_field([xi, y], vals.astype(complex), meta={"name": "reference"})
    return from_callable(f.fn, 2, support=([xi[0], y[0]], [xi[-1], y[-1]]),
                         meta={"name": "reference", "kind": "tabulated"})


def _f_offset_gaussian(center=(0.0, 1.0), width=(1.0, 0.5)):
    c = np.asarray(center, float)
    w = np.asarray(width, float)

    def fn(p):
        u = (np.asarray(p, float) - c) / w
        return np.exp(-np.sum(u * u, axis=-1) / 2.0).astype(complex)

    return from_callable(fn, 2, support=(c - 5 * w, c + 5 * w),
                         meta={"name": "offset_gaussian"})


def _tau_rule(z, resolution, radius):
    from ..quadrature import log_rule

    pos = log_rule(1e-10, radius, resolution, kind="gauss")
    nodes = np.concatenate([-pos.nodes[::-1], pos.nodes])
    w = np.concatenate([pos.weights[::-1], pos.weights])
    return nodes[:, None], w


def build(**params) -> SemidirectSystem:
    if params:
        raise ParameterError(f"transdil2d takes no parameters, got {sorted(params)}")

    def act_d(h, x):
        x = np.asarray(x, float)
        out = np.empty(x.shape)
        out[..., 0] = x[..., 0] + h[1]
        out[..., 1] = h[0] * x[..., 1]
        return out

    def h_compose(h1, h2):
        h1, h2 = np.asarray(h1, float), np.asarray(h2, float)
        out = np.empty(np.broadcast_shapes(h1.shape, h2.shape))
        out[..., 0] = h1[..., 0] * h2[..., 0]
        out[..., 1] = h1[..., 1] + h2[..., 1]
        return out

    def h_inverse(h):
        h = np.asarray(h, float)
        out = np.empty(h.shape)
        out[..., 0] = 1.0 / h[..., 0]
        out[..., 1] = -h[..., 1]
        return out

    def fiber_factory(y, resolution, radius):
        y0 = float(np.asarray(y, float).reshape(-1)[0])
        if y0 == 0.0:
            from ..errors import DomainError

            raise DomainError("0 is outside Y = R \\ {0}")
        if radius is None:
            from ..errors import ConfigurationError

            raise ConfigurationError("line fibers need a truncation radius")
        rule = gauss_legendre(-radius, radius, int(resolution))
        nodes = np.stack([rule.nodes, np.full(rule.n, y0)], axis=-1)
        return nodes, rule.weights.copy(), "line"

    orbit = OrbitMetadata(
        z_values=(0,),
        orbit_label=lambda y: 0,
        origin=lambda z: np.array([1.0]),
        section_h=lambda y: np.array([float(np.asarray(y).reshape(-1)[0]), 0.0]),
        stabilizer=lambda z: StabilizerInfo(
            kind="noncompact",
            volume=np.inf,
            param_range=None,
            embed=lambda s: np.stack(
                [np.ones_like(np.asarray(s, float)), np.asarray(s, float)], axis=-1
            ),
            ds_density=lambda s: np.ones_like(np.asarray(s, float)),
        ),
        tau_rule=_tau_rule,
        lambda_weights={0: 1.0},
    )

    return SemidirectSystem(
        name="transdil2d",
        n=1,
        d=2,
        h_dim=2,
        h_factors=(FactorSpec("signed_scale"), FactorSpec("line")),
        act_n=lambda h, y: float(h[0]) * np.asarray(y, float),
        act_d=act_d,
        alpha=lambda h: 1.0 / np.abs(np.asarray(h, float)[..., 0]),
        beta=lambda h: np.abs(np.asarray(h, float)[..., 0]),
        delta_h=lambda h: np.ones_like(np.asarray(h, float)[..., 0]),
        haar_density=lambda h: 1.0 / np.abs(np.asarray(h, float)[..., 0]),
        h_compose=h_compose,
        h_inverse=h_inverse,
        h_identity=np.array([1.0, 0.0]),
        phi=lambda x: np.asarray(x, float)[..., 1:2].copy(),
        jphi=lambda x: np.ones(np.asarray(x, float).shape[:-1]),
        domain_x=lambda x: np.asarray(x, float)[..., 1] != 0.0,
        orbit_meta=orbit,
        fiber_factory=fiber_factory,
        phi_homogeneous_degree=None,
        linear_action_d=False,
        known_admissible_vector=True,
        defaults=DEFAULTS,
    )


def _volume_probe():
    def fn(p):
        y = np.asarray(p, float)[..., 0]
        return (y * y * np.exp(-y * y)).astype(complex)

    return from_callable(fn, 1, meta={"name": "volume_probe"})


DEFAULTS = {
    "y_box": ([-10.0], [10.0]),
    "fiber_radius": 12.0,
    "fiber_resolution": 160,
    "volume_probe": _volume_probe,
    "x_box": {"lo": [-8.0, -8.0], "hi": [8.0, 8.0], "n": [192, 192],
              "kind": "gauss"},
    "quad_box": {"lo": [-5.2, -1.6], "hi": [5.2, 3.6], "n": [176, 160],
                 "kind": "uniform"},
    "eval_box": {"lo": [-3.0, 0.2], "hi": [3.0, 1.8], "n": [48, 40]},
    "group_grid": {
        "a": [{"lo": -4.0, "hi": 4.0, "n": 96, "kind": "uniform"}],
        "h": [
            {"lo": 1.0 / 256.0, "hi": 256.0, "n": 56, "kind": "signed_log"},
            {"lo": -8.0, "hi": 8.0, "n": 96, "kind": "uniform"},
        ],
    },
    "f_spec": {"name": "offset_gaussian"},
    "eta_spec": {"name": "reference"},
    "field_builders": {
        "reference": lambda **kw: _eta_reference(),
        "offset_gaussian": lambda **kw: _f_offset_gaussian(**kw),
    },
    "criterion": {
        "freqs": (0.0, 0.3, -0.3, 0.7, -0.7, 1.2, -1.2),
        "y_rule_n": 512,
        "h_grid": {
            "t": {"lo": 1.0 / 4096.0, "hi": 4096.0, "n": 176},
            "b": {"lo": -16.0, "hi": 16.0, "n": 320},
        },
    },
    "random_h_log_range": 1.0,
    "x_sample_box": ([-4.0, -4.0], [4.0, 4.0]),
    "y_sample_box": ([0.25], [4.0]),
}
