"""Shearlet system: G = R^2 x| H with H the shear-dilation group.

Chart ``h = (l, t)`` with shear l in R and dilation t > 0.  The ground action
is ``h . x = S_l A_t x`` with

    S_l = [[1, 0], [-l, 1]],   A_t = [[t^(-1/2), 0], [0, t^(1/2-gamma)]],

the normal-factor action has matrix ``[[1/t, 0], [-l/t, t^-gamma]]`` and its
contragredient is ``[[t, t^gamma l], [0, t^gamma]]``.  Haar measure of H is
``t^(gamma-2) dl dt`` with modular function ``t^(gamma-1)``; the quadratic
intertwiner is ``phi(x) = -(x1^2, x1 x2)/2`` with ``jphi = x1^2 / 2``.

X = {x1 != 0}, Y = R_- x R is a single free orbit; origin (-1/2, 0),
section ``h(y) = (-y2/y1, -1/(2 y1))``, fiber over the origin {(+-1, 0)}.
The orbit measure is Lebesgue measure on Y, which forces the point mass of
the trivial stabilizer in the orbit-splitting identity to be 4 (independent
of gamma).

The reference analyzing vector is an indicator construction: on each
half-plane X_+- it is ``sqrt(2 jphi(x))`` times the indicator that ``phi(x)``
lies in a fixed box of Y, with disjoint boxes for the two half-planes.
"""

from __future__ import annotations

import numpy as np

from ..core import FactorSpec, OrbitMetadata, SemidirectSystem, StabilizerInfo
from ..errors import ParameterError
from ..fields import from_callable
from ..quadrature import Rule1D, gauss_legendre

BOX_POS = ((-2.0, -1.0), (0.0, 1.0))
BOX_NEG = ((-2.0, -1.0), (1.0, 2.0))


def _act_d_matrix(l, t, gamma):
    return np.array([
        [t ** -0.5, 0.0],
        [-l * t ** -0.5, t ** (0.5 - gamma)],
    ])


def _n_matrix(l, t, gamma):
    return np.array([[1.0 / t, 0.0], [-l / t, t ** -gamma]])


def _phi(x):
    x = np.asarray(x, float)
    out = np.empty(x.shape[:-1] + (2,))
    out[..., 0] = -0.5 * x[..., 0] ** 2
    out[..., 1] = -0.5 * x[..., 0] * x[..., 1]
    return out


def _eta_reference(gamma):
    """Indicator analyzing vector carried by disjoint boxes of Y."""

    def fn(p):
        p = np.asarray(p, float)
        x1 = p[..., 0]
        u = _phi(p)
        inside_pos = (
            (u[..., 0] >= BOX_POS[0][0]) & (u[..., 0] <= BOX_POS[0][1])
            & (u[..., 1] >= BOX_POS[1][0]) & (u[..., 1] <= BOX_POS[1][1])
        )
        inside_neg = (
            (u[..., 0] >= BOX_NEG[0][0]) & (u[..., 0] <= BOX_NEG[0][1])
            & (u[..., 1] >= BOX_NEG[1][0]) & (u[..., 1] <= BOX_NEG[1][1])
        )
        inside = np.where(x1 > 0, inside_pos, inside_neg)
        amp = np.sqrt(2.0 * 0.5 * x1 * x1)  # sqrt(2 jphi)
        return (amp * inside).astype(complex)

    return from_callable(
        fn, 2,
        support=([-3.0, -4.5], [3.0, 4.5]),
        meta={"name": "reference", "kind": "y_boxes",
              "box_pos": BOX_POS, "box_neg": BOX_NEG},
    )


def _f_two_bumps(offset=2.0, width1=0.5, width2=1.0):
    """Even pair of Gaussian bumps separated from the critical line x1 = 0."""

    def fn(p):
        x1, x2 = p[..., 0], p[..., 1]
        g = np.exp(-((x1 - offset) ** 2) / (2 * width1**2) - x2**2 / (2 * width2**2))
        g2 = np.exp(-((x1 + offset) ** 2) / (2 * width1**2) - x2**2 / (2 * width2**2))
        return (g + g2).astype(complex)

    return from_callable(fn, 2, support=([-offset - 8 * width1, -8 * width2],
                                         [offset + 8 * width1, 8 * width2]),
                         meta={"name": "two_bumps"})


def _tau_rule_factory(radius_default=12.0):
    def tau_rule(z, resolution, radius):
        r1 = gauss_legendre(-radius, 0.0, resolution)
        r2 = gauss_legendre(-radius, radius, resolution)
        n1, n2 = np.meshgrid(r1.nodes, r2.nodes, indexing="ij")
        w = np.outer(r1.weights, r2.weights)
        return np.stack([n1.reshape(-1), n2.reshape(-1)], axis=-1), w.reshape(-1)

    return tau_rule


def criterion_windows(y, box, gamma):
    """(t, l)-windows on which ``h^{-1}[y]`` lies in the given box of Y.

    ``h^{-1}[y] = (t y1, t^gamma (l y1 + y2))``; the first coordinate pins a
    t-interval, the second an l-interval depending on t.
    """
    y1, y2 = float(y[0]), float(y[1])
    (u1a, u1b), (u2a, u2b) = box
    t_lo, t_hi = u1b / y1, u1a / y1  # y1 < 0 flips the order
    if t_lo > t_hi:
        t_lo, t_hi = t_hi, t_lo

    def l_window(t):
        la = (u2a * t ** -gamma - y2) / y1
        lb = (u2b * t ** -gamma - y2) / y1
        return (min(la, lb), max(la, lb))

    return (t_lo, t_hi), l_window


def adapted_h_rule(y, box, gamma, n_t=48, n_l=48):
    """Iterated Gauss rule on the (t, l) window (Lebesgue dl dt weights)."""
    (t_lo, t_hi), l_window = criterion_windows(y, box, gamma)
    t_rule = gauss_legendre(t_lo, t_hi, n_t)
    nodes = []
    weights = []
    for t, wt in zip(t_rule.nodes, t_rule.weights):
        la, lb = l_window(t)
        l_rule = gauss_legendre(la, lb, n_l)
        for l, wl in zip(l_rule.nodes, l_rule.weights):
            nodes.append((l, t))
            weights.append(wt * wl)
    return np.asarray(nodes), np.asarray(weights)


def build(gamma: float = 0.5, **params) -> SemidirectSystem:
    if params:
        raise ParameterError(f"shearlet takes only 'gamma', got {sorted(params)}")
    gamma = float(gamma)
    if not gamma > 0:
        raise ParameterError(f"shearlet needs gamma > 0, got {gamma}")

    def act_d(h, x):
        return np.asarray(x, float) @ _act_d_matrix(h[0], h[1], gamma).T

    def act_n(h, y):
        return np.asarray(y, float) @ _n_matrix(h[0], h[1], gamma).T

    def h_compose(h1, h2):
        h1 = np.asarray(h1, float)
        h2 = np.asarray(h2, float)
        out = np.empty(np.broadcast_shapes(h1.shape, h2.shape))
        out[..., 0] = h1[..., 0] + h1[..., 1] ** (1.0 - gamma) * h2[..., 0]
        out[..., 1] = h1[..., 1] * h2[..., 1]
        return out

    def h_inverse(h):
        h = np.asarray(h, float)
        out = np.empty(h.shape)
        out[..., 0] = -h[..., 0] * h[..., 1] ** (gamma - 1.0)
        out[..., 1] = 1.0 / h[..., 1]
        return out

    def section_h(y):
        y = np.asarray(y, float).reshape(-1)
        return np.array([-y[1] / y[0], -1.0 / (2.0 * y[0])])

    def fiber_factory(y, resolution, radius):
        y = np.asarray(y, float).reshape(-1)
        if not y[0] < 0:
            from ..errors import DomainError

            raise DomainError(f"{y} is outside Y = R_- x R")
        s = np.sqrt(-2.0 * y[0])
        nodes = np.array([[s, -2.0 * y[1] / s], [-s, 2.0 * y[1] / s]])
        w = np.full(2, 1.0 / abs(y[0]))
        return nodes, w, "point-pair"

    orbit = OrbitMetadata(
        z_values=(0,),
        orbit_label=lambda y: 0,
        origin=lambda z: np.array([-0.5, 0.0]),
        section_h=section_h,
        stabilizer=lambda z: StabilizerInfo(kind="trivial", volume=4.0, point_mass=4.0),
        tau_rule=_tau_rule_factory(),
        lambda_weights={0: 1.0},
    )

    return SemidirectSystem(
        name="shearlet",
        n=2,
        d=2,
        h_dim=2,
        h_factors=(FactorSpec("line"), FactorSpec("scale")),
        act_n=act_n,
        act_d=act_d,
        alpha=lambda h: np.asarray(h, float)[..., 1] ** (1.0 + gamma),
        beta=lambda h: np.asarray(h, float)[..., 1] ** (-gamma),
        delta_h=lambda h: np.asarray(h, float)[..., 1] ** (gamma - 1.0),
        haar_density=lambda h: np.asarray(h, float)[..., 1] ** (gamma - 2.0),
        h_compose=h_compose,
        h_inverse=h_inverse,
        h_identity=np.array([0.0, 1.0]),
        phi=_phi,
        jphi=lambda x: 0.5 * np.asarray(x, float)[..., 0] ** 2,
        domain_x=lambda x: np.asarray(x, float)[..., 0] != 0.0,
        orbit_meta=orbit,
        fiber_factory=fiber_factory,
        phi_homogeneous_degree=2.0,
        linear_action_d=True,
        defaults=_make_defaults(gamma),
        params={"gamma": gamma},
    )


def _y_rule_builder(resolution):
    """Rule over Y = R_- x R in the coordinates (s, v) = (x1, x2) of X_+.

    y = (-s^2/2, -s v/2) with Jacobian s^2/2 cancels the 1/|y1| growth of
    fiber-pulled integrands near the critical boundary y1 = 0.
    """
    res = np.broadcast_to(np.atleast_1d(resolution), (2,))
    s_rule = gauss_legendre(0.0, 7.0, int(res[0]))
    v_rule = gauss_legendre(-7.0, 7.0, int(res[1]))
    s, v = np.meshgrid(s_rule.nodes, v_rule.nodes, indexing="ij")
    w = np.outer(s_rule.weights * 0.5 * s_rule.nodes**2, v_rule.weights)
    pts = np.stack([-0.5 * s.reshape(-1) ** 2, -0.5 * (s * v).reshape(-1)], axis=-1)
    return pts, w.reshape(-1)


def _volume_probe():
    def fn(p):
        y = np.asarray(p, float)
        return (y[..., 0] ** 2 * np.exp(-((y[..., 0] + 2.0) ** 2) - y[..., 1] ** 2)).astype(complex)

    return from_callable(fn, 2, meta={"name": "volume_probe"})


def _make_defaults(gamma):
    return {
        "y_box": ([-24.5, -14.0], [0.0, 14.0]),
        "y_rule_builder": _y_rule_builder,
        "volume_probe": _volume_probe,
        "fiber_radius": 12.0,
        "x_box": {"lo": [-6.0, -6.0], "hi": [6.0, 6.0], "n": [192, 192],
                  "kind": "gauss"},
        "quad_box": {"lo": [-5.0, -5.0], "hi": [5.0, 5.0], "n": [192, 192],
                     "kind": "gauss"},
        "eval_box": {"lo": [-2.4, -2.4], "hi": [2.4, 2.4], "n": [40, 40]},
        "group_grid": {
            "a": [
                {"lo": -8.0, "hi": 8.0, "n": 48, "kind": "uniform"},
                {"lo": -8.0, "hi": 8.0, "n": 48, "kind": "uniform"},
            ],
            "h": [
                {"lo": -10.0, "hi": 10.0, "n": 28, "kind": "uniform"},
                {"lo": 1.0 / 64.0, "hi": 64.0, "n": 44, "kind": "log"},
            ],
        },
        "reproduction_h": [
            {"lo": -11.0, "hi": 11.0, "n": 132, "kind": "uniform"},
            {"lo": 1.0 / 64.0, "hi": 64.0, "n": 192, "kind": "log"},
        ],
        "synthesis_h": [
            {"lo": -11.0, "hi": 11.0, "n": 288, "kind": "uniform"},
            {"lo": 1.0 / 64.0, "hi": 64.0, "n": 416, "kind": "log"},
        ],
        "f_spec": {"name": "two_bumps"},
        "eta_spec": {"name": "reference"},
        "field_builders": {
            "reference": lambda **kw: _eta_reference(gamma),
            "two_bumps": lambda **kw: _f_two_bumps(**kw),
        },
        "criterion": {"boxes": (BOX_POS, BOX_NEG), "n_t": 64, "n_l": 64},
        "random_h_log_range": 1.2,
        "x_sample_box": ([-4.0, -4.0], [4.0, 4.0]),
        "y_sample_box": ([-4.0, -4.0], [-0.05, 4.0]),
    }
