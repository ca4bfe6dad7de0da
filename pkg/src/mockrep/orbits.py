"""Orbit structure of Y: sections, stabilizer volumes, orbit disintegrations.

Normalization conventions (pinned per system in its orbit metadata):

* the label measure is counting measure on finite label sets and the unit
  mass on singletons;
* the orbit measures ``tau_z`` are then forced by the disintegration of
  Lebesgue measure on Y, and are relatively invariant with multiplier
  ``1/alpha``;
* the stabilizer measure ``ds`` is the unique one making the orbit-splitting
  identity

      int_H f(h) alpha(h^{-1}) dh
        = int_Y ( int_{H_z} f(h(y) s) ds ) dtau_z(y)

  hold; its total mass is the stabilizer volume (``inf`` when noncompact).
"""

from __future__ import annotations

import numpy as np

from .core import SemidirectSystem, StabilizerInfo
from .errors import ConfigurationError, PreconditionError
from .fields import Field
from .quadrature import box_rule, gauss_legendre, log_rule, periodic, signed_log_rule, tensor_nodes


def _h_chart_rule(
    sys: SemidirectSystem,
    resolution: int,
    scale_radius: float = 1e3,
    line_radius: float = 24.0,
):
    """Tensor rule over a truncated chart region of H (Lebesgue weights).

    Multiplicative factors are truncated to [1/scale_radius, scale_radius]
    on a log grid, additive factors to [-line_radius, line_radius].
    """
    rules = []
    for f in sys.h_factors:
        if f.kind == "scale":
            rules.append(log_rule(1.0 / scale_radius, scale_radius, resolution, kind="gauss"))
        elif f.kind == "signed_scale":
            rules.append(signed_log_rule(1.0 / scale_radius, scale_radius, resolution, kind="gauss"))
        elif f.kind == "angle":
            rules.append(periodic(min(resolution, 64), period=f.period))
        else:
            rules.append(gauss_legendre(-line_radius, line_radius, 3 * resolution))
    return tensor_nodes(rules)


def chart_bump(sys: SemidirectSystem, log_width: float = 0.5, line_width: float = 1.5):
    """Rapidly decaying test function on the H chart (Gaussian per factor).

    Multiplicative factors get a log-Gaussian of the given log width, additive
    factors a Gaussian of the given width, angles a smooth periodic factor.
    """

    def fn(h):
        h = np.asarray(h, dtype=float)
        out = np.ones(h.shape[:-1], dtype=complex)
        for i, f in enumerate(sys.h_factors):
            c = h[..., i]
            if f.kind in ("scale", "signed_scale"):
                out = out * np.exp(-((np.log(np.abs(c)) / log_width) ** 2))
            elif f.kind == "angle":
                out = out * (1.0 + 0.5 * np.cos(2.0 * np.pi * c / f.period))
            else:
                out = out * np.exp(-((c / line_width) ** 2))
        return out

    return fn


def _stabilizer_rule(info: StabilizerInfo, resolution: int, truncation: float | None):
    """Nodes (in the stabilizer parameter), ds-weights."""
    if info.kind == "trivial":
        return np.zeros((1, 0)), np.array([info.point_mass])
    if info.kind == "compact":
        lo, hi = info.param_range
        rule = periodic(resolution, period=hi - lo, offset=lo) if info.periodic \
            else gauss_legendre(lo, hi, resolution)
    else:
        if truncation is None:
            raise ConfigurationError(
                "noncompact stabilizer integral needs a truncation"
            )
        rule = gauss_legendre(-truncation, truncation, resolution)
    w = rule.weights * info.ds_density(rule.nodes)
    return rule.nodes[:, None], w


def stabilizer_volume(
    sys: SemidirectSystem,
    z,
    probe: Field | None = None,
    resolution: int = 192,
    scale_radius: float = 1e3,
    line_radius: float = 24.0,
    tau_radius: float = 16.0,
    origin=None,
) -> float:
    """Volume of the stabilizer of the orbit origin, from the mass identity

        vol = [ int_H probe(h[y0]) alpha(h^{-1}) dh ] / [ int_Y probe dtau_z ].

    Requires a strictly positive integrable probe on Y (the system's
    documented probe by default).  Returns ``inf`` for a noncompact
    stabilizer (the H-integral diverges).
    """
    meta = sys.require_orbit_meta()
    info = meta.stabilizer(z)
    if info.kind == "noncompact":
        return float("inf")
    if probe is None:
        probe = sys.defaults["volume_probe"]()
    y0 = np.asarray(origin if origin is not None else meta.origin(z), dtype=float)

    hpts, hw = _h_chart_rule(sys, resolution, scale_radius, line_radius)
    imgs = np.stack([sys.act_n(h, y0) for h in hpts])
    pvals = probe(imgs).real
    if np.any(pvals < 0):
        raise PreconditionError("probe must be strictly positive on Y")
    dens = sys.haar_density(hpts) / sys.alpha(hpts)
    num = float(np.sum(hw * dens * pvals))

    ynodes, yw = meta.tau_rule(z, 4 * resolution, tau_radius)
    den = float(np.sum(yw * probe(ynodes).real))
    return num / den


def weil_residual(
    sys: SemidirectSystem,
    z,
    phi_on_h,
    resolution: int = 160,
    scale_radius: float = 1e3,
    line_radius: float = 24.0,
    tau_radius: float = 16.0,
    stab_truncation: float | None = None,
) -> float:
    """Residual of the orbit-splitting identity for a chart test function.

    ``phi_on_h`` maps a batch of chart points ``(..., h_dim)`` to values; it
    should be compactly supported (or rapidly decaying) inside the truncated
    chart region.
    """
    meta = sys.require_orbit_meta()
    info = meta.stabilizer(z)

    hpts, hw = _h_chart_rule(sys, resolution, scale_radius, line_radius)
    dens = sys.haar_density(hpts) / sys.alpha(hpts)
    lhs = complex(np.sum(hw * dens * phi_on_h(hpts)))

    snodes, sw = _stabilizer_rule(info, 4 * resolution, stab_truncation)
    ynodes, yw = meta.tau_rule(z, 4 * resolution, tau_radius)
    sections = np.stack([meta.section_h(y) for y in ynodes])
    inner = np.zeros(ynodes.shape[0], dtype=complex)
    for j in range(snodes.shape[0]):
        if snodes.shape[1]:
            s_chart = info.embed(snodes[j, 0])
        else:
            s_chart = sys.h_identity
        hy_s = sys.h_compose(sections, np.broadcast_to(s_chart, sections.shape))
        inner += sw[j] * phi_on_h(hy_s)
    rhs = complex(np.sum(yw * inner))
    return float(abs(lhs - rhs))


def mackey_residual(
    sys: SemidirectSystem,
    psi: Field,
    resolution: int = 256,
    tau_radius: float = 16.0,
) -> float:
    """| int_Y psi dy - sum_z lambda_z int psi dtau_z | on the truncated region."""
    meta = sys.require_orbit_meta()
    lo, hi = sys.defaults.get("y_box", ([-tau_radius] * sys.n, [tau_radius] * sys.n))
    rule = box_rule(lo, hi, [resolution] * sys.n)
    lhs = complex(np.sum(rule.weights * psi(rule.points)))
    rhs = 0.0 + 0.0j
    for z in meta.z_values:
        ynodes, yw = meta.tau_rule(z, resolution, tau_radius)
        rhs += meta.lambda_weights[z] * np.sum(yw * psi(ynodes))
    return float(abs(lhs - rhs))


def mu_z_residual(
    sys: SemidirectSystem,
    z,
    h,
    phi_test: Field,
    y_resolution: int = 160,
    fiber_resolution: int = 96,
    tau_radius: float = 16.0,
    fiber_radius: float | None = None,
) -> float:
    """Covariance of the glued orbit measure mu_z = int nu_y dtau_z(y).

    Compares ``int phi(h^{-1}.x) dmu_z`` with ``beta(h) int phi dmu_z`` using
    nested quadrature (tau rule outside, fiber rules inside).
    """
    from .coarea import fiber_quadrature

    meta = sys.require_orbit_meta()
    h = np.atleast_1d(np.asarray(h, dtype=float))
    hinv = sys.h_inverse(h)
    ynodes, yw = meta.tau_rule(z, y_resolution, tau_radius)
    lhs = 0.0 + 0.0j
    rhs = 0.0 + 0.0j
    for y, wy in zip(ynodes, yw):
        fm = fiber_quadrature(sys, y, fiber_resolution, fiber_radius)
        lhs += wy * np.sum(fm.weights * phi_test(sys.act_d(hinv, fm.nodes)))
        rhs += wy * np.sum(fm.weights * phi_test(fm.nodes))
    return float(abs(lhs - float(sys.beta(h)) * rhs))


def section_residual(sys: SemidirectSystem, y) -> float:
    """|h(y)[origin] - y| for the documented section."""
    meta = sys.require_orbit_meta()
    y = np.atleast_1d(np.asarray(y, dtype=float))
    z = meta.orbit_label(y)
    return float(np.max(np.abs(sys.act_n(meta.section_h(y), meta.origin(z)) - y)))


def tau_invariance_residual(
    sys: SemidirectSystem,
    z,
    h,
    psi: Field,
    resolution: int = 256,
    tau_radius: float = 24.0,
) -> float:
    """Relative invariance of tau_z: pushing through h multiplies by 1/alpha."""
    meta = sys.require_orbit_meta()
    h = np.atleast_1d(np.asarray(h, dtype=float))
    hinv = sys.h_inverse(h)
    ynodes, yw = meta.tau_rule(z, resolution, tau_radius)
    imgs = np.stack([sys.act_n(hinv, y) for y in ynodes])
    lhs = np.sum(yw * psi(imgs))
    rhs = np.sum(yw * psi(ynodes)) / float(sys.alpha(h))
    return float(abs(lhs - rhs))
