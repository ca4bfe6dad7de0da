"""Voice transform on truncated group grids, energies and reconstruction.

The coefficient map is ``V(a, h) = <f, U_(a,h) eta>``; its energy against
the left Haar measure and the weak reconstruction

    f ~ sum_i w_i V_i (U_{g_i} eta)

are computed on product grids: one rule per coordinate of the normal factor
and per chart coordinate of H, with the Haar density folded in per node.

The inner products are evaluated with a fixed d-dimensional tensor rule.
Since the oscillatory factor depends on x only through the intertwining map,
the phase matrices are shared across the grid and each h-slice reduces to
dense matrix contractions.  Analyzing vectors that are indicators in the
image of the intertwiner (the shear system's reference vector) instead use
a support-adapted rule per h-node, built in image coordinates.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .core import GroupElement, SemidirectSystem
from .errors import ConfigurationError, CoverageError
from .fields import Field
from .quadrature import (
    BoxRule,
    Rule1D,
    box_rule,
    gauss_legendre,
    log_rule,
    map_affine,
    periodic,
    signed_log_rule,
    tensor_nodes,
    trapezoid,
)


def _axis_rule(spec: dict) -> Rule1D:
    kind = spec.get("kind", "gauss")
    if kind == "angle":
        return periodic(spec["n"], period=spec.get("period", 2.0 * np.pi))
    if kind == "log":
        return log_rule(spec["lo"], spec["hi"], spec["n"])
    if kind == "signed_log":
        return signed_log_rule(spec["lo"], spec["hi"], spec["n"])
    if kind == "uniform":
        return trapezoid(spec["lo"], spec["hi"], spec["n"])
    return gauss_legendre(spec["lo"], spec["hi"], spec["n"])


@dataclass(frozen=True)
class GroupGrid:
    """Product quadrature over a truncated region of G with Haar weights."""

    a_rules: tuple[Rule1D, ...]
    h_rules: tuple[Rule1D, ...]
    region: dict

    @cached_property
    def a_points(self):
        return tensor_nodes(list(self.a_rules))[0]

    @cached_property
    def a_weights(self):
        return tensor_nodes(list(self.a_rules))[1]

    @cached_property
    def h_points(self):
        return tensor_nodes(list(self.h_rules))[0]

    @cached_property
    def h_weights(self):
        return tensor_nodes(list(self.h_rules))[1]

    @property
    def size(self) -> int:
        return self.a_points.shape[0] * self.h_points.shape[0]

    def haar_weights(self, sys: SemidirectSystem):
        """Per-h-node weight: chart weight times the Haar density of G."""
        return self.h_weights * sys.haar_weight(self.h_points)

    def desc(self) -> dict:
        return {
            "a": [r.desc for r in self.a_rules],
            "h": [r.desc for r in self.h_rules],
            "nodes": self.size,
            **self.region,
        }


def build_group_grid(sys: SemidirectSystem, spec: dict | None = None) -> GroupGrid:
    spec = spec if spec is not None else sys.defaults["group_grid"]
    a_rules = tuple(_axis_rule(s) for s in spec["a"])
    h_specs = spec["h"]
    h_rules = []
    for fspec, s in zip(sys.h_factors, h_specs):
        s = dict(s)
        if fspec.kind == "angle":
            s.setdefault("kind", "angle")
            s.setdefault("period", fspec.period)
        elif fspec.kind == "scale":
            s.setdefault("kind", "log")
        elif fspec.kind == "signed_scale":
            s.setdefault("kind", "signed_log")
        else:
            s.setdefault("kind", "uniform")
        h_rules.append(_axis_rule(s))
    if len(a_rules) != sys.n or len(h_rules) != sys.h_dim:
        raise ConfigurationError("grid spec does not match the system dimensions")
    return GroupGrid(a_rules, tuple(h_rules), {"spec": spec})


def left_translate(sys: SemidirectSystem, grid: GroupGrid, g0: GroupElement) -> GroupGrid:
    """Grid covering g0 . region, node for node.

    Requires the translation to act factor-wise on the chart product
    structure (true for diagonal contragredient matrices).
    """
    m = sys.n_matrix(g0.h)
    m_dag = np.linalg.inv(m).T
    if not np.allclose(m_dag, np.diag(np.diag(m_dag)), atol=1e-12):
        raise ConfigurationError("left translation would shear the a-grid")
    a_rules = tuple(
        map_affine(r, float(m_dag[k, k]), float(g0.a[k]))
        for k, r in enumerate(grid.a_rules)
    )
    h_rules = []
    for k, r in enumerate(grid.h_rules):
        probe = np.zeros((2, sys.h_dim))
        probe[:, :] = sys.h_identity
        probe[0, k] = r.nodes[0]
        probe[1, k] = r.nodes[-1] if r.n > 1 else r.nodes[0] + 1.0
        imgs = sys.h_compose(np.broadcast_to(g0.h, probe.shape), probe)
        x0, x1 = probe[0, k], probe[1, k]
        y0, y1 = imgs[0, k], imgs[1, k]
        scale = (y1 - y0) / (x1 - x0) if x1 != x0 else 1.0
        shift = y0 - scale * x0
        if sys.h_factors[k].kind == "angle":
            h_rules.append(Rule1D(np.mod(r.nodes + shift, sys.h_factors[k].period),
                                  r.weights.copy(), {"kind": "angle-image"}))
        else:
            h_rules.append(map_affine(r, float(scale), float(shift)))
    return GroupGrid(a_rules, tuple(h_rules), {"translated": True, **grid.region})


@dataclass
class Coefficients:
    """Voice-transform samples on a grid; values indexed (h-node, a-node)."""

    grid: GroupGrid
    values: np.ndarray

    def __post_init__(self):
        if not np.all(np.isfinite(self.values.view(float))):
            raise ValueError("coefficient values must be finite")

    def scaled(self, c: complex) -> "Coefficients":
        return Coefficients(self.grid, c * self.values)

    def __add__(self, other: "Coefficients") -> "Coefficients":
        if other.grid is not self.grid and other.grid.desc() != self.grid.desc():
            raise ConfigurationError("coefficient grids differ")
        return Coefficients(self.grid, self.values + other.values)

    def write_csv(self, path) -> None:
        n = self.grid.a_points.shape[1]
        m = self.grid.h_points.shape[1]
        header = (
            [f"a_{i + 1}" for i in range(n)]
            + [f"h_{j + 1}" for j in range(m)]
            + ["re", "im", "weight"]
        )
        aw = self.grid.a_weights
        with open(path, "w") as fh:
            fh.write(",".join(header) + "\n")
            for j, (hpt, hw) in enumerate(zip(self.grid.h_points, self._haar_w)):
                for i, apt in enumerate(self.grid.a_points):
                    v = self.values[j, i]
                    row = list(apt) + list(hpt) + [v.real, v.imag, aw[i] * hw]
                    fh.write(",".join(f"{x:.17g}" for x in row) + "\n")

    _haar_w: np.ndarray | None = None


def _threads() -> int:
    env = os.environ.get("MOCKREP_THREADS")
    if env:
        return max(1, int(env))
    return 1


def _check_coverage(quad: BoxRule, field: Field, name: str):
    if field.support_hint is None:
        return
    lo, hi = field.support_hint
    for r, l, u in zip(quad.rules, lo, hi):
        if r.desc.get("lo", -np.inf) > l + 1e-9 or r.desc.get("hi", np.inf) < u - 1e-9:
            raise CoverageError(
                f"inner-product rule does not cover the support of {name}"
            )


def default_transform_quad(sys: SemidirectSystem) -> BoxRule:
    spec = sys.defaults.get("quad_box", {"lo": [-8.0] * sys.d, "hi": [8.0] * sys.d,
                                         "n": [256] * sys.d, "kind": "gauss"})
    return box_rule(spec["lo"], spec["hi"], spec["n"], spec.get("kind", "gauss"))


def _phase_matrices(phi_vals, a_rules, sign):
    return [
        np.exp(sign * 2j * np.pi * np.outer(phi_vals[:, k], r.nodes))
        for k, r in enumerate(a_rules)
    ]


def _contract(c, mats):
    """sum_x c(x) prod_k mats[k][x, i_k]  ->  flat a-tensor (a-major order)."""
    if len(mats) == 1:
        return c @ mats[0]
    if len(mats) == 2:
        return (mats[0].T @ (c[:, None] * mats[1])).reshape(-1)
    raise ConfigurationError("normal factors of dimension > 2 are not supported")


def _analyze_generic(sys, f, eta, grid, quad):
    pts, wq = quad.points, quad.weights
    mask = sys.domain_x(pts)
    fv = np.where(mask, f(pts), 0.0)
    phi_vals = sys.phi(pts)
    mats = _phase_matrices(phi_vals, grid.a_rules, +1)
    base = wq * fv
    betas = sys.beta(grid.h_points)
    h_invs = sys.h_inverse(grid.h_points)
    values = np.empty((grid.h_points.shape[0], grid.a_points.shape[0]), dtype=complex)

    def work(j):
        ev = np.conj(eta(sys.act_d(h_invs[j], pts)))
        c = base * ev * betas[j] ** -0.5
        values[j] = _contract(c, mats)

    nthreads = _threads()
    if nthreads > 1:
        with ThreadPoolExecutor(max_workers=nthreads) as pool:
            list(pool.map(work, range(grid.h_points.shape[0])))
    else:
        for j in range(grid.h_points.shape[0]):
            work(j)
    return values


def _analyze_angular_band(sys, f, eta, grid, angle_nodes=96, max_u_nodes=720):
    """Adapted path for rotation-dilation systems with a banded vector.

    With eta(r, xi) = rho(r) D(xi), D the order-B Dirichlet sum, the angle
    integral is exact on the modes of f and

        V(a, t, theta) = (2 pi / t) sum_{|m|<=B} e^{i m theta} I_m(a, t),
        I_m(a, t) = (1/2) int_0^U f_m(sqrt(u)) rho(sqrt(u)/t) e^{2 pi i a u} du,

    on a per-node uniform rule in u = r^2 confined to the dilated support of
    rho (uniform spacing keeps the oscillatory factor alias-free).
    """
    band = int(eta.meta["band"])
    rho = eta.meta["radial"]
    s_hi = float(eta.meta.get("radial_support", 5.5))
    r_f = float(np.max(np.abs(f.support_hint[1]))) if f.support_hint else 8.0

    xi = periodic(angle_nodes)
    modes = np.arange(-band, band + 1)
    e_min = np.exp(-1j * np.outer(modes, xi.nodes)) * (xi.weights / (2 * np.pi))

    t_axis = grid.h_rules[0]
    th_axis = grid.h_rules[1]
    a_nodes = grid.a_rules[0].nodes
    a_max = float(np.max(np.abs(a_nodes)))
    phase_th = np.exp(1j * np.outer(th_axis.nodes, modes))  # (n_th, n_modes)

    amp = np.conj(complex(eta.meta.get("amplitude", 1.0)))
    i_m = np.empty((t_axis.n, modes.size, a_nodes.size), dtype=complex)
    for it, t in enumerate(t_axis.nodes):
        u_hi = min((s_hi * t) ** 2, r_f**2)
        du = min(1.0 / (2.8 * a_max + 1e-12), u_hi / 96.0)
        n_u = min(max_u_nodes, max(96, int(np.ceil(u_hi / du)) + 1))
        rule = trapezoid(0.0, u_hi, n_u)
        r = np.sqrt(rule.nodes)
        pts = np.stack(
            [np.outer(r, np.cos(xi.nodes)).ravel(), np.outer(r, np.sin(xi.nodes)).ravel()],
            axis=-1,
        )
        fvals = f(pts).reshape(r.size, xi.n)
        f_m = fvals @ e_min.T  # (n_u, n_modes)
        weight = 0.5 * rule.weights * rho(r / t)
        osc = np.exp(2j * np.pi * np.outer(rule.nodes, a_nodes))
        i_m[it] = f_m.T @ (weight[:, None] * osc)

    values = np.empty((grid.h_points.shape[0], a_nodes.size), dtype=complex)
    # h tensor order: t-major (theta fastest), matching tensor_nodes
    for it in range(t_axis.n):
        block = phase_th @ i_m[it]  # (n_th, n_a)
        sl = slice(it * th_axis.n, (it + 1) * th_axis.n)
        values[sl] = amp * (2.0 * np.pi / t_axis.nodes[it]) * block
    return values


def _analyze_y_boxes(sys, f, eta, grid, box_nodes=24):
    """Adapted path: eta is an indicator in image coordinates.

    Inner products are computed in the image chart, where the integrand is
    smooth on a parallelogram per h-node:

        V(a, h) = sqrt(2 alpha(h)) sum_{branches} int_{h[B]} f(x(u))
                  jphi(x(u))^(-1/2) exp(2 pi i <u, a>) du.
    """
    meta = eta.meta
    boxes = [np.asarray(meta["box_pos"], float), np.asarray(meta["box_neg"], float)]
    signs = [+1.0, -1.0]
    base = gauss_legendre(-1.0, 1.0, box_nodes)
    uu, ww = tensor_nodes([base, base])

    branch_nodes = []
    for b in boxes:
        mid = 0.5 * (b[:, 0] + b[:, 1])
        half = 0.5 * (b[:, 1] - b[:, 0])
        branch_nodes.append((mid + uu * half, ww * np.prod(half)))

    amp = np.conj(complex(meta.get("amplitude", 1.0)))
    alphas = sys.alpha(grid.h_points)
    values = np.empty((grid.h_points.shape[0], grid.a_points.shape[0]), dtype=complex)
    for j, h in enumerate(grid.h_points):
        m = sys.n_matrix(h)
        acc = np.zeros(grid.a_points.shape[0], dtype=complex)
        for sign, (u0, w0) in zip(signs, branch_nodes):
            u = u0 @ m.T
            x1 = sign * np.sqrt(-2.0 * u[:, 0])
            x = np.stack([x1, -2.0 * u[:, 1] / x1], axis=-1)
            g = f(x) * np.abs(u[:, 0]) ** -0.5
            c = (w0 / alphas[j]) * g
            mats = _phase_matrices(u, grid.a_rules, +1)
            acc += _contract(c, mats)
        values[j] = amp * np.sqrt(2.0 * alphas[j]) * acc
    return values


def _y_boxes_branches(eta: Field, box_nodes: int = 48):
    base = gauss_legendre(-1.0, 1.0, box_nodes)
    uu, ww = tensor_nodes([base, base])
    out = []
    for key, sign in (("box_pos", +1.0), ("box_neg", -1.0)):
        b = np.asarray(eta.meta[key], dtype=float)
        mid = 0.5 * (b[:, 0] + b[:, 1])
        half = 0.5 * (b[:, 1] - b[:, 0])
        out.append((mid + uu * half, ww * np.prod(half), sign))
    return out


def energy_y_boxes(sys, f, eta, h_rules, box_nodes: int = 48) -> float:
    """Coefficient energy with the normal direction integrated exactly.

    For an indicator vector the coefficient slice V(., h) is the Fourier
    transform of a density supported on the mapped box, so its full
    normal-factor energy is a plain box integral (Plancherel); only the
    chart directions are gridded.
    """
    amp2 = abs(complex(eta.meta.get("amplitude", 1.0))) ** 2
    branches = _y_boxes_branches(eta, box_nodes)
    hpts, hw = tensor_nodes(list(h_rules))
    hw = hw * sys.haar_weight(hpts)
    alphas = sys.alpha(hpts)
    total = 0.0
    for j, h in enumerate(hpts):
        m = sys.n_matrix(h)
        acc = 0.0
        for u0, w0, sign in branches:
            u = u0 @ m.T
            x1 = sign * np.sqrt(-2.0 * u[:, 0])
            x = np.stack([x1, -2.0 * u[:, 1] / x1], axis=-1)
            acc += float(np.sum(w0 / alphas[j] * np.abs(f(x)) ** 2 / np.abs(u[:, 0])))
        total += hw[j] * 2.0 * alphas[j] * acc
    return amp2 * float(total)


def synthesize_y_boxes(sys, f, eta, eval_points, h_rules) -> np.ndarray:
    """Frame sum for an indicator vector, normal direction integrated exactly.

    The exact normal-factor integral collapses each h-contribution to
    ``2 alpha(h) |amp|^2 f(x)`` on the set where the image point of x lies in
    the mapped box, so the reconstruction is f times a chart Riemann sum of
    the admissibility integrand.
    """
    amp2 = abs(complex(eta.meta.get("amplitude", 1.0))) ** 2
    pts = np.asarray(eval_points, dtype=float)
    u = sys.phi(pts)
    sign = np.sign(pts[:, 0])
    hpts, hw = tensor_nodes(list(h_rules))
    hw = hw * sys.haar_weight(hpts)
    alphas = sys.alpha(hpts)
    scale = np.zeros(pts.shape[0])
    for j, h in enumerate(hpts):
        m_inv = sys.n_matrix(sys.h_inverse(h))
        ui = u @ m_inv.T
        for key, s in (("box_pos", +1.0), ("box_neg", -1.0)):
            b = np.asarray(eta.meta[key], dtype=float)
            inside = (
                (ui[:, 0] >= b[0, 0]) & (ui[:, 0] <= b[0, 1])
                & (ui[:, 1] >= b[1, 0]) & (ui[:, 1] <= b[1, 1])
                & (sign == s)
            )
            scale[inside] += hw[j] * 2.0 * alphas[j]
    return amp2 * scale * f(pts)


def analyze(
    sys: SemidirectSystem,
    f: Field,
    eta: Field,
    grid: GroupGrid | None = None,
    quad: BoxRule | None = None,
) -> Coefficients:
    """Voice-transform coefficients <f, U_g eta> on the grid nodes."""
    grid = grid if grid is not None else build_group_grid(sys)
    if eta.meta and eta.meta.get("kind") == "y_boxes":
        values = _analyze_y_boxes(sys, f, eta, grid)
    elif eta.meta and eta.meta.get("kind") == "angular_band" \
            and sys.defaults.get("polar_structure"):
        knobs = sys.defaults.get("angular_band_quad", {})
        values = _analyze_angular_band(sys, f, eta, grid, **knobs)
    else:
        quad = quad if quad is not None else default_transform_quad(sys)
        _check_coverage(quad, f, "f")
        values = _analyze_generic(sys, f, eta, grid, quad)
    coeffs = Coefficients(grid, values)
    coeffs._haar_w = grid.haar_weights(sys)
    return coeffs


def energy_direct(
    sys: SemidirectSystem,
    f: Field | None = None,
    eta: Field | None = None,
    grid: GroupGrid | None = None,
    quad: BoxRule | None = None,
    coeffs: Coefficients | None = None,
) -> float:
    """Coefficient energy sum_i w_i |V_i|^2 over the truncated grid."""
    if coeffs is None:
        coeffs = analyze(sys, f, eta, grid, quad)
    hw = coeffs.grid.haar_weights(sys)
    aw = coeffs.grid.a_weights
    return float(np.sum(hw * np.sum(aw * np.abs(coeffs.values) ** 2, axis=1)))


def energy_via_density(
    sys: SemidirectSystem,
    f: Field,
    eta: Field,
    h_rules: tuple[Rule1D, ...] | None = None,
    y_resolution: int = 160,
    fiber_resolution: int | None = None,
    fiber_radius: float | None = None,
) -> float:
    """Energy through the fiber densities:

        int_H ( int_Y |<f_y, (eta^h)_y>|^2 dy ) dh / (alpha(h) beta(h)).
    """
    from .coarea import fiber_quadrature, y_rule

    if h_rules is None:
        h_rules = build_group_grid(sys).h_rules
    hpts, hw = tensor_nodes(list(h_rules))
    ypts, yw = y_rule(sys, y_resolution)

    fibers = [fiber_quadrature(sys, y, fiber_resolution, fiber_radius) for y in ypts]
    sizes = [fm.nodes.shape[0] for fm in fibers]
    all_nodes = np.concatenate([fm.nodes for fm in fibers], axis=0)
    wf = np.concatenate([fm.weights * f(fm.nodes) for fm in fibers])
    splits = np.cumsum(sizes)[:-1]

    dens = sys.haar_density(hpts) / (sys.alpha(hpts) * sys.beta(hpts))
    h_invs = sys.h_inverse(hpts)
    total = 0.0
    for j in range(hpts.shape[0]):
        ev = np.conj(eta(sys.act_d(h_invs[j], all_nodes)))
        omegas = np.array([seg.sum() for seg in np.split(wf * ev, splits)])
        total += hw[j] * dens[j] * float(np.sum(yw * np.abs(omegas) ** 2))
    return float(total)


def synthesize(
    sys: SemidirectSystem,
    coeffs: Coefficients,
    eta: Field,
    eval_points: np.ndarray,
) -> np.ndarray:
    """Weak reconstruction sum_i w_i V_i (U_{g_i} eta) at the evaluation points."""
    pts = np.asarray(eval_points, dtype=float)
    grid = coeffs.grid
    phi_vals = sys.phi(pts)
    mats = _phase_matrices(phi_vals, grid.a_rules, -1)
    hw = grid.haar_weights(sys)
    aw = grid.a_weights
    betas = sys.beta(grid.h_points)
    h_invs = sys.h_inverse(grid.h_points)
    out = np.zeros(pts.shape[0], dtype=complex)
    shape = tuple(r.n for r in grid.a_rules)
    for j in range(grid.h_points.shape[0]):
        wv = (aw * coeffs.values[j]).reshape(shape)
        if len(mats) == 1:
            t = mats[0] @ wv
        else:
            t = np.sum((mats[0] @ wv) * mats[1], axis=1)
        out += hw[j] * betas[j] ** -0.5 * t * eta(sys.act_d(h_invs[j], pts))
    return out


def eval_rule(sys: SemidirectSystem) -> tuple[np.ndarray, np.ndarray]:
    """Evaluation points and weights for reconstruction error norms."""
    builder = sys.defaults.get("eval_rule_builder")
    if builder is not None:
        return builder()
    spec = sys.defaults.get("eval_box")
    if spec is None:
        spec = sys.defaults.get("quad_box")
    rule = box_rule(spec["lo"], spec["hi"], spec["n"])
    return rule.points, rule.weights


def field_norm2(f: Field, quad: BoxRule) -> float:
    return float(np.sum(quad.weights * np.abs(f(quad.points)) ** 2))


def reproduction_report(
    sys: SemidirectSystem,
    f: Field,
    eta: Field,
    grid: GroupGrid | None = None,
    quad: BoxRule | None = None,
    with_density_route: bool = False,
    density_kwargs: dict | None = None,
) -> dict:
    """Energy ratio and reconstruction error for one (f, eta) pair.

    For indicator vectors carried by image-chart boxes, the normal-factor
    integrals are evaluated exactly per chart node (the plain grid sum over
    that direction is dominated by truncation otherwise); the denser chart
    rules documented by the system are used there.
    """
    quad = quad if quad is not None else default_transform_quad(sys)
    norm2 = field_norm2(f, quad)
    epts, ew = eval_rule(sys)
    fvals = f(epts)
    if eta.meta and eta.meta.get("kind") == "y_boxes":
        a_spec = sys.defaults["group_grid"]["a"]

        def h_rules_from(key):
            spec = sys.defaults.get(key)
            if spec is None:
                return (grid if grid is not None else build_group_grid(sys)).h_rules
            return build_group_grid(sys, {"a": a_spec, "h": spec}).h_rules

        energy_rules = h_rules_from("reproduction_h")
        synth_rules = h_rules_from("synthesis_h")
        energy = energy_y_boxes(sys, f, eta, energy_rules)
        recon = synthesize_y_boxes(sys, f, eta, epts, synth_rules)
        grid_desc = {"h": [r.desc for r in energy_rules], "a": "exact",
                     "h_synthesis": [r.desc for r in synth_rules]}
    else:
        grid = grid if grid is not None else build_group_grid(sys)
        coeffs = analyze(sys, f, eta, grid, quad)
        energy = energy_direct(sys, coeffs=coeffs)
        recon = synthesize(sys, coeffs, eta, epts)
        grid_desc = grid.desc()
    num = float(np.sum(ew * np.abs(recon - fvals) ** 2))
    den = float(np.sum(ew * np.abs(fvals) ** 2))
    report = {
        "energy_direct": energy,
        "energy_density": None,
        "norm_f": norm2,
        "energy_ratio": energy / norm2 if norm2 > 0 else 0.0,
        "l2_error": np.sqrt(num / den) if den > 0 else 0.0,
        "grid": grid_desc,
    }
    if with_density_route:
        report["energy_density"] = energy_via_density(
            sys, f, eta, None, **(density_kwargs or {})
        )
    return report


def central_energy_sweep(
    sys: SemidirectSystem,
    f: Field,
    eta: Field,
    windows=(1.0, 2.0, 4.0, 8.0),
    base_spec: dict | None = None,
) -> dict:
    """Energy as a function of the central-window length (n > d systems).

    Returns the window energies, the least-squares slope through the origin
    and the R^2 of the linear fit; a reproducing system would have bounded
    energy, a flat non-square-integrable direction gives linear growth.
    """
    spec = dict(base_spec if base_spec is not None else sys.defaults["group_grid"])
    energies = []
    for t_len in windows:
        s = {k: [dict(x) for x in v] for k, v in spec.items()}
        s["a"][-1]["hi"] = float(t_len)
        s["a"][-1]["n"] = max(8, int(round(16 * t_len)))
        grid = build_group_grid(sys, s)
        energies.append(energy_direct(sys, f, eta, grid))
    t = np.asarray(windows, float)
    e = np.asarray(energies, float)
    coeffs = np.polyfit(t, e, 1)
    fit = np.polyval(coeffs, t)
    ss_res = float(np.sum((e - fit) ** 2))
    ss_tot = float(np.sum((e - np.mean(e)) ** 2))
    return {
        "windows": list(map(float, windows)),
        "energies": list(map(float, e)),
        "slope": float(coeffs[0]),
        "intercept": float(coeffs[1]),
        "r_squared": 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0,
    }
