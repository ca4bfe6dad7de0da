"""Admissibility criteria: structural classification, the fiber criterion,
dilation transfer and the per-system closed-form conditions.

The structural verdict combines:

* the dimension count (n > d rules reproduction out);
* positivity of the critical set of the intertwiner (measured by sampling);
* unimodularity of G together with a homogeneous intertwiner and a linear
  ground action (rules reproduction out);
* stabilizer compactness: non-unimodular G with almost-everywhere compact
  stabilizers is reproducing; with noncompact stabilizers the generic
  machinery is inconclusive and the verdict is CONDITIONAL unless the
  system ships an explicit admissible vector.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import SemidirectSystem
from .errors import ParameterError, PreconditionError, UnsupportedSystemError
from .fields import Field, from_callable
from .quadrature import gauss_legendre, log_rule, periodic, signed_log_rule, tensor_nodes
from .validation import sample_h


@dataclass(frozen=True)
class Verdict:
    unimodular: bool
    n_vs_d: str
    critical_fraction: float
    stabilizers: str
    conclusion: str
    cited: tuple[str, ...] = field(default_factory=tuple)

    def as_dict(self) -> dict:
        return {
            "unimodular": self.unimodular,
            "n_vs_d": self.n_vs_d,
            "critical_fraction": self.critical_fraction,
            "stabilizers": self.stabilizers,
            "conclusion": self.conclusion,
            "cited": list(self.cited),
        }


def classify(sys: SemidirectSystem, probe_budget: int = 2000, seed: int = 11) -> Verdict:
    """Structural reproducing/non-reproducing verdict from system metadata."""
    if probe_budget < 100:
        raise PreconditionError("probe_budget must be >= 100")
    rng = np.random.default_rng(seed)

    hs = sample_h(sys, rng, probe_budget)
    unimodular = bool(np.max(np.abs(sys.modular(hs) - 1.0)) < 1e-10)

    lo, hi = sys.defaults.get("x_sample_box", ([-4.0] * sys.d, [4.0] * sys.d))
    xs = rng.uniform(np.asarray(lo), np.asarray(hi), (probe_budget, sys.d))
    critical_fraction = float(np.mean(sys.jphi(xs) < 1e-8))

    n_vs_d = "n<d" if sys.n < sys.d else ("n=d" if sys.n == sys.d else "n>d")

    if sys.orbit_meta is not None:
        kinds = {sys.orbit_meta.stabilizer(z).kind for z in sys.orbit_meta.z_values}
        if kinds <= {"trivial", "compact"}:
            stabilizers = "compact a.e."
        elif "trivial" in kinds or "compact" in kinds:
            stabilizers = "mixed"
        else:
            stabilizers = "noncompact"
    else:
        stabilizers = "noncompact" if sys.n > sys.d else "mixed"

    cited = []
    if sys.n > sys.d:
        conclusion = "NOT_REPRODUCING"
        cited.append("dimension-count")
    elif critical_fraction > 0.01:
        conclusion = "NOT_REPRODUCING"
        cited.append("critical-set")
    elif unimodular and sys.phi_homogeneous_degree and sys.linear_action_d:
        conclusion = "NOT_REPRODUCING"
        cited.append("homogeneous-dilation-obstruction")
    elif not unimodular and stabilizers == "compact a.e.":
        conclusion = "REPRODUCING"
        cited.append("nonunimodular-compact-stabilizers")
    elif not unimodular and sys.known_admissible_vector:
        conclusion = "REPRODUCING"
        cited.append("explicit-admissible-vector")
    else:
        conclusion = "CONDITIONAL"
        cited.append("fiber-criterion-required")

    return Verdict(unimodular, n_vs_d, critical_fraction, stabilizers,
                   conclusion, tuple(cited))


# ---------------------------------------------------------------------------
# fiber criterion
# ---------------------------------------------------------------------------


def _criterion_h_rule(sys: SemidirectSystem):
    """Documented truncated H rule for the fiber criterion (Lebesgue weights)."""
    spec = sys.defaults.get("criterion", {}).get("h_grid")
    if spec is None:
        raise UnsupportedSystemError(
            f"system '{sys.name}' has no documented criterion truncation"
        )
    rules = []
    for fspec, key in zip(sys.h_factors, ("t", "b")):
        s = spec.get(key)
        if fspec.kind == "scale":
            rules.append(log_rule(s["lo"], s["hi"], s["n"], kind="gauss"))
        elif fspec.kind == "signed_scale":
            rules.append(signed_log_rule(s["lo"], s["hi"], s["n"], kind="gauss"))
        elif fspec.kind == "angle":
            rules.append(periodic(spec.get("n_angle", 32), period=fspec.period))
        else:
            rules.append(gauss_legendre(s["lo"], s["hi"], s["n"]))
    return tensor_nodes(rules)


def fiber_criterion_residual(
    sys: SemidirectSystem,
    eta: Field,
    y,
    test_vectors: list[Field],
    fiber_resolution: int | None = None,
    fiber_radius: float | None = None,
) -> list[dict]:
    """Relative residuals of the fiber reproducing identity at y.

    For each test vector u on the fiber the identity

        ||u||^2 = int_H |<u, (eta^h)|_fiber>|^2 dh / (alpha(h) beta(h))

    is evaluated with the system's documented truncated H rule (or, for
    indicator vectors, with a rule adapted to the mapped boxes).
    """
    from .coarea import fiber_quadrature

    fm = fiber_quadrature(sys, y, fiber_resolution, fiber_radius)
    results = []

    if eta.meta and eta.meta.get("kind") == "y_boxes":
        hpts, hw, dens = _y_box_criterion_rule(sys, eta, fm.y)
    else:
        hpts, hw = _criterion_h_rule(sys)
        dens = sys.haar_density(hpts) / (sys.alpha(hpts) * sys.beta(hpts))

    h_invs = sys.h_inverse(hpts)
    eta_on_fiber = np.empty((hpts.shape[0], fm.nodes.shape[0]), dtype=complex)
    for j in range(hpts.shape[0]):
        eta_on_fiber[j] = np.conj(eta(sys.act_d(h_invs[j], fm.nodes)))

    for u in test_vectors:
        uvals = u(fm.nodes)
        norm2 = float(np.sum(fm.weights * np.abs(uvals) ** 2))
        if norm2 == 0.0:
            results.append({"residual": None, "skipped": True, "norm": 0.0})
            continue
        inner = eta_on_fiber @ (fm.weights * uvals)
        total = float(np.sum(hw * dens * np.abs(inner) ** 2))
        results.append({
            "residual": abs(total - norm2) / norm2,
            "skipped": False,
            "norm": norm2,
            "integral": total,
        })
    return results


def _y_box_criterion_rule(sys: SemidirectSystem, eta: Field, y):
    """Iterated rule covering exactly the (chart) windows where the mapped
    boxes meet the fiber of y; spectrally accurate for indicator vectors."""
    from .builtin.shearlet import adapted_h_rule

    gamma = sys.params.get("gamma")
    if gamma is None:
        raise UnsupportedSystemError("box-adapted criterion rule needs a shear system")
    knobs = sys.defaults.get("criterion", {})
    nodes = []
    weights = []
    for key in ("box_pos", "box_neg"):
        b = np.asarray(eta.meta[key], dtype=float)
        hn, wn = adapted_h_rule(np.asarray(y, float).reshape(-1), b, gamma,
                                n_t=knobs.get("n_t", 64), n_l=knobs.get("n_l", 64))
        nodes.append(hn)
        weights.append(wn)
    hpts = np.concatenate(nodes, axis=0)
    hw = np.concatenate(weights)
    dens = sys.haar_density(hpts) / (sys.alpha(hpts) * sys.beta(hpts))
    return hpts, hw, dens


def default_test_vectors(sys: SemidirectSystem, count: int = 8) -> list[Field]:
    """Per-fiber-geometry family: angular modes on circles, Hermite-envelope
    functions on lines, sign/phase patterns on point pairs."""
    name = sys.name
    if name.startswith("dilrot"):
        band = int(sys.defaults.get("criterion", {}).get("band", 4))
        modes = [m for m in range(-band, band + 1) if m != band][:count]

        def mk(m):
            def fn(p):
                ang = np.arctan2(p[..., 1], p[..., 0])
                return np.exp(1j * m * ang)

            return from_callable(fn, 2, meta={"mode": m})

        return [mk(m) for m in modes]
    if name.startswith("transdil"):
        def mk(k):
            def fn(p):
                xi = p[..., 0]
                return (np.polynomial.hermite_e.hermeval(xi, [0.0] * k + [1.0])
                        * np.exp(-xi * xi / 2.0)).astype(complex)

            return from_callable(fn, 2, meta={"order": k})

        return [mk(k) for k in range(count)]
    if name.startswith("shearlet"):
        coeffs = [
            (1.0, 0.0), (0.0, 1.0),
            (2 ** -0.5, 2 ** -0.5), (2 ** -0.5, -(2 ** -0.5)),
            (2 ** -0.5, 1j * 2 ** -0.5), (2 ** -0.5, -1j * 2 ** -0.5),
            (2.0 / np.sqrt(5.0), 1.0 / np.sqrt(5.0)),
            (1.0 / np.sqrt(5.0), 2j / np.sqrt(5.0)),
        ]

        def mk(cp, cm):
            def fn(p):
                pos = np.asarray(p, float)[..., 0] > 0
                return np.where(pos, cp, cm).astype(complex)

            return from_callable(fn, 2, meta={"pair": (cp, cm)})

        return [mk(cp, cm) for cp, cm in coeffs[:count]]
    raise UnsupportedSystemError(f"no test-vector family for '{name}'")


def transport_test_vector(sys: SemidirectSystem, u: Field, h) -> Field:
    """Composition with the inverse ground action (criterion transport)."""
    h = np.atleast_1d(np.asarray(h, dtype=float))
    hinv = sys.h_inverse(h)

    def fn(p):
        return u(sys.act_d(hinv, p))

    return from_callable(fn, u.dim)


# ---------------------------------------------------------------------------
# dilation transfer
# ---------------------------------------------------------------------------


def dilation_transfer(sys: SemidirectSystem, eta: Field, delta: float) -> Field:
    """Rescaled vector delta^{(np-d)/2} eta(./delta).

    Requires a homogeneous intertwiner and a linear ground action; for those
    systems the rescaled vector of an admissible vector is again admissible.
    """
    if not delta > 0:
        raise ParameterError("delta must be positive")
    if sys.phi_homogeneous_degree is None or not sys.linear_action_d:
        raise UnsupportedSystemError(
            "dilation transfer needs a homogeneous intertwiner and linear action"
        )
    p = float(sys.phi_homogeneous_degree)
    q = sys.n * p - sys.d
    pref = delta ** (q / 2.0)

    def fn(pts):
        return pref * eta(np.asarray(pts, dtype=float) / delta)

    support = None
    if eta.support_hint is not None:
        lo, hi = eta.support_hint
        support = (delta * lo, delta * hi)
    meta = None
    if eta.meta is not None:
        meta = dict(eta.meta)
        if meta.get("kind") == "y_boxes":
            scale = delta**p
            for key in ("box_pos", "box_neg"):
                meta[key] = tuple(
                    (lo * scale, hi * scale) for lo, hi in meta[key]
                )
            # jphi is homogeneous of degree n(p-1) for an n=d polynomial map
            meta["amplitude"] = meta.get("amplitude", 1.0) * pref * delta ** (
                -sys.n * (p - 1) / 2.0
            )
        elif meta.get("kind") == "angular_band":
            base = meta["radial"]
            amp = pref
            meta["radial"] = lambda s, _b=base: amp * _b(np.asarray(s) / delta)
            meta["radial_support"] = meta.get("radial_support", 5.5) * delta
            meta["amplitude"] = 1.0
    return Field(fn, eta.dim, support, None, meta)


# ---------------------------------------------------------------------------
# closed-form per-system criteria
# ---------------------------------------------------------------------------


def example_criterion(sys: SemidirectSystem, eta) -> dict:
    """Closed-form admissibility condition of the given built-in system.

    The expected representation of ``eta`` depends on the system: spatial
    fields for the wavelet and shear systems, angular-mode radial profiles
    for the rotation-dilation system, partial frequency data for the
    translation-dilation system.
    """
    name = sys.name
    if name.startswith("wavelet"):
        return _criterion_wavelet(sys, eta)
    if name.startswith("shearlet"):
        return _criterion_shearlet(sys, eta)
    if name.startswith("dilrot"):
        return _criterion_dilrot(sys, eta)
    if name.startswith("transdil"):
        return _criterion_transdil(sys, eta)
    raise UnsupportedSystemError(f"no closed-form criterion for '{name}'")


def _require_field(eta, what):
    if not isinstance(eta, Field):
        raise PreconditionError(f"this criterion needs a spatial field ({what})")
    return eta


def _criterion_wavelet(sys, eta, tol=1e-6):
    """Both half-line scale-energies int_0^inf |eta(+-s)|^2 ds/s must be 1."""
    eta = _require_field(eta, "eta(s) on the line")
    spec = sys.defaults["criterion"]["scale_rule"]
    rule = gauss_legendre(spec["lo"], spec["hi"], spec["n"])
    out = {}
    for label, sign in (("plus", 1.0), ("minus", -1.0)):
        vals = np.abs(eta((sign * rule.nodes)[:, None])) ** 2
        out[label] = float(np.sum(rule.weights * vals / rule.nodes))
    residuals = {k: abs(v - 1.0) for k, v in out.items()}
    return {
        "system": sys.name,
        "criterion": out,
        "residuals": residuals,
        "satisfied": bool(max(residuals.values()) <= tol),
    }


def _criterion_shearlet(sys, eta, tol=1e-6, zero_tol=1e-10):
    """The two half-plane scale-shear energies must equal 1/2 and the
    cross term must vanish.

    In chart coordinates, with x(t, l) = (t^(1/2), t^(gamma-1/2) l):

        int |eta(+-x(t, l))|^2 t^(gamma-3) dt dl = 1/2,
        int eta(x(t, l)) conj(eta(-x(t, l))) t^(gamma-3) dt dl = 0.
    """
    eta = _require_field(eta, "eta(x) on the plane")
    gamma = sys.params["gamma"]

    if eta.meta and eta.meta.get("kind") == "y_boxes":
        # integrate over the box windows (exact for indicator vectors)
        from .builtin.shearlet import adapted_h_rule

        knobs = sys.defaults.get("criterion", {})
        windows = []
        for key in ("box_pos", "box_neg"):
            b = np.asarray(eta.meta[key], dtype=float)
            windows.append(adapted_h_rule(np.array([-0.5, 0.0]), b, gamma,
                                          n_t=knobs.get("n_t", 64),
                                          n_l=knobs.get("n_l", 64)))
        hpts = np.concatenate([w[0] for w in windows])
        hw = np.concatenate([w[1] for w in windows])
    else:
        t_rule = log_rule(1e-4, 1e4, 512, kind="gauss")
        l_rule = gauss_legendre(-64.0, 64.0, 512)
        hpts, hw = tensor_nodes([l_rule, t_rule])

    l, t = hpts[:, 0], hpts[:, 1]
    x = np.stack([np.sqrt(t), t ** (gamma - 0.5) * l], axis=-1)
    dens = t ** (gamma - 3.0)
    e_plus = eta(x)
    e_minus = eta(-x)
    s1 = float(np.sum(hw * dens * np.abs(e_plus) ** 2))
    s2 = float(np.sum(hw * dens * np.abs(e_minus) ** 2))
    s3 = complex(np.sum(hw * dens * e_plus * np.conj(e_minus)))
    residuals = {
        "half_plane_pos": abs(s1 - 0.5),
        "half_plane_neg": abs(s2 - 0.5),
        "cross_term": abs(s3),
    }
    return {
        "system": sys.name,
        "criterion": {"half_plane_pos": s1, "half_plane_neg": s2,
                      "cross_term": [s3.real, s3.imag]},
        "residuals": residuals,
        "satisfied": bool(
            residuals["half_plane_pos"] <= tol
            and residuals["half_plane_neg"] <= tol
            and residuals["cross_term"] <= max(tol, zero_tol)
        ),
    }


def _criterion_dilrot(sys, eta, tol=1e-6):
    """Every angular mode's radial profile must satisfy
    int_0^inf |profile(t, m)|^2 dt/t = 1/pi."""
    from .builtin.dilrot import AngularData

    if not isinstance(eta, AngularData):
        raise PreconditionError(
            "this criterion needs angular-mode radial profiles"
        )
    spec = sys.defaults["criterion"]["scale_rule"]
    rule = gauss_legendre(spec["lo"], spec["hi"], spec["n"])
    target = 1.0 / np.pi
    out, residuals = {}, {}
    for m in eta.modes():
        vals = np.abs(eta(rule.nodes, m)) ** 2
        v = float(np.sum(rule.weights * vals / rule.nodes))
        out[str(m)] = v
        residuals[str(m)] = abs(v - target)
    return {
        "system": sys.name,
        "criterion": out,
        "target": target,
        "residuals": residuals,
        "satisfied": bool(max(residuals.values()) <= tol),
    }


def _criterion_transdil(sys, eta, tol=1e-6):
    """At each sampled frequency, int |eta_hat(y, w)|^2 dy/|y| must be 1."""
    from .builtin.transdil import PartialFourierData

    if not isinstance(eta, PartialFourierData):
        raise PreconditionError("this criterion needs partial frequency data")
    n = int(sys.defaults["criterion"]["y_rule_n"])
    out, residuals = {}, {}
    for w in eta.sample_freqs:
        # adapt the radial extent to the frequency window
        probe = np.linspace(1e-6, 20.0, 4096)
        mags = np.abs(eta(probe, w)) ** 2 / probe
        hi = float(probe[np.argmax(np.cumsum(mags) / np.sum(mags) > 1 - 1e-12)])
        rule = gauss_legendre(0.0, max(hi, 1e-3), n)
        val = 0.0
        for sign in (1.0, -1.0):
            vals = np.abs(eta(sign * rule.nodes, w)) ** 2
            val += float(np.sum(rule.weights * vals / rule.nodes))
        out[str(w)] = val
        residuals[str(w)] = abs(val - 1.0)
    return {
        "system": sys.name,
        "criterion": out,
        "residuals": residuals,
        "satisfied": bool(max(residuals.values()) <= tol),
    }


def criterion_eta(sys: SemidirectSystem, spec: dict | str):
    """Build eta in the representation the system's criterion expects."""
    if isinstance(spec, str):
        spec = {"name": spec}
    name = spec.get("name")
    from .fields import FIELD_ALIASES, make_field

    name = FIELD_ALIASES.get(name, name)
    if sys.name.startswith("dilrot") and name == "reference":
        from .builtin.dilrot import _eta_reference_angular

        return _eta_reference_angular(sys.defaults["criterion"].get("band", 4))
    if sys.name.startswith("transdil") and name == "reference":
        from .builtin.transdil import PartialFourierData, eta_hat

        return PartialFourierData(eta_hat, sys.defaults["criterion"]["freqs"])
    return make_field(sys.d, {**spec, "name": name}, system=sys)


# ---------------------------------------------------------------------------
# finiteness consistency
# ---------------------------------------------------------------------------


def finiteness_check(sys: SemidirectSystem, z) -> dict:
    """Implication checks between fiber finiteness and stabilizer compactness:

    (i) a finite fiber over the orbit forces a compact stabilizer;
    (ii) a unimodular group with compact stabilizer forces a finite fiber.
    """
    from .coarea import fiber_quadrature

    meta = sys.require_orbit_meta()
    y0 = meta.origin(z)
    fm = fiber_quadrature(sys, y0)
    fiber_finite = fm.chart_desc in ("point", "point-pair")
    info = meta.stabilizer(z)
    stab_compact = info.kind in ("trivial", "compact")
    rng = np.random.default_rng(3)
    unimodular = bool(
        np.max(np.abs(sys.modular(sample_h(sys, rng, 200)) - 1.0)) < 1e-10
    )
    consistent = True
    if fiber_finite and not stab_compact:
        consistent = False
    if unimodular and stab_compact and not fiber_finite:
        consistent = False
    return {
        "fiber_finite": fiber_finite,
        "stabilizer_compact": stab_compact,
        "unimodular": unimodular,
        "consistent": consistent,
    }
