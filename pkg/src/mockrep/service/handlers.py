"""Command implementations shared by the HTTP service and the CLI.

Each handler takes its validated config, runs the corresponding library
operations, and returns a finalized report plus an exit code:
0 = pass, 1 = criterion fail, 2 = configuration/usage error (raised as
exceptions and mapped by the callers).
"""

from __future__ import annotations

import numpy as np

from ..admissibility import classify, criterion_eta, example_criterion
from ..coarea import coarea_residual, covariance_residual, fiber_quadrature
from ..fields import make_field
from ..reporting import finalize_report
from ..transform import (
    analyze,
    build_group_grid,
    central_energy_sweep,
    energy_direct,
    energy_via_density,
    reproduction_report,
)
from ..validation import sample_h, validate_system
from .models import (
    AdmissibleConfig,
    ClassifyConfig,
    CoareaConfig,
    CommandReport,
    EnergyConfig,
    ReproduceConfig,
    TransformConfig,
    ValidateConfig,
)


def _field(sys, spec, default_key):
    if spec is None:
        return make_field(sys.d, sys.defaults[default_key], system=sys)
    return make_field(sys.d, spec.as_spec(), system=sys)


def _grid(sys, grid_spec):
    if grid_spec is None or (grid_spec.a is None and grid_spec.h is None):
        return build_group_grid(sys)
    base = sys.defaults["group_grid"]
    spec = {
        "a": [ax.as_spec() for ax in grid_spec.a] if grid_spec.a else base["a"],
        "h": [ax.as_spec() for ax in grid_spec.h] if grid_spec.h else base["h"],
    }
    return build_group_grid(sys, spec)


def run_validate(cfg: ValidateConfig) -> CommandReport:
    sys = cfg.build_system()
    rep = validate_system(sys, cfg.sample_budget, cfg.tolerance,
                          cfg.mc_tolerance, cfg.seed)
    report = finalize_report(rep.as_dict(), cfg.model_dump())
    code = 0 if rep.passed else 1
    return CommandReport(report=report, exit_code=code,
                         status="pass" if code == 0 else "fail")


def run_classify(cfg: ClassifyConfig) -> CommandReport:
    sys = cfg.build_system()
    verdict = classify(sys, cfg.probe_budget, cfg.seed)
    report = finalize_report(verdict.as_dict(), cfg.model_dump())
    return CommandReport(report=report, exit_code=0, status="pass")


def run_coarea(cfg: CoareaConfig) -> CommandReport:
    sys = cfg.build_system()
    f = make_field(sys.d, cfg.f.as_spec(), system=sys)
    residual = coarea_residual(sys, f, cfg.y_resolution, cfg.angular_resolution)

    rng = np.random.default_rng(cfg.seed)
    lo, hi = sys.defaults["y_sample_box"]
    worst_cov = 0.0
    for h in sample_h(sys, rng, 10):
        y = rng.uniform(np.asarray(lo), np.asarray(hi))
        worst_cov = max(worst_cov, covariance_residual(sys, y, h, f))
    fm = fiber_quadrature(sys, np.asarray(lo) * 0 + np.mean([lo, hi], axis=0))
    report = finalize_report(
        {
            "coarea_residual": residual,
            "covariance_residual_max": worst_cov,
            "fiber_chart": fm.chart_desc,
            "fiber_mass_at_midpoint": fm.mass,
            "tolerance": cfg.tolerance,
        },
        cfg.model_dump(),
    )
    ok = residual <= cfg.tolerance and worst_cov <= cfg.tolerance
    return CommandReport(report=report, exit_code=0 if ok else 1,
                         status="pass" if ok else "fail")


def run_transform(cfg: TransformConfig) -> CommandReport:
    sys = cfg.build_system()
    f = _field(sys, cfg.f, "f_spec")
    eta = _field(sys, cfg.eta, "eta_spec")
    grid = _grid(sys, cfg.grid)
    coeffs = analyze(sys, f, eta, grid)
    if cfg.out:
        coeffs.write_csv(cfg.out)
    energy = energy_direct(sys, coeffs=coeffs)
    report = finalize_report(
        {
            "nodes": grid.size,
            "energy_direct": energy,
            "csv": cfg.out,
            "grid": grid.desc(),
        },
        cfg.model_dump(),
    )
    return CommandReport(report=report, exit_code=0, status="pass")


def run_energy(cfg: EnergyConfig) -> CommandReport:
    sys = cfg.build_system()
    f = _field(sys, cfg.f, "f_spec")
    eta = _field(sys, cfg.eta, "eta_spec")
    rep = reproduction_report(sys, f, eta, grid=_grid(sys, cfg.grid),
                              with_density_route=cfg.with_density_route)
    report = finalize_report(rep, cfg.model_dump())
    return CommandReport(report=report, exit_code=0, status="pass")


def run_reproduce(cfg: ReproduceConfig) -> CommandReport:
    sys = cfg.build_system()
    f = _field(sys, cfg.f, "f_spec")
    eta = _field(sys, cfg.eta, "eta_spec")
    if sys.n > sys.d:
        # no admissible vector exists; report the divergence study instead
        sweep = central_energy_sweep(sys, f, eta, cfg.windows)
        report = finalize_report(
            {"verdict": "NOT_REPRODUCING", "divergence": sweep},
            cfg.model_dump(),
        )
        return CommandReport(report=report, exit_code=1, status="fail")
    rep = reproduction_report(sys, f, eta, grid=_grid(sys, cfg.grid))
    lo, hi = cfg.ratio_band
    ok = lo <= rep["energy_ratio"] <= hi and rep["l2_error"] <= cfg.l2_bound
    report = finalize_report(
        {**rep, "ratio_band": [lo, hi], "l2_bound": cfg.l2_bound},
        cfg.model_dump(),
    )
    return CommandReport(report=report, exit_code=0 if ok else 1,
                         status="pass" if ok else "fail")


def run_admissible(cfg: AdmissibleConfig) -> CommandReport:
    sys = cfg.build_system()
    eta = criterion_eta(sys, cfg.eta.as_spec())
    rep = example_criterion(sys, eta)
    report = finalize_report(rep, cfg.model_dump())
    code = 0 if rep["satisfied"] else 1
    return CommandReport(report=report, exit_code=code,
                         status="pass" if code == 0 else "fail")


HANDLERS = {
    "validate": (ValidateConfig, run_validate),
    "classify": (ClassifyConfig, run_classify),
    "coarea": (CoareaConfig, run_coarea),
    "transform": (TransformConfig, run_transform),
    "energy": (EnergyConfig, run_energy),
    "reproduce": (ReproduceConfig, run_reproduce),
    "admissible": (AdmissibleConfig, run_admissible),
}
