"""Structural validation of a system: every identity the construction assumes.

Checks, each reported with its maximal residual and worst sample:

* linearity of the normal-factor action;
* the intertwining identity ``phi(h.x) = h[phi(x)]``;
* ``alpha(h)`` against the chart Jacobian determinant of ``y -> h^{-1}[y]``;
* constancy of the ground-action Jacobian, by integrating random smooth
  bumps against the pulled-back measure (Monte Carlo over bumps);
* group axioms of the chart operations and of the full group law;
* multiplicativity of ``alpha`` and of the modular function of G.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import GroupElement, SemidirectSystem, compose, element_distance, identity_element, inverse
from .errors import PreconditionError
from .fields import _smooth_bump
from .quadrature import box_rule

MC_CHECKS = ("jacobian-constancy",)


@dataclass
class CheckResult:
    name: str
    max_residual: float
    worst_sample: dict
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(self.max_residual <= self.tolerance)


@dataclass
class ValidationReport:
    system: str
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def as_dict(self) -> dict:
        return {
            "system": self.system,
            "passed": self.passed,
            "checks": [
                {
                    "name": c.name,
                    "max_residual": c.max_residual,
                    "tolerance": c.tolerance,
                    "passed": c.passed,
                    "worst_sample": c.worst_sample,
                }
                for c in self.checks
            ],
        }


def sample_h(sys: SemidirectSystem, rng: np.random.Generator, count: int) -> np.ndarray:
    """Random chart points, drawn per factor kind."""
    log_range = sys.defaults.get("random_h_log_range", 1.0)
    cols = []
    for f in sys.h_factors:
        if f.kind == "scale":
            cols.append(np.exp(rng.uniform(-log_range, log_range, count)))
        elif f.kind == "signed_scale":
            mag = np.exp(rng.uniform(-log_range, log_range, count))
            cols.append(mag * rng.choice([-1.0, 1.0], count))
        elif f.kind == "angle":
            cols.append(rng.uniform(0.0, f.period, count))
        else:
            cols.append(rng.uniform(-2.0, 2.0, count))
    return np.stack(cols, axis=-1)


def sample_x(sys: SemidirectSystem, rng: np.random.Generator, count: int) -> np.ndarray:
    lo, hi = sys.defaults.get("x_sample_box", ([-3.0] * sys.d, [3.0] * sys.d))
    pts = rng.uniform(np.asarray(lo), np.asarray(hi), (count, sys.d))
    ok = sys.domain_x(pts)
    while not np.all(ok):
        pts[~ok] = rng.uniform(np.asarray(lo), np.asarray(hi), (int(np.sum(~ok)), sys.d))
        ok = sys.domain_x(pts)
    return pts


def _check_linearity(sys, rng, budget):
    worst, worst_sample = 0.0, {}
    hs = sample_h(sys, rng, budget)
    for h in hs:
        y1 = rng.normal(size=sys.n)
        y2 = rng.normal(size=sys.n)
        c = rng.normal()
        res = np.max(np.abs(sys.act_n(h, y1 + c * y2) - sys.act_n(h, y1) - c * sys.act_n(h, y2)))
        if res > worst:
            worst, worst_sample = float(res), {"h": h.tolist(), "c": float(c)}
    return worst, worst_sample


def _check_intertwining(sys, rng, budget):
    worst, worst_sample = 0.0, {}
    hs = sample_h(sys, rng, budget)
    xs = sample_x(sys, rng, budget)
    for h, x in zip(hs, xs):
        lhs = sys.phi(sys.act_d(h, x))
        rhs = sys.act_n(h, sys.phi(x))
        res = np.max(np.abs(lhs - rhs)) / (1.0 + np.max(np.abs(rhs)))
        if res > worst:
            worst, worst_sample = float(res), {"h": h.tolist(), "x": x.tolist()}
    return worst, worst_sample


def _check_alpha_determinant(sys, rng, budget):
    worst, worst_sample = 0.0, {}
    for h in sample_h(sys, rng, budget):
        m_inv = sys.n_matrix(sys.h_inverse(h))
        det = abs(np.linalg.det(m_inv))
        a = float(sys.alpha(h))
        res = abs(det - a) / (1.0 + a)
        if res > worst:
            worst, worst_sample = float(res), {"h": h.tolist(), "det": det, "alpha": a}
    return worst, worst_sample


def _check_jacobian_constancy(sys, rng, draws):
    """int phi(h^{-1}.x) dx = beta(h) int phi(x) dx for random smooth bumps."""
    worst, worst_sample = 0.0, {}
    for _ in range(draws):
        h = sample_h(sys, rng, 1)[0]
        center = rng.uniform(-2.0, 2.0, sys.d)
        width = rng.uniform(1.0, 2.5, sys.d)
        bump = _smooth_bump(sys.d, center, width)
        rule = box_rule(center - width / 2, center + width / 2, [64] * sys.d)
        pts, w = rule.points, rule.weights
        ref = float(np.sum(w * bump(pts).real))
        # image of the support under h., bounded by mapped corners (affine actions)
        corners = np.stack(
            np.meshgrid(*[(c - wd / 2, c + wd / 2) for c, wd in zip(center, width)],
                        indexing="ij"),
            axis=-1,
        ).reshape(-1, sys.d)
        img = sys.act_d(h, corners)
        lo, hi = img.min(axis=0), img.max(axis=0)
        pad = 0.05 * (hi - lo)
        rule2 = box_rule(lo - pad, hi + pad, [96] * sys.d)
        pts2, w2 = rule2.points, rule2.weights
        hinv = sys.h_inverse(h)
        lhs = float(np.sum(w2 * bump(sys.act_d(hinv, pts2)).real))
        beta = float(sys.beta(h))
        res = abs(lhs - beta * ref) / (1.0 + abs(beta * ref))
        if res > worst:
            worst, worst_sample = float(res), {"h": h.tolist(), "beta": beta}
    return worst, worst_sample


def _check_group_axioms(sys, rng, budget):
    worst, worst_sample = 0.0, {}
    e = identity_element(sys)
    for _ in range(budget):
        hs = sample_h(sys, rng, 3)
        gs = [GroupElement(rng.normal(size=sys.n), h) for h in hs]
        lhs = compose(sys, compose(sys, gs[0], gs[1]), gs[2])
        rhs = compose(sys, gs[0], compose(sys, gs[1], gs[2]))
        res = element_distance(sys, lhs, rhs)
        res = max(res, element_distance(sys, compose(sys, gs[0], e), gs[0]))
        res = max(res, element_distance(sys, compose(sys, e, gs[0]), gs[0]))
        res = max(res, element_distance(sys, compose(sys, gs[0], inverse(sys, gs[0])), e))
        if res > worst:
            worst, worst_sample = float(res), {"h": [h.tolist() for h in hs]}
    return worst, worst_sample


def _check_characters(sys, rng, budget):
    """alpha and the modular function of G are multiplicative."""
    worst, worst_sample = 0.0, {}
    for _ in range(budget):
        h1, h2 = sample_h(sys, rng, 2)
        h12 = sys.h_compose(h1, h2)
        ra = abs(float(sys.alpha(h12)) - float(sys.alpha(h1)) * float(sys.alpha(h2)))
        rd = abs(float(sys.modular(h12)) - float(sys.modular(h1)) * float(sys.modular(h2)))
        res = max(ra / (1.0 + abs(float(sys.alpha(h12)))),
                  rd / (1.0 + abs(float(sys.modular(h12)))))
        if res > worst:
            worst, worst_sample = float(res), {"h1": h1.tolist(), "h2": h2.tolist()}
    return worst, worst_sample


_CHECKS = {
    "action-linearity": _check_linearity,
    "intertwining": _check_intertwining,
    "alpha-determinant": _check_alpha_determinant,
    "jacobian-constancy": _check_jacobian_constancy,
    "group-axioms": _check_group_axioms,
    "character-multiplicativity": _check_characters,
}


def validate_system(
    sys: SemidirectSystem,
    sample_budget: int = 200,
    tolerance: float = 1e-8,
    mc_tolerance: float = 1e-5,
    seed: int = 7,
) -> ValidationReport:
    """Run every structural check and collect the residuals.

    ``sample_budget`` counts random samples per check; Monte Carlo checks use
    ``max(8, sample_budget // 10)`` bump draws and the looser tolerance.
    """
    if sample_budget < 1:
        raise PreconditionError("sample_budget must be >= 1")
    rng = np.random.default_rng(seed)
    report = ValidationReport(system=sys.name)
    for name, fn in _CHECKS.items():
        budget = max(8, sample_budget // 10) if name in MC_CHECKS else sample_budget
        tol = mc_tolerance if name in MC_CHECKS else tolerance
        residual, worst = fn(sys, rng, budget)
        report.checks.append(CheckResult(name, residual, worst, tol))
    return report
