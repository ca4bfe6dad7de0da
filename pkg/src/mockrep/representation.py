"""The unitary action of G on fields and its algebraic self-checks.

``apply_rep`` realizes

    (U_(a,h) f)(x) = beta(h)^(-1/2) exp(-2 pi i <phi(x), a>) f(h^{-1}.x)

as a closure composition: no grid resampling is ever involved, so the
homomorphism identities hold to floating-point accuracy and all quadrature
error is confined to inner products.
"""

from __future__ import annotations

import numpy as np

from .core import GroupElement, SemidirectSystem, compose
from .errors import CoverageError, PreconditionError
from .fields import Field, from_callable
from .quadrature import BoxRule, box_rule


def apply_rep(sys: SemidirectSystem, g: GroupElement, f: Field) -> Field:
    """Lazily transformed field; the input field is untouched."""
    a = np.asarray(g.a, dtype=float)
    hinv = sys.h_inverse(g.h)
    scale = float(sys.beta(g.h)) ** -0.5

    def fn(pts):
        pts = np.asarray(pts, dtype=float)
        phase = np.exp(-2j * np.pi * (sys.phi(pts) @ a))
        return scale * phase * f(sys.act_d(hinv, pts))

    support = None
    if f.support_hint is not None:
        lo, hi = f.support_hint
        corners = np.stack(
            np.meshgrid(*[(l, u) for l, u in zip(lo, hi)], indexing="ij"), axis=-1
        ).reshape(-1, sys.d)
        img = sys.act_d(g.h, corners)
        support = (img.min(axis=0), img.max(axis=0))
    return from_callable(fn, f.dim, support=support)


def homomorphism_residual(
    sys: SemidirectSystem,
    g1: GroupElement,
    g2: GroupElement,
    f: Field,
    probe_points: np.ndarray,
) -> float:
    """max over probes of |U_(g1 g2) f - U_g1 (U_g2 f)|."""
    pts = np.asarray(probe_points, dtype=float)
    if pts.size == 0:
        raise PreconditionError("probe_points must be nonempty")
    if not np.all(sys.domain_x(pts)):
        raise PreconditionError("probe points must lie inside the domain")
    lhs = apply_rep(sys, compose(sys, g1, g2), f)(pts)
    rhs = apply_rep(sys, g1, apply_rep(sys, g2, f))(pts)
    return float(np.max(np.abs(lhs - rhs)))


def _covers(rule: BoxRule, support) -> bool:
    if support is None:
        return True
    lo, hi = support
    for r, l, u in zip(rule.rules, lo, hi):
        if r.desc.get("lo", -np.inf) > l or r.desc.get("hi", np.inf) < u:
            return False
    return True


def unitarity_residual(
    sys: SemidirectSystem, g: GroupElement, f: Field, quad: BoxRule
) -> float:
    """| ||U_g f||^2 - ||f||^2 | with both norms from the same rule."""
    uf = apply_rep(sys, g, f)
    for fld, name in ((f, "f"), (uf, "U_g f")):
        if not _covers(quad, fld.support_hint):
            raise CoverageError(f"quadrature box does not cover the support of {name}")
    pts, w = quad.points, quad.weights
    n1 = float(np.sum(w * np.abs(f(pts)) ** 2))
    n2 = float(np.sum(w * np.abs(uf(pts)) ** 2))
    return abs(n1 - n2)


def default_quad(sys: SemidirectSystem) -> BoxRule:
    """Documented d-dimensional inner-product rule (the symmetric norm box)."""
    spec = sys.defaults.get("x_box") or sys.defaults.get(
        "quad_box",
        {"lo": [-8.0] * sys.d, "hi": [8.0] * sys.d, "n": [256] * sys.d, "kind": "gauss"},
    )
    return box_rule(spec["lo"], spec["hi"], spec["n"], spec.get("kind", "gauss"))
