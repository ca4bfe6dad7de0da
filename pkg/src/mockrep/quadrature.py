"""One-dimensional quadrature rules and tensor grids.

Conventions used throughout the package:

* every rule integrates against the *Lebesgue* measure of its coordinate,
  i.e. ``sum(w * f(x))`` approximates ``int f(x) dx``.  Group-theoretic
  weights (Haar densities, modular factors) are applied by the callers.
* multiplicative coordinates use log-spaced nodes; the Jacobian ``t`` of
  ``t = exp(u)`` is folded into the weights so the rule still targets ``dt``.
* periodic coordinates use the rectangle rule, which is spectrally accurate
  for smooth periodic integrands.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial.legendre import leggauss


@dataclass(frozen=True)
class Rule1D:
    """Nodes and weights for one coordinate, plus a description for reports."""

    nodes: np.ndarray
    weights: np.ndarray
    desc: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.nodes.shape != self.weights.shape or self.nodes.ndim != 1:
            raise ValueError("nodes and weights must be 1-d arrays of equal length")

    @property
    def n(self) -> int:
        return self.nodes.size

    def integrate(self, values: np.ndarray) -> complex:
        return np.sum(self.weights * values, axis=-1)


def gauss_legendre(lo: float, hi: float, n: int) -> Rule1D:
    if not hi > lo:
        raise ValueError(f"empty interval [{lo}, {hi}]")
    x, w = leggauss(int(n))
    mid, half = 0.5 * (hi + lo), 0.5 * (hi - lo)
    return Rule1D(mid + half * x, half * w,
                  {"kind": "gauss", "lo": lo, "hi": hi, "n": int(n)})


def trapezoid(lo: float, hi: float, n: int) -> Rule1D:
    """Uniform nodes including endpoints; spectral for smooth decaying integrands."""
    if not hi > lo:
        raise ValueError(f"empty interval [{lo}, {hi}]")
    x = np.linspace(lo, hi, int(n))
    h = x[1] - x[0]
    w = np.full(n, h)
    w[0] = w[-1] = 0.5 * h
    return Rule1D(x, w, {"kind": "uniform", "lo": lo, "hi": hi, "n": int(n)})


def periodic(n: int, period: float = 2.0 * np.pi, offset: float = 0.0) -> Rule1D:
    x = offset + period * np.arange(int(n)) / int(n)
    w = np.full(int(n), period / int(n))
    return Rule1D(x, w, {"kind": "periodic", "period": period, "n": int(n)})


def log_rule(lo: float, hi: float, n: int, kind: str = "uniform") -> Rule1D:
    """Rule for dt on [lo, hi] with 0 < lo < hi, log-spaced nodes."""
    if not 0 < lo < hi:
        raise ValueError("log rule needs 0 < lo < hi")
    if kind == "gauss":
        base = gauss_legendre(np.log(lo), np.log(hi), n)
    else:
        base = trapezoid(np.log(lo), np.log(hi), n)
    t = np.exp(base.nodes)
    return Rule1D(t, base.weights * t,
                  {"kind": f"log-{kind}", "lo": lo, "hi": hi, "n": int(n)})


def signed_log_rule(lo: float, hi: float, n: int, kind: str = "uniform") -> Rule1D:
    """Rule for dt on [-hi,-lo] u [lo,hi]; n nodes per sign."""
    pos = log_rule(lo, hi, n, kind)
    nodes = np.concatenate([-pos.nodes[::-1], pos.nodes])
    weights = np.concatenate([pos.weights[::-1], pos.weights])
    return Rule1D(nodes, weights,
                  {"kind": f"signed-log-{kind}", "lo": lo, "hi": hi, "n": int(n)})


def tensor_nodes(rules: list[Rule1D]) -> tuple[np.ndarray, np.ndarray]:
    """All node combinations of the factor rules.

    Returns ``(points, weights)`` with ``points`` of shape ``(N, k)`` ordered
    with the last factor varying fastest.
    """
    grids = np.meshgrid(*[r.nodes for r in rules], indexing="ij")
    wgrids = np.meshgrid(*[r.weights for r in rules], indexing="ij")
    pts = np.stack([g.reshape(-1) for g in grids], axis=-1)
    w = np.ones(pts.shape[0])
    for wg in wgrids:
        w = w * wg.reshape(-1)
    return pts, w


@dataclass(frozen=True)
class BoxRule:
    """Tensor Gauss-Legendre rule over an axis-aligned box in R^k."""

    rules: tuple[Rule1D, ...]

    @property
    def dim(self) -> int:
        return len(self.rules)

    @property
    def points(self) -> np.ndarray:
        return tensor_nodes(list(self.rules))[0]

    @property
    def weights(self) -> np.ndarray:
        return tensor_nodes(list(self.rules))[1]

    def integrate(self, fn) -> complex:
        pts, w = tensor_nodes(list(self.rules))
        return np.sum(w * fn(pts))

    def desc(self) -> dict:
        return {"axes": [r.desc for r in self.rules]}


def box_rule(lo, hi, n, kind: str = "gauss") -> BoxRule:
    lo = np.atleast_1d(np.asarray(lo, dtype=float))
    hi = np.atleast_1d(np.asarray(hi, dtype=float))
    n = np.broadcast_to(np.atleast_1d(n), lo.shape)
    maker = gauss_legendre if kind == "gauss" else trapezoid
    return BoxRule(tuple(maker(a, b, m) for a, b, m in zip(lo, hi, n)))


def map_affine(rule: Rule1D, scale: float, shift: float) -> Rule1D:
    """Image rule under x -> scale*x + shift (still a Lebesgue rule)."""
    return Rule1D(scale * rule.nodes + shift, abs(scale) * rule.weights,
                  {"kind": "affine-image", "base": rule.desc})
