"""Semidirect-product systems R^n x| H and their group-level operations.

A system bundles the two actions of H (the linear one on R^n and the
constant-Jacobian smooth one on R^d), the intertwining map ``phi`` between
them, and the measure-theoretic data (scaling character ``alpha``, action
Jacobian ``beta``, modular function of H, Haar density on the chart).

H is described by a single global parameter chart; every built-in system
admits one.  Chart-level callables follow these conventions:

* ``act_n(h, y)`` / ``act_d(h, x)``: one chart point ``h`` of shape ``(h_dim,)``,
  a batch of points ``y``/``x`` of shape ``(..., n)`` / ``(..., d)``;
* ``alpha``, ``beta``, ``delta_h``, ``haar_density``: batched over ``(..., h_dim)``;
* ``h_compose``, ``h_inverse``: batched elementwise on chart points.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import UnsupportedSystemError


@dataclass(frozen=True)
class FactorSpec:
    """Shape of one coordinate of the H chart.

    kind:
      * ``scale``        -- multiplicative R_+ (log-spaced grids)
      * ``signed_scale`` -- multiplicative R^* (two log-spaced branches)
      * ``line``         -- additive R (uniform grids)
      * ``angle``        -- circle coordinate with the given period
    """

    kind: str
    period: float | None = None

    def wrap(self, value):
        if self.kind == "angle":
            return np.mod(value, self.period)
        return value

    def distance(self, u, v):
        if self.kind == "angle":
            d = np.mod(u - v, self.period)
            return np.minimum(d, self.period - d)
        if self.kind in ("scale", "signed_scale"):
            return np.abs(np.log(np.abs(u)) - np.log(np.abs(v))) + 0.0 * np.abs(
                np.sign(u) - np.sign(v)
            ) + 1e3 * (np.sign(u) != np.sign(v))
        return np.abs(u - v)


@dataclass(frozen=True)
class StabilizerInfo:
    """Descriptor of the stabilizer of an orbit origin.

    ``kind`` is one of ``trivial``, ``compact``, ``noncompact``.  For a
    parametrized stabilizer, ``embed(s)`` maps the parameter to the H chart
    and ``ds_density`` is the density of the invariant measure fixed by the
    orbit disintegration identity; for a trivial stabilizer ``point_mass``
    plays that role.  ``volume`` is the total mass (``inf`` if noncompact).
    """

    kind: str
    volume: float
    point_mass: float | None = None
    param_range: tuple[float, float] | None = None
    periodic: bool = False
    embed: Optional[Callable[[np.ndarray], np.ndarray]] = None
    ds_density: Optional[Callable[[np.ndarray], np.ndarray]] = None


@dataclass(frozen=True)
class OrbitMetadata:
    """H-orbit structure of Y: labels, origins, sections and orbit measures.

    ``z_values`` lists the orbit labels (all built-ins have finitely many).
    ``tau_rule(z, resolution, radius)`` returns ``(nodes, weights)`` realizing
    the relatively invariant measure concentrated on the orbit of ``z``;
    ``lambda_weights`` are the masses of the label measure (counting measure
    on finite label sets, unit mass on singletons).
    """

    z_values: tuple
    orbit_label: Callable[[np.ndarray], object]
    origin: Callable[[object], np.ndarray]
    section_h: Callable[[np.ndarray], np.ndarray]
    stabilizer: Callable[[object], StabilizerInfo]
    tau_rule: Callable[[object, int, float], tuple[np.ndarray, np.ndarray]]
    lambda_weights: dict


@dataclass(frozen=True)
class SemidirectSystem:
    """Full specification of a system R^n x| H acting on R^d."""

    name: str
    n: int
    d: int
    h_dim: int
    h_factors: tuple[FactorSpec, ...]
    act_n: Callable
    act_d: Callable
    alpha: Callable
    beta: Callable
    delta_h: Callable
    haar_density: Callable
    h_compose: Callable
    h_inverse: Callable
    h_identity: np.ndarray
    phi: Callable
    jphi: Callable
    domain_x: Callable
    orbit_meta: OrbitMetadata | None = None
    fiber_factory: Callable | None = None
    # analytic structure flags used by the classification and dilation logic
    phi_homogeneous_degree: float | None = None
    linear_action_d: bool = False
    known_admissible_vector: bool = False
    # per-example documented defaults (truncations, resolutions, test fields)
    defaults: dict = field(default_factory=dict)
    params: dict = field(default_factory=dict)

    # -- chart helpers ----------------------------------------------------

    def wrap_h(self, h):
        h = np.asarray(h, dtype=float)
        out = h.copy()
        for i, f in enumerate(self.h_factors):
            out[..., i] = f.wrap(h[..., i])
        return out

    def h_distance(self, h1, h2) -> float:
        h1 = np.asarray(h1, dtype=float)
        h2 = np.asarray(h2, dtype=float)
        return float(
            max(
                np.max(f.distance(h1[..., i], h2[..., i]))
                for i, f in enumerate(self.h_factors)
            )
        )

    def n_matrix(self, h) -> np.ndarray:
        """Matrix of y -> h[y] assembled column-wise on the standard basis."""
        cols = [self.act_n(h, np.eye(self.n)[i]) for i in range(self.n)]
        return np.stack(cols, axis=-1)

    def contragredient(self, h, a) -> np.ndarray:
        """The adjoint-inverse action on the normal factor.

        Defined by ``<result, y> = <a, h^{-1}[y]>``; realized as the transpose
        of the matrix of ``y -> h^{-1}[y]``.
        """
        hinv = self.h_inverse(h)
        m_inv = self.n_matrix(hinv)
        return np.asarray(a, dtype=float) @ m_inv  # == transpose(m_inv) @ a

    # -- measure data ------------------------------------------------------

    def haar_weight(self, h):
        """Density of the left Haar measure of G against da dh(chart Lebesgue)."""
        return self.haar_density(h) / self.alpha(h)

    def modular(self, h):
        """Modular function of G, Delta_H / alpha (independent of the a part)."""
        return self.delta_h(h) / self.alpha(h)

    def require_orbit_meta(self) -> OrbitMetadata:
        if self.orbit_meta is None:
            raise UnsupportedSystemError(
                f"system '{self.name}' carries no orbit/fiber structure"
            )
        return self.orbit_meta


@dataclass(frozen=True)
class GroupElement:
    """A point (a, h) of G = R^n x| H in chart coordinates."""

    a: np.ndarray
    h: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "a", np.atleast_1d(np.asarray(self.a, dtype=float)))
        object.__setattr__(self, "h", np.atleast_1d(np.asarray(self.h, dtype=float)))


def identity_element(sys: SemidirectSystem) -> GroupElement:
    return GroupElement(np.zeros(sys.n), np.asarray(sys.h_identity, dtype=float))


def compose(sys: SemidirectSystem, g1: GroupElement, g2: GroupElement) -> GroupElement:
    """Group law (a1 + h1^dagger[a2], h1 h2)."""
    a = g1.a + sys.contragredient(g1.h, g2.a)
    return GroupElement(a, sys.wrap_h(sys.h_compose(g1.h, g2.h)))


def inverse(sys: SemidirectSystem, g: GroupElement) -> GroupElement:
    """(- (h^{-1})^dagger[a], h^{-1})."""
    hinv = sys.h_inverse(g.h)
    return GroupElement(-sys.contragredient(hinv, g.a), sys.wrap_h(hinv))


def haar_weight(sys: SemidirectSystem, g: GroupElement) -> float:
    return float(sys.haar_weight(g.h))


def modular_g(sys: SemidirectSystem, g: GroupElement) -> float:
    return float(sys.modular(g.h))


def element_distance(sys: SemidirectSystem, g1: GroupElement, g2: GroupElement) -> float:
    da = float(np.max(np.abs(g1.a - g2.a))) if sys.n else 0.0
    return max(da, sys.h_distance(g1.h, g2.h))
