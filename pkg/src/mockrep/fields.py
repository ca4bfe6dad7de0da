"""Evaluable complex fields on R^d and the named test-field constructors.

A :class:`Field` is an immutable wrapper around a vectorized callable
``points (..., d) -> complex (...)``.  Fields may come from a closed form or
from samples on a regular grid with interpolation (values outside the grid
are zero).  Transformed fields are closure compositions, never resampled.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.interpolate import RegularGridInterpolator

from .errors import ParameterError, PreconditionError


@dataclass(frozen=True)
class Field:
    fn: Callable[[np.ndarray], np.ndarray]
    dim: int
    support_hint: Optional[tuple[np.ndarray, np.ndarray]] = None
    norm_hint: Optional[float] = None
    meta: dict | None = None

    def __call__(self, pts: np.ndarray) -> np.ndarray:
        pts = np.asarray(pts, dtype=float)
        if self.dim == 1 and (pts.ndim == 0 or pts.shape[-1] != 1):
            pts = pts.reshape(pts.shape + (1,)) if pts.ndim else pts.reshape(1, 1)
        vals = self.fn(pts)
        return np.asarray(vals, dtype=complex)

    def scaled(self, c: complex) -> "Field":
        meta = None
        if self.meta is not None:
            meta = {**self.meta, "amplitude": c * self.meta.get("amplitude", 1.0)}
        return Field(lambda p: c * self.fn(p), self.dim, self.support_hint, None, meta)

    def __add__(self, other: "Field") -> "Field":
        if other.dim != self.dim:
            raise ParameterError("field dimensions differ")
        return Field(lambda p: self.fn(p) + other.fn(p), self.dim)


def from_callable(fn, dim, support=None, norm=None, meta=None) -> Field:
    sup = None
    if support is not None:
        lo, hi = support
        sup = (np.atleast_1d(np.asarray(lo, float)), np.atleast_1d(np.asarray(hi, float)))
    return Field(fn, dim, sup, norm, meta)


def zero_field(dim: int) -> Field:
    return from_callable(lambda p: np.zeros(p.shape[:-1], dtype=complex), dim, norm=0.0,
                         meta={"name": "zero"})


def grid_field(axes: list[np.ndarray], values: np.ndarray, meta=None) -> Field:
    """Field from samples on a regular grid; linear interpolation, 0 outside."""
    re = RegularGridInterpolator(axes, values.real, bounds_error=False, fill_value=0.0)
    im = RegularGridInterpolator(axes, values.imag, bounds_error=False, fill_value=0.0)

    def fn(pts):
        return re(pts) + 1j * im(pts)

    lo = np.array([a[0] for a in axes])
    hi = np.array([a[-1] for a in axes])
    return Field(fn, len(axes), (lo, hi), None, meta)


# ---------------------------------------------------------------------------
# named constructors (used by configs, the CLI and the service)
# ---------------------------------------------------------------------------


def _gaussian(dim, center, width, modulation=None, amplitude=1.0):
    center = np.broadcast_to(np.atleast_1d(np.asarray(center, float)), (dim,))
    width = np.broadcast_to(np.atleast_1d(np.asarray(width, float)), (dim,))
    if modulation is not None:
        modulation = np.broadcast_to(np.atleast_1d(np.asarray(modulation, float)), (dim,))

    def fn(p):
        u = (p - center) / width
        out = amplitude * np.exp(-np.sum(u * u, axis=-1))
        if modulation is not None:
            out = out * np.exp(2j * np.pi * (p @ modulation))
        return out

    return from_callable(fn, dim, support=(center - 5 * width, center + 5 * width),
                         meta={"name": "gaussian"})


def _gaussian_angular(dim, modes, radial_width=1.0, coeffs=None):
    """2-d Gaussian envelope carrying the requested angular modes."""
    modes = list(modes)
    coeffs = list(coeffs) if coeffs is not None else [1.0] * len(modes)

    def fn(p):
        x1, x2 = p[..., 0], p[..., 1]
        r2 = x1 * x1 + x2 * x2
        theta = np.arctan2(x2, x1)
        env = np.exp(-r2 / radial_width**2)
        ang = np.zeros(p.shape[:-1], dtype=complex)
        for m, c in zip(modes, coeffs):
            ang = ang + c * (np.sqrt(r2) ** abs(m)) * np.exp(1j * m * theta)
        return env * ang

    return from_callable(fn, dim, support=(np.full(2, -10.0), np.full(2, 10.0)),
                         meta={"name": "gaussian_angular", "modes": modes})


def _smooth_bump(dim, center, width):
    """C^inf bump supported on the box |x_i - c_i| < w_i/2."""
    center = np.broadcast_to(np.atleast_1d(np.asarray(center, float)), (dim,))
    width = np.broadcast_to(np.atleast_1d(np.asarray(width, float)), (dim,))

    def fn(p):
        u = 2.0 * (p - center) / width
        inside = np.all(np.abs(u) < 1.0, axis=-1)
        out = np.zeros(p.shape[:-1])
        if np.any(inside):
            ui = u[inside]
            out[inside] = np.exp(np.sum(-1.0 / (1.0 - ui * ui), axis=-1) + ui.shape[-1])
        return out.astype(complex)

    return from_callable(fn, dim, support=(center - width / 2, center + width / 2),
                         meta={"name": "bump"})


_BUILDERS = {
    "zero": lambda dim, **kw: zero_field(dim),
    "gaussian": lambda dim, center=0.0, width=1.0, modulation=None, amplitude=1.0, **kw:
        _gaussian(dim, center, width, modulation, amplitude),
    "gaussian_angular": lambda dim, modes=(0, 1, 2), radial_width=1.0, coeffs=None, **kw:
        _gaussian_angular(dim, modes, radial_width, coeffs),
    "bump": lambda dim, center=0.0, width=2.0, **kw: _smooth_bump(dim, center, width),
}

# aliases accepted on the CLI surface
FIELD_ALIASES = {"paper": "reference"}


def make_field(dim: int, spec: dict | str, system=None) -> Field:
    """Build a field from a ``{"name": ..., **params}`` spec.

    ``reference`` (alias ``paper``) and other system-specific names are
    resolved through the system's registered constructors.
    """
    if isinstance(spec, str):
        spec = {"name": spec}
    spec = dict(spec)
    name = spec.pop("name", None)
    if name is None:
        raise PreconditionError("field spec needs a 'name'")
    name = FIELD_ALIASES.get(name, name)
    if system is not None:
        builder = system.defaults.get("field_builders", {}).get(name)
        if builder is not None:
            return builder(**spec)
    if name not in _BUILDERS:
        raise ParameterError(f"unknown field constructor '{name}'")
    return _BUILDERS[name](dim, **spec)
