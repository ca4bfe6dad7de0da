import numpy as np
import pytest

from mockrep.core import GroupElement, compose, identity_element, inverse
from mockrep.errors import CoverageError
from mockrep.fields import from_callable, make_field
from mockrep.quadrature import box_rule
from mockrep.representation import (
    apply_rep,
    default_quad,
    homomorphism_residual,
    unitarity_residual,
)
from mockrep.validation import sample_h


def gaussian(dim, center=0.0, width=1.0):
    return make_field(dim, {"name": "gaussian", "center": center, "width": width})


def probe_points(sys, rng, count=64):
    lo, hi = sys.defaults.get("x_sample_box", ([-3.0] * sys.d, [3.0] * sys.d))
    pts = rng.uniform(np.asarray(lo), np.asarray(hi), (count, sys.d))
    ok = sys.domain_x(pts)
    return pts[ok]


def test_identity_acts_trivially(systems, rng):
    for sys in systems.values():
        f = gaussian(sys.d)
        uf = apply_rep(sys, identity_element(sys), f)
        pts = probe_points(sys, rng)
        assert np.max(np.abs(uf(pts) - f(pts))) == 0.0


def test_wavelet_closed_form(systems, rng):
    wv = systems["wavelet1d"]
    f = gaussian(1, 1.0, 0.7)
    b, a = 0.8, 2.3
    uf = apply_rep(wv, GroupElement([b], [a]), f)
    x = rng.uniform(-3, 3, (50, 1))
    expected = np.sqrt(a) * np.exp(-2j * np.pi * b * x[:, 0]) * f(a * x)
    assert np.max(np.abs(uf(x) - expected)) < 1e-14


def test_heisenberg_closed_form(systems, rng):
    hb = systems["heisenberg"]
    f = gaussian(1)
    q, p, t = 0.7, -1.2, 0.4
    uf = apply_rep(hb, GroupElement([p, t], [q]), f)
    x = rng.uniform(-3, 3, (50, 1))
    expected = np.exp(-2j * np.pi * (t - p * x[:, 0])) * f(x - q)
    assert np.max(np.abs(uf(x) - expected)) < 1e-14


def test_homomorphism_residuals(systems, rng):
    for sys in systems.values():
        f = gaussian(sys.d)
        pts = probe_points(sys, rng)
        e = identity_element(sys)
        assert homomorphism_residual(sys, e, e, f, pts) == 0.0
        worst = 0.0
        for _ in range(100):
            hs = sample_h(sys, rng, 2)
            g1 = GroupElement(rng.normal(size=sys.n), hs[0])
            g2 = GroupElement(rng.normal(size=sys.n), hs[1])
            worst = max(worst, homomorphism_residual(sys, g1, g2, f, pts))
        assert worst < 1e-10


def test_normal_factor_conjugation(systems, rng):
    """Conjugating a normal-factor translation by h gives the adjoint action."""
    for sys in systems.values():
        f = gaussian(sys.d)
        pts = probe_points(sys, rng)
        for _ in range(20):
            h = sample_h(sys, rng, 1)[0]
            a = rng.normal(size=sys.n)
            gh = GroupElement(np.zeros(sys.n), h)
            ga = GroupElement(a, sys.h_identity)
            lhs = apply_rep(sys, gh, apply_rep(sys, ga, apply_rep(sys, inverse(sys, gh), f)))
            rhs = apply_rep(sys, GroupElement(sys.contragredient(h, a), sys.h_identity), f)
            assert np.max(np.abs(lhs(pts) - rhs(pts))) < 1e-10


def test_unitarity(systems, rng):
    dr = systems["dilrot2d"]
    f = gaussian(2)
    quad = box_rule([-6.0, -6.0], [6.0, 6.0], [256, 256])
    e = identity_element(dr)
    assert unitarity_residual(dr, e, f, quad) == 0.0
    for _ in range(5):
        t = np.exp(rng.uniform(-0.7, 0.7))
        th = rng.uniform(0, 2 * np.pi)
        g = GroupElement([rng.normal()], [t, th])
        assert unitarity_residual(dr, g, f, quad) < 1e-6

    sh = systems["shearlet"]
    bump = make_field(2, {"name": "bump", "center": [1.0, 0.0], "width": [2.0, 2.0]})
    for _ in range(5):
        g = GroupElement(rng.normal(size=2),
                         [rng.uniform(-0.5, 0.5), np.exp(rng.uniform(-0.5, 0.5))])
        assert unitarity_residual(sh, g, bump, default_quad(sh)) < 1e-6


def test_unitarity_coverage_error(systems):
    dr = systems["dilrot2d"]
    f = gaussian(2)
    small = box_rule([-1.0, -1.0], [1.0, 1.0], [32, 32])
    with pytest.raises(CoverageError):
        unitarity_residual(dr, identity_element(dr), f, small)


def test_heisenberg_central_modulus_invariance(systems, rng):
    hb = systems["heisenberg"]
    f = gaussian(1)
    eta = gaussian(1, 0.4, 0.8)
    quad = default_quad(hb)
    pts, w = quad.points, quad.weights
    q, p = 0.5, -0.8
    vals = []
    for t in (0.0, 0.37, 2.9):
        u = apply_rep(hb, GroupElement([p, t], [q]), eta)
        vals.append(abs(np.sum(w * f(pts) * np.conj(u(pts)))))
    assert max(vals) - min(vals) <= 1e-12
