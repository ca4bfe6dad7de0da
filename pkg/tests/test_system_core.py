import time

import numpy as np
import pytest

from mockrep.builtin import build_example
from mockrep.core import (
    GroupElement,
    compose,
    element_distance,
    haar_weight,
    identity_element,
    inverse,
    modular_g,
)
from mockrep.errors import ParameterError, PreconditionError
from mockrep.validation import sample_h, validate_system

from conftest import SYSTEM_IDS


def test_contragredient_identity(systems):
    wv = systems["wavelet1d"]
    a = wv.contragredient(wv.h_identity, np.array([1.0]))
    assert np.allclose(a, [1.0])


def test_contragredient_shear_closed_form(systems):
    # h = (l, t) = (0, 4): the adjoint matrix is diag(t, t^gamma)
    sh = systems["shearlet"]
    out = sh.contragredient(np.array([0.0, 4.0]), np.array([1.0, 1.0]))
    assert np.allclose(out, [4.0, 2.0], atol=1e-13)


def test_contragredient_pairing(systems, rng):
    for sys in systems.values():
        h = sample_h(sys, rng, 1)[0]
        a = rng.normal(size=sys.n)
        hd = sys.contragredient(h, a)
        hinv = sys.h_inverse(h)
        for _ in range(100):
            y = rng.normal(size=sys.n)
            assert abs(hd @ y - a @ sys.act_n(hinv, y)) < 1e-12 * (1 + abs(a @ y))


def test_compose_with_identity(systems, rng):
    for sys in systems.values():
        g = GroupElement(rng.normal(size=sys.n), sample_h(sys, rng, 1)[0])
        e = identity_element(sys)
        assert element_distance(sys, compose(sys, g, e), g) < 1e-12
        assert element_distance(sys, compose(sys, e, g), g) < 1e-12


def test_shear_group_law_closed_form(systems, rng):
    sh = systems["shearlet"]
    gamma = sh.params["gamma"]
    for _ in range(20):
        a1, a2 = rng.normal(size=2), rng.normal(size=2)
        l1, t1 = rng.normal(), np.exp(rng.normal())
        l2, t2 = rng.normal(), np.exp(rng.normal())
        g = compose(sh, GroupElement(a1, [l1, t1]), GroupElement(a2, [l2, t2]))
        m = np.array([[t1, t1**gamma * l1], [0.0, t1**gamma]])
        assert np.allclose(g.a, a1 + m @ a2, atol=1e-12)
        assert np.allclose(g.h, [l1 + t1 ** (1 - gamma) * l2, t1 * t2], atol=1e-12)


def test_associativity(systems, rng):
    for sys in systems.values():
        worst = 0.0
        for _ in range(1000):
            gs = [GroupElement(rng.normal(size=sys.n), h)
                  for h in sample_h(sys, rng, 3)]
            lhs = compose(sys, compose(sys, gs[0], gs[1]), gs[2])
            rhs = compose(sys, gs[0], compose(sys, gs[1], gs[2]))
            worst = max(worst, element_distance(sys, lhs, rhs))
        assert worst < 1e-10


def test_inverse(systems, rng):
    for sys in systems.values():
        e = identity_element(sys)
        assert element_distance(sys, inverse(sys, e), e) < 1e-14
        for _ in range(50):
            g = GroupElement(rng.normal(size=sys.n), sample_h(sys, rng, 1)[0])
            assert element_distance(sys, compose(sys, g, inverse(sys, g)), e) < 1e-12


def test_inverse_dilrot_closed_form(systems):
    dr = systems["dilrot2d"]
    g = GroupElement([0.3], [2.0, 1.1])
    gi = inverse(dr, g)
    assert np.allclose(gi.a, [-4.0 * 0.3], atol=1e-14)
    assert np.allclose(gi.h, [0.5, (2 * np.pi - 1.1)], atol=1e-12)


def test_haar_weight(systems, rng):
    wv = systems["wavelet1d"]
    a0 = 2.5
    assert np.isclose(haar_weight(wv, GroupElement([0.0], [a0])), 1.0 / a0**2)
    dr = systems["dilrot2d"]
    t = 3.0
    assert np.isclose(haar_weight(dr, GroupElement([0.0], [t, 0.2])), t / (2 * np.pi))
    for sys in systems.values():
        for h in sample_h(sys, rng, 50):
            assert haar_weight(sys, GroupElement(np.zeros(sys.n), h)) > 0


def test_modular(systems, rng):
    dr = systems["dilrot2d"]
    assert np.isclose(modular_g(dr, identity_element(dr)), 1.0)
    assert np.isclose(modular_g(dr, GroupElement([0.1], [2.0, 0.3])), 4.0)
    for sys in systems.values():
        for _ in range(100):
            h1, h2 = sample_h(sys, rng, 2)
            g1 = GroupElement(np.zeros(sys.n), h1)
            g2 = GroupElement(np.zeros(sys.n), h2)
            g12 = compose(sys, g1, g2)
            assert abs(modular_g(sys, g12)
                       - modular_g(sys, g1) * modular_g(sys, g2)) < 1e-10 * (
                1 + modular_g(sys, g12))


def test_validate_all_builtins(systems):
    for sid, sys in systems.items():
        start = time.time()
        report = validate_system(sys, sample_budget=150, seed=5)
        assert report.passed, f"{sid}: {report.as_dict()}"
        assert time.time() - start < 10.0


def test_validate_corrupted_fails_intertwining():
    report = validate_system(build_example("dilrot2d_corrupted"),
                             sample_budget=100, seed=5)
    assert not report.passed
    failed = {c.name for c in report.checks if not c.passed}
    assert failed == {"intertwining"}


def test_validate_budget_error(systems):
    with pytest.raises(PreconditionError):
        validate_system(systems["wavelet1d"], sample_budget=0)


def test_unknown_system_and_bad_gamma():
    with pytest.raises(ParameterError):
        build_example("nope")
    with pytest.raises(ParameterError):
        build_example("shearlet", gamma=-1.0)
    sh = build_example("shearlet", gamma=1.0)
    assert sh.params["gamma"] == 1.0
    assert validate_system(sh, sample_budget=60, seed=2).passed
