"""Jacobi kernel against scipy, quadrature and an ODE integration of the
defining system sn' = cn dn, cn' = -sn dn, dn' = -m sn cn."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate, special

from lamesusy.elliptic import amplitude, ellipK, jacobi, jacobi_shift, shift_triple
from lamesusy.errors import DivergenceError, DomainError

rng = np.random.default_rng(20261016)


@pytest.mark.parametrize("m", [0.0, 1e-6, 0.1, 0.5, 0.9, 0.998, 0.999999])
def test_K_matches_quadrature(m):
    # cos^2 + (1-m) sin^2 avoids cancellation; the integrand peaks in a layer of width ~ sqrt(1 - m) below pi/2
    w = math.sqrt(1.0 - m)
    pts = [math.pi / 2 - c * w for c in (10, 1, 0.1) if c * w < 1]
    ref, _ = integrate.quad(lambda t: 1.0 / math.hypot(math.cos(t), w * math.sin(t)), 0, math.pi / 2,
                            points=pts or None, epsabs=1e-15, epsrel=1e-13, limit=400)
    assert ellipK(m) == pytest.approx(ref, rel=1e-13)
    assert ellipK(m) == pytest.approx(special.ellipk(m), rel=1e-13)


def test_K_limits():
    assert ellipK(0.0) == pytest.approx(math.pi / 2, abs=1e-15)
    # K ~ ln(4/k') as m -> 1
    m = 1 - 1e-12
    assert ellipK(m) == pytest.approx(math.log(4 / math.sqrt(1 - m)), rel=1e-10)


def test_domain():
    with pytest.raises(DivergenceError):
        ellipK(1.0)
    for bad in (-0.1, 1.5, float("nan")):
        with pytest.raises(DomainError):
            jacobi(0.3, bad)


def test_against_scipy_random():
    m = rng.uniform(0, 0.999, 200)
    x = rng.uniform(-40, 40, 200)
    for xi, mi in zip(x, m):
        sn, cn, dn = jacobi(xi, mi)
        ref = special.ellipj(xi, mi)
        assert np.allclose([sn, cn, dn], ref[:3], atol=5e-12)


def test_against_ode_oracle():
    m = 0.7
    sol = integrate.solve_ivp(lambda x, y: [y[1] * y[2], -y[0] * y[2], -m * y[0] * y[1]],
                              (0, 12.0), [0.0, 1.0, 1.0], rtol=1e-13, atol=1e-14,
                              dense_output=True, method="DOP853")
    x = np.linspace(0, 12.0, 301)
    sn, cn, dn = jacobi(x, m)
    assert np.max(np.abs(np.vstack([sn, cn, dn]) - sol.sol(x))) < 1e-10


def test_trig_and_hyperbolic_limits():
    x = np.linspace(-5, 5, 101)
    sn, cn, dn = jacobi(x, 0.0)
    assert np.allclose(sn, np.sin(x), atol=1e-15) and np.allclose(cn, np.cos(x), atol=1e-15)
    assert np.all(dn == 1.0)
    m = 1 - 1e-13
    sn, cn, dn = jacobi(x, m)
    assert np.allclose(sn, np.tanh(x), atol=1e-5)
    assert np.allclose(dn, 1 / np.cosh(x), atol=1e-5)


def test_scalar_in_scalar_out():
    t = jacobi(0.4, 0.3)
    assert all(isinstance(v, float) for v in t)
    t = jacobi(np.array([0.4, 0.5]), 0.3)
    assert all(v.shape == (2,) for v in t)


@settings(max_examples=200, deadline=None)
@given(x=st.floats(-200, 200), m=st.floats(0, 0.9999))
def test_pythagorean_identities(x, m):
    sn, cn, dn = jacobi(x, m)
    assert abs(sn * sn + cn * cn - 1) < 1e-12
    assert abs(dn * dn + m * sn * sn - 1) < 1e-12


@settings(max_examples=100, deadline=None)
@given(x=st.floats(-20, 20), m=st.floats(0, 0.99))
def test_derivatives_by_central_difference(x, m):
    h = 1e-5
    p, q = jacobi(x + h, m), jacobi(x - h, m)
    sn, cn, dn = jacobi(x, m)
    d = [(a - b) / (2 * h) for a, b in zip(p, q)]
    assert d[0] == pytest.approx(cn * dn, abs=1e-8)
    assert d[1] == pytest.approx(-sn * dn, abs=1e-8)
    assert d[2] == pytest.approx(-m * sn * cn, abs=1e-8)


@pytest.mark.parametrize("m", [0.0, 0.3, 0.8, 0.998])
def test_periodicity(m):
    K = ellipK(m)
    x = rng.uniform(-3, 3, 50)
    a, b = jacobi(x, m), jacobi(x + 4 * K, m)
    for u, v in zip(a, b):
        assert np.allclose(u, v, atol=1e-11)
    s2 = jacobi(x + 2 * K, m)
    assert np.allclose(s2.sn, -a.sn, atol=1e-11) and np.allclose(s2.dn, a.dn, atol=1e-11)


@pytest.mark.parametrize("shift,frac", [("half_K", 0.5), ("K", 1.0), ("two_K", 2.0)])
@pytest.mark.parametrize("m", [0.1, 0.5, 0.9, 0.998])
def test_shift_identities_against_direct_evaluation(shift, frac, m):
    K = ellipK(m)
    x = np.linspace(-2 * K, 2 * K, 97)
    got = jacobi_shift(x, m, shift)
    ref = special.ellipj(x + frac * K, m)
    for u, v in zip(got, ref[:3]):
        assert np.max(np.abs(u - v)) < 1e-10


def test_unknown_shift():
    with pytest.raises(DomainError):
        shift_triple(jacobi(0.1, 0.5), 0.5, "third_K")


def test_amplitude_matches_scipy_and_is_increasing():
    m = 0.6
    x = np.linspace(-10, 10, 401)
    am = amplitude(x, m)
    assert np.all(np.diff(am) > 0)
    assert np.allclose(am, special.ellipj(x, m)[3], atol=1e-11)
