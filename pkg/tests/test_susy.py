"""Superpotentials, partner pairs and self-isospectrality."""

import numpy as np
import pytest

from lamesusy.errors import DegenerateOutputError, PreconditionError
from lamesusy.spectra import lame_states, named_states, table3_states
from lamesusy.susy import (
    VERDICT_NOT, VERDICT_SELF, analytic_shift_deviation, map_state, partner_pair,
    self_isospectral_deviation, self_isospectral_verdict, superpotential_from_ground,
    zero_mode_bounds,
)
from oracles import band_edges, lame_potential

rng = np.random.default_rng(11)


def _pair(states):
    w = superpotential_from_ground(states[0])
    return partner_pair(w, states[0].period)


def _fd2(f, x, h=1e-3):
    return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)) / (12 * h * h)


CASES = [
    ("lame1", lambda m: lame_states(1, m)),
    ("lame2", lambda m: lame_states(2, m)),
    ("lame3", lambda m: lame_states(3, m)),
    ("6,2", lambda m: named_states("6,2", m)),
    ("2,2", lambda m: named_states("2,2", m)),
    ("6,6", lambda m: named_states("6,6", m)),
    ("63/4,3/4", lambda m: named_states("63/4,3/4", m)),
]


@pytest.mark.parametrize("name,make", CASES)
@pytest.mark.parametrize("m", [0.5, 0.9])
def test_v_minus_reproduces_the_potential(name, make, m):
    states = make(m)
    pair = _pair(states)
    spec = states[0].potential
    V = lame_potential(spec.p, spec.q, m, spec.offset)
    x = rng.uniform(0, pair.L, 200)
    assert np.max(np.abs(pair.v_minus(x) - V(x))) < 1e-8 * (1 + spec.p + spec.q)
    assert pair.identity_error() < 1e-8
    assert pair.fd_error() < 1e-6


@pytest.mark.parametrize("name,make", CASES)
def test_partner_spectra_coincide(name, make):
    m = 0.5
    states = make(m)
    pair = _pair(states)
    count = 2 * len(states) + 1
    lo = band_edges(pair.v_minus, pair.L, count)
    hi = band_edges(pair.v_plus, pair.L, count)
    assert np.allclose(lo, hi, atol=1e-7)
    assert lo[0] == pytest.approx(0.0, abs=1e-8)


def test_w_is_odd_with_zero_mean():
    w = superpotential_from_ground(named_states("6,6", 0.7)[0])
    assert w.oddness_error() < 1e-10
    assert w.mean_error() < 1e-10


def test_excited_state_is_rejected():
    with pytest.raises(PreconditionError):
        superpotential_from_ground(lame_states(2, 0.5)[1])


@pytest.mark.parametrize("m", [0.3, 0.8])
def test_lame1_and_22_are_self_isospectral(m):
    for states in (lame_states(1, m), named_states("2,2", m)):
        pair = _pair(states)
        dev, verdict = self_isospectral_verdict(pair)
        assert verdict == VERDICT_SELF and dev < 1e-8
        assert analytic_shift_deviation(pair) < 1e-8


@pytest.mark.parametrize("a", rng.uniform(0.6, 4.0, 3).round(6).tolist())
def test_first_parabola_family_is_self_isospectral(a):
    # (a(a+1), a(a-1)) with ground state dn^a
    pair = _pair(table3_states(a, 1, 0.6))
    assert self_isospectral_deviation(pair) < 1e-8
    assert analytic_shift_deviation(pair) < 1e-8


@pytest.mark.parametrize("name", ["lame2", "lame3", "6,6"])
def test_not_self_isospectral(name):
    pair = _pair(dict(CASES)[name](0.5))
    dev, verdict = self_isospectral_verdict(pair)
    assert verdict == VERDICT_NOT and dev > 1e-3


@pytest.mark.parametrize("name,make", CASES)
def test_mapped_states_solve_the_partner_equation(name, make):
    m = 0.5
    states = make(m)
    w = superpotential_from_ground(states[0])
    Vp = partner_pair(w, states[0].period).v_plus
    for i, s in enumerate(states):
        t = map_state(w, s, is_ground=(i == 0))
        x = (np.arange(300) + 0.5) * (t.period / 300)
        f = t.wavefunction
        r = -_fd2(f, x) + (Vp(x) - t.energy) * f(x)
        assert np.max(np.abs(r)) < 1e-6 * np.max(np.abs(f(x))), t.provenance
        assert t.energy == s.energy


def test_raising_rule_annihilates_the_ground_state():
    states = lame_states(2, 0.5)
    w = superpotential_from_ground(states[0])
    with pytest.raises(DegenerateOutputError):
        map_state(w, states[0])


def test_zero_modes_are_bounded():
    w = superpotential_from_ground(lame_states(3, 0.5)[0])
    lo, hi = zero_mode_bounds(w)
    assert 0 < lo <= 1.0 <= hi
    # exp(-int W) is psi0 / psi0(0)
    g = lame_states(3, 0.5)[0]
    x = np.linspace(0, g.period, 4097)
    ratio = g.wavefunction(x) / g.wavefunction(0.0)
    assert lo == pytest.approx(ratio.min(), rel=1e-5) and hi == pytest.approx(ratio.max(), rel=1e-5)
