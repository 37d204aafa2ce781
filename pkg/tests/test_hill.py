"""Floquet discriminant and band-edge search against closed-form and
library oracles (free particle, Mathieu characteristic values, plane waves)."""

import math

import numpy as np
import pytest
from scipy import special

from lamesusy.errors import StructuralMismatchError
from lamesusy.hill import band_edges_numeric, discriminant, dispersion, spectra_match
from lamesusy.potential import PotentialSpec
from lamesusy.spectra import lame_states, named_states
from oracles import band_edges, lame_potential


def zero(x):
    return np.zeros_like(np.asarray(x, dtype=float))


def mathieu(q):
    # -y'' + 2q cos(2x) y = E y, period pi
    return lambda x: 2 * q * np.cos(2 * np.asarray(x, dtype=float))


def mathieu_edges(q, count):
    ev = [special.mathieu_a(r, q) for r in range(count)] + [special.mathieu_b(r, q) for r in range(1, count)]
    return np.sort(ev)[:count]


def test_free_particle_discriminant():
    L = 2.0
    E = np.array([0.3, 1.0, 2.5, 7.0])
    got = discriminant(zero, L, E)
    assert np.allclose([d.value for d in got], 2 * np.cos(np.sqrt(E) * L), atol=1e-9)
    # dD/dE = -L sin(sqrt(E) L)/sqrt(E)
    ref = -L * np.sin(np.sqrt(E) * L) / np.sqrt(E)
    assert np.allclose([d.derivative for d in got], ref, atol=1e-8)
    assert all(d.wronskian_error < 1e-9 for d in got)


def test_negative_energy_free_particle():
    d = discriminant(zero, 1.5, -2.0)
    assert d.value == pytest.approx(2 * math.cosh(math.sqrt(2.0) * 1.5), rel=1e-9)


def test_free_particle_edges():
    bs = band_edges_numeric(zero, math.pi, 10.0)
    assert bs.energies == pytest.approx([0, 1, 1, 4, 4, 9, 9], abs=1e-8)
    assert [e.nodes for e in bs.edges] == [0, 1, 1, 2, 2, 3, 3]
    assert [e.tangent for e in bs.edges] == [False] + [True] * 6
    assert bs.gaps == pytest.approx([0, 0, 0], abs=1e-8)


@pytest.mark.parametrize("q", [0.5, 2.0, 5.0])
def test_mathieu_edges(q):
    ref = mathieu_edges(q, 9)
    bs = band_edges_numeric(mathieu(q), math.pi, ref[-1] + 0.5)
    assert np.allclose(bs.energies[:9], ref, atol=1e-8)
    # edge types alternate in pairs, period L first
    assert [e.edge_type for e in bs.edges[:5]] == ["D=+2", "D=-2", "D=-2", "D=+2", "D=+2"]


def test_dispersion_in_bands_and_gaps():
    L = math.pi
    E = np.array([0.25, 2.0, 6.0])
    k = dispersion(zero, L, E)
    # free particle: cos(kL) = cos(sqrt(E) L), k folded into [0, pi/L]
    for e, kk in zip(E, k):
        ref = math.acos(math.cos(math.sqrt(e) * L)) / L
        assert kk == pytest.approx(ref, abs=1e-8)
    q = 2.0
    edges = mathieu_edges(q, 3)
    assert dispersion(mathieu(q), math.pi, 0.5 * (edges[0] + edges[1])) is not None
    assert dispersion(mathieu(q), math.pi, edges[0] - 1.0) is None


def test_dispersion_at_a_closed_gap_edge():
    # arccos is ill-conditioned at D = -2, so only ~1e-5 accuracy survives
    assert dispersion(zero, math.pi, 1.0) == pytest.approx(1.0, abs=1e-5)


@pytest.mark.parametrize("m", [0.3, 0.8])
def test_lame_edges_match_plane_waves(m):
    states = lame_states(3, m)
    V, L = states[0].potential, states[0].period
    bs = band_edges_numeric(V, L, states[-1].energy + 1.0)
    ref = band_edges(lame_potential(12, 0, m, V.offset), L, 7)
    assert np.allclose(bs.energies, ref, atol=1e-8)
    assert [e.nodes for e in bs.edges] == [s.nodes for s in states]


def test_window_keeps_absolute_indices():
    states = lame_states(2, 0.5)
    V, L = states[0].potential, states[0].period
    full = band_edges_numeric(V, L, 5.0)
    part = band_edges_numeric(V, L, 5.0, e_floor=1.0)
    assert [e.index for e in part.edges] == [e.index for e in full.edges if e.energy > 1.0]
    assert part.energies == pytest.approx([e for e in full.energies if e > 1.0], abs=1e-9)


def test_swapped_potential_has_the_same_edges():
    m = 0.5
    a = PotentialSpec.from_pq(6, 2, m)
    b = PotentialSpec.from_pq(2, 6, m)
    assert spectra_match(a, b, a.period, 9.0) < 1e-8


def test_62_has_two_untabulated_edges():
    states = named_states("6,2", 0.5)
    V, L = states[0].potential, states[0].period
    bs = band_edges_numeric(V, L, states[-1].energy + 0.5)
    assert len(bs.edges) == 7
    tab = [s.energy for s in states]
    extra = [e for e in bs.edges if min(abs(e.energy - t) for t in tab) > 1e-6]
    assert len(extra) == 2
    # a closed gap: one doubly degenerate level with two nodes, period L
    assert extra[0].energy == pytest.approx(extra[1].energy, abs=1e-7)
    assert {e.nodes for e in extra} == {2} and {e.edge_type for e in extra} == {"D=+2"}
    ref = band_edges(lame_potential(6, 2, 0.5, V.offset), L, 7)
    assert np.allclose(bs.energies, ref, atol=1e-8)


def test_spectra_match_detects_count_mismatch():
    with pytest.raises(StructuralMismatchError):
        # one edge (E = 0) against two (a0, b1 of Mathieu q = 1) below the cutoff
        spectra_match(zero, mathieu(1.0), math.pi, 0.75)


def test_bad_window():
    with pytest.raises(ValueError):
        band_edges_numeric(zero, 1.0, 1.0, e_floor=2.0)
