"""Supersymmetric partners of periodic potentials.

A nodeless ground state psi0 at energy E0 gives W = -psi0'/psi0 and the pair

    V-(x) = W^2 - W' + E0,    V+(x) = W^2 + W' + E0,

so V- reproduces the original potential and both share the band spectrum.
Everything is kept in closed form (JacobiExpr), so W' is exact.
"""

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .config import TOL
from .elliptic import jacobi, shift_triple
from .errors import DegenerateOutputError, NumericalError, PreconditionError
from .forms import JacobiExpr, as_expr
from .spectra.states import AnalyticState, count_nodes, period_class_of

VERDICT_SELF = "self-isospectral"
VERDICT_NOT = "not self-isospectral"
VERDICT_INCONCLUSIVE = "inconclusive"


def _grid(L, n, frac=0.1234567):
    return (np.arange(n) + frac) * (L / n)


@dataclass(frozen=True)
class Superpotential:
    """W = -psi0'/psi0 together with the ground state it came from."""

    expr: JacobiExpr = field(repr=False)
    source: str
    L: float
    ground_energy: float = 0.0
    ground: AnalyticState = field(default=None, repr=False, compare=False)

    def __call__(self, x):
        return self.expr(x)

    @property
    def m(self):
        return self.expr.m

    def derivative(self):
        return self.expr.derivative()

    def oddness_error(self, n=1000):
        x = _grid(self.L, n)
        w = self.expr(x)
        return float(np.max(np.abs(self.expr(-x) + w)))

    def mean_error(self, n=2048):
        # trapezoid on a periodic grid is spectrally accurate
        x = np.arange(n) * (self.L / n)
        return float(abs(np.sum(self.expr(x)) * (self.L / n)))


@dataclass(frozen=True)
class PartnerPair:
    v_minus: JacobiExpr = field(repr=False)
    v_plus: JacobiExpr = field(repr=False)
    w: Superpotential
    L: float

    def identity_error(self, n=1000):
        """max |V+ + V- - 2W^2 - 2E0| on a grid."""
        x = _grid(self.L, n)
        wv = self.w(x)
        lhs = self.v_plus(x) + self.v_minus(x)
        return float(np.max(np.abs(lhs - 2 * wv * wv - 2 * self.w.ground_energy)))

    def fd_error(self, n=500):
        """V+- against W^2 +- W' with W' from a five-point difference (h = 1e-5 L)."""
        x = _grid(self.L, n)
        h = 1e-5 * self.L
        f = self.w
        dw = (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h)
        w2 = f(x) ** 2 + self.w.ground_energy
        return float(max(np.max(np.abs(self.v_plus(x) - w2 - dw)),
                         np.max(np.abs(self.v_minus(x) - w2 + dw))))


def superpotential_from_ground(psi0: AnalyticState) -> Superpotential:
    """W = -psi0'/psi0 for a nodeless state.

    A nonzero ground energy E0 is carried along, so V- keeps the caller's
    energy frame.
    """
    if psi0.nodes != 0:
        raise PreconditionError(
            f"{psi0.provenance} has {psi0.nodes} nodes; W = -psi'/psi would be singular"
        )
    f = as_expr(psi0.wavefunction)
    w = -(f.derivative() / f)
    sp = Superpotential(w, psi0.provenance, psi0.period, float(psi0.energy), psi0)
    scale = max(1.0, float(np.max(np.abs(w(_grid(sp.L, 257))))))
    if sp.oddness_error() > TOL.superpotential * scale:
        raise NumericalError(f"W from {psi0.provenance} is not odd")
    if sp.mean_error() > TOL.zero_mean * scale * sp.L:
        raise NumericalError(f"W from {psi0.provenance} does not have zero mean")
    return sp


def partner_pair(w: Superpotential, L=None) -> PartnerPair:
    L = w.L if L is None else L
    w2 = w.expr * w.expr
    dw = w.expr.derivative()
    e0 = w.ground_energy
    return PartnerPair(w2 - dw + e0, w2 + dw + e0, w, L)


def map_state(w: Superpotential, state: AnalyticState, is_ground=False) -> AnalyticState:
    """The V+ state at the same energy: 1/psi0 for the ground state, else psi' + W psi."""
    f = as_expr(state.wavefunction)
    L = state.period
    x = _grid(L, 2000)
    if is_ground:
        out = 1.0 / f
        rule = "inverse"
    else:
        df = f.derivative()
        out = df + w.expr * f
        out = JacobiExpr(out.num.reduced(), out.den)
        scale = float(np.max(np.abs(df(x)) + np.abs(w(x) * f(x))))
        if float(np.max(np.abs(out(x)))) <= 1e-9 * scale:
            raise DegenerateOutputError(
                f"(d/dx + W) annihilates {state.provenance}; use the ground-state rule"
            )
        rule = "raising"
    out = out.scaled(1.0 / float(np.max(np.abs(out(x)))))
    v_plus = partner_pair(w, L).v_plus
    mapped = AnalyticState(
        energy=state.energy,
        wavefunction=out,
        period_class=period_class_of(out, L),
        nodes=0,
        provenance=f"{state.provenance}/partner-{rule}",
        potential=v_plus,
        period=L,
        form=state.form,
    )
    return replace(mapped, nodes=count_nodes(mapped))


def self_isospectral_deviation(pair: PartnerPair, n=2000) -> float:
    """max |V+(x) - V-(x - L/2)| on an n-point grid over one period."""
    L = pair.L
    x = _grid(L, n)
    return float(np.max(np.abs(pair.v_plus(x) - pair.v_minus(x - 0.5 * L))))


def self_isospectral_verdict(pair: PartnerPair, n=2000, refinements=2):
    """(deviation, verdict); the inconclusive band refines the grid x4 up to twice."""
    dev = self_isospectral_deviation(pair, n)
    for _ in range(refinements):
        if dev < TOL.self_iso or dev > TOL.not_self_iso:
            break
        n *= 4
        dev = self_isospectral_deviation(pair, n)
    if dev < TOL.self_iso:
        return dev, VERDICT_SELF
    if dev > TOL.not_self_iso:
        return dev, VERDICT_NOT
    return dev, VERDICT_INCONCLUSIVE


def analytic_shift_deviation(pair: PartnerPair, n=2000) -> float:
    """Same test as self_isospectral_deviation with the half-period shift done
    by the closed-form shift identities: compares V+ at the shifted triple
    with V- at the unshifted one."""
    m = pair.w.m
    K = pair.w.ground.potential.K if pair.w.ground is not None else None
    shift = "half_K" if K is not None and abs(pair.L - K) < 1e-12 * K else "K"
    x = _grid(pair.L, n)
    t = jacobi(x, m)
    ts = shift_triple(t, m, shift)
    return float(np.max(np.abs(pair.v_plus.evaluate(ts) - pair.v_minus.evaluate(t))))


def zero_mode_bounds(w: Superpotential, n=4096):
    """Max and min of exp(-int_0^x W) over one period; both zero modes
    exp(+-int W) are bounded iff these are finite and positive."""
    x = np.arange(n + 1) * (w.L / n)
    v = w(x)
    integral = np.concatenate([[0.0], np.cumsum(0.5 * (v[1:] + v[:-1]) * np.diff(x))])
    psi = np.exp(-integral)
    lo, hi = float(np.min(psi)), float(np.max(psi))
    if not (math.isfinite(lo) and math.isfinite(hi) and lo > 0):
        raise NumericalError("zero mode is unbounded")
    return lo, hi

