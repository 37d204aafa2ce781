"""Closed-form band-edge states and the checks applied to them."""

from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np

from ..config import TOL
from ..errors import DegenerateInputError, NumericalError


@dataclass(frozen=True)
class AnalyticState:
    """One band edge known in closed form.

    ``period`` is the interval L over which ``nodes`` are counted and against
    which ``period_class`` ("L" or "2L") is measured.
    """

    energy: float
    wavefunction: Callable
    period_class: str
    nodes: int
    provenance: str
    potential: Callable = field(repr=False, compare=False)
    period: float = 0.0
    form: Optional[str] = None

    def __call__(self, x):
        return self.wavefunction(x)

    def with_nodes(self, nodes):
        return replace(self, nodes=nodes)


def _sign_changes(v):
    s = np.sign(v)
    # exact zeros inherit the sign of the previous sample
    for i in np.flatnonzero(s == 0):
        s[i] = s[i - 1] if i > 0 else 1.0
    return np.flatnonzero(s[1:] * s[:-1] < 0)


def count_nodes(state, interval=None, n_grid=4096):
    """Strict sign changes of the wavefunction over one interval.

    The grid starts at an irrational offset so symmetry zeros (x = 0, K, ...)
    never fall on a sample. Near-zero local minima of |psi| are resampled
    to catch a pair of close crossings.
    """
    f = state.wavefunction if isinstance(state, AnalyticState) else state
    if interval is None:
        interval = state.period
    if interval <= 0:
        raise ValueError("interval must be positive")
    n_grid = max(int(n_grid), 4000)
    h = interval / n_grid
    x = (np.sqrt(2.0) - 1.0) * h + np.arange(n_grid + 1) * h
    v = np.asarray(f(x), dtype=float)
    scale = np.max(np.abs(v))
    if not np.isfinite(scale):
        raise NumericalError("wavefunction is not finite on the grid")
    if scale < 1e-300:
        raise DegenerateInputError("wavefunction vanishes identically")
    count = len(_sign_changes(v))
    a = np.abs(v)
    near = np.flatnonzero(
        (a[1:-1] <= a[:-2]) & (a[1:-1] <= a[2:]) & (a[1:-1] < 1e-6 * scale)
    ) + 1
    for i in near:
        if v[i - 1] * v[i + 1] < 0:
            continue  # already one crossing there
        xs = np.linspace(x[i - 1], x[i + 1], 513)
        count += len(_sign_changes(np.asarray(f(xs), dtype=float)))
    return count


def period_class_of(f, L, n=1000, tol=None):
    """'L' if f(x+L) = f(x), '2L' if f(x+L) = -f(x).

    Sharply peaked states at m near 1 lose a little accuracy in the shifted
    evaluation, so a relative mismatch up to 1e-6 is still accepted when the
    other class is ruled out by a wide margin.
    """
    tol = TOL.periodicity if tol is None else tol
    x = np.linspace(0.0, L, n, endpoint=False) + 0.123 * L / n
    a = np.asarray(f(x))
    b = np.asarray(f(x + L))
    scale = np.max(np.abs(a))
    err = {"L": np.max(np.abs(b - a)) / scale, "2L": np.max(np.abs(b + a)) / scale}
    best = min(err, key=err.get)
    other = err["2L" if best == "L" else "L"]
    if err[best] <= tol or (err[best] <= 1e-6 and other > 0.5):
        return best
    raise NumericalError(
        f"function is neither periodic nor antiperiodic in L (errors {err})"
    )


def schrodinger_residual(state, potential=None, n_points=1000, h=None):
    """max |-psi'' + (V - E) psi| / max |psi| on a grid over one period.

    psi'' from the fourth-order central difference with h = L/4096.
    """
    V = state.potential if potential is None else potential
    L = state.period
    h = L / 4096.0 if h is None else h
    x = np.linspace(0.0, L, n_points, endpoint=False)
    f = state.wavefunction
    p0 = f(x)
    d2 = (-f(x + 2 * h) + 16 * f(x + h) - 30 * p0 + 16 * f(x - h) - f(x - 2 * h)) / (12 * h * h)
    res = -d2 + (V(x) - state.energy) * p0
    return float(np.max(np.abs(res)) / np.max(np.abs(p0)))


_CLASS_ORDER = {"L": 0, "2L": 1}


def sort_states(states, tol=1e-9):
    """Sort by energy; near-equal energies are ordered by nodes, then period class."""
    out = sorted(states, key=lambda s: s.energy)
    changed = True
    while changed:
        changed = False
        for i in range(len(out) - 1):
            s, t = out[i], out[i + 1]
            if abs(s.energy - t.energy) <= tol * max(1.0, abs(s.energy)):
                if (t.nodes, _CLASS_ORDER[t.period_class]) < (s.nodes, _CLASS_ORDER[s.period_class]):
                    out[i], out[i + 1] = t, s
                    changed = True
    return out
