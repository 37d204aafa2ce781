"""Floquet discriminant of Hill's equation -y'' + V y = E y and numerical band edges.

For each energy the two fundamental solutions (y1, y1') = (1, 0) and
(y2, y2') = (0, 1) are carried over one period L together with their
E-derivatives z = dy/dE (z'' = (V - E) z - y), which give dD/dE exactly, and
the Pruefer angle of y2 (theta' = cos^2 theta + (E - V) sin^2 theta), whose
final value counts the zeros of y2 in (0, L).

The zero count turns the edge search into a counting problem.  With Z(E)
Dirichlet eigenvalues below E,

* inside a band (|D| <= 2): 2 Z + 1 edges lie below E;
* inside gap n (|D| > 2): 2 n edges lie below E, where n has the parity of
  the gap (D > 2: even, D < -2: odd) and Z is n - 1 or n.

Every energy cell therefore knows how many edges it holds, and cells are
split until each edge is isolated by a sign change of D -+ 2 or shows up as
a tangency (closed gap).
"""

import math
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
from scipy.integrate import solve_ivp

from .config import TOL
from .errors import MissedEdgeError, NumericalError, StructuralMismatchError

_NVAR = 9


@dataclass(frozen=True)
class Discriminant:
    energy: float
    value: float
    derivative: float = float("nan")
    wronskian_error: float = 0.0
    zeros: int = 0


@dataclass(frozen=True)
class BandEdge:
    energy: float
    edge_type: str            # "D=+2" (period L) or "D=-2" (period 2L)
    index: int
    residual: float = 0.0     # |D(E) -+ 2|
    derivative: float = 0.0   # dD/dE at the edge
    tangent: bool = False     # closed gap: |dD/dE| below the tangency threshold
    nodes: Optional[int] = None

    @property
    def sign(self):
        return 1 if self.edge_type == "D=+2" else -1


@dataclass(frozen=True)
class BandStructure:
    edges: List[BandEdge]
    L: float
    e_floor: float
    e_max: float

    @property
    def energies(self):
        return [e.energy for e in self.edges]

    @property
    def gaps(self):
        """Delta_n = E_2n - E_(2n-1) for every complete gap below e_max."""
        E = self.energies
        return [E[2 * n] - E[2 * n - 1] for n in range(1, (len(E) + 1) // 2) if 2 * n < len(E)]


def _as_scalar_potential(V):
    def f(x):
        return float(V(x))
    return f


def _grid_values(V, x):
    try:
        v = np.asarray(V(x), dtype=float)
        if v.shape == x.shape:
            return v
    except (TypeError, ValueError):
        pass
    return np.array([float(V(t)) for t in x])


def _rhs_factory(V, E):
    Vs = _as_scalar_potential(V)

    def rhs(x, Y):
        y1, y1p, y2, y2p, z1, z1p, z2, z2p, th = Y.reshape(_NVAR, -1)
        q = Vs(x) - E
        c, s = np.cos(th), np.sin(th)
        return np.concatenate(
            (y1p, q * y1, y2p, q * y2, z1p, q * z1 - y1, z2p, q * z2 - y2, c * c - q * s * s)
        )

    return rhs


def _initial(n):
    Y0 = np.zeros((_NVAR, n))
    Y0[0] = 1.0
    Y0[3] = 1.0
    return Y0.ravel()


def _integrate(V, L, energies, t_eval=None):
    E = np.atleast_1d(np.asarray(energies, dtype=float))
    sol = solve_ivp(
        _rhs_factory(V, E), (0.0, L), _initial(E.size), method="DOP853",
        rtol=TOL.ode_rtol, atol=TOL.ode_atol, t_eval=t_eval,
    )
    if sol.status != 0:
        where = sol.t[-1] if sol.t.size else 0.0
        raise NumericalError(f"integration failed at x = {where:.6g}: {sol.message}")
    return E, sol


def _shoot(V, L, energies):
    """(D, dD/dE, zero count of y2, relative Wronskian error) for each energy."""
    E, sol = _integrate(V, L, energies)
    y1, y1p, y2, y2p, z1, z1p, z2, z2p, th = sol.y[:, -1].reshape(_NVAR, -1)
    D = y1 + y2p
    dD = z1 + z2p
    wr = y1 * y2p - y1p * y2
    wr_err = np.abs(wr - 1.0) / np.maximum(1.0, np.abs(y1 * y2p) + np.abs(y1p * y2))
    if np.any(wr_err > 1e3 * TOL.wronskian):
        raise NumericalError(f"Wronskian drifted by {wr_err.max():.3g} over one period")
    Z = np.floor(th / math.pi).astype(int)
    return D, dD, Z, wr_err


def discriminant(V, L, E):
    """D(E) = y1(L) + y2'(L); an array of energies gives a list."""
    D, dD, Z, wr = _shoot(V, L, E)
    out = [Discriminant(float(e), float(d), float(g), float(w), int(z))
           for e, d, g, w, z in zip(np.atleast_1d(E), D, dD, wr, Z)]
    return out[0] if np.ndim(E) == 0 else out


def dispersion(V, L, E):
    """Bloch wave number k = arccos(D/2)/L in [0, pi/L], or None inside a gap."""
    def k_of(d):
        if abs(d) > 2.0:
            return None
        return math.acos(max(-1.0, min(1.0, d / 2.0))) / L

    D, _, _, _ = _shoot(V, L, E)
    ks = [k_of(float(d)) for d in D]
    return ks[0] if np.ndim(E) == 0 else ks


def _edges_below(D, Z):
    """Number of band edges below E from D(E) and the zero count Z(E)."""
    if abs(D) <= 2.0:
        return 2 * Z + 1
    parity = 0 if D > 2.0 else 1
    n = Z if Z % 2 == parity else Z + 1
    return 2 * n


@dataclass
class _Point:
    E: float
    D: float
    dD: float
    Z: int

    @property
    def count(self):
        return _edges_below(self.D, self.Z)


def _points(V, L, energies):
    D, dD, Z, _ = _shoot(V, L, energies)
    return [_Point(float(e), float(d), float(g), int(z)) for e, d, g, z in zip(energies, D, dD, Z)]


def _newton(V, L, brackets, tol):
    """Safeguarded Newton on D(E) - s = 0 for all brackets at once.

    Each bracket is (a, b, fa, fb, s) with fa * fb < 0.
    """
    br = [list(b) for b in brackets]
    x = np.array([0.5 * (b[0] + b[1]) for b in br])
    done = np.zeros(len(br), bool)
    for _ in range(100):
        idx = np.flatnonzero(~done)
        if idx.size == 0:
            break
        D, dD, _, _ = _shoot(V, L, x[idx])
        for j, i in enumerate(idx):
            a, b, fa, fb, s = br[i]
            f = D[j] - s
            if f == 0.0:
                done[i] = True
                continue
            if (f < 0) == (fa < 0):
                br[i][0], br[i][2] = x[i], f
            else:
                br[i][1], br[i][3] = x[i], f
            a, b = br[i][0], br[i][1]
            step = f / dD[j] if dD[j] != 0 else np.inf
            xn = x[i] - step
            if not (a < xn < b) or abs(step) > 0.5 * (b - a):
                xn = 0.5 * (a + b)
            if abs(xn - x[i]) <= tol * (1.0 + abs(x[i])) or (b - a) <= tol * (1.0 + abs(x[i])):
                done[i] = True
            x[i] = xn
    if not done.all():
        raise NumericalError("edge refinement did not converge")
    return x


def _extremum(V, L, a, b):
    """Zero of dD/dE between two points with opposite slopes (bisection)."""
    lo, hi = a, b
    for _ in range(200):
        mid = _points(V, L, [0.5 * (lo.E + hi.E)])[0]
        if (mid.dD < 0) == (lo.dD < 0):
            lo = mid
        else:
            hi = mid
        if hi.E - lo.E <= 1e-12 * (1.0 + abs(mid.E)):
            break
    return mid


def _floquet_nodes(V, L, E, sign, n_samples=4001):
    """Zeros per period of the (anti)periodic solution at an edge energy."""
    x = np.linspace(0.0, L, n_samples)
    _, sol = _integrate(V, L, [E], t_eval=x)
    y1, y1p, y2, y2p = sol.y[0], sol.y[1], sol.y[2], sol.y[3]
    a, b, c, d = y1[-1] - sign, y2[-1], y1p[-1], y2p[-1] - sign
    # null vector of M - sign*I, from whichever row is better conditioned
    v1 = np.array([b, -a])
    v2 = np.array([d, -c])
    cvec = v1 if np.hypot(*v1) >= np.hypot(*v2) else v2
    if np.hypot(*cvec) < 1e-14:
        cvec = np.array([1.0, 0.0])  # closed gap: every solution qualifies
    psi = cvec[0] * y1 + cvec[1] * y2
    # walk one period starting from the largest |psi|, continuing with psi(x+L) = sign psi(x)
    j = int(np.argmax(np.abs(psi[:-1])))
    seq = np.concatenate((psi[j:-1], sign * psi[:j + 1]))
    s = np.sign(seq)
    s = s[s != 0]
    return int(np.count_nonzero(s[1:] != s[:-1]))


def band_edges_numeric(V, L, e_max, e_floor=None, n_grid=401, check_nodes=True, max_depth=60):
    """All band edges of the period-L potential V between e_floor and e_max.

    e_floor defaults to min V - 1.  A higher floor restricts the search to a
    window; edge indices and node checks stay absolute because the zero count
    tells how many edges lie below the window.
    """
    default_floor = e_floor is None
    if default_floor:
        xs = np.linspace(0.0, L, 2001)
        e_floor = float(np.min(_grid_values(V, xs))) - 1.0
    if e_max <= e_floor:
        raise ValueError("e_max must lie above the energy floor")
    pts = _points(V, L, np.linspace(e_floor, e_max, n_grid))
    base = pts[0].count
    if default_floor and base != 0:
        raise NumericalError(f"energy floor {e_floor} is not below the spectrum")
    expected = pts[-1].count - base
    cells = [(p, q, 0) for p, q in zip(pts[:-1], pts[1:]) if q.count > p.count]
    brackets, closed, direct = [], [], []
    while cells:
        split = []
        for p, q, depth in cells:
            k = q.count - p.count
            changes = [s for s in (2.0, -2.0) if (p.D - s) * (q.D - s) < 0]
            if len(changes) == k:
                for s in changes:
                    brackets.append((p.E, q.E, p.D - s, q.D - s, s))
                continue
            if q.E - p.E <= 1e-14 * (1.0 + abs(p.E)):
                # D -+ 2 is at round-off level here; the cell itself is the edge
                s = 2.0 if p.D + q.D > 0 else -2.0
                direct += [(0.5 * (p.E + q.E), s, k > 1)] * k
                continue
            if depth >= max_depth:
                raise MissedEdgeError(f"could not isolate {k} edges", (p.E, q.E))
            if k - len(changes) == 2 and p.dD * q.dD < 0:
                star = _extremum(V, L, p, q)
                gap = abs(star.D) - 2.0
                if abs(gap) <= TOL.closed_gap:
                    closed.append(star)
                    for s in changes:
                        brackets.append((p.E, q.E, p.D - s, q.D - s, s))
                    continue
                if gap > 0:
                    split.append((p, star, depth + 1))
                    split.append((star, q, depth + 1))
                    continue
            split.append((p, None, depth + 1))
            split.append((None, q, depth + 1))
        # evaluate all pending midpoints in one integration
        pending = [i for i, c in enumerate(split) if c[0] is None or c[1] is None]
        need = {}
        for i in range(0, len(pending), 2):
            left, right = split[pending[i]], split[pending[i + 1]]
            need[i] = 0.5 * (left[0].E + right[1].E)
        if need:
            mids = _points(V, L, list(need.values()))
            for (i, _), mid in zip(need.items(), mids):
                li, ri = pending[i], pending[i + 1]
                split[li] = (split[li][0], mid, split[li][2])
                split[ri] = (mid, split[ri][1], split[ri][2])
        cells = [(p, q, d) for p, q, d in split if q.count > p.count]
    roots = list(_newton(V, L, brackets, 1e-13)) if brackets else []
    signs = [b[4] for b in brackets]
    found = [(float(r), s, False) for r, s in zip(roots, signs)] + direct
    for star in closed:
        s = 2.0 if star.D > 0 else -2.0
        found += [(star.E, s, True), (star.E, s, True)]
    found.sort(key=lambda t: t[0])
    if len(found) != expected:
        raise MissedEdgeError(f"found {len(found)} edges, expected {expected}", (e_floor, e_max))

    final = _shoot(V, L, [f[0] for f in found]) if found else (np.array([]),) * 4
    edges = []
    for i, ((E, s, is_closed), D, dD) in enumerate(zip(found, final[0], final[1]), start=base):
        tangent = is_closed or abs(dD) < TOL.tangency
        nodes = _floquet_nodes(V, L, E, 1.0 if s > 0 else -1.0) if check_nodes else None
        if check_nodes and nodes != (i + 1) // 2:
            lo = found[i - base - 1][0] if i > base else e_floor
            raise MissedEdgeError(
                f"edge {i} at E={E:.10g} has {nodes} nodes, expected {(i + 1) // 2}", (lo, E)
            )
        edges.append(BandEdge(E, "D=+2" if s > 0 else "D=-2", i, float(abs(D - s)), float(dD),
                              bool(tangent), nodes))
    return BandStructure(edges, L, e_floor, e_max)


def spectra_match(V1, V2, L, e_max, e_floor=None):
    """Largest difference between corresponding numerical edges of V1 and V2."""
    b1 = band_edges_numeric(V1, L, e_max, e_floor)
    b2 = band_edges_numeric(V2, L, e_max, e_floor)
    if len(b1.edges) != len(b2.edges):
        raise StructuralMismatchError(
            f"edge counts differ below e_max={e_max}: {len(b1.edges)} vs {len(b2.edges)}"
        )
    if not b1.edges:
        return 0.0
    return float(np.max(np.abs(np.array(b1.energies) - np.array(b2.energies))))
