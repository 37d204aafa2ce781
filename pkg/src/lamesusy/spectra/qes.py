"""Quasi-exact solvability of the associated Lame equation.

With psi = dn^(-b) y and sn = sin t, y(t) solves Ince's equation

    (1 - m sin^2 t) z'' + (2b - 1) m sin t cos t z' + [lam - C m sin^2 t] z = 0,
    C = (a + 1 - b)(a + b),  E = lam + m b^2.

Writing Lz for the operator part, on Fourier modes

    L cos(kt) = d_k cos(kt) + u_k cos((k+2)t) + l_k cos((k-2)t)

(same for sin) with d_k = -k^2 (1 - m/2) - C m/2,
u_k = m/4 (C - k^2 + (2b-1) k), l_k = m/4 (C - k^2 - (2b-1) k).
When a + b + 1 = n the coefficient u_(n-1) vanishes, so the modes
k = n-1, n-3, ... form a closed n-dimensional block: a three-term recursion.
"""

import math
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from ..elliptic import check_modulus, ellipK
from ..errors import DomainError, NumericalError
from ..forms import JacobiExpr, JacobiPoly, trig_multiple
from ..potential import PotentialSpec
from .states import AnalyticState, count_nodes, period_class_of, sort_states


@dataclass(frozen=True)
class QesBlock:
    a: float
    b: float
    n: int
    m: float
    matrix: np.ndarray            # -L on the basis below, block diagonal
    basis: Tuple[Tuple[str, int], ...]   # ("cos", k) / ("sin", k)
    eigenvalues: Tuple[float, ...]        # lam, ascending

    @property
    def energies(self):
        return tuple(lam + self.m * self.b**2 for lam in self.eigenvalues)


def _coefficients(a, b, m, k):
    C = (a + 1 - b) * (a + b)
    d = -k * k * (1 - m / 2) - C * m / 2
    u = m / 4 * (C - k * k + (2 * b - 1) * k)
    l = m / 4 * (C - k * k - (2 * b - 1) * k)
    return d, u, l


def _block(a, b, m, kind, ks):
    idx = {k: i for i, k in enumerate(ks)}
    M = np.zeros((len(ks), len(ks)))
    for k in ks:
        d, u, l = _coefficients(a, b, m, k)
        j = idx[k]
        M[j, j] += d
        if k + 2 in idx:
            M[idx[k + 2], j] += u
        if kind == "cos":
            if abs(k - 2) in idx:
                M[idx[abs(k - 2)], j] += l
        else:
            if k - 2 > 0:
                M[idx[k - 2], j] += l
            elif k - 2 < 0:
                M[idx[2 - k], j] -= l
    return -M


def qes_block(a, b, m):
    """The truncated recursion for a + b + 1 = n and its eigenvalues lam."""
    m = check_modulus(m)
    nf = a + b + 1
    n = int(round(nf))
    if n < 1 or abs(nf - n) > 1e-9:
        raise DomainError(f"a + b + 1 = {nf} is not a positive integer")
    top = n - 1
    cos_ks = list(range(top % 2, top + 1, 2))
    sin_ks = [k for k in cos_ks if k > 0]
    _, u_top, _ = _coefficients(a, b, m, top)
    assert abs(u_top) < 1e-9 * (1 + abs(a) + abs(b)) ** 2
    Mc = _block(a, b, m, "cos", cos_ks)
    Ms = _block(a, b, m, "sin", sin_ks)
    M = np.zeros((n, n))
    M[: len(cos_ks), : len(cos_ks)] = Mc
    M[len(cos_ks):, len(cos_ks):] = Ms
    ev = np.linalg.eigvals(M)
    if np.max(np.abs(ev.imag), initial=0.0) > 1e-9 * max(1.0, np.max(np.abs(ev))):
        raise NumericalError(f"complex QES eigenvalues {ev}")
    basis = tuple([("cos", k) for k in cos_ks] + [("sin", k) for k in sin_ks])
    return QesBlock(a, b, n, m, M, basis, tuple(sorted(ev.real)))


def qes_states(a, n, m, L=None):
    """All n closed-form states on parabola P_n, from the block eigenvectors."""
    b = n - 1 - a
    blk = qes_block(a, b, m)
    ncos = sum(1 for kind, _ in blk.basis if kind == "cos")
    spec = PotentialSpec(float(a), float(b) if b >= -0.5 else float(a - n), m)
    L = 2 * ellipK(m) if L is None else L
    prefactor = JacobiPoly.monomial(m, dn=-b)
    trig = {k: trig_multiple(m, k) for _, k in blk.basis}
    states = []
    for kind, sl in (("cos", slice(0, ncos)), ("sin", slice(ncos, blk.n))):
        sub = blk.matrix[sl, sl]
        if sub.size == 0:
            continue
        ev, vecs = np.linalg.eig(sub)
        for j in range(len(ev)):
            lam = ev[j].real
            v = vecs[:, j].real
            y = JacobiPoly(m)
            for coef, (_, k) in zip(v, blk.basis[sl]):
                c, s = trig[k]
                y = y + (c if kind == "cos" else s) * coef
            wf = JacobiExpr(prefactor * y)
            st = AnalyticState(
                energy=lam + m * b * b,
                wavefunction=wf,
                period_class=period_class_of(wf, L),
                nodes=0,
                provenance=f"qes/n={n}/{kind}/{j}",
                potential=spec,
                period=L,
            )
            states.append(st.with_nodes(count_nodes(st)))
    return sort_states(states)


# -- the sn^2 power ansatz y = A + B sn^2 + D sn^4 with b = 4 - a ---------------

def ansatz_matrix(a, m, b=None, degree=2):
    """N with (lam I + N) c = 0 for y = sum_i c_i sn^(2i) substituted into
    the Hermite-elliptic form of the equation."""
    b = (4 - a) if b is None else b
    C = (a + 1 - b) * (a + b)
    J = degree
    N = np.zeros((J + 1, J + 1))
    for i in range(J + 1):
        if i + 1 <= J:
            N[i, i + 1] = 2 * (i + 1) * (2 * i + 1)
        N[i, i] = -4 * i * i * (1 + m) + 4 * i * b * m
        if i >= 1:
            N[i, i - 1] = m * (2 * (i - 1) * (2 * i - 1) - 4 * (i - 1) * b - C)
    return N


def cubic_coefficients(a, m):
    """Monic cubic in lam for the three sn^2-polynomial states at n = 5."""
    return (
        1.0,
        28 * m - 20 - 12 * a * m,
        64 - 304 * m + 160 * m * a + 32 * m * m * (a - 2) * (a - 3),
        -64 * m * (2 * a - 3) * (2 - 2 * m + m * a),
    )


def cubic_lambda(a, m) -> List[float]:
    """Three real roots of the cubic, ascending (trigonometric method)."""
    m = check_modulus(m)
    _, c2, c1, c0 = cubic_coefficients(a, m)
    p = c1 - c2 * c2 / 3
    q = 2 * c2**3 / 27 - c2 * c1 / 3 + c0
    scale = 1.0 + abs(c2) + abs(c1) ** 0.5 + abs(c0) ** (1 / 3)
    if p < 0:
        r = 2 * math.sqrt(-p / 3)
        arg = 3 * q / (p * r)
        if abs(arg) <= 1 + 1e-12:
            th = math.acos(max(-1.0, min(1.0, arg))) / 3
            roots = sorted(r * math.cos(th - 2 * math.pi * k / 3) - c2 / 3 for k in range(3))
            return roots
    roots = np.roots([1.0, c2, c1, c0])
    if np.max(np.abs(roots.imag)) > 1e-9 * scale:
        raise NumericalError(f"cubic has complex roots {roots} (a={a}, m={m})")
    roots = sorted(roots.real)
    for lam in roots:
        if abs(np.polyval([1.0, c2, c1, c0], lam)) > 1e-9 * scale**3:
            raise NumericalError("cubic root residual too large")
    return roots


def cubic_ansatz_vector(a, m, lam):
    """(A, B, D) solving the ansatz system at a root lam, scaled so A = 1 when possible."""
    T = ansatz_matrix(a, m) + lam * np.eye(3)
    _, _, vt = np.linalg.svd(T)
    v = vt[-1]
    if abs(v[0]) > 1e-8:
        v = v / v[0]
    return v
