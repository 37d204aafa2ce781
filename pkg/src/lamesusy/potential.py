"""Associated Lame potentials V(x) = p m sn^2 + q m cn^2/dn^2 + offset."""

import math
from dataclasses import dataclass, replace
from typing import List, NamedTuple, Tuple

import numpy as np
from scipy.optimize import brentq

from .config import TOL
from .elliptic import check_modulus, ellipK, jacobi
from .errors import DomainError
from .forms import JacobiExpr, JacobiPoly


def strength_to_a(p):
    """Nonnegative root of a(a + 1) = p."""
    if p < -0.25:
        raise DomainError(f"strength {p} < -1/4 has no real a")
    return 0.5 * (-1.0 + math.sqrt(1.0 + 4.0 * p))


@dataclass(frozen=True)
class PotentialSpec:
    """An associated Lame potential with p = a(a+1), q = b(b+1).

    ``swapped`` records that the caller asked for (q, p) with q > p; the
    stored (a, b) is the canonical p >= q pair and evaluation is shifted by K
    so the object still represents the requested potential.
    """

    a: float
    b: float
    m: float
    offset: float = 0.0
    swapped: bool = False

    def __post_init__(self):
        check_modulus(self.m)

    @classmethod
    def from_ab(cls, a, b=0.0, m=0.5, offset=0.0, canonicalize=True):
        spec = cls(float(a), float(b), float(m), float(offset))
        if spec.p < 0 or spec.q < 0:
            raise DomainError(f"p={spec.p}, q={spec.q} must both be nonnegative")
        if canonicalize and spec.p < spec.q:
            return cls(spec.b, spec.a, spec.m, spec.offset, swapped=True)
        return spec

    @classmethod
    def from_pq(cls, p, q=0.0, m=0.5, offset=0.0, canonicalize=True):
        if p < 0 or q < 0:
            raise DomainError(f"p={p}, q={q} must both be nonnegative")
        return cls.from_ab(strength_to_a(p), strength_to_a(q), m, offset, canonicalize)

    @property
    def p(self):
        return self.a * (self.a + 1.0)

    @property
    def q(self):
        return self.b * (self.b + 1.0)

    @property
    def K(self):
        return ellipK(self.m)

    @property
    def period(self):
        return period(self)

    def shifted(self, offset):
        return replace(self, offset=offset)

    def expr(self):
        """V as a closed-form JacobiExpr in the caller's frame."""
        p, q = (self.q, self.p) if self.swapped else (self.p, self.q)
        m = self.m
        poly = JacobiPoly(m, {(2, 0, 0): p * m, (0, 2, -2): q * m, (0, 0, 0): self.offset})
        return JacobiExpr(poly)

    def __call__(self, x):
        return evaluate(self, x)


def evaluate(spec, x):
    sn, cn, dn = jacobi(x, spec.m)
    p, q = (spec.q, spec.p) if spec.swapped else (spec.p, spec.q)
    m = spec.m
    return p * m * sn * sn + q * m * cn * cn / (dn * dn) + spec.offset


def period(spec):
    """K(m) when p = q, else 2K(m).  The vanishing potential p = q = 0 keeps
    the Lame period 2K so that it is the a = 0 member of that family."""
    K = ellipK(spec.m)
    if spec.p == 0.0 and spec.q == 0.0:
        return 2.0 * K
    return K if abs(spec.p - spec.q) <= 1e-12 else 2.0 * K


class Extremum(NamedTuple):
    x: float
    value: float
    kind: str  # maximum | local_minimum | global_minimum | degenerate


def extrema(spec) -> List[Extremum]:
    """All stationary points of V in [0, 2K).

    V' = 2m sn cn [p dn^4 - q(1-m)] / dn^3 vanishes at sn = 0, cn = 0, and
    where dn^4 = (1-m) q / p when that lies in [(1-m)^2, 1].
    """
    m = spec.m
    p, q = spec.p, spec.q
    if p <= 0 and q <= 0:
        raise DomainError("extrema need p > 0 or q > 0")
    K = ellipK(m)
    xs = [0.0, K]
    if p > 0 and m > 0:
        target = (1.0 - m) * q / p
        lo, hi = (1.0 - m) ** 2, 1.0
        if lo - 1e-14 <= target <= hi + 1e-14:
            d2 = math.sqrt(min(max(target, lo), hi))
            if lo + 1e-14 < target < hi - 1e-14:
                x3 = brentq(lambda x: jacobi(x, m).dn ** 2 - d2, 0.0, K, xtol=1e-15)
                xs += [x3, 2.0 * K - x3]
    if spec.swapped:
        xs = [(x + K) % (2.0 * K) for x in xs]
    xs = sorted(xs)

    v2 = spec.expr().derivative().derivative()
    vals = [float(spec(x)) for x in xs]
    curv = [float(v2(x)) for x in xs]
    mins = [v for v, c in zip(vals, curv) if c > TOL.extremum]
    vmin = min(mins) if mins else None
    out = []
    for x, v, c in zip(xs, vals, curv):
        if abs(c) < TOL.extremum:
            kind = "degenerate"
        elif c < 0:
            kind = "maximum"
        elif vmin is not None and v <= vmin + 1e-12:
            kind = "global_minimum"
        else:
            kind = "local_minimum"
        out.append(Extremum(x, v, kind))
    return out


def on_parabola(p, q, n_max=5) -> List[Tuple[int, float]]:
    """Parabolas of solvability q = (a-n+1)(a-n), n = 1..n_max, through (p, q)."""
    if p < 0 or q < 0:
        raise DomainError("p and q must be nonnegative")
    a = strength_to_a(p)
    hits = []
    for n in range(1, n_max + 1):
        if abs((a - n + 1) * (a - n) - q) < TOL.parabola:
            hits.append((n, a))
    return hits


def parabola_points(n, a_values):
    """Points (p, q) of parabola P_n for the given a."""
    a = np.asarray(a_values, dtype=float)
    return a * (a + 1.0), (a - n + 1.0) * (a - n)
