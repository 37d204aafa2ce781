"""Numerical tolerances shared by every module."""

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    kernel: float = 1e-12          # Jacobi identities
    identity: float = 1e-10        # shift identities, periodicity
    derivative_fd: float = 1e-6    # finite-difference checks of sn', cn', dn'
    extremum: float = 1e-8         # V'(x) at reported extrema, |V''| degeneracy
    parabola: float = 1e-9
    residual: float = 1e-6         # Schrodinger residual, relative to max|psi|
    periodicity: float = 1e-8      # psi(x + L) = +-psi(x)
    superpotential: float = 1e-9   # oddness of W
    zero_mean: float = 1e-8
    pointwise: float = 1e-8        # V+- identities
    self_iso: float = 1e-8         # deviation below => self-isospectral
    not_self_iso: float = 1e-3     # deviation above => not self-isospectral
    ode_rtol: float = 1e-10
    ode_atol: float = 1e-12
    wronskian: float = 1e-9
    edge_bisection: float = 1e-9
    tangency: float = 1e-6         # |dD/dE| at a closed gap
    closed_gap: float = 1e-8       # ||D| - 2| at an extremum treated as touching
    edge_match: float = 1e-5
    qes: float = 1e-9


TOL = Tolerances()
