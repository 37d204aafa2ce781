"""Jacobi elliptic functions sn, cn, dn and the complete integral K(m).

Both are computed from the arithmetic-geometric mean / descending Landen
sequence of the modulus, which stays at machine precision for m close to 1.
Arguments are folded into [-K, K) before the Landen recursion and the
half-period sign is restored afterwards.
"""

import math
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .errors import DivergenceError, DomainError

SHIFTS = ("half_K", "K", "two_K")


class JacobiTriple(NamedTuple):
    sn: object
    cn: object
    dn: object


def check_modulus(m):
    m = float(m)
    if not math.isfinite(m) or m < 0.0 or m > 1.0:
        raise DomainError(f"modulus m={m!r} outside [0, 1)")
    if m == 1.0:
        raise DivergenceError("K(m) diverges at m = 1")
    return m


@lru_cache(maxsize=256)
def _landen(m):
    """Return the AGM sequences (a_n, c_n) for modulus m."""
    a, b, c = 1.0, math.sqrt(1.0 - m), math.sqrt(m)
    aa, cc = [a], [c]
    while abs(c) > 1e-17 * a and len(aa) < 40:
        a, b, c = 0.5 * (a + b), math.sqrt(a * b), 0.5 * (a - b)
        aa.append(a)
        cc.append(c)
    return tuple(aa), tuple(cc)


def ellipK(m):
    """Complete elliptic integral of the first kind, the quarter period of sn."""
    m = check_modulus(m)
    aa, _ = _landen(m)
    return math.pi / (2.0 * aa[-1])


def _amplitude(y, m):
    aa, cc = _landen(m)
    n = len(aa) - 1
    phi = (2.0**n) * aa[n] * y
    if n == 0:
        return phi
    if np.ndim(phi) == 0:
        for k in range(n, 0, -1):
            phi = 0.5 * (phi + math.asin(cc[k] / aa[k] * math.sin(phi)))
        return phi
    for k in range(n, 0, -1):
        phi = 0.5 * (phi + np.arcsin(cc[k] / aa[k] * np.sin(phi)))
    return phi


def jacobi(x, m):
    """Return (sn, cn, dn) at x for modulus 0 <= m < 1.

    Scalars in give Python floats out; arrays in give arrays out.
    """
    m = check_modulus(m)
    K = ellipK(m)
    if np.ndim(x) == 0:
        x = float(x)
        n = math.floor((x + K) / (2.0 * K))
        phi = _amplitude(x - 2.0 * K * n, m)
        sign = -1.0 if n % 2 else 1.0
        sn = sign * math.sin(phi)
        cn = sign * math.cos(phi)
        dn = math.sqrt(1.0 - m * sn * sn)
        return JacobiTriple(sn, cn, dn)
    x = np.asarray(x, dtype=float)
    n = np.floor((x + K) / (2.0 * K))
    phi = _amplitude(x - 2.0 * K * n, m)
    sign = 1.0 - 2.0 * np.mod(n, 2.0)
    sn = sign * np.sin(phi)
    cn = sign * np.cos(phi)
    dn = np.sqrt(1.0 - m * sn * sn)
    return JacobiTriple(sn, cn, dn)


def amplitude(x, m):
    """Jacobi amplitude am(x), continuous and increasing in x."""
    m = check_modulus(m)
    K = ellipK(m)
    x = np.asarray(x, dtype=float)
    n = np.floor((x + K) / (2.0 * K))
    out = _amplitude(x - 2.0 * K * n, m) + math.pi * n
    return float(out) if out.ndim == 0 else out


def shift_triple(t, m, shift):
    """Apply a closed-form shift identity to an existing triple."""
    sn, cn, dn = t
    kp = math.sqrt(1.0 - m)
    if shift == "two_K":
        return JacobiTriple(-sn, -cn, dn)
    if shift == "K":
        return JacobiTriple(cn / dn, -kp * sn / dn, kp / dn)
    if shift == "half_K":
        den = dn * dn + kp
        r = math.sqrt(1.0 + kp)
        q = math.sqrt(kp)  # (1 - m)**(1/4)
        return JacobiTriple(
            r * (kp * sn + cn * dn) / den,
            r * q * (cn - sn * dn) / den,
            q * ((1.0 + kp) * dn - m * sn * cn) / den,
        )
    raise DomainError(f"unknown shift {shift!r}; expected one of {SHIFTS}")


def jacobi_shift(x, m, shift):
    """Triple at x + shift, built only from jacobi(x, m) and shift identities."""
    m = check_modulus(m)
    return shift_triple(jacobi(x, m), m, shift)
