"""Closed-form band edges: Lame a = 1, 2, 3, the general parabola rows, and
the four special associated Lame potentials.

Every table row is given as (energy, prefactor exponents (i, j, g), sn^2
polynomial coefficients, nodes, period class, form).  Wavefunctions are
prefactor * sum_k c_k sn^(2k) with prefactor sn^i cn^j dn^g.  The node count
and period class are recomputed from the wavefunction and must agree with the
transcribed values, which guards against transcription slips.
"""

import math
from fractions import Fraction

from ..elliptic import check_modulus, ellipK
from ..errors import DomainError, StructuralMismatchError
from ..forms import JacobiExpr, JacobiPoly
from ..potential import PotentialSpec
from .deltas import deltas
from .qes import cubic_ansatz_vector, cubic_lambda
from .states import AnalyticState, count_nodes, period_class_of, sort_states

NAMED = {
    (Fraction(6), Fraction(2)): "6,2",
    (Fraction(2), Fraction(2)): "2,2",
    (Fraction(6), Fraction(6)): "6,6",
    (Fraction(63, 4), Fraction(3, 4)): "63/4,3/4",
}


def _build(spec, L, rows, prefix, check=True):
    m = spec.m
    out = []
    for row in rows:
        energy, prefactor, coeffs, nodes, pclass, form, tag = row
        if isinstance(coeffs, JacobiPoly):
            poly = coeffs
        else:
            i, j, g = prefactor
            poly = JacobiPoly.sn2_poly(m, coeffs, sn=i, cn=j, dn=g)
        wf = JacobiExpr(poly)
        st = AnalyticState(
            energy=float(energy),
            wavefunction=wf,
            period_class=period_class_of(wf, L),
            nodes=0,
            provenance=f"{prefix}/{tag}",
            potential=spec,
            period=L,
            form=form,
        )
        st = st.with_nodes(count_nodes(st))
        if check and (st.nodes, st.period_class) != (nodes, pclass):
            raise StructuralMismatchError(
                f"{st.provenance}: computed nodes/class {st.nodes}/{st.period_class}, "
                f"expected {nodes}/{pclass}"
            )
        out.append(st)
    return sort_states(out)


def lame_states(a, m):
    """The 2a+1 band edges of m a(a+1) sn^2 shifted so the ground edge is 0."""
    m = check_modulus(m)
    if a not in (1, 2, 3):
        raise DomainError(f"Lame edge tables exist for a = 1, 2, 3, not {a}")
    a = int(a)
    L = 2 * ellipK(m)
    D = deltas(m)
    if a == 1:
        offset = -m
        rows = [
            (0.0, (0, 0, 1), [1.0], 0, "L", "dn*F0", "dn"),
            (1 - m, (0, 1, 0), [1.0], 1, "2L", "cn*F0", "cn"),
            (1.0, (1, 0, 0), [1.0], 1, "2L", "sn*F0", "sn"),
        ]
    elif a == 2:
        d = D.delta
        offset = -(2 + 2 * m - 2 * d)
        rows = [
            (0.0, (0, 0, 0), [1 + m + d, -3 * m], 0, "L", "F1", "ground"),
            (2 * d - 1 - m, (0, 1, 1), [1.0], 1, "2L", "cn*dn*F0", "cn-dn"),
            (2 * d - 1 + 2 * m, (1, 0, 1), [1.0], 1, "2L", "sn*dn*F0", "sn-dn"),
            (2 * d + 2 - m, (1, 1, 0), [1.0], 2, "L", "sn*cn*F0", "sn-cn"),
            (4 * d, (0, 0, 0), [1 + m - d, -3 * m], 2, "L", "F1", "top"),
        ]
    else:
        d1, d2, d3 = D.delta1, D.delta2, D.delta3
        offset = -(2 + 5 * m - 2 * d1)
        rows = [
            (0.0, (0, 0, 1), [1 + 2 * m + d1, -5 * m], 0, "L", "dn*F1", "dn/minus"),
            (3 - 3 * m + 2 * d1 - 2 * d2, (0, 1, 0), [2 + m + d2, -5 * m], 1, "2L", "cn*F1", "cn/minus"),
            (3 + 2 * d1 - 2 * d3, (1, 0, 0), [2 + 2 * m + d3, -5 * m], 1, "2L", "sn*F1", "sn/minus"),
            (2 - m + 2 * d1, (1, 1, 1), [1.0], 2, "L", "sn*cn*dn*F0", "sn-cn-dn"),
            (4 * d1, (0, 0, 1), [1 + 2 * m - d1, -5 * m], 2, "L", "dn*F1", "dn/plus"),
            (3 - 3 * m + 2 * d1 + 2 * d2, (0, 1, 0), [2 + m - d2, -5 * m], 3, "2L", "cn*F1", "cn/plus"),
            (3 + 2 * d1 + 2 * d3, (1, 0, 0), [2 + 2 * m - d3, -5 * m], 3, "2L", "sn*F1", "sn/plus"),
        ]
    spec = PotentialSpec(float(a), 0.0, m, offset)
    return _build(spec, L, rows, f"lame/a={a}")


def lame_energies(a, m):
    """Sorted closed-form edge energies of lame_states; valid on 0 <= m <= 1,
    so the m -> 1 limit can be read off at m = 1 itself."""
    m = float(m)
    if not 0.0 <= m <= 1.0:
        raise DomainError(f"m={m} outside [0, 1]")
    s = math.sqrt
    if a == 1:
        E = [0.0, 1 - m, 1.0]
    elif a == 2:
        d = s(1 - m + m * m)
        E = [0.0, 2 * d - 1 - m, 2 * d - 1 + 2 * m, 2 * d + 2 - m, 4 * d]
    elif a == 3:
        d1, d2, d3 = s(1 - m + 4 * m * m), s(4 - m + m * m), s(4 - 7 * m + 4 * m * m)
        E = [0.0, 3 - 3 * m + 2 * d1 - 2 * d2, 3 + 2 * d1 - 2 * d3, 2 - m + 2 * d1,
             4 * d1, 3 - 3 * m + 2 * d1 + 2 * d2, 3 + 2 * d1 + 2 * d3]
    else:
        raise DomainError(f"Lame edge tables exist for a = 1, 2, 3, not {a}")
    return sorted(E)


def parabola_spec(a, n, m, offset=0.0):
    """Potential (a(a+1), (a-n+1)(a-n)) with the signed b = n-1-a.

    The signed b gives the right q; inside n-1 < a < n the strength q is
    negative, which is allowed here but not physical.
    """
    b = n - 1 - a
    if b < -0.5:
        b = -1.0 - b
    return PotentialSpec(float(a), float(b), m, offset)


def _pair(base, d, c, k, tw, prefix, form, tag):
    """The two F1 rows [c -+ d, tw] at energies base -+ 2d.

    The branch constants multiply to k*tw, so the smaller one is rewritten as
    [1, other/k]; this stays finite where c -+ d and tw vanish together.
    """
    rows = []
    for sign, name in ((-1, "minus-branch"), (1, "plus-branch")):
        mine, other = c + sign * d, c - sign * d
        coeffs = [mine, tw] if abs(mine) >= abs(other) else [1.0, other / k]
        rows.append((base + 2 * sign * d, prefix, coeffs, None, None, form, tag + name))
    return rows


def table3_states(a, n, m):
    """The n closed-form edges on parabola P_n (raw energies, interval 2K)."""
    m = check_modulus(m)
    if n not in (1, 2, 3, 4, 5):
        raise DomainError(f"parabola index n={n} outside 1..5")
    if a * (a + 1) < 0:
        raise DomainError(f"a={a} gives a negative strength p")
    a = float(a)
    D = deltas(m, a)
    L = 2 * ellipK(m)
    g = a - (n - 1)  # dn exponent dn^(-b)
    tw = m * (2 * a - 1)
    rows = []
    if n == 1:
        rows.append((m * a * a, (0, 0, g), [1.0], None, None, "dn^a", "dn"))
    elif n == 2:
        rows += [
            (1 + m * (a - 1) ** 2, (0, 1, g), [1.0], None, None, "cn*F0", "cn"),
            (1 + m * a * a, (1, 0, g), [1.0], None, None, "sn*F0", "sn"),
        ]
    elif n == 3:
        d4 = D.delta4
        base = 2 + m * (a * a - 2 * a + 2)
        rows += _pair(base, d4, -1 + m - m * a, 1, tw, (0, 0, g), "F1", "")
        rows.append((4 + m * (a - 1) ** 2, (1, 1, g), [1.0], None, None, "sn*cn*F0", "sn-cn"))
    elif n == 4:
        d5, d6 = D.delta5, D.delta6
        rows += _pair(5 + m * (a * a - 4 * a + 5), d5, -2 + 2 * m - m * a, 1, tw, (0, 1, g), "cn*F1", "cn/")
        rows += _pair(5 + m * (a * a - 2 * a + 2), d6, -2 + m - m * a, 3, tw, (1, 0, g), "sn*F1", "sn/")
    else:
        d7 = D.delta7
        rows += _pair(10 + m * (a * a - 4 * a + 5), d7, -3 + 2 * m - m * a, 3, tw, (1, 1, g), "sn*cn*F1", "sn-cn/")
        for k, lam in enumerate(cubic_lambda(a, m)):
            coeffs = list(cubic_ansatz_vector(a, m, lam))
            rows.append((lam + m * (a - 4) ** 2, (0, 0, g), coeffs, None, None, "F2", f"cubic/root{k}"))
    spec = parabola_spec(a, n, m)
    return _build(spec, L, rows, f"table3/n={n}", check=False)


def _named_key(which):
    if isinstance(which, str):
        parts = which.replace("(", "").replace(")", "").split(",")
        if len(parts) != 2:
            raise DomainError(f"cannot parse potential key {which!r}")
        which = tuple(parts)
    try:
        key = tuple(Fraction(str(v).strip()) for v in which)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise DomainError(f"cannot parse potential key {which!r}") from exc
    if key not in NAMED:
        raise DomainError(f"no table for (p, q) = {which}; known: {sorted(NAMED.values())}")
    return NAMED[key]


def named_states(which, m):
    """Tabulated edges of (6,2), (2,2), (6,6) or (63/4,3/4), ground at 0."""
    m = check_modulus(m)
    name = _named_key(which)
    K = ellipK(m)
    D = deltas(m)
    kp = math.sqrt(1 - m)
    if name == "6,2":
        r1, r2 = math.sqrt(4 - 3 * m), math.sqrt(4 - 5 * m + m * m)
        spec = PotentialSpec(2.0, 1.0, m, -4 * m)
        L = 2 * K
        rows = [
            (0.0, (0, 0, 2), [1.0], 0, "L", "dn^2", "ground"),
            (5 - 3 * m - 2 * r1, (0, 1, -1), [-2 - r1, 3 * m], 1, "2L", "cn*F1", "cn/minus"),
            (5 - 2 * m - 2 * r2, (1, 0, -1), [-2 - m - r2, 3 * m], 1, "2L", "sn*F1", "sn/minus"),
            (5 - 2 * m + 2 * r2, (1, 0, -1), [-2 - m + r2, 3 * m], 3, "2L", "sn*F1", "sn/plus"),
            (5 - 3 * m + 2 * r1, (0, 1, -1), [-2 + r1, 3 * m], 3, "2L", "cn*F1", "cn/plus"),
        ]
    elif name == "2,2":
        spec = PotentialSpec(1.0, 1.0, m, -2 - m + 2 * kp)
        L = K
        rows = [
            (0.0, None, JacobiPoly(m, {(0, 0, 1): 1.0, (0, 0, -1): kp}), 0, "L", "dn+k'/dn", "ground"),
            (4 * kp, None, JacobiPoly(m, {(0, 0, 1): 1.0, (0, 0, -1): -kp}), 1, "2L", "dn-k'/dn", "dn-minus"),
            (2 - m + 2 * kp, (1, 1, -1), [1.0], 1, "2L", "sn*cn*F0", "sn-cn"),
        ]
    elif name == "6,6":
        d8 = D.delta8
        spec = PotentialSpec(2.0, 2.0, m, -8 - 2 * m + 2 * d8)
        L = K
        rows = [
            (0.0, (0, 0, -2), [1.0, -(4 - m - d8), 4 - 2 * m - d8], 0, "L", "F2", "ground"),
            (-4 + 2 * m + 2 * d8, (0, 0, -2), [1.0, -2.0, m], 1, "2L", "F2", "F2-mid"),
            (2 - m - 6 * kp + 2 * d8, (1, 1, -2), [1.0, -(1 - kp)], 1, "2L", "sn*cn*F1", "sn-cn/minus"),
            (2 - m + 6 * kp + 2 * d8, (1, 1, -2), [1.0, -(1 + kp)], 2, "L", "sn*cn*F1", "sn-cn/plus"),
            (4 * d8, (0, 0, -2), [1.0, -(4 - m + d8), 4 - 2 * m + d8], 2, "L", "F2", "top"),
        ]
    else:
        d9 = D.delta9
        spec = PotentialSpec(3.5, 0.5, m, -2 - 29 * m / 4 + d9)
        L = 2 * K
        rows = [
            (0.0, (0, 0, 1.5), [-2 - 5 * m - d9, 12 * m], 0, "L", "dn^(3/2)*F1", "ground"),
            (2 - m + d9, (1, 1, 1.5), [1.0], 2, "L", "sn*cn*F0", "sn-cn"),
            (2 * d9, (0, 0, 1.5), [-2 - 5 * m + d9, 12 * m], 2, "L", "dn^(3/2)*F1", "dn/plus"),
            (14 - 7 * m + d9, (1, 1, -0.5), [1.0, -2.0], 4, "L", "sn*cn*F1", "sn-cn/upper"),
            (14 - 7 * m + d9, (0, 0, -0.5), [1.0, -8.0, 8.0], 4, "L", "F2", "dn/upper"),
        ]
    return _build(spec, L, rows, f"named/{name}")


def gap_delta2(a, m):
    """|-2 + m + 2 delta4|: the second gap on parabola P3.

    Rationalized as m^2 |4(a-1)^2 - 1| / (2 delta4 + 2 - m), which is exactly
    zero at a = 3/2 and free of cancellation for small m.
    """
    m = check_modulus(m)
    d4 = math.sqrt(1 - m + m * m * (a - 1) ** 2)
    return m * m * abs(4 * (a - 1) ** 2 - 1) / (2 * d4 + 2 - m)
