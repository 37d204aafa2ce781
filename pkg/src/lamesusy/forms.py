"""Closed-form expressions built from sn, cn, dn.

A ``JacobiPoly`` is a finite sum of monomials ``c * sn**i * cn**j * dn**g``
with integer ``i, j >= 0`` and real ``g``.  The set is closed under
differentiation in x because

    sn' = cn dn,   cn' = -sn dn,   dn' = -m sn cn.

A ``JacobiExpr`` is a quotient of two such polynomials.  Every wavefunction,
superpotential and partner potential in the package is one of these, so all
derivatives are exact rather than finite-differenced.
"""

import math

import numpy as np

from .elliptic import check_modulus, jacobi


def _key(i, j, g):
    g = round(float(g), 12)
    if g == int(g):
        g = int(g)
    return (int(i), int(j), g)


class JacobiPoly:
    __slots__ = ("m", "terms")

    def __init__(self, m, terms=None):
        self.m = check_modulus(m)
        out = {}
        for (i, j, g), c in (terms or {}).items():
            c = float(c)
            if c == 0.0:
                continue
            # cn^2 -> 1 - sn^2 keeps the cn exponent at 0 or 1
            half, j = divmod(int(j), 2)
            for r in range(half + 1):
                k = _key(i + 2 * r, j, g)
                out[k] = out.get(k, 0.0) + c * math.comb(half, r) * (-1) ** r
        self.terms = {k: c for k, c in out.items() if c != 0.0}

    # construction helpers
    @classmethod
    def constant(cls, m, c):
        return cls(m, {(0, 0, 0): c})

    @classmethod
    def monomial(cls, m, sn=0, cn=0, dn=0, coeff=1.0):
        return cls(m, {(sn, cn, dn): coeff})

    @classmethod
    def sn2_poly(cls, m, coeffs, sn=0, cn=0, dn=0):
        """prefactor * sum_k coeffs[k] * sn^(2k)."""
        return cls(m, {(sn + 2 * k, cn, dn): c for k, c in enumerate(coeffs)})

    def _coerce(self, other):
        if isinstance(other, JacobiPoly):
            if abs(other.m - self.m) > 0.0:
                raise ValueError("cannot combine expressions with different m")
            return other
        return JacobiPoly.constant(self.m, other)

    def __add__(self, other):
        if isinstance(other, JacobiExpr):
            return JacobiExpr(self) + other
        other = self._coerce(other)
        t = dict(self.terms)
        for k, c in other.terms.items():
            t[k] = t.get(k, 0.0) + c
        return JacobiPoly(self.m, t)

    __radd__ = __add__

    def __neg__(self):
        return JacobiPoly(self.m, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, JacobiExpr):
            return JacobiExpr(self) * other
        if not isinstance(other, JacobiPoly):
            return JacobiPoly(self.m, {k: c * other for k, c in self.terms.items()})
        other = self._coerce(other)
        t = {}
        for (i1, j1, g1), c1 in self.terms.items():
            for (i2, j2, g2), c2 in other.terms.items():
                k = (i1 + i2, j1 + j2, g1 + g2)
                t[k] = t.get(k, 0.0) + c1 * c2
        return JacobiPoly(self.m, t)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (JacobiPoly, JacobiExpr)):
            return JacobiExpr(self) / other
        return self * (1.0 / other)

    def derivative(self):
        m = self.m
        t = {}

        def add(k, c):
            k = _key(*k)
            t[k] = t.get(k, 0.0) + c

        for (i, j, g), c in self.terms.items():
            if i:
                add((i - 1, j + 1, g + 1), c * i)
            if j:
                add((i + 1, j - 1, g + 1), -c * j)
            if g:
                add((i + 1, j + 1, g - 1), -c * g * m)
        return JacobiPoly(m, t)

    def reduced(self):
        """Rewrite even integer powers dn^2 as 1 - m sn^2.

        Terms that nearly cancel pointwise then cancel in the coefficients,
        which keeps small differences such as psi' + W psi accurate.
        """
        m = self.m
        t = {}
        for (i, j, g), c in self.terms.items():
            if isinstance(g, int) and g >= 2:
                half, g0 = divmod(g, 2)
                for r in range(half + 1):
                    k = (i + 2 * r, j, g0)
                    t[k] = t.get(k, 0.0) + c * math.comb(half, r) * (-m) ** r
            else:
                t[(i, j, g)] = t.get((i, j, g), 0.0) + c
        return JacobiPoly(m, t)

    def is_zero(self, tol=0.0):
        return all(abs(c) <= tol for c in self.terms.values())

    def close_to(self, other, tol=1e-13):
        d = self - other
        scale = max([1.0] + [abs(c) for c in self.terms.values()])
        return d.is_zero(tol * scale)

    def evaluate(self, triple):
        sn, cn, dn = triple
        if np.ndim(sn) == 0:
            total = 0.0
            for (i, j, g), c in self.terms.items():
                total += c * sn**i * cn**j * dn**g
            return total
        total = np.zeros_like(np.asarray(sn, dtype=float))
        logdn = None
        for (i, j, g), c in self.terms.items():
            term = c * sn**i if i else np.full_like(total, c)
            if j:
                term = term * cn
            if g:
                if isinstance(g, int) and 0 < g <= 4:
                    term = term * dn**g
                else:
                    if logdn is None:
                        logdn = np.log(dn)
                    term = term * np.exp(g * logdn)
            total = total + term
        return total

    def __call__(self, x):
        return self.evaluate(jacobi(x, self.m))

    def signature(self):
        """Parity of the (sn, cn, dn) exponents shared by every term, or None.

        Only meaningful for integer dn exponents; used to classify the
        sn*cn*F(sn^2)-type forms of band-edge wavefunctions.
        """
        sig = {(i % 2, j % 2, g % 2 if isinstance(g, int) else None)
               for (i, j, g) in self.terms}
        return sig.pop() if len(sig) == 1 else None

    def __repr__(self):
        parts = [f"{c:+.6g}*sn^{i}*cn^{j}*dn^{g}" for (i, j, g), c in sorted(self.terms.items())]
        return f"JacobiPoly(m={self.m}, {' '.join(parts) or '0'})"


class JacobiExpr:
    """Quotient num/den of two JacobiPoly with the same modulus."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        self.num = num
        self.den = den if den is not None else JacobiPoly.constant(num.m, 1.0)

    @property
    def m(self):
        return self.num.m

    def _is_poly(self):
        return self.den.terms == {(0, 0, 0): 1.0}

    def _coerce(self, other):
        if isinstance(other, JacobiExpr):
            return other
        if isinstance(other, JacobiPoly):
            return JacobiExpr(other)
        return JacobiExpr(JacobiPoly.constant(self.m, other))

    def __add__(self, other):
        other = self._coerce(other)
        if self.den.close_to(other.den, 0.0):
            return JacobiExpr(self.num + other.num, self.den)
        return JacobiExpr(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return JacobiExpr(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, (JacobiExpr, JacobiPoly)):
            return JacobiExpr(self.num * other, self.den)
        other = self._coerce(other)
        return JacobiExpr(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, (JacobiExpr, JacobiPoly)):
            return JacobiExpr(self.num * (1.0 / other), self.den)
        other = self._coerce(other)
        return JacobiExpr(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def derivative(self):
        if self._is_poly():
            return JacobiExpr(self.num.derivative())
        n, d = self.num, self.den
        return JacobiExpr(n.derivative() * d - n * d.derivative(), d * d)

    def evaluate(self, triple):
        return self.num.evaluate(triple) / self.den.evaluate(triple)

    def __call__(self, x):
        return self.evaluate(jacobi(x, self.m))

    def scaled(self, c):
        return JacobiExpr(self.num * c, self.den)

    def __repr__(self):
        return f"JacobiExpr({self.num!r} / {self.den!r})"


def as_expr(f):
    return f if isinstance(f, JacobiExpr) else JacobiExpr(f)


def max_abs(f, L, n=2000, x0=0.0):
    x = x0 + np.arange(n) * (L / n)
    return float(np.max(np.abs(f(x))))


def trig_multiple(m, k):
    """(cos kt, sin kt) as JacobiPoly, where sn = sin t and cn = cos t."""
    c = JacobiPoly.constant(m, 1.0)
    s = JacobiPoly(m)
    cn = JacobiPoly.monomial(m, cn=1)
    sn = JacobiPoly.monomial(m, sn=1)
    for _ in range(k):
        c, s = c * cn - s * sn, s * cn + c * sn
    return c, s


