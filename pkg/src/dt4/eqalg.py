"""Exact rational functions and torus weight characters.

All equivariant quantities live in the fraction field of an integer
polynomial ring whose variables are fixed by a :class:`Registry`.  The
default registry carries the primary localization parameter ``s``, a
secondary parameter ``sp`` used for residue integrals, and two auxiliary
deformation parameters ``e1``, ``e2``.

A :class:`WeightCharacter` is a finite multiset of integer linear forms in
the registry variables; it models the character of a virtual torus
representation.  Euler classes and Chern class parts are read off from it.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .poly import Poly, gcd, poly_str


class NonGenericWeightError(ValueError):
    """A zero torus weight occurred where an invertible Euler class is needed."""


class Registry:
    """Fixed, ordered set of equivariant variable names."""

    __slots__ = ("names", "_index")

    def __init__(self, *names):
        self.names = tuple(names)
        self._index = {n: i for i, n in enumerate(self.names)}

    @property
    def nvars(self):
        return len(self.names)

    def index(self, name):
        return self._index[name]

    def linear(self, coeffs):
        """Integer linear form from a coefficient sequence or name map."""
        if isinstance(coeffs, dict):
            vec = [0] * self.nvars
            for n, c in coeffs.items():
                vec[self._index[n]] = c
            coeffs = vec
        return Poly.linear_form(tuple(coeffs))

    def var(self, name):
        return EqScalar(self, Poly.variable(self.nvars, self._index[name]))

    def const(self, c):
        if isinstance(c, Fraction):
            return EqScalar(self, Poly.const(self.nvars, c.numerator),
                            Poly.const(self.nvars, c.denominator))
        return EqScalar(self, Poly.const(self.nvars, c))

    def zero(self):
        return self.const(0)

    def one(self):
        return self.const(1)


DEFAULT_REGISTRY = Registry("s", "sp", "e1", "e2")


class EqScalar:
    """Element of the rational function field over a registry.

    Stored in canonical form: numerator and denominator coprime over the
    integers and the denominator with positive graded-lex leading
    coefficient.  Zero is ``0/1``.
    """

    __slots__ = ("reg", "num", "den")

    def __init__(self, reg, num, den=None, _canonical=False):
        self.reg = reg
        if isinstance(num, int):
            num = Poly.const(reg.nvars, num)
        if den is None:
            den = Poly.const(reg.nvars, 1)
        elif isinstance(den, int):
            den = Poly.const(reg.nvars, den)
        if not _canonical:
            num, den = _reduce(num, den)
        self.num = num
        self.den = den

    # -- canonical form ----------------------------------------------------

    def is_zero(self):
        return self.num.is_zero()

    def is_one(self):
        return self.num.is_one() and self.den.is_one()

    def key(self):
        return (self.num.key(), self.den.key())

    def __eq__(self, other):
        if not isinstance(other, EqScalar):
            if isinstance(other, (int, Fraction)):
                other = self.reg.const(other)
            else:
                return NotImplemented
        return self.reg.names == other.reg.names and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __str__(self):
        ns = poly_str(self.num, self.reg.names)
        if self.den.is_one():
            return ns
        return f"({ns})/({poly_str(self.den, self.reg.names)})"

    def __repr__(self):
        return f"EqScalar({self})"

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, EqScalar):
            return other
        if isinstance(other, (int, Fraction)):
            return self.reg.const(other)
        if isinstance(other, Poly):
            return EqScalar(self.reg, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b, c, d = self.num, self.den, o.num, o.den
        if b == d:
            return EqScalar(self.reg, a + c, b)
        g = gcd(b, d)
        if g.is_one():
            t = a * d + c * b
            if t.is_zero():
                return self.reg.zero()
            return EqScalar(self.reg, t, b * d, _canonical=True)
        b0 = b.divexact(g)
        d0 = d.divexact(g)
        t = a * d0 + c * b0
        h = gcd(t, g)
        if h.is_one():
            return EqScalar(self.reg, t, b0 * d0 * g)
        return EqScalar(self.reg, t.divexact(h), b0 * d0 * g.divexact(h))

    __radd__ = __add__

    def __neg__(self):
        return EqScalar(self.reg, -self.num, self.den, _canonical=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b, c, d = self.num, self.den, o.num, o.den
        if a.is_zero() or c.is_zero():
            return self.reg.zero()
        g1 = gcd(a, d)
        g2 = gcd(c, b)
        if not g1.is_one():
            a = a.divexact(g1)
            d = d.divexact(g1)
        if not g2.is_one():
            c = c.divexact(g2)
            b = b.divexact(g2)
        return EqScalar(self.reg, a * c, b * d)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return EqScalar(self.reg, self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        r = self.reg.one()
        b = self
        while k:
            if k & 1:
                r = r * b
            k >>= 1
            if k:
                b = b * b
        return r

    # -- evaluation --------------------------------------------------------

    def specialize(self, assign):
        """Substitute Fractions for named variables, staying exact."""
        idx = {self.reg.index(n): Fraction(v) for n, v in assign.items()}
        pn, dn = self.num.substitute_scaled(idx)
        pd, dd = self.den.substitute_scaled(idx)
        if pd.is_zero():
            raise ZeroDivisionError("denominator vanishes under specialization")
        return EqScalar(self.reg, pn * dd, pd * dn)

    def as_fraction(self):
        """Value as a Fraction; requires a constant rational function."""
        if not (self.num.is_const() and self.den.is_const()):
            raise ValueError(f"not a constant: {self}")
        return Fraction(self.num.const_value(), self.den.const_value())


def _reduce(num, den):
    if den.is_zero():
        raise ZeroDivisionError("zero denominator")
    if num.is_zero():
        return num, Poly.const(num.nvars, 1)
    g = gcd(num, den)
    if not g.is_one():
        num = num.divexact(g)
        den = den.divexact(g)
    _, lc = den.lead()
    if lc < 0:
        num = -num
        den = -den
    return num, den


def normalize(x):
    """Recanonicalize an EqScalar; idempotent by construction."""
    return EqScalar(x.reg, x.num, x.den)


# -- Laurent expansion -----------------------------------------------------

def laurent_expand(x, var, order):
    """Laurent coefficients of ``x`` in ``var`` around 0 through ``order``.

    Returns an ascending list of (exponent, EqScalar) pairs with nonzero
    coefficients free of ``var``, from the valuation up to and including
    ``order``.
    """
    return sorted(_laurent_dict(x, var, order).items())


def _laurent_dict(x, var, order):
    reg = x.reg
    v = reg.index(var)
    if x.is_zero():
        return {}
    nparts = x.num.by_var(v)
    dparts = x.den.by_var(v)
    b = min(nparts)
    a = min(dparts)
    val = b - a
    if order < val:
        return {}
    d0 = dparts[a]
    dt = {j - a: p for j, p in dparts.items()}
    nt = {j - b: p for j, p in nparts.items()}
    jmax = order - val
    u = []
    out = {}
    for j in range(jmax + 1):
        uj = nt.get(j, Poly.zero(x.num.nvars)) * d0 ** j
        for i in range(1, j + 1):
            if i in dt:
                uj = uj - dt[i] * u[j - i] * d0 ** (i - 1)
        u.append(uj)
        c = EqScalar(reg, uj, d0 ** (j + 1))
        if not c.is_zero():
            out[val + j] = c
    return out


def residue(x, var):
    """Coefficient of ``var``^(-1) in the Laurent expansion around 0."""
    return _laurent_dict(x, var, -1).get(-1, x.reg.zero())


# -- weight characters -----------------------------------------------------

class WeightCharacter:
    """Finite multiset of integer weight vectors with integer multiplicity.

    Vectors are coefficient tuples over the registry variables.  Addition
    and subtraction are of virtual representations; ``mul`` is the tensor
    product (weights add, multiplicities multiply).
    """

    __slots__ = ("reg", "weights")

    def __init__(self, reg, weights=None):
        self.reg = reg
        self.weights = {}
        if weights:
            for w, m in (weights.items() if isinstance(weights, dict) else weights):
                if m:
                    w = tuple(w)
                    n = self.weights.get(w, 0) + m
                    if n:
                        self.weights[w] = n
                    else:
                        del self.weights[w]

    def items(self):
        return self.weights.items()

    def rank(self):
        return sum(self.weights.values())

    def is_zero(self):
        return not self.weights

    def __eq__(self, other):
        return (isinstance(other, WeightCharacter)
                and self.reg.names == other.reg.names
                and self.weights == other.weights)

    def __repr__(self):
        items = sorted(self.weights.items())
        return f"WeightCharacter({items!r})"

    def __add__(self, other):
        t = dict(self.weights)
        for w, m in other.weights.items():
            n = t.get(w, 0) + m
            if n:
                t[w] = n
            else:
                del t[w]
        out = WeightCharacter(self.reg)
        out.weights = t
        return out

    def __neg__(self):
        out = WeightCharacter(self.reg)
        out.weights = {w: -m for w, m in self.weights.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            out = WeightCharacter(self.reg)
            if other:
                out.weights = {w: m * other for w, m in self.weights.items()}
            return out
        t = {}
        for w1, m1 in self.weights.items():
            for w2, m2 in other.weights.items():
                w = tuple(a + b for a, b in zip(w1, w2))
                n = t.get(w, 0) + m1 * m2
                if n:
                    t[w] = n
                else:
                    del t[w]
        out = WeightCharacter(self.reg)
        out.weights = t
        return out

    __rmul__ = __mul__

    def shift(self, vec):
        """Tensor with the one dimensional representation of weight ``vec``."""
        vec = tuple(vec)
        out = WeightCharacter(self.reg)
        out.weights = {tuple(a + b for a, b in zip(w, vec)): m
                       for w, m in self.weights.items()}
        return out

    def conjugate(self):
        """Dual representation: all weights negated."""
        out = WeightCharacter(self.reg)
        out.weights = {tuple(-a for a in w): m for w, m in self.weights.items()}
        return out


def euler_of_character(char):
    """Equivariant Euler class: product of weight forms to their multiplicities.

    A zero weight with nonzero multiplicity has no invertible Euler class
    and raises :class:`NonGenericWeightError`.
    """
    reg = char.reg
    num = Poly.const(reg.nvars, 1)
    den = Poly.const(reg.nvars, 1)
    for w, m in char.weights.items():
        if not any(w):
            raise NonGenericWeightError(
                "zero torus weight: Euler class is not invertible")
        f = Poly.linear_form(w) ** abs(m)
        if m > 0:
            num = num * f
        else:
            den = den * f
    return EqScalar(reg, num, den)


def _binom(m, j):
    """Binomial coefficient C(m, j) for any integer m and j >= 0."""
    if m >= 0:
        return math.comb(m, j) if j <= m else 0
    return (-1) ** j * math.comb(-m + j - 1, j)


def chern_part(char, k):
    """Degree ``k`` part of the total Chern class of the character.

    The total class is the product over weights w of (1 + w)^mult, with
    negative multiplicities expanded as formal power series.  Zero weights
    are legal and contribute nothing.
    """
    reg = char.reg
    nv = reg.nvars
    coeffs = [Poly.const(nv, 1)] + [Poly.zero(nv) for _ in range(k)]
    for w, m in char.weights.items():
        if not any(w):
            continue
        lf = Poly.linear_form(w)
        fac = [Poly.const(nv, _binom(m, j)) * lf ** j for j in range(k + 1)]
        nxt = [Poly.zero(nv) for _ in range(k + 1)]
        for i in range(k + 1):
            if coeffs[i].is_zero():
                continue
            for j in range(k + 1 - i):
                if not fac[j].is_zero():
                    nxt[i + j] = nxt[i + j] + coeffs[i] * fac[j]
        coeffs = nxt
    return EqScalar(reg, coeffs[k])
