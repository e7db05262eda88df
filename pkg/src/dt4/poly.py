"""Exact multivariate polynomials over the integers.

A polynomial is stored as a map from exponent tuples to nonzero integer
coefficients.  Monomials are ordered graded-lex (total degree first, ties
broken lexicographically on the exponent tuple); that order fixes leading
terms, canonical signs and printing everywhere else in the package.

The gcd is the classical content/primitive-part recursion with a primitive
pseudo-remainder sequence in the top occurring variable.  Variable counts
here are tiny (at most four), so exactness wins over asymptotics.
"""

from __future__ import annotations

import math
from fractions import Fraction


def grlex_key(exps):
    """Sort key realizing the graded-lex order on exponent tuples."""
    return (sum(exps), exps)


class Poly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        self.terms = {e: c for e, c in terms.items() if c} if terms else {}

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, nvars):
        return cls(nvars)

    @classmethod
    def const(cls, nvars, c):
        c = int(c)
        return cls(nvars, {(0,) * nvars: c} if c else None)

    @classmethod
    def variable(cls, nvars, idx):
        e = [0] * nvars
        e[idx] = 1
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def linear_form(cls, coeffs):
        """Polynomial sum(coeffs[i] * x_i); no constant part."""
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            if c:
                e = [0] * n
                e[i] = 1
                terms[tuple(e)] = int(c)
        return cls(n, terms)

    # -- predicates and views ----------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_const(self):
        return not self.terms or (len(self.terms) == 1 and (0,) * self.nvars in self.terms)

    def const_value(self):
        if not self.is_const():
            raise ValueError("polynomial is not constant")
        return self.terms.get((0,) * self.nvars, 0)

    def is_one(self):
        return self.terms == {(0,) * self.nvars: 1}

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=0)

    def degree_in(self, v):
        return max((e[v] for e in self.terms), default=0)

    def support_vars(self):
        used = set()
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    used.add(i)
        return used

    def lead(self):
        """Leading (exponent, coefficient) in graded-lex order."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=grlex_key)
        return e, self.terms[e]

    def key(self):
        """Hashable canonical identity of the polynomial."""
        return (self.nvars, tuple(sorted(self.terms.items())))

    def __eq__(self, other):
        return isinstance(other, Poly) and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Poly({self.nvars}, {self.terms!r})"

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            other = Poly.const(self.nvars, other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            n = t.get(e, 0) + c
            if n:
                t[e] = n
            else:
                t.pop(e, None)
        return Poly(self.nvars, t)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = Poly.const(self.nvars, other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return Poly(self.nvars)
            return Poly(self.nvars, {e: c * other for e, c in self.terms.items()})
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                n = t.get(e, 0) + c1 * c2
                if n:
                    t[e] = n
                else:
                    t.pop(e, None)
        return Poly(self.nvars, t)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    # -- contents, division, gcd ------------------------------------------

    def content(self):
        """gcd of the integer coefficients (nonnegative)."""
        g = 0
        for c in self.terms.values():
            g = math.gcd(g, c)
            if g == 1:
                return 1
        return g

    def primitive(self):
        """Split into (signed content, primitive part with positive lead)."""
        if not self.terms:
            return 0, Poly(self.nvars)
        c = self.content()
        _, lc = self.lead()
        if lc < 0:
            c = -c
        return c, Poly(self.nvars, {e: v // c for e, v in self.terms.items()})

    def divexact(self, other):
        """Exact division; raises ValueError when not divisible."""
        if isinstance(other, int):
            other = Poly.const(self.nvars, other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if other.is_const():
            d = other.const_value()
            q = {}
            for e, c in self.terms.items():
                if c % d:
                    raise ValueError("inexact polynomial division")
                q[e] = c // d
            return Poly(self.nvars, q)
        oe, oc = other.lead()
        r = dict(self.terms)
        q = {}
        while r:
            e = max(r, key=grlex_key)
            c = r[e]
            de = tuple(a - b for a, b in zip(e, oe))
            if any(x < 0 for x in de) or c % oc:
                raise ValueError("inexact polynomial division")
            qc = c // oc
            q[de] = q.get(de, 0) + qc
            for e2, c2 in other.terms.items():
                ne = tuple(a + b for a, b in zip(de, e2))
                nc = r.get(ne, 0) - qc * c2
                if nc:
                    r[ne] = nc
                else:
                    r.pop(ne, None)
        return Poly(self.nvars, q)

    def divides(self, other):
        """Return other/self when the division is exact, else None."""
        try:
            return other.divexact(self)
        except (ValueError, ZeroDivisionError):
            return None

    # -- univariate views --------------------------------------------------

    def by_var(self, v):
        """Coefficients as a map v-degree -> Poly (with the v slot zeroed)."""
        out = {}
        for e, c in self.terms.items():
            d = e[v]
            e0 = e[:v] + (0,) + e[v + 1:]
            sub = out.setdefault(d, {})
            sub[e0] = sub.get(e0, 0) + c
        return {d: Poly(self.nvars, t) for d, t in out.items() if any(t.values())}

    @classmethod
    def from_var_dict(cls, nvars, v, parts):
        t = {}
        for d, p in parts.items():
            for e, c in p.terms.items():
                e2 = e[:v] + (e[v] + d,) + e[v + 1:]
                t[e2] = t.get(e2, 0) + c
        return cls(nvars, t)

    # -- evaluation --------------------------------------------------------

    def substitute_scaled(self, assign):
        """Substitute Fractions for the variables in ``assign`` (index->value).

        Returns (P, d): the substituted polynomial with integer coefficients
        after clearing denominators, so that self == P / d on the assignment.
        """
        acc = {}
        for e, c in self.terms.items():
            val = Fraction(c)
            e2 = list(e)
            for v, x in assign.items():
                if e[v]:
                    val *= Fraction(x) ** e[v]
                    e2[v] = 0
            k = tuple(e2)
            acc[k] = acc.get(k, Fraction(0)) + val
        acc = {e: v for e, v in acc.items() if v}
        den = 1
        for v in acc.values():
            den = den * v.denominator // math.gcd(den, v.denominator)
        terms = {e: int(v * den) for e, v in acc.items()}
        return Poly(self.nvars, terms), den

    def evaluate(self, assign):
        """Full evaluation to a Fraction (every support variable assigned)."""
        p, d = self.substitute_scaled(assign)
        return Fraction(p.const_value(), d)


# -- gcd machinery ---------------------------------------------------------

def _prem(a_parts, b_parts, nvars):
    """Pseudo-remainder of univariate-in-v polynomials given as degree maps."""
    db = max(b_parts)
    lb = b_parts[db]
    r = dict(a_parts)
    while r:
        dr = max(r)
        if dr < db:
            break
        lr = r[dr]
        nr = {}
        for d, p in r.items():
            q = p * lb
            if not q.is_zero():
                nr[d] = q
        for d, p in b_parts.items():
            dd = d + dr - db
            q = nr.get(dd, Poly.zero(nvars)) - p * lr
            if q.is_zero():
                nr.pop(dd, None)
            else:
                nr[dd] = q
        r = nr
    return r


def _content_of_parts(parts):
    g = None
    for p in parts.values():
        g = p if g is None else gcd(g, p)
        if g.is_one():
            break
    return g


def gcd(a, b):
    """Polynomial gcd over the integers, positive leading coefficient."""
    if a.is_zero():
        return b.primitive()[1] * b.content() if not b.is_zero() else b
    if b.is_zero():
        return a.primitive()[1] * a.content()
    ca, pa = a.primitive()
    cb, pb = b.primitive()
    cg = math.gcd(abs(ca), abs(cb))
    return _gcd_prim(pa, pb) * cg


def _gcd_prim(a, b):
    """gcd of integer-primitive polynomials with positive leading terms."""
    sup = a.support_vars() | b.support_vars()
    if not sup:
        return Poly.const(a.nvars, 1)
    v = max(sup)
    nvars = a.nvars
    ap = a.by_var(v)
    bp = b.by_var(v)
    conta = _content_of_parts(ap)
    contb = _content_of_parts(bp)
    contg = gcd(conta, contb)
    pa = {d: p.divexact(conta) for d, p in ap.items()}
    pb = {d: p.divexact(contb) for d, p in bp.items()}
    if max(pa) < max(pb):
        pa, pb = pb, pa
    while True:
        if not pb:
            g_parts = pa
            break
        r = _prem(pa, pb, nvars)
        if not r:
            g_parts = pb
            break
        rc = _content_of_parts(r)
        r = {d: p.divexact(rc) for d, p in r.items()}
        pa, pb = pb, r
    g = Poly.from_var_dict(nvars, v, g_parts)
    gc = _content_of_parts(g_parts)
    g = g.divexact(gc) * contg
    c, p = g.primitive()
    return p * abs(c)


def lcm(a, b):
    g = gcd(a, b)
    if g.is_zero():
        return g
    return a.divexact(g) * b


def poly_str(p, names):
    """Render in graded-lex descending order with explicit * and ^."""
    if p.is_zero():
        return "0"
    parts = []
    for e, c in sorted(p.terms.items(), key=lambda kv: grlex_key(kv[0]), reverse=True):
        mono = []
        for i, k in enumerate(e):
            if k:
                mono.append(names[i] if k == 1 else f"{names[i]}^{k}")
        ac = abs(c)
        if not mono:
            body = str(ac)
        elif ac == 1:
            body = "*".join(mono)
        else:
            body = "*".join([str(ac)] + mono)
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)
