"""Universality fitting: localized nested integrals as exact polynomials
in intersection numbers.

The eleven invariants of a configuration (surface, beta1, beta2, D) are
listed in FIELDS.  A fit solves an exact linear system over the chosen
monomials; exactness is the point, so rank deficiency and inconsistency
are errors, never least-squares compromises.  The localized integrals
depend on the toric parameters only through the choice of equivariant
lift; the classical value used for fitting is the limit at the origin of
the parameter line, which the integral routines expose exactly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .eqalg import DEFAULT_REGISTRY
from .localize import PrefactorData, typeII_component_integral
from .surfaces import from_preset

FIELDS = ("b1_sq", "b2_sq", "b1_c1", "b2_c1", "b1_D", "b2_D", "b1_b2",
          "D_sq", "D_c1", "c1_sq", "c2")

# generic direction for the exact parameter line; any pair works as long
# as no chart weight degenerates on it
EPS_LINE = (89, -55)


@dataclass(frozen=True)
class ChernNumbers:
    b1_sq: int
    b2_sq: int
    b1_c1: int
    b2_c1: int
    b1_D: int
    b2_D: int
    b1_b2: int
    D_sq: int
    D_c1: int
    c1_sq: int
    c2: int

    def as_vector(self):
        return tuple(getattr(self, f) for f in FIELDS)

    @classmethod
    def from_vector(cls, vec):
        return cls(*vec)

    @classmethod
    def k3_point(cls, m=0):
        """Fiber-multiple configurations on a K3 target: every pairing
        vanishes regardless of m; only c2 = 24 survives."""
        return cls(0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 24)


def chern_invariants(model, beta1, beta2, D):
    """The eleven pairings of a configuration on a toric model.

    ``None`` stands for the zero divisor class.
    """
    b1 = model.check_divisor(beta1 or {})
    b2 = model.check_divisor(beta2 or {})
    d = model.check_divisor(D or {})
    kd = model.canonical_divisor()
    c1 = {k: -v for k, v in kd.items()}
    p = model.pair
    return ChernNumbers(
        b1_sq=p(b1, b1), b2_sq=p(b2, b2),
        b1_c1=p(b1, c1), b2_c1=p(b2, c1),
        b1_D=p(b1, d), b2_D=p(b2, d),
        b1_b2=p(b1, b2),
        D_sq=p(d, d), D_c1=p(d, c1),
        c1_sq=p(c1, c1), c2=model.chern.c2)


def _monomial_name(exps):
    parts = []
    for f, e in zip(FIELDS, exps):
        if e == 1:
            parts.append(f)
        elif e > 1:
            parts.append(f"{f}^{e}")
    return "*".join(parts) if parts else "1"


def _monomials(degree_bound, field_indices):
    """Exponent vectors over the chosen fields, total degree <= bound,
    in graded-lex order."""
    out = []
    for total in range(degree_bound + 1):
        for combo in itertools.combinations_with_replacement(field_indices,
                                                            total):
            e = [0] * len(FIELDS)
            for i in combo:
                e[i] += 1
            out.append(tuple(e))
    seen = sorted(set(out), key=lambda e: (sum(e), e))
    return seen


def _monomial_value(exps, vec):
    v = 1
    for e, x in zip(exps, vec):
        if e:
            v *= x ** e
    return v


class UniversalPolynomial:
    """Polynomial in the eleven invariants with exact scalar
    coefficients."""

    __slots__ = ("terms", "degree_bound")

    def __init__(self, terms, degree_bound):
        self.terms = {tuple(e): c for e, c in terms.items() if not c.is_zero()}
        self.degree_bound = degree_bound

    def evaluate(self, at, reg=DEFAULT_REGISTRY):
        vec = at.as_vector()
        total = reg.zero()
        for exps, coeff in sorted(self.terms.items(),
                                  key=lambda t: (sum(t[0]), t[0])):
            total = total + coeff * _monomial_value(exps, vec)
        return total

    def to_json(self):
        entries = []
        for exps, coeff in sorted(self.terms.items(),
                                  key=lambda t: (sum(t[0]), t[0])):
            entries.append({"exponents": list(exps),
                            "monomial": _monomial_name(exps),
                            "coefficient": str(coeff)})
        return {"degree_bound": self.degree_bound, "terms": entries}


def fit_universal(samples, degree_bound, fields=None, reg=DEFAULT_REGISTRY):
    """Solve for the unique polynomial of the given degree matching the
    samples exactly.

    ``samples`` is a list of (ChernNumbers, scalar value).  ``fields``
    restricts the monomial basis to a subset of FIELDS (default all).
    Underdetermined or inconsistent systems raise, naming the monomials
    without a pivot; coefficients must come out free of the toric chart
    parameters, anything else is reported as an error.
    """
    if fields is None:
        idx = list(range(len(FIELDS)))
    else:
        idx = [FIELDS.index(f) for f in fields]
    monos = _monomials(degree_bound, idx)
    rows = []
    rhs = []
    for cn, val in samples:
        vec = cn.as_vector()
        rows.append([Fraction(_monomial_value(e, vec)) for e in monos])
        rhs.append(val)
    ncols = len(monos)
    nrows = len(rows)
    if nrows < ncols:
        raise ValueError(
            f"fit underdetermined: {nrows} samples for {ncols} monomials "
            f"({', '.join(_monomial_name(e) for e in monos)})")

    # exact Gaussian elimination; rhs entries are field scalars
    piv_of_col = {}
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        rhs[r], rhs[p] = rhs[p], rhs[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        rhs[r] = rhs[r] * inv
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
                rhs[i] = rhs[i] - rhs[r] * f
        piv_of_col[c] = r
        r += 1
    missing = [c for c in range(ncols) if c not in piv_of_col]
    if missing:
        names = ", ".join(_monomial_name(monos[c]) for c in missing)
        raise ValueError(f"fit underdetermined: no independent data for "
                         f"monomials: {names}")
    for i in range(r, nrows):
        if not rhs[i].is_zero():
            raise ValueError("fit inconsistent: samples are not matched by "
                             "any polynomial of this degree")
    terms = {}
    for c, row_i in piv_of_col.items():
        coeff = rhs[row_i]
        bad = coeff.num.support_vars() | coeff.den.support_vars()
        if 2 in bad or 3 in bad:
            raise ValueError(
                f"coefficient of {_monomial_name(monos[c])} depends on the "
                "chart parameters; universality violated or samples not "
                "taken at the classical limit")
        if not coeff.is_zero():
            terms[monos[c]] = coeff
    return UniversalPolynomial(terms, degree_bound)


def design_rank(vectors, degree_bound, fields=None):
    """Rank of the monomial design matrix; cheap pre-check to run before
    any integrals."""
    if fields is None:
        idx = list(range(len(FIELDS)))
    else:
        idx = [FIELDS.index(f) for f in fields]
    monos = _monomials(degree_bound, idx)
    rows = [[Fraction(_monomial_value(e, v)) for e in monos] for v in vectors]
    rank = 0
    ncols = len(monos)
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
        rank += 1
    return rank, ncols


# -- test-surface battery ---------------------------------------------------

def battery_configs(include_unions=True):
    """Deterministic list of (model, bundle divisor) configurations
    covering the presets, a spread of divisors, and disjoint unions
    (the unions break the fixed linear relation between c1 squared and
    c2 that any single small toric surface satisfies)."""
    plane = from_preset("plane")
    quadric = from_preset("quadric")
    h1 = from_preset("hirzebruch1")
    h2 = from_preset("hirzebruch2")
    h3 = from_preset("hirzebruch3")
    configs = [
        (plane, {"H": 1}), (plane, {"H": 2}), (plane, {"H": 3}),
        (plane, {"H": 4}), (h3, {"C0": 1, "F": 5}),
        (quadric, {"A": 1}), (quadric, {"A": 1, "B": 1}),
        (quadric, {"A": 2, "B": 1}), (quadric, {"A": 1, "B": 2}),
        (quadric, {"A": 2, "B": 2}),
        (h1, {"C0": 1, "F": 1}), (h1, {"C0": 1, "F": 2}),
        (h1, {"C0": 2, "F": 3}),
        (h2, {"C0": 1, "F": 2}), (h2, {"C0": 1, "F": 3}),
        (h3, {"C0": 1, "F": 3}), (h3, {"C0": 1, "F": 4}),
    ]
    if include_unions:
        pq = plane.disjoint_union(quadric)
        pp = plane.disjoint_union(plane)
        qq = quadric.disjoint_union(quadric)
        ppp = pp.disjoint_union(plane)
        ppq = pp.disjoint_union(quadric)
        configs += [
            (pq, {"a.H": 1}), (pq, {"a.H": 1, "b.A": 1, "b.B": 1}),
            (pq, {"a.H": 2, "b.A": 1}),
            (pp, {"a.H": 1}), (pp, {"a.H": 1, "b.H": 1}),
            (pp, {"a.H": 2, "b.H": 1}),
            (qq, {"a.A": 1, "b.B": 1}), (qq, {"a.A": 1, "a.B": 1, "b.A": 1}),
            (ppp, {"a.a.H": 1, "b.H": 1}), (ppp, {"a.a.H": 1, "a.b.H": 2}),
            (ppq, {"a.a.H": 1, "b.A": 1}), (ppq, {"a.b.H": 2, "b.B": 1}),
        ]
    return configs


def typeII_samples(configs, n1, n2, jobs=1):
    """Classical (chart-parameter-free) integral parts of the nested
    component integrals, paired with their invariants.

    Each integral is computed exactly on the generic parameter line and
    evaluated at the origin of that line; beta classes are zero on this
    route, so only the bundle and surface invariants vary.
    """
    zero_at = {"e1": Fraction(0)}
    unit = PrefactorData.from_numbers(0, 0, 0, 0, 0)
    samples = []
    for model, L in configs:
        cn = chern_invariants(model, {}, {}, L)
        val = typeII_component_integral(model, L, n1=n1, n2=n2,
                                        prefactor=unit, eps_line=EPS_LINE,
                                        jobs=jobs)
        samples.append((cn, val.specialize(zero_at)))
    return samples
