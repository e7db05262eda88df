"""Equivariant localization integrands over Hilbert schemes of points.

All characters are finite weight multisets over the registry
(s, sp, e1, e2): s is the fiber-scaling parameter, sp the auxiliary
residue parameter, (e1, e2) the toric chart parameters.  A twisted line
bundle contributes its per-chart fiber form plus t_weight * s plus
tprime_weight * sp to every weight it touches.

Conventions inherited from the surface layer: boxes (i, j) of a chart
partition carry weight -(i*w1 + j*w2); the correction character of an
ideal-sheaf pair at one chart is

    N(V1, V2) = V2 + conj(V1)*t1*t2 - conj(V1)*V2*(1-t1)(1-t2)

with t_i the one dimensional character of weight w_i and V the box
character of the chart partition.  Summed over charts and shifted by the
bundle weights this reproduces the full pair Euler characteristic; the
small-n oracles in the test suite pin both the tangent and the pair
formulas against direct deformation-space and sheaf-cohomology
computations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from multiprocessing import Pool

from .eqalg import (DEFAULT_REGISTRY, EqScalar, NonGenericWeightError,
                    WeightCharacter, chern_part, euler_of_character, residue)
from .partitions import HilbFixedPoint, arm_leg, hilb_fixed_points
from .poly import Poly


@dataclass(frozen=True)
class TwistedBundleSpec:
    """Line bundle data: a divisor class plus integer t and t' twists."""
    divisor: tuple
    t_weight: int = 0
    tprime_weight: int = 0

    @classmethod
    def make(cls, divisor, t_weight=0, tprime_weight=0):
        if divisor is None:
            divisor = ()
        elif isinstance(divisor, dict):
            divisor = tuple(sorted(divisor.items()))
        return cls(tuple(divisor), t_weight, tprime_weight)

    def divisor_map(self):
        return dict(self.divisor)

    def twisted(self, dt=0, dtp=0):
        return TwistedBundleSpec(self.divisor, self.t_weight + dt,
                                 self.tprime_weight + dtp)


def _as_spec(bundle):
    if isinstance(bundle, TwistedBundleSpec):
        return bundle
    return TwistedBundleSpec.make(bundle or {})


def _shift_vec(spec, mu):
    return (spec.t_weight, spec.tprime_weight, mu[0], mu[1])


# -- chart-level character calculus ----------------------------------------
# Characters at one chart live in plain dicts weight-4-tuple -> multiplicity.

def _dadd(a, b):
    out = dict(a)
    for w, m in b.items():
        n = out.get(w, 0) + m
        if n:
            out[w] = n
        else:
            del out[w]
    return out

def _dneg(a):
    return {w: -m for w, m in a.items()}

def _dconj(a):
    return {tuple(-x for x in w): m for w, m in a.items()}

def _dmul(a, b):
    out = {}
    for w1, m1 in a.items():
        for w2, m2 in b.items():
            w = tuple(x + y for x, y in zip(w1, w2))
            n = out.get(w, 0) + m1 * m2
            if n:
                out[w] = n
            else:
                del out[w]
    return out

def _dshift(a, vec):
    return {tuple(x + y for x, y in zip(w, vec)): m for w, m in a.items()}


def _box_character(lam, w1, w2):
    out = {}
    for (i, j) in lam.boxes():
        w = (0, 0, -(i * w1[0] + j * w2[0]), -(i * w1[1] + j * w2[1]))
        out[w] = out.get(w, 0) + 1
    return out


def _pair_correction(lam1, lam2, w1, w2):
    """Chart character N(V1, V2) of an ideal-sheaf pair."""
    v1 = _box_character(lam1, w1, w2)
    v2 = _box_character(lam2, w1, w2)
    t1 = {(0, 0, w1[0], w1[1]): 1}
    t2 = {(0, 0, w2[0], w2[1]): 1}
    out = dict(v2)
    if v1:
        c1 = _dconj(v1)
        out = _dadd(out, _dmul(c1, _dmul(t1, t2)))
        if v2:
            box = _dadd({(0, 0, 0, 0): 1}, _dneg(t1))
            box = _dmul(box, _dadd({(0, 0, 0, 0): 1}, _dneg(t2)))
            out = _dadd(out, _dneg(_dmul(_dmul(c1, v2), box)))
    return out


# -- public characters -----------------------------------------------------

def tangent_character(fp, model, reg=DEFAULT_REGISTRY):
    """Tangent weights of the Hilbert scheme at a monomial fixed point.

    Per chart, each box of the partition contributes the arm/leg pair
    (l+1)*w1 - a*w2 and -l*w1 + (a+1)*w2; exactly 2n weights with
    multiplicity.
    """
    acc = {}
    for idx, lam in enumerate(fp.assignment):
        w1, w2 = model.tangent_weights(idx)
        for box in lam.boxes():
            a, l = arm_leg(lam, box)
            for (c1, c2) in (((l + 1), -a), (-l, (a + 1))):
                w = (0, 0, c1 * w1[0] + c2 * w2[0], c1 * w1[1] + c2 * w2[1])
                acc[w] = acc.get(w, 0) + 1
    return WeightCharacter(reg, acc)


def twisted_tangent_character(fp, bundle, model, reg=DEFAULT_REGISTRY):
    """Tangent character with every chart's weights shifted by the chart
    fiber weight of the twisted bundle."""
    spec = _as_spec(bundle)
    acc = {}
    for idx, lam in enumerate(fp.assignment):
        w1, w2 = model.tangent_weights(idx)
        mu = model.bundle_weight(spec.divisor_map(), idx)
        sv = _shift_vec(spec, mu)
        for box in lam.boxes():
            a, l = arm_leg(lam, box)
            for (c1, c2) in (((l + 1), -a), (-l, (a + 1))):
                w = (sv[0], sv[1],
                     c1 * w1[0] + c2 * w2[0] + sv[2],
                     c1 * w1[1] + c2 * w2[1] + sv[3])
                acc[w] = acc.get(w, 0) + 1
    return WeightCharacter(reg, acc)


def _sheaf_character(model, spec, reg):
    """Character of the full cohomology of the twisted bundle."""
    acc = {}
    coh = model.cohomology_character(spec.divisor_map())
    for w2, m in coh.items():
        w = (spec.t_weight, spec.tprime_weight, w2[0], w2[1])
        acc[w] = acc.get(w, 0) + m
    return acc


def chi_character(fp1, fp2, bundle, model, reg=DEFAULT_REGISTRY):
    """Pair Euler characteristic character of (ideal 1, ideal 2 x bundle).

    Cohomology of the bundle minus the chart corrections; the rank is
    chi(bundle) - n1 - n2.
    """
    spec = _as_spec(bundle)
    acc = _sheaf_character(model, spec, reg)
    acc = _dadd(acc, _dneg(_correction_character(fp1, fp2, spec, model)))
    return WeightCharacter(reg, acc)


def _correction_character(fp1, fp2, spec, model):
    acc = {}
    for idx in range(len(model.fixed_points)):
        lam1 = fp1.assignment[idx]
        lam2 = fp2.assignment[idx]
        if not lam1.parts and not lam2.parts:
            continue
        w1, w2 = model.tangent_weights(idx)
        mu = model.bundle_weight(spec.divisor_map(), idx)
        n = _pair_correction(lam1, lam2, w1, w2)
        acc = _dadd(acc, _dshift(n, _shift_vec(spec, mu)))
    return acc


def difference_character(fp1, fp2, bundle, model, reg=DEFAULT_REGISTRY):
    """Character of (cohomology of bundle) minus (pair characteristic);
    rank n1 + n2 identically."""
    spec = _as_spec(bundle)
    return WeightCharacter(reg, _correction_character(fp1, fp2, spec, model))


def tautological_character(fp, bundle, model, reg=DEFAULT_REGISTRY):
    """Push-forward of the bundle along the universal subscheme: one
    weight per box, shifted by the chart fiber weight."""
    spec = _as_spec(bundle)
    acc = {}
    for idx, lam in enumerate(fp.assignment):
        if not lam.parts:
            continue
        w1, w2 = model.tangent_weights(idx)
        mu = model.bundle_weight(spec.divisor_map(), idx)
        sv = _shift_vec(spec, mu)
        acc = _dadd(acc, _dshift(_box_character(lam, w1, w2), sv))
    return WeightCharacter(reg, acc)


# -- Euler class evaluation with optional specialization -------------------

def _euler(char, eps, reg, eps_line=None):
    """Euler class of a WeightCharacter, optionally with (e1, e2)
    specialized to exact rationals, or restricted to the exact line
    (e1, e2) = (a u, b u) via ``eps_line=(a, b)``.  Zero weights raise
    NonGenericWeightError."""
    if eps_line is not None:
        a, b = eps_line
        num = Poly.const(reg.nvars, 1)
        den = Poly.const(reg.nvars, 1)
        for w, m in char.items():
            f = Poly.linear_form((w[0], w[1], w[2] * a + w[3] * b, 0))
            if f.is_zero():
                raise NonGenericWeightError(
                    "zero torus weight on the chosen parameter line")
            if m > 0:
                num = num * f ** m
            else:
                den = den * f ** (-m)
        return EqScalar(reg, num, den)
    if eps is None:
        return euler_of_character(char)
    e1, e2 = Fraction(eps[0]), Fraction(eps[1])
    num = Poly.const(reg.nvars, 1)
    den = Poly.const(reg.nvars, 1)
    num_i = 1
    den_i = 1
    num_f = Fraction(1)
    for w, m in char.items():
        c = e1 * w[2] + e2 * w[3]
        if w[0] == 0 and w[1] == 0:
            if c == 0:
                raise NonGenericWeightError(
                    "zero torus weight after specialization")
            num_f *= c ** m
            continue
        f = Poly.linear_form((w[0] * c.denominator, w[1] * c.denominator,
                              0, 0)) + Poly.const(reg.nvars, c.numerator)
        if m > 0:
            num = num * f ** m
            den_i *= c.denominator ** m
        else:
            den = den * f ** (-m)
            num_i *= c.denominator ** (-m)
    num_i *= num_f.numerator
    den_i *= num_f.denominator
    return EqScalar(reg, num * num_i, den * den_i)


def _poly_line(p, a, b, nvars):
    terms = {}
    for e, c in p.terms.items():
        c2 = c * a ** e[2] * b ** e[3]
        if not c2:
            continue
        e2 = (e[0], e[1], e[2] + e[3], 0)
        n = terms.get(e2, 0) + c2
        if n:
            terms[e2] = n
        else:
            del terms[e2]
    return Poly(nvars, terms)


def _maybe_specialize(x, eps, eps_line=None):
    if eps_line is not None:
        a, b = eps_line
        return EqScalar(x.reg, _poly_line(x.num, a, b, x.reg.nvars),
                        _poly_line(x.den, a, b, x.reg.nvars))
    if eps is None:
        return x
    return x.specialize({"e1": Fraction(eps[0]), "e2": Fraction(eps[1])})


# -- generic localization sum ----------------------------------------------

_POOL_FN = None


def _pool_call(fp1, fp2):
    return _POOL_FN(fp1, fp2)


def assemble_sum(model, n1, n2, term_fn, reg=DEFAULT_REGISTRY, batch=64,
                 jobs=1, audit=None):
    """Sum term_fn(fp1, fp2) over all fixed-point pairs of the product of
    the n1- and n2-point Hilbert schemes.

    Deterministic pair order; partial sums renormalize every ``batch``
    terms; ``jobs`` > 1 evaluates terms in a process pool.
    """
    pairs = list(itertools.product(hilb_fixed_points(model, n1),
                                   hilb_fixed_points(model, n2)))
    if not pairs:
        return reg.zero()
    if jobs > 1:
        # term_fn is usually a closure; hand it to forked workers through a
        # module global instead of pickling it.
        global _POOL_FN
        _POOL_FN = term_fn
        try:
            with Pool(jobs) as pool:
                terms = pool.starmap(_pool_call, pairs,
                                     chunksize=max(1, len(pairs) // jobs))
        finally:
            _POOL_FN = None
    else:
        terms = [term_fn(fp1, fp2) for fp1, fp2 in pairs]
    if audit is not None:
        for (fp1, fp2), t in zip(pairs, terms):
            audit({"fixed_point": [[list(p.parts) for p in fp1.assignment],
                                   [list(p.parts) for p in fp2.assignment]],
                   "term": str(t)})
    total = reg.zero()
    for start in range(0, len(terms), batch):
        part = reg.zero()
        for t in terms[start:start + batch]:
            part = part + t
        total = total + part
    return total


# -- type II component integral --------------------------------------------

PREFACTOR_VARIANTS = ("product", "typeIIB")


@dataclass(frozen=True)
class PrefactorData:
    """Numerical inputs of the component prefactor.

    ``sign_exponent_doubled`` stores twice the sign exponent so that the
    integrality requirement stays checkable; an odd value is a hard
    error at evaluation time.
    """
    chi_L2: int
    chi_L: int
    chi_Linv: int
    sign_exponent_doubled: int
    variant: str = "product"

    @classmethod
    def from_model(cls, model, L_divisor, variant="product", alpha_pair=0):
        """Resolve the exponents from divisor arithmetic on a model.

        ``alpha_pair`` is the pairing of the twist class with the bundle
        class; it only enters the sign in the ``typeIIB`` variant.
        """
        if variant not in PREFACTOR_VARIANTS:
            raise ValueError(f"unknown prefactor variant: {variant}")
        L = model.check_divisor(L_divisor)
        kd = model.canonical_divisor()
        two_L = {k: 2 * v for k, v in L.items()}
        neg_L = {k: -v for k, v in L.items()}
        d_sq = model.pair(L, L)
        d_c1 = -model.pair(L, kd)
        doubled = d_c1 + 3 * d_sq
        if variant == "typeIIB":
            doubled += -2 * alpha_pair
        return cls(model.chi(two_L), model.chi(L), model.chi(neg_L),
                   doubled, variant)

    @classmethod
    def from_numbers(cls, chi_L2, chi_L, chi_Linv, D_sq, D_c1,
                     variant="product", alpha_pair=0):
        if variant not in PREFACTOR_VARIANTS:
            raise ValueError(f"unknown prefactor variant: {variant}")
        doubled = D_c1 + 3 * D_sq
        if variant == "typeIIB":
            doubled += -2 * alpha_pair
        return cls(chi_L2, chi_L, chi_Linv, doubled, variant)

    def value(self, reg=DEFAULT_REGISTRY):
        if self.sign_exponent_doubled % 2:
            raise ValueError("prefactor parity undefined: sign exponent "
                             f"{self.sign_exponent_doubled}/2 is not an integer")
        sign = -1 if (self.sign_exponent_doubled // 2) % 2 else 1
        minus_s = -reg.var("s")
        s_exp = self.chi_L2 + self.chi_L - self.chi_Linv
        return (reg.const(sign)
                / (reg.const(2) ** self.chi_L2 * minus_s ** s_exp))


def typeII_component_integral(model, L, K=None, n1=0, n2=0, prefactor=None,
                              reg=DEFAULT_REGISTRY, eps=None, eps_line=None,
                              batch=64, jobs=1, audit=None):
    """Contribution of one nested component, reduced to the product of
    two Hilbert schemes of points.

    The integrand at a fixed-point pair is

        top Chern part of the pair difference class
        * e(tangent_1 x L t) * e(tangent_2 x L t) * e(diff(K - 2L) t^-2)
        / ( e(diff(K - L) t^-1) * e(diff(-L) t^-1) * e(tangent_1) * e(tangent_2) )

    summed over pairs and multiplied by the prefactor.  ``eps`` optionally
    pins (e1, e2) to exact rationals for speed; the result is invariant
    under that choice whenever no weight degenerates.
    """
    L = _as_spec(L)
    if L.t_weight or L.tprime_weight:
        raise ValueError("the bundle class must be untwisted here; twists "
                         "are fixed by the integrand")
    Ld = L.divisor_map()
    kd = model.check_divisor(K) if K is not None else model.canonical_divisor()
    if prefactor is None:
        prefactor = PrefactorData.from_model(model, Ld)
    pre = prefactor.value(reg)

    m_k2l = TwistedBundleSpec.make(
        {k: kd.get(k, 0) - 2 * Ld.get(k, 0) for k in set(kd) | set(Ld)}, -2)
    m_kl = TwistedBundleSpec.make(
        {k: kd.get(k, 0) - Ld.get(k, 0) for k in set(kd) | set(Ld)}, -1)
    m_negl = TwistedBundleSpec.make({k: -v for k, v in Ld.items()}, -1)
    l_t = TwistedBundleSpec.make(Ld, 1)

    def term(fp1, fp2):
        e_cls = difference_character(fp1, fp2, None, model, reg)
        top = _maybe_specialize(chern_part(e_cls, n1 + n2), eps, eps_line)
        num = (top
               * _euler(twisted_tangent_character(fp1, l_t, model, reg),
                        eps, reg, eps_line)
               * _euler(twisted_tangent_character(fp2, l_t, model, reg),
                        eps, reg, eps_line)
               * _euler(difference_character(fp1, fp2, m_k2l, model, reg),
                        eps, reg, eps_line))
        den = (_euler(difference_character(fp1, fp2, m_kl, model, reg),
                      eps, reg, eps_line)
               * _euler(difference_character(fp1, fp2, m_negl, model, reg),
                        eps, reg, eps_line)
               * _euler(tangent_character(fp1, model, reg), eps, reg, eps_line)
               * _euler(tangent_character(fp2, model, reg), eps, reg, eps_line))
        return num / den

    total = assemble_sum(model, n1, n2, term, reg, batch, jobs, audit)
    return pre * total


def pair_euler_factor(fp1, fp2, M, a, model, reg=DEFAULT_REGISTRY, eps=None):
    """(a s)^chi(M) over the Euler class of the pair characteristic of
    (ideal 1, ideal 2 x M t^-a); a must be a nonzero integer."""
    if a == 0:
        raise ValueError("twist exponent a must be nonzero")
    spec = _as_spec(M)
    chi_m = model.chi(spec.divisor_map())
    char = chi_character(fp1, fp2, spec.twisted(dt=-a), model, reg)
    num = (reg.const(a) * reg.var("s")) ** chi_m
    return num / _euler(char, eps, reg)


# -- Mochizuki-style residue coefficients ----------------------------------

def _pair_chi_shifted(fpA, fpB, divA, divB, extra, dt, dtp, model, reg):
    """chi-character of (ideal A x divA x t'^cA, ideal B x divB x extra);
    the divisor arithmetic collapses to divB - divA + extra with uniform
    t and t' shifts."""
    dm = {}
    for k in set(divA) | set(divB) | set(extra):
        v = divB.get(k, 0) - divA.get(k, 0) + extra.get(k, 0)
        if v:
            dm[k] = v
    return chi_character(fpA, fpB, TwistedBundleSpec.make(dm, dt, dtp),
                         model, reg)


def mochizuki_integrand(fp1, fp2, Lb1, Lb2, L, p_g, model,
                        reg=DEFAULT_REGISTRY, eps=None):
    """Residue integrand at a fixed-point pair, before division by the
    tangent Euler classes.

    The value is e(V1) P e(V2 t'^2) / ((2 sp)^(n1+n2-p_g) Q) where V_i
    are the tautological characters of the twist bundles, P the Euler
    class of minus the full self-interaction characteristic of
    (ideal 1 x t'^-1 + ideal 2 x t') twisted by L t, and Q the Euler
    class of minus the two cross characteristics without the L t twist.
    """
    Lb1 = _as_spec(Lb1)
    Lb2 = _as_spec(Lb2)
    L = _as_spec(L)
    d1 = Lb1.divisor_map()
    d2 = Lb2.divisor_map()
    dl = L.divisor_map()
    n1 = fp1.total
    n2 = fp2.total

    v1 = tautological_character(fp1, Lb1, model, reg)
    if any(not any(w) for w in v1.weights):
        # a genuinely zero weight in a numerator Euler class kills the term
        return reg.zero()
    v2 = tautological_character(fp2, Lb2, model, reg).shift((0, 2, 0, 0))

    p_char = WeightCharacter(reg)
    for (fa, da, ca), (fb, db, cb) in itertools.product(
            ((fp1, d1, -1), (fp2, d2, 1)), repeat=2):
        p_char = p_char + _pair_chi_shifted(fa, fb, da, db, dl, 1, cb - ca,
                                            model, reg)
    q_char = (_pair_chi_shifted(fp1, fp2, d1, d2, {}, 0, 2, model, reg)
              + _pair_chi_shifted(fp2, fp1, d2, d1, {}, 0, -2, model, reg))

    num = _euler(v1, eps, reg) * _euler(v2, eps, reg)
    interaction = _euler(-p_char, eps, reg)
    cross = _euler(-q_char, eps, reg)
    two_sp = reg.const(2) * reg.var("sp")
    return num * interaction * cross / two_sp ** (n1 + n2 - p_g)


def mochizuki_coefficient(model, Lb1, Lb2, L, n, p_g, reg=DEFAULT_REGISTRY,
                          eps=None, batch=64, jobs=1, audit=None):
    """Sum of residues in sp of the integrand over all point splittings
    n1 + n2 = n - (twist pairing), localized over fixed-point pairs."""
    Lb1 = _as_spec(Lb1)
    Lb2 = _as_spec(Lb2)
    cross = model.pair(Lb1.divisor_map(), Lb2.divisor_map())
    budget = n - cross
    if budget < 0:
        return reg.zero()
    total = reg.zero()
    for n1 in range(budget, -1, -1):
        n2 = budget - n1

        def term(fp1, fp2):
            val = mochizuki_integrand(fp1, fp2, Lb1, Lb2, L, p_g, model,
                                      reg, eps)
            t1 = tangent_character(fp1, model, reg)
            t2 = tangent_character(fp2, model, reg)
            val = val / (_euler(t1, eps, reg)
                         * _euler(t2, eps, reg))
            return residue(val, "sp")

        total = total + assemble_sum(model, n1, n2, term, reg, batch, jobs,
                                     audit)
    return total


# -- small analysis helpers ------------------------------------------------

def pure_s_monomial(x):
    """If x = c * s^k with c rational, return (c, k); else None."""
    if x.is_zero():
        return None
    if len(x.num.terms) != 1 or len(x.den.terms) != 1:
        return None
    (en, cn), = x.num.terms.items()
    (ed, cd), = x.den.terms.items()
    if any(en[i] for i in range(1, len(en))) or any(ed[i] for i in range(1, len(ed))):
        return None
    return Fraction(cn, cd), en[0] - ed[0]
