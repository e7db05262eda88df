"""Toric surface models: fixed-point weights, line bundle data, cohomology.

A model is one or more complete smooth fan components.  Each torus fixed
point is a two dimensional cone; its chart carries a pair of tangent weight
forms (w1, w2) in the deformation parameters (e1, e2).  Weight convention,
fixed once and validated by the oracles in ``validate_model``:

- a character chi^m contributes the additive weight -(m0*e1 + m1*e2);
- tangent weights at a cone are the dual basis forms of the cone;
- the fiber weight of O(D) at a fixed point is -m_p(D), where m_p(D) is
  the local trivializing character of D on that cone.

Divisor classes are maps from basis divisor names to integers.  Disjoint
unions concatenate everything blockwise, reusing the same (e1, e2) pair
for every component; that specialization keeps all localization
denominators nonzero because no character ever mixes components.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources


@dataclass(frozen=True)
class SurfaceChernData:
    """Chern numbers of the model surface."""
    c1_sq: int
    c2: int
    chi_O: int


@dataclass(frozen=True)
class FixedPointChart:
    """One torus fixed point: component and cone indices plus tangent
    weight forms, each a coefficient pair over (e1, e2)."""
    component: int
    cone: int
    w1: tuple
    w2: tuple


class _FanComponent:
    """One connected complete smooth fan with its ray divisor data."""

    __slots__ = ("rays", "cones", "ray_coeffs")

    def __init__(self, rays, cones, ray_coeffs):
        self.rays = [tuple(r) for r in rays]
        self.cones = [tuple(c) for c in cones]
        # basis divisor name -> per-ray integer coefficients
        self.ray_coeffs = {k: tuple(v) for k, v in ray_coeffs.items()}


def _solve2(v1, v2, b1, b2):
    """Solve m·v1 = b1, m·v2 = b2 for m, exactly."""
    det = v1[0] * v2[1] - v1[1] * v2[0]
    if det == 0:
        raise ValueError("degenerate cone")
    x = Fraction(b1 * v2[1] - b2 * v1[1], det)
    y = Fraction(v1[0] * b2 - v2[0] * b1, det)
    return x, y


def _as_int_pair(x, y):
    if x.denominator != 1 or y.denominator != 1:
        raise ValueError("non-integral weight; fan is not smooth")
    return (int(x), int(y))


class ToricSurfaceModel:
    """Localization target data for one or more toric surface components."""

    def __init__(self, name, components, fixed_points, basis, pairing,
                 canonical, chern):
        self.name = name
        self.components = components
        self.fixed_points = fixed_points
        self.basis = tuple(basis)
        self.pairing = {k: dict(v) for k, v in pairing.items()}
        self.canonical = dict(canonical)
        self.chern = chern
        self._bundle_cache = {}
        self._coh_cache = {}

    # -- construction ------------------------------------------------------

    @classmethod
    def from_fan(cls, name, rays, ray_coeffs, pairing, canonical, chern):
        """Build a one-component model; cones are consecutive ray pairs,
        rays listed counterclockwise."""
        n = len(rays)
        cones = [(i, (i + 1) % n) for i in range(n)]
        comp = _FanComponent(rays, cones, ray_coeffs)
        fps = []
        for ci, (i, j) in enumerate(cones):
            m1 = _as_int_pair(*_solve2(rays[i], rays[j], 1, 0))
            m2 = _as_int_pair(*_solve2(rays[i], rays[j], 0, 1))
            fps.append(FixedPointChart(0, ci, m1, m2))
        return cls(name, [comp], fps, sorted(ray_coeffs), pairing, canonical,
                   chern)

    @property
    def euler_char(self):
        return len(self.fixed_points)

    # -- divisor arithmetic ------------------------------------------------

    def divisor(self, **coeffs):
        unknown = set(coeffs) - set(self.basis)
        if unknown:
            raise ValueError(f"unknown basis divisors: {sorted(unknown)}")
        return {k: int(v) for k, v in coeffs.items() if v}

    def check_divisor(self, d):
        unknown = set(d) - set(self.basis)
        if unknown:
            raise ValueError(f"divisor outside the model lattice: "
                             f"{sorted(unknown)}")
        return {k: int(v) for k, v in d.items() if v}

    def pair(self, d1, d2):
        d1 = self.check_divisor(d1)
        d2 = self.check_divisor(d2)
        total = 0
        for k1, c1 in d1.items():
            row = self.pairing.get(k1, {})
            for k2, c2 in d2.items():
                total += c1 * c2 * row.get(k2, 0)
        return total

    def canonical_divisor(self):
        return dict(self.canonical)

    def chi(self, d):
        """Euler characteristic of O(d) by Riemann-Roch."""
        k = self.canonical_divisor()
        return self.chern.chi_O + (self.pair(d, d) - self.pair(d, k)) // 2

    # -- per-fixed-point weights -------------------------------------------

    def tangent_weights(self, i):
        fp = self.fixed_points[i]
        return fp.w1, fp.w2

    def bundle_weight(self, d, i):
        """Fiber weight form of O(d) at fixed point i, over (e1, e2)."""
        d = self.check_divisor(d)
        w = (0, 0)
        for k, c in d.items():
            bw = self._basis_bundle_weight(k, i)
            w = (w[0] + c * bw[0], w[1] + c * bw[1])
        return w

    def _basis_bundle_weight(self, k, i):
        key = (k, i)
        cached = self._bundle_cache.get(key)
        if cached is not None:
            return cached
        fp = self.fixed_points[i]
        comp = self.components[fp.component]
        coeffs = comp.ray_coeffs.get(k)
        if coeffs is None:
            w = (0, 0)
        else:
            r1, r2 = comp.cones[fp.cone]
            m = _solve2(comp.rays[r1], comp.rays[r2], -coeffs[r1], -coeffs[r2])
            mp = _as_int_pair(*m)
            w = (-mp[0], -mp[1])
        self._bundle_cache[key] = w
        return w

    # -- sheaf cohomology --------------------------------------------------

    def cohomology_character(self, d):
        """Weight form -> multiplicity for the full cohomology of O(d).

        H^0 and H^2 lattice points count +1, an H^1 point with c failing
        arcs counts -(c-1); the alternating-sum rank equals chi(d).
        """
        d = self.check_divisor(d)
        key = tuple(sorted(d.items()))
        cached = self._coh_cache.get(key)
        if cached is not None:
            return dict(cached)
        out = {}
        for comp in self.components:
            coeffs = [0] * len(comp.rays)
            for k, c in d.items():
                rc = comp.ray_coeffs.get(k)
                if rc is not None:
                    for r in range(len(coeffs)):
                        coeffs[r] += c * rc[r]
            for (m, mult) in _lattice_cohomology(comp.rays, coeffs):
                w = (-m[0], -m[1])
                n = out.get(w, 0) + mult
                if n:
                    out[w] = n
                else:
                    del out[w]
        self._coh_cache[key] = dict(out)
        return out

    # -- composition -------------------------------------------------------

    def disjoint_union(self, other, prefixes=("a.", "b.")):
        """Blockwise union; basis names get the given prefixes."""
        pa, pb = prefixes

        def relabel(model, prefix, comp_offset):
            comps = [_FanComponent(c.rays, c.cones,
                                   {prefix + k: v for k, v in c.ray_coeffs.items()})
                     for c in model.components]
            fps = [FixedPointChart(fp.component + comp_offset, fp.cone,
                                   fp.w1, fp.w2)
                   for fp in model.fixed_points]
            basis = [prefix + k for k in model.basis]
            pairing = {prefix + k1: {prefix + k2: v for k2, v in row.items()}
                       for k1, row in model.pairing.items()}
            canonical = {prefix + k: v for k, v in model.canonical.items()}
            return comps, fps, basis, pairing, canonical

        ca, fa, ba, paira, kana = relabel(self, pa, 0)
        cb, fb, bb, pairb, kanb = relabel(other, pb, len(self.components))
        chern = SurfaceChernData(self.chern.c1_sq + other.chern.c1_sq,
                                 self.chern.c2 + other.chern.c2,
                                 self.chern.chi_O + other.chern.chi_O)
        pairing = {**paira, **pairb}
        return ToricSurfaceModel(f"{self.name}+{other.name}", ca + cb, fa + fb,
                                 ba + bb, pairing, {**kana, **kanb}, chern)

    # -- serialization -----------------------------------------------------

    def to_json(self):
        if len(self.components) != 1:
            raise ValueError("only one-component models serialize to presets")
        comp = self.components[0]
        return {
            "name": self.name,
            "fixed_points": [{"w1": list(fp.w1), "w2": list(fp.w2)}
                             for fp in self.fixed_points],
            "bundles": {k: {"weights": [list(self.bundle_weight({k: 1}, i))
                                        for i in range(self.euler_char)]}
                        for k in self.basis},
            "chern": {"c1_sq": self.chern.c1_sq, "c2": self.chern.c2,
                      "chi_O": self.chern.chi_O},
            "pairing": {k1: dict(row) for k1, row in self.pairing.items()},
            "canonical": dict(self.canonical),
            "fan": {"rays": [list(r) for r in comp.rays],
                    "cones": [list(c) for c in comp.cones],
                    "ray_coeffs": {k: list(v) for k, v in
                                   comp.ray_coeffs.items()}},
        }

    @classmethod
    def from_json(cls, data):
        fan = data["fan"]
        comp = _FanComponent(fan["rays"], fan["cones"], fan["ray_coeffs"])
        fps = []
        for ci, fp in enumerate(data["fixed_points"]):
            w1, w2 = tuple(fp["w1"]), tuple(fp["w2"])
            i, j = comp.cones[ci]
            m1 = _as_int_pair(*_solve2(comp.rays[i], comp.rays[j], 1, 0))
            m2 = _as_int_pair(*_solve2(comp.rays[i], comp.rays[j], 0, 1))
            if (w1, w2) != (m1, m2):
                raise ValueError(f"preset {data['name']}: stored weights at "
                                 f"point {ci} disagree with cone {comp.cones[ci]}")
            fps.append(FixedPointChart(0, ci, w1, w2))
        chern = SurfaceChernData(**data["chern"])
        model = cls(data["name"], [comp], fps, sorted(data["bundles"]),
                    data["pairing"], data["canonical"], chern)
        # stored bundle weights double as a consistency check on the fan
        for k, rec in data["bundles"].items():
            for i, w in enumerate(rec["weights"]):
                if tuple(w) != model.bundle_weight({k: 1}, i):
                    raise ValueError(f"preset {data['name']}: stored weight of "
                                     f"{k} at point {i} disagrees with its fan")
        return model


PRESET_NAMES = ("plane", "quadric", "hirzebruch1", "hirzebruch2", "hirzebruch3")


def preset_path(name):
    env = os.environ.get("DT4_PRESET_DIR")
    if env:
        p = os.path.join(env, f"{name}.json")
        if os.path.exists(p):
            return p
    return None


def from_preset(name):
    """Load a packaged or DT4_PRESET_DIR surface model by name."""
    p = preset_path(name)
    if p:
        with open(p, encoding="utf-8") as fh:
            return ToricSurfaceModel.from_json(json.load(fh))
    try:
        blob = (resources.files("dt4") / "presets" / f"{name}.json").read_text()
    except FileNotFoundError:
        raise ValueError(f"unknown surface preset: {name}") from None
    return ToricSurfaceModel.from_json(json.loads(blob))


# -- lattice-point cohomology ----------------------------------------------

def _lattice_cohomology(rays, coeffs):
    """Cohomology weights of O(sum coeffs[r] * D_r) on a complete smooth
    surface fan, as (lattice point, signed multiplicity) pairs.

    For each lattice point m the rays with <m, v> < -a fail; no failures
    is an H^0 point, all failing is H^2, and c >= 2 circular arcs of
    failures contribute H^1 with multiplicity c - 1 (sign -1 in the
    alternating sum).  Only finitely many points have c != 1 and they lie
    within the bounding box of the pairwise line intersections.
    """
    n = len(rays)
    xs, ys = [Fraction(0)], [Fraction(0)]
    for i in range(n):
        for j in range(i + 1, n):
            try:
                x, y = _solve2(rays[i], rays[j], -coeffs[i], -coeffs[j])
            except ValueError:
                continue
            xs.append(x)
            ys.append(y)
    x0, x1 = int(min(xs)) - 2, int(max(xs)) + 2
    y0, y1 = int(min(ys)) - 2, int(max(ys)) + 2
    out = []
    for mx in range(x0, x1 + 1):
        for my in range(y0, y1 + 1):
            fails = [mx * v[0] + my * v[1] < -a for v, a in zip(rays, coeffs)]
            nf = sum(fails)
            if nf == 0:
                out.append(((mx, my), 1))
            elif nf == n:
                out.append(((mx, my), 1))
            else:
                arcs = sum(1 for r in range(n)
                           if fails[r] and not fails[(r - 1) % n])
                if arcs > 1:
                    out.append(((mx, my), -(arcs - 1)))
    return out


# -- validation oracles ----------------------------------------------------

def validate_model(model, divisor_box=2):
    """Cross-check a model's declared data against independent routes.

    Raises AssertionError with a diagnostic on any mismatch.  Checks:
    Noether's formula, Euler characteristic vs fixed points, trivial
    bundle cohomology, Riemann-Roch ranks vs lattice cohomology, Serre
    duality at character level, and the declared pairing matrix against
    equivariant localization with specialized weights.
    """
    ch = model.chern
    assert 12 * ch.chi_O == ch.c1_sq + ch.c2, \
        f"{model.name}: Noether fails: 12*{ch.chi_O} != {ch.c1_sq}+{ch.c2}"
    assert model.euler_char == ch.c2, \
        f"{model.name}: fixed point count {model.euler_char} != c2 {ch.c2}"
    kd = model.canonical_divisor()
    assert model.pair(kd, kd) == ch.c1_sq, \
        f"{model.name}: K.K {model.pair(kd, kd)} != c1_sq {ch.c1_sq}"

    triv = model.cohomology_character({})
    assert triv == {(0, 0): len(model.components)}, \
        f"{model.name}: cohomology of O is {triv}"

    div_iter = _divisor_samples(model, divisor_box)
    eps = (Fraction(97, 89), Fraction(-61, 53))
    for d in div_iter:
        coh = model.cohomology_character(d)
        rank = sum(coh.values())
        assert rank == model.chi(d), \
            f"{model.name}: rank {rank} != chi {model.chi(d)} for {d}"
        # character-level Serre duality per component, with the canonical
        # linearization a_r = -1 on every ray
        for comp in model.components:
            coeffs = [0] * len(comp.rays)
            for k, c in d.items():
                rc = comp.ray_coeffs.get(k)
                if rc is not None:
                    for r in range(len(coeffs)):
                        coeffs[r] += c * rc[r]
            here = {}
            for m, mult in _lattice_cohomology(comp.rays, coeffs):
                here[m] = here.get(m, 0) + mult
            dual = {}
            for m, mult in _lattice_cohomology(comp.rays,
                                               [-1 - c for c in coeffs]):
                dual[m] = dual.get(m, 0) + mult
            conj = {(-m[0], -m[1]): v for m, v in here.items() if v}
            dual = {m: v for m, v in dual.items() if v}
            assert dual == conj, f"{model.name}: Serre duality fails for {d}"

    for k1 in model.basis:
        for k2 in model.basis:
            total = Fraction(0)
            for i in range(model.euler_char):
                w1, w2 = model.tangent_weights(i)
                den = ((w1[0] * eps[0] + w1[1] * eps[1])
                       * (w2[0] * eps[0] + w2[1] * eps[1]))
                b1 = model.bundle_weight({k1: 1}, i)
                b2 = model.bundle_weight({k2: 1}, i)
                num = ((b1[0] * eps[0] + b1[1] * eps[1])
                       * (b2[0] * eps[0] + b2[1] * eps[1]))
                total += num / den
            expected = model.pair({k1: 1}, {k2: 1})
            assert total == expected, \
                f"{model.name}: localized {k1}.{k2} = {total} != {expected}"


def _divisor_samples(model, box):
    names = model.basis[:2]
    out = []
    if len(names) == 1:
        for a in range(-box, box + 1):
            out.append({names[0]: a})
    else:
        for a in range(-box, box + 1):
            for b in range(-box, box + 1):
                out.append({names[0]: a, names[1]: b})
    return [model.check_divisor(d) for d in out]
