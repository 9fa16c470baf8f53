"""The degenerate nil affine Hecke algebra acting on Sym(t_aff).

Elements are finite sums  sum_g  c_g * g  with g in the extended affine
Weyl group and coefficients c_g on the LEFT, living in the localization of
Sym(t_aff) along the linear factors (coroot - shift*hbar).  The product is
the smash product rule

    (c1 * g1)(c2 * g2) = (c1 * g1(c2)) * (g1 g2),

where g1 acts on coefficients through its linear action on t_aff.

Generators:

* polynomials (the commutative subalgebra Sym(t_aff)),
* group elements w and translations t_mu,
* Demazure elements theta_a = (1/acheck_a) s_a - (1/acheck_a) attached to
  the affine simple roots; their squares vanish and alternating products
  satisfy the braid relations of the affine Coxeter diagram,
* the averaging idempotent of the finite Weyl group.

``verify_presentation`` certifies the defining relations both as algebra
elements and as operators on a truncated polynomial module.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple, Union

from .errors import (DatumMismatch, DenominatorNotCleared, DenominatorVanishes,
                     DimensionMismatch, LevelMismatch)
from .exact_algebra import MultiPoly, OreFactor, OreFraction
from .root_data import AffineSimpleRoot, ExtAffineElt, RootDatum, WeylElt

Level = Optional[Fraction]


def _specialize_poly(p: MultiPoly, level: Fraction) -> MultiPoly:
    """Substitute hbar (the last variable) by the numeric level."""
    n = p.nvars - 1
    images = [MultiPoly.variable(p.nvars, i) for i in range(n)]
    images.append(MultiPoly.constant(p.nvars, level))
    return p.substitute(images)


def _act_poly(g: ExtAffineElt, p: MultiPoly, level: Level) -> MultiPoly:
    """Group action on a coefficient polynomial at the given level.

    At a numeric level the translation part contributes constants rather
    than hbar terms, so the action is followed by the substitution that
    keeps numerators free of the hbar variable.
    """
    q = g.act_poly(p)
    if level is not None and not q.is_zero():
        q = _specialize_poly(q, level)
    return q


def _act_fraction(g: ExtAffineElt, frac: OreFraction, level: Level) -> OreFraction:
    num = _act_poly(g, frac.num, level)
    den = []
    for f in frac.den:
        sign, image = g.act_ore_factor(f)
        if sign < 0:
            num = -num
        den.append(image)
    return OreFraction(num, den, level)


class DahaElt:
    """Finite sum of group elements with left localized coefficients."""

    __slots__ = ("datum", "level", "terms", "_hash")

    def __init__(self, datum: RootDatum, terms: Mapping[ExtAffineElt, OreFraction],
                 level: Level = None):
        lvl = None if level is None else Fraction(level)
        clean: Dict[ExtAffineElt, OreFraction] = {}
        for g, c in terms.items():
            if g.datum is not datum:
                raise DatumMismatch("group element from a different datum")
            if c.level != lvl:
                raise LevelMismatch(f"coefficient level {c.level}, element level {lvl}")
            if c.nvars != datum.nvars:
                raise DimensionMismatch("coefficient variable count mismatch")
            if not c.is_zero():
                clean[g] = c
        object.__setattr__(self, "datum", datum)
        object.__setattr__(self, "level", lvl)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, datum: RootDatum, level: Level = None) -> "DahaElt":
        return cls(datum, {}, level)

    @classmethod
    def one(cls, datum: RootDatum, level: Level = None) -> "DahaElt":
        return cls(datum, {datum.identity_ext():
                           OreFraction.one(datum.nvars, level)}, level)

    # -- structure -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "DahaElt"):
        if other.datum is not self.datum:
            raise DatumMismatch("mixing elements over different root data")
        if other.level != self.level:
            raise LevelMismatch(f"levels {self.level} and {other.level}")

    def _promote(self, other) -> Optional["DahaElt"]:
        if isinstance(other, DahaElt):
            return other
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(self.datum.nvars, other)
        if isinstance(other, MultiPoly):
            if self.level is not None:
                other = _specialize_poly(other, self.level)
            return DahaElt(self.datum,
                           {self.datum.identity_ext():
                            OreFraction.from_poly(other, self.level)},
                           self.level)
        if isinstance(other, OreFraction):
            return DahaElt(self.datum, {self.datum.identity_ext(): other},
                           self.level)
        return None

    def __add__(self, other):
        other = self._promote(other)
        if other is None:
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for g, c in other.terms.items():
            s = out.get(g)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(g, None)
            else:
                out[g] = s
        return DahaElt(self.datum, out, self.level)

    __radd__ = __add__

    def __neg__(self):
        return DahaElt(self.datum, {g: -c for g, c in self.terms.items()},
                       self.level)

    def __sub__(self, other):
        other = self._promote(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._promote(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._promote(other)
        if other is None:
            return NotImplemented
        self._check(other)
        out: Dict[ExtAffineElt, OreFraction] = {}
        for g1, c1 in self.terms.items():
            for g2, c2 in other.terms.items():
                coeff = c1 * _act_fraction(g1, c2, self.level)
                if coeff.is_zero():
                    continue
                g = g1 * g2
                s = out.get(g)
                s = coeff if s is None else s + coeff
                if s.is_zero():
                    out.pop(g, None)
                else:
                    out[g] = s
        return DahaElt(self.datum, out, self.level)

    def __rmul__(self, other):
        other = self._promote(other)
        if other is None:
            return NotImplemented
        return other * self

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out = DahaElt.one(self.datum, self.level)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, MultiPoly, OreFraction)):
            other = self._promote(other)
        if not isinstance(other, DahaElt):
            return NotImplemented
        return (self.datum is other.datum and self.level == other.level
                and self.terms == other.terms)

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.datum.type_string, self.level,
                      frozenset(self.terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    # -- the polynomial module --------------------------------------------

    def act_poly(self, p: MultiPoly) -> MultiPoly:
        """Apply the element to a polynomial in Sym(t_aff).

        The group acts by its linear action, coefficients multiply, and
        every denominator must cancel in the total; a surviving denominator
        raises DenominatorNotCleared.
        """
        if p.nvars != self.datum.nvars:
            raise DimensionMismatch("polynomial variable count mismatch")
        if self.level is not None:
            p = _specialize_poly(p, self.level)
        total = OreFraction.zero(self.datum.nvars, self.level)
        for g, c in self.terms.items():
            total = total + c * _act_poly(g, p, self.level)
        if not total.is_polynomial():
            raise DenominatorNotCleared(
                "element does not preserve the polynomial module")
        return total.num

    def render(self) -> str:
        if not self.terms:
            return "0"
        names = self.datum.variable_names
        pieces = []
        for g in sorted(self.terms, key=lambda g: (g.mu, g.w.word)):
            c = self.terms[g]
            group = []
            if any(g.mu):
                group.append(f"t{list(g.mu)}")
            if g.w.word:
                group.append("*".join(f"s{i}" for i in g.w.word))
            gtxt = "*".join(group) if group else "1"
            pieces.append(f"[{c.render(names)}] {gtxt}")
        return "  +  ".join(pieces)

    def __repr__(self):
        return f"DahaElt({self.render()})"


# -- generators --------------------------------------------------------------


def _theta(datum: RootDatum, a: AffineSimpleRoot, level: Level) -> DahaElt:
    n = datum.n
    scale, factor = OreFactor.from_linear(a.coroot_taff[:n], a.coroot_taff[n])
    inv = OreFraction(MultiPoly.constant(datum.nvars, Fraction(1, 1) / scale),
                      (factor,), level)
    return DahaElt(datum, {a.word: inv, datum.identity_ext(): -inv}, level)


def daha_generator(datum: RootDatum, kind: str, data=None,
                   level: Level = None) -> DahaElt:
    """Build one generator: poly, weyl, translate, theta, or idempotent."""
    if kind == "poly":
        if isinstance(data, (int, Fraction)):
            data = MultiPoly.constant(datum.nvars, data)
        if not isinstance(data, MultiPoly):
            raise TypeError("poly generator needs a MultiPoly or scalar")
        if data.nvars != datum.nvars:
            raise DimensionMismatch("polynomial variable count mismatch")
        if level is not None:
            data = _specialize_poly(data, Fraction(level))
        return DahaElt(datum, {datum.identity_ext():
                               OreFraction.from_poly(data, level)}, level)
    if kind == "weyl":
        if isinstance(data, WeylElt):
            w = data
        else:
            w = datum.weyl_from_word(tuple(data))
        return DahaElt(datum, {datum.from_weyl(w):
                               OreFraction.one(datum.nvars, level)}, level)
    if kind == "translate":
        g = datum.translation(tuple(int(x) for x in data))
        return DahaElt(datum, {g: OreFraction.one(datum.nvars, level)}, level)
    if kind == "theta":
        return _theta(datum, datum.affine_simple(int(data)), level)
    if kind == "idempotent":
        order = Fraction(1, len(datum.weyl_elements))
        coeff = OreFraction.from_poly(
            MultiPoly.constant(datum.nvars, order), level)
        return DahaElt(datum, {datum.from_weyl(w): coeff
                               for w in datum.weyl_elements}, level)
    raise ValueError(f"unknown generator kind {kind!r}")


def daha_mul(a: DahaElt, b: DahaElt) -> DahaElt:
    return a * b


def daha_act_poly(x: DahaElt, p: MultiPoly) -> MultiPoly:
    return x.act_poly(p)


def spherical_idempotent(datum: RootDatum, level: Level = None) -> DahaElt:
    return daha_generator(datum, "idempotent", level=level)


def spherical_project(x: DahaElt) -> DahaElt:
    """Two sided compression e x e onto the spherical corner."""
    e = spherical_idempotent(x.datum, x.level)
    return e * x * e


# -- specialization and grading ----------------------------------------------


def specialize_hbar(x: DahaElt, c) -> DahaElt:
    """Evaluate the Rees parameter at the rational value c.

    At c = 0 the localized denominators leave the allowed multiplicative
    set, so only elements with polynomial coefficients specialize there.
    """
    if x.level is not None:
        raise LevelMismatch("element is already specialized")
    c = Fraction(c)
    out: Dict[ExtAffineElt, OreFraction] = {}
    for g, frac in x.terms.items():
        if c == 0 and frac.den:
            raise DenominatorVanishes(
                "denominators do not survive specialization at zero")
        num = _specialize_poly(frac.num, c)
        out[g] = OreFraction(num, frac.den, c)
    return DahaElt(x.datum, out, c)


def degree_decompose(x: DahaElt) -> Dict[int, DahaElt]:
    """Split a graded (level None) element into homogeneous components.

    The grading gives every element of t_aff degree one and the group
    degree zero; denominator factors are homogeneous of degree one, so a
    fraction with k factors and a homogeneous numerator of degree d sits
    in degree d - k.  The components sum back to the element.
    """
    if x.level is not None:
        raise LevelMismatch("grading requires the generic level")
    buckets: Dict[int, Dict[ExtAffineElt, OreFraction]] = {}
    for g, frac in x.terms.items():
        k = len(frac.den)
        for d, piece in frac.num.homogeneous_components().items():
            buckets.setdefault(d - k, {}).setdefault(g, OreFraction.zero(x.datum.nvars))
            buckets[d - k][g] = buckets[d - k][g] + OreFraction(piece, frac.den)
    return {d: DahaElt(x.datum, terms) for d, terms in sorted(buckets.items())}


# -- presentation verification -------------------------------------------


def _alternating(a: DahaElt, b: DahaElt, m: int) -> DahaElt:
    out = DahaElt.one(a.datum, a.level)
    for k in range(m):
        out = out * (a if k % 2 == 0 else b)
    return out


def _monomial_basis(nvars: int, max_degree: int):
    def rec(prefix, remaining, slots):
        if slots == 0:
            yield tuple(prefix)
            return
        for k in range(remaining + 1):
            yield from rec(prefix + [k], remaining - k, slots - 1)
    out = []
    for e in rec([], max_degree, nvars):
        out.append(MultiPoly(nvars, {e: 1}))
    return out


def _check_relation(datum: RootDatum, lhs: DahaElt, rhs: DahaElt,
                    basis) -> Tuple[bool, bool]:
    element_ok = (lhs - rhs).is_zero()
    module_ok = True
    for p in basis:
        if lhs.act_poly(p) != rhs.act_poly(p):
            module_ok = False
            break
    return element_ok, module_ok


def verify_presentation(datum: RootDatum, max_degree: int = 3,
                        level: Level = None, threads: int = 1) -> dict:
    """Certify the defining relations of the algebra.

    Checks, for every affine simple root a (and pair a, b):

    * square:      theta_a^2 = 0,
    * braid:       alternating products of length m(a, b) agree when the
                   bond order is finite,
    * commutation: theta_a s_a(h) - h theta_a = <alpha_a, h> for h running
                   over the coordinate basis of t_aff,
    * conjugation: s_i h s_i = s_i(h) for finite simple reflections.

    Every relation is checked twice: as an identity between elements and
    as operators on all monomials of degree at most max_degree.  The
    report lists each relation with both verdicts.
    """
    basis = _monomial_basis(datum.nvars, max_degree)
    thetas = {a.index: daha_generator(datum, "theta", a.index, level)
              for a in datum.affine_simples}
    coords = []
    for i in range(datum.n):
        coords.append(MultiPoly.variable(datum.nvars, i))
    hbar_poly = (MultiPoly.variable(datum.nvars, datum.n) if level is None
                 else MultiPoly.constant(datum.nvars, level))
    coords.append(hbar_poly)

    jobs = []

    for a in datum.affine_simples:
        th = thetas[a.index]
        jobs.append(("square", (a.index,), th * th, DahaElt.zero(datum, level)))

    for a, b in combinations(datum.affine_simples, 2):
        m = datum.coxeter_m(a, b)
        if m is None:
            continue
        lhs = _alternating(thetas[a.index], thetas[b.index], m)
        rhs = _alternating(thetas[b.index], thetas[a.index], m)
        jobs.append(("braid", (a.index, b.index, m), lhs, rhs))

    for a in datum.affine_simples:
        th = thetas[a.index]
        for j, h in enumerate(coords):
            moved = a.word.act_poly(h)
            if level is not None:
                moved = _specialize_poly(moved, level)
            pairing = a.pair_taff(
                [h.coefficient(tuple(1 if t == s else 0
                                     for t in range(datum.nvars)))
                 for s in range(datum.nvars)])
            lhs = th * daha_generator(datum, "poly", moved, level) \
                - daha_generator(datum, "poly", h, level) * th
            rhs = daha_generator(
                datum, "poly",
                MultiPoly.constant(datum.nvars, pairing), level)
            jobs.append(("commutation", (a.index, j), lhs, rhs))

    for i in datum.ss_coords:
        s = daha_generator(datum, "weyl", (i,), level)
        for j, h in enumerate(coords):
            w = datum.from_weyl(datum.simple_reflections[i])
            moved = _act_poly(w, h, level)
            lhs = s * daha_generator(datum, "poly", h, level) * s
            rhs = daha_generator(datum, "poly", moved, level)
            jobs.append(("conjugation", (i, j), lhs, rhs))

    def run(job):
        kind, indices, lhs, rhs = job
        element_ok, module_ok = _check_relation(datum, lhs, rhs, basis)
        return {"kind": kind, "indices": list(indices),
                "element_ok": element_ok, "module_ok": module_ok}

    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run, jobs))
    else:
        results = [run(job) for job in jobs]

    return {
        "type": datum.type_string,
        "max_degree": max_degree,
        "level": None if level is None else str(level),
        "relations": results,
        "all_ok": all(r["element_ok"] and r["module_ok"] for r in results),
    }
