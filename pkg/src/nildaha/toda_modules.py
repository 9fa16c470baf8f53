"""Weight modules at a fixed infinitesimal character.

A parameter nudot in t* (fundamental weight coordinates) is

* non-integral when no positive coroot pairs integrally with it, and
* regular (for the extended affine group) when w nudot - nudot is never an
  integer vector for w != 1.

Regularity implies non-integrality: a positive coroot with an integral
pairing makes its reflection move nudot by an integer multiple of the
root, which is an integer vector.

At a non-integral parameter the associated Harish-Chandra module is an
explicit weight module: one line b_{w, mu} per pair (w in W, mu in the
weight lattice), with t acting on b_{w, mu} through evaluation at
w nudot + mu (and hbar acting by 1), and e^lam shifting mu to mu + lam.
All structure constants are rational and every verification here is an
exact identity between Fractions.

The block of the parameter is its orbit under the extended affine group;
``block_id`` is a canonical representative, so equality of block ids is
equality of blocks.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import (DimensionMismatch, IntegralParameter, NotDominant,
                     NotWInvariant, ZeroScalar)
from .exact_algebra import MultiPoly, OreFactor
from .root_data import RootDatum, WeylElt, dot

Vec = Tuple[Fraction, ...]


def _as_point(datum: RootDatum, nu) -> Vec:
    v = tuple(Fraction(x) for x in nu)
    if len(v) != datum.n:
        raise DimensionMismatch(f"parameter of length {len(v)}, rank {datum.n}")
    return v


def _frac_vec(v: Sequence[Fraction]) -> Vec:
    return tuple(x - math.floor(x) for x in v)


def _is_integer_vec(v: Sequence[Fraction]) -> bool:
    return all(Fraction(x).denominator == 1 for x in v)


class InfChar:
    """Classification record of one infinitesimal character parameter."""

    __slots__ = ("datum", "nu", "orbit", "non_integral", "regular", "block_id")

    def __init__(self, datum: RootDatum, nu: Vec):
        self.datum = datum
        self.nu = _as_point(datum, nu)

        points = [w.act_dual(self.nu) for w in datum.weyl_elements]
        self.orbit: Tuple[Vec, ...] = tuple(sorted(set(points)))

        self.non_integral = all(
            dot(self.nu, r.coroot_t).denominator != 1
            for r in datum.positive_roots)

        self.regular = all(
            not _is_integer_vec(tuple(a - b for a, b in zip(p, self.nu)))
            for w, p in zip(datum.weyl_elements, points) if not w.is_identity())

        self.block_id: Vec = min(_frac_vec(p) for p in points)

    def to_json(self) -> dict:
        return {
            "type": self.datum.type_string,
            "nu": [str(x) for x in self.nu],
            "non_integral": self.non_integral,
            "regular": self.regular,
            "orbit_size": len(self.orbit),
            "weyl_order": len(self.datum.weyl_elements),
            "block_id": [str(x) for x in self.block_id],
        }


def classify_parameter(datum: RootDatum, nu) -> InfChar:
    return InfChar(datum, nu)


def same_block(datum: RootDatum, nu1, nu2) -> bool:
    """Same orbit under the extended affine group (W plus translations)."""
    a = classify_parameter(datum, nu1)
    b = classify_parameter(datum, nu2)
    return a.block_id == b.block_id


# -- the weight module -------------------------------------------------------


class HCWeightModule:
    """Weight module with lines b_{w, mu}, w in W, mu in Z^n, at hbar = 1.

    * A polynomial p in Sym(t_aff) acts on b_{w, mu} by the scalar
      p(w nudot + mu, 1).
    * The exponential e^lam maps b_{w, mu} to b_{w, mu + lam}.
    * Inverted linear factors act by the inverse scalar, which exists for
      every line exactly because the parameter is non-integral.
    """

    __slots__ = ("datum", "inf", "nu", "families")

    def __init__(self, datum: RootDatum, nu):
        inf = classify_parameter(datum, nu)
        if not inf.non_integral:
            raise IntegralParameter(
                "weight module requires a non-integral parameter")
        self.datum = datum
        self.inf = inf
        self.nu = inf.nu
        self.families: Tuple[WeylElt, ...] = datum.weyl_elements

    def weight(self, w: WeylElt, mu: Sequence[int]) -> Vec:
        base = w.act_dual(self.nu)
        return tuple(b + Fraction(int(m)) for b, m in zip(base, mu))

    def xi_scalar(self, p: MultiPoly, w: WeylElt, mu: Sequence[int]) -> Fraction:
        if p.nvars != self.datum.nvars:
            raise DimensionMismatch("polynomial variable count mismatch")
        return p.evaluate(self.weight(w, mu) + (Fraction(1),))

    def factor_scalar(self, f: OreFactor, w: WeylElt,
                      mu: Sequence[int]) -> Fraction:
        """Scalar of one denominator factor on one line; never zero."""
        s = dot(self.weight(w, mu), f.coroot) - f.shift
        if s == 0:
            raise ZeroScalar(
                f"factor {f!r} vanishes on line {(w.word, tuple(mu))}")
        return s

    def translate_action(self, lam: Sequence[int], w: WeylElt,
                         mu: Sequence[int]):
        """e^lam sends the line (w, mu) to (w, mu + lam) with scalar one."""
        return w, tuple(int(a) + int(b) for a, b in zip(mu, lam))

    def verify_line_relations(self, sample_mus: Iterable[Sequence[int]],
                              sample_lams: Iterable[Sequence[int]]) -> dict:
        """Check [xi, e^lam] = <lam, xi> e^lam line by line, exactly.

        On the line (w, mu) the relation reads
        xi(w nudot + mu + lam) - xi(w nudot + mu) = <lam, xi>,
        which is tested for every coordinate xi and hbar.
        """
        datum = self.datum
        mus = [tuple(int(x) for x in m) for m in sample_mus]
        lams = [tuple(int(x) for x in l) for l in sample_lams]
        checked = 0
        for w in self.families:
            for mu in mus:
                for lam in lams:
                    there = self.weight(w, tuple(a + b for a, b in zip(mu, lam)))
                    here = self.weight(w, mu)
                    for j in range(datum.n):
                        if there[j] - here[j] != Fraction(lam[j]):
                            return {"ok": False, "line": [list(w.word), list(mu)],
                                    "lam": list(lam), "coordinate": j,
                                    "checked": checked}
                    checked += 1
        return {"ok": True, "checked": checked}

    def central_character_report(self, invariants: Iterable[MultiPoly],
                                 sample_mus: Iterable[Sequence[int]]) -> dict:
        """Two exact statements about the center at this parameter.

        (a) Every W-invariant polynomial takes the same value on all
            generator lines (mu = 0); the common value is its value at nudot.
        (b) Every line's t-eigenvalue stays inside the block of nudot.
        """
        datum = self.datum
        inv_list = list(invariants)
        gen_ok = True
        for p in inv_list:
            base = self.xi_scalar(p, datum.weyl_identity, (0,) * datum.n)
            for w in self.families:
                if self.xi_scalar(p, w, (0,) * datum.n) != base:
                    gen_ok = False
        block_ok = True
        for w in self.families:
            for mu in sample_mus:
                wt = self.weight(w, mu)
                if classify_parameter(datum, wt).block_id != self.inf.block_id:
                    block_ok = False
        return {"generator_lines_ok": gen_ok, "block_stable_ok": block_ok,
                "invariants_checked": len(inv_list)}

    def to_json(self, sample_radius: int = 1) -> dict:
        datum = self.datum
        fams = []
        for w in self.families:
            fams.append({
                "w": list(w.word),
                "eigenvalue": [str(x) for x in self.weight(w, (0,) * datum.n)],
            })
        return {
            "type": datum.type_string,
            "nu": [str(x) for x in self.nu],
            "hbar": "1",
            "families": fams,
            "lattice_rank": datum.n,
            "classification": self.inf.to_json(),
        }


def hc_weight_module(datum: RootDatum, nu) -> HCWeightModule:
    return HCWeightModule(datum, nu)


# -- simplicity ---------------------------------------------------------------


def simplicity_certificate(datum: RootDatum, nu) -> dict:
    """Certify simplicity by pairwise support disjointness of the families.

    The module decomposes over lines indexed by W; two families can be
    linked by the exponential lattice action only when their eigenvalue
    cosets w nudot + Z^n coincide.  Disjointness of all pairs is therefore
    a simplicity certificate, and it fails exactly on the pairs listed.
    """
    inf = classify_parameter(datum, nu)
    if not inf.non_integral:
        raise IntegralParameter(
            "the certificate applies to non-integral parameters")
    points = [w.act_dual(inf.nu) for w in datum.weyl_elements]
    violations = []
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            diff = tuple(a - b for a, b in zip(points[i], points[j]))
            if _is_integer_vec(diff):
                violations.append({
                    "w1": list(datum.weyl_elements[i].word),
                    "w2": list(datum.weyl_elements[j].word),
                    "difference": [str(x) for x in diff],
                })
    return {
        "type": datum.type_string,
        "nu": [str(x) for x in inf.nu],
        "pairs_checked": len(points) * (len(points) - 1) // 2,
        "violations": violations,
        "simple_certified": not violations,
        "regular": inf.regular,
    }


# -- scalars of localized denominators ---------------------------------------


def scalar_of_ore_denominator(datum: RootDatum, nu, u) -> Fraction:
    """Value at (nudot, hbar=1) of a W-invariant localized denominator.

    ``u`` is either a polynomial in Sym(t_aff) or an iterable of
    denominator factors, multiplied out.  The polynomial must be invariant
    under the finite Weyl group (W acts on t and fixes hbar); otherwise
    the scalar would depend on the family line and NotWInvariant is
    raised.  A vanishing value raises ZeroScalar, since the element must
    stay invertible on the module.
    """
    point = _as_point(datum, nu)
    if isinstance(u, MultiPoly):
        poly = u
    else:
        poly = MultiPoly.one(datum.nvars)
        for f in u:
            if not isinstance(f, OreFactor):
                raise TypeError("expected OreFactor entries")
            poly = poly * f.as_poly(datum.nvars)
    if poly.nvars != datum.nvars:
        raise DimensionMismatch("polynomial variable count mismatch")
    for i in datum.ss_coords:
        g = datum.from_weyl(datum.simple_reflections[i])
        if g.act_poly(poly) != poly:
            raise NotWInvariant("denominator product is not Weyl invariant")
    value = poly.evaluate(point + (Fraction(1),))
    if value == 0:
        raise ZeroScalar("denominator vanishes at the parameter")
    return value


# -- the degree bi-invariant ---------------------------------------------------


def kazhdan_degree_bi_invariant(datum: RootDatum, lam) -> int:
    """Degree shift of the regrading attached to a dominant integral weight.

    The value is -<lam, 4 rho_check>; it is the unique group homomorphism
    on the dominant cone matching the filtration bookkeeping of the
    two-parameter windows.
    """
    v = tuple(int(x) if Fraction(x).denominator == 1 else None for x in lam)
    if None in v or len(v) != datum.n:
        raise NotDominant("weight must be integral of full length")
    if not datum.is_dominant(v):
        raise NotDominant(f"{v} is not dominant")
    four_rho = tuple(4 * x for x in datum.rho_check)
    value = -dot(v, four_rho)
    if value.denominator != 1:
        raise NotDominant("pairing with 4 rho_check must be integral")
    return int(value)
