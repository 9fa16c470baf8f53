"""Difference operators on the torus and their Hecke realization.

``DtElt`` models the algebra generated by exponentials e^mu (mu in the
weight lattice X, integer vectors in t* coordinates) and Sym(t_aff), with
coefficients kept on the RIGHT of the exponentials and the exchange rule

    p * e^lam = e^lam * shift_lam(p),   shift_lam(xi) = xi + <lam, xi> hbar

for xi in t.  At hbar = 1 this is the classical relation
[xi, e^lam] = <lam, xi> e^lam of invariant differential operators.

``dt_embed_daha`` sends e^mu to the translation t_mu and Sym to Sym; with
the fixed action conventions this is an injective algebra homomorphism,
and compressing by the Weyl averaging idempotent realizes the invariant
subalgebra inside the spherical corner.

``Sublattice`` supports isogeny bookkeeping: restricting exponents to a
finite index subgroup of X picks out the difference operators of a
quotient torus.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Mapping, Optional, Sequence, Tuple

from .errors import (DatumMismatch, DimensionMismatch, LevelMismatch,
                     NotWInvariant)
from .exact_algebra import MultiPoly, OreFactor
from .nil_daha import DahaElt
from .root_data import RootDatum, WeylElt, dot

Level = Optional[Fraction]
IVec = Tuple[int, ...]


def _shift_images(datum: RootDatum, lam: IVec, level: Level):
    """Variable images of shift_lam on Sym(t_aff)."""
    n = datum.n
    images = []
    for j in range(n):
        coeffs = [Fraction(0)] * (n + 1)
        coeffs[j] = Fraction(1)
        if level is None:
            coeffs[n] = Fraction(lam[j])
            images.append(MultiPoly.linear(coeffs))
        else:
            images.append(MultiPoly.linear(coeffs, Fraction(lam[j]) * level))
    images.append(MultiPoly.variable(n + 1, n))
    return images


def shift_poly(datum: RootDatum, p: MultiPoly, lam: Sequence[int],
               level: Level = None) -> MultiPoly:
    lam = tuple(int(x) for x in lam)
    if all(x == 0 for x in lam):
        return p
    return p.substitute(_shift_images(datum, lam, level))


class DtElt:
    """Finite sum of exponential terms e^mu * p_mu."""

    __slots__ = ("datum", "level", "terms", "_hash")

    def __init__(self, datum: RootDatum, terms: Mapping[IVec, MultiPoly],
                 level: Level = None):
        lvl = None if level is None else Fraction(level)
        clean: Dict[IVec, MultiPoly] = {}
        for mu, p in terms.items():
            mu = tuple(int(x) for x in mu)
            if len(mu) != datum.n:
                raise DimensionMismatch(f"exponent of length {len(mu)}")
            if p.nvars != datum.nvars:
                raise DimensionMismatch("coefficient variable count mismatch")
            if not p.is_zero():
                clean[mu] = p
        object.__setattr__(self, "datum", datum)
        object.__setattr__(self, "level", lvl)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def zero(cls, datum: RootDatum, level: Level = None) -> "DtElt":
        return cls(datum, {}, level)

    @classmethod
    def one(cls, datum: RootDatum, level: Level = None) -> "DtElt":
        return cls(datum, {(0,) * datum.n: MultiPoly.one(datum.nvars)}, level)

    @classmethod
    def exponential(cls, datum: RootDatum, mu: Sequence[int],
                    level: Level = None) -> "DtElt":
        return cls(datum, {tuple(int(x) for x in mu):
                           MultiPoly.one(datum.nvars)}, level)

    @classmethod
    def from_poly(cls, datum: RootDatum, p: MultiPoly,
                  level: Level = None) -> "DtElt":
        return cls(datum, {(0,) * datum.n: p}, level)

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "DtElt"):
        if other.datum is not self.datum:
            raise DatumMismatch("mixing operators over different root data")
        if other.level != self.level:
            raise LevelMismatch(f"levels {self.level} and {other.level}")

    def _promote(self, other) -> Optional["DtElt"]:
        if isinstance(other, DtElt):
            return other
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(self.datum.nvars, other)
        if isinstance(other, MultiPoly):
            return DtElt.from_poly(self.datum, other, self.level)
        return None

    def __add__(self, other):
        other = self._promote(other)
        if other is None:
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for mu, p in other.terms.items():
            s = out.get(mu)
            s = p if s is None else s + p
            if s.is_zero():
                out.pop(mu, None)
            else:
                out[mu] = s
        return DtElt(self.datum, out, self.level)

    __radd__ = __add__

    def __neg__(self):
        return DtElt(self.datum, {m: -p for m, p in self.terms.items()},
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
        out: Dict[IVec, MultiPoly] = {}
        for mu, p in self.terms.items():
            for lam, q in other.terms.items():
                key = tuple(a + b for a, b in zip(mu, lam))
                prod = shift_poly(self.datum, p, lam, self.level) * q
                s = out.get(key)
                s = prod if s is None else s + prod
                if s.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = s
        return DtElt(self.datum, out, self.level)

    def __rmul__(self, other):
        other = self._promote(other)
        if other is None:
            return NotImplemented
        return other * self

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out = DtElt.one(self.datum, self.level)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, MultiPoly)):
            other = self._promote(other)
        if not isinstance(other, DtElt):
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

    def render(self) -> str:
        if not self.terms:
            return "0"
        names = self.datum.variable_names
        pieces = []
        for mu in sorted(self.terms):
            p = self.terms[mu]
            head = f"e{list(mu)}*" if any(mu) else ""
            pieces.append(f"{head}({p.render(names)})")
        return " + ".join(pieces)

    def __repr__(self):
        return f"DtElt({self.render()})"


def dt_mul(a: DtElt, b: DtElt) -> DtElt:
    return a * b


def dt_weyl_act(w: WeylElt, x: DtElt) -> DtElt:
    """Conjugation by w: e^mu p goes to e^{w mu} w(p)."""
    g = x.datum.from_weyl(w)
    out: Dict[IVec, MultiPoly] = {}
    for mu, p in x.terms.items():
        key = tuple(int(c) for c in w.act_dual(mu))
        q = g.act_poly(p)
        s = out.get(key)
        s = q if s is None else s + q
        out[key] = s
    return DtElt(x.datum, out, x.level)


def dt_is_invariant(x: DtElt) -> bool:
    return all(dt_weyl_act(x.datum.simple_reflections[i], x) == x
               for i in x.datum.ss_coords)


def dt_symmetrize(x: DtElt) -> DtElt:
    """Weyl group average; the result is always invariant."""
    total = DtElt.zero(x.datum, x.level)
    for w in x.datum.weyl_elements:
        total = total + dt_weyl_act(w, x)
    scale = MultiPoly.constant(x.datum.nvars,
                               Fraction(1, len(x.datum.weyl_elements)))
    return total * scale


def dt_embed_daha(x: DtElt) -> DahaElt:
    """Algebra embedding: e^mu to the translation t_mu, Sym to Sym.

    Multiplicativity is exactly the statement that conjugating Sym(t_aff)
    by t_mu inside the group algebra reproduces shift_mu; that is how the
    action conventions were pinned.
    """
    from .exact_algebra import OreFraction
    datum = x.datum
    terms = {}
    for mu, p in x.terms.items():
        g = datum.translation(mu)
        coeff = g.act_poly(p)
        if x.level is not None:
            n = datum.n
            images = [MultiPoly.variable(n + 1, i) for i in range(n)]
            images.append(MultiPoly.constant(n + 1, x.level))
            coeff = coeff.substitute(images)
        frac = OreFraction.from_poly(coeff, x.level)
        if g in terms:
            terms[g] = terms[g] + frac
        else:
            terms[g] = frac
    return DahaElt(datum, terms, x.level)


def ore_move(factor: OreFactor, mu: Sequence[int], direction: str) -> OreFactor:
    """Transport a denominator factor across the exponential e^mu.

    Moving the inverted factor from the right side of e^mu to the left
    adds <mu, coroot> to the shift; moving left to right subtracts it.
    """
    pairing = int(dot(mu, factor.coroot))
    if direction == "left":
        return OreFactor(factor.coroot, factor.shift + pairing)
    if direction == "right":
        return OreFactor(factor.coroot, factor.shift - pairing)
    raise ValueError(f"direction must be 'left' or 'right', got {direction!r}")


class Sublattice:
    """A subgroup of the exponent lattice Z^n, held in Hermite normal form."""

    __slots__ = ("datum", "rows")

    def __init__(self, datum: RootDatum, generators: Sequence[Sequence[int]]):
        self.datum = datum
        n = datum.n
        rows = [list(int(x) for x in g) for g in generators]
        for r in rows:
            if len(r) != n:
                raise DimensionMismatch("generator length mismatch")
        self.rows = tuple(tuple(r) for r in _hermite(rows, n))

    @classmethod
    def full(cls, datum: RootDatum) -> "Sublattice":
        return cls(datum, [[1 if j == i else 0 for j in range(datum.n)]
                           for i in range(datum.n)])

    @classmethod
    def root_lattice(cls, datum: RootDatum) -> "Sublattice":
        gens = [[datum.cartan[j][i] for j in range(datum.n)]
                for i in datum.ss_coords]
        return cls(datum, gens)

    def contains(self, mu: Sequence[int]) -> bool:
        v = [int(x) for x in mu]
        if len(v) != self.datum.n:
            raise DimensionMismatch("vector length mismatch")
        for row in self.rows:
            c = next((j for j, x in enumerate(row) if x), None)
            if c is None:
                continue
            if v[c] % row[c]:
                return False
            k = v[c] // row[c]
            v = [a - k * b for a, b in zip(v, row)]
        return not any(v)

    def index_in_full(self) -> Optional[int]:
        """[Z^n : L] when L has full rank, else None."""
        if len(self.rows) < self.datum.n:
            return None
        det = 1
        for i, row in enumerate(self.rows):
            det *= row[i] if i < len(row) else 0
        return abs(det) if det else None


def _hermite(rows, n):
    """Row Hermite normal form with positive pivots, zero rows dropped."""
    mat = [r[:] for r in rows]
    pivot_row = 0
    for col in range(n):
        while True:
            idx = [i for i in range(pivot_row, len(mat)) if mat[i][col]]
            if not idx:
                break
            best = min(idx, key=lambda i: abs(mat[i][col]))
            mat[pivot_row], mat[best] = mat[best], mat[pivot_row]
            done = True
            p = mat[pivot_row][col]
            for i in range(pivot_row + 1, len(mat)):
                if mat[i][col]:
                    q = mat[i][col] // p
                    mat[i] = [a - q * b for a, b in zip(mat[i], mat[pivot_row])]
                    if mat[i][col]:
                        done = False
            if done:
                break
        if pivot_row < len(mat) and mat[pivot_row][col]:
            if mat[pivot_row][col] < 0:
                mat[pivot_row] = [-a for a in mat[pivot_row]]
            p = mat[pivot_row][col]
            for i in range(pivot_row):
                q = mat[i][col] // p
                if q:
                    mat[i] = [a - q * b for a, b in zip(mat[i], mat[pivot_row])]
            pivot_row += 1
    return [r for r in mat[:pivot_row] if any(r)]


def isogeny_filter(x: DtElt, lattice: Sublattice) -> DtElt:
    """Restrict an operator to exponents inside the sublattice."""
    if lattice.datum is not x.datum:
        raise DatumMismatch("lattice belongs to a different datum")
    kept = {mu: p for mu, p in x.terms.items() if lattice.contains(mu)}
    return DtElt(x.datum, kept, x.level)


def require_invariant(x: DtElt) -> DtElt:
    if not dt_is_invariant(x):
        raise NotWInvariant("operator is not Weyl invariant")
    return x


def random_dt_element(datum: RootDatum, rng, level: Level = None,
                      terms: int = 2, box: int = 2) -> DtElt:
    """Small random operator for property checks; exponents in a box."""
    n = datum.n
    coeffs = [Fraction(1), Fraction(-1), Fraction(2), Fraction(1, 2),
              Fraction(-3), Fraction(5, 3)]
    out = DtElt.zero(datum, level)
    for _ in range(rng.randrange(1, terms + 1)):
        mu = tuple(rng.randrange(-box, box + 1) for _ in range(n))
        poly = MultiPoly.zero(datum.nvars)
        for _ in range(rng.randrange(1, 3)):
            expo = [0] * datum.nvars
            for _ in range(rng.randrange(0, 3)):
                expo[rng.randrange(datum.nvars)] += 1
            poly = poly + MultiPoly(datum.nvars,
                                    {tuple(expo): rng.choice(coeffs)})
        out = out + DtElt.exponential(datum, mu, level) * poly
    return out


def sandwich_report(datum: RootDatum, count: int, seed: int = 0,
                    level: Level = None) -> dict:
    """Certify the spherical sandwich over random invariant operators.

    Checks that the torus embedding is multiplicative on all generator
    pairs (coordinates, hbar, and the basis exponentials both ways), that
    images of invariant operators commute with the averaging idempotent,
    and that compressing by the idempotent is multiplicative on ``count``
    random invariant pairs: E f(a) E * E f(b) E = E f(ab) E.
    """
    import random

    from .nil_daha import spherical_idempotent

    n = datum.n
    generators = []
    for i in range(n):
        unit = tuple(1 if j == i else 0 for j in range(n))
        nunit = tuple(-1 if j == i else 0 for j in range(n))
        generators.append(("exp", unit, DtElt.exponential(datum, unit, level)))
        generators.append(("exp", nunit, DtElt.exponential(datum, nunit, level)))
    for j in range(datum.nvars if level is None else n):
        poly = MultiPoly.variable(datum.nvars, j)
        generators.append(("poly", j, DtElt.from_poly(datum, poly, level)))
    pair_failures = []
    for name1, key1, g1 in generators:
        for name2, key2, g2 in generators:
            lhs = dt_embed_daha(g1 * g2)
            rhs = dt_embed_daha(g1) * dt_embed_daha(g2)
            if lhs != rhs:
                pair_failures.append([name1, key1, name2, key2])
    rng = random.Random(seed)
    idem = spherical_idempotent(datum, level)
    product_failures = 0
    commute_failures = 0
    for _ in range(count):
        a = dt_symmetrize(random_dt_element(datum, rng, level))
        b = dt_symmetrize(random_dt_element(datum, rng, level))
        fa, fb = dt_embed_daha(a), dt_embed_daha(b)
        if fa * idem != idem * fa:
            commute_failures += 1
        lhs = (idem * fa * idem) * (idem * fb * idem)
        rhs = idem * dt_embed_daha(a * b) * idem
        if lhs != rhs:
            product_failures += 1
    return {
        "type": datum.type_string,
        "generator_pairs": len(generators) ** 2,
        "generator_pair_failures": pair_failures,
        "invariant_pairs": count,
        "idempotent_commute_failures": commute_failures,
        "sandwich_product_failures": product_failures,
        "all_ok": not pair_failures and not commute_failures
                  and not product_failures,
    }
