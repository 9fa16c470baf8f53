"""Root data: Cartan matrices, Weyl groups, affine roots, invariants.

Coordinate conventions, fixed once and used by every other module:

* t (the Cartan subalgebra) carries the basis of simple coroots on the
  semisimple coordinates plus a standard basis on central torus
  coordinates.  Integer vectors in these coordinates are exactly the
  coroot lattice plus the central cocharacter lattice.
* t* carries the dual basis: fundamental weights plus the dual central
  coordinates.  The canonical pairing of t* with t is the dot product.
* t_aff = t + Q*hbar gets one extra last coordinate for hbar.  Polynomial
  rings elsewhere use nvars = rank + 1 with hbar last.

The extended affine Weyl group is X x| W with X = Z^n in t* coordinates.
A pair (mu, w) acts on t* by lam -> w(lam) + mu and on t_aff linearly by
xi -> w(xi) - <mu, w(xi)_fin> hbar, i.e. translations shift only the hbar
coefficient.  Both actions are implemented on ExtAffineElt and agree with
the conjugation action on torus difference operators.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from .errors import (DatumMismatch, DimensionMismatch, NotSimpleAffineRoot,
                     UnsupportedType)
from .exact_algebra import MultiPoly, OreFactor, substitute_linear

Vec = Tuple[Fraction, ...]
IVec = Tuple[int, ...]


def _tuple_frac(v) -> Vec:
    return tuple(Fraction(x) for x in v)


def dot(a: Sequence, b: Sequence) -> Fraction:
    if len(a) != len(b):
        raise DimensionMismatch(f"dot of lengths {len(a)} and {len(b)}")
    return sum((Fraction(x) * Fraction(y) for x, y in zip(a, b)), Fraction(0))


def _mat_apply(m, v) -> Vec:
    return tuple(sum((Fraction(m[i][j]) * Fraction(v[j]) for j in range(len(v))),
                     Fraction(0)) for i in range(len(m)))


def _mat_mul(a, b):
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
                 for i in range(n))


def _identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


class Factor(NamedTuple):
    kind: str          # "A", "B", "C", "D", "G", "T"
    rank: int
    start: int         # first coordinate index of this factor

    @property
    def coords(self) -> Tuple[int, ...]:
        return tuple(range(self.start, self.start + self.rank))

    @property
    def is_torus(self) -> bool:
        return self.kind == "T"


def _factor_cartan(kind: str, rank: int):
    """Cartan matrix a_ij = <alpha_j, alphacheck_i> for one simple factor."""
    a = [[0] * rank for _ in range(rank)]
    for i in range(rank):
        a[i][i] = 2
    if kind in ("A", "B", "C", "D"):
        chain = rank if kind != "D" else rank - 1
        for i in range(chain - 1):
            a[i][i + 1] = -1
            a[i + 1][i] = -1
        if kind == "B" and rank >= 2:
            a[rank - 2][rank - 1] = -1
            a[rank - 1][rank - 2] = -2
        if kind == "C" and rank >= 2:
            a[rank - 2][rank - 1] = -2
            a[rank - 1][rank - 2] = -1
        if kind == "D":
            a[rank - 3][rank - 1] = -1
            a[rank - 1][rank - 3] = -1
    elif kind == "G":
        a[0][1] = -1
        a[1][0] = -3
    else:
        raise UnsupportedType(f"no Cartan matrix for kind {kind!r}")
    return a


def parse_type(type_string: str) -> List[Tuple[str, int]]:
    """Parse strings like "A2", "B2xT1", "A1*A1", "G2 x T2"."""
    text = type_string.replace("*", "x").replace("×", "x").replace(" ", "")
    if not text:
        raise UnsupportedType("empty type string")
    out = []
    for piece in text.split("x"):
        if not piece:
            raise UnsupportedType(f"empty factor in {type_string!r}")
        kind = piece[0].upper()
        body = piece[1:]
        if kind not in ("A", "B", "C", "D", "G", "T") or not body.isdigit():
            raise UnsupportedType(f"unrecognized factor {piece!r}")
        rank = int(body)
        minimum = {"A": 1, "B": 2, "C": 2, "D": 3, "G": 2, "T": 1}[kind]
        if rank < minimum:
            raise UnsupportedType(f"factor {piece!r} below minimal rank {minimum}")
        if kind == "G" and rank != 2:
            raise UnsupportedType("G factors only exist in rank 2")
        out.append((kind, rank))
    return out


class PosRoot(NamedTuple):
    """A positive root with every representation other modules need."""
    factor: int        # index into datum.factors
    root_simple: IVec  # coefficients over the simple roots (full length n)
    root_dual: IVec    # coordinates in t* (fundamental weight basis)
    coroot_t: IVec     # coordinates in t (simple coroot basis)
    height: int


class WeylElt:
    """One Weyl group element: reduced word plus both coordinate matrices.

    mat_dual acts on t* coordinates, mat_t on t coordinates; they are
    contragredient, so dot(mat_dual @ lam, mat_t @ xi) = dot(lam, xi).
    Equality and hashing go through mat_dual.
    """

    __slots__ = ("word", "mat_dual", "mat_t", "_hash")

    def __init__(self, word: Tuple[int, ...], mat_dual, mat_t):
        self.word = tuple(word)
        self.mat_dual = tuple(tuple(int(x) for x in row) for row in mat_dual)
        self.mat_t = tuple(tuple(int(x) for x in row) for row in mat_t)
        self._hash = hash(self.mat_dual)

    def __eq__(self, other):
        if not isinstance(other, WeylElt):
            return NotImplemented
        return self.mat_dual == other.mat_dual

    def __hash__(self):
        return self._hash

    def __len__(self):
        return len(self.word)

    def is_identity(self) -> bool:
        return not self.word

    def act_dual(self, lam: Sequence) -> Vec:
        return _mat_apply(self.mat_dual, lam)

    def act_t(self, xi: Sequence) -> Vec:
        return _mat_apply(self.mat_t, xi)

    def __repr__(self):
        return "WeylElt(e)" if not self.word else \
            "WeylElt(" + "*".join(f"s{i}" for i in self.word) + ")"


class AffineSimpleRoot(NamedTuple):
    """One node of the affine Dynkin diagram of the datum.

    root_dual is the finite part of the root in t* coordinates (the affine
    node carries -theta plus one unit of delta, recorded in ``delta``).
    coroot_taff has length n+1; the affine coroot is hbar - thetacheck.
    word is the reflection as an extended affine Weyl element.
    """
    index: int
    factor: int
    is_affine: bool
    root_dual: IVec
    delta: int
    coroot_taff: IVec
    word: "ExtAffineElt"

    def pair_taff(self, xi: Sequence) -> Fraction:
        """Pair the root with xi in t_aff; delta pairs to zero with hbar."""
        return dot(self.root_dual, xi[:len(self.root_dual)])


class ExtAffineElt:
    """Element (mu, w) of the extended affine Weyl group X x| W."""

    __slots__ = ("datum", "mu", "w", "_hash")

    def __init__(self, datum: "RootDatum", mu: Sequence[int], w: WeylElt):
        mu = tuple(int(x) for x in mu)
        if len(mu) != datum.n:
            raise DimensionMismatch(f"translation of length {len(mu)}")
        self.datum = datum
        self.mu = mu
        self.w = w
        self._hash = hash((mu, w))

    def __eq__(self, other):
        if not isinstance(other, ExtAffineElt):
            return NotImplemented
        return self.mu == other.mu and self.w == other.w

    def __hash__(self):
        return self._hash

    def is_identity(self) -> bool:
        return not any(self.mu) and self.w.is_identity()

    def __mul__(self, other: "ExtAffineElt") -> "ExtAffineElt":
        if not isinstance(other, ExtAffineElt):
            return NotImplemented
        if other.datum is not self.datum:
            raise DatumMismatch("mixing elements of different root data")
        shifted = self.w.act_dual(other.mu)
        mu = tuple(int(a) + int(b) for a, b in zip(self.mu, shifted))
        return ExtAffineElt(self.datum, mu, self.datum.weyl_mul(self.w, other.w))

    def inverse(self) -> "ExtAffineElt":
        w_inv = self.datum.weyl_inverse(self.w)
        mu = tuple(-int(x) for x in w_inv.act_dual(self.mu))
        return ExtAffineElt(self.datum, mu, w_inv)

    def act_tdual(self, lam: Sequence) -> Vec:
        """Affine action on t*: lam -> w(lam) + mu."""
        moved = self.w.act_dual(lam)
        return tuple(x + m for x, m in zip(moved, self.mu))

    def act_taff(self, xi: Sequence) -> Vec:
        """Linear action on t_aff (length n+1, hbar last)."""
        n = self.datum.n
        if len(xi) != n + 1:
            raise DimensionMismatch(f"t_aff vector of length {len(xi)}")
        fin = self.w.act_t(xi[:n])
        hb = Fraction(xi[n]) - dot(self.mu, fin)
        return fin + (hb,)

    def act_poly(self, f: MultiPoly) -> MultiPoly:
        """Extend the t_aff action to Sym(t_aff)."""
        n = self.datum.n
        if f.nvars != n + 1:
            raise DimensionMismatch(f"polynomial in {f.nvars} variables")
        images = []
        for j in range(n):
            col = [self.w.mat_t[i][j] for i in range(n)]
            hb = -dot(self.mu, col)
            images.append(MultiPoly.linear([Fraction(c) for c in col] + [hb]))
        images.append(MultiPoly.variable(n + 1, n))
        return substitute_linear(f, images)

    def act_ore_factor(self, factor: OreFactor):
        """Image of a denominator factor; returns (sign, OreFactor).

        The image of coroot - shift*hbar is again +-(coroot' - shift'*hbar)
        with an integer shift, because mat_t is integral and mu is integral.
        """
        v = self.w.act_t(factor.coroot)
        hb = -dot(self.mu, v) - factor.shift
        scale, image = OreFactor.from_linear(v, hb)
        if scale not in (1, -1):
            raise DatumMismatch("group image of a factor must be a unit multiple")
        return int(scale), image

    def __repr__(self):
        return f"ExtAffineElt(mu={self.mu}, w={self.w!r})"


class RootDatum:
    """All precomputed structure for one reductive type string."""

    def __init__(self, type_string: str):
        self.factors_spec = parse_type(type_string)
        self.type_string = "x".join(f"{k}{r}" for k, r in self.factors_spec)
        factors = []
        start = 0
        for kind, rank in self.factors_spec:
            factors.append(Factor(kind, rank, start))
            start += rank
        self.factors: Tuple[Factor, ...] = tuple(factors)
        self.n = start
        self.nvars = self.n + 1
        self.ss_coords = tuple(c for f in self.factors if not f.is_torus
                               for c in f.coords)
        self.torus_coords = tuple(c for f in self.factors if f.is_torus
                                  for c in f.coords)

        # Block Cartan matrix over all coordinates; torus rows/columns are
        # zero and are never used as root indices.
        cartan = [[0] * self.n for _ in range(self.n)]
        for f in self.factors:
            if f.is_torus:
                continue
            block = _factor_cartan(f.kind, f.rank)
            for i in range(f.rank):
                for j in range(f.rank):
                    cartan[f.start + i][f.start + j] = block[i][j]
        self.cartan = tuple(tuple(row) for row in cartan)

        self._build_weyl()
        self._build_positive_roots()
        self._build_affine_simples()

        self.rho = tuple(Fraction(1) if i in self.ss_coords else Fraction(0)
                         for i in range(self.n))
        rho_check = [Fraction(0)] * self.n
        for r in self.positive_roots:
            for i, c in enumerate(r.coroot_t):
                rho_check[i] += Fraction(c, 2)
        self.rho_check = tuple(rho_check)

        self.variable_names = self._make_names()

    # -- construction helpers -------------------------------------------

    def _simple_reflection_mats(self, i: int):
        n = self.n
        dual = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
        mat_t = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
        for r in range(n):
            dual[r][i] -= self.cartan[r][i]   # s_i(lam) = lam - lam_i * alpha_i
        for c in range(n):
            mat_t[i][c] -= self.cartan[c][i]  # s_i(acheck_j) = acheck_j - a_ji acheck_i
        return tuple(map(tuple, dual)), tuple(map(tuple, mat_t))

    def _build_weyl(self):
        n = self.n
        self.simple_reflections: Dict[int, WeylElt] = {}
        for i in self.ss_coords:
            dual, mt = self._simple_reflection_mats(i)
            self.simple_reflections[i] = WeylElt((i,), dual, mt)
        identity = WeylElt((), _identity(n), _identity(n))
        self.weyl_identity = identity
        by_mat = {identity.mat_dual: identity}
        order: List[WeylElt] = [identity]
        frontier = [identity]
        while frontier:
            next_frontier = []
            for w in frontier:
                for i in self.ss_coords:
                    s = self.simple_reflections[i]
                    dual = _mat_mul(w.mat_dual, s.mat_dual)
                    if dual in by_mat:
                        continue
                    mt = _mat_mul(w.mat_t, s.mat_t)
                    elt = WeylElt(w.word + (i,), dual, mt)
                    by_mat[dual] = elt
                    order.append(elt)
                    next_frontier.append(elt)
            frontier = next_frontier
        self.weyl_elements: Tuple[WeylElt, ...] = tuple(order)
        self.weyl_by_mat = by_mat
        self.w0 = max(order, key=lambda w: (len(w.word), w.word))

    def weyl_mul(self, a: WeylElt, b: WeylElt) -> WeylElt:
        return self.weyl_by_mat[_mat_mul(a.mat_dual, b.mat_dual)]

    def weyl_inverse(self, a: WeylElt) -> WeylElt:
        # reflections are involutions, so reversing the word inverts
        out = self.weyl_identity
        for i in reversed(a.word):
            out = self.weyl_mul(out, self.simple_reflections[i])
        return out

    def weyl_from_word(self, word: Sequence[int]) -> WeylElt:
        out = self.weyl_identity
        for i in word:
            if i not in self.simple_reflections:
                raise NotSimpleAffineRoot(f"{i} is not a finite simple index")
            out = self.weyl_mul(out, self.simple_reflections[i])
        return out

    def _build_positive_roots(self):
        n = self.n
        roots: Dict[IVec, IVec] = {}   # root_simple -> coroot_t
        for i in self.ss_coords:
            e = tuple(1 if j == i else 0 for j in range(n))
            roots[e] = e
        frontier = list(roots)
        while frontier:
            new = []
            for rs in frontier:
                ct = roots[rs]
                for i in self.ss_coords:
                    # s_i on the root: subtract <root, acheck_i> alpha_i
                    pair_root = sum(rs[j] * self.cartan[i][j] for j in range(n))
                    rs2 = list(rs)
                    rs2[i] -= pair_root
                    rs2 = tuple(rs2)
                    if rs2 in roots or any(c < 0 for c in rs2):
                        continue
                    pair_co = sum(ct[j] * self.cartan[j][i] for j in range(n))
                    ct2 = list(ct)
                    ct2[i] -= pair_co
                    roots[rs2] = tuple(ct2)
                    new.append(rs2)
            frontier = new
        out = []
        for rs, ct in roots.items():
            factor = next(k for k, f in enumerate(self.factors)
                          if not f.is_torus and any(rs[c] for c in f.coords))
            dual = tuple(sum(self.cartan[j][i] * rs[i] for i in range(n))
                         for j in range(n))
            out.append(PosRoot(factor, rs, dual, ct, sum(rs)))
        out.sort(key=lambda r: (r.factor, r.height, r.root_simple))
        self.positive_roots: Tuple[PosRoot, ...] = tuple(out)
        self.highest_roots: Dict[int, PosRoot] = {}
        for r in out:
            cur = self.highest_roots.get(r.factor)
            if cur is None or r.height > cur.height:
                self.highest_roots[r.factor] = r

    def reflection_of_root(self, root: PosRoot) -> WeylElt:
        """The reflection s_beta, located inside the enumerated group."""
        n = self.n
        dual = tuple(tuple((1 if i == j else 0) - root.root_dual[i] * root.coroot_t[j]
                           for j in range(n)) for i in range(n))
        return self.weyl_by_mat[dual]

    def _build_affine_simples(self):
        out = []
        index = 0
        for k, f in enumerate(self.factors):
            if f.is_torus:
                continue
            theta = self.highest_roots[k]
            s_theta = self.reflection_of_root(theta)
            aff_word = ExtAffineElt(self, theta.root_dual, s_theta)
            coroot_aff = tuple(-c for c in theta.coroot_t) + (1,)
            out.append(AffineSimpleRoot(index, k, True,
                                        tuple(-c for c in theta.root_dual), 1,
                                        coroot_aff, aff_word))
            index += 1
            for i in f.coords:
                dual = tuple(self.cartan[j][i] for j in range(self.n))
                coroot = tuple(1 if j == i else 0 for j in range(self.n)) + (0,)
                word = ExtAffineElt(self, (0,) * self.n, self.simple_reflections[i])
                out.append(AffineSimpleRoot(index, k, False, dual, 0, coroot, word))
                index += 1
        self.affine_simples: Tuple[AffineSimpleRoot, ...] = tuple(out)

    def _make_names(self):
        names = []
        for f in self.factors:
            for pos in range(f.rank):
                prefix = "z" if f.is_torus else "h"
                names.append(f"{prefix}{f.start + pos + 1}")
        names.append("hbar")
        return tuple(names)

    # -- element builders -------------------------------------------------

    def identity_ext(self) -> ExtAffineElt:
        return ExtAffineElt(self, (0,) * self.n, self.weyl_identity)

    def translation(self, mu: Sequence[int]) -> ExtAffineElt:
        return ExtAffineElt(self, mu, self.weyl_identity)

    def from_weyl(self, w: WeylElt) -> ExtAffineElt:
        return ExtAffineElt(self, (0,) * self.n, w)

    def affine_simple(self, index: int) -> AffineSimpleRoot:
        if not 0 <= index < len(self.affine_simples):
            raise NotSimpleAffineRoot(
                f"affine index {index} out of range 0..{len(self.affine_simples) - 1}")
        return self.affine_simples[index]

    # -- pairings and predicates ------------------------------------------

    def pair(self, lam: Sequence, xi: Sequence) -> Fraction:
        """Canonical pairing t* x t in the fixed coordinates."""
        if len(lam) != self.n or len(xi) != self.n:
            raise DimensionMismatch("pairing lengths must equal the rank")
        return dot(lam, xi)

    def is_dominant(self, lam: Sequence) -> bool:
        return all(Fraction(lam[i]) >= 0 for i in self.ss_coords)

    def is_positive_coroot(self, vec: Sequence[int]) -> bool:
        v = tuple(int(x) for x in vec)
        return any(r.coroot_t == v for r in self.positive_roots)

    def coxeter_m(self, a: AffineSimpleRoot, b: AffineSimpleRoot) -> Optional[int]:
        """Order of s_a s_b; None encodes infinity (affine A1 bond)."""
        n_ab = a.pair_taff(b.coroot_taff) * b.pair_taff(a.coroot_taff)
        if n_ab == 0:
            return 2
        if n_ab == 1:
            return 3
        if n_ab == 2:
            return 4
        if n_ab == 3:
            return 6
        return None

    def __repr__(self):
        return f"RootDatum({self.type_string!r})"


_DATUM_CACHE: Dict[str, RootDatum] = {}


def build_root_datum(type_string: str) -> RootDatum:
    """Shared, cached constructor; data are immutable after construction."""
    key = "x".join(f"{k}{r}" for k, r in parse_type(type_string))
    if key not in _DATUM_CACHE:
        _DATUM_CACHE[key] = RootDatum(key)
    return _DATUM_CACHE[key]


# -- fundamental invariants ------------------------------------------------


def _embed_linear(datum: RootDatum, coeffs: Dict[int, Fraction],
                  constant: Fraction = Fraction(0)) -> MultiPoly:
    vec = [Fraction(0)] * datum.nvars
    for i, c in coeffs.items():
        vec[i] = Fraction(c)
    return MultiPoly.linear(vec, constant)


def _orthogonal_coordinates(datum: RootDatum, f: Factor) -> List[MultiPoly]:
    """Linear forms x_1..x_m realizing a classical factor's weight lattice.

    The coordinates are chosen so that evaluation at lam in fundamental
    weight coordinates gives the usual orthogonal (or A-type barycentric)
    coordinates of lam.
    """
    r = f.rank
    lam = [MultiPoly.variable(datum.nvars, c) for c in f.coords]
    if f.kind == "A":
        # x_i - x_{i+1} = lam_i on r+1 coordinates summing to zero
        partial = []
        for i in range(r + 1):
            s = MultiPoly.zero(datum.nvars)
            for j in range(i, r):
                s = s + lam[j]
            partial.append(s)
        total = MultiPoly.zero(datum.nvars)
        for s in partial:
            total = total + s
        shift = total * Fraction(-1, r + 1)
        return [s + shift for s in partial]
    if f.kind in ("B", "C", "D"):
        xs = [MultiPoly.zero(datum.nvars)] * r
        if f.kind == "B":
            xs[r - 1] = lam[r - 1] * Fraction(1, 2)
        elif f.kind == "C":
            xs[r - 1] = lam[r - 1]
        else:
            xs[r - 1] = (lam[r - 1] - lam[r - 2]) * Fraction(1, 2)
            xs[r - 2] = (lam[r - 1] + lam[r - 2]) * Fraction(1, 2)
        top = r - 2 if f.kind == "D" else r - 1
        for i in range(top - 1, -1, -1):
            xs[i] = xs[i + 1] + lam[i]
        return xs
    raise UnsupportedType(f"no orthogonal coordinates for kind {f.kind}")


def _elementary_symmetric(polys: List[MultiPoly], upto: int) -> List[MultiPoly]:
    nvars = polys[0].nvars
    e = [MultiPoly.one(nvars)] + [MultiPoly.zero(nvars) for _ in range(upto)]
    for p in polys:
        for k in range(min(upto, len(e) - 1), 0, -1):
            e[k] = e[k] + e[k - 1] * p
    return e


def _power_sum(polys: List[MultiPoly], k: int) -> MultiPoly:
    out = MultiPoly.zero(polys[0].nvars)
    for p in polys:
        out = out + p ** k
    return out


def _jacobian_nonzero(datum: RootDatum, f: Factor,
                      polys: List[MultiPoly]) -> bool:
    cols = list(f.coords)
    rows = [[p.partial(c) for c in cols] for p in polys]

    # polynomial determinant by cofactor expansion; ranks here are tiny
    def poly_det(m):
        if len(m) == 1:
            return m[0][0]
        out = MultiPoly.zero(datum.nvars)
        for j in range(len(m)):
            minor = [row[:j] + row[j + 1:] for row in m[1:]]
            piece = m[0][j] * poly_det(minor)
            out = out + (piece if j % 2 == 0 else -piece)
        return out

    return not poly_det(rows).is_zero()


def fundamental_invariants(datum: RootDatum) -> List[Tuple[int, MultiPoly]]:
    """Algebraically independent generators of the W-invariants on t*.

    Returns (degree, polynomial) pairs, rank-many in total: one polynomial
    generator per coordinate, torus coordinates contributing themselves in
    degree one.  Each polynomial lives in Sym(t) inside the nvars-variable
    ring (hbar unused) and is checked to be W-invariant at build time.
    """
    out: List[Tuple[int, MultiPoly]] = []
    for fi, f in enumerate(datum.factors):
        if f.is_torus:
            for c in f.coords:
                out.append((1, MultiPoly.variable(datum.nvars, c)))
            continue
        r = f.rank
        polys: List[Tuple[int, MultiPoly]] = []
        if f.kind == "A":
            xs = _orthogonal_coordinates(datum, f)
            es = _elementary_symmetric(xs, r + 1)
            for k in range(2, r + 2):
                polys.append((k, es[k]))
        elif f.kind in ("B", "C"):
            xs = _orthogonal_coordinates(datum, f)
            for k in range(1, r + 1):
                polys.append((2 * k, _power_sum(xs, 2 * k)))
        elif f.kind == "D":
            xs = _orthogonal_coordinates(datum, f)
            for k in range(1, r):
                polys.append((2 * k, _power_sum(xs, 2 * k)))
            prod = MultiPoly.one(datum.nvars)
            for p in xs:
                prod = prod * p
            polys.append((r, prod))
        elif f.kind == "G":
            for k in (2, 6):
                s = MultiPoly.zero(datum.nvars)
                for root in datum.positive_roots:
                    if root.factor != fi:
                        continue
                    form = MultiPoly.linear(
                        [Fraction(c) for c in root.coroot_t] + [Fraction(0)])
                    s = s + form ** k
                polys.append((k, s))
            if not _jacobian_nonzero(datum, f, [p for _, p in polys]):
                raise UnsupportedType("G2 invariants failed independence check")
        else:
            raise UnsupportedType(f"no invariants for kind {f.kind}")
        for deg, p in polys:
            for i in f.coords:
                s = datum.from_weyl(datum.simple_reflections[i])
                if s.act_poly(p) != p:
                    raise UnsupportedType(
                        f"invariant of degree {deg} not W-invariant for {f.kind}{r}")
        polys.sort(key=lambda t: t[0])
        out.extend(polys)
    return out
