"""Filtration bookkeeping: regrading windows, good filtrations, Koszul checks.

Everything here is desk scale and exact: windows are finite rectangles of
dimensions, filtrations are finite spanning sets over Fraction, and the
Koszul complex is certified degree by degree with rational linear algebra.

The regrading swaps between a filtration compatible with a grading
(dimensions E_{<=j}(d)) and its associated single-index filtration

    (F_n E)(d) = E_{<= floor((n - d)/2)}(d),

which is a bijective re-indexing: E_{<=j}(d) = F_{2j + d}(d).  A window is
regradable only when the input rectangle determines the whole output
rectangle; otherwise WindowTooSmall is raised.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .errors import (DimensionMismatch, InconsistentWindow, NotExact,
                     WindowTooSmall)
from .exact_algebra import MultiPoly
from .linalg import nullspace, rank, rref
from .root_data import RootDatum, fundamental_invariants


class GradedFilteredWindow:
    """Finite rectangle of dimensions dim E_{<=j}(d), monotone in j.

    ``label`` names the second index ("order" for an order-type filtration,
    "kazhdan" after regrading); it travels through conversions so that a
    window cannot be inverted as the wrong kind by accident.
    """

    __slots__ = ("d_lo", "d_hi", "j_lo", "j_hi", "dims", "label")

    def __init__(self, d_range: Tuple[int, int], j_range: Tuple[int, int],
                 dims: Mapping[Tuple[int, int], int], label: str = "order"):
        self.d_lo, self.d_hi = int(d_range[0]), int(d_range[1])
        self.j_lo, self.j_hi = int(j_range[0]), int(j_range[1])
        if self.d_lo > self.d_hi or self.j_lo > self.j_hi:
            raise InconsistentWindow("empty window rectangle")
        table: Dict[Tuple[int, int], int] = {}
        for d in range(self.d_lo, self.d_hi + 1):
            for j in range(self.j_lo, self.j_hi + 1):
                if (d, j) not in dims:
                    raise InconsistentWindow(f"missing cell {(d, j)}")
                v = int(dims[(d, j)])
                if v < 0:
                    raise InconsistentWindow(f"negative dimension at {(d, j)}")
                table[(d, j)] = v
        for d in range(self.d_lo, self.d_hi + 1):
            for j in range(self.j_lo, self.j_hi):
                if table[(d, j)] > table[(d, j + 1)]:
                    raise InconsistentWindow(
                        f"filtration not monotone at degree {d}, level {j}")
        self.dims = table
        self.label = label

    def dim(self, d: int, j: int) -> int:
        if not (self.d_lo <= d <= self.d_hi and self.j_lo <= j <= self.j_hi):
            raise WindowTooSmall(f"cell {(d, j)} outside the window")
        return self.dims[(d, j)]

    def restrict(self, d_range: Tuple[int, int],
                 j_range: Tuple[int, int]) -> "GradedFilteredWindow":
        sub = {(d, j): self.dim(d, j)
               for d in range(d_range[0], d_range[1] + 1)
               for j in range(j_range[0], j_range[1] + 1)}
        return GradedFilteredWindow(d_range, j_range, sub, self.label)

    def __eq__(self, other):
        if not isinstance(other, GradedFilteredWindow):
            return NotImplemented
        return ((self.d_lo, self.d_hi, self.j_lo, self.j_hi, self.dims,
                 self.label) ==
                (other.d_lo, other.d_hi, other.j_lo, other.j_hi, other.dims,
                 other.label))

    def to_csv_rows(self) -> List[List[str]]:
        header = [f"degree\\{self.label}"] + [
            str(j) for j in range(self.j_lo, self.j_hi + 1)]
        rows = [header]
        for d in range(self.d_lo, self.d_hi + 1):
            rows.append([str(d)] + [str(self.dims[(d, j)])
                                    for j in range(self.j_lo, self.j_hi + 1)])
        return rows

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "degree_range": [self.d_lo, self.d_hi],
            "level_range": [self.j_lo, self.j_hi],
            "dims": [[self.dims[(d, j)]
                      for j in range(self.j_lo, self.j_hi + 1)]
                     for d in range(self.d_lo, self.d_hi + 1)],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "GradedFilteredWindow":
        d_lo, d_hi = (int(v) for v in data["degree_range"])
        j_lo, j_hi = (int(v) for v in data["level_range"])
        rows = data["dims"]
        dims = {}
        for r, d in enumerate(range(d_lo, d_hi + 1)):
            if r >= len(rows) or len(rows[r]) != j_hi - j_lo + 1:
                raise InconsistentWindow("dims table shape mismatch")
            for c, j in enumerate(range(j_lo, j_hi + 1)):
                dims[(d, j)] = int(rows[r][c])
        return cls((d_lo, d_hi), (j_lo, j_hi), dims,
                   str(data.get("label", "order")))

    def __repr__(self):
        return (f"GradedFilteredWindow(d=[{self.d_lo},{self.d_hi}], "
                f"{self.label}=[{self.j_lo},{self.j_hi}])")


def kazhdan_regrade(win: GradedFilteredWindow) -> GradedFilteredWindow:
    """Pass to the associated single-index filtration window.

    The output cell (d, n) reads E_{<= floor((n-d)/2)}(d), so the output
    index range is the largest interval where that level stays inside the
    input window for every degree d.
    """
    n_lo = win.d_hi + 2 * win.j_lo
    n_hi = win.d_lo + 2 * win.j_hi + 1
    if n_lo > n_hi:
        raise WindowTooSmall(
            f"no fully determined regrade index: [{n_lo}, {n_hi}] is empty")
    dims = {}
    for d in range(win.d_lo, win.d_hi + 1):
        for n in range(n_lo, n_hi + 1):
            dims[(d, n)] = win.dim(d, (n - d) // 2)
    return GradedFilteredWindow((win.d_lo, win.d_hi), (n_lo, n_hi), dims,
                                label="kazhdan")


def kazhdan_regrade_inverse(win: GradedFilteredWindow) -> GradedFilteredWindow:
    """Recover the graded-filtered window: E_{<=j}(d) = F_{2j+d}(d).

    The input must genuinely be a regraded window: cells with the same
    floor((n-d)/2) must agree, otherwise the data is inconsistent.
    """
    if win.label != "kazhdan":
        raise InconsistentWindow(
            f"expected a kazhdan-labeled window, got {win.label!r}")
    for d in range(win.d_lo, win.d_hi + 1):
        for n in range(win.j_lo, win.j_hi):
            if (n - d) % 2 == 0 and win.dim(d, n) != win.dim(d, n + 1):
                raise InconsistentWindow(
                    f"parity inconsistency at degree {d}, indices {n}, {n + 1}")
    j_lo = -((win.j_lo - win.d_lo) // -2)     # ceil((j_lo - d_lo) / 2)
    j_hi = (win.j_hi - win.d_hi) // 2
    if j_lo > j_hi:
        raise WindowTooSmall("window too narrow to recover any level")
    dims = {}
    for d in range(win.d_lo, win.d_hi + 1):
        for j in range(j_lo, j_hi + 1):
            dims[(d, j)] = win.dim(d, 2 * j + d)
    return GradedFilteredWindow((win.d_lo, win.d_hi), (j_lo, j_hi), dims,
                                label="order")


# -- good filtrations ---------------------------------------------------------


def good_filtration_window(generators: Sequence[Tuple[Sequence, int]],
                           algebra_window: Mapping[int, Sequence],
                           p_min: int, p_max: int) -> dict:
    """Filtration F_p M = sum_i F_{p - n_i} A x_i inside a finite model.

    ``generators``: pairs (vector, level n_i) over Fraction in a fixed
    finite-dimensional truncation of the module.
    ``algebra_window``: for each available level q, matrices spanning
    F_q A as operators on the truncation.  Levels absent from the mapping
    contribute nothing, so the identity must be listed at its level.

    Returns canonical bases (reduced echelon rows) and dimensions per p;
    canonical form makes equality of filtrations literal equality.
    """
    if not generators:
        raise DimensionMismatch("need at least one generator")
    width = len(generators[0][0])
    bases = {}
    dims = {}
    levels = sorted(algebra_window)
    for p in range(p_min, p_max + 1):
        vectors = []
        for vec, n_i in generators:
            if len(vec) != width:
                raise DimensionMismatch("generator vectors of unequal length")
            for q in levels:
                if q > p - n_i:
                    break
                for m in algebra_window[q]:
                    vectors.append(tuple(
                        sum(Fraction(m[r][c]) * Fraction(vec[c])
                            for c in range(width)) for r in range(len(m))))
        basis = rref(vectors) if vectors else []
        bases[p] = tuple(basis)
        dims[p] = len(basis)
    return {"p_min": p_min, "p_max": p_max, "dims": dims, "bases": bases}


def filtration_shift_match(fa: dict, fb: dict, shift: int) -> bool:
    """True when F^a_p = F^b_{p+shift} on the overlapping index range."""
    lo = max(fa["p_min"], fb["p_min"] - shift)
    hi = min(fa["p_max"], fb["p_max"] - shift)
    if lo > hi:
        return False
    return all(fa["bases"][p] == fb["bases"][p + shift]
               for p in range(lo, hi + 1))


# -- Koszul complexes ----------------------------------------------------------


class KoszulComplex:
    """Koszul complex K(g_1, ..., g_k) over a polynomial ring.

    Slots of K_m are the m-subsets of the generators; the differential is

        d(e_S) = sum over positions t of S of (-1)^t g_{S[t]} e_{S without S[t]}.

    ``weights`` give each ring variable a positive weighted degree; the
    slot e_S contributes the weighted degrees of its generators.  With
    that convention d preserves the weighted filtration whenever each
    generator has a constant-free leading part, and truncation windows
    close under the differential.  Exactness inside a window is certified
    by exact rank computations over Fraction.
    """

    def __init__(self, nvars: int, generators: Sequence[MultiPoly],
                 weights: Optional[Sequence[int]] = None):
        self.nvars = int(nvars)
        self.generators = list(generators)
        if not self.generators:
            raise DimensionMismatch("need at least one generator")
        for g in self.generators:
            if g.nvars != self.nvars:
                raise DimensionMismatch("generator in the wrong ring")
        self.k = len(self.generators)
        if weights is None:
            weights = [1] * self.nvars
        self.weights = [int(w) for w in weights]
        if len(self.weights) != self.nvars or any(w < 1 for w in self.weights):
            raise DimensionMismatch("need one positive weight per variable")
        self.slots = {m: list(combinations(range(self.k), m))
                      for m in range(self.k + 1)}
        self.gen_wdeg = [max(1, self._poly_wdeg(g)) for g in self.generators]

    def _poly_wdeg(self, p: MultiPoly) -> int:
        if p.is_zero():
            return 0
        return max(sum(e[i] * self.weights[i] for i in range(self.nvars))
                   for e in p.terms)

    def _slot_weight(self, subset: Tuple[int, ...]) -> int:
        return sum(self.gen_wdeg[i] for i in subset)

    # -- symbolic layer ----------------------------------------------------

    def differential_matrix(self, m: int) -> List[List[MultiPoly]]:
        """Polynomial matrix of d_m : K_m -> K_{m-1} over slot bases."""
        src = self.slots[m]
        tgt = self.slots[m - 1]
        tgt_index = {S: i for i, S in enumerate(tgt)}
        zero = MultiPoly.zero(self.nvars)
        out = [[zero for _ in src] for _ in tgt]
        for col, S in enumerate(src):
            for t, i in enumerate(S):
                rest = S[:t] + S[t + 1:]
                row = tgt_index[rest]
                g = self.generators[i]
                out[row][col] = out[row][col] + (g if t % 2 == 0 else -g)
        return out

    def dual_differential_matrix(self, m: int) -> List[List[MultiPoly]]:
        """Matrix of the transposed map Hom(K_m, R) -> Hom(K_{m+1}, R)."""
        return [list(row) for row in zip(*self.differential_matrix(m + 1))]

    def check_d_squared(self) -> bool:
        """Symbolic check of d . d = 0 between all consecutive levels."""
        for m in range(2, self.k + 1):
            a = self.differential_matrix(m - 1)
            b = self.differential_matrix(m)
            for r in range(len(a)):
                for c in range(len(b[0])):
                    acc = MultiPoly.zero(self.nvars)
                    for t in range(len(b)):
                        acc = acc + a[r][t] * b[t][c]
                    if not acc.is_zero():
                        return False
        return True

    # -- windowed linear algebra -------------------------------------------

    def _monomials_upto(self, bound: int):
        out = []

        def rec(prefix, i, remaining):
            if i == self.nvars:
                out.append(tuple(prefix))
                return
            top = remaining // self.weights[i]
            for e in range(top + 1):
                rec(prefix + [e], i + 1, remaining - e * self.weights[i])
        if bound >= 0:
            rec([], 0, bound)
        return out

    def window_basis(self, m: int, bound: int):
        """Basis (slot, exponent) of K_m up to total weighted degree bound."""
        basis = []
        for S in self.slots[m]:
            room = bound - self._slot_weight(S)
            for e in self._monomials_upto(room):
                basis.append((S, e))
        return basis

    def dual_window_basis(self, m: int, bound: int):
        """Dual-side basis of Hom(K_m, R): codegree wdeg(e) - slot <= bound."""
        basis = []
        for S in self.slots[m]:
            room = bound + self._slot_weight(S)
            for e in self._monomials_upto(room):
                basis.append((S, e))
        return basis

    def _matrix_between(self, pairs, src, tgt):
        """Assemble the window matrix given per-column image terms."""
        tgt_index = {bt: i for i, bt in enumerate(tgt)}
        rows = [[Fraction(0)] * len(src) for _ in tgt]
        for c, image in enumerate(pairs):
            for key, v in image.items():
                idx = tgt_index.get(key)
                if idx is None:
                    raise WindowTooSmall(f"image term {key} escapes the window")
                rows[idx][c] = rows[idx][c] + v
        return rows

    def window_matrix(self, m: int, bound: int):
        """Matrix of d_m on the weighted window; returns (rows, src, tgt).

        Images stay inside the same bound because every generator's
        weighted degree is accounted into the slot weight it vacates.
        """
        src = self.window_basis(m, bound)
        tgt = self.window_basis(m - 1, bound)
        images = []
        for S, e in src:
            col: Dict[tuple, Fraction] = {}
            for t, i in enumerate(S):
                rest = S[:t] + S[t + 1:]
                sign = 1 if t % 2 == 0 else -1
                for ge, gc in self.generators[i].terms.items():
                    key = (rest, tuple(a + b for a, b in zip(e, ge)))
                    col[key] = col.get(key, Fraction(0)) + sign * gc
            images.append(col)
        return self._matrix_between(images, src, tgt), src, tgt

    def dual_window_matrix(self, m: int, bound: int):
        """Matrix of the transposed differential on dual windows.

        The map sends p e_S* to sums of g_i p e_{S+i}* with the sign of the
        position of i inside S + i; codegree never increases, so the window
        closes under it just like the primal one.
        """
        src = self.dual_window_basis(m, bound)
        tgt = self.dual_window_basis(m + 1, bound)
        images = []
        for S, e in src:
            col: Dict[tuple, Fraction] = {}
            for i in range(self.k):
                if i in S:
                    continue
                bigger = tuple(sorted(S + (i,)))
                sign = 1 if bigger.index(i) % 2 == 0 else -1
                for ge, gc in self.generators[i].terms.items():
                    key = (bigger, tuple(a + b for a, b in zip(e, ge)))
                    col[key] = col.get(key, Fraction(0)) + sign * gc
            images.append(col)
        return self._matrix_between(images, src, tgt), src, tgt

    @staticmethod
    def _image_vectors(matrix, tgt_len):
        cols = []
        if matrix:
            for c in range(len(matrix[0])):
                cols.append(tuple(matrix[r][c] for r in range(tgt_len)))
        return cols

    def homology_report(self, max_degree: int) -> dict:
        """Certify H_m = 0 on the window for every position m >= 1.

        The kernel of d_m on the window is computed exactly; the
        certificate is that adjoining it to the image of d_{m+1} does not
        raise the rank.  At the top position the kernel itself must vanish.
        """
        positions = []
        for m in range(1, self.k + 1):
            mat_m, src_m, tgt_m = self.window_matrix(m, max_degree)
            kernel = nullspace(mat_m) if src_m else []
            if m == self.k:
                image_rank = 0
                exact = not kernel
            else:
                mat_up, src_up, tgt_up = self.window_matrix(m + 1, max_degree)
                images = self._image_vectors(mat_up, len(tgt_up))
                image_rank = rank(images)
                exact = rank(images + list(kernel)) == image_rank
            positions.append({"position": m, "window_dim": len(src_m),
                              "kernel_dim": len(kernel),
                              "image_rank": image_rank, "exact": bool(exact)})
        return {"max_degree": max_degree, "positions": positions,
                "all_exact": all(p["exact"] for p in positions)}

    def augmentation_report(self, point: Sequence[Fraction],
                            max_degree: int) -> dict:
        """Check im(d_1) fills the functions vanishing at the point.

        Inside the window, the vanishing ideal of the point has codimension
        one; exactness of the augmented complex at its last spot means the
        image of d_1 reaches all of it.
        """
        point = tuple(Fraction(x) for x in point)
        if len(point) != self.nvars:
            raise DimensionMismatch("point length mismatch")
        mat, src, tgt = self.window_matrix(1, max_degree)
        images = self._image_vectors(mat, len(tgt))
        tgt_index = {bt: i for i, bt in enumerate(tgt)}
        const = tgt_index[((), (0,) * self.nvars)]
        vanishing = []
        for bt, idx in tgt_index.items():
            if idx == const:
                continue
            _, e = bt
            vec = [Fraction(0)] * len(tgt)
            vec[idx] = Fraction(1)
            value = Fraction(1)
            for x, k in zip(point, e):
                value *= x ** k
            vec[const] = -value
            vanishing.append(tuple(vec))
        image_rank = rank(images)
        full = rank(images + vanishing) == image_rank
        return {"image_rank": image_rank,
                "vanishing_dim": len(vanishing),
                "fills_vanishing_ideal": bool(full and
                                              image_rank == len(vanishing))}

    def ext_report(self, max_degree: int) -> dict:
        """Transposed-complex certificate: Ext lives only in top degree.

        Checks on dual windows that the transposed differentials are exact
        at every position below the top, and that the top cokernel is one
        dimensional at two consecutive window sizes (stabilization); at the
        commutative level that cokernel is the one line sitting over the
        base point.
        """
        positions = []
        for m in range(0, self.k):
            mat_m, src_m, tgt_m = self.dual_window_matrix(m, max_degree)
            kernel = nullspace(mat_m) if src_m else []
            if m == 0:
                image_rank = 0
                exact = not kernel
            else:
                mat_dn, src_dn, tgt_dn = self.dual_window_matrix(m - 1, max_degree)
                images = self._image_vectors(mat_dn, len(tgt_dn))
                image_rank = rank(images)
                exact = rank(images + list(kernel)) == image_rank
            positions.append({"position": m, "kernel_dim": len(kernel),
                              "image_rank": image_rank, "exact": bool(exact)})
        deficits = []
        for bound in (max_degree - 1, max_degree):
            mat_top, src_top, tgt_top = self.dual_window_matrix(self.k - 1, bound)
            images = self._image_vectors(mat_top, len(tgt_top))
            deficits.append(len(tgt_top) - rank(images))
        return {"positions": positions,
                "below_top_exact": all(p["exact"] for p in positions),
                "top_cokernel_dims": deficits,
                "top_concentrated": deficits[0] == deficits[1] == 1}

    def certify(self, max_degree: int) -> dict:
        """Raise NotExact with a witness unless the window certifies H = 0."""
        report = self.homology_report(max_degree)
        for p in report["positions"]:
            if not p["exact"]:
                raise NotExact(
                    f"homology at position {p['position']} within weighted "
                    f"degree {max_degree}: kernel dimension {p['kernel_dim']}, "
                    f"image rank {p['image_rank']}")
        return report


def koszul_check(datum: RootDatum, nu, max_degree: int) -> dict:
    """Resolve the central character of nu and certify the resolution.

    The center is presented as the abstract polynomial ring on the
    fundamental invariants, one variable y_j of weighted degree deg I_j per
    invariant; the ideal of the character is generated by y_j - I_j(nu).
    The report certifies d^2 = 0, window exactness at every positive
    position, the augmentation at position zero, and Ext concentration in
    the top spot; any failure raises NotExact with a degree witness.
    """
    point = tuple(Fraction(x) for x in nu)
    if len(point) != datum.n:
        raise DimensionMismatch(f"parameter of length {len(point)}")
    invs = fundamental_invariants(datum)
    values = [p.evaluate(point + (Fraction(0),)) for _, p in invs]
    weights = [deg for deg, _ in invs]
    k = len(invs)
    gens = []
    for j, c in enumerate(values):
        var = MultiPoly.variable(k, j)
        gens.append(var - MultiPoly.constant(k, c))
    complex_ = KoszulComplex(k, gens, weights)
    if not complex_.check_d_squared():
        raise NotExact("differential does not square to zero")
    homology = complex_.certify(max_degree)
    augmentation = complex_.augmentation_report(values, max_degree)
    if not augmentation["fills_vanishing_ideal"]:
        raise NotExact(
            f"augmentation not exact within weighted degree {max_degree}")
    ext = complex_.ext_report(max_degree)
    if not (ext["below_top_exact"] and ext["top_concentrated"]):
        raise NotExact(
            f"dual complex not concentrated in top degree at {max_degree}")
    return {
        "type": datum.type_string,
        "nu": [str(x) for x in point],
        "length": k,
        "weights": weights,
        "values": [str(c) for c in values],
        "max_degree": max_degree,
        "d_squared_zero": True,
        "homology": homology,
        "augmentation": augmentation,
        "ext": ext,
        "all_ok": True,
    }
