"""Exact slice and big-cell geometry for SL_n and GL_n at desk scale.

Conventions: the principal nilpotent e sits on the subdiagonal (inside the
lower-triangular nilradical), f on the superdiagonal, h diagonal, so that
(e, h, f) is an sl2-triple.  The slice is the affine subspace e + z(f)
where z(f) is the centralizer of f: polynomials in f, plus scalars for gl.
B is the upper-triangular Borel, and the big Bruhat cell B w0 B is cut out
by the nonvanishing of the lower-left corner minors.

Characteristic polynomials are exchanged as coefficient tuples
(a_1, ..., a_n) meaning x^n + a_1 x^(n-1) + ... + a_n.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import List, Optional, Sequence, Tuple

from .errors import (BadCoefficients, ComponentMissesBigCell,
                     DimensionMismatch, NotInvertible, UnsupportedGroup)
from .linalg import (char_poly, det, identity, mat, mat_add, mat_inverse,
                     mat_mul, mat_scale, mat_sub, solve, zeros)

Matrix = Tuple[Tuple[Fraction, ...], ...]

_MAX_RANK = 4


def parse_group(name: str) -> Tuple[str, int]:
    """Split "SL3" into ("SL", 3); ranks above 4 are refused."""
    text = name.strip().upper()
    kind, digits = text[:2], text[2:]
    if kind not in ("SL", "GL") or not digits.isdigit():
        raise UnsupportedGroup(f"cannot parse group {name!r}")
    n = int(digits)
    if not 1 <= n <= _MAX_RANK:
        raise UnsupportedGroup(
            f"rank {n} outside the supported range 1..{_MAX_RANK}")
    return kind, n


def principal_triple(n: int) -> Tuple[Matrix, Matrix, Matrix]:
    """(e, h, f) with e subdiagonal, h = diag(1-n, 3-n, ...), f_i,i+1 = i(n-i)."""
    e = [[Fraction(0)] * n for _ in range(n)]
    f = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n - 1):
        e[i + 1][i] = Fraction(1)
        f[i][i + 1] = Fraction((i + 1) * (n - i - 1))
    h = [[Fraction(2 * i + 1 - n) if i == j else Fraction(0)
          for j in range(n)] for i in range(n)]
    return mat(e), mat(h), mat(f)


def _centralizer_of_f(kind: str, n: int) -> List[Matrix]:
    """Basis of z(f): powers f, f^2, ... (plus the identity for GL)."""
    _, _, f = principal_triple(n)
    basis = [identity(n)] if kind == "GL" else []
    power = identity(n)
    for _ in range(1, n):
        power = mat_mul(power, f)
        basis.append(power)
    return basis


def _descending(coeffs: tuple, n: int) -> tuple:
    """Reorder char_poly output (c_0..c_n) into (a_1, ..., a_n)."""
    return tuple(coeffs[n - k] for k in range(1, n + 1))


def slice_point(group: str, coeffs: Sequence) -> Matrix:
    """The slice matrix whose characteristic polynomial has the given coefficients.

    The coefficient a_(k+1) is affine-linear in the k-th slice coordinate
    once the earlier ones are fixed, and independent of the later ones, so
    the coordinates are solved one at a time from two evaluations each.
    """
    kind, n = parse_group(group)
    a = tuple(Fraction(x) for x in coeffs)
    if len(a) != n:
        raise BadCoefficients(f"expected {n} coefficients, got {len(a)}")
    if kind == "SL" and a[0] != 0:
        raise BadCoefficients("trace constraint: a_1 must vanish for SL")
    e, _, _ = principal_triple(n)
    basis = _centralizer_of_f(kind, n)
    offset = 0 if kind == "GL" else 1

    def build(ts):
        x = e
        for t, z in zip(ts, basis):
            x = mat_add(x, mat_scale(t, z))
        return x

    ts: List[Fraction] = []
    for step in range(len(basis)):
        k = step + offset
        base = _descending(char_poly(build(ts + [Fraction(0)])), n)
        bump = _descending(char_poly(build(ts + [Fraction(1)])), n)
        slope = bump[k] - base[k]
        assert slope != 0, "slice coordinate does not reach its coefficient"
        ts.append((a[k] - base[k]) / slope)
    x = build(ts)
    assert _descending(char_poly(x), n) == a
    return x


def krylov_regular(x: Matrix) -> bool:
    """True when the first basis vector is cyclic for x."""
    n = len(x)
    v = tuple(Fraction(1 if i == 0 else 0) for i in range(n))
    cols = [v]
    for _ in range(n - 1):
        v = tuple(sum(x[r][c] * v[c] for c in range(n)) for r in range(n))
        cols.append(v)
    return det(mat(zip(*cols))) != 0


def big_cell_test(g: Matrix) -> bool:
    """Membership in B w0 B: all lower-left corner minors nonzero."""
    n = len(g)
    if det(g) == 0:
        raise NotInvertible("group element required")
    for k in range(1, n):
        corner = [row[:k] for row in g[n - k:]]
        if det(mat(corner)) == 0:
            return False
    return True


def w0_representative(n: int) -> Matrix:
    """Signed antidiagonal lift of the longest element; determinant one."""
    a = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        a[i][n - 1 - i] = Fraction((-1) ** i)
    out = mat(a)
    assert det(out) == 1
    return out


# -- Kostant normalization -----------------------------------------------------


def _layers(n: int):
    """Entries of gl_n grouped by diagonal number j - i."""
    table = {}
    for i in range(n):
        for j in range(n):
            table.setdefault(j - i, []).append((i, j))
    return table


def _exp_nilpotent(u: Matrix) -> Matrix:
    n = len(u)
    out = identity(n)
    term = identity(n)
    for k in range(1, n):
        term = mat_scale(Fraction(1, k), mat_mul(term, u))
        out = mat_add(out, term)
    return out


def kostant_normalize(x: Matrix, kind: str) -> Tuple[Matrix, Matrix]:
    """Conjugate x in e + b into the slice by an upper unipotent.

    Works one diagonal layer at a time: at layer d >= 0 the defect splits as
    [e, u] + s with u in layer d + 1 and s in the centralizer of f, and
    conjugating by exp(u) clears the layer without touching lower ones.
    Returns (y, g) with y = g x g^(-1) in the slice.
    """
    n = len(x)
    for i in range(n):
        for j in range(n):
            if i == j + 1 and x[i][j] != 1:
                raise DimensionMismatch("matrix not of the form e + b")
            if i > j + 1 and x[i][j] != 0:
                raise DimensionMismatch("matrix not of the form e + b")
    e, _, _ = principal_triple(n)
    z_basis = _centralizer_of_f(kind, n)
    layers = _layers(n)
    total = identity(n)
    cur = mat(x)
    for d in range(0, n - 1):
        cells = layers[d]
        target = tuple(cur[i][j] - e[i][j] for (i, j) in cells)
        columns = []
        for (i, j) in layers[d + 1]:
            unit = [[Fraction(0)] * n for _ in range(n)]
            unit[i][j] = Fraction(1)
            bracket = mat_sub(mat_mul(e, mat(unit)), mat_mul(mat(unit), e))
            columns.append([bracket[r][c] for (r, c) in cells])
        for z in z_basis:
            columns.append([z[r][c] for (r, c) in cells])
        sol = solve(mat(zip(*columns)), target)
        assert sol is not None, "layer system must be consistent"
        u = [[Fraction(0)] * n for _ in range(n)]
        for val, (i, j) in zip(sol, layers[d + 1]):
            u[i][j] = val
        step = _exp_nilpotent(mat(u))
        cur = mat_mul(step, mat_mul(cur, mat_inverse(step)))
        total = mat_mul(step, total)
    return cur, total


def big_cell_pair(group: str, h_diag: Sequence, t_diag: Sequence) -> dict:
    """Produce and certify a big-cell point from torus data (h, t).

    The raw pair is (e + t + Ad(g)^(-1) e, g) with g = w0_rep^(-1) h; both
    moment legs, the raw element and its Ad(g)-image, lie in e + b, and
    normalizing each into the slice yields one common slice element x,
    giving the canonical pair (x, g') with g' x g'^(-1) = x and g' in the
    big cell.
    """
    kind, n = parse_group(group)
    h_vals = [Fraction(v) for v in h_diag]
    t_vals = [Fraction(v) for v in t_diag]
    if len(h_vals) != n or len(t_vals) != n:
        raise DimensionMismatch("torus data of the wrong length")
    if any(v == 0 for v in h_vals):
        raise NotInvertible("torus element needs nonzero entries")
    if kind == "SL":
        prod = Fraction(1)
        for v in h_vals:
            prod *= v
        if prod != 1:
            raise BadCoefficients("SL torus element needs determinant one")
        if sum(t_vals) != 0:
            raise BadCoefficients("sl torus vector needs trace zero")
    e, _, _ = principal_triple(n)
    h = mat([[h_vals[i] if i == j else 0 for j in range(n)] for i in range(n)])
    t = mat([[t_vals[i] if i == j else 0 for j in range(n)] for i in range(n)])
    g = mat_mul(mat_inverse(w0_representative(n)), h)
    ginv = mat_inverse(g)
    x_raw = mat_add(mat_add(e, t), mat_mul(ginv, mat_mul(e, g)))
    y_raw = mat_mul(g, mat_mul(x_raw, ginv))
    x_slice, n_left = kostant_normalize(x_raw, kind)
    y_slice, n_right = kostant_normalize(y_raw, kind)
    assert x_slice == y_slice, "both moment legs must reach one slice point"
    g_prime = mat_mul(n_right, mat_mul(g, mat_inverse(n_left)))
    fixed = mat_mul(g_prime, mat_mul(x_slice, mat_inverse(g_prime))) == x_slice
    rank = n - 1 if kind == "SL" else n
    return {
        "group": f"{kind}{n}",
        "slice_element": x_slice,
        "group_element": g_prime,
        "ad_fixes_slice_element": bool(fixed),
        "raw_big_cell": big_cell_test(g),
        "normalized_big_cell": big_cell_test(g_prime),
        "char_coeffs": _descending(char_poly(x_slice), n),
        "slice_dim": rank,
        "pair_parameters": 2 * rank,
    }


# -- centralizer components and fiber witnesses --------------------------------


def _poly_trim(p: List[Fraction]) -> List[Fraction]:
    q = list(p)
    while q and q[-1] == 0:
        q.pop()
    return q


def _poly_derivative(p: List[Fraction]) -> List[Fraction]:
    return _poly_trim([p[i] * i for i in range(1, len(p))])


def _poly_sub(a: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    out = [Fraction(0)] * max(len(a), len(b))
    for i, v in enumerate(a):
        out[i] += v
    for i, v in enumerate(b):
        out[i] -= v
    return _poly_trim(out)


def _poly_divmod(a: List[Fraction], b: List[Fraction]):
    a, b = _poly_trim(a), _poly_trim(b)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    r = list(a)
    while len(r) >= len(b) and r:
        shift = len(r) - len(b)
        c = r[-1] / b[-1]
        q[shift] = c
        for i, coef in enumerate(b):
            r[shift + i] -= c * coef
        r = _poly_trim(r)
    return _poly_trim(q), r


def _poly_gcd(a: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    a, b = _poly_trim(a), _poly_trim(b)
    while b:
        _, r = _poly_divmod(a, b)
        a, b = b, r
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def squarefree_multiplicities(p: Sequence) -> List[Tuple[int, int]]:
    """Yun decomposition of p (ascending coefficients).

    Returns pairs (multiplicity, degree of the square-free part carrying
    it); each complex root of that part occurs in p with exactly that
    multiplicity, so the multiset of root multiplicities is recovered
    without factoring over any extension.
    """
    p = _poly_trim([Fraction(c) for c in p])
    if len(p) <= 1:
        return []
    g = _poly_gcd(p, _poly_derivative(p))
    w, _ = _poly_divmod(p, g)
    y, _ = _poly_divmod(_poly_derivative(p), g)
    out = []
    i = 1
    while len(w) > 1:
        z = _poly_sub(y, _poly_derivative(w))
        q = _poly_gcd(w, z)
        if len(q) > 1:
            out.append((i, len(q) - 1))
        w, _ = _poly_divmod(w, q)
        y, _ = _poly_divmod(z, q)
        i += 1
    return out


def component_count(kind: str, n: int, ascending: Sequence) -> int:
    """Number of centralizer components: gcd of root multiplicities for SL.

    GL centralizers of regular elements are connected.  For SL, the
    determinant character restricted to the centralizer has connected
    kernel up to a cyclic group of that gcd order.
    """
    if kind == "GL":
        return 1
    d = 0
    for mult, deg in squarefree_multiplicities(ascending):
        if deg > 0:
            d = gcd(d, mult)
    return max(d, 1)


def _poly_of_matrix(coeffs: Sequence[Fraction], x: Matrix) -> Matrix:
    n = len(x)
    out = zeros(n, n)
    power = identity(n)
    for c in coeffs:
        out = mat_add(out, mat_scale(c, power))
        power = mat_mul(power, x)
    return out


def _witness_grid(n: int):
    """Small deterministic grid of polynomial coefficient tuples."""
    seeds = [Fraction(v) for v in (1, -1, 2, -2, 3, Fraction(1, 2))]
    for lead in seeds:
        for shift in [Fraction(0)] + seeds:
            yield (shift, lead) + (Fraction(0),) * max(0, n - 2)
    for a in seeds:
        for b in seeds:
            for c in seeds:
                yield ((a, b, c) + (Fraction(0),) * n)[:n]


def centralizer_witness(kind: str, x: Matrix) -> Optional[Matrix]:
    """A rational invertible polynomial in x passing the big-cell test.

    For SL the determinant is normalized away exactly: z^n / det(z) is
    again a polynomial in x and has determinant one.
    """
    n = len(x)
    for coeffs in _witness_grid(n):
        z = _poly_of_matrix(coeffs, x)
        d = det(z)
        if d == 0:
            continue
        if kind == "SL":
            zn = identity(n)
            for _ in range(n):
                zn = mat_mul(zn, z)
            z = mat_scale(1 / d, zn)
            assert det(z) == 1
        if big_cell_test(z):
            return z
    return None


def _render_matrix(m: Matrix) -> list:
    return [[str(v) for v in row] for row in m]


def fiber_vs_big_cell(group: str, coeffs: Sequence) -> dict:
    """Certify that every centralizer component meets the big cell.

    One rational witness suffices for every component: the center permutes
    the components transitively, scaling by a central root of unity zeta
    multiplies each corner minor by a power of zeta, and nonvanishing is
    preserved.  The componentwise witnesses are the central multiples of
    the base witness; -1 is itself central for even n, so its component
    gets a fully rational witness.
    """
    kind, n = parse_group(group)
    x = slice_point(group, coeffs)
    assert krylov_regular(x)
    a = tuple(Fraction(c) for c in coeffs)
    ascending = [a[n - 1 - i] for i in range(n)] + [Fraction(1)]
    components = component_count(kind, n, ascending)
    base = centralizer_witness(kind, x)
    if base is None:
        raise ComponentMissesBigCell(
            f"witness grid exhausted for {group} at {[str(c) for c in a]}")
    assert mat_mul(base, x) == mat_mul(x, base)
    if kind == "SL":
        assert det(base) == 1
    witnesses = []
    for k in range(components):
        if k == 0:
            element = _render_matrix(base)
            certificate = "explicit"
        elif n % 2 == 0 and k == (n // 2) % components:
            element = _render_matrix(mat_scale(Fraction(-1), base))
            certificate = "explicit"
        else:
            element = {"scale": f"zeta{n}^{k}", "base": _render_matrix(base)}
            certificate = "central-scaling"
        witnesses.append({
            "component": k,
            "element": element,
            "big_cell": True,
            "commutes_with_slice_point": True,
            "certificate": certificate,
        })
    return {
        "group": f"{kind}{n}",
        "nu": [str(c) for c in a],
        "slice_point": _render_matrix(x),
        "multiplicity_profile": squarefree_multiplicities(ascending),
        "components": components,
        "witnesses": witnesses,
        "all_meet_big_cell": True,
    }
