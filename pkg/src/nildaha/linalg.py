"""Exact dense linear algebra over Fraction.

Matrices are tuples of row tuples.  Everything here is small (desk scale),
so plain Gaussian elimination with exact rationals is the right tool; no
pivoting heuristics are needed beyond skipping zero pivots.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

Matrix = tuple
Vector = tuple


def mat(rows) -> Matrix:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n))


def zeros(n: int, m: int) -> Matrix:
    return tuple(tuple(Fraction(0) for _ in range(m)) for _ in range(n))


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(c, a: Matrix) -> Matrix:
    c = Fraction(c)
    return tuple(tuple(c * x for x in row) for row in a)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    bt = tuple(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def mat_vec(a: Matrix, v: Sequence) -> Vector:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def mat_trace(a: Matrix):
    return sum(a[i][i] for i in range(len(a)))


def mat_inverse(a: Matrix) -> Matrix:
    """Gauss-Jordan inverse; raises ZeroDivisionError on singular input."""
    n = len(a)
    work = [list(row) + [Fraction(1 if i == j else 0) for j in range(n)]
            for i, row in enumerate(mat(a))]
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col] != 0), None)
        if pivot is None:
            raise ZeroDivisionError("matrix is singular")
        work[col], work[pivot] = work[pivot], work[col]
        inv = Fraction(1) / work[col][col]
        work[col] = [x * inv for x in work[col]]
        for r in range(n):
            if r != col and work[r][col] != 0:
                factor = work[r][col]
                work[r] = [x - factor * y for x, y in zip(work[r], work[col])]
    return tuple(tuple(row[n:]) for row in work)


def det(a: Matrix) -> Fraction:
    n = len(a)
    work = [list(map(Fraction, row)) for row in a]
    result = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            work[col], work[pivot] = work[pivot], work[col]
            result = -result
        result *= work[col][col]
        inv = Fraction(1) / work[col][col]
        for r in range(col + 1, n):
            if work[r][col] != 0:
                factor = work[r][col] * inv
                work[r] = [x - factor * y for x, y in zip(work[r], work[col])]
    return result


def char_poly(a: Matrix) -> tuple:
    """Coefficients (c_0 .. c_n) of det(x*I - A) = sum c_k x^k, c_n = 1.

    Faddeev-LeVerrier recursion; exact over Fraction.
    """
    n = len(a)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    m = zeros(n, n)
    c = Fraction(1)
    for k in range(1, n + 1):
        m = mat_mul(a, m)
        m = tuple(
            tuple(m[i][j] + (c if i == j else 0) for j in range(n)) for i in range(n)
        )
        am = mat_mul(a, m)
        c = -mat_trace(am) / k
        coeffs[n - k] = c
    return tuple(coeffs)


def rref(rows) -> list:
    """Reduced row echelon basis of the row span.  Returns a list of rows
    (tuples of Fraction) with leading ones at strictly increasing pivots."""
    work = [list(map(Fraction, r)) for r in rows if any(x != 0 for x in r)]
    basis = []
    for row in work:
        for b in basis:
            piv = next(i for i, x in enumerate(b) if x != 0)
            if row[piv] != 0:
                factor = row[piv]
                row = [x - factor * y for x, y in zip(row, b)]
        if any(x != 0 for x in row):
            piv = next(i for i, x in enumerate(row) if x != 0)
            inv = Fraction(1) / row[piv]
            row = [x * inv for x in row]
            basis.append(row)
    basis.sort(key=lambda b: next(i for i, x in enumerate(b) if x != 0))
    # back-substitute for a canonical reduced basis
    for i, b in enumerate(basis):
        piv = next(j for j, x in enumerate(b) if x != 0)
        for k in range(len(basis)):
            if k != i and basis[k][piv] != 0:
                factor = basis[k][piv]
                basis[k] = [x - factor * y for x, y in zip(basis[k], b)]
    return [tuple(b) for b in basis]


def rank(rows) -> int:
    return len(rref(rows))


def in_span(vector, basis_rows) -> bool:
    """True if vector lies in the row span of basis_rows."""
    before = rank(list(basis_rows))
    after = rank(list(basis_rows) + [vector])
    return before == after


def solve(a: Matrix, b: Sequence) -> Optional[Vector]:
    """One solution x of A x = b, or None if inconsistent.  Free variables
    are set to zero."""
    n = len(a)
    m = len(a[0]) if n else 0
    work = [list(map(Fraction, row)) + [Fraction(bv)] for row, bv in zip(a, b)]
    pivots = []
    r = 0
    for col in range(m):
        pivot = next((i for i in range(r, n) if work[i][col] != 0), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        inv = Fraction(1) / work[r][col]
        work[r] = [x * inv for x in work[r]]
        for i in range(n):
            if i != r and work[i][col] != 0:
                factor = work[i][col]
                work[i] = [x - factor * y for x, y in zip(work[i], work[r])]
        pivots.append(col)
        r += 1
        if r == n:
            break
    for i in range(r, n):
        if work[i][m] != 0:
            return None
    x = [Fraction(0)] * m
    for row_idx, col in enumerate(pivots):
        x[col] = work[row_idx][m]
    return tuple(x)


def nullspace(a: Matrix) -> list:
    """Basis of the right null space {x : A x = 0}, canonical per rref."""
    n = len(a)
    m = len(a[0]) if n else 0
    if m == 0:
        return []
    reduced = rref(a)
    pivots = [next(i for i, x in enumerate(row) if x != 0) for row in reduced]
    free = [j for j in range(m) if j not in pivots]
    out = []
    for f in free:
        vec = [Fraction(0)] * m
        vec[f] = Fraction(1)
        for row, piv in zip(reduced, pivots):
            vec[piv] = -row[f]
        out.append(tuple(vec))
    return out
