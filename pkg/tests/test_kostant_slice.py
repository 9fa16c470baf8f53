import random
from fractions import Fraction

import pytest

from nildaha.errors import (BadCoefficients, DimensionMismatch,
                            NotInvertible, UnsupportedGroup)
from nildaha.kostant_slice import (big_cell_pair, big_cell_test,
                                   centralizer_witness, component_count,
                                   fiber_vs_big_cell, kostant_normalize,
                                   krylov_regular, parse_group,
                                   principal_triple, slice_point,
                                   squarefree_multiplicities,
                                   w0_representative)
from nildaha.linalg import (char_poly, det, identity, mat, mat_inverse,
                            mat_mul, mat_scale, mat_sub, mat_trace)

F = Fraction


def descending(x):
    n = len(x)
    c = char_poly(x)
    return tuple(c[n - k] for k in range(1, n + 1))


def test_parse_group():
    assert parse_group("SL3") == ("SL", 3)
    assert parse_group(" gl2 ") == ("GL", 2)
    for bad in ["SP4", "SL5", "SL0", "XX2", "SL"]:
        with pytest.raises(UnsupportedGroup):
            parse_group(bad)


def test_principal_triple_relations():
    for n in (2, 3, 4):
        e, h, f = principal_triple(n)
        assert mat_sub(mat_mul(e, f), mat_mul(f, e)) == h
        assert mat_sub(mat_mul(h, e), mat_mul(e, h)) == mat_scale(2, e)
        assert mat_sub(mat_mul(h, f), mat_mul(f, h)) == mat_scale(-2, f)
        assert mat_trace(h) == 0


def test_slice_point_sl2():
    assert slice_point("SL2", (0, 0)) == mat([[0, 0], [1, 0]])
    # char poly t^2 - c comes from the slice matrix [[0, c], [1, 0]]
    c = F(5, 3)
    assert slice_point("SL2", (0, -c)) == mat([[0, c], [1, 0]])


def test_slice_point_char_coeffs_random():
    rng = random.Random(3)
    for group in ["SL2", "SL3", "GL2", "GL3", "SL4"]:
        kind, n = parse_group(group)
        for _ in range(5):
            a = [F(rng.randrange(-6, 7), rng.randrange(1, 4))
                 for _ in range(n)]
            if kind == "SL":
                a[0] = F(0)
            x = slice_point(group, a)
            assert descending(x) == tuple(a)
            assert krylov_regular(x)
            # slice shape: subdiagonal ones, nothing below
            for i in range(len(x)):
                for j in range(len(x)):
                    if i == j + 1:
                        assert x[i][j] == 1
                    elif i > j:
                        assert x[i][j] == 0


def test_slice_point_gl_includes_trace():
    x = slice_point("GL2", (3, 1))
    assert descending(x) == (F(3), F(1))
    assert mat_trace(x) == -3          # a_1 = -trace


def test_slice_point_bad_coefficients():
    with pytest.raises(BadCoefficients):
        slice_point("SL2", (1, 0))     # nonzero trace coefficient
    with pytest.raises(BadCoefficients):
        slice_point("SL3", (0, 1))     # wrong length


def test_krylov_regular():
    assert not krylov_regular(identity(2))
    assert krylov_regular(slice_point("SL3", (0, 1, 1)))


def test_big_cell_test():
    n = 3
    assert not big_cell_test(identity(n))
    assert big_cell_test(w0_representative(n))
    with pytest.raises(NotInvertible):
        big_cell_test(mat([[1, 0], [2, 0]]))
    for n in (1, 2, 3, 4):
        assert det(w0_representative(n)) == 1


def test_kostant_normalize_fixes_slice():
    x = slice_point("SL3", (0, F(1, 2), -2))
    y, g = kostant_normalize(x, "SL")
    assert y == x and g == identity(3)


def test_kostant_normalize_conjugacy():
    rng = random.Random(7)
    for kind, n in [("SL", 2), ("SL", 3), ("GL", 3), ("SL", 4)]:
        for _ in range(4):
            a = [F(rng.randrange(-4, 5)) for _ in range(n)]
            if kind == "SL":
                a[0] = F(0)
            x = slice_point(f"{kind}{n}", a)
            # conjugate into e + b by a random upper unipotent
            u = [[F(1 if i == j else 0) for j in range(n)] for i in range(n)]
            for i in range(n):
                for j in range(i + 1, n):
                    u[i][j] = F(rng.randrange(-3, 4))
            u = mat(u)
            moved = mat_mul(u, mat_mul(x, mat_inverse(u)))
            y, g = kostant_normalize(moved, kind)
            assert y == x                     # slice point is a full invariant
            assert mat_mul(g, mat_mul(moved, mat_inverse(g))) == y
            assert char_poly(moved) == char_poly(y)


def test_kostant_normalize_shape_guard():
    with pytest.raises(DimensionMismatch):
        kostant_normalize(mat([[0, 0], [2, 0]]), "SL")   # subdiagonal not 1
    with pytest.raises(DimensionMismatch):
        kostant_normalize(mat([[0, 0, 1], [1, 0, 0], [1, 1, 0]]), "SL")


def test_big_cell_pair_reports():
    rep = big_cell_pair("SL2", (2, F(1, 2)), (3, -3))
    assert rep["ad_fixes_slice_element"]
    assert rep["raw_big_cell"] and rep["normalized_big_cell"]
    assert rep["slice_dim"] == 1 and rep["pair_parameters"] == 2
    rep = big_cell_pair("GL2", (1, 2), (0, 5))
    assert rep["ad_fixes_slice_element"] and rep["slice_dim"] == 2
    rep = big_cell_pair("SL3", (1, 2, F(1, 2)), (1, -1, 0))
    assert rep["ad_fixes_slice_element"] and rep["normalized_big_cell"]
    assert rep["group"] == "SL3"


def test_big_cell_pair_validation():
    with pytest.raises(NotInvertible):
        big_cell_pair("SL2", (0, 1), (1, -1))
    with pytest.raises(BadCoefficients):
        big_cell_pair("SL2", (2, 2), (1, -1))      # det != 1
    with pytest.raises(BadCoefficients):
        big_cell_pair("SL2", (2, F(1, 2)), (1, 1))  # trace != 0
    with pytest.raises(DimensionMismatch):
        big_cell_pair("SL2", (2, F(1, 2), 1), (1, -1))


def test_squarefree_multiplicities():
    assert squarefree_multiplicities([0, 0, 1]) == [(2, 1)]          # x^2
    assert squarefree_multiplicities([0, 0, 0, 1]) == [(3, 1)]       # x^3
    assert squarefree_multiplicities([-1, 0, 1]) == [(1, 2)]         # x^2 - 1
    assert squarefree_multiplicities([2, -3, 0, 1]) == [(1, 1), (2, 1)]
    assert squarefree_multiplicities([4, 0, -4, 0, 1]) == [(2, 2)]   # (x^2-2)^2


def test_component_count():
    assert component_count("GL", 2, [0, 0, 1]) == 1
    assert component_count("SL", 2, [0, 0, 1]) == 2
    assert component_count("SL", 2, [-2, 0, 1]) == 1
    assert component_count("SL", 3, [0, 0, 0, 1]) == 3
    assert component_count("SL", 4, [4, 0, -4, 0, 1]) == 2


def test_centralizer_witness_commutes():
    x = slice_point("SL3", (0, 0, 0))
    z = centralizer_witness("SL", x)
    assert z is not None
    assert mat_mul(z, x) == mat_mul(x, z)
    assert det(z) == 1
    assert big_cell_test(z)


def test_fiber_vs_big_cell_sl2_nilpotent():
    rep = fiber_vs_big_cell("SL2", (0, 0))
    assert rep["components"] == 2 and rep["all_meet_big_cell"]
    assert rep["multiplicity_profile"] == [(2, 1)]
    w0, w1 = rep["witnesses"]
    assert w0["element"] == [["1", "0"], ["2", "1"]]
    assert w0["certificate"] == "explicit"
    # the second component is reached by the central -1
    assert w1["element"] == [["-1", "0"], ["-2", "-1"]]
    assert w1["certificate"] == "explicit"


def test_fiber_vs_big_cell_other_groups():
    rep = fiber_vs_big_cell("SL2", (0, -2))
    assert rep["components"] == 1
    rep = fiber_vs_big_cell("GL2", (1, 1))
    assert rep["components"] == 1 and rep["witnesses"][0]["certificate"] == "explicit"
    rep = fiber_vs_big_cell("SL3", (0, 0, 0))
    assert rep["components"] == 3
    certs = [w["certificate"] for w in rep["witnesses"]]
    assert certs == ["explicit", "central-scaling", "central-scaling"]
    rep = fiber_vs_big_cell("SL4", (0, -4, 0, 4))
    assert rep["components"] == 2
    assert rep["witnesses"][1]["certificate"] == "central-scaling"
    assert rep["witnesses"][1]["element"]["scale"] == "zeta4^1"
