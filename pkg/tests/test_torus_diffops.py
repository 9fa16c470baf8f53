import random
from fractions import Fraction

import pytest

from nildaha.errors import DatumMismatch, NotWInvariant
from nildaha.exact_algebra import MultiPoly, OreFactor
from nildaha.nil_daha import daha_generator, spherical_idempotent
from nildaha.root_data import build_root_datum
from nildaha.torus_diffops import (DtElt, Sublattice, dt_embed_daha,
                                   dt_is_invariant, dt_symmetrize,
                                   dt_weyl_act, isogeny_filter, ore_move,
                                   random_dt_element, require_invariant,
                                   sandwich_report, shift_poly)

F = Fraction


def test_exchange_rule():
    # p e^mu = e^mu shift_mu(p): the coefficient crossing an exponential
    # picks up <mu, .> hbar on every t coordinate
    d = build_root_datum("A1")
    h = MultiPoly.variable(2, 0)
    p = DtElt.from_poly(d, h)
    ex = DtElt.exponential(d, (1,))
    hbar = MultiPoly.variable(2, 1)
    assert p * ex == DtElt(d, {(1,): h + hbar})
    assert ex * p == DtElt(d, {(1,): h})
    assert shift_poly(d, h, (2,)) == h + 2 * hbar
    assert shift_poly(d, h, (2,), level=F(1, 2)) == h + 1


def test_dt_ring_axioms():
    rng = random.Random(3)
    for t in ["A1", "A2", "A1xT1"]:
        d = build_root_datum(t)
        for _ in range(8):
            a = random_dt_element(d, rng)
            b = random_dt_element(d, rng)
            c = random_dt_element(d, rng)
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            assert a + b == b + a
            assert a * DtElt.one(d) == a == DtElt.one(d) * a
            assert (a - a).is_zero()


def test_weyl_action_on_operators():
    d = build_root_datum("A2")
    rng = random.Random(5)
    for _ in range(6):
        x = random_dt_element(d, rng)
        y = random_dt_element(d, rng)
        for w in d.weyl_elements:
            assert dt_weyl_act(w, x * y) == dt_weyl_act(w, x) * dt_weyl_act(w, y)
        sym = dt_symmetrize(x)
        assert dt_is_invariant(sym)
        assert require_invariant(sym) is sym
    ex = DtElt.exponential(d, (1, 0))
    assert not dt_is_invariant(ex)
    with pytest.raises(NotWInvariant):
        require_invariant(ex)


def test_symmetrize_fixes_invariants():
    d = build_root_datum("A1")
    orbit = DtElt.exponential(d, (1,)) + DtElt.exponential(d, (-1,))
    assert dt_symmetrize(orbit) == orbit


def test_embed_multiplicative_random():
    rng = random.Random(11)
    for t in ["A1", "A2"]:
        d = build_root_datum(t)
        for _ in range(10):
            x = random_dt_element(d, rng)
            y = random_dt_element(d, rng)
            assert dt_embed_daha(x * y) == dt_embed_daha(x) * dt_embed_daha(y)
            assert dt_embed_daha(x + y) == dt_embed_daha(x) + dt_embed_daha(y)
    assert dt_embed_daha(DtElt.one(build_root_datum("A1"))) == \
        daha_generator(build_root_datum("A1"), "poly", 1)


def test_embed_sends_exponential_to_translation():
    d = build_root_datum("A2")
    mu = (1, -1)
    img = dt_embed_daha(DtElt.exponential(d, mu))
    assert img == daha_generator(d, "translate", mu)


def test_embed_specialized_level():
    d = build_root_datum("A1")
    rng = random.Random(13)
    for _ in range(6):
        x = random_dt_element(d, rng, level=F(1))
        y = random_dt_element(d, rng, level=F(1))
        assert dt_embed_daha(x * y) == dt_embed_daha(x) * dt_embed_daha(y)


def test_ore_move():
    f = OreFactor((1, 0), 0)
    assert ore_move(f, (1, 0), "left") == OreFactor((1, 0), 1)
    assert ore_move(f, (1, 0), "right") == OreFactor((1, 0), -1)
    assert ore_move(ore_move(f, (2, 1), "left"), (2, 1), "right") == f
    with pytest.raises(ValueError):
        ore_move(f, (1, 0), "sideways")


def test_sublattice():
    d = build_root_datum("A2")
    full = Sublattice.full(d)
    assert full.index_in_full() == 1
    root = Sublattice.root_lattice(d)
    # A2 root lattice has index 3 in the weight lattice
    assert root.index_in_full() == 3
    assert root.contains((2, -1))        # alpha_1
    assert root.contains((1, 1))         # theta
    assert not root.contains((1, 0))     # a fundamental weight
    line = Sublattice(d, [(2, 0)])
    assert line.index_in_full() is None
    assert line.contains((4, 0)) and not line.contains((2, 1))


def test_isogeny_filter():
    d = build_root_datum("A2")
    root = Sublattice.root_lattice(d)
    x = DtElt.exponential(d, (2, -1)) + DtElt.exponential(d, (1, 0))
    kept = isogeny_filter(x, root)
    assert kept == DtElt.exponential(d, (2, -1))
    with pytest.raises(DatumMismatch):
        isogeny_filter(DtElt.one(build_root_datum("A1")), root)


def test_sandwich_products_small():
    d = build_root_datum("A1")
    e = spherical_idempotent(d)
    rng = random.Random(7)
    for _ in range(4):
        a = dt_symmetrize(random_dt_element(d, rng))
        b = dt_symmetrize(random_dt_element(d, rng))
        fa, fb = dt_embed_daha(a), dt_embed_daha(b)
        assert fa * e == e * fa              # invariants commute with e
        assert (e * fa * e) * (e * fb * e) == e * dt_embed_daha(a * b) * e


def test_sandwich_report():
    rep = sandwich_report(build_root_datum("A1"), count=3, seed=1)
    assert rep["all_ok"] and rep["invariant_pairs"] == 3
    assert rep["generator_pair_failures"] == []
    rep = sandwich_report(build_root_datum("A1xT1"), count=2, seed=2,
                          level=F(1))
    assert rep["all_ok"]
