import random

from gen import random_terms
from pscatter.cb import card_at, derivative, derive, rank, truncate
from pscatter.ordinal import OMEGA, ONE, ZERO, Ordinal, ord_add, ord_left_subtract
from pscatter.stable import normalize
from pscatter.syntax import parse_ordinal as O, parse_term as T
from pscatter.terms import EMPTY, ISUM, PT, Jlim, Mult, build_i, build_J


def test_derivative_examples():
    assert derivative(build_J(3)) == build_J(2)
    assert derivative(PT) == EMPTY
    assert derivative(Jlim(OMEGA)) == Jlim(OMEGA)


def test_derive_examples():
    assert derive(build_J(O("w+1")), OMEGA) == PT
    X = T("i(3) + w1*J(2)")
    assert derive(X, 0) == X
    assert derive(build_i(4), 3) == PT


def test_rank_examples():
    assert rank(build_J(2)) == Ordinal.of(2)
    assert rank(EMPTY) == ZERO
    assert rank(T("cone(w*J(w))")) == O("w+1")
    assert rank(ISUM) == OMEGA


def test_truncate_examples():
    assert truncate(build_J(3), 1) == T("w1*pt")
    assert truncate(PT, 0) == EMPTY
    assert truncate(build_i(2), 2) == build_i(2)


def test_truncate_limit_primitives():
    assert normalize(truncate(Jlim(OMEGA), 2)) == normalize(T("pt + w1*J(2)"))
    assert truncate(ISUM, 3) == T("pt + i(2) + w1*i(3)")


def test_card_at_examples():
    assert card_at(build_J(2), 1) == Mult(1)
    assert card_at(build_J(OMEGA), 0) == Mult.of("w1")
    assert card_at(T("w*pt"), 1) == Mult(0)


def test_limit_derivatives_follow_members():
    J = Jlim(O("w*2"))
    assert derive(J, OMEGA) == Jlim(OMEGA)
    assert derive(J, O("w+3")) == Jlim(OMEGA)
    assert derive(ISUM, 5) == ISUM
    assert derive(ISUM, OMEGA) == EMPTY


def _small_ordinals(r: Ordinal):
    out = [Ordinal.of(k) for k in range(4)]
    if not r.is_finite:
        out += [OMEGA, ord_add(OMEGA, ONE)]
    return out


def test_derive_composition():
    for X in random_terms(5, 300, max_rank=4, limits=True):
        for a in _small_ordinals(rank(X)):
            for b in (ONE, Ordinal.of(2), OMEGA):
                assert normalize(derive(derive(X, a), b)) == normalize(derive(X, ord_add(a, b)))


def test_rank_subtraction_law():
    for X in random_terms(6, 300, max_rank=4, limits=True):
        r = rank(X)
        for a in _small_ordinals(r):
            want = ord_left_subtract(a, r) if a < r else ZERO
            assert rank(derive(X, a)) == want


def test_truncate_and_derive_split_the_space():
    rng = random.Random(7)
    for X in random_terms(7, 300, max_rank=4):
        a = Ordinal.of(rng.randint(1, 4))
        t = truncate(X, a)
        assert derive(t, a) == EMPTY or normalize(derive(t, a)) == EMPTY
        assert rank(t) == min(rank(X), a)
        assert card_at(t, 0) <= card_at(X, 0)


def test_card_at_is_monotone_in_the_level():
    for X in random_terms(8, 300, max_rank=4, limits=True):
        levels = _small_ordinals(rank(X))
        cards = [card_at(X, a) for a in levels]
        assert all(cards[i + 1] <= cards[i] for i in range(len(cards) - 1))
