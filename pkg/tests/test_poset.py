import random

import pytest

from gen import random_terms
from pscatter.dimtype import le_h
from pscatter.ordinal import OMEGA, ZERO
from pscatter.poset import EmptyProjectionWarning, class_of, lift, project, psi_order_check
from pscatter.stable import normalize
from pscatter.syntax import parse_ordinal as O, parse_term as T
from pscatter.terms import EMPTY, ISUM, PT, Jlim, TermError, build_J


def test_project_examples():
    assert project(build_J(O("w+1")), OMEGA) == PT
    assert normalize(project(lift(T("i(2)"), OMEGA), OMEGA)) == T("i(2)")
    with pytest.warns(EmptyProjectionWarning):
        assert project(Jlim(OMEGA), OMEGA) == EMPTY


def test_project_needs_a_limit():
    with pytest.raises(TermError):
        project(T("J(3)"), 2)


def test_lift_examples():
    assert lift(PT, OMEGA) == build_J(O("w+1"))
    assert lift(EMPTY, OMEGA) == EMPTY
    assert lift(T("i(2)"), OMEGA) == T("cone(w*J(w+1))")


def test_lift_rejects_large_rank():
    with pytest.raises(TermError):
        lift(T("J(w+1)"), OMEGA)


def test_lift_of_isum_is_not_expressible():
    with pytest.raises(TermError):
        lift(ISUM, OMEGA)
    assert lift(ISUM, ZERO) == ISUM


def test_psi_examples():
    rep = psi_order_check(T("i(2)"), T("J(2)"))
    assert rep.agree
    assert rep.forward.proved and rep.backward.refuted
    rep = psi_order_check(T("i(3) + J(2)"), T("i(3) + J(2)"))
    assert rep.agree and rep.forward.proved and rep.backward.proved
    rep = psi_order_check(T("i(4)"), T("J(3)"))
    assert rep.agree and rep.forward.refuted and rep.backward.refuted


def test_round_trip_on_random_terms():
    for lam in (OMEGA, O("w*2"), O("w^2")):
        for Z in random_terms(51, 150, max_rank=4):
            assert normalize(project(lift(Z, lam), lam)) == normalize(Z)


def test_round_trip_with_limit_members():
    for Z in [Jlim(OMEGA), T("J(w) + i(3)"), T("w1*J(w) + J(2)")]:
        assert normalize(project(lift(Z, OMEGA), OMEGA)) == normalize(Z)


def test_lifted_terms_live_in_the_class():
    for Z in random_terms(52, 100, max_rank=4):
        assert class_of(lift(Z, OMEGA)).lam == OMEGA


def test_class_of():
    assert class_of(T("J(3)")).lam == ZERO
    assert class_of(Jlim(OMEGA)).lam == ZERO
    assert class_of(Jlim(O("w*2"))).lam == OMEGA
    assert class_of(T("J(w*3+2)")).lam == O("w*3")
    with pytest.raises(TermError):
        class_of(Jlim(O("w^2")))


def test_bottom_and_top_of_the_class():
    bottom, top = build_J(O("w+1")), Jlim(O("w*2"))
    for Z in random_terms(53, 60, max_rank=4):
        X = lift(Z, OMEGA)
        assert le_h(bottom, X).proved
        assert le_h(X, top).proved


def test_order_agrees_under_lift():
    rng = random.Random(54)
    xs = random_terms(54, 80, max_rank=3)
    for _ in range(80):
        a, b = rng.choice(xs), rng.choice(xs)
        rep = psi_order_check(a, b)
        assert rep.agree, rep.to_dict()


def test_psi_rejects_large_rank():
    with pytest.raises(TermError):
        psi_order_check(T("J(w+1)"), PT)
