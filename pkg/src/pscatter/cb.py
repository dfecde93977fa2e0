"""Cantor-Bendixson derivatives, ranks, truncations and cardinalities."""
from __future__ import annotations

from .ordinal import OMEGA, ONE, ZERO, Ordinal, ord_add, ord_left_subtract
from .terms import (
    EMPTY,
    FIN0,
    FIN1,
    PT,
    W1,
    Cone,
    Empty,
    ISumOmega,
    Jlim,
    Mult,
    Pt,
    Sum,
    Term,
    build_i,
    build_J,
    flat_sum,
    make_sum,
)

__all__ = ["rank", "derivative", "derive", "truncate", "card_at", "cardinality"]


def rank(X: Term) -> Ordinal:
    """The least alpha with an empty alpha-th derivative."""
    r = X._rank
    if r is not None:
        return r
    if isinstance(X, Empty):
        r = ZERO
    elif isinstance(X, Pt):
        r = ONE
    elif isinstance(X, Sum):
        r = max(rank(s) for _, s in X.entries)
    elif isinstance(X, Cone):
        r = ord_add(rank(X.slice), ONE)
    elif isinstance(X, Jlim):
        r = X.lam
    elif isinstance(X, ISumOmega):
        r = OMEGA
    else:
        raise TypeError(f"not a term: {X!r}")
    X._rank = r
    return r


def derive(X: Term, alpha) -> Term:
    """X^(alpha)."""
    alpha = Ordinal.of(alpha)
    if alpha.is_zero or isinstance(X, Empty):
        return X
    if isinstance(X, Pt):
        return EMPTY
    if isinstance(X, Sum):
        return make_sum((m, derive(s, alpha)) for m, s in X.entries)
    if isinstance(X, Cone):
        r = rank(X.slice)
        if alpha < r:
            return Cone(derive(X.slice, alpha))
        return PT if alpha == r else EMPTY
    if isinstance(X, Jlim):
        # J(gamma)^(alpha) = J(-alpha + gamma), and these indices fill (0, -alpha + lam)
        if alpha < X.lam:
            return Jlim(ord_left_subtract(alpha, X.lam))
        return EMPTY
    if isinstance(X, ISumOmega):
        return X if alpha < OMEGA else EMPTY
    raise TypeError(f"not a term: {X!r}")


def derivative(X: Term) -> Term:
    """The set of non-isolated points."""
    return derive(X, ONE)


def truncate(X: Term, alpha) -> Term:
    """X minus X^(alpha)."""
    alpha = Ordinal.of(alpha)
    if alpha.is_zero or isinstance(X, Empty):
        return EMPTY
    if rank(X) <= alpha:
        return X
    if isinstance(X, Sum):
        return flat_sum((m, truncate(s, alpha)) for m, s in X.entries)
    if isinstance(X, Cone):
        return flat_sum([(W1, truncate(X.slice, alpha))])
    if isinstance(X, Jlim):
        # J(gamma) for gamma <= alpha survive whole; every longer member leaves w1 * J(alpha)
        return make_sum(_j_prefix(alpha) + [(W1, build_J(alpha))])
    if isinstance(X, ISumOmega):
        k = int(alpha)
        return make_sum([(FIN1, build_i(n)) for n in range(1, k)] + [(W1, build_i(k))])
    raise TypeError(f"not a term: {X!r}")


def _j_prefix(alpha: Ordinal):
    """Entries of the sum of J(gamma) over 0 < gamma < alpha."""
    if alpha.is_finite:
        return [(FIN1, build_J(n)) for n in range(1, int(alpha))]
    mu, n = alpha.limit_part, alpha.finite_part
    out = [(FIN1, Jlim(mu))]
    for k in range(0, n):
        out.append((FIN1, build_J(ord_add(mu, Ordinal.of(k))) if k else Jlim(mu)))
    return out


def cardinality(X: Term) -> Mult:
    if isinstance(X, Empty):
        return FIN0
    if isinstance(X, Pt):
        return FIN1
    if isinstance(X, Sum):
        total = FIN0
        for m, s in X.entries:
            total = total + m * cardinality(s)
        return total
    return W1


def card_at(X: Term, alpha) -> Mult:
    """|X^(alpha)| as a multiplicity."""
    return cardinality(derive(X, alpha))
