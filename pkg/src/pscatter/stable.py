"""Normal forms, stable sets and homeomorphism of space terms.

A normal form is a sum of stable entries.  Stable entries are ``pt``,
cones over saturated normal-form slices, ``J(lam)`` for limit ``lam`` and
``isum``.  The rewrite rules are

* R0 flatten: a sum nested in a sum is spliced, counts multiplied;
* R1 saturate: inside a cone slice finite counts become ``w``;
* RJ counts: ``k*J(lam) -> J(lam)`` for every k, ``k*isum -> isum`` for
  finite k and ``w``;
* R2 absorb: an entry swallows a lower-rank entry that its own slices
  (or, for the limit primitives, its members) can absorb.

:func:`normalize` applies them bottom-up.  :func:`rewrite_normalize`
applies single steps at randomly chosen sites and must reach the same
term.
"""
from __future__ import annotations

import random
import threading
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from .cb import rank
from .ordinal import OMEGA1, ONE, ord_add
from .terms import (
    EMPTY,
    FIN1,
    PT,
    W,
    W1,
    Cone,
    Empty,
    ISumOmega,
    Jlim,
    Mult,
    Pt,
    Sum,
    Term,
    TermError,
    build_i,
    build_J,
    entries_of,
    flat_sum,
    make_sum,
)

__all__ = [
    "normalize",
    "rewrite_normalize",
    "rewrite_sites",
    "apply_rewrite",
    "absorbs",
    "is_stable",
    "enumerate_stable",
    "StableBasis",
    "CanonVector",
    "canon_vector",
    "is_homeo",
    "saturated_slice",
    "segment_profile",
]


def _flatten(X: Term, k: Mult = FIN1, out=None) -> List[Tuple[Mult, Term]]:
    if out is None:
        out = []
    if isinstance(X, Sum):
        for m, s in X.entries:
            _flatten(s, k * m, out)
    elif not isinstance(X, Empty):
        out.append((k, X))
    return out


def _count_rule(m: Mult, G: Term) -> Mult:
    if isinstance(G, Jlim):
        return FIN1
    if isinstance(G, ISumOmega) and not m.is_omega1:
        return FIN1
    return m


def _saturate_count(m: Mult, G: Term) -> Mult:
    if isinstance(G, (Jlim, ISumOmega)):
        return _count_rule(m, G)
    return m.saturate()


def absorbs(big: Tuple[Mult, Term], small: Tuple[Mult, Term]) -> bool:
    """Whether mu*F + c*G is homeomorphic to mu*F, for big=(mu,F), small=(c,G)."""
    mu, F = big
    c, G = small
    rG = rank(G)
    if not rG < rank(F) or rG.is_zero:
        return False
    k = W1 if mu.is_omega1 else W
    if isinstance(F, Cone):
        T = _slice_nf(F.slice)
        base = _normalize(make_sum([(k, T)]))
    elif isinstance(F, Jlim):
        base = _normalize(make_sum([(W1, build_J(ord_add(rG, ONE)))]))
    elif isinstance(F, ISumOmega):
        base = _normalize(make_sum([(k, build_i(int(rG) + 1))]))
    else:
        return False
    return _normalize(flat_sum([(c, G), (FIN1, base)])) == base


@lru_cache(maxsize=None)
def _slice_nf(S: Term) -> Term:
    N = _normalize(S)
    return _normalize(make_sum((_saturate_count(m, G), G) for m, G in entries_of(N)))


def saturated_slice(S: Term) -> Term:
    """Normal form of w * S, the canonical slice of Cone(S)."""
    return _slice_nf(S)


def _component_nf(G: Term) -> Term:
    if isinstance(G, Cone):
        return Cone(_slice_nf(G.slice))
    return G


@lru_cache(maxsize=None)
def _normalize(X: Term) -> Term:
    acc: Dict[Term, Mult] = {}
    for m, G in _flatten(X):
        G = _component_nf(G)
        acc[G] = acc.get(G, Mult(0)) + m
    entries = [(_count_rule(m, G), G) for G, m in acc.items()]
    kept = [
        e for i, e in enumerate(entries)
        if not any(absorbs(f, e) for j, f in enumerate(entries) if j != i)
    ]
    return make_sum(kept)


def normalize(X: Term) -> Term:
    """Canonical representative of the homeomorphism class of X."""
    if not rank(X) < OMEGA1:
        raise TermError("normal forms are only defined for countable rank")
    return _normalize(X)


def is_homeo(X: Term, Y: Term) -> bool:
    return normalize(X) == normalize(Y)


def is_stable(X: Term) -> bool:
    """A single stable entry in normal form."""
    return isinstance(X, (Pt, Cone, Jlim, ISumOmega)) and normalize(X) == X


# -- step-wise rewriting --------------------------------------------------------

def rewrite_sites(X: Term, path=(), in_slice=False):
    """All single-step rewrites applicable somewhere in X.

    Each site is ``(path, rule, args)``; paths index sum entries (ints) and
    cone slices (the string "s").
    """
    sites = []
    if isinstance(X, Cone):
        S = X.slice
        if not isinstance(S, Sum) and not isinstance(S, (Jlim, ISumOmega)):
            sites.append((path + ("s",), "saturate-single", ()))
        sites.extend(rewrite_sites(S, path + ("s",), True))
    elif isinstance(X, Sum):
        E = X.entries
        for i, (m, s) in enumerate(E):
            if isinstance(s, Sum):
                sites.append((path, "flatten", (i,)))
            elif _count_rule(m, s) != m:
                sites.append((path, "count", (i,)))
            elif in_slice and _saturate_count(m, s) != m:
                sites.append((path, "saturate", (i,)))
        for i, e in enumerate(E):
            for j, f in enumerate(E):
                if i != j and not isinstance(f[1], Sum) and absorbs(f, e):
                    sites.append((path, "absorb", (i, j)))
        for i, (m, s) in enumerate(E):
            sites.extend(rewrite_sites(s, path + (i,), False))
    return sites


def _apply_here(X: Term, rule: str, args) -> Term:
    if rule == "saturate-single":
        return make_sum([(_saturate_count(FIN1, X), X)])
    E = list(X.entries)
    if rule == "flatten":
        (i,) = args
        m, s = E.pop(i)
        E.extend((m * k, t) for k, t in s.entries)
    elif rule == "count":
        (i,) = args
        m, s = E[i]
        E[i] = (_count_rule(m, s), s)
    elif rule == "saturate":
        (i,) = args
        m, s = E[i]
        E[i] = (_saturate_count(m, s), s)
    elif rule == "absorb":
        i, _ = args
        E.pop(i)
    else:
        raise ValueError(f"unknown rule {rule}")
    return make_sum(E)


def apply_rewrite(X: Term, site) -> Term:
    path, rule, args = site
    if not path:
        return _apply_here(X, rule, args)
    head, rest = path[0], path[1:]
    if head == "s":
        return Cone(apply_rewrite(X.slice, (rest, rule, args)))
    E = list(X.entries)
    m, s = E[head]
    E[head] = (m, apply_rewrite(s, (rest, rule, args)))
    return make_sum(E)


def rewrite_normalize(X: Term, rng: Optional[random.Random] = None, trace: Optional[list] = None) -> Term:
    """Rewrite to a normal form one randomly chosen step at a time."""
    rng = rng or random.Random(0)
    while True:
        sites = rewrite_sites(X)
        if not sites:
            return X
        site = rng.choice(sites)
        X = apply_rewrite(X, site)
        if trace is not None:
            trace.append((site, X))


# -- stable basis --------------------------------------------------------------

@dataclass(frozen=True)
class StableBasis:
    rank_bound: int
    elements: Tuple[Term, ...]
    levels: Tuple[Tuple[Term, ...], ...]

    def index(self, t: Term) -> int:
        return self.elements.index(t)

    def __len__(self):
        return len(self.elements)


_basis_lock = threading.Lock()
_levels: List[Tuple[Term, ...]] = [(PT,)]


def _next_level(lower: List[Term], k: int) -> Tuple[Term, ...]:
    # slices reachable by adding tau*Y one basis element at a time, tagged by
    # whether a rank-k element was used
    sums = {(EMPTY, False)}
    for Y in lower:
        top = rank(Y) == k
        nxt = set()
        for s, used in sums:
            nxt.add((s, used))
            for tau in (W, W1):
                nxt.add((_slice_nf(flat_sum([(FIN1, s), (tau, Y)])), used or top))
        sums = nxt
    slices = {s for s, used in sums if used}

    # lexicographic on slice counts, highest basis element most significant,
    # with 0 < w < w1
    def key(s):
        counts = dict((G, m) for m, G in entries_of(s))
        return tuple(counts.get(Y, Mult(0)).rank_key() for Y in reversed(lower))

    return tuple(Cone(s) for s in sorted(slices, key=key))


def enumerate_stable(n: int) -> StableBasis:
    """All stable sets of rank at most n, level by level."""
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ValueError("rank bound must be a positive integer")
    with _basis_lock:
        while len(_levels) < n:
            k = len(_levels)
            lower = [t for lev in _levels for t in lev]
            _levels.append(_next_level(lower, k))
        levels = tuple(_levels[:n])
    return StableBasis(n, tuple(t for lev in levels for t in lev), levels)


@dataclass(frozen=True)
class CanonVector:
    basis: StableBasis
    counts: Tuple[Mult, ...]

    def as_dict(self) -> Dict[str, str]:
        return {str(t): str(m) for t, m in zip(self.basis.elements, self.counts)}

    def __le__(self, other: "CanonVector") -> bool:
        if self.basis.elements != other.basis.elements:
            raise ValueError("vectors over different bases")
        return all(a <= b for a, b in zip(self.counts, other.counts))


def canon_vector(X: Term, rank_bound: int) -> CanonVector:
    """Counts of each stable basis element in the normal form of X."""
    r = rank(X)
    if not r.is_finite or int(r) > rank_bound:
        raise TermError(f"rank {r} exceeds the basis bound {rank_bound}")
    basis = enumerate_stable(rank_bound)
    counts = [Mult(0)] * len(basis)
    for m, G in entries_of(normalize(X)):
        counts[basis.index(G)] = m
    return CanonVector(basis, tuple(counts))


def segment_profile(X: Term, lam: int, step: int = 2) -> Tuple[Term, ...]:
    """Normal forms of the segments X^(a) minus X^(a+step) for a = 0, step, ... below lam."""
    from .cb import derive, truncate

    return tuple(normalize(truncate(derive(X, a), step)) for a in range(0, lam, step))
