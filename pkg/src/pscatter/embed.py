"""Embedding a term into an ordinal below omega_2.

Each node is allocated a block of ordinals.  Internally a block is the
left-open interval (lo, hi]; a point sits at lo + 1 and the top of a cone
at hi, the supremum of its omega_1 slice blocks.  Block lengths:

    len(pt) = 1                  len(k * T) = len(T) * k
    len(cone(S)) = len(S) * w1   len(J(lam)) = w1^lam
    len(isum) = w1^w

Infinite families of blocks are stored as a start and a stride; copy b
occupies (start + stride*b, start + stride*(b+1)].  Isolated points land
on successors, cone tops on ordinals of cofinality omega_1, so the map is
an embedding into omega_2 with its G_delta (P-space) topology.

Public coordinates are shifted down by one (p -> -1 + p) so the image
starts at 0; ``ordinal_bound`` is the least ordinal above the image.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import List, Optional, Tuple

from .cb import rank
from .ordinal import (
    OMEGA,
    OMEGA1,
    ONE,
    ZERO,
    Ordinal,
    omega1_pow,
    ord_add,
    ord_left_subtract,
    ord_mul,
    ord_rmul,
    ord_succ,
)
from .terms import (
    FIN0,
    FIN1,
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
)

__all__ = [
    "Block",
    "Family",
    "length",
    "embed_into_ordinal",
    "ordinal_bound",
    "compactification_bound",
    "check_allocation",
    "count_points",
]


@lru_cache(maxsize=None)
def length(T: Term) -> Ordinal:
    if isinstance(T, Empty):
        return ZERO
    if isinstance(T, Pt):
        return ONE
    if isinstance(T, Sum):
        total = ZERO
        for m, s in _flat_entries(T):
            total = ord_add(total, ord_rmul(length(s), m))
        return total
    if isinstance(T, Cone):
        return ord_rmul(length(T.slice), "w1")
    if isinstance(T, Jlim):
        return omega1_pow(T.lam)
    if isinstance(T, ISumOmega):
        return omega1_pow(OMEGA)
    raise TypeError(f"not a term: {T!r}")


def _flat_entries(T: Sum, k: Mult = FIN1, out=None):
    """Entries of T with nested sums spliced in place, counts multiplied."""
    out = [] if out is None else out
    for m, s in T.entries:
        if isinstance(s, Sum):
            _flat_entries(s, k * m, out)
        else:
            out.append((k * m, s))
    return out


def _shift(p: Ordinal) -> Ordinal:
    return ord_left_subtract(ONE, p)


@dataclass
class Family:
    """Copies of one term laid out with a fixed stride, or the members of a limit primitive."""

    term: Optional[Term]
    count: Mult
    start: Ordinal
    stride: Optional[Ordinal]
    members: Optional[str] = None

    def copy(self, beta) -> "Block":
        beta = Ordinal.of(beta)
        return _allocate(self.term, ord_add(self.start, ord_mul(self.stride, beta)))

    def member(self, gamma) -> "Block":
        """Member gamma >= 1 of a J(lam) or isum family."""
        gamma = Ordinal.of(gamma)
        if self.members == "J":
            t = build_J(gamma)
            return _allocate(t, ord_add(self.start, _j_offset(gamma)))
        n = int(gamma)
        return _allocate(build_i(n), ord_add(self.start, _i_offset(n)))

    @property
    def end(self) -> Ordinal:
        if self.members == "J":
            return ord_add(self.start, omega1_pow(self._lam))
        if self.members == "i":
            return ord_add(self.start, omega1_pow(OMEGA))
        return ord_add(self.start, ord_rmul(self.stride, self.count))

    _lam: Ordinal = field(default=ZERO, repr=False)

    def samples(self) -> List[Ordinal]:
        """Indices checked by the validator."""
        if self.members == "J":
            out = [Ordinal.of(k) for k in (1, 2, 3)]
            mu = self._lam
            if OMEGA < mu:
                out += [OMEGA, ord_succ(OMEGA)]
            return [g for g in out if g < mu]
        if self.members == "i":
            return [Ordinal.of(k) for k in (1, 2, 3)]
        if self.count.is_finite:
            return [Ordinal.of(k) for k in range(min(self.count.n, 3))]
        out = [ZERO, ONE, OMEGA, ord_succ(OMEGA)]
        if self.count.is_omega1:
            out.append(ord_mul(OMEGA, Ordinal.of(2)))
        return out if self.count.is_omega1 else out[:2]

    def to_dict(self, depth: int) -> dict:
        out = {"start": str(_shift(ord_succ(self.start)))}
        if self.members:
            out["members"] = "J(gamma), 0 < gamma < " + str(self._lam) if self.members == "J" else "i(n), 0 < n < w"
        else:
            out.update({"copies": str(self.term), "count": str(self.count), "stride": str(self.stride)})
        if depth > 0:
            first = self.member(1) if self.members else self.copy(0)
            out["first"] = first.to_dict(depth - 1)
        return out


@dataclass
class Block:
    term: Term
    lo: Ordinal
    hi: Ordinal
    top: Optional[Ordinal] = None
    parts: List[Family] = field(default_factory=list)

    @property
    def attained(self) -> bool:
        """Whether hi itself is a point of the image."""
        if self.top is not None:
            return True
        if isinstance(self.term, Sum):
            m = self.parts[-1].count
            return m.is_finite and self.parts[-1].copy(m.n - 1).attained
        return False

    @property
    def interval(self) -> Tuple[Ordinal, Ordinal]:
        """Public half-open interval [a, b) holding the image of this block."""
        a = _shift(ord_succ(self.lo))
        b = _shift(self.hi)
        return a, (ord_succ(b) if self.attained else b)

    def to_dict(self, depth: int = 3) -> dict:
        a, b = self.interval
        out = {"term": str(self.term), "interval": [str(a), str(b)]}
        if self.top is not None:
            out["point" if isinstance(self.term, Pt) else "top"] = str(_shift(self.top))
        if self.parts:
            out["blocks"] = [f.to_dict(depth) for f in self.parts]
        return out


def _j_offset(gamma: Ordinal) -> Ordinal:
    """Sum of len(J(delta)) over 0 < delta < gamma."""
    mu, k = gamma.limit_part, gamma.finite_part
    total = ZERO if mu.is_zero else omega1_pow(mu)
    first = 1 if mu.is_zero else 0
    for i in range(first, k):
        total = ord_add(total, length(build_J(ord_add(mu, Ordinal.of(i)))))
    return total


def _i_offset(n: int) -> Ordinal:
    total = ZERO
    for k in range(1, n):
        total = ord_add(total, length(build_i(k)))
    return total


def _allocate(T: Term, lo: Ordinal) -> Block:
    hi = ord_add(lo, length(T))
    if isinstance(T, Pt):
        return Block(T, lo, hi, top=hi)
    if isinstance(T, Cone):
        b = length(T.slice)
        return Block(T, lo, hi, top=hi, parts=[Family(T.slice, W1, lo, b)])
    if isinstance(T, Sum):
        parts = []
        start = lo
        for m, s in _flat_entries(T):
            f = Family(s, m, start, length(s))
            parts.append(f)
            start = f.end
        return Block(T, lo, hi, parts=parts)
    if isinstance(T, Jlim):
        f = Family(None, W1, lo, None, members="J")
        f._lam = T.lam
        return Block(T, lo, hi, parts=[f])
    if isinstance(T, ISumOmega):
        return Block(T, lo, hi, parts=[Family(None, W1, lo, None, members="i")])
    raise TypeError(f"cannot allocate {T!r}")


def embed_into_ordinal(X: Term) -> Block:
    """Allocation tree of an embedding of X into omega_2."""
    if not rank(X) < OMEGA1:
        raise TermError("only terms of countable rank embed below omega_2")
    if isinstance(X, Empty):
        return Block(X, ZERO, ZERO)
    return _allocate(X, ZERO)


def ordinal_bound(X: Term) -> Ordinal:
    """Least ordinal above the image of the allocated embedding."""
    return embed_into_ordinal(X).interval[1]


def compactification_bound(X: Term) -> Ordinal:
    """The closed interval [0, bound] is a compact scattered space containing the closure of X."""
    return ord_succ(ordinal_bound(X))


def _cofinality_omega1(p: Ordinal) -> bool:
    if p.tail or not p.w1:
        return False
    e, c = p.w1[-1]
    return c.finite_part > 0 and e.finite_part > 0


def count_points(block: Block) -> Mult:
    T = block.term
    if isinstance(T, Pt):
        return FIN1
    if isinstance(T, Sum):
        total = FIN0
        for f in block.parts:
            total = total + f.count * count_points(f.copy(0))
        return total
    if isinstance(T, Empty):
        return FIN0
    return W1


def check_allocation(block: Block, depth: int = 6) -> List[str]:
    """Problems found in the allocation tree; empty when it is valid."""
    errors: List[str] = []
    _check(block, errors, depth)
    return errors


def _check(b: Block, errors: List[str], depth: int):
    T = b.term
    if b.hi != ord_add(b.lo, length(T)):
        errors.append(f"{T}: interval length differs from len(term)")
    if isinstance(T, Pt):
        if b.top != ord_succ(b.lo):
            errors.append(f"{T}: point is not the successor of lo")
        return
    if isinstance(T, Cone):
        f = b.parts[0]
        if f.start != b.lo or f.stride != length(T.slice) or not f.count.is_omega1:
            errors.append(f"{T}: bad slice family")
        if b.top != b.hi or b.top != ord_add(f.start, ord_rmul(f.stride, "w1")):
            errors.append(f"{T}: top is not the supremum of its slice blocks")
        if not _cofinality_omega1(b.top):
            errors.append(f"{T}: top {b.top} does not have cofinality omega_1")
    elif isinstance(T, Sum):
        pos = b.lo
        entries = _flat_entries(T)
        if len(entries) != len(b.parts):
            errors.append(f"{T}: one block family per summand expected")
        for f, (m, s) in zip(b.parts, entries):
            if f.start != pos or f.stride != length(s) or f.count != m:
                errors.append(f"{T}: blocks of {s} misplaced")
            pos = f.end
        if pos != b.hi:
            errors.append(f"{T}: blocks do not fill the interval")
    if depth <= 0:
        return
    for f in b.parts:
        prev = None
        idx = f.samples()
        for k, g in enumerate(idx):
            c = f.member(g) if f.members else f.copy(g)
            if not (b.lo <= c.lo and c.hi <= b.hi):
                errors.append(f"{T}: child {c.term} outside parent")
            if prev is not None and prev.hi > c.lo:
                errors.append(f"{T}: children overlap")
            if f.members and prev is not None and ord_succ(idx[k - 1]) == g and prev.hi != c.lo:
                errors.append(f"{T}: members not contiguous")
            if c.top is not None and c.top > b.hi:
                errors.append(f"{T}: child point outside parent")
            prev = c
            _check(c, errors, depth - 1 if k == 0 else min(depth - 1, 1))
        if f.members:
            last = f.member(idx[-1])
            if not last.hi < f.end:
                errors.append(f"{T}: members reach the end of the block")
