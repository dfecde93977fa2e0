"""Finite terms denoting scattered P-spaces of weight at most omega_1.

Constructors:

* ``EMPTY`` and ``PT`` (a single point),
* ``Sum`` -- a finite sum of (multiplicity, summand) entries,
* ``Cone`` -- one top point with a P-base of omega_1 slices, each slice
  homeomorphic to the given term,
* ``Jlim`` -- J(lam) for a countable limit ``lam``, kept primitive,
* ``ISUM`` -- the sum of i(n) over n < omega, kept primitive.

Terms are immutable and hashable.  ``make_sum`` is the validating
constructor for sums: it merges duplicate summands, sorts entries and
collapses ``1 * t`` to ``t``.
"""
from __future__ import annotations

from functools import total_ordering
from typing import Iterable, Tuple

from .ordinal import ONE, Ordinal, ord_is_limit, ord_succ

__all__ = [
    "Mult",
    "FIN0",
    "FIN1",
    "W",
    "W1",
    "Term",
    "Empty",
    "Pt",
    "Sum",
    "Cone",
    "Jlim",
    "ISumOmega",
    "EMPTY",
    "PT",
    "ISUM",
    "make_sum",
    "flat_sum",
    "entries_of",
    "scale",
    "build_J",
    "build_i",
    "build_indicator",
    "TermError",
]


class TermError(ValueError):
    pass


@total_ordering
class Mult:
    """Cardinal multiplicity: a natural number, omega or omega_1."""

    __slots__ = ("n",)
    _OMEGA = -1
    _OMEGA1 = -2

    def __init__(self, n: int):
        self.n = n

    @classmethod
    def of(cls, x) -> "Mult":
        if isinstance(x, Mult):
            return x
        if x in ("w", "ω"):
            return W
        if x in ("w1", "ω₁", "ω1"):
            return W1
        if isinstance(x, int) and not isinstance(x, bool) and x >= 0:
            return cls(x)
        raise TermError(f"bad multiplicity {x!r}")

    @property
    def is_finite(self) -> bool:
        return self.n >= 0

    @property
    def is_omega(self) -> bool:
        return self.n == self._OMEGA

    @property
    def is_omega1(self) -> bool:
        return self.n == self._OMEGA1

    @property
    def is_infinite(self) -> bool:
        return self.n < 0

    @property
    def is_zero(self) -> bool:
        return self.n == 0

    def rank_key(self) -> int:
        if self.n >= 0:
            return self.n
        return (1 << 62) if self.n == self._OMEGA else (1 << 63)

    def __eq__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return self.n == other
        return isinstance(other, Mult) and self.n == other.n

    def __lt__(self, other):
        return self.rank_key() < Mult.of(other).rank_key()

    def __hash__(self):
        return hash(("Mult", self.n))

    def __add__(self, other):
        other = Mult.of(other)
        if self.is_omega1 or other.is_omega1:
            return W1
        if self.is_omega or other.is_omega:
            return W
        return Mult(self.n + other.n)

    __radd__ = __add__

    def __mul__(self, other):
        other = Mult.of(other)
        if self.is_zero or other.is_zero:
            return FIN0
        if self.is_omega1 or other.is_omega1:
            return W1
        if self.is_omega or other.is_omega:
            return W
        return Mult(self.n * other.n)

    __rmul__ = __mul__

    def saturate(self) -> "Mult":
        """omega * self: finite positive counts become omega."""
        return self * W

    def __str__(self):
        if self.n >= 0:
            return str(self.n)
        return "w" if self.is_omega else "w1"

    def __repr__(self):
        return f"Mult({str(self)})"


FIN0 = Mult(0)
FIN1 = Mult(1)
W = Mult(Mult._OMEGA)
W1 = Mult(Mult._OMEGA1)


class Term:
    """Base class of space terms."""

    __slots__ = ("_hash", "_key", "_rank")
    kind = -1

    def __init__(self):
        self._hash = None
        self._key = None
        self._rank = None

    # structural identity -------------------------------------------------
    def _ident(self):
        raise NotImplementedError

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Term) or self.kind != other.kind:
            return False
        if hash(self) != hash(other):
            return False
        return self._ident() == other._ident()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.kind, self._ident()))
        return self._hash

    @property
    def sort_key(self):
        """Deterministic total order used for sum entries: rank first."""
        if self._key is None:
            from .cb import rank
            from .syntax import format_term
            self._key = (rank(self)._key(), self.kind, format_term(self))
        return self._key

    def __lt__(self, other):
        return self.sort_key < other.sort_key

    def __str__(self):
        from .syntax import format_term
        return format_term(self)

    def __repr__(self):
        return f"<{type(self).__name__} {self}>"


class Empty(Term):
    __slots__ = ()
    kind = 0

    def _ident(self):
        return ()


class Pt(Term):
    __slots__ = ()
    kind = 1

    def _ident(self):
        return ()


class Cone(Term):
    __slots__ = ("slice",)
    kind = 2

    def __init__(self, slice: Term):
        super().__init__()
        if not isinstance(slice, Term) or isinstance(slice, Empty):
            raise TermError("cone slice must be a nonempty term")
        self.slice = slice

    def _ident(self):
        return (self.slice,)


class Jlim(Term):
    __slots__ = ("lam",)
    kind = 3

    def __init__(self, lam: Ordinal):
        super().__init__()
        lam = Ordinal.of(lam)
        if not ord_is_limit(lam) or not lam.is_countable:
            raise TermError(f"J-limit index must be a countable limit ordinal, got {lam}")
        self.lam = lam

    def _ident(self):
        return (self.lam,)


class ISumOmega(Term):
    __slots__ = ()
    kind = 4

    def _ident(self):
        return ()


class Sum(Term):
    """Use :func:`make_sum`; the raw constructor trusts its input."""

    __slots__ = ("entries",)
    kind = 5

    def __init__(self, entries: Tuple[Tuple[Mult, Term], ...]):
        super().__init__()
        self.entries = tuple(entries)

    def _ident(self):
        return self.entries


EMPTY = Empty()
PT = Pt()
ISUM = ISumOmega()


def make_sum(entries: Iterable[Tuple[object, Term]]) -> Term:
    """Canonical sum: zero counts and empty summands dropped, duplicates merged."""
    acc = {}
    for m, t in entries:
        m = Mult.of(m)
        if not isinstance(t, Term):
            raise TermError(f"not a term: {t!r}")
        if m.is_zero or isinstance(t, Empty):
            continue
        acc[t] = acc.get(t, FIN0) + m
    if not acc:
        return EMPTY
    items = sorted(acc.items(), key=lambda kv: kv[0].sort_key)
    if len(items) == 1 and items[0][1] == FIN1:
        return items[0][0]
    return Sum(tuple((m, t) for t, m in items))


def entries_of(t: Term) -> Tuple[Tuple[Mult, Term], ...]:
    """View any term as a sum of entries."""
    if isinstance(t, Empty):
        return ()
    if isinstance(t, Sum):
        return t.entries
    return ((FIN1, t),)


def scale(t: Term, m) -> Term:
    """m copies of t."""
    return make_sum([(m, t)])


def flat_sum(entries: Iterable[Tuple[object, Term]]) -> Term:
    """Like :func:`make_sum` but splices summands that are themselves sums."""
    out = []
    for m, t in entries:
        m = Mult.of(m)
        if isinstance(t, Sum):
            out.extend((m * k, s) for k, s in t.entries)
        else:
            out.append((m, t))
    return make_sum(out)


# -- builders --------------------------------------------------------------------

def build_J(alpha) -> Term:
    """J(alpha) for a countable ordinal alpha."""
    alpha = Ordinal.of(alpha)
    if not alpha.is_countable:
        raise TermError("J(alpha) is only supported for countable alpha")
    if alpha.is_zero:
        return EMPTY
    if ord_is_limit(alpha):
        return Jlim(alpha)
    n = alpha.finite_part
    base = alpha.limit_part
    t = PT if base.is_zero else Jlim(base)
    start = 1 if base.is_zero else 0
    for _ in range(start, n):
        t = Cone(Sum(((W1, t),)))
    return t


def build_i(n: int) -> Term:
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise TermError(f"i(n) needs a natural number, got {n!r}")
    if n == 0:
        return EMPTY
    t = PT
    for _ in range(1, n):
        t = Cone(Sum(((W, t),)))
    return t


def build_indicator(A, lam: int) -> Term:
    """A rank-``lam`` space whose even segments encode membership in ``A``.

    For even alpha < lam the segment X^(alpha) minus X^(alpha+2) is a sum
    of omega_1 copies of i(2) when alpha is in A and of J(2) otherwise.
    """
    if isinstance(lam, Ordinal):
        if not lam.is_finite:
            raise TermError("indicator towers with infinite height are not supported")
        lam = int(lam)
    A = {int(a) for a in A}
    if lam <= 0 or lam % 2:
        raise TermError("lambda must be a positive even integer")
    bad = [a for a in A if a < 0 or a % 2 or a >= lam]
    if bad:
        raise TermError(f"indicator levels must be even and below {lam}: {sorted(bad)}")
    base = PT
    top = None
    for level in range(0, lam, 2):
        tau = W if level in A else W1
        top = Cone(Sum(((tau, base),)))
        base = Cone(Sum(((W1, top),)))
    return Sum(((W1, top),))


def is_J(t: Term):
    """The alpha with t == build_J(alpha), or None."""
    if isinstance(t, Pt):
        return ONE
    if isinstance(t, Jlim):
        return t.lam
    if isinstance(t, Cone) and isinstance(t.slice, Sum) and len(t.slice.entries) == 1:
        m, inner = t.slice.entries[0]
        if m == W1:
            a = is_J(inner)
            if a is not None:
                return ord_succ(a)
    return None


def is_i(t: Term):
    """The n with t == build_i(n) (n >= 1), or None."""
    if isinstance(t, Pt):
        return 1
    if isinstance(t, Cone) and isinstance(t.slice, Sum) and len(t.slice.entries) == 1:
        m, inner = t.slice.entries[0]
        if m == W:
            n = is_i(inner)
            if n is not None:
                return n + 1
    return None


def height(t: Term) -> int:
    if isinstance(t, Cone):
        return 1 + height(t.slice)
    if isinstance(t, Sum):
        return 1 + max(height(s) for _, s in t.entries)
    return 0

