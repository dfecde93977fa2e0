"""Classes P_lam of dimensional types and the derivative isomorphism onto P_0.

P_lam collects the spaces whose rank lies in (lam, lam + w].  Taking the
lam-th derivative maps P_lam onto P_0 and preserves the order; ``lift``
builds a preimage by replacing every isolated point with J(lam + 1).
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Optional

from .cb import derive, rank
from .dimtype import Decision, le_h
from .ordinal import OMEGA, ONE, Ordinal, ord_add
from .stable import normalize
from .terms import (
    Cone,
    Empty,
    ISumOmega,
    Jlim,
    Pt,
    Sum,
    Term,
    TermError,
    build_J,
    make_sum,
)

__all__ = [
    "ClassHandle",
    "EmptyProjectionWarning",
    "class_of",
    "project",
    "lift",
    "PsiReport",
    "psi_order_check",
]


class EmptyProjectionWarning(UserWarning):
    """Projection below the rank: the class is undefined and the result is empty."""


@dataclass(frozen=True)
class ClassHandle:
    representative: Term
    lam: Ordinal

    def __str__(self):
        return f"[{self.representative}] in P_{self.lam}"


def _check_lambda(lam) -> Ordinal:
    lam = Ordinal.of(lam)
    if not lam.is_countable:
        raise TermError("lambda must be countable")
    if lam.finite_part:
        raise TermError(f"lambda must be 0 or a limit ordinal, got {lam}")
    return lam


def class_of(X: Term) -> ClassHandle:
    """The class P_lam containing X."""
    r = rank(X)
    if r.is_zero or not r.is_countable:
        raise TermError(f"rank {r} lies in no class")
    if r.finite_part:
        return ClassHandle(normalize(X), r.limit_part)
    # r = lam + w: drop one w from the last Cantor term
    e, c = r.tail[-1]
    if e != ONE:
        raise TermError(f"rank {r} is a limit of limits and lies in no class")
    tail = r.tail[:-1] + (((ONE, c - 1),) if c > 1 else ())
    return ClassHandle(normalize(X), Ordinal(r.w1, tail))


def project(X: Term, lam) -> Term:
    """X^(lam); empty, with a warning, when lam is not below the rank."""
    lam = _check_lambda(lam)
    if not lam < rank(X):
        warnings.warn(f"projection by {lam} of a space of rank {rank(X)} is empty", EmptyProjectionWarning, stacklevel=2)
    return derive(X, lam)


def lift(Z: Term, lam) -> Term:
    """A space whose lam-th derivative is homeomorphic to Z."""
    lam = _check_lambda(lam)
    if OMEGA < rank(Z):
        raise TermError(f"lift needs rank at most w, got {rank(Z)}")
    return _lift(Z, lam)


def _lift(Z: Term, lam: Ordinal) -> Term:
    if isinstance(Z, Empty):
        return Z
    if isinstance(Z, Pt):
        return build_J(ord_add(lam, ONE))
    if isinstance(Z, Sum):
        return make_sum((m, _lift(s, lam)) for m, s in Z.entries)
    if isinstance(Z, Cone):
        return Cone(_lift(Z.slice, lam))
    if isinstance(Z, Jlim):
        # members J(n) lift to J(lam + n); the members of rank <= lam are absorbed
        return Jlim(ord_add(lam, Z.lam))
    if isinstance(Z, ISumOmega):
        if lam.is_zero:
            return Z
        raise TermError("the lift of isum is a countable sum with no finite term")
    raise TypeError(f"not a term: {Z!r}")


@dataclass
class PsiReport:
    forward: Decision
    forward_lifted: Decision
    backward: Decision
    backward_lifted: Decision

    @property
    def inconclusive(self) -> bool:
        return any(d.unknown for d in (self.forward, self.forward_lifted, self.backward, self.backward_lifted))

    @property
    def agree(self) -> bool:
        return (
            not self.inconclusive
            and self.forward.verdict == self.forward_lifted.verdict
            and self.backward.verdict == self.backward_lifted.verdict
        )

    def to_dict(self) -> dict:
        return {
            "forward": [self.forward.verdict, self.forward_lifted.verdict],
            "backward": [self.backward.verdict, self.backward_lifted.verdict],
            "agree": self.agree,
            "inconclusive": self.inconclusive,
        }


def psi_order_check(Z1: Term, Z2: Term, lam=OMEGA, budget: Optional[int] = None) -> PsiReport:
    """Compare the order of Z1, Z2 with the order of their lifts."""
    for Z in (Z1, Z2):
        r = rank(Z)
        if r.is_zero or OMEGA < r:
            raise TermError(f"ranks must lie in (0, w], got {r}")
    L1, L2 = lift(Z1, lam), lift(Z2, lam)
    return PsiReport(
        le_h(Z1, Z2, budget),
        le_h(L1, L2, budget),
        le_h(Z2, Z1, budget),
        le_h(L2, L1, budget),
    )
