"""Ordinal notations below omega_2.

An ordinal is written in base-omega_1 Cantor normal form

    w1^e_1 * c_1 + ... + w1^e_k * c_k + tail

where the exponents e_i and the coefficients c_i are countable ordinals
and ``tail`` is countable.  Countable ordinals use ordinary base-omega
Cantor normal form with positive integer coefficients.  Every value is
kept in canonical form, so structural equality is ordinal equality.
"""
from __future__ import annotations

from functools import total_ordering
from typing import Tuple, Union

__all__ = [
    "Ordinal",
    "ZERO",
    "ONE",
    "OMEGA",
    "OMEGA1",
    "ord_cmp",
    "ord_add",
    "ord_rmul",
    "ord_mul",
    "ord_left_subtract",
    "ord_succ",
    "ord_is_limit",
    "omega_pow",
    "omega1_pow",
    "OrdinalError",
]


class OrdinalError(ValueError):
    pass


CntTerms = Tuple[Tuple["Ordinal", int], ...]
W1Terms = Tuple[Tuple["Ordinal", "Ordinal"], ...]


@total_ordering
class Ordinal:
    __slots__ = ("w1", "tail", "_hash")

    def __init__(self, w1: W1Terms = (), tail: CntTerms = ()):
        self.w1 = tuple(w1)
        self.tail = tuple(tail)
        self._hash = None
        for e, c in self.w1:
            if not e.is_countable or e.is_zero or not c.is_countable or c.is_zero:
                raise OrdinalError("omega_1 exponents must be countable and >= 1, coefficients countable and >= 1")
        for i in range(1, len(self.w1)):
            if not self.w1[i - 1][0] > self.w1[i][0]:
                raise OrdinalError("omega_1 exponents must strictly decrease")
        for e, c in self.tail:
            if not e.is_countable or not isinstance(c, int) or c < 1:
                raise OrdinalError("bad countable term")
        for i in range(1, len(self.tail)):
            if not self.tail[i - 1][0] > self.tail[i][0]:
                raise OrdinalError("omega exponents must strictly decrease")

    # -- construction helpers -------------------------------------------------
    @classmethod
    def of(cls, value: Union[int, "Ordinal"]) -> "Ordinal":
        if isinstance(value, Ordinal):
            return value
        if isinstance(value, bool) or not isinstance(value, int) or value < 0:
            raise OrdinalError(f"not a natural number: {value!r}")
        if value == 0:
            return ZERO
        return cls((), ((ZERO, value),))

    # -- predicates ----------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.w1 and not self.tail

    @property
    def is_countable(self) -> bool:
        return not self.w1

    @property
    def is_finite(self) -> bool:
        return not self.w1 and (not self.tail or (len(self.tail) == 1 and self.tail[0][0].is_zero))

    @property
    def finite_part(self) -> int:
        """Coefficient of the omega^0 term of the tail."""
        if self.tail and self.tail[-1][0].is_zero:
            return self.tail[-1][1]
        return 0

    @property
    def limit_part(self) -> "Ordinal":
        """The largest limit ordinal (or 0) not exceeding self."""
        if self.finite_part:
            return Ordinal(self.w1, self.tail[:-1])
        return self

    def __int__(self) -> int:
        if not self.is_finite:
            raise OrdinalError(f"{self} is not finite")
        return self.finite_part

    @property
    def omega1_degree(self) -> "Ordinal":
        """Leading omega_1 exponent (0 for countable ordinals)."""
        return self.w1[0][0] if self.w1 else ZERO

    # -- comparison ------------------------------------------------------------
    def _key(self):
        return (
            tuple((e._key(), c._key()) for e, c in self.w1),
            len(self.w1),
            tuple((e._key(), c) for e, c in self.tail),
        )

    def __eq__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            other = Ordinal.of(other) if other >= 0 else None
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self.w1 == other.w1 and self.tail == other.tail

    def __lt__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            other = Ordinal.of(other)
        if not isinstance(other, Ordinal):
            return NotImplemented
        return ord_cmp(self, other) < 0

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.w1, self.tail))
        return self._hash

    # -- arithmetic sugar -------------------------------------------------------
    def __add__(self, other):
        return ord_add(self, Ordinal.of(other))

    def __radd__(self, other):
        return ord_add(Ordinal.of(other), self)

    def __mul__(self, other):
        return ord_mul(self, Ordinal.of(other))

    def __rmul__(self, other):
        return ord_mul(Ordinal.of(other), self)

    def __repr__(self):
        return f"Ordinal({format_ordinal(self)!r})"

    def __str__(self):
        return format_ordinal(self)


ZERO = Ordinal()
ONE = Ordinal((), ((ZERO, 1),))
OMEGA = Ordinal((), ((ONE, 1),))
OMEGA1 = Ordinal(((ONE, ONE),), ())


def omega_pow(e: Ordinal, coeff: int = 1) -> Ordinal:
    e = Ordinal.of(e)
    if not e.is_countable:
        raise OrdinalError("omega exponent must be countable")
    if coeff == 0:
        return ZERO
    return Ordinal((), ((e, coeff),))


def omega1_pow(e: Ordinal, coeff: Ordinal = ONE) -> Ordinal:
    e, coeff = Ordinal.of(e), Ordinal.of(coeff)
    if coeff.is_zero:
        return ZERO
    if e.is_zero:
        return coeff
    return Ordinal(((e, coeff),), ())


# -- countable CNF helpers (terms are tuples of (exponent, int)) ----------------

def _cmp_terms(a, b, coeff_cmp) -> int:
    for (ea, ca), (eb, cb) in zip(a, b):
        c = ord_cmp(ea, eb)
        if c:
            return c
        c = coeff_cmp(ca, cb)
        if c:
            return c
    return (len(a) > len(b)) - (len(a) < len(b))


def _int_cmp(x: int, y: int) -> int:
    return (x > y) - (x < y)


def ord_cmp(a: Ordinal, b: Ordinal) -> int:
    """Three-way comparison: -1, 0 or 1."""
    if a is b:
        return 0
    c = _cmp_terms(a.w1, b.w1, ord_cmp)
    if c:
        return c
    return _cmp_terms(a.tail, b.tail, _int_cmp)


def _add_cnt(a: CntTerms, b: CntTerms) -> CntTerms:
    if not b:
        return a
    lead = b[0][0]
    out = []
    for e, c in a:
        k = ord_cmp(e, lead)
        if k > 0:
            out.append((e, c))
        elif k == 0:
            out.append((e, c + b[0][1]))
            return tuple(out) + b[1:]
        else:
            break
    return tuple(out) + b


def _cnt(terms: CntTerms) -> Ordinal:
    return Ordinal((), terms) if terms else ZERO


def ord_add(a: Ordinal, b: Ordinal) -> Ordinal:
    """Ordinal sum a + b."""
    if b.is_zero:
        return a
    if a.is_zero:
        return b
    if not b.w1:
        return Ordinal(a.w1, _add_cnt(a.tail, b.tail))
    lead = b.w1[0][0]
    out = []
    for e, c in a.w1:
        k = ord_cmp(e, lead)
        if k > 0:
            out.append((e, c))
        elif k == 0:
            out.append((e, ord_add(c, b.w1[0][1])))
            return Ordinal(tuple(out) + b.w1[1:], b.tail)
        else:
            break
    return Ordinal(tuple(out) + b.w1, b.tail)


def _mul_cnt(a: Ordinal, b: Ordinal) -> Ordinal:
    # countable a * countable b, term-wise distribution over b's CNF
    if a.is_zero or b.is_zero:
        return ZERO
    e1, c1 = a.tail[0]
    result = ZERO
    for f, d in b.tail:
        if f.is_zero:
            piece = Ordinal((), ((e1, c1 * d),) + a.tail[1:])
        else:
            piece = omega_pow(ord_add(e1, f), d)
        result = ord_add(result, piece)
    return result


def ord_mul(a: Ordinal, b: Ordinal) -> Ordinal:
    """Ordinal product a * b where b is countable (the only case needed)."""
    if not b.is_countable:
        if b == OMEGA1:
            return ord_rmul(a, "w1")
        raise OrdinalError("right factor must be countable or omega_1")
    if a.is_zero or b.is_zero:
        return ZERO
    if a.is_countable:
        return _mul_cnt(a, b)
    e, c = a.w1[0]
    result = ZERO
    for f, d in b.tail:
        if f.is_zero:
            lead = Ordinal(((e, _mul_cnt(c, Ordinal.of(d))),) + a.w1[1:], a.tail)
            result = ord_add(result, lead)
        else:
            # (w1^e * c + r) * w^f * d = w1^e * (c * w^f * d)
            result = ord_add(result, omega1_pow(e, _mul_cnt(c, _mul_cnt(omega_pow(f), Ordinal.of(d)))))
    return result


def ord_rmul(a: Ordinal, k) -> Ordinal:
    """a * k for a multiplicity k: a natural number, "w" or "w1".

    Also accepts a :class:`pscatter.terms.Mult`.
    """
    k = _mult_token(k)
    if a.is_zero or k == 0:
        return ZERO
    if isinstance(k, int):
        return ord_mul(a, Ordinal.of(k))
    if k == "w":
        return ord_mul(a, OMEGA)
    # k == "w1"
    if a.is_countable:
        return OMEGA1
    return omega1_pow(ord_add(a.w1[0][0], ONE))


def _mult_token(k):
    if isinstance(k, (int, str)):
        if isinstance(k, str) and k not in ("w", "w1"):
            raise OrdinalError(f"bad multiplicity {k!r}")
        return k
    # duck-typed Mult
    if k.is_finite:
        return k.n
    return "w1" if k.is_omega1 else "w"


def ord_left_subtract(a: Ordinal, b: Ordinal) -> Ordinal:
    """The unique g with a + g = b.  Requires a <= b."""
    if ord_cmp(a, b) > 0:
        raise OrdinalError(f"cannot left-subtract {a} from smaller {b}")
    for i, ((ea, ca), (eb, cb)) in enumerate(zip(a.w1, b.w1)):
        if ea == eb and ca == cb:
            continue
        if ord_cmp(eb, ea) > 0:
            return Ordinal(b.w1[i:], b.tail)
        # same exponent, ca < cb
        rest = Ordinal(((eb, ord_left_subtract(ca, cb)),) + b.w1[i + 1:], b.tail)
        return rest
    n = len(a.w1)
    if len(b.w1) > n:
        return Ordinal(b.w1[n:], b.tail)
    # identical w1 parts; subtract tails
    ta, tb = a.tail, b.tail
    for i, ((ea, ca), (eb, cb)) in enumerate(zip(ta, tb)):
        if ea == eb and ca == cb:
            continue
        if ord_cmp(eb, ea) > 0:
            return _cnt(tb[i:])
        return _cnt(((eb, cb - ca),) + tb[i + 1:])
    return _cnt(tb[len(ta):])


def ord_succ(a: Ordinal) -> Ordinal:
    return ord_add(a, ONE)


def ord_is_limit(a: Ordinal) -> bool:
    return not a.is_zero and a.finite_part == 0


# -- printing --------------------------------------------------------------------

def _fmt_atom(o: Ordinal) -> str:
    s = format_ordinal(o)
    if o.is_finite or s in ("w", "w1"):
        return s
    return f"({s})"


def format_ordinal(o: Ordinal) -> str:
    parts = []
    for e, c in o.w1:
        s = "w1" if e == ONE else f"w1^{_fmt_atom(e)}"
        if c != ONE:
            s = f"{s}*{_fmt_atom(c)}"
        parts.append(s)
    for e, c in o.tail:
        if e.is_zero:
            parts.append(str(c))
            continue
        s = "w" if e == ONE else f"w^{_fmt_atom(e)}"
        if c != 1:
            s = f"{s}*{c}"
        parts.append(s)
    return " + ".join(parts) if parts else "0"
