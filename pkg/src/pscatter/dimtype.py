"""Deciding the dimensional-type order X <_h Y.

Both sides are normalized first.  The prover then works on sums of
stable entries:

* ``J(lam)`` and ``isum`` entries of Y are universal regions: they take
  every source entry of rank at most lam (resp. w) at once;
* every copy of a topped source entry F = cone(S) (or pt) either sends its
  top to the top of a target cone G = cone(T), which needs S <_h T, or
  lands inside the slices of G;
* the part R placed in the slices of a target entry lam * G must embed
  into w1 * T, except when lam is finite and all lam tops are taken, in
  which case it must embed into T.

The search over these assignments is exhaustive, so a failed search is
itself a refutation (``HostDeficit``).  Cheaper invariant witnesses
(rank, cardinality of a derivative, a derived segment) are tried first,
and several closed-form rules give one-step certificates.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .cb import card_at, derive, rank
from .ordinal import OMEGA, ONE, ZERO, Ordinal, ord_add, ord_is_limit
from .stable import CanonVector, normalize
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
    entries_of,
    flat_sum,
    make_sum,
)

__all__ = [
    "Certificate",
    "Witness",
    "Decision",
    "le_h",
    "eq_h",
    "capacity",
    "verify_certificate",
    "verify_witness",
    "dickson_find_increasing",
    "encode_mult",
    "check_antichain",
    "check_descending_chain",
    "AntichainReport",
    "ChainReport",
    "DEFAULT_BUDGET",
    "FAST_PATH_TAGS",
]

DEFAULT_BUDGET = 10 ** 5
FAST_PATH_TAGS = ("P8", "P9", "P14", "P15", "P17", "P18", "P19", "C16", "L25", "L25a")

PROVED, REFUTED, UNKNOWN = "PROVED", "REFUTED", "UNKNOWN"


@dataclass(eq=False)
class Certificate:
    rule: str
    X: Term
    Y: Term
    params: Dict = field(default_factory=dict)
    children: Tuple = ()

    def child(self, label):
        for lab, c in self.children:
            if lab == label:
                return c
        return None

    def size(self) -> int:
        return 1 + sum(c.size() for _, c in self.children)

    def to_dict(self) -> dict:
        out = {"rule": self.rule, "source": str(self.X), "target": str(self.Y)}
        if self.params:
            out["params"] = _jsonable(self.params)
        if self.children:
            out["children"] = [
                {"label": _jsonable(lab), **c.to_dict()} for lab, c in self.children
            ]
        return out


@dataclass(eq=False)
class Witness:
    kind: str
    X: Term
    Y: Term
    level: Optional[Ordinal] = None
    source_value: object = None
    target_value: object = None
    inner: Optional["Witness"] = None
    details: Dict = field(default_factory=dict)

    def to_dict(self, _seen=None) -> dict:
        seen = {} if _seen is None else _seen
        if id(self) in seen:
            return {"ref": seen[id(self)]}
        seen[id(self)] = len(seen)
        out = {"id": seen[id(self)], "kind": self.kind, "source": str(self.X), "target": str(self.Y)}
        if self.level is not None:
            out["level"] = str(self.level)
        if self.source_value is not None:
            out["source_value"] = str(self.source_value)
            out["target_value"] = str(self.target_value)
        if self.inner is not None:
            out["inner"] = self.inner.to_dict(seen)
        if self.kind == "HostDeficit":
            d = self.details
            out["region_sources"] = list(d["regions"])
            out["excluded"] = [
                {"source": i, "target": j, "mode": mode,
                 "reason": "kind" if w is None else w.to_dict(seen)}
                for (i, j, mode), w in d["edges"].items()
            ]
            out["cases"] = [
                {"assignment": _jsonable(a), "reason": r[0], "target": r[1],
                 **({"witness": r[2].to_dict(seen)} if len(r) > 2 else {})}
                for a, r in d["cases"].items()
            ]
        return out

    def summary(self) -> str:
        if self.kind == "RankDrop":
            return f"RankDrop: rank {self.source_value} > {self.target_value}"
        if self.kind == "CardDrop":
            return f"CardDrop at level {self.level}: {self.source_value} > {self.target_value}"
        if self.kind == "SegmentDrop":
            return f"SegmentDrop at level {self.level} ({self.inner.summary()})"
        return f"HostDeficit: {len(self.details['cases'])} placements, none feasible"


@dataclass
class Decision:
    verdict: str
    X: Term
    Y: Term
    certificate: Optional[Certificate] = None
    witness: Optional[Witness] = None
    spent: int = 0

    @property
    def proved(self) -> bool:
        return self.verdict == PROVED

    @property
    def refuted(self) -> bool:
        return self.verdict == REFUTED

    @property
    def unknown(self) -> bool:
        return self.verdict == UNKNOWN

    def to_dict(self) -> dict:
        out = {"verdict": self.verdict, "source": str(self.X), "target": str(self.Y), "spent": self.spent}
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_dict()
        if self.witness is not None:
            out["witness"] = self.witness.to_dict()
        return out


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (Mult, Ordinal, Term)):
        return str(x)
    return x


class _Exhausted(Exception):
    pass


# -- helpers ---------------------------------------------------------------------

def _region_bound(targets) -> Optional[Ordinal]:
    bound = None
    for _, G in targets:
        b = G.lam if isinstance(G, Jlim) else OMEGA if isinstance(G, ISumOmega) else None
        if b is not None and (bound is None or bound < b):
            bound = b
    return bound


def _region_sources(sources, bound) -> Tuple[int, ...]:
    if bound is None:
        return ()
    return tuple(i for i, (_, F) in enumerate(sources) if rank(F) <= bound)


def _hosts(targets) -> List[int]:
    return [j for j, (_, G) in enumerate(targets) if isinstance(G, (Pt, Cone))]


def _pool(lam: Mult, tops: Mult, T: Term) -> Term:
    free = lam.is_infinite or tops < lam
    return normalize(make_sum([(W1, T)])) if free else T


def _top_structural(F: Term, G: Term) -> bool:
    if isinstance(F, Pt):
        return isinstance(G, (Pt, Cone))
    return isinstance(F, Cone) and isinstance(G, Cone)


def _compositions(n: int, k: int):
    if k == 0:
        if n == 0:
            yield ()
        return
    if k == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in _compositions(n - first, k - 1):
            yield (first,) + rest


def _distributions(c: Mult, nopts: int):
    """Ways to split c copies over nopts options, as tuples of counts."""
    if c.is_infinite:
        for o in range(nopts):
            yield tuple(c if p == o else FIN0 for p in range(nopts))
    else:
        for comp in _compositions(c.n, nopts):
            yield tuple(Mult(x) for x in comp)


def _assignments(sources, active, options):
    """Every placement of the active sources over their options."""
    per = [list(_distributions(sources[i][0], len(options[i]))) for i in active]
    return itertools.product(*per)


def _loads(sources, active, options, assignment):
    tops: Dict[int, Mult] = {}
    pools: Dict[int, list] = {}
    for i, dist in zip(active, assignment):
        F = sources[i][1]
        for (j, mode), k in zip(options[i], dist):
            if k.is_zero:
                continue
            if mode == "top":
                tops[j] = tops.get(j, FIN0) + k
            else:
                pools.setdefault(j, []).append((k, F))
    return tops, pools


def _j_index(T: Term) -> Optional[Ordinal]:
    """alpha when T is the normal form of J(alpha)."""
    if isinstance(T, Pt):
        return ONE
    if isinstance(T, Jlim):
        return T.lam
    if isinstance(T, Cone):
        S = T.slice
        if isinstance(S, Jlim):
            return ord_add(S.lam, ONE)
        if isinstance(S, Sum) and len(S.entries) == 1 and S.entries[0][0] == W1:
            a = _j_index(S.entries[0][1])
            if a is not None and not isinstance(S.entries[0][1], Jlim):
                return ord_add(a, ONE)
    return None


def _levels(X: Term, Y: Term):
    """Candidate levels for cardinality witnesses, below rank(X)."""
    rx = rank(X)
    if rx.is_finite:
        return [Ordinal.of(k) for k in range(int(rx))]
    bases = {ZERO}
    fin = 1

    def walk(t):
        nonlocal fin
        r = rank(t)
        bases.add(r.limit_part)
        fin = max(fin, r.finite_part)
        if isinstance(t, Cone):
            walk(t.slice)
        elif isinstance(t, Sum):
            for _, s in t.entries:
                walk(s)

    walk(X)
    walk(Y)
    out = []
    for b in sorted(bases):
        for k in range(fin + 2):
            a = ord_add(b, Ordinal.of(k))
            if a < rx and a not in out:
                out.append(a)
    return out


def _cheap_refute(X: Term, Y: Term) -> Optional[Witness]:
    rx, ry = rank(X), rank(Y)
    if ry < rx:
        return Witness("RankDrop", X, Y, None, rx, ry)
    for a in _levels(X, Y):
        cx, cy = card_at(X, a), card_at(Y, a)
        if cy < cx:
            return Witness("CardDrop", X, Y, a, cx, cy)
    return None


def _fast_path(X: Term, Y: Term) -> Optional[Certificate]:
    rx, ry = rank(X), rank(Y)
    jy, jx = _j_index(Y), _j_index(X)
    if jy is not None:
        if jy.is_finite:
            n = int(jy)
            if rx <= jy and card_at(X, n - 1) <= FIN1:
                return Certificate("FastPath", X, Y, {"tag": "P8", "n": n})
        elif not ord_is_limit(jy):
            a = ord_add(jy.limit_part, Ordinal.of(jy.finite_part - 1))
            if rx <= jy and card_at(X, a) <= FIN1:
                if a == OMEGA:
                    tag = "C16"
                elif rx == jy and a == jy.limit_part:
                    tag = "P19"
                else:
                    tag = "P15"
                return Certificate("FastPath", X, Y, {"tag": tag, "alpha": a})
        if rx < jy or (ord_is_limit(jy) and rx <= jy):
            return Certificate("FastPath", X, Y, {"tag": "P17", "beta": jy})
    if jx is not None and not jx.is_finite and jx.finite_part >= 1:
        mu, n = jx.limit_part, jx.finite_part
        if n == 1 and mu < ry:
            return Certificate("FastPath", X, Y, {"tag": "L25a", "lambda": mu})
        if n >= 2 and ord_add(mu, Ordinal.of(2 * n - 1)) <= ry:
            return Certificate("FastPath", X, Y, {"tag": "P18", "beta": mu, "n": n})
    if jx is not None and jx.is_finite and int(jx) >= 2:
        n = int(jx) - 1
        if Ordinal.of(2 * n + 1) <= ry:
            return Certificate("FastPath", X, Y, {"tag": "P9", "n": n})
    if rx <= OMEGA <= ry:
        return Certificate("FastPath", X, Y, {"tag": "P14"})
    return None


def _fast_path_ok(c: Certificate, X: Term, Y: Term) -> bool:
    p = c.params
    tag = p.get("tag")
    rx, ry = rank(X), rank(Y)
    jy, jx = _j_index(Y), _j_index(X)
    if tag == "P8":
        n = p["n"]
        return jy == Ordinal.of(n) and rx <= jy and card_at(X, n - 1) <= FIN1
    if tag in ("P15", "P19", "C16"):
        a = p["alpha"]
        if jy is None or a.is_finite or not ord_add(a, ONE) == jy:
            return False
        if tag == "C16" and a != OMEGA:
            return False
        if tag == "P19" and not (ord_is_limit(a) and rx == jy):
            return False
        return rx <= jy and card_at(X, a) <= FIN1
    if tag == "P17":
        b = p["beta"]
        return jy == b and (rx < b or (ord_is_limit(b) and rx <= b))
    if tag == "L25a":
        lam = p["lambda"]
        return ord_is_limit(lam) and jx == ord_add(lam, ONE) and lam < ry
    if tag == "P18":
        b, n = p["beta"], p["n"]
        return (ord_is_limit(b) and n >= 2 and jx == ord_add(b, Ordinal.of(n))
                and ord_add(b, Ordinal.of(2 * n - 1)) <= ry)
    if tag == "P9":
        n = p["n"]
        return n >= 1 and jx == Ordinal.of(n + 1) and Ordinal.of(2 * n + 1) <= ry
    if tag == "P14":
        return rx <= OMEGA <= ry
    if tag == "L25":
        lam = p["lambda"]
        if not (ord_is_limit(lam) and lam < rx and lam < ry):
            return False
        if rx.limit_part != lam or ry.limit_part != lam:
            return False
        sub = c.child("derived")
        return sub is not None and _check_cert(
            sub, normalize(derive(X, lam)), normalize(derive(Y, lam)))
    return False


# -- the search ------------------------------------------------------------------

class _Prover:
    def __init__(self, budget: int, fast_paths: bool = True):
        self.budget = budget
        self.fast_paths = fast_paths
        self.spent = 0
        self.memo: Dict[Tuple[Term, Term], tuple] = {}

    def tick(self, n: int = 1):
        self.spent += n
        if self.spent > self.budget:
            raise _Exhausted()

    def decide(self, X: Term, Y: Term):
        """('P', certificate) or ('R', witness) for normal forms X, Y."""
        key = (X, Y)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        self.tick()
        res = self._decide(X, Y)
        self.memo[key] = res
        return res

    def _decide(self, X: Term, Y: Term):
        if X == Y:
            return ("P", Certificate("Reflexivity", X, Y))
        if isinstance(X, Empty):
            return ("P", Certificate("SumTransport", X, Y, {"regions": (), "assignment": ()}))
        c = _fast_path(X, Y) if self.fast_paths else None
        if c is not None:
            return ("P", c)
        w = _cheap_refute(X, Y)
        if w is not None:
            return ("R", w)
        rx, ry = rank(X), rank(Y)
        lam = rx.limit_part
        if self.fast_paths and not lam.is_zero and rx != lam and ry.limit_part == lam and ry != lam:
            dX, dY = normalize(derive(X, lam)), normalize(derive(Y, lam))
            kind, obj = self.decide(dX, dY)
            if kind == "P":
                return ("P", Certificate("FastPath", X, Y, {"tag": "L25", "lambda": lam}, (("derived", obj),)))
            return ("R", Witness("SegmentDrop", X, Y, lam, inner=obj))
        res = self._search(X, Y)
        if res[0] == "R" and rx > ONE:
            dX, dY = normalize(derive(X, ONE)), normalize(derive(Y, ONE))
            if (dX, dY) != (X, Y):
                kind, obj = self.decide(dX, dY)
                if kind == "R":
                    return ("R", Witness("SegmentDrop", X, Y, ONE, inner=obj))
        return res

    def _options(self, sources, targets, active, edges, certs):
        options = {}
        for i in active:
            c, F = sources[i]
            opts = []
            for j in _hosts(targets):
                G = targets[j][1]
                # top of F onto the top of G
                if not _top_structural(F, G):
                    edges[(i, j, "top")] = None
                elif isinstance(F, Cone):
                    kind, obj = self.decide(F.slice, G.slice)
                    if kind == "P":
                        certs[(i, j)] = obj
                        opts.append((j, "top"))
                    else:
                        edges[(i, j, "top")] = obj
                else:
                    opts.append((j, "top"))
                # F inside the slices of G
                if not isinstance(G, Cone):
                    edges[(i, j, "pool")] = None
                else:
                    kind, obj = self.decide(F, _pool(W1, FIN0, G.slice))
                    if kind == "P":
                        opts.append((j, "pool"))
                    else:
                        edges[(i, j, "pool")] = obj
            options[i] = opts
        return options

    def _search(self, X: Term, Y: Term):
        sources, targets = list(entries_of(X)), list(entries_of(Y))
        bound = _region_bound(targets)
        regions = _region_sources(sources, bound)
        active = [i for i in range(len(sources)) if i not in regions]
        edges: Dict = {}
        top_certs: Dict = {}
        options = self._options(sources, targets, active, edges, top_certs)
        cases: Dict = {}
        for assignment in _assignments(sources, active, options):
            self.tick()
            tops, pools = _loads(sources, active, options, assignment)
            bad = [j for j, k in tops.items() if targets[j][0] < k]
            if bad:
                cases[assignment] = ("tops", bad[0])
                continue
            pool_certs = []
            failed = None
            for j in sorted(pools):
                lam, G = targets[j]
                P = _pool(lam, tops.get(j, FIN0), G.slice)
                R = normalize(flat_sum(pools[j]))
                kind, obj = self.decide(R, P)
                if kind == "R":
                    failed = ("pool", j, obj)
                    break
                pool_certs.append((j, R, tops.get(j, FIN0), obj))
            if failed:
                cases[assignment] = failed
                continue
            return ("P", self._transport_cert(X, Y, sources, targets, regions, bound,
                                              active, options, assignment, top_certs, pool_certs))
        details = {"regions": regions, "edges": edges, "cases": cases}
        return ("R", Witness("HostDeficit", X, Y, details=details))

    def _transport_cert(self, X, Y, sources, targets, regions, bound, active, options,
                        assignment, top_certs, pool_certs):
        children = []
        if regions:
            RX = make_sum(sources[i] for i in regions)
            region = next(G for _, G in targets if rank(G) == bound and isinstance(G, (Jlim, ISumOmega)))
            children.append(("region", Certificate("IntoRegion", RX, region, {"bound": bound})))
        placed = []
        for i, dist in zip(active, assignment):
            row = []
            for (j, mode), k in zip(options[i], dist):
                if k.is_zero:
                    continue
                row.append((j, mode, k))
                if mode == "top":
                    F, G = sources[i][1], targets[j][1]
                    sub = (("slice", top_certs[(i, j)]),) if isinstance(F, Cone) else ()
                    children.append((("top", i, j), Certificate("ConeToCone", F, G, {}, sub)))
            placed.append((i, tuple(row)))
        for j, R, k, cert in pool_certs:
            lam, G = targets[j]
            children.append((("pool", j), Certificate(
                "IntoSlices", R, G, {"count": lam, "tops": k}, (("slices", cert),))))
        params = {"regions": regions, "assignment": tuple(placed)}
        return Certificate("SumTransport", X, Y, params, tuple(children))


# -- public API ------------------------------------------------------------------

def _budget(budget) -> int:
    if budget is None:
        return DEFAULT_BUDGET
    if isinstance(budget, bool) or not isinstance(budget, int) or budget <= 0:
        raise ValueError("budget must be a positive integer")
    return budget


def le_h(X: Term, Y: Term, budget: Optional[int] = None, *, fast_paths: bool = True) -> Decision:
    """Decide whether X is homeomorphic to a subspace of Y.

    ``fast_paths=False`` disables the closed-form rules so that every
    verdict comes from the placement search alone.
    """
    budget = _budget(budget)
    nX, nY = normalize(X), normalize(Y)
    prover = _Prover(budget, fast_paths)
    try:
        kind, obj = prover.decide(nX, nY)
    except _Exhausted:
        return Decision(UNKNOWN, nX, nY, spent=prover.spent)
    if kind == "P":
        return Decision(PROVED, nX, nY, certificate=obj, spent=prover.spent)
    return Decision(REFUTED, nX, nY, witness=obj, spent=prover.spent)


def eq_h(X: Term, Y: Term, budget: Optional[int] = None) -> Decision:
    """Mutual embeddability; a proof carries both directions."""
    fwd = le_h(X, Y, budget)
    if fwd.refuted:
        return fwd
    bwd = le_h(Y, X, budget)
    spent = fwd.spent + bwd.spent
    if bwd.refuted:
        w = bwd.witness
        return Decision(REFUTED, fwd.X, fwd.Y, witness=w, spent=spent)
    if fwd.unknown or bwd.unknown:
        return Decision(UNKNOWN, fwd.X, fwd.Y, spent=spent)
    cert = Certificate("Equivalence", fwd.X, fwd.Y, {},
                       (("forward", fwd.certificate), ("backward", bwd.certificate)))
    return Decision(PROVED, fwd.X, fwd.Y, certificate=cert, spent=spent)


def capacity(F: Term, G: Term, budget: Optional[int] = None) -> Mult:
    """How many pairwise disjoint copies of stable F fit into stable G."""
    nF, nG = normalize(F), normalize(G)
    d = le_h(nF, nG, budget)
    if d.unknown:
        raise RuntimeError(f"capacity undecided within budget: {F} into {G}")
    if d.refuted:
        return FIN0
    if isinstance(nG, Cone):
        s = le_h(nF, nG.slice, budget)
        if s.unknown:
            raise RuntimeError(f"capacity undecided within budget: {F} into a slice of {G}")
        if s.proved:
            return W1
    if isinstance(nG, (Jlim, ISumOmega)):
        return W1
    return FIN1


# -- checking ---------------------------------------------------------------------

def verify_certificate(c: Certificate, X: Term, Y: Term) -> bool:
    """Re-check every rule application of c against the actual terms."""
    try:
        return _check_cert(c, normalize(X), normalize(Y))
    except (AttributeError, KeyError, TypeError, ValueError, IndexError):
        return False


def _check_cert(c: Certificate, X: Term, Y: Term) -> bool:
    if not isinstance(c, Certificate) or c.X != X or c.Y != Y:
        return False
    r = c.rule
    if r == "Reflexivity":
        return X == Y
    if r == "FastPath":
        return _fast_path_ok(c, X, Y)
    if r == "Transitivity":
        Z = c.params["via"]
        a, b = c.child("left"), c.child("right")
        return a is not None and b is not None and _check_cert(a, X, Z) and _check_cert(b, Z, Y)
    if r == "Equivalence":
        a, b = c.child("forward"), c.child("backward")
        return a is not None and b is not None and _check_cert(a, X, Y) and _check_cert(b, Y, X)
    if r == "ConeToCone":
        if not _top_structural(X, Y):
            return False
        if isinstance(X, Pt):
            return True
        sub = c.child("slice")
        return sub is not None and _check_cert(sub, X.slice, Y.slice)
    if r == "IntoRegion":
        b = c.params["bound"]
        want = b if isinstance(Y, Jlim) else OMEGA
        return isinstance(Y, (Jlim, ISumOmega)) and b == want and rank(X) <= b
    if r == "IntoSlices":
        if not isinstance(Y, Cone):
            return False
        P = _pool(c.params["count"], c.params["tops"], Y.slice)
        sub = c.child("slices")
        return sub is not None and _check_cert(sub, X, P)
    if r == "SumTransport":
        return _check_transport(c, X, Y)
    return False


def _check_transport(c: Certificate, X: Term, Y: Term) -> bool:
    sources, targets = list(entries_of(X)), list(entries_of(Y))
    regions = tuple(c.params["regions"])
    placed = c.params["assignment"]
    if regions:
        bound = _region_bound(targets)
        if bound is None or any(rank(sources[i][1]) > bound for i in regions):
            return False
        sub = c.child("region")
        RX = make_sum(sources[i] for i in regions)
        if sub is None or sub.X != RX or not _check_cert(sub, RX, sub.Y) or sub.Y not in [G for _, G in targets]:
            return False
    covered = set(regions)
    tops: Dict[int, Mult] = {}
    pools: Dict[int, list] = {}
    for i, row in placed:
        if i in covered:
            return False
        covered.add(i)
        total = FIN0
        for j, mode, k in row:
            total = total + k
            F, G = sources[i][1], targets[j][1]
            if mode == "top":
                tops[j] = tops.get(j, FIN0) + k
                sub = c.child(("top", i, j))
                if sub is None or not _check_cert(sub, F, G):
                    return False
            elif mode == "pool":
                if not isinstance(G, Cone):
                    return False
                pools.setdefault(j, []).append((k, F))
            else:
                return False
        if total != sources[i][0]:
            return False
    if covered != set(range(len(sources))):
        return False
    for j, k in tops.items():
        if targets[j][0] < k:
            return False
    for j, load in pools.items():
        lam, G = targets[j]
        R = normalize(flat_sum(load))
        sub = c.child(("pool", j))
        if sub is None or sub.rule != "IntoSlices" or sub.params["count"] != lam:
            return False
        if sub.params["tops"] != tops.get(j, FIN0) or not _check_cert(sub, R, G):
            return False
    return True


def verify_witness(w: Witness, X: Term, Y: Term) -> bool:
    """Re-check that w really shows X does not embed into Y."""
    try:
        return _check_witness(w, normalize(X), normalize(Y))
    except (AttributeError, KeyError, TypeError, ValueError, IndexError):
        return False


def _check_witness(w: Witness, X: Term, Y: Term) -> bool:
    if not isinstance(w, Witness) or w.X != X or w.Y != Y:
        return False
    if w.kind == "RankDrop":
        rx, ry = rank(X), rank(Y)
        return ry < rx and w.source_value == rx and w.target_value == ry
    if w.kind == "CardDrop":
        cx, cy = card_at(X, w.level), card_at(Y, w.level)
        return cy < cx and w.source_value == cx and w.target_value == cy
    if w.kind == "SegmentDrop":
        a = w.level
        return w.inner is not None and _check_witness(
            w.inner, normalize(derive(X, a)), normalize(derive(Y, a)))
    if w.kind == "HostDeficit":
        return _check_deficit(w, X, Y)
    return False


def _check_deficit(w: Witness, X: Term, Y: Term) -> bool:
    sources, targets = list(entries_of(X)), list(entries_of(Y))
    d = w.details
    regions = _region_sources(sources, _region_bound(targets))
    if tuple(d["regions"]) != regions:
        return False
    active = [i for i in range(len(sources)) if i not in regions]
    edges = d["edges"]
    options = {}
    for i in active:
        F = sources[i][1]
        opts = []
        for j in _hosts(targets):
            G = targets[j][1]
            for mode in ("top", "pool"):
                if (i, j, mode) not in edges:
                    opts.append((j, mode))
                    continue
                ew = edges[(i, j, mode)]
                if mode == "top":
                    if ew is None:
                        if _top_structural(F, G):
                            return False
                    elif not (_top_structural(F, G) and isinstance(F, Cone)
                              and _check_witness(ew, F.slice, G.slice)):
                        return False
                else:
                    if ew is None:
                        if isinstance(G, Cone):
                            return False
                    elif not (isinstance(G, Cone) and _check_witness(ew, F, _pool(W1, FIN0, G.slice))):
                        return False
        options[i] = opts
    cases = d["cases"]
    for assignment in _assignments(sources, active, options):
        reason = cases.get(assignment)
        if reason is None:
            return False
        tops, pools = _loads(sources, active, options, assignment)
        if reason[0] == "tops":
            j = reason[1]
            if not targets[j][0] < tops.get(j, FIN0):
                return False
        elif reason[0] == "pool":
            j, sub = reason[1], reason[2]
            if j not in pools:
                return False
            lam, G = targets[j]
            P = _pool(lam, tops.get(j, FIN0), G.slice)
            if not _check_witness(sub, normalize(flat_sum(pools[j])), P):
                return False
        else:
            return False
    return True


# -- order combinatorics -------------------------------------------------------

_ENC_OMEGA = 1 << 62
_ENC_OMEGA1 = (1 << 63) - 1


def encode_mult(m) -> int:
    """Order-preserving int64 code of a multiplicity."""
    m = Mult.of(m)
    if m.is_omega1:
        return _ENC_OMEGA1
    if m.is_omega:
        return _ENC_OMEGA
    return m.n


def dickson_find_increasing(seq) -> Optional[Tuple[int, int]]:
    """First pair i < j (least j, then least i) with seq[i] <= seq[j] coordinate-wise.

    Elements are :class:`CanonVector` values over one basis or plain
    sequences of multiplicities of a common length.  A 2-d integer array
    of :func:`encode_mult` codes is used as is.
    """
    if isinstance(seq, np.ndarray):
        if seq.ndim != 2:
            raise ValueError("expected one row per vector")
        A = seq.astype(np.int64, copy=False)
    else:
        if len(seq) < 2:
            return None
        rows = []
        basis = None
        for v in seq:
            if isinstance(v, CanonVector):
                if basis is None:
                    basis = v.basis.elements
                elif v.basis.elements != basis:
                    raise ValueError("vectors over different bases")
                rows.append([encode_mult(m) for m in v.counts])
            else:
                if basis is not None:
                    raise ValueError("vectors over different bases")
                rows.append([encode_mult(m) for m in v])
        width = {len(r) for r in rows}
        if len(width) != 1:
            raise ValueError("vectors over different bases")
        A = np.array(rows, dtype=np.int64).reshape(len(rows), width.pop())
    for j in range(1, len(A)):
        hits = np.flatnonzero((A[:j] <= A[j]).all(axis=1))
        if hits.size:
            return int(hits[0]), j
    return None


@dataclass
class AntichainReport:
    is_antichain: bool
    comparable: List[Tuple[int, int, str]]
    unknown: List[Tuple[int, int]]

    @property
    def confirmed(self) -> bool:
        return self.is_antichain and not self.unknown


def check_antichain(terms: Sequence[Term], budget: Optional[int] = None) -> AntichainReport:
    """Pairwise incomparability under <_h."""
    comparable, unknown = [], []
    for i, j in itertools.combinations(range(len(terms)), 2):
        a = le_h(terms[i], terms[j], budget)
        b = le_h(terms[j], terms[i], budget)
        if a.proved:
            comparable.append((i, j, "<="))
        elif b.proved:
            comparable.append((i, j, ">="))
        elif a.unknown or b.unknown:
            unknown.append((i, j))
    return AntichainReport(not comparable, comparable, unknown)


@dataclass
class ChainReport:
    valid: bool
    length: int
    failure: Optional[Tuple[int, int]] = None
    reason: str = ""


def check_descending_chain(terms: Sequence[Term], budget: Optional[int] = None) -> ChainReport:
    """Each term strictly below its predecessor."""
    for i in range(len(terms) - 1):
        hi, lo = terms[i], terms[i + 1]
        down = le_h(lo, hi, budget)
        up = le_h(hi, lo, budget)
        if down.proved and up.refuted:
            continue
        if down.unknown or up.unknown:
            why = "undecided within budget"
        elif not down.proved:
            why = "successor does not embed into predecessor"
        else:
            why = "not strict"
        return ChainReport(False, len(terms), (i, i + 1), why)
    return ChainReport(True, len(terms))
