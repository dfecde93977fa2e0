"""Command-line front end.

Exit codes: 0 success, 2 parse error, 3 undecided within budget,
4 invalid input.
"""
from __future__ import annotations

import argparse
import json
import shlex
import sys
import warnings
from typing import Callable, List, Optional, Sequence, Tuple

from .cb import card_at, derive, rank, truncate
from .dimtype import (
    DEFAULT_BUDGET,
    check_antichain,
    check_descending_chain,
    dickson_find_increasing,
    eq_h,
    le_h,
    capacity,
)
from .embed import compactification_bound, embed_into_ordinal, ordinal_bound
from .ordinal import OrdinalError
from .poset import EmptyProjectionWarning, lift, project, psi_order_check
from .stable import enumerate_stable, is_homeo, normalize
from .syntax import ParseError, parse_ordinal, parse_term
from .terms import Mult, TermError, build_indicator

__all__ = ["main", "run", "FACTS", "check_facts"]

EXIT_OK, EXIT_PARSE, EXIT_UNKNOWN, EXIT_INVALID = 0, 2, 3, 4


class _Unknown(Exception):
    pass


# -- bundled facts ---------------------------------------------------------------

def _le(a, b, budget):
    return le_h(parse_term(a), parse_term(b), budget).verdict


def _eq(a, b, budget):
    return eq_h(parse_term(a), parse_term(b), budget).verdict


def _homeo(a, b, _budget):
    return "TRUE" if is_homeo(parse_term(a), parse_term(b)) else "FALSE"


# each fact is a list of (query, expected verdict)
_Check = Tuple[Callable, str, str, str]


def _strict(a, b) -> List[_Check]:
    return [(_le, a, b, "PROVED"), (_le, b, a, "REFUTED")]


FACTS: List[Tuple[str, str, List[_Check]]] = [
    ("F1", "i(2) < i(2) + w1*pt", _strict("i(2)", "i(2) + w1*pt")),
    ("F2", "i(2) + w1*pt < J(2)", _strict("i(2) + w1*pt", "J(2)")),
    ("F3", "J(2) does not embed in i(2)", [(_le, "J(2)", "i(2)", "REFUTED")]),
    ("F4", "i(4) and J(3) are incomparable", [(_le, "i(4)", "J(3)", "REFUTED"), (_le, "J(3)", "i(4)", "REFUTED")]),
    ("F5", "J(g+1) + w1*J(g) is homeomorphic to J(g+1)",
     [(_homeo, f"J({g}+1) + w1*J({g})", f"J({g}+1)", "TRUE") for g in ("1", "2", "3", "w")]),
    ("F6", "w1*J(w) is homeomorphic to J(w)", [(_homeo, "w1*J(w)", "J(w)", "TRUE")]),
    ("F7", "i(n) embeds in J(n)", [(_le, f"i({n})", f"J({n})", "PROVED") for n in range(1, 6)]),
    ("F8", "J(n+1) embeds in i(2n+1)", [(_le, f"J({n + 1})", f"i({2 * n + 1})", "PROVED") for n in range(1, 4)]),
    ("F9", "isum and J(w) have one dimensional type but are not homeomorphic",
     [(_eq, "isum", "J(w)", "PROVED"), (_homeo, "isum", "J(w)", "FALSE")]),
    ("F10", "cone(w*J(w)) and J(w+1) have one dimensional type", [(_eq, "cone(w*J(w))", "J(w+1)", "PROVED")]),
    ("F11", "J(w+2) embeds in a cone tower of rank w+3",
     [(_le, "J(w+2)", "cone(w*cone(w*cone(w*J(w))))", "PROVED")]),
]


def check_facts(budget: Optional[int] = None):
    """Rows (id, description, ok, details) for every bundled fact."""
    rows = []
    for fid, desc, checks in FACTS:
        details = []
        ok = True
        for fn, a, b, want in checks:
            got = fn(a, b, budget)
            details.append({"query": f"{fn.__name__.strip('_')} {a!r} {b!r}", "expected": want, "got": got})
            ok = ok and got == want
        rows.append((fid, desc, ok, details))
    return rows


# -- verbs ---------------------------------------------------------------------

def _ord_arg(args, attr="ordinal"):
    v = getattr(args, attr, None) or args.times
    if v is None:
        raise TermError("an ordinal argument is required (positional or --times)")
    return parse_ordinal(v)


def _decision_record(query, d):
    rec = {"query": query, **d.to_dict()}
    if d.unknown:
        raise _Unknown(rec)
    return rec, d.verdict


def _cmd(args) -> Tuple[dict, str]:
    v = args.verb
    budget = args.budget
    q = " ".join([v] + [shlex.quote(str(x)) for x in args.args])
    a = args.args
    T = lambda k: parse_term(a[k])

    def need(n):
        if len(a) < n:
            raise TermError(f"{v} needs {n} argument(s)")

    def ordinal_at(k):
        if len(a) > k:
            return parse_ordinal(a[k])
        if args.times:
            return parse_ordinal(args.times)
        raise TermError(f"{v} needs an ordinal (positional or --times)")

    def lam():
        return parse_ordinal(args.lam) if args.lam else parse_ordinal("w")

    if v == "rank":
        need(1)
        r = rank(T(0))
        return {"query": q, "verdict": "OK", "ordinal": str(r)}, str(r)
    if v in ("derive", "truncate"):
        need(1)
        fn = derive if v == "derive" else truncate
        nf = normalize(fn(T(0), ordinal_at(1)))
        return {"query": q, "verdict": "OK", "normal_form": str(nf)}, str(nf)
    if v == "cardat":
        need(1)
        m = card_at(T(0), ordinal_at(1))
        return {"query": q, "verdict": "OK", "cardinality": str(m)}, str(m)
    if v == "normalize":
        need(1)
        nf = normalize(T(0))
        return {"query": q, "verdict": "OK", "normal_form": str(nf)}, str(nf)
    if v == "homeo":
        need(2)
        X, Y = T(0), T(1)
        h = is_homeo(X, Y)
        text = "HOMEOMORPHIC" if h else "NOT HOMEOMORPHIC"
        return {"query": q, "verdict": text, "normal_form": [str(normalize(X)), str(normalize(Y))]}, text
    if v in ("le", "eq"):
        need(2)
        fn = le_h if v == "le" else eq_h
        return _decision_record(q, fn(T(0), T(1), budget))
    if v == "stable":
        need(1)
        n = int(a[0])
        basis = enumerate_stable(n)
        lines = [f"level {k + 1}: {len(lev)}" for k, lev in enumerate(basis.levels)]
        lines += [str(t) for t in basis.elements]
        rec = {"query": q, "verdict": "OK", "levels": [len(lev) for lev in basis.levels],
               "elements": [str(t) for t in basis.elements]}
        return rec, "\n".join(lines)
    if v == "capacity":
        need(2)
        try:
            m = capacity(T(0), T(1), budget)
        except RuntimeError as exc:
            raise _Unknown({"query": q, "verdict": "UNKNOWN", "reason": str(exc)})
        return {"query": q, "verdict": "OK", "capacity": str(m)}, str(m)
    if v == "embed":
        need(1)
        tree = embed_into_ordinal(T(0))
        d = tree.to_dict(args.depth)
        return {"query": q, "verdict": "OK", "ordinal": d["interval"][1], "tree": d}, json.dumps(d, indent=2)
    if v in ("bound", "compactify"):
        need(1)
        o = (ordinal_bound if v == "bound" else compactification_bound)(T(0))
        return {"query": q, "verdict": "OK", "ordinal": str(o)}, str(o)
    if v == "lift":
        need(1)
        t = lift(T(0), lam())
        return {"query": q, "verdict": "OK", "term": str(t), "normal_form": str(normalize(t))}, str(t)
    if v == "project":
        need(1)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", EmptyProjectionWarning)
            t = project(T(0), lam())
        flagged = any(issubclass(w.category, EmptyProjectionWarning) for w in caught)
        nf = normalize(t)
        rec = {"query": q, "verdict": "EMPTY" if flagged else "OK", "normal_form": str(nf)}
        return rec, f"{nf}" + ("  (empty: lambda is not below the rank)" if flagged else "")
    if v == "psi-check":
        need(2)
        rep = psi_order_check(T(0), T(1), lam(), budget)
        rec = {"query": q, **rep.to_dict()}
        if rep.inconclusive:
            rec["verdict"] = "UNKNOWN"
            raise _Unknown(rec)
        text = "AGREE" if rep.agree else "DISAGREE"
        rec["verdict"] = text
        return rec, (f"{text}: forward {rep.forward.verdict}/{rep.forward_lifted.verdict}, "
                     f"backward {rep.backward.verdict}/{rep.backward_lifted.verdict}")
    if v == "antichain":
        terms = [parse_term(s) for s in a]
        rep = check_antichain(terms, budget)
        rec = {"query": q, "comparable": [list(c) for c in rep.comparable], "unknown": [list(u) for u in rep.unknown]}
        if rep.comparable:
            rec["verdict"] = "NOT ANTICHAIN"
        elif rep.unknown:
            rec["verdict"] = "UNKNOWN"
            raise _Unknown(rec)
        else:
            rec["verdict"] = "ANTICHAIN"
        return rec, rec["verdict"]
    if v == "chain":
        terms = [parse_term(s) for s in a]
        rep = check_descending_chain(terms, budget)
        rec = {"query": q, "verdict": "VALID" if rep.valid else "INVALID", "length": rep.length}
        if not rep.valid:
            rec.update({"failure": list(rep.failure), "reason": rep.reason})
            if rep.reason == "undecided within budget":
                rec["verdict"] = "UNKNOWN"
                raise _Unknown(rec)
        text = rec["verdict"] + ("" if rep.valid else f" at {rep.failure}: {rep.reason}")
        return rec, text
    if v == "dickson":
        seq = [tuple(Mult.of(_mult_token(x)) for x in s.split(",")) for s in a]
        hit = dickson_find_increasing(seq)
        rec = {"query": q, "verdict": "FOUND" if hit else "NONE", "pair": list(hit) if hit else None}
        return rec, f"FOUND {hit[0]} {hit[1]}" if hit else "NONE"
    if v == "indicator":
        n = int(parse_ordinal(args.lam)) if args.lam else 6
        t = build_indicator([int(x) for x in a], n)
        return {"query": q, "verdict": "OK", "term": str(t), "normal_form": str(normalize(t))}, str(t)
    if v == "facts":
        rows = check_facts(budget)
        ok = all(r[2] for r in rows)
        rec = {"query": q, "verdict": "OK" if ok else "FAILED",
               "facts": [{"id": f, "description": d, "ok": o, "checks": c} for f, d, o, c in rows]}
        text = "\n".join(f"{'PASS' if o else 'FAIL'} {f}: {d}" for f, d, o, _ in rows)
        if not ok:
            raise _FactsFailed(rec, text)
        return rec, text
    raise TermError(f"unknown verb {v!r}")


class _FactsFailed(Exception):
    pass


def _mult_token(s: str):
    s = s.strip()
    return int(s) if s.isdigit() else s


VERBS = [
    "rank", "derive", "truncate", "cardat", "normalize", "homeo", "le", "eq", "stable", "capacity",
    "embed", "bound", "compactify", "lift", "project", "psi-check", "antichain", "chain", "dickson",
    "indicator", "facts", "batch",
]


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pscatter", description="Scattered P-space term calculus.")
    p.add_argument("verb", choices=VERBS)
    p.add_argument("args", nargs="*", help="terms, ordinals or numbers, depending on the verb")
    p.add_argument("--json", action="store_true", help="one JSON record per query")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="search budget in rule applications")
    p.add_argument("--lambda", dest="lam", help="limit ordinal for lift/project/psi-check; height for indicator")
    p.add_argument("--times", help="ordinal argument for derive/truncate/cardat")
    p.add_argument("--depth", type=int, default=3, help="expansion depth of printed allocation trees")
    return p


def _run_one(args, out) -> int:
    try:
        rec, text = _cmd(args)
        code = EXIT_OK
    except _Unknown as exc:
        rec = exc.args[0]
        text, code = "UNKNOWN", EXIT_UNKNOWN
    except _FactsFailed as exc:
        rec, text = exc.args
        code = EXIT_INVALID
    except ParseError as exc:
        rec, text, code = {"error": "parse", "message": str(exc)}, f"parse error: {exc}", EXIT_PARSE
    except (TermError, OrdinalError, ValueError) as exc:
        rec, text, code = {"error": "invalid", "message": str(exc)}, f"invalid input: {exc}", EXIT_INVALID
    if args.json:
        out.write(json.dumps(rec) + "\n")
    else:
        out.write(text + "\n")
    return code


def run(argv: Sequence[str], out=None) -> int:
    out = out or sys.stdout
    parser = _parser()
    args = parser.parse_args(list(argv))
    if args.verb != "batch":
        return _run_one(args, out)
    if not args.args:
        parser.error("batch needs a corpus file (or - for stdin)")
    src = sys.stdin if args.args[0] == "-" else open(args.args[0], encoding="utf-8")
    worst = EXIT_OK
    with src:
        for line in src:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            sub = parser.parse_args(shlex.split(line))
            for flag in ("json",):
                setattr(sub, flag, getattr(sub, flag) or getattr(args, flag))
            if sub.budget == DEFAULT_BUDGET:
                sub.budget = args.budget
            worst = max(worst, _run_one(sub, out))
    return worst


def main(argv: Optional[Sequence[str]] = None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
