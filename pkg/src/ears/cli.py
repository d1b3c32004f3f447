"""Command-line front end: ``ears <command> ...``.

Exit codes: 0 success, 1 a verdict failed, 2 bad input.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import __version__
from .earoot import (Root, canonical_base, ears_from_json, index_of, parse_root_text,
                     table4_base, verify_axioms)
from .errors import EarsError, GoldenMismatch, InputError

OK, VERDICT_FAILED, INPUT_ERROR = 0, 1, 2


# ---------------------------------------------------------------- input helpers

def _load_json(path_or_text: str):
    p = Path(path_or_text)
    try:
        text = p.read_text() if p.exists() else path_or_text
        return json.loads(text)
    except json.JSONDecodeError as err:
        raise InputError(f"cannot parse JSON from {path_or_text!r}: {err}") from None


def _system(arg):
    obj = _load_json(arg)
    try:
        return ears_from_json(obj)
    except (KeyError, TypeError, ValueError, AttributeError) as err:
        raise InputError(f"malformed system description: {err!r}") from None


def _root(text: str, ears=None) -> Root:
    text = text.strip()
    if text.startswith("{"):
        return Root.from_json(json.loads(text))
    return parse_root_text(text, ears.ell if ears else None, ears.nu if ears else None)


def _roots(arg: str, ears) -> list:
    obj = _load_json(arg)
    if not isinstance(obj, list):
        raise InputError("expected a JSON list of roots")
    return [Root.from_json(r) if isinstance(r, dict) else _root(str(r), ears) for r in obj]


def _base_arg(arg: str, ears) -> list:
    if arg in ("table1", "table4"):
        return canonical_base(ears, arg)
    return _roots(arg, ears)


def _labels(roots):
    return [r.label() for r in roots]


def _fmt(x):
    if isinstance(x, Fraction):
        return str(x)
    return x


def _matrix_text(m) -> str:
    rows = [[str(x) for x in row] for row in m]
    width = max(len(x) for row in rows for x in row)
    return "\n".join("  ".join(x.rjust(width) for x in row) for row in rows)


# ---------------------------------------------------------------- commands
# Each returns (report dict, ok flag, human text).

def cmd_build(a):
    e = _system(a.system)
    inv = e.invariants()
    return {"system": inv, "json": e.to_json()}, True, json.dumps(inv)


def cmd_member(a):
    e = _system(a.system)
    r = _root(a.root, e)
    m = e.contains(r)
    return {"root": r.to_json(), "label": r.label(), "membership": m.value}, True, \
        f"{r.label()}: {m.value}"


def cmd_axioms(a):
    e = _system(a.system)
    rep = verify_axioms(e, box=a.box, samples=a.samples, seed=a.seed)
    lines = [f"{k}: {'ok' if v else 'FAILED'}" for k, v in rep.results.items()]
    return {"system": e.invariants(), "box": a.box, "seed": a.seed, **rep.to_json()}, rep.ok, \
        "\n".join(lines)


def cmd_base(a):
    from .reflect import is_reflectable_base, is_reflectable_set
    e = _system(a.system)
    if a.check:
        P = _roots(a.check, e)
        rs = is_reflectable_set(e, P)
        rb = rs and is_reflectable_base(e, P)
        rep = {"P": _labels(P), "reflectable_set": rs, "reflectable_base": rb}
        return rep, rb, f"reflectable set: {rs}\nreflectable base: {rb}"
    note = "literal"
    if a.table == "table4":
        P, note = table4_base(e)
    else:
        P = canonical_base(e, a.table)
    rep = {"system": e.invariants(), "table": a.table, "base": [p.to_json() for p in P],
           "labels": _labels(P), "size": len(P), "note": note}
    return rep, True, ", ".join(_labels(P)) + ("" if note == "literal" else f"  ({note})")


def cmd_classify(a):
    from .reflect import classify
    e = _system(a.system)
    P = _base_arg(a.P, e)
    hints = {}
    if a.hints:
        for item in _load_json(a.hints):
            hints.setdefault(_root(item["root"], e) if isinstance(item["root"], str)
                             else Root.from_json(item["root"]), []).append(
                [Root.from_json(x) if isinstance(x, dict) else _root(x, e) for x in item["word"]])
    c = classify(e, P, search_maxlen=a.maxlen, witness_hints=hints)
    rep = {"system": e.invariants(), "P": _labels(P), **c.to_json()}
    text = "\n".join([f"M_r: {c.m_r.value}", f"M_m: {c.m_m.value} ({c.m_m_certificate})",
                      f"M_c: {c.m_c.value} ({c.m_c_certificate})"] +
                     [f"  remove {r.label()}: {v.status} ({v.reason})" for r, v in c.removals.items()])
    return rep, not c.notes, text


def cmd_weyl(a):
    from . import weyl
    e = _system(a.system)
    space = weyl.HyperbolicSpace(e)
    if a.weyl_cmd == "eval":
        word = _roots(a.word, e)
        w = space.word_eval(word)
        rep = {"word": _labels(word), "matrix": [[str(x) for x in row] for row in w.matrix()]}
        ok = True
        if a.equals:
            other = _roots(a.equals, e)
            same = space.word_eval(other) == w
            rep["equals"] = {"word": _labels(other), "equal": same}
            ok = same
        text = _matrix_text(w.matrix()) + (f"\nequal: {rep['equals']['equal']}" if a.equals else "")
        return rep, ok, text
    if a.weyl_cmd == "cpair":
        alpha = _root(a.root, e)
        sigma = [int(x) for x in a.sigma.split(",")]
        lhs = space.c_pair(alpha, sigma)
        rhs = space.expected_c_pair(alpha, sigma)
        rep = {"alpha": alpha.label(), "sigma": sigma, "identity_holds": lhs == rhs,
               "matrix": [[str(x) for x in row] for row in lhs.matrix()]}
        return rep, lhs == rhs, f"c_(alpha,sigma) = prod c_ij^(k m_i m_j): {lhs == rhs}"
    if a.weyl_cmd == "reduced":
        coll = [weyl.Triple(int(t["eps"]), t["which"], tuple(int(x) for x in t["eta"]))
                for t in _load_json(a.collection)]
        reduced = weyl.reduced_check(e, coll)
        holds = weyl.relation_holds(space, coll) if reduced else None
        rep = {"reduced": reduced, "relation_is_identity": holds}
        return rep, bool(reduced and holds), f"reduced: {reduced}, product is identity: {holds}"
    if a.weyl_cmd == "search":
        gens = _base_arg(a.gens, e)
        if a.target_root:
            target = space.reflection(_root(a.target_root, e))
        else:
            target = space.word_eval(_roots(a.target, e))
        found = weyl.bounded_word_search(space, target, gens, maxlen=a.maxlen, state_cap=a.cap)
        if isinstance(found, weyl.NotFound):
            rep = {"found": False, "maxlen": found.maxlen, "exhausted": found.exhausted,
                   "closed": found.closed}
            return rep, False, f"no word of length <= {found.maxlen} (subgroup enumerated: {found.closed})"
        return {"found": True, "word": _labels(found)}, True, " ".join(_labels(found))
    raise InputError(f"unknown weyl command {a.weyl_cmd}")


def _presentation(a, e):
    from .liepres import GradedPresentation, RelationMode
    P = _base_arg(a.base, e)
    mode = RelationMode.VPRIME if getattr(a, "v_prime", False) else RelationMode.V
    if getattr(a, "no_v", False):
        mode = RelationMode.NONE
    return GradedPresentation(e, P, mode, mic1=getattr(a, "impose_mic1", False))


def cmd_lie(a):
    from . import liepres as lp
    e = _system(a.system)
    pres = _presentation(a, e)
    head = {"system": e.invariants(), "P": _labels(pres.P), "mode": pres.mode.value}
    if a.lie_cmd == "dims":
        tq = lp.TruncatedQuotient(pres, a.maxlen)
        weights = None
        if a.weights:
            weights = [_root(w, e) for w in a.weights]
        dims = lp.quotient_dims(pres, a.maxlen, weights, jobs=a.jobs, quotient=tq)
        rep = {**head, "maxlen": a.maxlen,
               "dims": {r.label(): d for r, d in sorted(dims.items())}}
        ok = all(d == 1 for r, d in dims.items() if e.contains(r).nonisotropic)
        text = "\n".join(f"{r.label():>14}  {d}" for r, d in sorted(dims.items()))
        return rep, ok, text
    if a.lie_cmd == "cartan":
        d = lp.cartan_dim(pres, a.maxlen)
        return {**head, "cartan_dim": d, "expected": e.ell + 4}, d == e.ell + 4, str(d)
    if a.lie_cmd == "phi":
        res = lp.phi_check(pres, _root(a.gamma, e), _root(a.beta, e), a.maxlen)
        return {**head, **res.to_json()}, res.ok, f"{res.ok}: {res.detail}"
    if a.lie_cmd == "mic1":
        v = lp.mic1_check(pres, a.maxlen)
        return {**head, "mic1": v.value}, v is not lp.Mic1.Fails, v.value
    raise InputError(f"unknown lie command {a.lie_cmd}")


def cmd_tables(a):
    from . import tables
    types = None
    if a.types:
        from .finroot import parse_type
        types = [parse_type(t) for t in a.types.split(",")]
    nus = [int(x) for x in a.nu.split(",")] if a.nu else None
    out, ok, lines = {}, True, []
    for which in ([a.which] if a.which != "all" else list(tables.WHICH)):
        try:
            rows = tables.check(which, types, nus)
            out[which] = {"rows": rows, "mismatches": []}
            lines.append(f"{which}: {len(rows)} rows match the golden copy")
        except GoldenMismatch as err:
            ok = False
            out[which] = {"mismatches": err.detail.get("rows", [])}
            lines.append(f"{which}: {err}")
    return out, ok, "\n".join(lines)


def cmd_paper_examples(a):
    from .examples import run_all
    results = run_all()
    ok = all(r["pass"] for r in results)
    text = "\n".join(f"{r['name']}: {'pass' if r['pass'] else 'FAIL'}  {r['summary']}" for r in results)
    return {"examples": results}, ok, text


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ears", description="Extended affine root systems toolkit")
    ap.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable report")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=1)
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("build", parents=[common], help="build a system and print its invariants")
    p.add_argument("system", help="JSON system description or a path to one")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("member", parents=[common], help="membership of a root")
    p.add_argument("system", help="JSON system description or a path to one")
    p.add_argument("--root", required=True, help="'fin;iso' such as '1;0,1' or JSON")
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("axioms", parents=[common], help="check the axioms in a window")
    p.add_argument("system", help="JSON system description or a path to one")
    p.add_argument("--box", type=int, default=3)
    p.add_argument("--samples", type=int, default=4000)
    p.set_defaults(func=cmd_axioms)

    p = sub.add_parser("base", parents=[common], help="print a tabulated base or check a set")
    p.add_argument("system", help="JSON system description or a path to one")
    p.add_argument("--table", choices=["table1", "table4"], default="table1")
    p.add_argument("--check", help="JSON list of roots to test as a reflectable base")
    p.set_defaults(func=cmd_base)

    p = sub.add_parser("classify", parents=[common], help="M_r / M_m / M_c verdicts")
    p.add_argument("system", help="JSON system description or a path to one")
    p.add_argument("P", help="JSON list of roots, or table1 / table4")
    p.add_argument("--maxlen", type=int, default=10)
    p.add_argument("--hints", help="JSON list of {root, word} redundancy candidates")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("weyl", help="Weyl group computations")
    ws = p.add_subparsers(dest="weyl_cmd", required=True)
    q = ws.add_parser("eval", parents=[common])
    q.add_argument("system", help="JSON system description or a path to one")
    q.add_argument("--word", required=True)
    q.add_argument("--equals")
    q = ws.add_parser("cpair", parents=[common])
    q.add_argument("system", help="JSON system description or a path to one")
    q.add_argument("--root", required=True)
    q.add_argument("--sigma", required=True, help="comma-separated integers m_1..m_nu")
    q = ws.add_parser("reduced", parents=[common])
    q.add_argument("system", help="JSON system description or a path to one")
    q.add_argument("--collection", required=True, help="JSON list of {eps, which, eta}")
    q = ws.add_parser("search", parents=[common])
    q.add_argument("system", help="JSON system description or a path to one")
    q.add_argument("--gens", required=True, help="JSON list of roots, or table1 / table4")
    q.add_argument("--target", help="JSON word")
    q.add_argument("--target-root", help="reflection target")
    q.add_argument("--maxlen", type=int, default=10)
    q.add_argument("--cap", type=int, default=400000)
    p.set_defaults(func=cmd_weyl)

    p = sub.add_parser("lie", help="the elliptic presentation")
    ls = p.add_subparsers(dest="lie_cmd", required=True)
    for name, maxlen in (("dims", 7), ("cartan", 4), ("phi", 7), ("mic1", 5)):
        q = ls.add_parser(name, parents=[common])
        q.add_argument("system", help="JSON system description or a path to one")
        q.add_argument("--base", default="table4", help="JSON list of roots, or table1 / table4")
        q.add_argument("--maxlen", type=int, default=maxlen)
        q.add_argument("--v-prime", action="store_true", help="use (V') instead of (V)")
        q.add_argument("--no-v", action="store_true", help="drop relation family (V)")
        q.add_argument("--impose-mic1", action="store_true")
        if name == "dims":
            q.add_argument("--weight", action="append", dest="weights",
                           help="root as 'fin;iso'; repeat; use --weight=-1;0,1 for negative entries")
        if name == "phi":
            q.add_argument("--gamma", required=True)
            q.add_argument("--beta", required=True)
    p.set_defaults(func=cmd_lie)

    p = sub.add_parser("tables", parents=[common], help="regenerate tables and diff against golden copies")
    p.add_argument("--which", choices=["table1", "table2", "table4", "all"], default="all")
    p.add_argument("--types", help="comma-separated, e.g. B3,G2")
    p.add_argument("--nu", help="comma-separated nullities")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("paper-examples", parents=[common], help="run the worked examples")
    p.set_defaults(func=cmd_paper_examples)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    as_json = getattr(args, "json", False)
    t0 = time.perf_counter()
    try:
        report, ok, text = args.func(args)
    except InputError as err:
        _emit({"command": args.cmd, **err.as_dict()}, as_json, f"input error: {err}", sys.stderr)
        return INPUT_ERROR
    except EarsError as err:
        _emit({"command": args.cmd, **err.as_dict()}, as_json, f"error: {err}", sys.stderr)
        return VERDICT_FAILED
    except (ValueError, KeyError, TypeError) as err:
        # argument conversion (int(), JSON field access) on malformed input
        err = InputError(f"malformed argument: {err!r}")
        _emit({"command": args.cmd, **err.as_dict()}, as_json, f"input error: {err}", sys.stderr)
        return INPUT_ERROR
    report = {"command": args.cmd, "ok": ok, **report,
              "seed": getattr(args, "seed", 0), "seconds": round(time.perf_counter() - t0, 3)}
    _emit(report, as_json, text, sys.stdout)
    return OK if ok else VERDICT_FAILED


def _emit(report, as_json, text, stream):
    if as_json:
        stream.write(json.dumps(report, indent=1, sort_keys=True, default=_fmt) + "\n")
    else:
        stream.write(text + "\n")


if __name__ == "__main__":
    sys.exit(main())
