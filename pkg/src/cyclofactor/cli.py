"""Command-line front end.  Exit codes: 0 success, 1 a mathematical
precondition failed, 2 malformed input, 3 an internal consistency check failed."""
import argparse
import json
import os
import random
import sys
from pathlib import Path

from . import ntheory as nt
from .composed import ComposedKind, composed_product, oracle_composed, random_irreducible, random_monic
from .construct import construct_fm, construct_thm2, varshamov
from .cyclotomic import (
    cyclotomic_poly, expected_degree, factor_cyclotomic, two_adic_profile,
)
from .errors import HypothesisError, InputError, InternalError
from .ffield import FieldTower
from .lrs import LinearSequence, berlekamp_massey, predicted_complexity, product_sequence, safe_length
from .poly import Polynomial, is_irreducible

SEED_ENV = "CYCLOFACTOR_SEED"


def dumps(obj):
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)


def _tower(args):
    return FieldTower.for_order(args.q, args.seed)


def _poly(tower, text):
    path = Path(text)
    if path.is_file():
        text = path.read_text()
    return Polynomial.from_text(tower.base, text.strip())


def _ints(text):
    try:
        return [int(t) for t in text.replace(";", ",").split(",") if t.strip()]
    except ValueError:
        raise InputError(f"bad integer list {text!r}") from None


# -- field -------------------------------------------------------------------------

def cmd_field(args):
    tower = _tower(args)
    level = tower.extend(args.degree)
    rng = tower.rng("field-check", args.degree)
    ok = all(level.pow(level.random_nonzero(rng), level.order - 1) == level.one for _ in range(50))
    out = {
        "p": tower.p, "s": tower.s, "q": tower.q, "seed": tower.seed,
        "degree": args.degree, "order": level.order,
        "base_modulus": list(tower.base_modulus) if tower.base_modulus else None,
        "modulus": _modulus_ints(tower, args.degree),
        "group_order_check": ok,
    }
    if args.json:
        return dumps(out)
    lines = [f"F_{tower.q} = F_{tower.p}^{tower.s}, level of degree {args.degree}: order {level.order}"]
    if tower.base_modulus:
        lines.append(f"base modulus (ascending, F_p): {','.join(map(str, tower.base_modulus))}")
    lines.append(f"modulus (ascending, base indices): {','.join(map(str, out['modulus']))}")
    lines.append(f"x^(order-1) = 1 on 50 samples: {ok}")
    return "\n".join(lines)


def _modulus_ints(tower, d):
    base = tower.base
    return [base.index(c) if base.dim > 1 else c for c in tower.modulus(d)]


# -- cyclo ----------------------------------------------------------------------------

def _factorization_json(fact, method):
    out = fact.to_json()
    out["method"] = method
    out["cross_checked"] = method == "auto"
    return out


def cmd_cyclo_factor(args):
    tower = _tower(args)
    fact = factor_cyclotomic(tower, args.n, args.method)
    if args.json:
        return dumps(_factorization_json(fact, args.method))
    degs = ",".join(map(str, fact.degrees()))
    head = f"Phi_{args.n} over F_{tower.q}: {len(fact)} factors of degree {degs}"
    if args.method == "auto":
        head += " (closed form and oracle agree)"
    lines = [head]
    for f, tag in zip(fact.factors, fact.provenance):
        lines.append(f"  {f}    [{tag}]")
    return "\n".join(lines)


def cmd_cyclo_profile(args):
    prof = two_adic_profile(args.q, args.r)
    d = prof.as_dict()
    if args.json:
        return dumps(d)
    return "\n".join(f"{k} = {v}" for k, v in d.items())


def _ladder_rows(tower, r, max_n, method):
    prof = two_adic_profile(tower.q, r)
    rows = []
    for n in range(1, max_n + 1):
        fact = factor_cyclotomic(tower, 2 ** n * r, method)
        degs = fact.degrees()
        rows.append({"n": n, "count": len(fact), "degree": degs[0] if len(degs) == 1 else degs,
                     "predicted": expected_degree(prof, n), "method": method})
    return prof, rows


def cmd_cyclo_ladder(args):
    tower = _tower(args)
    prof0 = two_adic_profile(tower.q, args.r)
    max_n = args.max_n or min(prof0.K + 2, 8)
    prof, rows = _ladder_rows(tower, args.r, max_n, args.method)
    files = []
    if args.report_dir:
        from .report import ladder_report

        files = [str(p) for p in ladder_report(rows, args.report_dir, f"ladder_q{tower.q}_r{args.r}", prof.K)]
    if args.json:
        return dumps({"profile": prof.as_dict(), "rows": rows, "files": files})
    lines = [f"q={tower.q} r={args.r} K={prof.K}", "n,count,degree,predicted"]
    lines += [f"{r['n']},{r['count']},{r['degree']},{r['predicted']}" for r in rows]
    lines += [f"wrote {f}" for f in files]
    return "\n".join(lines)


# -- composed ----------------------------------------------------------------------------

def cmd_composed(args):
    tower = _tower(args)
    f, g = _poly(tower, args.f), _poly(tower, args.g)
    kind = ComposedKind.parse(args.kind)
    h = composed_product(kind, f, g)
    out = {"kind": kind.value, "f": f.to_ints(), "g": g.to_ints(), "result": h.to_ints(),
           "degree": h.degree}
    if args.oracle:
        out["oracle_agrees"] = oracle_composed(kind, f, g) == h
    if args.json:
        return dumps(out)
    lines = [f"{h}", f"degree {h.degree}; ascending: {h.to_text()}"]
    if args.oracle:
        lines.append(f"oracle agrees: {out['oracle_agrees']}")
    return "\n".join(lines)


# -- construct -------------------------------------------------------------------------------

def _report_text(rep):
    lines = []
    for name, ok, detail in rep.hypothesis_log:
        lines.append(f"  [{'pass' if ok else 'FAIL'}] {name}" + (f"  ({detail})" if detail else ""))
    if rep.result is not None:
        lines.append(f"F = {rep.result}")
        lines.append(f"degree {rep.degree}, irreducible (Rabin): {rep.irreducible}")
    if rep.order is not None or rep.expected_order is not None:
        lines.append(f"order {rep.order}; lcm(t, m) = {rep.expected_order}")
    return "\n".join(lines)


def _run_construction(args, build):
    tower = _tower(args)
    f = _poly(tower, args.f)
    try:
        rep = build(f)
    except HypothesisError as exc:
        log = getattr(exc, "log", None)
        if log and args.json:
            print(dumps({"error": str(exc), "hypotheses": [
                {"name": n, "pass": ok, "detail": d} for n, ok, d in log]}))
        elif log:
            print("\n".join(f"  [{'pass' if ok else 'FAIL'}] {n}" for n, ok, _ in log))
        raise
    if args.json:
        return dumps(rep.to_json())
    return _report_text(rep)


def cmd_construct_fm(args):
    return _run_construction(args, lambda f: construct_fm(
        f, args.m, use_charpoly=args.charpoly, strict=not args.no_strict))


def cmd_construct_varshamov(args):
    return _run_construction(args, lambda f: varshamov(f, args.r))


def cmd_construct_thm2(args):
    text = _run_construction(args, lambda f: construct_thm2(f, args.r, k=args.k, with_order=True))
    if args.k is not None and not args.json:
        text += f"\nF(x^({args.r}^{args.k})): certified irreducible, degree multiplied by {args.r ** args.k}"
    return text


# -- lrs -----------------------------------------------------------------------------------

def _recognize(tower, charpoly):
    """(kind, parameter) when the charpoly is Φ_(2^n) or Φ_r with r odd."""
    deg = charpoly.degree
    if deg >= 1 and deg & (deg - 1) == 0:
        n = deg.bit_length()
        if cyclotomic_poly(tower, 2 ** n) == charpoly:
            return "two-power", n
    for r in range(3, 4 * deg + 4, 2):
        if nt.phi(r) == deg and r % tower.p and cyclotomic_poly(tower, r) == charpoly:
            return "odd", r
    return None


def cmd_lrs_complexity(args):
    tower = _tower(args)
    c1, c2 = _poly(tower, args.char1), _poly(tower, args.char2)
    S = LinearSequence(c1, _ints(args.init1))
    T = LinearSequence(c2, _ints(args.init2))
    N = args.terms or safe_length(S, T)
    mp, L = berlekamp_massey(tower.base, product_sequence(S, T, N))
    out = {"terms": N, "complexity": L, "minimal_polynomial": mp.to_ints()}
    if args.predict:
        a, b = _recognize(tower, c1), _recognize(tower, c2)
        kinds = {k: v for k, v in (a, b) if a and b}
        if set(kinds) == {"two-power", "odd"}:
            pred = predicted_complexity(tower.q, kinds["odd"], kinds["two-power"])
            out["prediction"] = pred
        else:
            out["prediction"] = None
    if args.json:
        return dumps(out)
    lines = [f"linear complexity {L} from {N} terms", f"minimal polynomial: {mp}"]
    if args.predict:
        pred = out["prediction"]
        if pred is None:
            lines.append("prediction: charpolys are not Φ_(2^n) and Φ_r")
        else:
            lines.append(f"closed-form factor degree 2^(n-K) d_r: {pred['factor_degree']} "
                         f"(generic full degree φ(2^n r): {pred['generic']}); measured {L}")
    return "\n".join(lines)


# -- verify-paper ---------------------------------------------------------------------------------

def cmd_verify_paper(args):
    from .verify import verify_reference_table

    cells = verify_reference_table(args.table, args.seed)
    files = []
    if args.report_dir:
        from .report import verification_report

        files = [str(p) for p in verification_report(cells, args.report_dir, f"table{args.table}")]
    passed = sum(c.passed for c in cells)
    if args.json:
        rows = [{k: v for k, v in c.as_dict().items() if k != "seconds"} for c in cells]
        return dumps({"table": args.table, "passed": passed, "total": len(cells),
                      "cells": rows, "files": files})
    lines = [f"table {args.table}: {passed}/{len(cells)} cells pass"]
    for c in cells:
        lines.append(f"  {'PASS' if c.passed else 'FAIL'}  {c.row:<14} {c.check:<14} "
                     f"expected {c.expected} | got {c.got}")
    lines += [f"wrote {f}" for f in files]
    return "\n".join(lines)


# -- transcript -------------------------------------------------------------------------------------

def build_transcript(seed):
    """A fixed battery across every module, as one JSON-ready dict."""
    out = {"seed": seed}
    t9 = FieldTower.for_order(9, seed)
    for d in (2, 3, 4):
        t9.extend(d)
    out["field"] = t9.to_json()
    cyc = {}
    for q, N in ((5, 56), (19, 56), (3, 40), (7, 48), (9, 40), (11, 35)):
        tower = FieldTower.for_order(q, seed)
        cyc[f"{q}:{N}"] = factor_cyclotomic(tower, N, "closed").to_json()
    out["cyclotomic"] = cyc
    out["profiles"] = {f"{q}:{r}": two_adic_profile(q, r).as_dict() for q, r in ((5, 7), (19, 7), (3, 13))}
    rng = random.Random(f"{seed}:transcript")
    comp = []
    t5 = FieldTower.for_order(5, seed)
    for kind in ComposedKind:
        avoid = kind.excluded(t5.base)
        f = random_monic(t5.base, 2, rng, avoid)
        g = random_monic(t5.base, 3, rng, avoid)
        comp.append({"kind": kind.value, "f": f.to_ints(), "g": g.to_ints(),
                     "result": composed_product(kind, f, g).to_ints()})
    out["composed"] = comp
    t2 = FieldTower(2, 1, seed)
    f2 = Polynomial(t2.base, [1, 0, 1, 1])
    out["construct"] = {
        "fm": construct_fm(f2, 11).to_json(),
        "thm2": construct_thm2(f2, 11).to_json(),
        "varshamov": varshamov(f2, 11).to_json(),
    }
    seqs = []
    for _ in range(5):
        S = LinearSequence(random_irreducible(t5.base, 3, rng), [rng.randrange(5) for _ in range(3)])
        T = LinearSequence(random_irreducible(t5.base, 2, rng), [rng.randrange(5) for _ in range(2)])
        mp, L = berlekamp_massey(t5.base, product_sequence(S, T, safe_length(S, T)))
        seqs.append({"complexity": L, "minimal_polynomial": mp.to_ints()})
    out["lrs"] = seqs
    out["irreducible_check"] = is_irreducible(cyclotomic_poly(t5, 7))
    return out


def cmd_transcript(args):
    return dumps(build_transcript(args.seed))


# -- parser ------------------------------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                        help=f"seed for modulus and root choices (default ${SEED_ENV} or 0)")
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable output")
    ap = argparse.ArgumentParser(prog="cyclofactor", parents=[common],
                                 description="Cyclotomic factorization, composed products and "
                                             "irreducible constructions over finite fields.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("field", parents=[common], help="build a field tower level")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--degree", type=int, default=1)
    p.set_defaults(func=cmd_field)

    cy = sub.add_parser("cyclo", parents=[common], help="cyclotomic factorization")
    cys = cy.add_subparsers(dest="action", required=True)
    p = cys.add_parser("factor", parents=[common], help="factor Φ_n over F_q")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=["auto", "closed", "oracle"], default="auto")
    p.set_defaults(func=cmd_cyclo_factor)
    p = cys.add_parser("profile", parents=[common], help="2-adic profile A, m, d_r, K, L")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(func=cmd_cyclo_profile)
    p = cys.add_parser("ladder", parents=[common], help="degrees and counts of Φ_(2^n r) against n")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--max-n", type=int, default=None)
    p.add_argument("--method", choices=["auto", "closed", "oracle"], default="auto")
    p.add_argument("--report-dir", default=None, help="write CSV and PNG here")
    p.set_defaults(func=cmd_cyclo_ladder)

    p = sub.add_parser("composed", parents=[common], help="composed product of two polynomials")
    p.add_argument("--kind", required=True, choices=[k.value for k in ComposedKind])
    p.add_argument("--q", type=int, required=True)
    p.add_argument("f", help="file or literal with ascending coefficients")
    p.add_argument("g", help="file or literal with ascending coefficients")
    p.add_argument("--oracle", action="store_true", help="also run the brute-force oracle")
    p.set_defaults(func=cmd_composed)

    co = sub.add_parser("construct", parents=[common], help="irreducible constructions")
    cos = co.add_subparsers(dest="action", required=True)
    p = cos.add_parser("fm", parents=[common], help="F_m from minimal polynomials of root powers")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--f", required=True)
    p.add_argument("--charpoly", action="store_true",
                   help="experimental: use characteristic instead of minimal polynomials")
    p.add_argument("--no-strict", action="store_true", help="report failed hypotheses instead of exiting")
    p.set_defaults(func=cmd_construct_fm)
    p = cos.add_parser("varshamov", parents=[common], help="ψ(x^r)/f with ψ the minpoly of α^r")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--f", required=True)
    p.set_defaults(func=cmd_construct_varshamov)
    p = cos.add_parser("thm2", parents=[common], help="f(x^r)/f(x), optionally lifted by x -> x^(r^k)")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--f", required=True)
    p.add_argument("--k", type=int, default=None)
    p.set_defaults(func=cmd_construct_thm2)

    lr = sub.add_parser("lrs", parents=[common], help="linear recurring sequences")
    lrs_sub = lr.add_subparsers(dest="action", required=True)
    p = lrs_sub.add_parser("complexity", parents=[common], help="complexity of a product sequence")
    p.add_argument("--q", type=int, required=True)
    for i in (1, 2):
        p.add_argument(f"--char{i}", required=True)
        p.add_argument(f"--init{i}", required=True)
    p.add_argument("--terms", type=int, default=None)
    p.add_argument("--predict", action="store_true")
    p.set_defaults(func=cmd_lrs_complexity)

    p = sub.add_parser("verify-paper", parents=[common], help="recompute the golden tables")
    p.add_argument("--table", type=int, choices=[1, 2, 3], required=True)
    p.add_argument("--report-dir", default=None, help="write CSV and PNG here")
    p.set_defaults(func=cmd_verify_paper)

    p = sub.add_parser("transcript", parents=[common], help="deterministic JSON battery")
    p.set_defaults(func=cmd_transcript)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    # filled in here: set_defaults would rewrite the option objects the subparsers share
    if not hasattr(args, "seed"):
        args.seed = int(os.environ.get(SEED_ENV, "0") or 0)
    args.json = getattr(args, "json", False)
    try:
        text = args.func(args)
    except HypothesisError as exc:
        print(f"hypothesis failed: {exc}", file=sys.stderr)
        return 1
    except InputError as exc:
        print(f"bad input: {exc}", file=sys.stderr)
        return 2
    except InternalError as exc:
        print(f"internal check failed: {exc}", file=sys.stderr)
        return 3
    print(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
