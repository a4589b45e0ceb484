"""Command-line interface.

Exit codes: 0 normal completion (a false theorem condition is a normal
answer), 1 when a check that can only fail through an implementation bug
(lemma, equivalence, chain) reports a violation, 2 for usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import conditions, properties, search
from .algfile import AlgebraFormatError, load_algebra
from .expr import EvalError, ParseError, eval_expr, parse_expr
from .relations import BinRel, FamilyBoundError, RelFamily, enumerate_relations

META_CHECKS = ("EQ_X2", "EQ_X3", "EQ_X3A", "EQ_REMARK", "CHAIN_X2", "CHAIN_X3", "T4_I", "T4_II")

# verdicts on these mean "implementation bug", not "property of the algebra"
_MUST_HOLD = set(conditions.THEOREM_IDS) | {
    "EQ_X2",
    "EQ_X3",
    "EQ_X3A",
    "EQ_REMARK",
    "CHAIN_X2",
    "CHAIN_X3",
    "T4_I",
    "T4_II",
}


def _pairs_text(rel: BinRel) -> str:
    return "{" + ",".join(f"({a},{b})" for a, b in rel.pairs()) + "}"


def _emit(records, fmt, out):
    if fmt == "structured":
        for rec in records:
            out.write(json.dumps(rec, separators=(",", ":"), sort_keys=True) + "\n")
    else:
        for rec in records:
            out.write(rec["_text"] + "\n")


def _report_records(reports):
    for rep in reports:
        rec = rep.to_record()
        rec["_text"] = rep.to_text()
        yield rec


def _family_from_args(args) -> RelFamily:
    return RelFamily(
        mode=args.family, sample_count=args.samples, seed=args.seed
    )


def _add_family_flags(sub):
    sub.add_argument(
        "--family",
        choices=("exhaustive", "sampled"),
        default="exhaustive",
        help="quantifier sweep mode (default exhaustive)",
    )
    sub.add_argument("--samples", type=int, default=200)
    sub.add_argument("--seed", type=int, default=0)


def _add_format_flag(sub):
    sub.add_argument("--format", choices=("text", "structured"), default="text")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="relcomm",
        description="Relation commutators on finite algebras: evaluate, check, search.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p_eval = subs.add_parser("eval", help="evaluate a relation expression")
    p_eval.add_argument("-a", "--algebra", required=True, metavar="ALG.alg")
    p_eval.add_argument("-e", "--expr", required=True)
    p_eval.add_argument(
        "--bind",
        action="append",
        default=[],
        metavar="NAME=LITERAL",
        help="bind a relation name, e.g. R={(0,1)} or T=delta",
    )
    p_eval.add_argument(
        "--close-inputs",
        action="store_true",
        help="close commutator arguments to reflexive admissible relations",
    )
    _add_format_flag(p_eval)

    p_check = subs.add_parser("check", help="check one condition")
    p_check.add_argument("-a", "--algebra", required=True)
    p_check.add_argument("--condition", required=True, metavar="ID")
    _add_family_flags(p_check)
    _add_format_flag(p_check)

    p_all = subs.add_parser("check-all", help="run every condition and meta-check")
    p_all.add_argument("-a", "--algebra", required=True)
    _add_family_flags(p_all)
    _add_format_flag(p_all)

    p_enum = subs.add_parser("enumerate", help="list a relation family")
    p_enum.add_argument("-a", "--algebra", required=True)
    p_enum.add_argument(
        "--family",
        required=True,
        choices=("reflexive-admissible", "tolerance", "congruence"),
    )
    p_enum.add_argument("--mode", choices=("exhaustive", "sampled"), default="exhaustive")
    p_enum.add_argument("--samples", type=int, default=200)
    p_enum.add_argument("--seed", type=int, default=0)
    _add_format_flag(p_enum)

    p_search = subs.add_parser("search", help="hunt for differing condition profiles")
    p_search.add_argument(
        "--target",
        default=None,
        metavar="ID,ID",
        help="two condition ids to separate (default: full problem profile)",
    )
    p_search.add_argument("--sizes", default="3,4", metavar="N,N")
    p_search.add_argument("--budget", type=int, default=100)
    p_search.add_argument("--seed", type=int, default=0)
    p_search.add_argument("--start-index", type=int, default=0)
    p_search.add_argument("--jobs", type=int, default=1)
    _add_format_flag(p_search)

    p_cat = subs.add_parser("catalog", help="list built-in algebras")
    _add_format_flag(p_cat)
    return parser


def _cmd_eval(args, out):
    alg = load_algebra(args.algebra)
    env = {}
    for binding in args.bind:
        name, sep, text = binding.partition("=")
        if not sep or not name:
            raise SystemExit2(f"bad --bind {binding!r}, expected NAME=LITERAL")
        env[name.strip()] = eval_expr(alg, {}, parse_expr(text.strip()))
    expr = parse_expr(args.expr)
    rel = eval_expr(alg, env, expr, close_inputs=args.close_inputs)
    if args.format == "structured":
        rec = {"expr": args.expr, "pairs": [list(p) for p in rel.pairs()]}
        out.write(json.dumps(rec, separators=(",", ":"), sort_keys=True) + "\n")
    else:
        out.write(_pairs_text(rel) + "\n")
    return 0


def _run_meta(alg, cond, family):
    if cond.startswith("EQ_"):
        for rep in properties.check_equivalence_claims(alg, family):
            if rep.condition == cond:
                return rep
        raise SystemExit2(f"unknown meta check {cond!r}")
    if cond.startswith("CHAIN_"):
        return properties.check_implication_chain(alg, cond.split("_", 1)[1], family)
    if cond in ("T4_I", "T4_II"):
        return properties.check_theorem_x4(alg, cond.split("_", 1)[1], family)
    raise SystemExit2(f"unknown meta check {cond!r}")


def _cmd_check(args, out):
    alg = load_algebra(args.algebra)
    family = _family_from_args(args)
    cond = args.condition
    if cond in META_CHECKS:
        report = _run_meta(alg, cond, family)
    elif cond in conditions.CONDITIONS:
        report = properties.check_condition(alg, cond, family)
    else:
        raise SystemExit2(
            f"unknown condition {cond!r}; valid: "
            + ", ".join(sorted(conditions.CONDITION_IDS) + sorted(META_CHECKS))
        )
    _emit(_report_records([report]), args.format, out)
    if cond in _MUST_HOLD and not report.holds:
        return 1
    return 0


def _cmd_check_all(args, out):
    alg = load_algebra(args.algebra)
    family = _family_from_args(args)
    reports = []
    for cid in conditions.CONDITION_IDS:
        quantifiers = conditions.CONDITIONS[cid].quantifiers
        needs_sampling = any(q.kind == conditions.ANY for q in quantifiers)
        fam = family
        if needs_sampling and family.mode == "exhaustive":
            fam = RelFamily(mode="sampled", sample_count=family.sample_count, seed=family.seed)
        reports.append(properties.check_condition(alg, cid, fam))
    reports.extend(properties.check_equivalence_claims(alg, family))
    reports.append(properties.check_implication_chain(alg, "x2", family))
    reports.append(properties.check_implication_chain(alg, "x3", family))
    reports.append(properties.check_theorem_x4(alg, "I", family))
    reports.append(properties.check_theorem_x4(alg, "II", family))
    _emit(_report_records(reports), args.format, out)
    bad = any(
        rep.condition in _MUST_HOLD and not rep.holds for rep in reports
    )
    return 1 if bad else 0


def _cmd_enumerate(args, out):
    alg = load_algebra(args.algebra)
    family = RelFamily(
        kind=args.family, mode=args.mode, sample_count=args.samples, seed=args.seed
    )
    records = []
    for rel in enumerate_relations(alg, family):
        records.append(
            {
                "bits": rel.bits,
                "pairs": [list(p) for p in rel.pairs()],
                "_text": _pairs_text(rel),
            }
        )
    _emit(records, args.format, out)
    return 0


def _cmd_search(args, out):
    target = None
    if args.target and args.target != search.PROFILE_DIVERSITY:
        parts = tuple(p.strip() for p in args.target.split(","))
        if len(parts) != 2:
            raise SystemExit2("--target wants two comma-separated condition ids")
        target = parts
    sizes = tuple(int(s) for s in args.sizes.split(","))
    task = search.SearchTask(
        sizes=sizes,
        budget=args.budget,
        seed=args.seed,
        target=target,
        start_index=args.start_index,
        jobs=args.jobs,
    )
    report = search.run_search(task)
    if args.format == "structured":
        out.write(report.to_json_lines() + "\n")
    else:
        out.write(
            f"searched {report.candidates_generated} candidates "
            f"({report.duplicates_skipped} isomorphic duplicates skipped)\n"
        )
        for key in sorted(report.groups):
            names = ", ".join(report.groups[key])
            out.write(f"profile {key}: {names}\n")
        for sep in report.separations:
            out.write(
                f"separation on {sep['target']}: {sep['witness_a']} vs {sep['witness_b']}\n"
            )
        out.write(f"resume: {report.resume}\n")
    return 0


def _cmd_catalog(args, out):
    records = []
    for name, alg in search.catalog():
        ops = ", ".join(f"{op.name}/{op.arity}" for op in alg.operations)
        records.append(
            {
                "name": name,
                "size": alg.size,
                "ops": [[op.name, op.arity, list(op.table)] for op in alg.operations],
                "_text": f"{name}: size {alg.size}" + (f", ops {ops}" if ops else ""),
            }
        )
    _emit(records, args.format, out)
    return 0


class SystemExit2(Exception):
    """Usage-level error: reported and mapped to exit code 2."""


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "eval": _cmd_eval,
        "check": _cmd_check,
        "check-all": _cmd_check_all,
        "enumerate": _cmd_enumerate,
        "search": _cmd_search,
        "catalog": _cmd_catalog,
    }
    try:
        return handlers[args.command](args, sys.stdout)
    except SystemExit2 as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ParseError, EvalError, AlgebraFormatError, FamilyBoundError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
