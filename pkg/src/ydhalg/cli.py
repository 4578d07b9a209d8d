"""Batch command-line tool: verify, analyze, core, dualize, search, report.

Exit codes: 0 all checks passed; 1 an axiom or theorem check failed;
2 usage error; 3 the working cyclotomic field does not split the instance.
All diagnostics go to stderr; canonical report JSON goes to files or
stdout only.
"""

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from .abgroup import FinAbGroup
from .catalog import BudgetSpec, SearchConfig, search_nontrivial
from .commalg import analyze, core, find_trivial_subalgebra, \
    primitive_idempotents
from .errors import (NonSplitField, NotCommutative, NotSemisimple, ParseError,
                     YdhError)
from .ydhio import (algebra_to_document, load_algebra, outcome_to_report,
                    parse_group, render_document, report_to_json, save_algebra)
from .ydhopf import dualize, ensure_antipode, is_trivial, verify_axioms

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_NONSPLIT = 3


def _thread_cap(n_items):
    cap = os.environ.get("YDH_THREADS")
    if cap:
        try:
            return max(1, min(int(cap), n_items))
        except ValueError:
            return 1
    return max(1, min(os.cpu_count() or 1, n_items))


def _load(path):
    algebra = load_algebra(path)
    return ensure_antipode(algebra)


def cmd_verify(args):
    def one(path):
        algebra = _load(path)
        report = verify_axioms(algebra)
        trivial, witness = is_trivial(algebra)
        return path, report, trivial, witness

    paths = args.files
    workers = _thread_cap(len(paths))
    if workers > 1 and len(paths) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(one, paths))
    else:
        results = [one(p) for p in paths]
    all_ok = True
    for path, report, trivial, witness in results:
        status = "pass" if report.passed else "FAIL"
        print("%s: axioms %s, trivial=%s" % (path, status, trivial))
        for check in report.checks:
            marker = "ok" if check.passed else "FAIL"
            print("  %-28s %s%s" % (check.name, marker,
                                    "" if check.passed
                                    else "  witness=%s" % (check.witness,)))
        if not report.passed:
            all_ok = False
    return EXIT_PASS if all_ok else EXIT_FAIL


def cmd_analyze(args):
    def one(path):
        algebra = _load(path)
        started = time.time()
        outcome = analyze(algebra, tensor_ideals=args.tensor_ideals)
        elapsed = time.time() - started
        return path, outcome, elapsed

    paths = args.files
    workers = _thread_cap(len(paths))
    if workers > 1 and len(paths) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(one, paths))
    else:
        results = [one(p) for p in paths]
    all_ok = True
    for path, outcome, elapsed in results:
        report = outcome_to_report(outcome)
        blob = report_to_json(report)
        if args.json:
            target = args.json if len(paths) == 1 else \
                os.path.join(args.json, os.path.basename(path) + ".json")
            with open(target, "w", encoding="utf-8") as fh:
                fh.write(blob)
        else:
            sys.stdout.write(blob)
        print("%s: axioms %s, theorems %s, trivial=%s (%.2fs)"
              % (path, "pass" if outcome.axioms_passed else "FAIL",
                 "pass" if outcome.theorems_passed else "FAIL",
                 outcome.trivial, elapsed), file=sys.stderr)
        if outcome.trivial is False:
            import math
            g = math.gcd(outcome.algebra.dim, outcome.algebra.group.order)
            print("%s: nontrivial instance; gcd(dim,|G|)=%d > 1 as required"
                  % (path, g), file=sys.stderr)
        if not outcome.passed:
            all_ok = False
    return EXIT_PASS if all_ok else EXIT_FAIL


def cmd_core(args):
    algebra = _load(args.file)
    analysis = primitive_idempotents(algebra)
    if not 0 <= args.idempotent < algebra.dim:
        print("idempotent index out of range", file=sys.stderr)
        return EXIT_USAGE
    record, checks = core(analysis, args.idempotent)
    ok = all(flag for _, flag, _ in checks)
    print(json.dumps({
        "idempotent": record.e_idx,
        "partner": record.partner_idx,
        "size": record.m,
        "members": list(record.omega_indices),
        "freeness_rank": record.freeness_rank,
        "checks_passed": ok,
    }, sort_keys=True, indent=1, separators=(",", ": ")))
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_dualize(args):
    algebra = _load(args.file)
    save_algebra(args.output, dualize(algebra))
    return EXIT_PASS


def cmd_search(args):
    group = parse_group(args.group)
    budget = BudgetSpec()
    if args.budget:
        parts = [int(x) for x in args.budget.split(",")]
        budget = BudgetSpec(*parts)
    cfg = SearchConfig(group, args.dim, order=args.order, budget=budget,
                       confirm_prune=args.confirm_prune,
                       max_candidates=args.max_candidates)
    started = time.time()
    outcome = search_nontrivial(cfg)
    print("search: %d instances (%d nontrivial), %d candidates, "
          "pruned=%s, exhausted=%s (%.1fs)"
          % (len(outcome.instances), len(outcome.nontrivial()),
             outcome.candidates_checked, outcome.pruned, outcome.exhausted,
             time.time() - started), file=sys.stderr)
    os.makedirs(args.out, exist_ok=True)
    for n, (instance, trivial) in enumerate(outcome.instances):
        tag = "trivial" if trivial else "nontrivial"
        name = "search_%s_d%d_%02d_%s.ydh" % (
            render_document_groupname(group), args.dim, n, tag)
        path = os.path.join(args.out, name)
        save_algebra(path, instance)
        print("wrote %s" % path, file=sys.stderr)
    return EXIT_PASS


def render_document_groupname(group):
    if not group.invariant_factors:
        return "trivial"
    return "x".join("Z%d" % n for n in group.invariant_factors)


def cmd_report(args):
    with open(args.file, "r", encoding="utf-8") as fh:
        report = json.load(fh)
    print("schema:   %s" % report.get("schema"))
    print("label:    %s" % report.get("label"))
    print("instance: dim %s over %s (order %s, %s)"
          % (report.get("dim"), report.get("group"), report.get("order"),
             report.get("side")))
    print("axioms:   %s" % ("pass" if report.get("axioms_passed") else "FAIL"))
    if "trivial" in report:
        print("trivial:  %s" % report["trivial"]["is_trivial"])
    if "idempotents" in report:
        print("idempotents:")
        for rec in report["idempotents"]:
            print("  e%d: index %d, orbit %s, stability %s"
                  % (rec["index"], rec["order_of_index_group"],
                     rec["orbit"], rec["stability_set"]))
    if "cores" in report:
        for rec in report["cores"]:
            print("core e%d: partner e%d, size %d, members %s, rank %d"
                  % (rec["idempotent"], rec["partner"], rec["size"],
                     rec["members"], rec["freeness_rank"]))
    failures = report.get("theorem_failures", [])
    print("theorems: %s" % ("pass" if not failures
                            else "%d FAILURES" % len(failures)))
    for f in failures:
        print("  %s witness=%s" % (f["name"], f["witness"]))
    return EXIT_PASS if report.get("passed") else EXIT_FAIL


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ydh",
        description="Exact verifier and analyzer for Yetter-Drinfel'd Hopf "
                    "algebras over group rings of finite abelian groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check every defining axiom")
    p.add_argument("files", nargs="+")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("analyze", help="full analysis and theorem checks")
    p.add_argument("files", nargs="+")
    p.add_argument("--tensor-ideals", action="store_true",
                   help="also run the twisted tensor-square ideal checks")
    p.add_argument("--json", metavar="OUT",
                   help="write the canonical JSON report here")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("core", help="core of one primitive idempotent")
    p.add_argument("file")
    p.add_argument("--idempotent", type=int, required=True)
    p.set_defaults(func=cmd_core)

    p = sub.add_parser("dualize", help="write the dual instance")
    p.add_argument("file")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_dualize)

    p = sub.add_parser("search", help="search for instances over a group")
    p.add_argument("--group", required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--order", type=int, default=None,
                   help="cyclotomic order (default: lcm of exponent and 4)")
    p.add_argument("--budget", default=None,
                   help="max_num,max_den,root_order")
    p.add_argument("--out", default=".",
                   help="directory for fixture files")
    p.add_argument("--confirm-prune", action="store_true",
                   help="run even when the triviality theorem prunes")
    p.add_argument("--max-candidates", type=int, default=200000)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("report", help="pretty-print a stored JSON report")
    p.add_argument("file")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return EXIT_USAGE if err.code not in (0, None) else EXIT_PASS
    try:
        return args.func(args)
    except NonSplitField as err:
        print("non-split field: %s" % err, file=sys.stderr)
        return EXIT_NONSPLIT
    except ParseError as err:
        print("parse error: %s" % err, file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as err:
        print(str(err), file=sys.stderr)
        return EXIT_USAGE
    except (NotCommutative, NotSemisimple) as err:
        print("unsupported input: %s" % err, file=sys.stderr)
        return EXIT_FAIL
    except YdhError as err:
        print("error: %s" % err, file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
