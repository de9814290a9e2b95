"""Command-line interface: ``engelgroups <command> [options]``.

Every command writes a JSON report (stdout, or ``--json PATH``).  Exit codes
are 0 for success, 1 when a verification or identity check fails and 2 for
bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from . import __version__
from .catalog import CatalogError, parse_catalog_name, standard_catalog
from .engel import engel_bound, nil_mask
from .group import (DEFAULT_MAX_ORDER, FiniteGroup, GroupError, derived_length,
                    nilpotency_class)
from .io import InputError, read_group
from .quasinil import QuasiNilSolver, default_kmax, verify_prop61, verify_prop81, verify_theorem4
from .radicals import (fitting_oracle, fitting_subgroup, solvable_radical,
                       solvable_radical_oracle, upper_radical_series)
from .suite import run_suite, verify_group
from .varieties import (satisfies_engel_identity, satisfies_tower_identity,
                        satisfies_word_identity)
from .words import (ENGEL, SequenceBoundError, WordSyntaxError, parse_word,
                    read_sequence_file)

SCHEMA = "1"
EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class UsageError(ValueError):
    pass


def _load(args) -> tuple[FiniteGroup, dict]:
    if bool(args.input) == bool(args.catalog):
        raise UsageError("give exactly one of --input or --catalog")
    if args.catalog:
        g = parse_catalog_name(args.catalog, max_order=args.max_order)
        source = f"catalog:{args.catalog}"
    else:
        g = read_group(args.input, args.format, max_order=args.max_order)
        source = f"file:{args.input}"
    return g, {"source": source, "name": g.name, "backend": g.backend, "order": g.order}


def _verdicts(g: FiniteGroup) -> dict:
    cls = nilpotency_class(g)
    dl = derived_length(g)
    return {"abelian": g.is_abelian(), "nilpotent": cls is not None, "nilpotency_class": cls,
            "solvable": dl is not None, "derived_length": dl}


def cmd_info(g: FiniteGroup, args) -> tuple[dict, int]:
    rep = {"center_order": g.center().order, **_verdicts(g),
           "generators": [g.label(i) for i in g.generators],
           "conjugacy_classes": len(g.conjugacy_classes)}
    return rep, EXIT_OK


def _series_lists(series) -> list[list[int]]:
    return [t.elements.tolist() for t in series.terms]


def cmd_classify(g: FiniteGroup, args) -> tuple[dict, int]:
    k_max = args.kmax if args.kmax is not None else default_kmax(g.order)
    solver = QuasiNilSolver(g)
    orders = solver.nil_orders(k_max)
    nil = nil_mask(g)
    series = upper_radical_series(g)

    def record(i: int) -> dict:
        el = g[i]
        rec = {"index": i, "element": g.label(i), "is_nil": bool(nil[i]),
               "engel_bound": engel_bound(el) if nil[i] else None}
        if orders[i] >= 0:
            rec["nil_order"] = int(orders[i])
        else:
            res = solver.nil_order(i, k_max)
            rec["nil_order"] = "none"
            rec["counterexample"] = (None if res.counterexample is None
                                     else [g.label(a.index) for a in res.counterexample])
            if res.search_exhausted:
                rec["search_exhausted"] = True
            rec["strategy"] = [
                {"remaining": b["remaining"],
                 "choice": {g.label(v): g.label(a) for v, a in b["choice"].items()}}
                for b in res.strategy]
        return rec

    with ThreadPoolExecutor(max_workers=max(1, args.threads)) as pool:
        elements = list(pool.map(record, range(g.order)))
    checks = {
        "theorem4": verify_theorem4(g, k_max, solver=solver, series=series),
        "prop81": verify_prop81(g, solver=solver, series=series),
        "prop61": verify_prop61(g, solver=solver),
    }
    summary = {k: {"status": "pass" if r.passed else "fail", **r.details}
               for k, r in checks.items()}
    baer_ok = bool((nil == fitting_oracle(g).mask).all())
    summary["baer_equivalence"] = {"status": "pass" if baer_ok else "fail"}
    rep = {"k_max": k_max, "fitting": fitting_subgroup(g).elements.tolist(),
           "radical_series": _series_lists(series), "elements": elements,
           "verification": summary}
    ok = all(v["status"] == "pass" for v in summary.values())
    return rep, EXIT_OK if ok else EXIT_FAIL


def cmd_radical(g: FiniteGroup, args) -> tuple[dict, int]:
    fit = fitting_subgroup(g)
    series = upper_radical_series(g)
    rad = solvable_radical(g, series)
    fit_ok = fit == fitting_oracle(g)
    rad_ok = rad == solvable_radical_oracle(g)
    rep = {"fitting_order": fit.order, "fitting": fit.elements.tolist(),
           "series_orders": [t.order for t in series.terms],
           "radical_series": _series_lists(series),
           "solvable_radical_order": rad.order,
           "semisimple": fit.is_trivial,
           "oracle_agreement": {"fitting": fit_ok, "solvable_radical": rad_ok}}
    return rep, EXIT_OK if fit_ok and rad_ok else EXIT_FAIL


def _parse_index(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise UsageError(f"bad tower index {text!r}; expected e.g. 1,2") from None


def cmd_check_identity(g: FiniteGroup, args) -> tuple[dict, int]:
    kw = {"seed": args.seed}
    if args.engel is not None:
        v = satisfies_engel_identity(g, args.engel, **kw)
    elif args.tower is not None:
        v = satisfies_tower_identity(g, _parse_index(args.tower), **kw)
    elif args.word is not None:
        v = satisfies_word_identity(g, parse_word(args.word), **kw)
    elif args.sequence is not None:
        if args.index is None:
            raise UsageError("--sequence needs --index")
        seq = read_sequence_file(args.sequence)
        v = satisfies_tower_identity(g, _parse_index(args.index), seq, **kw)
    else:
        raise UsageError("give one of --engel, --tower, --word or --sequence")
    return v.to_dict(), EXIT_OK if v.holds else EXIT_FAIL


def cmd_verify_group(g: FiniteGroup, args) -> tuple[dict, int]:
    res = verify_group(g.name, g, k_max=args.kmax)
    return res, EXIT_OK if res["passed"] else EXIT_FAIL


COMMANDS = {
    "info": cmd_info,
    "classify": cmd_classify,
    "radical": cmd_radical,
    "check-identity": cmd_check_identity,
    "verify": cmd_verify_group,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", metavar="PATH", help="group file")
    common.add_argument("--format", choices=["perm", "table", "matrix"],
                        help="input format (detected when omitted)")
    common.add_argument("--catalog", metavar="NAME[,params]",
                        help="built-in group such as s4, d8, ut3_2, ut,4,2 or s3xc2")
    common.add_argument("--kmax", type=int, help="largest tower length tried for nil-orders")
    common.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER)
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--json", metavar="PATH", help="write the report here instead of stdout")
    common.add_argument("--no-timing", action="store_true", help="omit timing fields")

    p = argparse.ArgumentParser(prog="engelgroups",
                                description="Engel conditions and radicals of finite groups.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("info", parents=[common], help="order, centre, nilpotency and solvability")
    sub.add_parser("classify", parents=[common], help="per-element nil and quasi-nil data")
    sub.add_parser("radical", parents=[common], help="Fitting subgroup and upper radical series")
    ci = sub.add_parser("check-identity", parents=[common], help="test a group identity")
    ci.add_argument("--engel", type=int, metavar="N")
    ci.add_argument("--tower", metavar="N1,N2,...")
    ci.add_argument("--word", metavar="EXPR")
    ci.add_argument("--sequence", metavar="FILE")
    ci.add_argument("--index", metavar="N1,N2,...")
    ve = sub.add_parser("verify", parents=[common], help="run the verification battery")
    ve.add_argument("--suite", choices=["catalog"])
    return p


def _emit(report: dict, args) -> None:
    text = json.dumps(report, indent=2) + "\n"
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _header(args) -> dict:
    return {"schema": SCHEMA, "tool": "engelgroups", "version": __version__,
            "command": args.command, "seed": args.seed}


def run(args) -> int:
    t0 = time.perf_counter()
    report = _header(args)
    try:
        if args.command == "verify" and args.suite == "catalog":
            if args.input or args.catalog:
                raise UsageError("--suite catalog takes no group input")
            groups = standard_catalog(max_order=args.max_order)
            results = run_suite(groups, threads=args.threads, k_max=args.kmax)
            code = EXIT_OK if all(r["passed"] for r in results) else EXIT_FAIL
            report.update({"suite": "catalog", "groups": results,
                           "passed": code == EXIT_OK})
        else:
            g, desc = _load(args)
            report["group"] = desc
            body, code = COMMANDS[args.command](g, args)
            report["result"] = body
    except (InputError, WordSyntaxError, SequenceBoundError, CatalogError, GroupError,
            UsageError, OSError, ValueError) as exc:
        print(f"engelgroups: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if not args.no_timing:
        report["timing"] = {"seconds": round(time.perf_counter() - t0, 6),
                            "threads": args.threads}
    _emit(report, args)
    return code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return run(args)


if __name__ == "__main__":
    sys.exit(main())
