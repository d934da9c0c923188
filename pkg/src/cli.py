"""
Command-line workbench: load and validate quandles, groups and towers,
run the structural checks and print human tables or JSON lines.

Exit codes: 0 success, 1 a check failed (witness printed), 2 usage error.
"""
import argparse
import logging
import sys
from contextlib import nullcontext
from typing import Any, Dict, List, Optional, Sequence

from abelian import adtak
from cache_manager import CacheManager
from config import DEFAULT_SEED, ENABLE_CACHING, GROUP_ORDER_BOUND, LOG_LEVEL, OUTPUT_FORMAT, configure_logging
from data_loader import DataLoader
from errors import FormatError, QuandleError, jsonable
from inner import (CosetQuandleSpec, aut, coset_quandle, ehrman_decompose, ehrman_roundtrip,
                   enumerate_connected, inn, inn_orbits, is_connected, symmetries)
from permgroup import PermGroup, Permutation, generate, is_normal, is_transitive
from proposition_suite import PropositionSuite
from quandle_core import all_subquandles, find_complement
from reports import render_results, render_structured, render_table, save_results
from tower import (TruncatedElement, all_elements, counterexample_probe, density_check, inn_tower,
                   levelwise_action_check, levelwise_connected, validate_tower)

logger = logging.getLogger(__name__)


class CheckFailed(Exception):
    """A command ran to completion but its verdict is negative"""

    def __init__(self, records: List[Dict[str, Any]]):
        super().__init__("check failed")
        self.records = records


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quandle", description="Finite and profinite quandle workbench")
    parser.add_argument("--format", choices=["human", "structured"], default=OUTPUT_FORMAT)
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for sampled checks")
    parser.add_argument("--bound", type=int, default=GROUP_ORDER_BOUND, help="group order bound")
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("validate", help="check the quandle axioms")
    p.add_argument("file")

    p = sub.add_parser("info", help="operation table and basic invariants")
    p.add_argument("file")
    p.add_argument("--zero-indexed", action="store_true")

    p = sub.add_parser("inner", help="inner automorphism group")
    p.add_argument("file")
    p.add_argument("--aut", action="store_true", help="also compute Aut(Q) by brute force")

    p = sub.add_parser("connected", help="Inn orbits and connectedness")
    p.add_argument("file")

    p = sub.add_parser("subquandles", help="subquandle lattice")
    p.add_argument("file")
    p.add_argument("--complements", action="store_true")

    p = sub.add_parser("ehrman", help="coset presentation of a connected quandle")
    p.add_argument("file")
    p.add_argument("--base", type=int, default=0)

    p = sub.add_parser("coset-quandle", help="build Q(G, H, h)")
    p.add_argument("--group", required=True, help="permutation group file")
    p.add_argument("--subgroup", nargs="*", default=[], help="generators of H in cycle notation")
    p.add_argument("--h", required=True, help="central element of H in cycle notation")
    p.add_argument("--output", help="save the quandle (.qnd or .json)")

    p = sub.add_parser("enumerate", help="connected quandles of a given order")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--connected", action="store_true", help="accepted for clarity; only connected "
                                                             "quandles are enumerated")
    p.add_argument("--labelled", action="store_true", help="do not identify isomorphic tables")
    p.add_argument("--no-cache", action="store_true")

    p = sub.add_parser("tower", help="checks on a tower descriptor")
    p.add_argument("descriptor")
    p.add_argument("action", choices=["check", "elements", "density", "inn", "probe"])
    p.add_argument("--seeds", nargs="*", default=[],
                   help="coherent elements as comma-separated coordinates, or top-level indices")

    p = sub.add_parser("probe", help="named probes")
    p.add_argument("name", choices=["counterexample"])
    p.add_argument("--depth", type=int, default=3)

    p = sub.add_parser("adtak", help="abelian group AdTak of a kei")
    p.add_argument("file")

    p = sub.add_parser("suite", help="run the proposition checks")
    p.add_argument("--only", action="append", choices=PropositionSuite.BLOCKS)
    p.add_argument("--save", nargs="?", const="", default=None, help="write results as CSV")
    p.add_argument("--no-cache", action="store_true")
    return parser


# ============================================================================
# COMMANDS
# ============================================================================
def _loader() -> DataLoader:
    return DataLoader()


def _cache(args):
    if ENABLE_CACHING and not getattr(args, "no_cache", False):
        return CacheManager()
    return nullcontext()


def cmd_validate(args) -> Dict[str, Any]:
    Q = _loader().load_quandle(args.file)
    return {"records": [{"file": args.file, "n": Q.n, "axioms": "OK", "kei": Q.is_kei()}],
            "human": f"quandle: {Q.n} elements, axioms OK"}


def cmd_info(args) -> Dict[str, Any]:
    Q = _loader().load_quandle(args.file)
    one_indexed = not args.zero_indexed
    orbits = inn_orbits(Q)
    record = {"n": Q.n, "kei": Q.is_kei(), "connected": len(orbits) <= 1,
              "orbits": orbits, "table": Q.display_rows(one_indexed)}
    human = "\n".join([
        f"quandle: {Q.n} elements ({'1' if one_indexed else '0'}-indexed)",
        Q.display_table(one_indexed),
        f"kei: {record['kei']}",
        f"connected: {record['connected']} ({len(orbits)} orbit{'s' if len(orbits) != 1 else ''})",
    ])
    return {"records": [record], "human": human}


def cmd_inner(args) -> Dict[str, Any]:
    Q = _loader().load_quandle(args.file)
    G = inn(Q, args.bound)
    record = {"n": Q.n, "inn_order": G.order, "transitive": is_transitive(G),
              "symmetries": [str(s) for s in symmetries(Q)]}
    lines = [f"|Inn| = {G.order}", f"transitive: {record['transitive']}"]
    if args.aut:
        A = aut(Q)
        record.update(aut_order=A.order, inn_normal=is_normal(G, A))
        lines += [f"|Aut| = {A.order}", f"Inn normal in Aut: {record['inn_normal']}"]
    return {"records": [record], "human": "\n".join(lines)}


def cmd_connected(args) -> Dict[str, Any]:
    Q = _loader().load_quandle(args.file)
    orbits = inn_orbits(Q)
    record = {"n": Q.n, "connected": is_connected(Q), "orbits": orbits}
    return {"records": [record], "human": f"connected: {record['connected']}\norbits: {orbits}"}


def cmd_subquandles(args) -> Dict[str, Any]:
    Q = _loader().load_quandle(args.file)
    rows = []
    for A in all_subquandles(Q):
        row = {"size": len(A), "elements": list(A.elems)}
        if args.complements:
            B = find_complement(Q, A)
            row["complement"] = None if B is None else list(B.elems)
        rows.append(row)
    return {"records": rows}


def cmd_ehrman(args) -> Dict[str, Any]:
    Q = _loader().load_quandle(args.file)
    data = ehrman_decompose(Q, args.base, args.bound)
    record = {
        "base": data.base,
        "inn_order": data.G.order,
        "stabilizer_order": data.H.order,
        "h": str(data.h),
        "points": list(data.points),
        "augmentations": [str(a) for a in data.aug],
        "roundtrip": ehrman_roundtrip(Q, args.base),
    }
    human = "\n".join([
        f"base point: {data.base}",
        f"|G| = {data.G.order}, |H| = {data.H.order}, h = {data.h}",
        render_table([{"coset": i, "point": p, "augmentation": str(a)}
                      for i, (p, a) in enumerate(zip(data.points, data.aug))]),
        f"coset quandle isomorphic to input: {record['roundtrip']}",
    ])
    return {"records": [record], "human": human}


def cmd_coset_quandle(args) -> Dict[str, Any]:
    G = _loader().load_group(args.group)
    if not isinstance(G, PermGroup):
        raise FormatError(f"{args.group}: coset quandles need a permutation group")
    H = generate([Permutation.parse(s, G.degree) for s in args.subgroup], degree=G.degree, bound=args.bound)
    Q = coset_quandle(CosetQuandleSpec(G, H, Permutation.parse(args.h, G.degree)))
    if args.output:
        _loader().save_quandle(Q, args.output)
    record = {"group_order": G.order, "subgroup_order": H.order, "n": Q.n, "table": Q.display_rows(False)}
    return {"records": [record], "human": f"coset quandle: {Q.n} elements\n{Q.display_table(False)}"}


def cmd_enumerate(args) -> Dict[str, Any]:
    with _cache(args) as cache:
        found = enumerate_connected(args.order, up_to_iso=not args.labelled, cache=cache)
    rows = [{"index": i, "table": [list(r) for r in Q.table()]} for i, Q in enumerate(found)]
    human = f"{len(found)} connected quandle(s) of order {args.order}"
    if found:
        human += "\n" + "\n\n".join(Q.display_table(False) for Q in found)
    return {"records": rows, "human": human}


def _parse_seed(T, text: str) -> TruncatedElement:
    try:
        coords = tuple(int(v) for v in text.split(","))
    except ValueError:
        raise FormatError(f"bad seed {text!r}; expected integers separated by commas", witness=text)
    if len(coords) == 1 and T.depth > 1:
        return TruncatedElement.from_top(T, coords[0])
    return TruncatedElement(T, coords)


def cmd_tower(args) -> Dict[str, Any]:
    T = _loader().load_tower(args.descriptor)
    if args.action == "check":
        validate_tower(T)
        return {"records": [{"depth": T.depth, "level_sizes": list(T.level_sizes()), "valid": True}],
                "human": f"tower OK: depth {T.depth}, level sizes {list(T.level_sizes())}"}
    if args.action == "elements":
        return {"records": [{"coords": list(e.coords)} for e in all_elements(T)]}
    if args.action == "density":
        report = density_check(T, [_parse_seed(T, s) for s in args.seeds])
        rows = report.to_dict()["levels"]
        if not report:
            raise CheckFailed([dict(r, dense=False) for r in rows])
        return {"records": [dict(r, dense=True) for r in rows]}
    if args.action == "inn":
        GT = inn_tower(T, args.bound)
        levelwise_action_check(T, GT)
        return {"records": [{"level": k, "inn_order": G.order} for k, G in enumerate(GT.levels)]}
    rows = [{"level": k, "size": Q.n, "connected": is_connected(Q), "orbits": len(inn_orbits(Q))}
            for k, Q in enumerate(T.levels)]
    return {"records": rows, "human": render_table(rows) + f"\nlevelwise connected: {levelwise_connected(T)}"}


def cmd_probe(args) -> Dict[str, Any]:
    report = counterexample_probe(args.depth, args.bound)
    rows = [lv.to_dict() for lv in report.levels]
    summary = {"ell": report.ell, "min_transpositions": report.min_transpositions,
               "ell_coherent": report.ell_coherent, "unbounded": report.unbounded, "ok": report.ok}
    if not report.ok:
        raise CheckFailed(rows + [summary])
    human = "\n".join([
        render_table(rows),
        f"top-level |Inn| = {report.levels[-1].inn_order}",
        f"ell: {' '.join(report.ell)}",
        f"min transpositions: {','.join(str(v) for v in report.min_transpositions)}",
    ])
    return {"records": rows + [summary], "human": human}


def cmd_adtak(args) -> Dict[str, Any]:
    K = _loader().load_quandle(args.file)
    group = adtak(K)
    return {"records": [{"n": K.n, "adtak": str(group), "free_rank": group.free_rank,
                         "torsion": list(group.torsion)}],
            "human": f"AdTak = {group}"}


def cmd_suite(args) -> Dict[str, Any]:
    with _cache(args) as cache:
        results = PropositionSuite(args.seed, cache=cache).run(args.only)
    if args.save is not None:
        save_results(results, args.save or None)
    return {"text": render_results(results, args.format), "ok": all(r.passed for r in results)}


COMMANDS = {
    "validate": cmd_validate,
    "info": cmd_info,
    "inner": cmd_inner,
    "connected": cmd_connected,
    "subquandles": cmd_subquandles,
    "ehrman": cmd_ehrman,
    "coset-quandle": cmd_coset_quandle,
    "enumerate": cmd_enumerate,
    "tower": cmd_tower,
    "probe": cmd_probe,
    "adtak": cmd_adtak,
    "suite": cmd_suite,
}


# ============================================================================
# ENTRY POINT
# ============================================================================
def _render(outcome: Dict[str, Any], fmt: str) -> str:
    if "text" in outcome:
        return outcome["text"]
    if fmt == "structured":
        return render_structured(outcome["records"])
    return outcome.get("human") or render_table(outcome["records"])


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2
    configure_logging(args.log_level or LOG_LEVEL)

    try:
        outcome = COMMANDS[args.verb](args)
    except CheckFailed as failure:
        print(render_structured(failure.records) if args.format == "structured"
              else render_table(failure.records), file=out)
        print("FAILED", file=err)
        return 1
    except QuandleError as e:
        if args.format == "structured":
            print(render_structured([e.to_dict()]), file=out)
        else:
            print(f"error: {e}", file=err)
            if e.witness is not None:
                print(f"witness: {jsonable(e.witness)}", file=err)
        return 1

    print(_render(outcome, args.format), file=out)
    return 0 if outcome.get("ok", True) else 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
