"""Command-line entry point: ``gkverify {order,divisors,graph,refute,replay,tables}``."""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from collections.abc import Sequence
from pathlib import Path

from .claims import ClaimStatus, load_claims, replay_claims
from .enumeration import (
    diff_against_reference,
    exceptional_divisors,
    load_errata,
    parse_reference,
    render_errata,
    render_table,
    simple_divisors,
    table_diffs,
)
from .factored import FactoredInteger, factor
from .filters import Outcome, refute_frobenius, verify_characterization
from .groups import Family, GroupId, order, parse_group, sporadic_records
from .primegraph import PrimeGraph, build_graph, graph_of, order_components, to_dot

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DIFF = 3
EXIT_REFUTATION = 4
EXIT_CLAIMS = 5


class UsageError(Exception):
    pass


def _dump(obj: object) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _group(text: str) -> GroupId:
    try:
        return parse_group(text)
    except (ValueError, KeyError) as exc:
        raise UsageError(f"unknown group {text!r}: {exc}") from None


def _sporadic_group(text: str) -> GroupId:
    g = _group(text)
    if g.family is not Family.SPORADIC:
        raise UsageError(f"{text!r} is not a sporadic group")
    return g


def _integer(text: str) -> FactoredInteger:
    text = text.strip()
    try:
        if text.isdigit():
            return factor(int(text))
        return FactoredInteger.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _power_of_ten(text: str) -> int:
    """Accept ``1e54``, ``10^54`` or a bare exponent ``54``."""
    m = re.fullmatch(r"\s*(?:1e\+?|10\^|10\*\*)?(\d+)\s*", text)
    if m is None:
        raise UsageError(f"bound must be a power of ten such as 1e54, got {text!r}")
    return int(m.group(1))


# order


def cmd_order(args: argparse.Namespace) -> int:
    g = _group(args.group)
    n = order(g)
    if args.format == "json":
        sys.stdout.write(_dump({"group": g.atlas_name, "order": str(n), "value": str(n.value)}))
    else:
        print(n)
    return EXIT_OK


# divisors


def cmd_divisors(args: argparse.Namespace) -> int:
    if (args.n is None) == (args.group is None):
        raise UsageError("give exactly one of N or --group")
    if args.group is not None:
        target = _group(args.group)
        n, title = order(target), f"Simple groups whose order divides |{target.atlas_name}|"
    else:
        n = _integer(args.n)
        title = f"Simple groups whose order divides {n}"
    if args.exceptions_only:
        hits = exceptional_divisors(n, _power_of_ten(args.bound))
        title += f", outside the ATLAS and below 10^{_power_of_ten(args.bound)}"
    else:
        hits = simple_divisors(n, workers=args.workers)
    if args.diff is None:
        sys.stdout.write(render_table(hits, args.format, title=title))
        return EXIT_OK
    try:
        reference = parse_reference(Path(args.diff).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {args.diff}: {exc.strerror}") from None
    entries = diff_against_reference(hits, reference)
    if args.format == "json":
        sys.stdout.write(_dump([
            {"kind": e.kind.value, "group": e.group, "computed": e.computed, "reference": e.reference}
            for e in entries
        ]))
    else:
        print("KIND\tGROUP\tCOMPUTED\tREFERENCE")
        for e in entries:
            print(e.as_row())
        print(f"# {len(entries)} difference(s)")
    return EXIT_DIFF if entries else EXIT_OK


# graph


def _read_spectrum(path: str) -> list[int]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    body = "\n".join(line for line in text.splitlines() if not line.lstrip().startswith("#"))
    tokens = [t for t in re.split(r"[\s,]+", body) if t]
    try:
        values = [int(t) for t in tokens]
    except ValueError:
        raise UsageError(f"{path}: element orders must be integers") from None
    if not values or any(v < 1 for v in values):
        raise UsageError(f"{path}: need at least one positive element order")
    return values


def _graph_text(graph: PrimeGraph, comps: Sequence[FactoredInteger] | None) -> str:
    line = f"t={graph.component_count}; " + "".join(
        "[" + ",".join(map(str, c)) + "]" for c in graph.components
    )
    if comps is not None:
        line += "\norder components: " + " | ".join(map(str, comps))
    return line + "\n"


def cmd_graph(args: argparse.Namespace) -> int:
    if (args.group is None) == (args.spectrum_file is None):
        raise UsageError("give exactly one of --group or --spectrum-file")
    comps = None
    if args.group is not None:
        g = _sporadic_group(args.group)
        graph, name = graph_of(g), g.atlas_name
        comps = order_components(graph, order(g))
    else:
        graph, name = build_graph(_read_spectrum(args.spectrum_file)), Path(args.spectrum_file).stem
    if args.format == "dot":
        sys.stdout.write(to_dot(graph, name))
    elif args.format == "json":
        record = {
            "name": name,
            "t": graph.component_count,
            "components": [list(c) for c in graph.components],
            "edges": sorted(list(e) for e in graph.edges),
        }
        if comps is not None:
            record["order_components"] = [str(c) for c in comps]
        sys.stdout.write(_dump(record))
    else:
        sys.stdout.write(_graph_text(graph, comps))
    return EXIT_OK


# refute


def _frobenius_section(g: GroupId) -> tuple[dict, bool]:
    report = refute_frobenius(order(g))
    record = {
        "checked": report.checked,
        "eliminated_by": report.counts_by_condition(),
        "survivors": [str(s) for s in report.survivors],
    }
    return record, not report.survivors


def _candidate_section(g: GroupId, workers: int) -> tuple[dict, bool]:
    report = verify_characterization(g, workers=workers)
    rows = []
    for r in report.results:
        row: dict = {"candidate": r.candidate.atlas_name, "outcome": r.outcome.value}
        if r.witnesses:
            row["witnesses"] = [
                {"d": w.d, "h": str(w.h_order), "p": w.p, "k": w.k,
                 "partners": [list(pq) for pq in w.partners], "alternatives": list(w.alternatives)}
                for w in r.witnesses
            ]
        if r.open_cases:
            row["open_d"] = list(r.open_cases)
        rows.append(row)
    record = {
        "candidates": rows,
        "counts": {o.value: len(report.by_outcome(o)) for o in Outcome},
    }
    return record, report.complete


def _refute_text(name: str, sections: dict) -> str:
    out = [f"# {name}"]
    if "frobenius" in sections:
        fr = sections["frobenius"]
        out.append(f"frobenius: {fr['checked']} splits checked, {len(fr['survivors'])} survivor(s)")
        out += [f"  {k}: {v}" for k, v in fr["eliminated_by"].items()]
        out += [f"  SURVIVOR {s}" for s in fr["survivors"]]
    if "candidates" in sections:
        cand = sections["candidates"]
        counts = ", ".join(f"{k}={v}" for k, v in cand["counts"].items())
        out.append(f"candidates: {counts}")
        for row in cand["candidates"]:
            line = f"  {row['candidate']}: {row['outcome']}"
            if "witnesses" in row:
                line += "; " + "; ".join(
                    f"d={w['d']} p={w['p']}" + ("".join(f" {r}~{q}" for r, q in w["partners"]))
                    for w in row["witnesses"]
                )
            if "open_d" in row:
                line += f"; open d={row['open_d']}"
            out.append(line)
    return "\n".join(out) + "\n"


def cmd_refute(args: argparse.Namespace) -> int:
    g = _sporadic_group(args.group)
    sections: dict = {}
    ok = True
    if args.mode in ("frobenius", "all"):
        sections["frobenius"], good = _frobenius_section(g)
        ok &= good
    if args.mode in ("candidates", "all"):
        sections["candidates"], good = _candidate_section(g, args.workers)
        ok &= good
    if args.format == "json":
        sys.stdout.write(_dump({"group": g.atlas_name, "complete": ok, **sections}))
    else:
        sys.stdout.write(_refute_text(g.atlas_name, sections))
        print("complete" if ok else "INCOMPLETE")
    return EXIT_OK if ok else EXIT_REFUTATION


# replay


def cmd_replay(args: argparse.Namespace) -> int:
    try:
        claims = load_claims(args.ledger)
    except OSError as exc:
        raise UsageError(f"cannot read ledger: {exc.strerror}") from None
    except ValueError as exc:
        raise UsageError(f"bad ledger: {exc}") from None
    results = replay_claims(claims)
    counts = {s.value: sum(r.status is s for r in results) for s in ClaimStatus}
    ok = all(r.status.ok for r in results)
    if args.format == "json":
        sys.stdout.write(_dump({
            "counts": counts,
            "ok": ok,
            "claims": [{"id": r.claim.id, "status": r.status.value, "observed": r.observed} for r in results],
        }))
    else:
        for r in results:
            if args.verbose or not r.status.ok or r.claim.errata:
                print(f"{r.status.value.upper():22} {r.claim.id}: {r.observed}")
        print(", ".join(f"{k}={v}" for k, v in counts.items()))
    return EXIT_OK if ok else EXIT_CLAIMS


# tables


def cmd_tables(args: argparse.Namespace) -> int:
    """Recompute every bundled reference table and compare its diff with the errata file."""
    diffs = table_diffs()
    if args.write_errata:
        sys.stdout.write(render_errata(diffs))
        return EXIT_OK
    known = load_errata()
    drift = {}
    for num, entries in diffs.items():
        rows = [e.as_row() for e in entries]
        if sorted(rows) != sorted(known.get(num, [])):
            drift[num] = {"unexplained": sorted(set(rows) - set(known.get(num, []))),
                          "stale": sorted(set(known.get(num, [])) - set(rows))}
    if args.format == "json":
        sys.stdout.write(_dump({
            "tables": {str(n): len(diffs[n]) for n in sorted(diffs)},
            "drift": {str(n): d for n, d in drift.items()},
        }))
    else:
        for num in sorted(diffs):
            status = "DRIFT" if num in drift else ("exact" if not diffs[num] else "errata")
            print(f"table {num:2}: {len(diffs[num])} diff(s), {status}")
            for kind, rows in drift.get(num, {}).items():
                print("".join(f"    {kind}: {row}\n" for row in rows), end="")
    return EXIT_DIFF if drift else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gkverify", description=__doc__)
    parser.add_argument("--data-dir", help="data directory (overrides $GK_DATA_DIR)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("order", help="factored order of a simple group")
    p.add_argument("group", help="e.g. M11, A5, L2(1024), 2E6(2)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("divisors", help="simple groups whose order divides N")
    p.add_argument("n", nargs="?", help="an integer or a factored form such as 2^4*3^2*5*11")
    p.add_argument("--group", help="use the order of this group as N")
    p.add_argument("--format", choices=("md", "tsv", "json"), default="md")
    p.add_argument("--exceptions-only", action="store_true", help="only groups outside the ATLAS list")
    p.add_argument("--bound", default="1e25", help="order bound for --exceptions-only (default 1e25)")
    p.add_argument("--diff", metavar="REF", help="compare with a NAME<TAB>ORDER<TAB>OUT or JSON table")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_divisors)

    p = sub.add_parser("graph", help="prime graph of a sporadic group or a spectrum file")
    p.add_argument("--group")
    p.add_argument("--spectrum-file", help="element orders separated by commas or whitespace")
    p.add_argument("--format", choices=("text", "dot", "json"), default="text")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("refute", help="rule out Frobenius shapes and non-target sections")
    p.add_argument("--group", required=True)
    p.add_argument("--mode", choices=("frobenius", "candidates", "all"), default="all")
    p.add_argument("--format", choices=("md", "json"), default="md")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_refute)

    p = sub.add_parser("replay", help="recompute every claim in a ledger")
    p.add_argument("ledger", nargs="?", help="JSON Lines ledger (default: the bundled one)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("-v", "--verbose", action="store_true", help="print passing claims too")
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("tables", help="check bundled reference tables against the errata file")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--write-errata", action="store_true", help="print a fresh errata file instead")
    p.set_defaults(func=cmd_tables)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    saved = os.environ.get("GK_DATA_DIR")
    if args.data_dir is not None:
        os.environ["GK_DATA_DIR"] = args.data_dir
    try:
        try:
            sporadic_records()
        except OSError as exc:
            raise UsageError(f"data directory unusable: {exc}") from None
        return args.func(args)
    except UsageError as exc:
        print(f"gkverify: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        if saved is None:
            os.environ.pop("GK_DATA_DIR", None)
        else:
            os.environ["GK_DATA_DIR"] = saved

if __name__ == "__main__":
    sys.exit(main())
