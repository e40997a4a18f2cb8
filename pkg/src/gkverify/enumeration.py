"""Find every simple group whose order divides a given integer."""

from __future__ import annotations

import json
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

from .factored import FactoredInteger, compare_to_power_of_ten
from .groups import (
    CLASSICAL,
    TITS,
    Family,
    GroupId,
    NotSimpleError,
    alternating,
    canonical,
    order,
    out_order,
    parse_group,
    resolve_data_dir,
    sporadic,
    sporadic_names,
)

__all__ = [
    "DivisorHit",
    "simple_divisors",
    "atlas_coverage",
    "exceptional_divisors",
    "render_table",
    "ReferenceRow",
    "parse_reference",
    "DiffKind",
    "DiffEntry",
    "diff_against_reference",
    "p_exponent",
    "ReferenceTable",
    "load_reference_tables",
    "table_diffs",
    "render_errata",
    "load_errata",
]

ATLAS_ORDER_DIGITS = 25

# Series the ATLAS lists only up to a field size.
_TRUNCATED = {
    (Family.A, 1): 125,
    (Family.A, 2): 31,
    (Family.TWISTED_A, 2): 32,
    (Family.A, 3): 11,
    (Family.TWISTED_A, 3): 11,
    (Family.B, 2): 41,
    (Family.G2, None): 25,
}


@dataclass(frozen=True)
class DivisorHit:
    group: GroupId
    order: FactoredInteger
    out: FactoredInteger
    atlas: bool

    @property
    def name(self) -> str:
        return self.group.atlas_name


def p_exponent(family: Family, rank: int | None) -> int:
    """Exponent e with |T|_p = q^e for a group of Lie type over GF(q)."""
    if family in (Family.A, Family.TWISTED_A):
        return rank * (rank + 1) // 2  # type: ignore[operator]
    if family in (Family.B, Family.C):
        return rank * rank  # type: ignore[operator]
    if family in (Family.D, Family.TWISTED_D):
        return rank * (rank - 1)  # type: ignore[operator]
    return {
        Family.G2: 6, Family.F4: 24, Family.E6: 36, Family.TWISTED_E6: 36, Family.E7: 63,
        Family.E8: 120, Family.TRIALITY_D4: 12, Family.SUZUKI: 2, Family.REE_G2: 3, Family.REE_F4: 12,
    }[family]


_MIN_RANK = {Family.A: 1, Family.B: 2, Family.C: 3, Family.D: 4, Family.TWISTED_A: 2, Family.TWISTED_D: 4}
_EXCEPTIONAL_FAMILIES = (
    Family.G2, Family.F4, Family.E6, Family.E7, Family.E8, Family.TWISTED_E6,
    Family.TRIALITY_D4, Family.SUZUKI, Family.REE_G2, Family.REE_F4,
)
LIE_FAMILIES = CLASSICAL + _EXCEPTIONAL_FAMILIES


def _shapes(family: Family, max_exponent: int, slack: int) -> Iterator[int | None]:
    if family not in CLASSICAL:
        if p_exponent(family, None) <= max_exponent:
            yield None
        return
    n, extra = _MIN_RANK[family], 0
    while True:
        if p_exponent(family, n) > max_exponent:
            if extra >= slack:
                return
            extra += 1
        yield n
        n += 1


def lie_candidates(n: FactoredInteger, family: Family, slack: int = 0) -> Iterator[GroupId]:
    """Groups of ``family`` allowed by ``f * e <= v_p(n)``.

    ``slack`` widens both the field-degree and rank ranges, for checking that
    the pruning never drops a genuine hit.
    """
    max_exp = max(n.values(), default=0)
    for rank in _shapes(family, max_exp, slack):
        e = p_exponent(family, rank)
        for p in n.primes:
            f_max = n.v(p) // e + slack
            for f in range(1, f_max + 1):
                try:
                    yield GroupId(family, rank=rank, q=p**f)
                except NotSimpleError:
                    continue
                except ValueError:
                    # Twisted families with restricted fields.
                    continue


def _alternating_hits(n: FactoredInteger) -> Iterator[GroupId]:
    k = 5
    while order(alternating(k)).divides(n):
        yield alternating(k)
        k += 1


def _family_hits(n: FactoredInteger, family: Family) -> list[GroupId]:
    if family is Family.ALTERNATING:
        return list(_alternating_hits(n))
    if family is Family.SPORADIC:
        return [g for g in map(sporadic, sporadic_names()) if order(g).divides(n)]
    if family is Family.TITS:
        return [TITS] if order(TITS).divides(n) else []
    return [g for g in lie_candidates(n, family) if order(g).divides(n)]


def _run_family(args: tuple[FactoredInteger, Family]) -> list[GroupId]:
    return _family_hits(*args)


def simple_divisors(n: FactoredInteger, *, workers: int = 1) -> list[DivisorHit]:
    """All simple groups T, up to isomorphism, with |T| dividing ``n``.

    Sorted by order, ties broken by family and parameters. The result does not
    depend on ``workers``.
    """
    families = [Family.ALTERNATING, Family.SPORADIC, Family.TITS, *LIE_FAMILIES]
    jobs = [(n, fam) for fam in families]
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            batches = list(pool.map(_run_family, jobs))
    else:
        batches = [_run_family(job) for job in jobs]
    seen: dict[GroupId, None] = {}
    for batch in batches:
        for g in batch:
            seen.setdefault(canonical(g), None)
    groups = sorted(seen, key=GroupId.sort_key)
    return [DivisorHit(g, order(g), out_order(g), atlas_coverage(g)) for g in groups]


def atlas_coverage(g: GroupId) -> bool:
    """Whether ``g`` appears in the ATLAS list of simple groups."""
    if g.family in (Family.SPORADIC, Family.TITS):
        return True
    if compare_to_power_of_ten(order(g), ATLAS_ORDER_DIGITS) >= 0:
        return False
    cutoff = _TRUNCATED.get((g.family, g.rank if g.family in CLASSICAL else None))
    return cutoff is None or g.q <= cutoff  # type: ignore[operator]


def exceptional_divisors(n: FactoredInteger, k: int) -> list[DivisorHit]:
    """Divisors of order below ``10^k`` that the ATLAS list does not cover."""
    return [h for h in simple_divisors(n) if not h.atlas and compare_to_power_of_ten(h.order, k) < 0]


# Rendering


def _hit_record(h: DivisorHit) -> dict[str, object]:
    return {"group": h.name, "order": str(h.order), "out": str(h.out), "atlas": h.atlas}


def render_table(hits: Sequence[DivisorHit], fmt: str = "md", *, title: str | None = None) -> str:
    if fmt == "tsv":
        return "".join(f"{h.name}\t{h.order}\t{h.out}\n" for h in hits)
    if fmt == "json":
        return json.dumps([_hit_record(h) for h in hits], indent=2, sort_keys=True) + "\n"
    if fmt == "md":
        lines = [f"**{title}**", ""] if title else []
        lines += ["| Group | Order | Out |", "|---|---|---|"]
        lines += [f"| {h.name} | {h.order.pretty()} | {h.out.pretty()} |" for h in hits]
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown table format {fmt!r}")


# Reference tables and diffs


@dataclass(frozen=True)
class ReferenceRow:
    label: str
    group: GroupId
    order: FactoredInteger
    out: FactoredInteger


def parse_reference(text: str) -> list[ReferenceRow]:
    """Read ``NAME<TAB>ORDER<TAB>OUT`` rows, or the JSON list that :func:`render_table` writes."""
    stripped = text.lstrip()
    if stripped.startswith("["):
        return [
            ReferenceRow(r["group"], parse_group(r["group"]), FactoredInteger.parse(r["order"]),
                         FactoredInteger.parse(r["out"]))
            for r in json.loads(stripped)
        ]
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != 3:
            raise ValueError(f"line {lineno}: expected NAME<TAB>ORDER<TAB>OUT")
        label = cols[0].strip()
        rows.append(ReferenceRow(label, parse_group(label), FactoredInteger.parse(cols[1]),
                                 FactoredInteger.parse(cols[2])))
    return rows


class DiffKind(str, Enum):
    MISSING_FROM_REFERENCE = "missing-from-reference"
    EXTRA_IN_REFERENCE = "extra-in-reference"
    ORDER_MISMATCH = "order-mismatch"
    OUT_MISMATCH = "out-mismatch"
    DUPLICATE_IN_REFERENCE = "duplicate-in-reference"


@dataclass(frozen=True)
class DiffEntry:
    kind: DiffKind
    group: str
    computed: str
    reference: str

    def as_row(self) -> str:
        return f"{self.kind.value}\t{self.group}\t{self.computed}\t{self.reference}"


def diff_against_reference(hits: Iterable[DivisorHit], reference: Sequence[ReferenceRow]) -> list[DiffEntry]:
    """Compare computed hits with a reference table by canonical group.

    A reference row whose order differs from the true order of the group it
    names is reported as an order mismatch, so misprinted orders surface even
    when the group itself belongs in the table.
    """
    computed = {h.group: h for h in hits}
    entries: list[DiffEntry] = []
    seen: set[GroupId] = set()
    for row in reference:
        g = row.group
        if g in seen:
            entries.append(DiffEntry(DiffKind.DUPLICATE_IN_REFERENCE, g.atlas_name, "", row.label))
            continue
        seen.add(g)
        true_order, true_out = order(g), out_order(g)
        if g not in computed:
            entries.append(DiffEntry(DiffKind.EXTRA_IN_REFERENCE, g.atlas_name, str(true_order), str(row.order)))
            continue
        if row.order != true_order:
            entries.append(DiffEntry(DiffKind.ORDER_MISMATCH, g.atlas_name, str(true_order), str(row.order)))
        if row.out != true_out:
            entries.append(DiffEntry(DiffKind.OUT_MISMATCH, g.atlas_name, str(true_out), str(row.out)))
    for g, h in computed.items():
        if g not in seen:
            entries.append(DiffEntry(DiffKind.MISSING_FROM_REFERENCE, g.atlas_name, str(h.order), ""))
    return sorted(entries, key=lambda e: (list(DiffKind).index(e.kind), e.group))



# Bundled reference tables and their known misprints


@dataclass(frozen=True)
class ReferenceTable:
    number: int
    target: GroupId
    rows: tuple[ReferenceRow, ...]


def load_reference_tables(data_dir: str | Path | None = None) -> dict[int, ReferenceTable]:
    """Read ``tables/tableNN.tsv``. Each file names its target in a ``# target:`` header."""
    tables = {}
    for path in sorted((resolve_data_dir(data_dir) / "tables").glob("table*.tsv")):
        text = path.read_text()
        header = next((ln for ln in text.splitlines() if ln.startswith("# target:")), None)
        if header is None:
            raise ValueError(f"{path} has no '# target:' header")
        number = int(path.stem.removeprefix("table"))
        tables[number] = ReferenceTable(number, parse_group(header.split(":", 1)[1]), tuple(parse_reference(text)))
    return tables


def table_diffs(data_dir: str | Path | None = None) -> dict[int, list[DiffEntry]]:
    return {
        num: diff_against_reference(simple_divisors(order(t.target)), t.rows)
        for num, t in load_reference_tables(data_dir).items()
    }


def render_errata(diffs: dict[int, list[DiffEntry]]) -> str:
    lines = ["# TABLE<TAB>KIND<TAB>GROUP<TAB>COMPUTED<TAB>PRINTED"]
    lines += [f"{num}\t{e.as_row()}" for num in sorted(diffs) for e in diffs[num]]
    return "\n".join(lines) + "\n"


def load_errata(data_dir: str | Path | None = None) -> dict[int, list[str]]:
    """Known diff rows per table, as written by :func:`render_errata`."""
    out: dict[int, list[str]] = {}
    for line in (resolve_data_dir(data_dir) / "errata.tsv").read_text().splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        num, row = line.split("\t", 1)
        out.setdefault(int(num), []).append(row)
    return out
