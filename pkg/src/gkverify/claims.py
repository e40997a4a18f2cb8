"""A ledger of arithmetic claims and a replayer that recomputes each one.

The ledger is JSON Lines; ``#`` lines are comments. Every record has

``id``        unique key
``target``    the sporadic group whose argument relies on the claim
``kind``      one of :data:`KINDS`
``operands``  kind-specific, see below
``expected``  the value as stated
``errata``    true when the stated value is known to be misprinted

Operand terms are an int, a factored string such as ``"2^4*3"``, or one of
``{"order": NAME}``, ``{"out": NAME}``, ``{"gl": [m, q]}``,
``{"power_minus_one": [b, k]}`` for ``b^k - 1``.

=========================== ================================================ ===========================
kind                        operands                                         expected
=========================== ================================================ ===========================
not_divides_gl              ``r``, ``m``, ``q``                              ``true`` if r does not divide |GL(m,q)|
divides                     ``a``, ``b`` (terms)                             bool
power_minus_one_valuation   ``p``, ``base``, ``exponent`` (int or list)      int, or ``{"lt"|"le"|"eq"|"ge"|"gt": k}``
factorization_equals        ``value`` (term)                                 factored string
order_bound                 ``group``, ``power_of_ten``                      ``"<"``, ``"="`` or ``">"``
table_membership            ``group``, ``target``                            ``{"member": bool, "atlas": bool}``
=========================== ================================================ ===========================
"""

from __future__ import annotations

import json
import operator
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Any

from .enumeration import simple_divisors
from .factored import FactoredInteger, compare_to_power_of_ten, factor, valuation
from .filters import gl_order
from .groups import order, out_order, parse_group, resolve_data_dir

__all__ = ["KINDS", "Claim", "ClaimStatus", "ClaimResult", "load_claims", "parse_claims", "replay_claims",
           "evaluate_claim"]

KINDS = (
    "not_divides_gl",
    "divides",
    "power_minus_one_valuation",
    "factorization_equals",
    "order_bound",
    "table_membership",
)

_COMPARE = {"lt": operator.lt, "le": operator.le, "eq": operator.eq, "ge": operator.ge, "gt": operator.gt}
_SIGN = {"<": -1, "=": 0, ">": 1}


@dataclass(frozen=True)
class Claim:
    id: str
    target: str
    kind: str
    operands: dict[str, Any]
    expected: Any
    errata: bool = False


class ClaimStatus(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    ERRATA_CONFIRMED = "errata-confirmed"
    ERRATA_NOT_REPRODUCED = "errata-not-reproduced"

    @property
    def ok(self) -> bool:
        return self in (ClaimStatus.PASS, ClaimStatus.ERRATA_CONFIRMED)


@dataclass(frozen=True)
class ClaimResult:
    claim: Claim
    holds: bool
    observed: str
    status: ClaimStatus


def parse_claims(lines: Iterable[str]) -> list[Claim]:
    claims = []
    seen: set[str] = set()
    for lineno, line in enumerate(lines, 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        try:
            rec = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
        missing = {"id", "target", "kind", "operands", "expected"} - rec.keys()
        if missing:
            raise ValueError(f"line {lineno}: missing {sorted(missing)}")
        if rec["kind"] not in KINDS:
            raise ValueError(f"line {lineno}: unknown kind {rec['kind']!r}")
        if rec["id"] in seen:
            raise ValueError(f"line {lineno}: duplicate id {rec['id']!r}")
        seen.add(rec["id"])
        claims.append(Claim(rec["id"], rec["target"], rec["kind"], rec["operands"], rec["expected"],
                            bool(rec.get("errata", False))))
    return claims


def load_claims(path: str | Path | None = None, *, data_dir: str | Path | None = None) -> list[Claim]:
    if path is None:
        path = resolve_data_dir(data_dir) / "claims.jsonl"
    return parse_claims(Path(path).read_text().splitlines())


def _term(t: Any) -> FactoredInteger:
    if isinstance(t, bool):
        raise ValueError("booleans are not numbers")
    if isinstance(t, int):
        return factor(t)
    if isinstance(t, str):
        return FactoredInteger.parse(t)
    if isinstance(t, dict) and len(t) == 1:
        (key, arg), = t.items()
        if key == "order":
            return order(parse_group(arg))
        if key == "out":
            return out_order(parse_group(arg))
        if key == "gl":
            return gl_order(*arg)
        if key == "power_minus_one":
            base, k = arg
            return factor(base**k - 1)
    raise ValueError(f"unreadable term {t!r}")


def _check_expected(observed: int, expected: Any) -> bool:
    if isinstance(expected, int):
        return observed == expected
    (op, bound), = expected.items()
    return _COMPARE[op](observed, bound)


def evaluate_claim(claim: Claim) -> tuple[bool, str]:
    """Recompute a claim. Returns whether the stated value holds and what was observed."""
    ops, exp = claim.operands, claim.expected
    if claim.kind == "not_divides_gl":
        r = _term(ops["r"])
        gl = gl_order(ops["m"], ops["q"])
        observed = not r.divides(gl)
        return observed == exp, f"|GL({ops['m']},{ops['q']})| = {gl}"
    if claim.kind == "divides":
        a, b = _term(ops["a"]), _term(ops["b"])
        observed = a.divides(b)
        return observed == exp, f"{a} {'divides' if observed else 'does not divide'} {b}"
    if claim.kind == "power_minus_one_valuation":
        exps = ops["exponent"] if isinstance(ops["exponent"], list) else [ops["exponent"]]
        vals = {k: valuation(ops["p"], ops["base"] ** k - 1) for k in exps}
        observed = ", ".join(f"v_{ops['p']}({ops['base']}^{k}-1)={v}" for k, v in vals.items())
        return all(_check_expected(v, exp) for v in vals.values()), observed
    if claim.kind == "factorization_equals":
        value = _term(ops["value"])
        return value == FactoredInteger.parse(str(exp)), str(value)
    if claim.kind == "order_bound":
        g = parse_group(ops["group"])
        sign = compare_to_power_of_ten(order(g), ops["power_of_ten"])
        symbol = {-1: "<", 0: "=", 1: ">"}[sign]
        return sign == _SIGN[exp], f"|{g}| {symbol} 10^{ops['power_of_ten']}"
    if claim.kind == "table_membership":
        g = parse_group(ops["group"])
        hits = {h.group: h for h in simple_divisors(order(parse_group(ops["target"])))}
        member = g in hits
        facts = {"member": member}
        if member:
            facts["atlas"] = hits[g].atlas
        holds = all(facts.get(k) == v for k, v in exp.items())
        return holds, json.dumps(facts, sort_keys=True)
    raise ValueError(f"unknown kind {claim.kind!r}")


def replay_claims(claims: Sequence[Claim]) -> list[ClaimResult]:
    """Recompute every claim. An errata claim is confirmed when recomputation contradicts it."""
    results = []
    for claim in claims:
        holds, observed = evaluate_claim(claim)
        if claim.errata:
            status = ClaimStatus.ERRATA_NOT_REPRODUCED if holds else ClaimStatus.ERRATA_CONFIRMED
        else:
            status = ClaimStatus.PASS if holds else ClaimStatus.FAIL
        results.append(ClaimResult(claim, holds, observed, status))
    return results
