import json

import pytest

from gkverify.claims import KINDS, ClaimStatus, evaluate_claim, load_claims, parse_claims, replay_claims


def claim(kind, operands, expected, errata=False, cid="x"):
    rec = {"id": cid, "target": "M11", "kind": kind, "operands": operands, "expected": expected, "errata": errata}
    return parse_claims([json.dumps(rec)])[0]


def test_shipped_ledger_replays_clean():
    results = replay_claims(load_claims())
    by = {s: [r for r in results if r.status is s] for s in ClaimStatus}
    assert len(by[ClaimStatus.PASS]) >= 40
    assert by[ClaimStatus.FAIL] == [] and by[ClaimStatus.ERRATA_NOT_REPRODUCED] == []
    assert {r.claim.id for r in by[ClaimStatus.ERRATA_CONFIRMED]} == {"HN/GL(5,5)", "HN/out(J1)"}
    assert {r.claim.kind for r in results} == set(KINDS)


def test_gl55_errata_shows_71():
    (r,) = replay_claims([c for c in load_claims() if c.id == "HN/GL(5,5)"])
    assert r.status is ClaimStatus.ERRATA_CONFIRMED
    assert "71" in r.observed.split("*") and "37" not in r.observed.split("*")


@pytest.mark.parametrize("kind,operands,expected", [
    ("not_divides_gl", {"r": 47, "m": 20, "q": 3}, True),
    ("not_divides_gl", {"r": 11, "m": 7, "q": 2}, True),
    ("power_minus_one_valuation", {"p": 3, "base": 2, "exponent": [16, 17, 20]}, {"lt": 9}),
    ("divides", {"a": {"order": "A5"}, "b": {"order": "M11"}}, True),
    ("factorization_equals", {"value": {"power_minus_one": [5, 5]}}, "2^2*11*71"),
    ("order_bound", {"group": "A26", "power_of_ten": 25}, ">"),
    ("order_bound", {"group": "M", "power_of_ten": 54}, "<"),
    ("table_membership", {"group": "L2(11)", "target": "M11"}, {"member": True, "atlas": True}),
    ("table_membership", {"group": "L2(1024)", "target": "M"}, {"member": True, "atlas": False}),
])
def test_individual_claims_hold(kind, operands, expected):
    holds, _ = evaluate_claim(claim(kind, operands, expected))
    assert holds


def test_false_claim_fails_and_blocks_replay():
    (r,) = replay_claims([claim("not_divides_gl", {"r": 31, "m": 5, "q": 2}, True)])
    assert r.status is ClaimStatus.FAIL and not r.status.ok


def test_errata_that_holds_is_not_reproduced():
    (r,) = replay_claims([claim("factorization_equals", {"value": 7920}, "2^4*3^2*5*11", errata=True)])
    assert r.status is ClaimStatus.ERRATA_NOT_REPRODUCED


def test_empty_ledger():
    assert replay_claims(parse_claims(["# nothing", ""])) == []


@pytest.mark.parametrize("line,message", [
    ("{not json", "line 1"),
    ('{"id": "a", "kind": "divides"}', "missing"),
    ('{"id": "a", "target": "M11", "kind": "guess", "operands": {}, "expected": 1}', "unknown kind"),
])
def test_malformed_ledgers(line, message):
    with pytest.raises(ValueError, match=message):
        parse_claims([line])


def test_duplicate_ids_rejected():
    rec = json.dumps({"id": "a", "target": "M11", "kind": "divides", "operands": {"a": 2, "b": 4}, "expected": True})
    with pytest.raises(ValueError, match="duplicate"):
        parse_claims([rec, rec])


def test_bad_term_rejected():
    with pytest.raises(ValueError):
        evaluate_claim(claim("divides", {"a": {"what": 1}, "b": 4}, True))
