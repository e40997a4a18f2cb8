"""Arithmetic obstructions for groups with a disconnected prime graph.

A finite group whose prime graph is disconnected is Frobenius, 2-Frobenius,
or has a normal series 1 < H < K < G with H nilpotent and K/H simple. The
functions here rule out the first two shapes and every choice of K/H using
only the group order.
"""

from __future__ import annotations

from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from itertools import product as cartesian

from .enumeration import simple_divisors
from .factored import FactoredInteger, factor, product, valuation_in_cyclotomic_product
from .groups import GroupId, order, out_order
from .groups import q_power_minus_one

__all__ = [
    "gl_order",
    "forced_edge",
    "Verdict",
    "frobenius_feasible",
    "two_frobenius_feasible",
    "Split",
    "FrobeniusReport",
    "refute_frobenius",
    "guaranteed_centralizer_primes",
    "Outcome",
    "Witness",
    "CandidateResult",
    "kill_candidate",
    "VerificationReport",
    "verify_characterization",
]

MAX_SPLIT_PRIMES = 16


@lru_cache(maxsize=None)
def gl_order(m: int, q: int) -> FactoredInteger:
    """|GL(m, q)| = q^(m(m-1)/2) * prod_{i=1..m} (q^i - 1)."""
    if m < 1:
        raise ValueError("GL needs m >= 1")
    f = factor(q)
    if len(f) != 1:
        raise ValueError(f"{q} is not a prime power")
    (p, k), = f.items()
    return FactoredInteger.prime_power(p, k * m * (m - 1) // 2) * product(
        q_power_minus_one(q, i) for i in range(1, m + 1)
    )


def forced_edge(p: int, n: int, q: int, m: int) -> bool:
    """True when a p-group of order p^n cannot act fixed-point-freely on a q-group of order q^m.

    That happens exactly when p^n does not divide |GL(m, q)|, and then some
    element of order p centralizes a nontrivial q-element, joining p and q.
    """
    if p == q:
        raise ValueError("forced_edge needs distinct primes")
    return valuation_in_cyclotomic_product(p, q, m) < n


@dataclass(frozen=True)
class Verdict:
    feasible: bool
    condition: str | None = None
    detail: str = ""
    violations: tuple[tuple[int, int], ...] = ()

    def __bool__(self) -> bool:
        return self.feasible


def _edge_violations(acting: FactoredInteger, acted_on: FactoredInteger) -> tuple[tuple[int, int], ...]:
    return tuple(
        (p, q)
        for p in acting.primes
        for q in acted_on.primes
        if forced_edge(p, acting.v(p), q, acted_on.v(q))
    )


def _describe(violations: Sequence[tuple[int, int]], acting: FactoredInteger, acted_on: FactoredInteger) -> str:
    p, q = violations[0]
    return f"{p}^{acting.v(p)} does not divide |GL({acted_on.v(q)},{q})|"


def frobenius_feasible(kernel: FactoredInteger, complement: FactoredInteger) -> Verdict:
    """Necessary conditions for a Frobenius group with the given kernel and complement orders."""
    if not kernel.coprime_to(complement):
        return Verdict(False, "coprime", f"{kernel} and {complement} share a prime")
    if kernel.value == 1 or complement.value == 1:
        return Verdict(False, "trivial", "kernel and complement must be nontrivial")
    k, h = kernel.value, complement.value
    if (k - 1) % h:
        return Verdict(False, "a", f"{h} does not divide {k} - 1 = {k - 1}")
    bad = _edge_violations(complement, kernel)
    if bad:
        return Verdict(False, "b", _describe(bad, complement, kernel), bad)
    return Verdict(True)


def two_frobenius_feasible(d: FactoredInteger, e: FactoredInteger, f: FactoredInteger) -> Verdict:
    """Necessary conditions for G = DEF with DE Frobenius (kernel D) and EF Frobenius (kernel E)."""
    if min(d.value, e.value, f.value) == 1:
        return Verdict(False, "trivial", "all three sections must be nontrivial")
    if not (e.coprime_to(d) and e.coprime_to(f)):
        return Verdict(False, "coprime", "|E| must be coprime to |D| and |F|")
    if e.value % 2 == 0:
        return Verdict(False, "parity", "|E| must be odd")
    dv, ev, fv = d.value, e.value, f.value
    if (dv - 1) % ev:
        return Verdict(False, "a", f"{ev} does not divide {dv} - 1")
    if (ev - 1) % fv:
        return Verdict(False, "a", f"{fv} does not divide {ev} - 1")
    bad = _edge_violations(e, d)
    if bad:
        return Verdict(False, "b", _describe(bad, e, d), bad)
    bad = _edge_violations(f, e)
    if bad:
        return Verdict(False, "c", _describe(bad, f, e), bad)
    return Verdict(True)


@dataclass(frozen=True)
class Split:
    kind: str
    parts: tuple[FactoredInteger, ...]

    def __str__(self) -> str:
        names = ("K", "H") if self.kind == "frobenius" else ("D", "E", "F")
        return f"{self.kind}(" + ", ".join(f"{a}={b}" for a, b in zip(names, self.parts)) + ")"


@dataclass
class FrobeniusReport:
    order: FactoredInteger
    survivors: list[Split] = field(default_factory=list)
    eliminated: list[tuple[Split, Verdict]] = field(default_factory=list)

    @property
    def checked(self) -> int:
        return len(self.survivors) + len(self.eliminated)

    def counts_by_condition(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for split, verdict in self.eliminated:
            key = f"{split.kind}:{verdict.condition}"
            out[key] = out.get(key, 0) + 1
        return dict(sorted(out.items()))


def _masked(n: FactoredInteger, primes: Sequence[int]) -> Iterator[tuple[FactoredInteger, FactoredInteger]]:
    """Every way to send each prime of ``primes`` wholly to the first or the second part."""
    other = tuple((p, e) for p, e in n.items() if p not in primes)
    other_value = n.restrict(p for p, _ in other).value
    powers = [(p, n.v(p), p ** n.v(p)) for p in primes]
    for mask in cartesian((False, True), repeat=len(powers)):
        inside = tuple((p, e) for (p, e, _), on in zip(powers, mask) if on)
        outside = tuple(sorted(other + tuple((p, e) for (p, e, _), on in zip(powers, mask) if not on)))
        value = 1
        for (_, _, pe), on in zip(powers, mask):
            if on:
                value *= pe
        yield (FactoredInteger._trusted(inside, value),
               FactoredInteger._trusted(outside, n.value // value))


def _frobenius_splits(n: FactoredInteger) -> list[Split]:
    splits = [Split("frobenius", (k, h)) for k, h in _masked(n, n.primes) if k.value > 1 and h.value > 1]
    splits.sort(key=lambda s: s.parts[0].value)
    return splits


def _two_frobenius_splits(n: FactoredInteger) -> list[Split]:
    splits = []
    for e, rest in _masked(n, [p for p in n.primes if p != 2]):
        if e.value == 1:
            continue
        # |F| divides |E| - 1, so F lives inside gcd(|E| - 1, |rest|).
        em1 = e.value - 1
        caps = [(p, k, min(k, _val(p, em1))) for p, k in rest.items()]
        for exps in cartesian(*(range(c + 1) for _, _, c in caps)):
            f_items = tuple((p, x) for (p, _, _), x in zip(caps, exps) if x)
            if not f_items:
                continue
            f_value = 1
            for p, x in f_items:
                f_value *= p**x
            d_value = rest.value // f_value
            if d_value == 1:
                continue
            d_items = tuple((p, k - x) for (p, k, _), x in zip(caps, exps) if k > x)
            splits.append(Split("2-frobenius", (
                FactoredInteger._trusted(d_items, d_value), e, FactoredInteger._trusted(f_items, f_value))))
    splits.sort(key=lambda s: tuple(x.value for x in s.parts))
    return splits


def _val(p: int, m: int) -> int:
    k = 0
    while m % p == 0:
        m //= p
        k += 1
    return k


def refute_frobenius(n: FactoredInteger, *, max_primes: int = MAX_SPLIT_PRIMES) -> FrobeniusReport:
    """Test every Frobenius and 2-Frobenius split of ``n`` built from whole prime powers.

    In a 2-Frobenius split only E is restricted to whole prime powers; D and
    F may share a prime. Survivors are splits the filters could not rule out.
    """
    if len(n) > max_primes:
        raise ValueError(f"{len(n)} primes exceeds the split guard of {max_primes}")
    report = FrobeniusReport(n)
    for split in _frobenius_splits(n):
        verdict = frobenius_feasible(*split.parts)
        _record(report, split, verdict)
    for split in _two_frobenius_splits(n):
        verdict = two_frobenius_feasible(*split.parts)
        _record(report, split, verdict)
    return report


def _record(report: FrobeniusReport, split: Split, verdict: Verdict) -> None:
    if verdict.feasible:
        report.survivors.append(split)
    else:
        report.eliminated.append((split, verdict))


# Candidates for the simple section K/H


def guaranteed_centralizer_primes(n: FactoredInteger, p: int, k: int) -> frozenset[int]:
    """Primes that must divide |C_G(P)| for a normal p-subgroup P of order p^k in a group of order n.

    G/C_G(P) embeds in Aut(P), whose order divides p^* |GL(k, p)|.
    """
    gl = gl_order(k, p)
    return frozenset({p} | {r for r in n.primes if r != p and n.v(r) > gl.v(r)})


class Outcome(str, Enum):
    REFUTATION = "refutation"
    CONFIRMED = "confirmed"
    UNRESOLVED = "unresolved"


@dataclass(frozen=True)
class Witness:
    """Why |H| = |S| / (|T| d) cannot occur for one choice of d."""

    d: int
    h_order: FactoredInteger
    p: int
    k: int
    centralizer: tuple[int, ...]
    partners: tuple[tuple[int, int], ...]
    alternatives: tuple[int, ...]

    @property
    def missing(self) -> tuple[int, ...]:
        return tuple(r for r, _ in self.partners)


@dataclass(frozen=True)
class CandidateResult:
    target: GroupId
    candidate: GroupId
    outcome: Outcome
    witnesses: tuple[Witness, ...] = ()
    open_cases: tuple[int, ...] = ()
    narrative: tuple[str, ...] = ()


def _try_prime(n: FactoredInteger, h: FactoredInteger, p: int) -> tuple[frozenset[int], tuple[tuple[int, int], ...]] | None:
    k = h.v(p)
    central = guaranteed_centralizer_primes(n, p, k)
    partners = []
    for r in n.primes:
        if r in central:
            continue
        q = next((q for q in sorted(central) if q != r and forced_edge(r, 1, q, n.v(q))), None)
        if q is None:
            return None
        partners.append((r, q))
    return central, tuple(partners)


def _claim_ids(target: GroupId, candidate: GroupId, w: Witness) -> list[str]:
    stem = f"{target.atlas_name}/{candidate.atlas_name}/d={w.d}"
    ids = [f"{stem}/order-H", f"{stem}/GL({w.k},{w.p})"]
    ids += [f"{stem}/edge({r},{q})" for r, q in w.partners]
    return ids


def kill_candidate(s: GroupId, t: GroupId, *, prefer: int | None = None) -> CandidateResult:
    """Decide whether K/H = ``t`` is impossible inside a group of order |``s``| with a disconnected graph.

    For every d dividing |Out(t)| with |t| d dividing |s|, look for a prime p
    of |H| whose Sylow subgroup, being normal, has a centralizer that either
    contains every prime or links each missing prime r to one of its primes q
    through a forced edge. That makes the prime graph connected. The largest
    such p is reported unless ``prefer`` names another one that works.
    """
    n = order(s)
    if t == s:
        return CandidateResult(s, t, Outcome.CONFIRMED, narrative=(f"{s.atlas_name} is the target itself",))
    tn = order(t)
    witnesses: list[Witness] = []
    open_cases: list[int] = []
    for d_f in out_order(t).divisors():
        d = d_f.value
        if not (tn * d_f).divides(n):
            continue
        h = n // (tn * d_f)
        working = {}
        for p in sorted(h.primes, reverse=True):
            found = _try_prime(n, h, p)
            if found is not None:
                working[p] = found
        if not working:
            open_cases.append(d)
            continue
        p = prefer if prefer in working else max(working)
        central, partners = working[p]
        witnesses.append(Witness(d, h, p, h.v(p), tuple(sorted(central)), partners,
                                 tuple(sorted(working, reverse=True))))
    if open_cases or not witnesses:
        return CandidateResult(s, t, Outcome.UNRESOLVED, tuple(witnesses), tuple(open_cases))
    narrative = tuple(cid for w in witnesses for cid in _claim_ids(s, t, w))
    return CandidateResult(s, t, Outcome.REFUTATION, tuple(witnesses), (), narrative)


@dataclass
class VerificationReport:
    target: GroupId
    results: list[CandidateResult]

    def by_outcome(self, outcome: Outcome) -> list[CandidateResult]:
        return [r for r in self.results if r.outcome is outcome]

    @property
    def complete(self) -> bool:
        confirmed = self.by_outcome(Outcome.CONFIRMED)
        return (
            not self.by_outcome(Outcome.UNRESOLVED)
            and len(confirmed) == 1
            and confirmed[0].candidate == self.target
        )


def _kill_job(args: tuple[GroupId, GroupId]) -> CandidateResult:
    return kill_candidate(*args)


def verify_characterization(s: GroupId, *, workers: int = 1) -> VerificationReport:
    """Run :func:`kill_candidate` over every simple group whose order divides |s|."""
    jobs = [(s, h.group) for h in simple_divisors(order(s))]
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_kill_job, jobs))
    else:
        results = [_kill_job(job) for job in jobs]
    return VerificationReport(s, results)
