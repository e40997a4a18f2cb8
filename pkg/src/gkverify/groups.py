"""Identifiers, orders and outer automorphism orders of finite simple groups."""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from importlib import resources
from math import gcd
from pathlib import Path

from sympy import divisors as _int_divisors
from sympy import mobius

from .factored import FactoredInteger, factor, product

__all__ = [
    "Family",
    "GroupId",
    "NotSimpleError",
    "SporadicRecord",
    "alternating",
    "lie",
    "sporadic",
    "TITS",
    "canonical",
    "parse_group",
    "order",
    "out_order",
    "sporadic_records",
    "sporadic_names",
    "resolve_data_dir",
]


class NotSimpleError(ValueError):
    """Raised for parameters that name a solvable or non-simple group."""


class Family(str, Enum):
    ALTERNATING = "Alt"
    SPORADIC = "Spor"
    TITS = "Tits"
    A = "A"
    B = "B"
    C = "C"
    D = "D"
    G2 = "G2"
    F4 = "F4"
    E6 = "E6"
    E7 = "E7"
    E8 = "E8"
    TWISTED_A = "2A"
    TWISTED_D = "2D"
    TRIALITY_D4 = "3D4"
    TWISTED_E6 = "2E6"
    SUZUKI = "2B2"
    REE_G2 = "2G2"
    REE_F4 = "2F4"


CLASSICAL = (Family.A, Family.B, Family.C, Family.D, Family.TWISTED_A, Family.TWISTED_D)
_MIN_RANK = {
    Family.A: 1,
    Family.B: 2,
    Family.C: 3,
    Family.D: 4,
    Family.TWISTED_A: 2,
    Family.TWISTED_D: 4,
}
# Positions used to break ties between groups of equal order.
_FAMILY_RANK = {f: i for i, f in enumerate(Family)}

_NON_SIMPLE = {
    (Family.A, 1, 2),
    (Family.A, 1, 3),
    (Family.TWISTED_A, 2, 2),
    (Family.B, 2, 2),
    (Family.G2, None, 2),
    (Family.REE_G2, None, 3),
    (Family.SUZUKI, None, 2),
    (Family.REE_F4, None, 2),
}


def _prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise ValueError(f"field size {q} must be at least 2")
    f = factor(q)
    if len(f) != 1:
        raise ValueError(f"field size {q} is not a prime power")
    (p, k), = f.items()
    return p, k


@dataclass(frozen=True, order=False)
class GroupId:
    """A finite simple group up to isomorphism.

    ``rank`` holds n for alternating and classical families and is ``None``
    for the exceptional ones. ``name`` is used only by sporadic groups.
    Use :func:`canonical` to pick one representative per isomorphism class.
    """

    family: Family
    rank: int | None = None
    q: int | None = None
    name: str | None = None

    def __post_init__(self) -> None:
        fam = Family(self.family)
        object.__setattr__(self, "family", fam)
        if fam is Family.SPORADIC:
            if self.name is None or self.rank is not None or self.q is not None:
                raise ValueError("sporadic groups carry a name only")
            return
        if self.name is not None:
            raise ValueError(f"{fam.value} groups carry no name")
        if fam is Family.TITS:
            if self.rank is not None or self.q is not None:
                raise ValueError("the Tits group has no parameters")
            return
        if fam is Family.ALTERNATING:
            if self.q is not None or self.rank is None:
                raise ValueError("alternating groups take a degree only")
            if self.rank < 5:
                raise NotSimpleError(f"A{self.rank} is not simple")
            return
        if self.q is None:
            raise ValueError(f"{fam.value} needs a field size")
        p, k = _prime_power(self.q)
        if fam in CLASSICAL:
            if self.rank is None:
                raise ValueError(f"{fam.value} needs a rank")
            if self.rank < _MIN_RANK[fam]:
                raise ValueError(f"{fam.value}{self.rank} is below the minimal rank {_MIN_RANK[fam]}")
        elif self.rank is not None:
            raise ValueError(f"{fam.value} has a fixed rank")
        if fam is Family.SUZUKI or fam is Family.REE_F4:
            if p != 2 or k % 2 == 0:
                raise ValueError(f"{fam.value} needs q = 2^(2m+1)")
        if fam is Family.REE_G2 and (p != 3 or k % 2 == 0):
            raise ValueError("2G2 needs q = 3^(2m+1)")
        if (fam, self.rank, self.q) in _NON_SIMPLE:
            raise NotSimpleError(f"{_lie_symbol(fam, self.rank)}({self.q}) is not simple")

    @property
    def is_lie_type(self) -> bool:
        return self.family not in (Family.ALTERNATING, Family.SPORADIC, Family.TITS)

    @property
    def characteristic(self) -> int | None:
        return _prime_power(self.q)[0] if self.q else None

    @property
    def field_degree(self) -> int | None:
        return _prime_power(self.q)[1] if self.q else None

    @property
    def atlas_name(self) -> str:
        return _atlas_name(self)

    @property
    def lie_name(self) -> str:
        if not self.is_lie_type:
            return self.atlas_name
        return f"{_lie_symbol(self.family, self.rank)}({self.q})"

    def sort_key(self) -> tuple:
        return (order(self).value, _FAMILY_RANK[self.family], self.rank or 0, self.q or 0, self.name or "")

    def __str__(self) -> str:
        return self.atlas_name


def _lie_symbol(fam: Family, rank: int | None) -> str:
    if fam in CLASSICAL:
        return f"{fam.value}{rank}"
    return fam.value


def alternating(n: int) -> GroupId:
    return GroupId(Family.ALTERNATING, rank=n)


def lie(family: Family | str, rank: int | None, q: int) -> GroupId:
    return GroupId(Family(family), rank=rank, q=q)


def sporadic(name: str) -> GroupId:
    return GroupId(Family.SPORADIC, name=_sporadic_name(name))


TITS = GroupId(Family.TITS)


def canonical(g: GroupId) -> GroupId:
    """Pick the representative used throughout for ``g``'s isomorphism class."""
    fam, n, q = g.family, g.rank, g.q
    if fam is Family.A and n == 1 and q in (4, 5):
        return alternating(5)
    if fam is Family.A and n == 1 and q == 9:
        return alternating(6)
    if fam is Family.A and n == 2 and q == 2:
        return lie(Family.A, 1, 7)
    if fam is Family.A and n == 3 and q == 2:
        return alternating(8)
    if fam is Family.B and n == 2 and q == 3:
        return lie(Family.TWISTED_A, 3, 2)
    if fam is Family.B and n is not None and n >= 3 and q is not None and q % 2 == 0:
        return lie(Family.C, n, q)
    return g


# Names


def _atlas_name(g: GroupId) -> str:
    fam, n, q = g.family, g.rank, g.q
    if fam is Family.SPORADIC:
        return g.name  # type: ignore[return-value]
    if fam is Family.TITS:
        return "2F4(2)'"
    if fam is Family.ALTERNATING:
        return f"A{n}"
    assert n is not None or fam not in CLASSICAL
    if fam is Family.A:
        return f"L{n + 1}({q})"
    if fam is Family.TWISTED_A:
        return f"U{n + 1}({q})"
    if fam is Family.B:
        return f"S4({q})" if n == 2 else f"O{2 * n + 1}({q})"
    if fam is Family.C:
        return f"S{2 * n}({q})"
    if fam is Family.D:
        return f"O{2 * n}+({q})"
    if fam is Family.TWISTED_D:
        return f"O{2 * n}-({q})"
    if fam is Family.SUZUKI:
        return f"Sz({q})"
    if fam is Family.REE_G2:
        return f"R({q})"
    return f"{fam.value}({q})"


# Every key is matched case-insensitively after removing spaces, braces and underscores.
_SPORADIC_ALIASES = {
    "M11": "M11", "M12": "M12", "M22": "M22", "M23": "M23", "M24": "M24",
    "J1": "J1", "J2": "J2", "HJ": "J2", "J3": "J3", "J4": "J4",
    "HS": "HS", "MCL": "McL", "SUZ": "Suz", "HE": "He", "RU": "Ru",
    "ON": "ON", "O'N": "ON", "LY": "Ly", "TH": "Th", "F3": "Th",
    "HN": "HN", "F5": "HN", "CO1": "Co1", "CO2": "Co2", "CO3": "Co3",
    "FI22": "Fi22", "FI23": "Fi23", "FI24'": "Fi24'", "FI24": "Fi24'",
    "F3+": "Fi24'", "B": "B", "F2": "B", "M": "M", "F1": "M",
}


def _normalize(text: str) -> str:
    return re.sub(r"[\s{}_$\\]", "", text)


def _sporadic_name(name: str) -> str:
    key = _normalize(name).upper()
    try:
        return _SPORADIC_ALIASES[key]
    except KeyError:
        raise ValueError(f"unknown sporadic group {name!r}") from None


def _field(text: str) -> int:
    m = re.fullmatch(r"(\d+)(?:\^(\d+))?", text)
    if m is None:
        raise ValueError(f"bad field size {text!r}")
    return int(m.group(1)) ** int(m.group(2) or 1)


_ATLAS_PATTERNS: list[tuple[str, object]] = [
    (r"L(\d+)\((.+)\)", lambda d, q: lie(Family.A, d - 1, q)),
    (r"U(\d+)\((.+)\)", lambda d, q: lie(Family.TWISTED_A, d - 1, q)),
    (r"S(\d+)\((.+)\)", lambda d, q: lie(Family.B if d == 4 else Family.C, d // 2, q) if d % 2 == 0 else _bad()),
    (r"O(\d+)\+\((.+)\)", lambda d, q: lie(Family.D, d // 2, q) if d % 2 == 0 else _bad()),
    (r"O(\d+)-\((.+)\)", lambda d, q: lie(Family.TWISTED_D, d // 2, q) if d % 2 == 0 else _bad()),
    (r"O(\d+)\((.+)\)", lambda d, q: lie(Family.B, (d - 1) // 2, q) if d % 2 == 1 else _bad()),
]
_EXCEPTIONAL = {
    "G2": Family.G2, "F4": Family.F4, "E6": Family.E6, "E7": Family.E7, "E8": Family.E8,
    "2E6": Family.TWISTED_E6, "3D4": Family.TRIALITY_D4, "2B2": Family.SUZUKI,
    "SZ": Family.SUZUKI, "2G2": Family.REE_G2, "R": Family.REE_G2, "2F4": Family.REE_F4,
}
_LIE_CLASSICAL = {"A": Family.A, "B": Family.B, "C": Family.C, "D": Family.D,
                  "2A": Family.TWISTED_A, "2D": Family.TWISTED_D}


def _bad() -> GroupId:
    raise ValueError("dimension does not match the family")


def parse_group(text: str, *, keep_form: bool = False) -> GroupId:
    """Read a group name and return its canonical representative.

    Accepts ATLAS names (``L2(2^10)``, ``U4(3)``, ``O8+(2)``, ``Sz(8)``,
    ``2F4(2)'``, ``Fi24'``), Lie notation (``A1(7)``, ``2A3(2)``, ``E8(2)``)
    and alternating degrees (``A26``). ``keep_form`` skips canonicalization.
    """
    s = _normalize(text)
    g = _parse(s)
    return g if keep_form else canonical(g)


def _parse(s: str) -> GroupId:
    if s in ("2F4(2)'", "Tits", "T"):
        return TITS
    m = re.fullmatch(r"A(\d+)", s)
    if m:
        return alternating(int(m.group(1)))
    m = re.fullmatch(r"(2A|2D|A|B|C|D)(\d+)\((.+)\)", s)
    if m:
        return lie(_LIE_CLASSICAL[m.group(1)], int(m.group(2)), _field(m.group(3)))
    m = re.fullmatch(r"([23]?[A-Za-z]\d?|Sz|R)\((.+)\)", s)
    if m and m.group(1).upper() in _EXCEPTIONAL and m.group(1) not in ("S4",):
        return GroupId(_EXCEPTIONAL[m.group(1).upper()], q=_field(m.group(2)))
    for pattern, build in _ATLAS_PATTERNS:
        m = re.fullmatch(pattern, s)
        if m:
            return build(int(m.group(1)), _field(m.group(2)))  # type: ignore[operator]
    return sporadic(s)


# Orders


def _cyclotomic_value(d: int, q: int) -> int:
    num, den = 1, 1
    for e in _int_divisors(d):
        mu = mobius(d // e)
        if mu == 1:
            num *= q**e - 1
        elif mu == -1:
            den *= q**e - 1
    return num // den


@lru_cache(maxsize=None)
def _cyclotomic(d: int, q: int) -> FactoredInteger:
    return factor(_cyclotomic_value(d, q))


@lru_cache(maxsize=None)
def q_power_minus_one(q: int, i: int) -> FactoredInteger:
    """Factored ``q^i - 1``, assembled from cyclotomic values."""
    return product(_cyclotomic(d, q) for d in _int_divisors(i))


@lru_cache(maxsize=None)
def q_power_plus_one(q: int, i: int) -> FactoredInteger:
    """Factored ``q^i + 1``."""
    return product(_cyclotomic(d, q) for d in _int_divisors(2 * i) if i % d)


def _q_power(q: int, e: int) -> FactoredInteger:
    p, k = _prime_power(q)
    return FactoredInteger.prime_power(p, k * e)


def _minus(q: int, *exps: int) -> FactoredInteger:
    return product(q_power_minus_one(q, i) for i in exps)


def _lie_order(fam: Family, n: int | None, q: int) -> FactoredInteger:
    if fam is Family.A:
        assert n is not None
        full = _q_power(q, n * (n + 1) // 2) * _minus(q, *range(2, n + 2))
        return full // factor(gcd(n + 1, q - 1))
    if fam is Family.TWISTED_A:
        assert n is not None
        parts = [q_power_minus_one(q, i) if i % 2 == 0 else q_power_plus_one(q, i) for i in range(2, n + 2)]
        return (_q_power(q, n * (n + 1) // 2) * product(parts)) // factor(gcd(n + 1, q + 1))
    if fam in (Family.B, Family.C):
        assert n is not None
        full = _q_power(q, n * n) * _minus(q, *(2 * i for i in range(1, n + 1)))
        return full // factor(gcd(2, q - 1))
    if fam is Family.D:
        assert n is not None
        full = _q_power(q, n * (n - 1)) * q_power_minus_one(q, n) * _minus(q, *(2 * i for i in range(1, n)))
        return full // factor(gcd(4, q**n - 1))
    if fam is Family.TWISTED_D:
        assert n is not None
        full = _q_power(q, n * (n - 1)) * q_power_plus_one(q, n) * _minus(q, *(2 * i for i in range(1, n)))
        return full // factor(gcd(4, q**n + 1))
    if fam is Family.TRIALITY_D4:
        # q^8 + q^4 + 1 = (q^12 - 1) / (q^4 - 1)
        return _q_power(q, 12) * (_minus(q, 12) // _minus(q, 4)) * _minus(q, 6, 2)
    if fam is Family.G2:
        return _q_power(q, 6) * _minus(q, 6, 2)
    if fam is Family.F4:
        return _q_power(q, 24) * _minus(q, 12, 8, 6, 2)
    if fam is Family.E6:
        return (_q_power(q, 36) * _minus(q, 12, 9, 8, 6, 5, 2)) // factor(gcd(3, q - 1))
    if fam is Family.TWISTED_E6:
        full = _q_power(q, 36) * _minus(q, 12, 8, 6, 2) * q_power_plus_one(q, 9) * q_power_plus_one(q, 5)
        return full // factor(gcd(3, q + 1))
    if fam is Family.E7:
        return (_q_power(q, 63) * _minus(q, 18, 14, 12, 10, 8, 6, 2)) // factor(gcd(2, q - 1))
    if fam is Family.E8:
        return _q_power(q, 120) * _minus(q, 30, 24, 20, 18, 14, 12, 8, 2)
    if fam is Family.SUZUKI:
        return _q_power(q, 2) * q_power_plus_one(q, 2) * _minus(q, 1)
    if fam is Family.REE_G2:
        return _q_power(q, 3) * q_power_plus_one(q, 3) * _minus(q, 1)
    if fam is Family.REE_F4:
        return _q_power(q, 12) * q_power_plus_one(q, 6) * _minus(q, 4, 1) * q_power_plus_one(q, 3)
    raise AssertionError(fam)


def _alternating_order(n: int) -> FactoredInteger:
    exps: dict[int, int] = {}
    for p in range(2, n + 1):
        if factor(p).primes != (p,):
            continue
        k, t = 0, n
        while t:
            t //= p
            k += t
        exps[p] = k
    exps[2] -= 1
    return FactoredInteger.from_map(exps)


def order(g: GroupId) -> FactoredInteger:
    """Factored order of ``g``. Sporadic orders come from the current data file."""
    if g.family is Family.SPORADIC:
        return sporadic_records()[g.name].order  # type: ignore[index]
    return _computed_order(g)


@lru_cache(maxsize=None)
def _computed_order(g: GroupId) -> FactoredInteger:
    if g.family is Family.TITS:
        return FactoredInteger.parse("2^11*3^3*5^2*13")
    if g.family is Family.ALTERNATING:
        return _alternating_order(g.rank)  # type: ignore[arg-type]
    return _lie_order(g.family, g.rank, g.q)  # type: ignore[arg-type]


def out_order(g: GroupId) -> FactoredInteger:
    """Factored order of the outer automorphism group."""
    if g.family is Family.SPORADIC:
        return sporadic_records()[g.name].out  # type: ignore[index]
    return _computed_out_order(g)


@lru_cache(maxsize=None)
def _computed_out_order(g: GroupId) -> FactoredInteger:
    fam, n, q = g.family, g.rank, g.q
    if fam is Family.TITS:
        return factor(2)
    if fam is Family.ALTERNATING:
        return factor(4 if n == 6 else 2)
    assert q is not None
    p, f = _prime_power(q)
    if fam is Family.A:
        assert n is not None
        d, field_, graph = gcd(n + 1, q - 1), f, 2 if n >= 2 else 1
    elif fam is Family.TWISTED_A:
        assert n is not None
        d, field_, graph = gcd(n + 1, q + 1), 2 * f, 1
    elif fam is Family.B:
        d, field_, graph = gcd(2, q - 1), f, 2 if (n == 2 and p == 2) else 1
    elif fam is Family.C:
        d, field_, graph = gcd(2, q - 1), f, 1
    elif fam is Family.D:
        assert n is not None
        d, field_, graph = gcd(4, q**n - 1), f, 6 if n == 4 else 2
    elif fam is Family.TWISTED_D:
        assert n is not None
        d, field_, graph = gcd(4, q**n + 1), 2 * f, 1
    elif fam is Family.TRIALITY_D4:
        d, field_, graph = 1, 3 * f, 1
    elif fam is Family.G2:
        d, field_, graph = 1, f, 2 if p == 3 else 1
    elif fam is Family.F4:
        d, field_, graph = 1, f, 2 if p == 2 else 1
    elif fam is Family.E6:
        d, field_, graph = gcd(3, q - 1), f, 2
    elif fam is Family.TWISTED_E6:
        d, field_, graph = gcd(3, q + 1), 2 * f, 1
    elif fam is Family.E7:
        d, field_, graph = gcd(2, q - 1), f, 1
    else:
        # E8 and the three very twisted families: field automorphisms only.
        d, field_, graph = 1, f, 1
    return factor(d * field_ * graph)


# Sporadic data


@dataclass(frozen=True)
class SporadicRecord:
    name: str
    order: FactoredInteger
    out: FactoredInteger
    spectrum: frozenset[int]


def resolve_data_dir(override: str | os.PathLike[str] | None = None) -> Path:
    """Where data files live: an explicit path, else ``$GK_DATA_DIR``, else the bundled copy."""
    if override is not None:
        return Path(override)
    env = os.environ.get("GK_DATA_DIR")
    if env:
        return Path(env)
    return Path(str(resources.files("gkverify") / "data"))


def _parse_spectrum(text: str) -> frozenset[int]:
    out: set[int] = set()
    for part in text.split(","):
        part = part.strip()
        if "-" in part:
            lo, hi = (int(x) for x in part.split("-"))
            out.update(range(lo, hi + 1))
        elif part:
            out.add(int(part))
    return frozenset(out)


def load_sporadic_file(path: Path) -> dict[str, SporadicRecord]:
    records: dict[str, SporadicRecord] = {}
    for lineno, line in enumerate(path.read_text().splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != 4:
            raise ValueError(f"{path}:{lineno}: expected 4 tab-separated columns")
        name = _sporadic_name(cols[0])
        order_ = FactoredInteger.parse(cols[1])
        spectrum = _parse_spectrum(cols[3])
        bad = [k for k in spectrum if not factor(k).divides(order_)]
        if bad:
            raise ValueError(f"{path}:{lineno}: element orders {bad} do not divide |{name}|")
        records[name] = SporadicRecord(name, order_, FactoredInteger.parse(cols[2]), spectrum)
    return records


@lru_cache(maxsize=8)
def _cached_records(path: str) -> dict[str, SporadicRecord]:
    return load_sporadic_file(Path(path))


def sporadic_records(data_dir: str | os.PathLike[str] | None = None) -> dict[str, SporadicRecord]:
    return _cached_records(str(resolve_data_dir(data_dir) / "sporadic.tsv"))


def sporadic_names() -> tuple[str, ...]:
    """The 26 sporadic groups in data-file order."""
    return tuple(sporadic_records())
