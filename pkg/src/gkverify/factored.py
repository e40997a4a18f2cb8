"""Exact integers kept as prime-to-exponent maps.

Group orders in this package routinely exceed 10^50, so every divisibility
and comparison question is answered on prime exponents, never on floats.
"""

from __future__ import annotations

import math
import re
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from functools import lru_cache, reduce

from sympy import factorint, isprime

__all__ = [
    "FactoredInteger",
    "factor",
    "is_prime",
    "divides",
    "valuation",
    "valuation_in_cyclotomic_product",
    "multiplicative_order",
    "compare_to_power_of_ten",
    "product",
]

_EXPONENT_LIMIT = 1 << 64
_FACTOR_LIMIT = 1 << 128


@lru_cache(maxsize=1 << 16)
def is_prime(n: int) -> bool:
    return n >= 2 and bool(isprime(n))


@dataclass(frozen=True)
class FactoredInteger(Mapping[int, int]):
    """A positive integer stored as ``{prime: exponent}``.

    Keys are primes, exponents are positive and below 2**64. The value 1 is
    the empty map. Instances are immutable and hashable.
    """

    _items: tuple[tuple[int, int], ...] = field(default=())

    def __post_init__(self) -> None:
        last = 1
        for p, e in self._items:
            if p <= last:
                raise ValueError("prime keys must be strictly increasing")
            if not 0 < e < _EXPONENT_LIMIT:
                raise OverflowError(f"exponent {e} of {p} outside 1..2^64-1")
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
            last = p
        object.__setattr__(self, "_exp", dict(self._items))

    @classmethod
    def from_map(cls, exponents: Mapping[int, int]) -> FactoredInteger:
        return cls(tuple(sorted((p, e) for p, e in exponents.items() if e)))

    @classmethod
    def _trusted(cls, items: tuple[tuple[int, int], ...], value: int | None = None) -> FactoredInteger:
        # Skips validation; callers pass sorted items whose keys already passed it.
        obj = object.__new__(cls)
        object.__setattr__(obj, "_items", items)
        object.__setattr__(obj, "_exp", dict(items))
        if value is not None:
            object.__setattr__(obj, "_value", value)
        return obj

    @classmethod
    def one(cls) -> FactoredInteger:
        return cls()

    @classmethod
    def prime_power(cls, p: int, e: int) -> FactoredInteger:
        return cls(((p, e),)) if e else cls()

    @classmethod
    def parse(cls, text: str) -> FactoredInteger:
        """Read ``2^4*3^2*5*11``. Also accepts ``·``, ``.`` or spaces as separators.

        Repeated primes are multiplied together, so ``7*7`` reads as ``7^2``.
        """
        body = text.strip()
        if body in ("1", ""):
            return cls()
        exps: dict[int, int] = {}
        for token in re.split(r"\s*[*·.]\s*|\s+", body):
            if not token:
                continue
            m = re.fullmatch(r"(\d+)(?:\^\{?(\d+)\}?)?", token)
            if m is None:
                raise ValueError(f"bad factor {token!r} in {text!r}")
            base, exp = int(m.group(1)), int(m.group(2) or 1)
            if base == 1:
                continue
            for p, e in factor(base).items():
                exps[p] = exps.get(p, 0) + e * exp
        return cls.from_map(exps)

    # Mapping protocol

    def __getitem__(self, p: int) -> int:
        return self._exp[p]  # type: ignore[attr-defined]

    def __iter__(self) -> Iterator[int]:
        return (p for p, _ in self._items)

    def __len__(self) -> int:
        return len(self._items)

    def __contains__(self, p: object) -> bool:
        return p in self._exp  # type: ignore[attr-defined]

    def __hash__(self) -> int:
        return hash(self._items)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FactoredInteger):
            return self._items == other._items
        return NotImplemented

    # Arithmetic

    @property
    def value(self) -> int:
        cached = self.__dict__.get("_value")
        if cached is None:
            cached = reduce(lambda acc, pe: acc * pe[0] ** pe[1], self._items, 1)
            object.__setattr__(self, "_value", cached)
        return cached

    def __int__(self) -> int:
        return self.value

    def v(self, p: int) -> int:
        return self._exp.get(p, 0)  # type: ignore[attr-defined]

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self._items)

    def __mul__(self, other: FactoredInteger) -> FactoredInteger:
        if not isinstance(other, FactoredInteger):
            return NotImplemented
        merged = dict(self._items)
        for p, e in other._items:
            merged[p] = merged.get(p, 0) + e
        return FactoredInteger.from_map(merged)

    def __pow__(self, k: int) -> FactoredInteger:
        if k < 0:
            raise ValueError("negative power")
        return FactoredInteger.from_map({p: e * k for p, e in self._items})

    def divides(self, other: FactoredInteger) -> bool:
        theirs = other._exp  # type: ignore[attr-defined]
        return all(theirs.get(p, 0) >= e for p, e in self._items)

    def coprime_to(self, other: FactoredInteger) -> bool:
        return self._exp.keys().isdisjoint(other._exp)  # type: ignore[attr-defined]

    def __floordiv__(self, other: FactoredInteger) -> FactoredInteger:
        """Exact quotient. Raises if ``other`` does not divide ``self``."""
        if not other.divides(self):
            raise ValueError(f"{other} does not divide {self}")
        theirs = other._exp  # type: ignore[attr-defined]
        return FactoredInteger._trusted(
            tuple((p, e - theirs.get(p, 0)) for p, e in self._items if e > theirs.get(p, 0))
        )

    def gcd(self, other: FactoredInteger) -> FactoredInteger:
        return FactoredInteger.from_map({p: min(e, other.v(p)) for p, e in self._items})

    def lcm(self, other: FactoredInteger) -> FactoredInteger:
        merged = dict(self._items)
        for p, e in other._items:
            merged[p] = max(merged.get(p, 0), e)
        return FactoredInteger.from_map(merged)

    def restrict(self, primes: Iterable[int]) -> FactoredInteger:
        keep = set(primes)
        return FactoredInteger._trusted(tuple((p, e) for p, e in self._items if p in keep))

    def divisors(self) -> Iterator[FactoredInteger]:
        """All divisors, in lexicographic order of their exponent vectors."""
        def walk(i: int, acc: tuple[tuple[int, int], ...]) -> Iterator[FactoredInteger]:
            if i == len(self._items):
                yield FactoredInteger._trusted(acc)
                return
            p, e = self._items[i]
            for k in range(e + 1):
                yield from walk(i + 1, acc + (((p, k),) if k else ()))
        return walk(0, ())

    def __str__(self) -> str:
        if not self._items:
            return "1"
        return "*".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self._items)

    def pretty(self) -> str:
        return str(self).replace("*", "·")

    def __repr__(self) -> str:
        return f"FactoredInteger({str(self)!r})"


@lru_cache(maxsize=1 << 14)
def factor(n: int) -> FactoredInteger:
    """Factor ``1 <= n < 2^128``.

    Delegates to sympy, whose primality test is deterministic below 2^64
    and Baillie-PSW above.
    """
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError("factor() takes an int")
    if n < 1:
        raise ValueError("factor() needs n >= 1")
    if n >= _FACTOR_LIMIT:
        raise ValueError("factor() is limited to n < 2^128")
    return FactoredInteger.from_map({int(p): int(e) for p, e in factorint(n).items()})


def product(parts: Iterable[FactoredInteger]) -> FactoredInteger:
    merged: dict[int, int] = {}
    for part in parts:
        for p, e in part.items():
            merged[p] = merged.get(p, 0) + e
    return FactoredInteger.from_map(merged)


def divides(a: FactoredInteger | int, b: FactoredInteger | int) -> bool:
    return _as_factored(a).divides(_as_factored(b))


def _as_factored(x: FactoredInteger | int) -> FactoredInteger:
    return x if isinstance(x, FactoredInteger) else factor(x)


def valuation(p: int, n: int) -> int:
    """Exponent of the prime ``p`` in the nonzero integer ``n``."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


@lru_cache(maxsize=1 << 14)
def multiplicative_order(q: int, p: int) -> int:
    """Least ``d >= 1`` with ``q^d = 1 (mod p)``, for a prime ``p`` not dividing ``q``."""
    q %= p
    if q == 0:
        raise ValueError(f"{p} divides the base")
    d = p - 1
    for r in factor(p - 1).primes if p > 2 else ():
        while d % r == 0 and pow(q, d // r, p) == 1:
            d //= r
    return d


def _legendre(p: int, t: int) -> int:
    total = 0
    while t:
        t //= p
        total += t
    return total


@lru_cache(maxsize=1 << 16)
def valuation_in_cyclotomic_product(p: int, q: int, m: int) -> int:
    """``v_p(prod_{i=1..m} (q^i - 1))`` in closed form.

    Uses the multiplicative order of ``q`` mod ``p`` and lifting the exponent,
    so the product is never formed.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if q < 2 or m < 0:
        raise ValueError("need q >= 2 and m >= 0")
    if q % p == 0:
        raise ValueError(f"{p} divides {q}")
    if m == 0:
        return 0
    if p == 2:
        odd_terms, even_terms = (m + 1) // 2, m // 2
        return (
            odd_terms * valuation(2, q - 1)
            + even_terms * valuation(2, q * q - 1)
            + _legendre(2, even_terms)
        )
    d = multiplicative_order(q, p)
    t = m // d
    if t == 0:
        return 0
    return t * valuation(p, q**d - 1) + _legendre(p, t)


def compare_to_power_of_ten(n: FactoredInteger | int, k: int) -> int:
    """Sign of ``n - 10^k``: -1, 0 or 1."""
    value = int(n)
    bound = 10**k
    return (value > bound) - (value < bound)


def digits(n: FactoredInteger | int) -> int:
    return len(str(int(n)))


def log10(n: FactoredInteger) -> float:
    """Approximate decimal logarithm, for display only."""
    return sum(e * math.log10(p) for p, e in n.items())
