"""Slash sieves: the harvest sequence h_s, the function s(n) and primes.

The Tchoukaillon sieve walks the positive integers and, in round n, slashes
the first unslashed number and every (n+1)-st unslashed number after it;
every number slashed in round n gets h = n. The first number slashed in
round n is s(n), the least stone count whose winning position reaches pit n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

import numpy as np

__all__ = [
    "HarvestSequence",
    "SFunction",
    "AsymptoteRow",
    "harvest_value",
    "iter_h",
    "h_stream",
    "slash_sieve",
    "s_of_n",
    "s_by_generator",
    "asymptote_report",
    "residual_trend",
    "prime_sieve",
    "growth_compare",
]


@dataclass(frozen=True)
class HarvestSequence:
    values: tuple[int, ...]
    limit: int

    def __getitem__(self, s: int) -> int:
        """h_s for 1 <= s <= limit."""
        if not 1 <= s <= self.limit:
            raise IndexError(f"h_{s} outside 1..{self.limit}")
        return self.values[s - 1]

    def __len__(self) -> int:
        return self.limit


@dataclass(frozen=True)
class SFunction:
    table: tuple[int, ...]  # table[n - 1] = s(n)

    def __call__(self, n: int) -> int:
        if not 1 <= n <= len(self.table):
            raise IndexError(f"s({n}) outside 1..{len(self.table)}")
        return self.table[n - 1]

    def __len__(self) -> int:
        return len(self.table)


def harvest_value(s: int) -> int:
    """h_s without materialising the sieve.

    Track the rank of ``s`` among the numbers still unslashed before round j;
    round j slashes the ranks congruent to 1 modulo j + 1.
    """
    if s < 1:
        raise ValueError("h_s is defined for s >= 1")
    rank, j = s, 1
    while True:
        q, r = divmod(rank - 1, j + 1)
        if r == 0:
            return j
        rank -= q + 1
        j += 1


def iter_h(start: int = 1) -> Iterator[int]:
    s = start
    while True:
        yield harvest_value(s)
        s += 1


def h_stream(limit: int) -> HarvestSequence:
    if limit < 0:
        raise ValueError("limit must be >= 0")
    return HarvestSequence(tuple(harvest_value(s) for s in range(1, limit + 1)), limit)


def slash_sieve(limit: int) -> tuple[list[int], list[int]]:
    """Run the slash sieve literally on the list 1..limit.

    Returns ``(h, firsts)`` where ``h[s - 1]`` is the round that slashed ``s``
    and ``firsts`` lists the first unslashed number of every round. Quadratic;
    meant as a reference for small limits.
    """
    h = [0] * limit
    firsts = []
    alive = list(range(1, limit + 1))
    n = 1
    while alive:
        firsts.append(alive[0])
        for x in alive[:: n + 1]:
            h[x - 1] = n
        del alive[:: n + 1]
        n += 1
    return h, firsts


def s_of_n(N: int) -> SFunction:
    """s(1..N): the first position at which each value n turns up in h."""
    if N < 1:
        raise ValueError("N must be >= 1")
    table = []
    s = 0
    while len(table) < N:
        s += 1
        # a new maximum is always exactly one more than the old one
        if harvest_value(s) == len(table) + 1:
            table.append(s)
    return SFunction(tuple(table))


def s_by_generator(N: int) -> SFunction:
    """s(1..N) from the backward generator: the first s whose position has n pits."""
    from .core import WinningStream

    if N < 1:
        raise ValueError("N must be >= 1")
    stream = WinningStream()
    table = []
    while len(table) < N:
        stream.step()
        if len(stream) > len(table):
            table.append(stream.s)
    return SFunction(tuple(table))


@dataclass(frozen=True)
class AsymptoteRow:
    n: int
    s: int
    approx: float  # n^2 / pi
    residual: float
    max_ratio: float  # max over m <= n of |residual(m)| / m
    scaled: float  # s * pi / n^2


def asymptote_report(N: int, sfun: Optional[SFunction] = None) -> list[AsymptoteRow]:
    if sfun is None:
        sfun = s_of_n(N)
    rows = []
    worst = 0.0
    for n in range(1, N + 1):
        s = sfun(n)
        approx = n * n / math.pi
        r = s - approx
        worst = max(worst, abs(r) / n)
        rows.append(AsymptoteRow(n, s, approx, r, worst, s * math.pi / (n * n)))
    return rows


def residual_trend(rows: Sequence[AsymptoteRow], checkpoints: Sequence[int]) -> tuple[float, float]:
    """Least-squares slope of the running max of |r(n)|/n against log2 N.

    Returns ``(slope, stderr)``.
    """
    x = np.log2(np.asarray(checkpoints, dtype=float))
    y = np.array([rows[N - 1].max_ratio for N in checkpoints])
    if len(x) < 3:
        raise ValueError("need at least three checkpoints for a slope error")
    coef, cov = np.polyfit(x, y, 1, cov=True)
    return float(coef[0]), float(math.sqrt(cov[0, 0]))


def _prime_bound(count: int) -> int:
    if count < 6:
        return 15
    return int(count * (math.log(count) + math.log(math.log(count)))) + 1


def prime_sieve(limit: int) -> list[int]:
    """The first ``limit`` primes by the slash sieve started at 2.

    Each round takes the first unslashed number p and slashes it together
    with every p-th number after it, counting slashed numbers as well.
    """
    if limit < 0:
        raise ValueError("limit must be >= 0")
    if limit == 0:
        return []
    top = _prime_bound(limit)
    slashed = bytearray(top + 1)
    primes = []
    for p in range(2, top + 1):
        if slashed[p]:
            continue
        primes.append(p)
        if len(primes) == limit:
            break
        slashed[p::p] = b"\x01" * len(range(p, top + 1, p))
    return primes


def growth_compare(N: int, sfun: Optional[SFunction] = None) -> list[dict]:
    if N < 1:
        raise ValueError("N must be >= 1")
    if sfun is None:
        sfun = s_of_n(N)
    primes = prime_sieve(N)
    rows = []
    for n in range(1, N + 1):
        s, p = sfun(n), primes[n - 1]
        rows.append({
            "n": n,
            "s": s,
            "prime": p,
            "s_ratio": s * math.pi / (n * n),
            "prime_ratio": p / (n * math.log(n)) if n > 1 else None,
        })
    return rows
