"""Per-pit statistics of winning playouts, prefix periodicity and occupancy."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .core import MoveTrace, WinningStream, generate, play_out

__all__ = [
    "PitStats",
    "PeriodReport",
    "IdentityViolation",
    "HorizonTooSmall",
    "pit_stats",
    "verify_identities",
    "check_identities",
    "lcm_upto",
    "prefix_codes",
    "empirical_period",
    "period_table",
    "distinct_prefixes",
    "occupancy_ratio",
]


class IdentityViolation(AssertionError):
    def __init__(self, identity: str, pit: int, s: int, detail: str = ""):
        self.identity = identity
        self.pit = pit
        self.s = s
        msg = f"{identity} fails at pit {pit} for s={s}"
        super().__init__(msg + (f": {detail}" if detail else ""))


class HorizonTooSmall(ValueError):
    pass


@dataclass(frozen=True)
class PitStats:
    """Occupancy ``p``, harvest counts ``m`` and deposit counts ``b``.

    All three are indexed by pit number with index 0 standing for the
    Roumba: ``p[0] = m[0] = 0`` and ``b[0] = s``.
    """

    s: int
    p: tuple[int, ...]
    m: tuple[int, ...]
    b: tuple[int, ...]

    @property
    def pits(self) -> int:
        return len(self.p) - 1

    def at(self, seq: str, i: int) -> int:
        values = getattr(self, seq)
        return values[i] if i < len(values) else 0


def pit_stats(s: int) -> PitStats:
    pos = generate(s)
    trace = play_out(pos)
    if not isinstance(trace, MoveTrace):
        raise IdentityViolation("winning playout", 0, s, f"play_out got stuck at {trace.stuck}")
    k = max(len(pos), len(trace.m) - 1)
    pad = lambda xs: tuple(xs) + (0,) * (k + 1 - len(xs))
    return PitStats(s, pad((0,) + pos.pits), pad(trace.m), pad(trace.b))


def check_identities(st: PitStats) -> int:
    """Check every pit-count identity on ``st``; return the number of checks made.

    Raises `IdentityViolation` on the first failure.
    """
    s, k = st.s, st.pits
    tail = (0, 0, 0)
    p, m, b = st.p + tail, st.m + tail, st.b + tail
    checks = 0

    if b[0] != s:
        raise IdentityViolation("b_0 = s", 0, s, f"b_0={b[0]}")
    checks += 1
    # one index past the last occupied pit exercises the empty tail
    for i in range(0, k + 2):
        if b[i] != m[i + 1] + b[i + 1]:
            raise IdentityViolation("b_i = m_{i+1} + b_{i+1}", i, s,
                                    f"{b[i]} != {m[i + 1]} + {b[i + 1]}")
        checks += 1
        if i == 0:
            continue
        if p[i] != i * m[i] - b[i]:
            raise IdentityViolation("p_i = i m_i - b_i", i, s,
                                    f"{p[i]} != {i}*{m[i]} - {b[i]}")
        if not 0 <= p[i] <= i:
            raise IdentityViolation("0 <= p_i <= i", i, s, f"p_i={p[i]}")
        checks += 2
        if i < 2:
            continue
        d = p[i] - p[i - 1]
        stated = (i - 1) * (m[i] - m[i - 1]) + 2 * m[i]
        if d != stated:
            raise IdentityViolation("p_i - p_{i-1} = (i-1)(m_i - m_{i-1}) + 2 m_i", i, s,
                                    f"{d} != {stated}")
        rearranged = (i + 1) * (m[i] - m[i - 1]) + 2 * m[i - 1]
        if d != rearranged:
            raise IdentityViolation("p_i - p_{i-1} = (i+1)(m_i - m_{i-1}) + 2 m_{i-1}", i, s,
                                    f"{d} != {rearranged}")
        if m[i] > m[i - 1]:
            raise IdentityViolation("m non-increasing", i, s, f"m_i={m[i]} > m_(i-1)={m[i - 1]}")
        checks += 3
    return checks


def verify_identities(s: int) -> bool:
    check_identities(pit_stats(s))
    return True


def lcm_upto(k: int) -> int:
    """lcm(1, 2, ..., k), exact."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return math.lcm(*range(1, k + 1))


def _radix_weights(i: int) -> list[int]:
    # pit j holds 0..j stones, so the prefix is a mixed-radix number with digit j in base j + 1
    w = [1]
    for j in range(1, i):
        w.append(w[-1] * (j + 1))
    return w


def prefix_codes(i: int, horizon: int) -> np.ndarray:
    """Codes of the ``i``-pit prefixes of the winning positions for s = 0..horizon.

    Two stone counts share a code exactly when their first ``i`` pits agree.
    """
    w = _radix_weights(i)
    if w[-1] * (i + 1) >= 2**63:
        raise OverflowError(f"prefix length {i} does not fit a 64-bit code")
    # a refill of pit h takes one stone from each pit below h and puts h stones in pit h
    below = [0]
    for x in w:
        below.append(below[-1] + x)
    codes = np.zeros(horizon + 1, dtype=np.int64)
    stream = WinningStream()
    code = 0
    for s in range(1, horizon + 1):
        h = stream.step()
        if h <= i:
            code += h * w[h - 1] - below[h - 1]
        else:
            code -= below[i]
        codes[s] = code
    return codes


@dataclass(frozen=True)
class PeriodReport:
    i: int
    measured_period: int
    predicted: int
    horizon: int
    distinct_prefixes: int
    first_zero: Optional[int]

    @property
    def matches(self) -> bool:
        return self.measured_period == self.predicted == self.first_zero == self.distinct_prefixes


def _period_from_codes(codes: np.ndarray) -> int:
    horizon = len(codes) - 1
    # the shift t must carry s = 0 onto s = t, so only repeats of the s = 0 code qualify
    for t in np.flatnonzero(codes == codes[0]):
        t = int(t)
        if t == 0:
            continue
        if np.array_equal(codes[: horizon + 1 - t], codes[t:]):
            return t
    return horizon + 1


def _report(i: int, codes: np.ndarray, horizon: int) -> PeriodReport:
    period = _period_from_codes(codes)
    zeros = np.flatnonzero(codes[1:] == 0)
    first_zero = int(zeros[0]) + 1 if len(zeros) else None
    distinct = len(np.unique(codes[:period]))
    return PeriodReport(i, period, lcm_upto(i + 1), horizon, distinct, first_zero)


def empirical_period(i: int, horizon: Optional[int] = None) -> PeriodReport:
    """Measure the period of the first ``i`` pits over s = 0..horizon.

    ``horizon`` defaults to twice lcm(1..i+1) and may not be smaller.
    """
    if i < 1:
        raise ValueError("prefix length must be >= 1")
    predicted = lcm_upto(i + 1)
    if horizon is None:
        horizon = 2 * predicted
    if horizon < 2 * predicted:
        raise HorizonTooSmall(f"horizon {horizon} < 2*lcm(1..{i + 1}) = {2 * predicted}")
    return _report(i, prefix_codes(i, horizon), horizon)


def period_table(max_i: int, horizon: Optional[int] = None) -> list[PeriodReport]:
    """`empirical_period` for i = 1..max_i from one shared scan."""
    if max_i < 1:
        raise ValueError("max_i must be >= 1")
    need = 2 * lcm_upto(max_i + 1)
    if horizon is None:
        horizon = need
    if horizon < need:
        raise HorizonTooSmall(f"horizon {horizon} < {need}")
    full = prefix_codes(max_i, horizon)
    w = _radix_weights(max_i) + [0]
    out = []
    for i in range(1, max_i + 1):
        # dropping the high digits of a mixed-radix code leaves the shorter prefix
        codes = full if i == max_i else full % (w[i - 1] * (i + 1))
        out.append(_report(i, codes, horizon))
    return out


def distinct_prefixes(i: int) -> int:
    return empirical_period(i).distinct_prefixes


def occupancy_ratio(n: int) -> Fraction:
    """Stones in the fullest winning position that fits ``n`` pits over their capacity."""
    from .sieve import s_of_n

    if n < 1:
        raise ValueError("n must be >= 1")
    s = s_of_n(n + 1)(n + 1) - 1
    return Fraction(s, n * (n + 1) // 2)
