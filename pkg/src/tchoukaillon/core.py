"""Tchoukaillon positions, forward play and the backward generator.

Pits are numbered 1, 2, ... outward from the Roumba. A pit ``i`` may be
harvested only when it holds exactly ``i`` stones: its stones are sown one
per pit toward the Roumba and the last one is pocketed.

Positions are immutable and canonical (no trailing empty pits). The bulk
routines work on mutable buffers internally: `WinningStream` on a list,
`play_out` on a compiled loop over numpy arrays.
"""

from __future__ import annotations

from dataclasses import dataclass, field
import threading
from typing import Iterator, Optional, Sequence, Union

import numpy as np
from numba import njit

__all__ = [
    "Position",
    "MoveTrace",
    "Loss",
    "NotHarvestable",
    "WinningStream",
    "is_harvestable",
    "harvest",
    "smallest_harvestable",
    "play_out",
    "backward_step",
    "generate",
    "generate_direct",
    "is_winnable",
    "iter_winning",
]


class NotHarvestable(ValueError):
    """Raised when a pit does not hold exactly its own index in stones."""


def _canonical(pits: Sequence[int]) -> tuple[int, ...]:
    k = len(pits)
    while k and pits[k - 1] == 0:
        k -= 1
    return tuple(pits[:k])


@dataclass(frozen=True)
class Position:
    """Occupancy of pits 1..k plus the number of stones already pocketed."""

    pits: tuple[int, ...] = ()
    pocketed: int = 0

    def __post_init__(self):
        pits = tuple(int(x) for x in self.pits)
        if any(x < 0 for x in pits):
            raise ValueError(f"negative stone count in {pits}")
        if self.pocketed < 0:
            raise ValueError("pocketed must be non-negative")
        object.__setattr__(self, "pits", _canonical(pits))

    @classmethod
    def of(cls, *pits: int, pocketed: int = 0) -> "Position":
        return cls(tuple(pits), pocketed)

    def __getitem__(self, i: int) -> int:
        """Stones in pit ``i`` (1-based); pits past the end are empty."""
        if i < 1:
            raise IndexError(f"pit index must be >= 1, got {i}")
        return self.pits[i - 1] if i <= len(self.pits) else 0

    def __len__(self) -> int:
        return len(self.pits)

    @property
    def total(self) -> int:
        return sum(self.pits)

    @property
    def conserved(self) -> int:
        return self.total + self.pocketed

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.pits)) + ")"


@dataclass(frozen=True)
class MoveTrace:
    """Record of a won playout.

    ``m[i]`` counts harvests of pit ``i`` and ``b[i]`` counts moves that drop a
    stone into pit ``i``; index 0 is the Roumba, so ``b[0]`` is the number of
    stones pocketed and ``m[0]`` is always 0.
    """

    harvests: tuple[int, ...]
    m: tuple[int, ...]
    b: tuple[int, ...]

    @property
    def won(self) -> bool:
        return True

    @property
    def stones(self) -> int:
        return self.b[0] if self.b else 0


@dataclass(frozen=True)
class Loss:
    """A playout that got stuck with stones left and no harvestable pit."""

    stuck: Position
    harvests: tuple[int, ...] = field(default=())

    @property
    def won(self) -> bool:
        return False


def is_harvestable(pos: Position, i: int) -> bool:
    return 1 <= i <= len(pos.pits) and pos.pits[i - 1] == i


def harvest(pos: Position, i: int) -> Position:
    if not is_harvestable(pos, i):
        raise NotHarvestable(f"pit {i} of {pos} does not hold {i} stones")
    pits = list(pos.pits)
    pits[i - 1] = 0
    for j in range(i - 1):
        pits[j] += 1
    return Position(tuple(pits), pos.pocketed + 1)


def smallest_harvestable(pos: Position) -> Optional[int]:
    for i, x in enumerate(pos.pits, 1):
        if x == i:
            return i
    return None


@njit(cache=True)
def _play_kernel(pits, m, b, harvests):
    # in-place playout on 0-based arrays; returns (won, number of harvests)
    k = pits.shape[0]
    remaining = pits.sum()
    done = 0
    while remaining:
        i = 0
        while i < k and pits[i] != i + 1:
            i += 1
        if i == k:
            return False, done
        pits[i] = 0
        for j in range(i):
            pits[j] += 1
            b[j + 1] += 1
        b[0] += 1
        m[i + 1] += 1
        harvests[done] = i + 1
        done += 1
        remaining -= 1
    return True, done


def play_out(pos: Position) -> Union[MoveTrace, Loss]:
    """Always harvest the smallest harvestable pit until the board is empty.

    Returns a `MoveTrace` on a win and a `Loss` carrying the stuck position
    otherwise.
    """
    pits = np.array(pos.pits, dtype=np.int64)
    k = len(pits)
    m = np.zeros(k + 1, dtype=np.int64)
    b = np.zeros(k + 1, dtype=np.int64)
    harvests = np.zeros(int(pits.sum()), dtype=np.int64)
    won, done = _play_kernel(pits, m, b, harvests)
    moves = tuple(harvests[:done].tolist())
    if not won:
        return Loss(Position(tuple(pits.tolist()), pos.pocketed + done), moves)
    return MoveTrace(moves, tuple(m.tolist()), tuple(b.tolist()))


def backward_step(pos: Position) -> Position:
    """Fill the first empty pit ``i`` with ``i`` stones, taking one from each lower pit.

    Total is raised by exactly one. Only meaningful on winning positions,
    where every pit below the first empty one is non-empty.
    """
    out = []
    carry = 1
    rest = list(pos.pits)
    for idx, x in enumerate(rest):
        if x == 0:
            out.append(carry)
            out.extend(rest[idx + 1:])
            break
        out.append(x - 1)
        carry += 1
    else:
        out.append(carry)
    return Position(tuple(out), pos.pocketed)


class WinningStream:
    """Mutable backward generator over the winning positions s = 0, 1, 2, ...

    Memory is proportional to the current position length.
    """

    __slots__ = ("_pits", "s")

    def __init__(self):
        self._pits = [0, 0]  # trailing slots are always zero
        self.s = 0

    @classmethod
    def from_pits(cls, pits: Sequence[int], s: int) -> "WinningStream":
        """Resume from a known winning position holding ``s`` stones."""
        stream = cls()
        stream._pits = list(pits) + [0, 0]
        stream.s = s
        return stream

    def step(self) -> int:
        """Advance one stone and return the pit that was refilled."""
        pits = self._pits
        i = 0
        while pits[i]:
            pits[i] -= 1
            i += 1
        pits[i] = i + 1
        if i + 1 == len(pits):
            pits.append(0)
        self.s += 1
        return i + 1

    def advance(self, count: int) -> "WinningStream":
        """Take ``count`` backward steps without reporting refill pits."""
        if count <= 0:
            return self
        pits = self._pits
        if self.s % 2:
            self.step()
            count -= 1
        # an odd step only fills pit 1, and the even step after it empties pit 1
        # again before carrying on, so each pair is one scan starting at pit 2
        pairs, odd = divmod(count, 2)
        for _ in range(pairs):
            i = 1
            while pits[i]:
                pits[i] -= 1
                i += 1
            pits[i] = i + 1
            if i + 1 == len(pits):
                pits.append(0)
        self.s += 2 * pairs
        if odd:
            self.step()
        return self

    def prefix(self, i: int) -> tuple[int, ...]:
        pits = self._pits
        if i <= len(pits):
            return tuple(pits[:i])
        return tuple(pits) + (0,) * (i - len(pits))

    def __len__(self) -> int:
        k = len(self._pits)
        while k and self._pits[k - 1] == 0:
            k -= 1
        return k

    def position(self) -> Position:
        return Position(tuple(self._pits))

    @property
    def buffer_size(self) -> int:
        return len(self._pits)


def iter_winning(stop: Optional[int] = None) -> Iterator[Position]:
    """Yield the winning positions for s = 0, 1, ... (up to and including ``stop``)."""
    stream = WinningStream()
    yield stream.position()
    while stop is None or stream.s < stop:
        stream.step()
        yield stream.position()


_BLOCK = 256
_MAX_CHECKPOINTS = 2048
_checkpoints: dict[int, tuple[int, ...]] = {0: ()}
_checkpoint_lock = threading.Lock()


def generate(s: int) -> Position:
    """The unique winning position holding ``s`` stones.

    Built by backward steps from the empty board, resuming from the nearest
    cached position at a multiple of 256 stones (cached for s < 2**19).
    """
    if s < 0:
        raise ValueError("stone count must be non-negative")
    block = s // _BLOCK
    with _checkpoint_lock:
        base = min(block, len(_checkpoints) - 1)
        while base not in _checkpoints:
            base -= 1
        start = _checkpoints[base]
    stream = WinningStream.from_pits(start, base * _BLOCK)
    for c in range(base + 1, block + 1):
        stream.advance(_BLOCK)
        if c < _MAX_CHECKPOINTS:
            with _checkpoint_lock:
                _checkpoints.setdefault(c, stream.position().pits)
    stream.advance(s - stream.s)
    return stream.position()


def generate_direct(s: int) -> Position:
    """Winning position computed pit by pit without playing any moves.

    With ``d`` stones still to pass pit ``i`` on their way to the Roumba,
    pit ``i`` is harvested ``m`` times, so it must start with
    ``(i + 1) * m - d`` stones, which pins its content to ``-d mod (i + 1)``.
    Used as an independent oracle for `generate`.
    """
    if s < 0:
        raise ValueError("stone count must be non-negative")
    pits = []
    d = s
    i = 1
    while d:
        p = -d % (i + 1)
        d -= (d + p) // (i + 1)
        pits.append(p)
        i += 1
    return Position(tuple(pits))


def is_winnable(pos: Position) -> bool:
    return Position(pos.pits) == generate(pos.total)
