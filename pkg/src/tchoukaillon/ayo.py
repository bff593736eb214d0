"""Ayo on a board of 2n pits, and determined endgames.

Pits are numbered n+1, n, ..., 1, 0, -1, ..., -n+2 in sowing order, which
wraps from -n+2 back to n+1. South owns pits n+1..2 and North owns pits
1..-n+2, so pits 1..n+1 line up with Tchoukaillon pits 1..n+1 and North's
pit 0 plays the part of the Roumba.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Mapping, Optional

from . import core

__all__ = [
    "SOUTH",
    "NORTH",
    "AyoBoard",
    "TurnRecord",
    "PlayoutReport",
    "Correspondence",
    "AyoError",
    "EmptyPit",
    "WrongSide",
    "MustFeed",
    "GameOver",
    "NotRealizable",
    "DeterminedViolation",
    "pit_numbers",
    "owner",
    "legal_moves",
    "ayo_move",
    "play_turn",
    "build_determined",
    "determined_playout",
    "correspondence_check",
    "max_determined_stones",
]

SOUTH = "S"
NORTH = "N"


class AyoError(ValueError):
    pass


class EmptyPit(AyoError):
    pass


class WrongSide(AyoError):
    pass


class MustFeed(AyoError):
    """The move leaves the opponent without stones although another move would not."""


class GameOver(AyoError):
    pass


class NotRealizable(AyoError):
    def __init__(self, s: int, n: int, needed: int):
        self.s, self.n, self.needed = s, n, needed
        self.max_stones = max_determined_stones(n)
        super().__init__(
            f"{s} stones need pit {needed} but a {2 * n}-pit board stops at pit {n + 1} "
            f"(max {self.max_stones} stones)"
        )


class DeterminedViolation(AssertionError):
    def __init__(self, rule: str, turn: int, detail: str = ""):
        self.rule, self.turn = rule, turn
        super().__init__(f"turn {turn}: {rule}" + (f" ({detail})" if detail else ""))


def pit_numbers(n: int) -> tuple[int, ...]:
    """Pit numbers in sowing order, n+1 down to -n+2."""
    return tuple(range(n + 1, -n + 1, -1))


def owner(pit: int) -> str:
    return SOUTH if pit >= 2 else NORTH


def _other(side: str) -> str:
    return NORTH if side == SOUTH else SOUTH


@dataclass(frozen=True)
class AyoBoard:
    n: int
    cells: tuple[int, ...]  # cells[k] holds pit n + 1 - k
    to_move: str = NORTH
    captured_S: int = 0
    captured_N: int = 0
    awarded_S: int = 0
    awarded_N: int = 0
    over: bool = False

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a board needs n >= 1")
        if len(self.cells) != 2 * self.n:
            raise ValueError(f"expected {2 * self.n} pits, got {len(self.cells)}")
        if any(x < 0 for x in self.cells):
            raise ValueError("negative stone count")
        if self.to_move not in (SOUTH, NORTH):
            raise ValueError(f"unknown player {self.to_move!r}")

    @classmethod
    def from_pits(cls, n: int, pits: Mapping[int, int], to_move: str = NORTH) -> "AyoBoard":
        numbers = pit_numbers(n)
        unknown = set(pits) - set(numbers)
        if unknown:
            raise KeyError(f"no pits {sorted(unknown)} on a {2 * n}-pit board")
        return cls(n, tuple(pits.get(p, 0) for p in numbers), to_move)

    def index(self, pit: int) -> int:
        k = self.n + 1 - pit
        if not 0 <= k < 2 * self.n:
            raise KeyError(f"no pit {pit} on a {2 * self.n}-pit board")
        return k

    def __getitem__(self, pit: int) -> int:
        return self.cells[self.index(pit)]

    def side_pits(self, side: str) -> tuple[int, ...]:
        return tuple(p for p in pit_numbers(self.n) if owner(p) == side)

    def census(self, side: str) -> int:
        return sum(self[p] for p in self.side_pits(side))

    @property
    def on_board(self) -> int:
        return sum(self.cells)

    @property
    def conserved(self) -> int:
        return self.on_board + self.captured_S + self.captured_N + self.awarded_S + self.awarded_N

    @property
    def odu_threshold(self) -> int:
        return 2 * self.n

    def projection(self) -> core.Position:
        """Pits 1..n+1 read as a Tchoukaillon position."""
        return core.Position(tuple(self[p] for p in range(1, self.n + 2)))


@dataclass(frozen=True)
class TurnRecord:
    mover: str
    pit: int
    sown: tuple[int, ...]
    captured: int
    odu: bool
    north_census: int  # after sowing and capture, before any end-of-game award
    awarded: int
    board: AyoBoard


def _sow(board: AyoBoard, pit: int) -> tuple[list[int], tuple[int, ...], int, bool]:
    # returns (cells, sown pits, stones captured, was an Odu)
    size = 2 * board.n
    cells = list(board.cells)
    start = board.index(pit)
    stones = cells[start]
    odu = stones >= size
    cells[start] = 0
    k = start
    sown = []
    while stones:
        k = (k + 1) % size
        if odu and k == start:
            continue
        cells[k] += 1
        stones -= 1
        sown.append(board.n + 1 - k)

    mover = owner(pit)
    captured = 0
    k = board.index(sown[-1])
    # walk back from the last pit while it is the opponent's and holds 2 or 3
    while owner(board.n + 1 - k) != mover and cells[k] in (2, 3):
        captured += cells[k]
        cells[k] = 0
        k = (k - 1) % size
    return cells, tuple(sown), captured, odu


def _feeds(board: AyoBoard, pit: int) -> bool:
    cells, _, _, _ = _sow(board, pit)
    opponent = _other(owner(pit))
    return any(cells[k] for k, p in enumerate(pit_numbers(board.n)) if owner(p) == opponent)


def legal_moves(board: AyoBoard) -> tuple[int, ...]:
    """Pits the player to move may sow, honouring the rule that the opponent must be fed."""
    if board.over:
        return ()
    moves = tuple(p for p in board.side_pits(board.to_move) if board[p])
    feeding = tuple(p for p in moves if _feeds(board, p))
    return feeding or moves


def play_turn(board: AyoBoard, pit: int) -> TurnRecord:
    """Sow ``pit`` for the player to move, capture, and pass the turn.

    When the move leaves the opponent without stones the game ends and the
    mover takes whatever is left on the board.
    """
    if board.over:
        raise GameOver("the game is over")
    mover = board.to_move
    if owner(pit) != mover:
        raise WrongSide(f"pit {pit} does not belong to {mover}")
    if board[pit] == 0:
        raise EmptyPit(f"pit {pit} is empty")
    if pit not in legal_moves(board):
        raise MustFeed(f"pit {pit} leaves the opponent without a move")

    cells, sown, captured, odu = _sow(board, pit)
    tallies = {"captured_S": board.captured_S, "captured_N": board.captured_N,
               "awarded_S": board.awarded_S, "awarded_N": board.awarded_N}
    tallies["captured_" + mover] += captured
    opponent = _other(mover)
    after = replace(board, cells=tuple(cells), to_move=opponent, **tallies)
    census = after.census(NORTH)
    awarded = 0
    if after.census(opponent) == 0:
        awarded = after.on_board
        tallies["awarded_" + mover] += awarded
        after = replace(after, cells=(0,) * len(cells), over=True, **tallies)
    return TurnRecord(mover, pit, sown, captured, odu, census, awarded, after)


def ayo_move(board: AyoBoard, pit: int) -> AyoBoard:
    return play_turn(board, pit).board


def build_determined(s: int, n: int) -> AyoBoard:
    """Ayo board whose pits 1..n+1 hold the winning Tchoukaillon position for ``s``.

    For odd ``s`` North's single stone is in pit 1 and North moves. For even
    ``s`` pit 1 is empty, so North's stone sits in pit 0 and South moves; that
    board therefore holds ``s + 1`` stones.
    """
    if s < 1:
        raise ValueError("a determined position needs at least one stone")
    if n < 2:
        raise ValueError("the board needs pit 0, so n >= 2")
    pos = core.generate(s)
    if len(pos) > n + 1:
        raise NotRealizable(s, n, len(pos))
    pits = {i: pos[i] for i in range(1, len(pos) + 1)}
    if s % 2:
        return AyoBoard.from_pits(n, pits, NORTH)
    pits[0] = 1
    return AyoBoard.from_pits(n, pits, SOUTH)


@dataclass(frozen=True)
class PlayoutReport:
    s: int
    n: int
    start: AyoBoard
    turns: tuple[TurnRecord, ...]
    captured_S: int
    awarded_N: int
    odu_encountered: bool

    @property
    def board_stones(self) -> int:
        return self.start.on_board

    @property
    def south_harvests(self) -> tuple[int, ...]:
        return tuple(t.pit for t in self.turns if t.mover == SOUTH)


def _south_choice(board: AyoBoard) -> Optional[int]:
    for pit in range(2, board.n + 2):
        if board[pit] == pit:
            return pit
    return None


def determined_playout(s: int, n: int) -> PlayoutReport:
    """Play the determined endgame and check every condition of being determined.

    North always has a single stone to move; South sows the smallest pit
    holding exactly its own number of stones. Raises `DeterminedViolation`
    naming the first broken condition.
    """
    board = start = build_determined(s, n)
    turns = []
    while not board.over:
        t = len(turns) + 1
        if board.census(NORTH) != 1:
            raise DeterminedViolation("North holds exactly one stone", t,
                                      f"{board.census(NORTH)} stones")
        if board.to_move == NORTH:
            pit = next(p for p in board.side_pits(NORTH) if board[p])
            if pit != 1:
                raise DeterminedViolation("North's stone is in pit 1 when North moves", t,
                                          f"found in pit {pit}")
        else:
            if board[0] != 1:
                raise DeterminedViolation("North's stone is in pit 0 when South moves", t)
            pit = _south_choice(board)
            if pit is None:
                raise DeterminedViolation("South captures at every turn", t, "no pit to sow")
            if board[pit] >= board.odu_threshold:
                raise DeterminedViolation("no move from an Odu", t, f"pit {pit}")
        try:
            rec = play_turn(board, pit)
        except AyoError as exc:
            raise DeterminedViolation("legal move", t, str(exc)) from exc
        if rec.mover == SOUTH and rec.captured == 0:
            raise DeterminedViolation("South captures at every turn", t)
        if rec.mover == NORTH and rec.captured:
            raise DeterminedViolation("North never captures", t)
        if rec.north_census != 1:
            raise DeterminedViolation("North holds one stone after every turn", t,
                                      f"{rec.north_census} stones")
        turns.append(rec)
        board = rec.board

    if board.captured_N or board.awarded_S or board.awarded_N != 1 \
            or board.captured_S != start.on_board - 1:
        raise DeterminedViolation(
            "all stones but one are captured by South and one is awarded to North",
            len(turns),
            f"S captured {board.captured_S}, N awarded {board.awarded_N}",
        )
    return PlayoutReport(s, n, start, tuple(turns), board.captured_S, board.awarded_N,
                         any(t.odu for t in turns))


@dataclass(frozen=True)
class Correspondence:
    ok: bool
    turn: Optional[int] = None
    ayo: Optional[core.Position] = None
    tchoukaillon: Optional[core.Position] = None

    def __bool__(self) -> bool:
        return self.ok


def correspondence_check(s: int, n: int) -> Correspondence:
    """Compare every Ayo position of the determined playout, seen on pits 1..n+1,
    with the matching Tchoukaillon position of the winning playout."""
    if s == 0:
        return Correspondence(True)
    report = determined_playout(s, n)
    pos = core.generate(s)
    trace = core.play_out(pos)
    if not trace.won or len(trace.harvests) != len(report.turns):
        return Correspondence(False, 0, report.start.projection(), pos)
    boards = [report.start] + [t.board for t in report.turns]
    tch = core.Position(pos.pits)
    for t, board in enumerate(boards):
        if t:
            harvested = trace.harvests[t - 1]
            if report.turns[t - 1].pit != harvested:
                return Correspondence(False, t, board.projection(), tch)
            tch = core.Position(core.harvest(tch, harvested).pits)
        # the closing award only clears North's pit 0, outside pits 1..n+1
        if board.projection() != tch:
            return Correspondence(False, t, board.projection(), tch)
    return Correspondence(True)


def max_determined_stones(n: int) -> int:
    """Largest s whose winning position fits in pits 1..n+1."""
    from .sieve import s_of_n

    if n < 1:
        raise ValueError("n must be >= 1")
    return s_of_n(n + 2)(n + 2) - 1
