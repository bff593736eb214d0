"""Tchoukaillon winning positions, their sieve and determined Ayo endgames."""

from .core import (
    Loss,
    MoveTrace,
    NotHarvestable,
    Position,
    WinningStream,
    backward_step,
    generate,
    generate_direct,
    harvest,
    is_harvestable,
    is_winnable,
    play_out,
    smallest_harvestable,
)

__version__ = "0.1.0"
