"""
Tilings of a board of length n + k - 1 by blue squares (``B``), red squares
(``R``) and two-cell black rectangles (``K``).

A black rectangle behaves like a blue square followed by a red one.  A run
of red squares may be as long as the number of blue-square equivalents
(``B`` and ``K`` tiles) to its left, one less when a ``K`` immediately
precedes it.  With ``#R + #K = k`` and ``#B + #K = n - 1`` these tilings are
counted by ``i(n, k)``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator, Optional

from .errors import InvalidArgumentError
from .lattice_paths import LatticePath, Step, _as_path, is_valid_path

__all__ = [
    "Tile", "Tiling", "is_valid_tiling", "enumerate_tilings", "count_tilings",
    "path_to_tiling", "tiling_to_path", "expand_black",
]


class Tile(enum.Enum):
    BLUE = "B"
    RED = "R"
    BLACK = "K"

    @property
    def width(self) -> int:
        return 2 if self is Tile.BLACK else 1


@dataclass(frozen=True)
class Tiling:
    tiles: tuple[Tile, ...] = ()

    def __post_init__(self):
        try:
            tiles = tuple(t if isinstance(t, Tile) else Tile(t) for t in self.tiles)
        except ValueError as exc:
            raise InvalidArgumentError(f"unknown tile in {self.tiles!r}: {exc}") from None
        object.__setattr__(self, "tiles", tiles)

    @classmethod
    def parse(cls, text: str) -> Tiling:
        return cls(tuple(text.strip()))

    @property
    def n(self) -> int:
        return 1 + sum(t is not Tile.RED for t in self.tiles)

    @property
    def k(self) -> int:
        return sum(t is not Tile.BLUE for t in self.tiles)

    @property
    def board_length(self) -> int:
        return sum(t.width for t in self.tiles)

    def __str__(self) -> str:
        return "".join(t.value for t in self.tiles)


def _run_budgets_ok(tiles) -> bool:
    blues = 0
    run = 0
    budget = 0
    for t in tiles:
        if t is Tile.RED:
            run += 1
            if run > budget:
                return False
        else:
            blues += 1
            run = 0
            budget = blues if t is Tile.BLUE else blues - 1
    return True


def is_valid_tiling(t: Tiling, n: Optional[int] = None, k: Optional[int] = None) -> bool:
    """Red-run rule, plus the tile counts and board length when ``n``/``k`` are given."""
    if n is not None and t.n != n:
        return False
    if k is not None and t.k != k:
        return False
    if n is not None and k is not None and t.board_length != n + k - 1:
        return False
    return _run_budgets_ok(t.tiles)


def enumerate_tilings(n: int, k: int) -> Iterator[Tiling]:
    """Lay tiles left to right, abandoning a prefix as soon as a red run
    outgrows its budget or the tile counts can no longer come out right.
    """
    if n < 1 or k < 0:
        return
    tiles: list[Tile] = []

    def rec(blue_eq: int, reds_eq: int, run: int, budget: int):
        # blue_eq: B+K placed, reds_eq: R+K placed
        if blue_eq == n - 1 and reds_eq == k:
            yield Tiling(tuple(tiles))
            return
        if blue_eq < n - 1:
            tiles.append(Tile.BLUE)
            yield from rec(blue_eq + 1, reds_eq, 0, blue_eq + 1)
            tiles.pop()
        if reds_eq < k and run < budget:
            tiles.append(Tile.RED)
            yield from rec(blue_eq, reds_eq + 1, run + 1, budget)
            tiles.pop()
        if blue_eq < n - 1 and reds_eq < k:
            tiles.append(Tile.BLACK)
            yield from rec(blue_eq + 1, reds_eq + 1, 0, blue_eq)
            tiles.pop()

    yield from rec(0, 0, 0, 0)


def count_tilings(n: int, k: int) -> int:
    """Size of the tiling class, by direct enumeration of tile sequences."""
    return sum(1 for _ in enumerate_tilings(n, k))


_STEP_TO_TILE = {Step.E: Tile.BLUE, Step.N: Tile.RED, Step.NE: Tile.BLACK}
_TILE_TO_STEP = {v: k for k, v in _STEP_TO_TILE.items()}


def path_to_tiling(path) -> Tiling:
    path = _as_path(path)
    if not is_valid_path(path):
        raise InvalidArgumentError(f"path {path} violates the column budget")
    return Tiling(tuple(_STEP_TO_TILE[s] for s in path.steps))


def tiling_to_path(t: Tiling) -> LatticePath:
    if not is_valid_tiling(t):
        raise InvalidArgumentError(f"tiling {t} breaks the red-run rule")
    return LatticePath(tuple(_TILE_TO_STEP[x] for x in t.tiles))


def expand_black(t: Tiling) -> Tiling:
    """Replace each black rectangle by a blue square followed by a red one."""
    out: list[Tile] = []
    for x in t.tiles:
        out.extend((Tile.BLUE, Tile.RED) if x is Tile.BLACK else (x,))
    return Tiling(tuple(out))
