"""
Overpartitions into ``k`` parts with largest part at most ``n - 1``, where a
part ``j`` repeats at most ``j`` times, or ``j - 1`` times besides its
overlined copy.  Weight is unconstrained.

Text form lists parts in decreasing order, overlined copy first:
``(3', 3)``, ``(2, 1)``, ``()``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from .errors import InvalidArgumentError
from .lattice_paths import LatticePath, Step, _as_path, is_valid_path
from .permutations import check_cap

__all__ = [
    "Overpartition", "is_valid_overpartition", "enumerate_overpartitions",
    "path_to_overpartition", "overpartition_to_path",
]


@dataclass(frozen=True)
class Overpartition:
    """``counts[v]`` plain copies of part ``v`` plus one overlined copy when
    ``v in overlined``.  Zero counts are dropped so equal objects compare equal.
    """
    counts: tuple[tuple[int, int], ...] = ()
    overlined: frozenset[int] = frozenset()

    def __post_init__(self):
        counts = dict(self.counts)
        for v, c in counts.items():
            if v < 1 or c < 0:
                raise InvalidArgumentError(f"bad part {v} with multiplicity {c}")
        if any(v < 1 for v in self.overlined):
            raise InvalidArgumentError("overlined parts must be positive")
        object.__setattr__(self, "counts", tuple(sorted((v, c) for v, c in counts.items() if c)))
        object.__setattr__(self, "overlined", frozenset(self.overlined))

    @classmethod
    def from_parts(cls, parts) -> Overpartition:
        """Build from ``[(value, is_overlined), ...]`` in any order."""
        counts: dict[int, int] = {}
        over: set[int] = set()
        for v, flag in parts:
            if flag:
                if v in over:
                    raise InvalidArgumentError(f"part {v} is overlined twice")
                over.add(v)
            else:
                counts[v] = counts.get(v, 0) + 1
        return cls(tuple(counts.items()), frozenset(over))

    @classmethod
    def parse(cls, text: str) -> Overpartition:
        body = text.strip()
        if body.startswith("(") and body.endswith(")"):
            body = body[1:-1]
        parts = []
        for tok in (t.strip() for t in body.split(",")):
            if not tok:
                continue
            flag = tok.endswith("'") or tok.startswith("~")
            digits = tok.strip("'~")
            if not digits.isdigit():
                raise InvalidArgumentError(f"cannot parse part {tok!r}")
            parts.append((int(digits), flag))
        return cls.from_parts(parts)

    def count(self, v: int) -> int:
        """Plain multiplicity c_v."""
        return dict(self.counts).get(v, 0)

    def parts(self) -> list[tuple[int, bool]]:
        """Canonical order: decreasing, overlined copy before plain copies."""
        values = sorted({v for v, _ in self.counts} | self.overlined, reverse=True)
        out: list[tuple[int, bool]] = []
        for v in values:
            if v in self.overlined:
                out.append((v, True))
            out.extend([(v, False)] * self.count(v))
        return out

    @property
    def num_parts(self) -> int:
        return sum(c for _, c in self.counts) + len(self.overlined)

    @property
    def weight(self) -> int:
        return sum(v * c for v, c in self.counts) + sum(self.overlined)

    @property
    def largest(self) -> int:
        return max([v for v, _ in self.counts] + list(self.overlined), default=0)

    def __str__(self) -> str:
        return "(" + ", ".join(f"{v}'" if f else str(v) for v, f in self.parts()) + ")"


def is_valid_overpartition(q: Overpartition, n: int, k: int) -> bool:
    if q.num_parts != k or q.largest > n - 1:
        return False
    for v in set(dict(q.counts)) | q.overlined:
        limit = v - 1 if v in q.overlined else v
        if q.count(v) > limit:
            return False
    return True


def enumerate_overpartitions(n: int, k: int, cap: Optional[int] = None) -> Iterator[Overpartition]:
    """Each valid overpartition once.

    Parts are chosen from the largest value down; for each value the overlined
    choice comes first, then plain multiplicities in decreasing order.
    """
    if n < 1:
        raise InvalidArgumentError(f"n must be positive, got {n}")
    check_cap(n, cap)
    if k < 0:
        return iter(())
    return _overpartition_stream(n, k)


def _overpartition_stream(n: int, k: int) -> Iterator[Overpartition]:
    chosen: list[tuple[int, int, bool]] = []

    def room(v: int) -> int:
        # most parts values 1..v can still hold
        return v * (v + 1) // 2

    def rec(v: int, left: int):
        if left == 0:
            yield Overpartition(tuple((u, c) for u, c, _ in chosen),
                                frozenset(u for u, _, o in chosen if o))
            return
        if v == 0 or room(v) < left:
            return
        for over in (True, False):
            limit = v - 1 if over else v
            for c in range(min(limit, left - over), -1, -1):
                chosen.append((v, c, over))
                yield from rec(v - 1, left - c - over)
                chosen.pop()

    return rec(n - 1, k)


def path_to_overpartition(path) -> Overpartition:
    """North steps in column ``j`` give plain parts ``j``; a diagonal into
    column ``j`` gives the overlined part ``j``.
    """
    path = _as_path(path)
    if not is_valid_path(path):
        raise InvalidArgumentError(f"path {path} violates the column budget")
    counts: dict[int, int] = {}
    over = set()
    col = 0
    for s in path.steps:
        if s is Step.N:
            counts[col] = counts.get(col, 0) + 1
        else:
            col += 1
            if s is Step.NE:
                over.add(col)
    return Overpartition(tuple(counts.items()), frozenset(over))


def overpartition_to_path(q: Overpartition, n: int) -> LatticePath:
    if not is_valid_overpartition(q, n, q.num_parts):
        raise InvalidArgumentError(f"{q} is not a valid overpartition for n={n}")
    steps: list[Step] = []
    for j in range(1, n):
        steps.append(Step.NE if j in q.overlined else Step.E)
        steps.extend([Step.N] * q.count(j))
    return LatticePath(tuple(steps))
