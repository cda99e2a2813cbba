"""
Lattice paths from (0, 0) to (n-1, k) with East, North and diagonal
North-East steps, where column ``j`` may hold at most ``j`` North steps, or
``j - 1`` when the path entered column ``j`` diagonally.

Paths are written as strings over ``E``, ``N`` and ``D`` (``D`` for the
diagonal), e.g. ``ENDNDNN``.  Reading a path column by column builds an
overlined permutation by insertion:

* entering column ``j`` by ``E`` appends ``j+1`` at the right end,
* entering by ``D`` inserts an overlined ``j+1`` one slot from the right end,
* each ``N`` in column ``j`` pushes ``j+1`` one more slot to the left.

>>> str(path_to_perm(LatticePath.parse("ENDNDNN")))
"4' 3' 2 1"
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator, Optional

from .errors import InvalidArgumentError, NoCommonVertexError
from .permutations import OverlinedPermutation, check_cap, format_word, m_stats

__all__ = [
    "Step", "LatticePath", "is_valid_path", "count_paths", "enumerate_paths",
    "path_to_perm", "path_to_perm_trace", "perm_to_path", "sagan_switch",
    "random_intersecting_pairs",
]


class Step(enum.Enum):
    E = "E"
    N = "N"
    NE = "D"

    @property
    def delta(self) -> tuple[int, int]:
        return _DELTAS[self]


_DELTAS = {Step.E: (1, 0), Step.N: (0, 1), Step.NE: (1, 1)}
_ORDER = (Step.E, Step.N, Step.NE)


@dataclass(frozen=True)
class LatticePath:
    """A step sequence. The level constraint is *not* enforced here; see
    :func:`is_valid_path`.
    """
    steps: tuple[Step, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(_coerce_step(s) for s in self.steps))

    @classmethod
    def parse(cls, text: str) -> LatticePath:
        cleaned = text.replace(",", " ").split()
        # accept both "ENDN" and "E, N, NE, N"
        tokens: list[str] = []
        for chunk in cleaned:
            tokens.extend([chunk] if chunk == "NE" else list(chunk))
        return cls(tuple(_coerce_step(t) for t in tokens))

    @property
    def n(self) -> int:
        return 1 + sum(s is not Step.N for s in self.steps)

    @property
    def k(self) -> int:
        return sum(s is not Step.E for s in self.steps)

    def vertices(self, start: tuple[int, int] = (0, 0)) -> list[tuple[int, int]]:
        x, y = start
        out = [(x, y)]
        for s in self.steps:
            dx, dy = s.delta
            x, y = x + dx, y + dy
            out.append((x, y))
        return out

    def __len__(self) -> int:
        return len(self.steps)

    def __str__(self) -> str:
        return "".join(s.value for s in self.steps)


def _coerce_step(s) -> Step:
    if isinstance(s, Step):
        return s
    if s == "NE":
        return Step.NE
    try:
        return Step(s)
    except ValueError:
        raise InvalidArgumentError(f"unknown step {s!r}; expected E, N, D or NE") from None


def _as_path(p) -> LatticePath:
    return p if isinstance(p, LatticePath) else LatticePath(tuple(p))


def is_valid_path(steps) -> bool:
    """Check the per-column North budget along the whole path."""
    column, used, budget = 0, 0, 0
    for s in _as_path(steps).steps:
        if s is Step.N:
            used += 1
            if used > budget:
                return False
        else:
            column += 1
            used = 0
            budget = column if s is Step.E else column - 1
    return True


def count_paths(n: int, k: int) -> int:
    """Number of valid paths to (n-1, k), by a column sweep.

    ``ways[flag][h]`` counts partial paths that just entered the current
    column at height ``h``, ``flag`` recording a diagonal entry.
    """
    if n < 1 or k < 0:
        return 0
    ways = [[0] * (k + 1), [0] * (k + 1)]
    ways[0][0] = 1
    for col in range(n):
        # spend the North budget of this column
        settled = [0] * (k + 1)
        for flag in (0, 1):
            budget = col - flag if col else 0
            for h, w in enumerate(ways[flag]):
                if w:
                    for c in range(min(budget, k - h) + 1):
                        settled[h + c] += w
        if col == n - 1:
            return settled[k]
        ways = [settled, [0] + settled[:-1]]
    return 0


def enumerate_paths(n: int, k: int, cap: Optional[int] = None) -> Iterator[LatticePath]:
    """Every valid path to (n-1, k), lexicographic with E < N < NE."""
    if n < 1:
        raise InvalidArgumentError(f"n must be positive, got {n}")
    check_cap(n, cap)
    if k < 0:
        return iter(())
    return _path_stream(n, k)


def _path_stream(n: int, k: int) -> Iterator[LatticePath]:
    last = n - 1
    # most North steps still reachable from column c onwards (entering c+1.. fresh)
    tail = [0] * (n + 1)
    for c in range(last - 1, -1, -1):
        tail[c] = tail[c + 1] + (c + 1)

    steps: list[Step] = []

    def walk(col: int, height: int, used: int, budget: int):
        if col == last and height == k:
            yield LatticePath(tuple(steps))
        for s in _ORDER:
            if s is Step.N:
                if used >= budget or height + 1 > k:
                    continue
                nxt = (col, height + 1, used + 1, budget)
            else:
                if col == last:
                    continue
                dy = 1 if s is Step.NE else 0
                nb = col + 1 - dy
                nxt = (col + 1, height + dy, 0, nb)
            c2, h2, u2, b2 = nxt
            if h2 > k or h2 + (b2 - u2) + tail[c2] < k:
                continue
            steps.append(s)
            yield from walk(*nxt)
            steps.pop()

    return walk(0, 0, 0, 0)


def _insertion_states(path: LatticePath) -> Iterator[tuple[list[int], list[bool]]]:
    word, flags = [1], [False]
    yield word, flags
    pos = 0  # index of the entry inserted last
    for s in path.steps:
        if s is Step.N:
            if pos == 0:
                raise InvalidArgumentError(f"path {path} pushes an entry past the left end")
            word[pos - 1], word[pos] = word[pos], word[pos - 1]
            flags[pos - 1], flags[pos] = flags[pos], flags[pos - 1]
            pos -= 1
        else:
            value = len(word) + 1
            pos = len(word) if s is Step.E else len(word) - 1
            word.insert(pos, value)
            flags.insert(pos, s is Step.NE)
        yield word, flags


def path_to_perm(path) -> OverlinedPermutation:
    """Permutation read off a valid path by the insertion rules above."""
    path = _as_path(path)
    if not is_valid_path(path):
        raise InvalidArgumentError(f"path {path} violates the column budget")
    for word, flags in _insertion_states(path):
        pass
    return OverlinedPermutation(tuple(word), tuple(flags))


def path_to_perm_trace(path) -> list[str]:
    """Partial permutation at every vertex of the path, in text form."""
    path = _as_path(path)
    if not is_valid_path(path):
        raise InvalidArgumentError(f"path {path} violates the column budget")
    return [format_word(w, f) for w, f in _insertion_states(path)]


def perm_to_path(p: OverlinedPermutation) -> LatticePath:
    """Inverse of :func:`path_to_perm`.

    Value ``j+1`` contributes its entering step (``D`` when overlined) and
    then the rest of its ``m[j]`` inversions as North steps.
    """
    m = m_stats(p).m
    steps: list[Step] = []
    for j in range(1, p.n):
        if p.is_overlined(j + 1):
            steps.append(Step.NE)
            steps.extend([Step.N] * (m[j] - 1))
        else:
            steps.append(Step.E)
            steps.extend([Step.N] * m[j])
    return LatticePath(tuple(steps))


def sagan_switch(p1, p2, start1: tuple[int, int] = (0, 0),
                 start2: tuple[int, int] = (0, 1)) -> tuple[LatticePath, LatticePath]:
    """Exchange the tails of two paths after their last common vertex.

    By default the second path starts one unit above the first.  The result
    paths keep their own start points; applying the switch twice is the
    identity.
    """
    p1, p2 = _as_path(p1), _as_path(p2)
    v1, v2 = p1.vertices(start1), p2.vertices(start2)
    common = set(v1) & set(v2)
    if not common:
        raise NoCommonVertexError(f"paths {p1} from {start1} and {p2} from {start2} are disjoint")
    # x + y strictly increases along a path, so "last" is the same for both
    v0 = max(common, key=lambda v: (v[0] + v[1], v))
    i, j = v1.index(v0), v2.index(v0)
    return (LatticePath(p1.steps[:i] + p2.steps[j:]),
            LatticePath(p2.steps[:j] + p1.steps[i:]))


def random_intersecting_pairs(rng, count: int, n_max: int = 6,
                              start2: tuple[int, int] = (0, 1)) -> list[tuple[LatticePath, LatticePath]]:
    """``count`` pairs of valid paths (n <= n_max) that meet when the second
    starts at ``start2``.  ``rng`` is a :class:`random.Random`.
    """
    pools = {n: [p for k in range(n * (n - 1) // 2 + 1) for p in _path_stream(n, k)]
             for n in range(2, n_max + 1)}
    out = []
    while len(out) < count:
        n = rng.randint(2, n_max)
        p1, p2 = rng.choice(pools[n]), rng.choice(pools[n])
        if set(p1.vertices()) & set(p2.vertices(start2)):
            out.append((p1, p2))
    return out
