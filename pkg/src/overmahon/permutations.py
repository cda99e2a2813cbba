"""
Overlined permutations: one-line words over [n] where any entry that heads an
inversion (has a smaller entry somewhere to its right) may carry an overline.

Text form is space separated with an apostrophe marking an overlined entry,
``3' 2' 4' 5' 1``.  ``~3`` is accepted on input as an alias for ``3'``.

This module doubles as the brute-force oracle the rest of the package is
checked against.
"""

from __future__ import annotations

import functools
import itertools
import os
from collections import Counter
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .errors import InvalidArgumentError, ResourceLimitError

__all__ = [
    "DEFAULT_CAP", "default_cap", "check_cap", "OverlinedPermutation", "MStats",
    "parse_perm", "format_word", "inversions", "is_valid", "heads", "m_stats",
    "backward", "backward_inversions", "enumerate_bprime", "count_by_enumeration",
    "distribution_by_flags", "distribution_by_weights",
]

DEFAULT_CAP = 8


def default_cap() -> int:
    """Enumeration cap: ``OVERMAHON_CAP`` if set, else 8."""
    raw = os.environ.get("OVERMAHON_CAP")
    if raw is None:
        return DEFAULT_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise InvalidArgumentError(f"OVERMAHON_CAP must be an integer, got {raw!r}") from None
    if cap < 1:
        raise InvalidArgumentError("OVERMAHON_CAP must be at least 1")
    return cap


def check_cap(n: int, cap: Optional[int] = None) -> None:
    cap = default_cap() if cap is None else cap
    if n > cap:
        raise ResourceLimitError(n, cap)


def _check_word(word: Sequence[int]) -> None:
    if sorted(word) != list(range(1, len(word) + 1)):
        raise InvalidArgumentError(f"{list(word)} is not a permutation of 1..{len(word)}")


def heads(word: Sequence[int]) -> list[bool]:
    """For each position, whether some later entry is smaller."""
    out = [False] * len(word)
    smallest = None
    for i in range(len(word) - 1, -1, -1):
        if smallest is not None and word[i] > smallest:
            out[i] = True
        smallest = word[i] if smallest is None else min(smallest, word[i])
    return out


def is_valid(word: Sequence[int], overlined: Sequence[bool]) -> bool:
    """True iff every overlined position heads at least one inversion.

    ``word`` must be a permutation of 1..n; anything else is an error.
    """
    _check_word(word)
    if len(overlined) != len(word):
        raise InvalidArgumentError("word and overline flags differ in length")
    return all(h or not f for h, f in zip(heads(word), overlined))


def format_word(word: Sequence[int], overlined: Sequence[bool]) -> str:
    """Apostrophe text form; works for intermediate words that are not valid."""
    return " ".join(f"{v}'" if f else str(v) for v, f in zip(word, overlined))


@dataclass(frozen=True, order=True)
class OverlinedPermutation:
    """A member of B'_n. Construction validates both the word and the flags."""
    word: tuple[int, ...]
    overlined: tuple[bool, ...]

    def __post_init__(self):
        word = tuple(int(v) for v in self.word)
        flags = tuple(bool(f) for f in self.overlined)
        object.__setattr__(self, "word", word)
        object.__setattr__(self, "overlined", flags)
        if not is_valid(word, flags):
            bad = [i for i, (h, f) in enumerate(zip(heads(word), flags)) if f and not h]
            raise InvalidArgumentError(
                f"position {bad[0] + 1} (entry {word[bad[0]]}) is overlined "
                f"but heads no inversion")

    @classmethod
    def plain(cls, word: Sequence[int]) -> OverlinedPermutation:
        return cls(tuple(word), (False,) * len(word))

    @classmethod
    def from_text(cls, text: str) -> OverlinedPermutation:
        return parse_perm(text)

    @property
    def n(self) -> int:
        return len(self.word)

    def is_overlined(self, value: int) -> bool:
        """Flag of the entry whose value is ``value`` (1-based)."""
        return self.overlined[self.word.index(value)]

    def __str__(self) -> str:
        return format_word(self.word, self.overlined)


def parse_perm(text: str) -> OverlinedPermutation:
    """Parse ``"3' 2' 4' 5' 1"`` (or ``"~3 ~2 ~4 ~5 1"``).

    Errors name the 1-based token position that failed.
    """
    tokens = text.replace(",", " ").split()
    if not tokens:
        raise InvalidArgumentError("empty permutation")
    word, flags = [], []
    for pos, tok in enumerate(tokens, 1):
        flag = False
        if tok.startswith("~"):
            tok, flag = tok[1:], True
        elif tok.endswith("'"):
            tok, flag = tok[:-1], True
        if not tok.isdigit():
            raise InvalidArgumentError(f"token {pos} ({tokens[pos - 1]!r}) is not an entry")
        word.append(int(tok))
        flags.append(flag)
    try:
        _check_word(word)
    except InvalidArgumentError:
        seen = set()
        for pos, v in enumerate(word, 1):
            if v < 1 or v > len(word) or v in seen:
                raise InvalidArgumentError(
                    f"token {pos} ({v}) breaks the permutation of 1..{len(word)}") from None
            seen.add(v)
        raise
    return OverlinedPermutation(tuple(word), tuple(flags))


def inversions(p) -> int:
    """Number of pairs i < j with word[i] > word[j]; overlines do not matter.

    Accepts an :class:`OverlinedPermutation` or a bare word.
    """
    word = p.word if isinstance(p, OverlinedPermutation) else p
    return sum(1 for i, j in itertools.combinations(range(len(word)), 2) if word[i] > word[j])


@dataclass(frozen=True)
class MStats:
    """``m[i]`` is the number of inversions headed by the entry of value i+1."""
    m: tuple[int, ...]

    def m_of_value(self, v: int) -> int:
        return self.m[v - 1]

    def __len__(self) -> int:
        return len(self.m)

    def __getitem__(self, i: int) -> int:
        return self.m[i]

    @property
    def total(self) -> int:
        return sum(self.m)


def m_stats(p) -> MStats:
    """Per-value count of smaller entries lying to the right."""
    word = p.word if isinstance(p, OverlinedPermutation) else tuple(p)
    m = [0] * len(word)
    for i, v in enumerate(word):
        m[v - 1] = sum(1 for u in word[i + 1:] if u < v)
    return MStats(tuple(m))


def backward(p) -> tuple[int, ...]:
    """The reversed word; flags are dropped."""
    word = p.word if isinstance(p, OverlinedPermutation) else p
    return tuple(reversed(word))


def backward_inversions(p) -> int:
    """Pairs i < j with word[i] < word[j], i.e. C(n,2) minus the inversions."""
    word = p.word if isinstance(p, OverlinedPermutation) else p
    return sum(1 for i, j in itertools.combinations(range(len(word)), 2) if word[i] < word[j])


def enumerate_bprime(n: int, cap: Optional[int] = None) -> Iterator[OverlinedPermutation]:
    """Every member of B'_n once, ordered by word then flag bitmask.

    The bitmask reads position 0 as its most significant bit.
    """
    if n < 1:
        raise InvalidArgumentError(f"n must be positive, got {n}")
    check_cap(n, cap)
    return _bprime_stream(n)


def _bprime_stream(n: int) -> Iterator[OverlinedPermutation]:
    for word in itertools.permutations(range(1, n + 1)):
        head_pos = [i for i, h in enumerate(heads(word)) if h]
        h = len(head_pos)
        # subsets of head positions in increasing bitmask order
        for sub in range(1 << h):
            flags = [False] * n
            for b, pos in enumerate(head_pos):
                if sub >> (h - 1 - b) & 1:
                    flags[pos] = True
            yield OverlinedPermutation(word, tuple(flags))


def distribution_by_flags(n: int, cap: Optional[int] = None) -> list[int]:
    """Inversion distribution over B'_n by walking every flag variant."""
    counts = Counter(inversions(p) for p in enumerate_bprime(n, cap))
    return [counts[k] for k in range(n * (n - 1) // 2 + 1)]


def distribution_by_weights(n: int, cap: Optional[int] = None) -> list[int]:
    """Same distribution, weighting each plain permutation by 2^(#heads)."""
    if n < 1:
        raise InvalidArgumentError(f"n must be positive, got {n}")
    check_cap(n, cap)
    return list(_weighted(n))


@functools.lru_cache(maxsize=None)
def _weighted(n: int) -> tuple[int, ...]:
    dist = [0] * (n * (n - 1) // 2 + 1)
    for word in itertools.permutations(range(1, n + 1)):
        dist[inversions(word)] += 1 << sum(heads(word))
    return tuple(dist)


def count_by_enumeration(n: int, k: int, cap: Optional[int] = None) -> int:
    """Brute-force ``i(n, k)`` from plain permutations and their flag weights."""
    dist = distribution_by_weights(n, cap)
    return dist[k] if 0 <= k < len(dist) else 0
