"""
The over-Mahonian triangle ``i(n, k)``: the number of overlined permutations
of length ``n`` with exactly ``k`` inversions, where every entry heading at
least one inversion may independently carry an overline.

Rows are produced three independent ways (the additive recurrence, the
four-term recurrence and the product generating function), and a handful of
scalar identities are exposed for cross-checking them.

>>> row_by_recurrence(4)
[1, 6, 16, 26, 28, 20, 8]
>>> row_sum(5), double_factorial(9)
(945, 945)

Counts are plain Python ints, which are arbitrary precision already.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .errors import InvalidArgumentError, SubtractionUnderflowError

__all__ = [
    "max_inversions", "checked_sub", "DensePolynomial", "OverMahonianTriangle",
    "row_by_recurrence", "row_by_alt_recurrence", "row_by_genfun", "triangle",
    "row_sum", "double_factorial", "total_inversions_by_recursion",
    "total_inversions_by_moment", "CheckResult", "IdentityReport",
    "identity_suite",
]


def _require_positive(n) -> None:
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise InvalidArgumentError(f"n must be a positive integer, got {n!r}")


def max_inversions(n: int) -> int:
    """C(n, 2), the largest inversion count of a permutation of length n."""
    return n * (n - 1) // 2


def checked_sub(a: int, b: int) -> int:
    """Return ``a - b``, refusing to go below zero."""
    if b > a:
        raise SubtractionUnderflowError(f"{a} - {b} is negative")
    return a - b


@dataclass(frozen=True)
class DensePolynomial:
    """Polynomial in z with nonnegative integer coefficients, lowest degree first.

    The zero polynomial is stored as ``(0,)``; otherwise the last coefficient
    is nonzero.
    """
    coefficients: tuple[int, ...] = (0,)

    def __post_init__(self):
        coeffs = tuple(self.coefficients)
        if any(c < 0 for c in coeffs):
            raise InvalidArgumentError("coefficients must be nonnegative")
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        object.__setattr__(self, "coefficients", coeffs or (0,))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, k: int) -> int:
        if 0 <= k < len(self.coefficients):
            return self.coefficients[k]
        return 0

    def __mul__(self, other: DensePolynomial) -> DensePolynomial:
        # schoolbook; degrees stay below a few thousand at desk scale
        a, b = self.coefficients, other.coefficients
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return DensePolynomial(tuple(out))

    def __call__(self, z: int) -> int:
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * z + c
        return acc

    def tolist(self) -> list[int]:
        return list(self.coefficients)


class _RowCache:
    """Per-method memo of triangle rows. Readers are lock-free, writers serialize."""

    def __init__(self, step: Callable[[int, Sequence[int]], list[int]]):
        self._step = step
        self._rows: dict[int, tuple[int, ...]] = {1: (1,)}
        self._lock = threading.Lock()

    def row(self, n: int) -> list[int]:
        cached = self._rows.get(n)
        if cached is not None:
            return list(cached)
        with self._lock:
            top = max(m for m in self._rows if m <= n)
            prev = self._rows[top]
            for m in range(top + 1, n + 1):
                prev = self._rows.get(m) or tuple(self._step(m, prev))
                self._rows[m] = prev
            return list(self._rows[n])

    def clear(self) -> None:
        with self._lock:
            self._rows = {1: (1,)}


def _at(row: Sequence[int], k: int) -> int:
    return row[k] if 0 <= k < len(row) else 0


def _additive_step(n: int, prev: Sequence[int]) -> list[int]:
    # i(n,k) = i(n-1,k) + 2 * sum_{j=1}^{n-1} i(n-1,k-j), via a sliding window
    size = max_inversions(n) + 1
    row = [0] * size
    window = 0
    for k in range(size):
        window += _at(prev, k - 1) - _at(prev, k - n)
        row[k] = _at(prev, k) + 2 * window
    return row


def _four_term_step(n: int, prev: Sequence[int]) -> list[int]:
    # i(n,k) = i(n,k-1) + i(n-1,k) + i(n-1,k-1) - 2 i(n-1,k-n)
    size = max_inversions(n) + 1
    row = [0] * size
    for k in range(size):
        gross = _at(row, k - 1) + _at(prev, k) + _at(prev, k - 1)
        try:
            row[k] = checked_sub(gross, 2 * _at(prev, k - n))
        except SubtractionUnderflowError as exc:
            raise SubtractionUnderflowError(
                f"four-term recurrence underflowed at (n={n}, k={k}): {exc}") from None
    return row


_additive_cache = _RowCache(_additive_step)
_four_term_cache = _RowCache(_four_term_step)


def row_by_recurrence(n: int) -> list[int]:
    """Row ``n`` built bottom-up with the additive recurrence.

    >>> row_by_recurrence(5)
    [1, 8, 30, 72, 126, 172, 188, 164, 112, 56, 16]
    """
    _require_positive(n)
    return _additive_cache.row(n)


def row_by_alt_recurrence(n: int) -> list[int]:
    """Row ``n`` from the four-term recurrence, with checked subtraction.

    Keeps a cache separate from :func:`row_by_recurrence` so the two stay
    independent witnesses.
    """
    _require_positive(n)
    return _four_term_cache.row(n)


def row_by_genfun(n: int) -> DensePolynomial:
    """The row generating function prod_{m=1}^{n-1} (1 + 2z + ... + 2z^m)."""
    _require_positive(n)
    poly = DensePolynomial((1,))
    for m in range(1, n):
        poly = poly * DensePolynomial((1,) + (2,) * m)
    return poly


def triangle(n: int, k: int) -> int:
    """Entry ``i(n, k)``, zero whenever ``k`` falls outside ``[0, C(n,2)]``."""
    return _at(row_by_recurrence(n), k)


@dataclass
class OverMahonianTriangle:
    """Rows 1..n_max of the triangle, ragged, as lists of ints."""
    rows: dict[int, list[int]] = field(default_factory=dict)

    @classmethod
    def generate(cls, n_max: int, method: Callable[[int], list[int]] = row_by_recurrence):
        _require_positive(n_max)
        return cls({n: list(method(n)) for n in range(1, n_max + 1)})

    @property
    def n_max(self) -> int:
        return max(self.rows, default=0)

    def row(self, n: int) -> list[int]:
        return list(self.rows[n])

    def __getitem__(self, nk: tuple[int, int]) -> int:
        n, k = nk
        if n not in self.rows:
            raise KeyError(n)
        return _at(self.rows[n], k)


def double_factorial(m: int) -> int:
    """1 * 3 * 5 * ... * m for odd positive ``m``."""
    if isinstance(m, bool) or not isinstance(m, int) or m < 1 or m % 2 == 0:
        raise InvalidArgumentError(f"double_factorial expects an odd positive integer, got {m!r}")
    acc = 1
    for f in range(3, m + 1, 2):
        acc *= f
    return acc


def row_sum(n: int) -> int:
    """Size of the whole class of length ``n``; equals (2n-1)!!."""
    return sum(row_by_recurrence(n))


def total_inversions_by_recursion(n: int) -> int:
    """Total inversions over the class, from B_1 = 0 and
    B_n = (2n-3)!! n(n-1) + (2n-1) B_{n-1}.
    """
    _require_positive(n)
    total = 0
    for m in range(2, n + 1):
        total = double_factorial(2 * m - 3) * m * (m - 1) + (2 * m - 1) * total
    return total


def total_inversions_by_moment(n: int) -> int:
    """First moment ``sum_k k * i(n, k)`` of row ``n``."""
    return sum(k * v for k, v in enumerate(row_by_recurrence(n)))


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    offender: Optional[tuple[int, int]] = None
    detail: str = ""


@dataclass(frozen=True)
class IdentityReport:
    n: int
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def identity_suite(n: int) -> IdentityReport:
    """Check the top entry, the k=1 entry and the parity of row ``n``."""
    row = row_by_recurrence(n)
    top_k = max_inversions(n)

    expected_top = 2 ** (n - 1)
    top = CheckResult("top_entry", row[top_k] == expected_top,
                      None if row[top_k] == expected_top else (n, top_k),
                      f"i({n},{top_k})={row[top_k]}, expected {expected_top}")

    if n >= 2:
        ok = row[1] == 2 * (n - 1)
        first = CheckResult("k1_entry", ok, None if ok else (n, 1),
                            f"i({n},1)={row[1]}, expected {2 * (n - 1)}")
    else:
        first = CheckResult("k1_entry", True, detail="vacuous for n=1")

    odd = next((k for k in range(1, len(row)) if row[k] % 2), None) if n >= 2 else None
    parity = CheckResult("even_entries", odd is None, None if odd is None else (n, odd),
                         "vacuous for n=1" if n == 1 else "")
    return IdentityReport(n, (top, first, parity))
