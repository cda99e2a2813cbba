"""
Constructive log-concavity for the over-Mahonian rows.

For ``sigma`` with ``k+1`` inversions and ``tau`` with ``k-1``, a pivot index
``I`` is chosen and the two permutations trade the inversion counts of their
entries larger than ``I+1`` (together with those entries' overlines), while
the pivot entry ``I+1`` absorbs the one-inversion imbalance.  Both results
have ``k`` inversions and the map is injective, so
``i(n,k)^2 >= i(n,k-1) * i(n,k+1)``.

Everything is done with explicit moves on words so that each intermediate
word can be inspected:

1. copy the partner's overlines onto entries ``I+2..n``;
2. for entries ``n`` down to ``I+2``, move the entry right past the smaller
   entries it heads, parking it at the right end;
3. move the pivot entry ``I+1`` by the balancing shift;
4. for entries ``I+2`` up to ``n``, move the entry left by the partner's count.

A move of ``p`` positions removes the entry and reinserts it ``p`` slots
away, the other entries closing ranks.

Overlines copied in step 1 always land on entries that head an inversion:
an entry ``v >= I+2`` ends with exactly the partner's count ``m[v-1]``, and
the partner could only overline ``v`` when that count was positive.  A
flag on a non-heading entry would raise :class:`InternalConsistencyError`;
the exhaustive checks for ``n <= 5`` and sampled checks at ``n = 6`` never
trigger it.

Plain checkers for log-concavity and unimodality of the generated rows, and
a mode finder, live here too.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from typing import Optional, Sequence

from .core_numbers import max_inversions, row_by_recurrence
from .errors import InternalConsistencyError, InvalidArgumentError, NoValidPivotError
from .permutations import (OverlinedPermutation, check_cap, enumerate_bprime, format_word,
                           inversions, is_valid, m_stats)

__all__ = [
    "ConditionCheck", "Pivot", "TraceStep", "InjectionResult", "find_pivot",
    "find_feasible_pivot", "apply_injection", "apply_inverse", "arrow_chain",
    "InjectionReport", "verify_injectivity", "LogConcavityReport",
    "check_logconcavity", "is_log_concave", "is_unimodal", "ModeReport", "find_modes",
]


@dataclass(frozen=True)
class ConditionCheck:
    """How one candidate pivot fared.

    ``sigma_tail`` is the sum of sigma's counts for entries I+1..n and
    ``tau_tail`` the sum of tau's counts for entries I+2..n.  The lower test
    is strict when sigma's entry I+1 is overlined.  The upper test only
    applies when sigma's tail does not already exceed tau's tail from I+1.
    """
    index: int
    strict: bool
    sigma_tail: int
    tau_tail: int
    lower_ok: bool
    upper_applies: bool
    upper_lhs: int
    upper_ok: bool

    @property
    def accepted(self) -> bool:
        return self.lower_ok and self.upper_ok


@dataclass(frozen=True)
class Pivot:
    index: int
    audit: tuple[ConditionCheck, ...] = ()


@dataclass(frozen=True)
class TraceStep:
    label: str
    word: str
    changed: bool


@dataclass(frozen=True)
class InjectionResult:
    sigma: OverlinedPermutation
    tau: OverlinedPermutation
    theta: OverlinedPermutation
    pi: OverlinedPermutation
    pivot: Pivot
    shift: int
    theta_trace: tuple[TraceStep, ...] = ()
    pi_trace: tuple[TraceStep, ...] = ()

    @property
    def pair(self) -> tuple[OverlinedPermutation, OverlinedPermutation]:
        return self.theta, self.pi


def arrow_chain(trace: Sequence[TraceStep]) -> list[str]:
    """The starting word followed by every word a step actually changed."""
    return [s.word for s in trace if s.changed or s.label == "start"]


def _check_pair(sigma: OverlinedPermutation, tau: OverlinedPermutation, gap: int) -> int:
    if sigma.n != tau.n:
        raise InvalidArgumentError(f"lengths differ: {sigma.n} vs {tau.n}")
    s, t = inversions(sigma), inversions(tau)
    if s - t != gap:
        raise InvalidArgumentError(
            f"inversion counts {s} and {t} must differ by exactly {gap}")
    return s


def _suffix(m: Sequence[int], start: int) -> int:
    return sum(m[start:])


def find_pivot(sigma: OverlinedPermutation, tau: OverlinedPermutation) -> Pivot:
    """Largest ``I`` in 1..n-1 passing the lower and upper tests.

    Candidates are tried from ``n-1`` downward and each evaluation is kept in
    ``Pivot.audit``.
    """
    _check_pair(sigma, tau, 2)
    ms, mt = m_stats(sigma).m, m_stats(tau).m
    n = sigma.n
    audit = []
    for i in range(n - 1, 0, -1):
        strict = sigma.is_overlined(i + 1)
        s_tail = _suffix(ms, i)
        t_tail = _suffix(mt, i + 1)
        lower_ok = s_tail > t_tail + 1 if strict else s_tail >= t_tail + 1
        upper_applies = s_tail < _suffix(mt, i) + 1
        upper_lhs = _suffix(mt, i) + 1 - _suffix(ms, i + 1)
        upper_ok = upper_lhs <= i if upper_applies else True
        check = ConditionCheck(i, strict, s_tail, t_tail, lower_ok, upper_applies,
                               upper_lhs, upper_ok)
        audit.append(check)
        if check.accepted:
            return Pivot(i, tuple(audit))
    raise NoValidPivotError(f"no pivot for sigma={sigma}, tau={tau}")


def _new_pivot_counts(first, second, mf, ms_, i, target_first):
    # pivot counts after the trade, when ``first`` must end with target_first inversions
    a = target_first - sum(mf[:i]) - _suffix(ms_, i + 1)
    b = inversions(first) + inversions(second) - target_first \
        - sum(ms_[:i]) - _suffix(mf, i + 1)
    return a, b


def find_feasible_pivot(first: OverlinedPermutation, second: OverlinedPermutation,
                        target_first: int) -> Pivot:
    """Largest ``I`` at which trading tails leaves both pivot entries legal.

    A pivot entry is legal when its new count lies in ``[flag, I]``, ``flag``
    being 1 for an overlined entry.  For the forward direction this picks the
    same index as :func:`find_pivot`; it also drives :func:`apply_inverse`.
    """
    mf, ms_ = m_stats(first).m, m_stats(second).m
    for i in range(first.n - 1, 0, -1):
        a, b = _new_pivot_counts(first, second, mf, ms_, i, target_first)
        if first.is_overlined(i + 1) <= a <= i and second.is_overlined(i + 1) <= b <= i:
            return Pivot(i)
    raise NoValidPivotError(f"no feasible pivot for ({first}, {second}) -> {target_first}")


class _Word:
    """Mutable word with overline flags, used for the pass-by-pass moves."""

    def __init__(self, p: OverlinedPermutation, trace: bool = True):
        self.cells = [[v, f] for v, f in zip(p.word, p.overlined)]
        self.trace = trace
        self.steps: list[TraceStep] = [TraceStep("start", self.text(), False)] if trace else []

    def text(self) -> str:
        return format_word([c[0] for c in self.cells], [c[1] for c in self.cells])

    def snapshot(self) -> Optional[str]:
        return self.text() if self.trace else None

    def record(self, label: str, before: Optional[str]) -> None:
        if self.trace:
            now = self.text()
            self.steps.append(TraceStep(label, now, now != before))

    def position(self, value: int) -> int:
        return next(i for i, c in enumerate(self.cells) if c[0] == value)

    def set_flag(self, value: int, flag: bool) -> None:
        self.cells[self.position(value)][1] = flag

    def move(self, value: int, offset: int, label: str) -> None:
        """Shift ``value`` by ``offset`` slots (positive = right)."""
        before = self.snapshot()
        pos = self.position(value)
        dest = pos + offset
        if not 0 <= dest < len(self.cells):
            self.record(label, before)
            raise InternalConsistencyError(
                f"{label}: entry {value} cannot move {offset:+d} from slot {pos}",
                self.steps)
        cell = self.cells.pop(pos)
        self.cells.insert(dest, cell)
        self.record(label, before)

    def freeze(self) -> OverlinedPermutation:
        word = tuple(c[0] for c in self.cells)
        flags = tuple(c[1] for c in self.cells)
        if not is_valid(word, flags):
            raise InternalConsistencyError(
                f"result {self.text()} carries an overline on an entry heading no inversion",
                self.steps)
        return OverlinedPermutation(word, flags)


def _four_pass(base: OverlinedPermutation, partner: OverlinedPermutation, i: int,
               pivot_shift: int, trace: bool) -> tuple[OverlinedPermutation, tuple[TraceStep, ...]]:
    n = base.n
    own_m, partner_m = m_stats(base).m, m_stats(partner).m
    w = _Word(base, trace)

    before = w.snapshot()
    for v in range(i + 2, n + 1):
        w.set_flag(v, partner.is_overlined(v))
    w.record("overline transfer", before)

    for v in range(n, i + 1, -1):
        w.move(v, own_m[v - 1], f"{v} right {own_m[v - 1]}")

    label = f"{i + 1} {'right' if pivot_shift >= 0 else 'left'} {abs(pivot_shift)}"
    w.move(i + 1, pivot_shift, label)

    for v in range(i + 2, n + 1):
        w.move(v, -partner_m[v - 1], f"{v} left {partner_m[v - 1]}")

    return w.freeze(), tuple(w.steps)


def _trade(first, second, pivot: Pivot, target_first: int, trace: bool) -> InjectionResult:
    i = pivot.index
    mf, ms_ = m_stats(first).m, m_stats(second).m
    # how far the first pivot entry travels right (second travels left by as much)
    shift = sum(mf[:i + 1]) + _suffix(ms_, i + 1) - target_first
    try:
        theta, theta_trace = _four_pass(first, second, i, shift, trace)
        pi, pi_trace = _four_pass(second, first, i, -shift, trace)
    except InternalConsistencyError:
        if trace:
            raise
        # replay with tracing so the error carries every intermediate word
        return _trade(first, second, pivot, target_first, True)
    target_second = inversions(first) + inversions(second) - target_first
    if inversions(theta) != target_first or inversions(pi) != target_second:
        raise InternalConsistencyError(
            f"trade at I={i} produced {inversions(theta)} and {inversions(pi)} inversions, "
            f"expected {target_first} and {target_second}",
            list(theta_trace) + list(pi_trace))
    return InjectionResult(first, second, theta, pi, pivot, shift, theta_trace, pi_trace)


def apply_injection(sigma: OverlinedPermutation, tau: OverlinedPermutation,
                    trace: bool = True) -> InjectionResult:
    """Map ``(sigma, tau)`` with ``k+1`` and ``k-1`` inversions to a pair with ``k`` each.

    ``theta`` is rebuilt from ``sigma`` (pivot entry moving right) and ``pi``
    from ``tau`` (pivot entry moving left).
    """
    k = _check_pair(sigma, tau, 2) - 1
    return _trade(sigma, tau, find_pivot(sigma, tau), k, trace)


def apply_inverse(theta: OverlinedPermutation, pi: OverlinedPermutation,
                  trace: bool = True) -> InjectionResult:
    """Send a pair with ``k`` inversions each back to counts ``(k+1, k-1)``.

    Uses the same four passes with the feasible-pivot rule; on the image of
    :func:`apply_injection` it returns the original pair.
    """
    k = _check_pair(theta, pi, 0)
    return _trade(theta, pi, find_feasible_pivot(theta, pi, k + 1), k + 1, trace)


@lru_cache(maxsize=None)
def _classes(n: int) -> dict[int, tuple[OverlinedPermutation, ...]]:
    by_k: dict[int, list[OverlinedPermutation]] = {}
    for p in enumerate_bprime(n, cap=n):
        by_k.setdefault(inversions(p), []).append(p)
    return {k: tuple(v) for k, v in by_k.items()}


@dataclass
class InjectionReport:
    n: int
    k: int
    pairs_checked: int = 0
    failures: list[dict] = field(default_factory=list)
    vacuous: bool = False

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {"n": self.n, "k": self.k, "pairs_checked": self.pairs_checked,
                "failures": list(self.failures)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _check_chunk(n: int, k: int, sigmas: Sequence[OverlinedPermutation],
                 check_inverse: bool):
    taus = _classes(n).get(k - 1, ())
    images, failures = [], []
    for sigma in sigmas:
        ms = m_stats(sigma).m
        for tau in taus:
            fail = lambda reason: failures.append(
                {"sigma": str(sigma), "tau": str(tau), "reason": reason})
            try:
                res = apply_injection(sigma, tau, trace=False)
            except (NoValidPivotError, InternalConsistencyError) as exc:
                fail(f"{type(exc).__name__}: {exc}")
                continue
            if inversions(res.theta) != k or inversions(res.pi) != k:
                fail("output outside I(n,k)^2")
            i, shift = res.pivot.index, res.shift
            mt = m_stats(tau).m
            if not 0 <= shift <= ms[i]:
                fail(f"pivot shift {shift} outside [0, {ms[i]}] at I={i}")
            if mt[i] + shift > i:
                fail(f"pivot entry of tau would head {mt[i] + shift} > {i} inversions")
            if check_inverse:
                try:
                    back = apply_inverse(res.theta, res.pi, trace=False)
                except (NoValidPivotError, InternalConsistencyError) as exc:
                    fail(f"inverse failed: {exc}")
                else:
                    if back.pair != (sigma, tau):
                        fail(f"inverse returned ({back.theta}, {back.pi})")
            images.append(((str(res.theta), str(res.pi)), (str(sigma), str(tau))))
    return images, failures


def verify_injectivity(n: int, k: int, cap: Optional[int] = None, jobs: int = 1,
                       check_inverse: bool = True) -> InjectionReport:
    """Run the injection over all of I(n,k+1) x I(n,k-1).

    Checks that images land in I(n,k)^2, that no two pairs collide, that the
    pivot shift respects its bounds and (optionally) that the inverse
    recovers every pair.
    """
    check_cap(n, cap)
    report = InjectionReport(n, k)
    if k - 1 < 0 or k + 1 > max_inversions(n):
        report.vacuous = True
        return report
    sigmas = _classes(n).get(k + 1, ())
    if jobs > 1 and len(sigmas) > 1:
        chunks = [sigmas[j::jobs] for j in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_check_chunk, [n] * jobs, [k] * jobs, chunks,
                                  [check_inverse] * jobs))
    else:
        parts = [_check_chunk(n, k, sigmas, check_inverse)]

    seen: dict[tuple[str, str], tuple[str, str]] = {}
    for images, failures in parts:
        report.failures.extend(failures)
        for out, src in images:
            if out in seen:
                report.failures.append({"sigma": src[0], "tau": src[1],
                                        "reason": f"collides with {seen[out]} at {out}"})
            else:
                seen[out] = src
    report.failures.sort(key=lambda f: (f["sigma"], f["tau"], f["reason"]))
    report.pairs_checked = len(sigmas) * len(_classes(n).get(k - 1, ()))
    return report


def is_log_concave(seq: Sequence[int]) -> bool:
    return all(seq[i] ** 2 >= seq[i - 1] * seq[i + 1] for i in range(1, len(seq) - 1))


def is_unimodal(seq: Sequence[int]) -> bool:
    """Nondecreasing up to some index, nonincreasing after it."""
    i = 0
    while i + 1 < len(seq) and seq[i] <= seq[i + 1]:
        i += 1
    return all(seq[j] >= seq[j + 1] for j in range(i, len(seq) - 1))


@dataclass
class LogConcavityReport:
    n_max: int
    checked: int = 0
    failures: list[tuple[int, int, int, int]] = field(default_factory=list)
    not_unimodal: list[int] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures and not self.not_unimodal


def check_logconcavity(n_max: int) -> LogConcavityReport:
    """Exact check of i(n,k)^2 >= i(n,k-1) i(n,k+1) for every n <= n_max, 0 < k <= C(n,2).

    Failures are recorded as ``(n, k, lhs, rhs)``.  Unimodality of each row is
    checked alongside.
    """
    report = LogConcavityReport(n_max)
    for n in range(1, n_max + 1):
        row = row_by_recurrence(n)
        padded = row + [0]
        for k in range(1, len(row)):
            lhs, rhs = padded[k] ** 2, padded[k - 1] * padded[k + 1]
            report.checked += 1
            if lhs < rhs:
                report.failures.append((n, k, lhs, rhs))
        if not is_unimodal(row):
            report.not_unimodal.append(n)
    return report


@dataclass(frozen=True)
class ModeReport:
    n: int
    value: int
    positions: tuple[int, ...]
    unimodal: bool

    def to_dict(self) -> dict:
        return asdict(self)


def find_modes(n: int) -> ModeReport:
    """Largest entry of row ``n`` and every ``k`` attaining it."""
    row = row_by_recurrence(n)
    top = max(row)
    return ModeReport(n, top, tuple(k for k, v in enumerate(row) if v == top), is_unimodal(row))
