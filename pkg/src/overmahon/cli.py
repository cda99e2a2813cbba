"""Command-line entry point: ``overmahon {triangle,verify,trace,inject,count,modes}``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
from typing import Callable, Optional

from . import core_numbers as cn
from .errors import InvalidArgumentError, OverMahonError
from .lattice_paths import (count_paths, enumerate_paths, path_to_perm, perm_to_path,
                            random_intersecting_pairs, sagan_switch)
from .logconcavity import (apply_injection, apply_inverse, arrow_chain, check_logconcavity,
                           find_modes, verify_injectivity)
from .overpartitions import enumerate_overpartitions, overpartition_to_path, path_to_overpartition
from .permutations import (count_by_enumeration, default_cap, distribution_by_flags,
                           enumerate_bprime, inversions, m_stats, parse_perm)
from .tilings import count_tilings, path_to_tiling, tiling_to_path

SUITES = ("identities", "crosscheck", "bijections", "injection", "logconcavity")
PUBLISHED_TOTALS = {1: 0, 2: 2, 3: 28, 4: 376}


def _write_csv(rows, header) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


# ---------------------------------------------------------------- triangle

def triangle_data(n_max: int) -> dict:
    return {
        "rows": {str(n): cn.row_by_recurrence(n) for n in range(1, n_max + 1)},
        "total_inversions": {str(n): cn.total_inversions_by_recursion(n)
                             for n in range(1, n_max + 1)},
    }


def render_triangle_table(n_max: int) -> str:
    data = triangle_data(n_max)
    width = cn.max_inversions(n_max) + 1
    cells = [["n\\k", "B'_n"] + [str(k) for k in range(width)]]
    for n in range(1, n_max + 1):
        total = data["total_inversions"][str(n)]
        mark = "" if n in PUBLISHED_TOTALS else " *computed"
        cells.append([str(n), f"{total}{mark}"] + [str(v) for v in data["rows"][str(n)]])
    widths = [max(len(r[c]) for r in cells if c < len(r)) for c in range(width + 2)]
    lines = []
    for r in cells:
        head = f"{r[0]:>{widths[0]}} | {r[1]:>{widths[1]}} |"
        body = " ".join(f"{v:>{widths[c + 2]}}" for c, v in enumerate(r[2:]))
        lines.append(f"{head} {body}".rstrip())
    return "\n".join(lines) + "\n"


def cmd_triangle(args) -> int:
    n_max = args.n_max
    if args.format == "table":
        sys.stdout.write(render_triangle_table(n_max))
    elif args.format == "csv":
        data = triangle_data(n_max)
        values = _write_csv(((n, k, v) for n, row in data["rows"].items()
                             for k, v in enumerate(row)), ("n", "k", "value"))
        totals = _write_csv(data["total_inversions"].items(), ("n", "total_inversions"))
        if args.out:
            os.makedirs(args.out, exist_ok=True)
            for name, text in (("triangle.csv", values), ("total_inversions.csv", totals)):
                with open(os.path.join(args.out, name), "w", encoding="utf-8", newline="") as fh:
                    fh.write(text)
        sys.stdout.write(values)
    else:
        data = triangle_data(n_max)
        text = json.dumps(data, sort_keys=True)
        if json.loads(text) != data:
            print("json self-test failed", file=sys.stderr)
            return 1
        sys.stdout.write(text + "\n")
    return 0


# ---------------------------------------------------------------- verify

def _suite_identities(n_max: int, **_) -> list[dict]:
    out = []
    for n in range(1, n_max + 1):
        rep = cn.identity_suite(n)
        for c in rep.checks:
            out.append({"property": f"{c.name} n={n}", "passed": c.passed,
                        "counterexample": list(c.offender) if c.offender else None})
        rs, df = cn.row_sum(n), cn.double_factorial(2 * n - 1)
        out.append({"property": f"row_sum n={n}", "passed": rs == df,
                    "counterexample": None if rs == df else [rs, df]})
        a, b = cn.total_inversions_by_moment(n), cn.total_inversions_by_recursion(n)
        out.append({"property": f"moment n={n}", "passed": a == b,
                    "counterexample": None if a == b else [a, b]})
    return out


def _suite_crosscheck(n_max: int, cap: int, **_) -> list[dict]:
    out = []
    for n in range(1, n_max + 1):
        a = cn.row_by_recurrence(n)
        b = cn.row_by_alt_recurrence(n)
        c = cn.row_by_genfun(n).tolist()
        ok = a == b == c
        out.append({"property": f"recurrences/genfun n={n}", "passed": ok,
                    "counterexample": None if ok else {"additive": a, "four_term": b, "genfun": c}})
        if n <= min(cap, 6):
            combos = {
                "enumeration": [count_by_enumeration(n, k, cap) for k in range(len(a))],
                "paths": [count_paths(n, k) for k in range(len(a))],
                "tilings": [count_tilings(n, k) for k in range(len(a))],
            }
            bad = {name: v for name, v in combos.items() if v != a}
            out.append({"property": f"enumeration/paths/tilings n={n}", "passed": not bad,
                        "counterexample": bad or None})
    return out


def _suite_bijections(n_max: int, cap: int, seed: int, **_) -> list[dict]:
    out = []
    for n in range(1, min(n_max, cap) + 1):
        bad = None
        for p in enumerate_bprime(n, cap):
            path = perm_to_path(p)
            if path_to_perm(path) != p:
                bad = {"perm": str(p), "path": str(path)}
                break
            if overpartition_to_path(path_to_overpartition(path), n) != path:
                bad = {"path": str(path), "stage": "overpartition"}
                break
            if tiling_to_path(path_to_tiling(path)) != path:
                bad = {"path": str(path), "stage": "tiling"}
                break
        out.append({"property": f"round trips n={n}", "passed": bad is None,
                    "counterexample": bad})
    rng = random.Random(seed)
    bad = None
    for p1, p2 in random_intersecting_pairs(rng, 1000, n_max=min(6, max(2, n_max))):
        if sagan_switch(*sagan_switch(p1, p2)) != (p1, p2):
            bad = [str(p1), str(p2)]
            break
    out.append({"property": f"sagan switch involution (1000 pairs, seed={seed})",
                "passed": bad is None, "counterexample": bad})
    return out


def _suite_injection(n_max: int, cap: int, jobs: int, **_) -> list[dict]:
    out = []
    for n in range(2, min(n_max, cap) + 1):
        for k in range(1, cn.max_inversions(n)):
            rep = verify_injectivity(n, k, cap=cap, jobs=jobs)
            out.append({"property": f"injection n={n} k={k} ({rep.pairs_checked} pairs)",
                        "passed": rep.passed, "counterexample": rep.failures[:5] or None,
                        "report": rep.to_dict()})
    return out


def _suite_logconcavity(n_max: int, **_) -> list[dict]:
    rep = check_logconcavity(n_max)
    return [
        {"property": f"log-concave rows n<={n_max} ({rep.checked} inequalities)",
         "passed": not rep.failures,
         "counterexample": [list(map(str, f)) for f in rep.failures[:5]] or None},
        {"property": f"unimodal rows n<={n_max}", "passed": not rep.not_unimodal,
         "counterexample": rep.not_unimodal or None},
    ]


_SUITE_FUNCS: dict[str, Callable[..., list[dict]]] = {
    "identities": _suite_identities,
    "crosscheck": _suite_crosscheck,
    "bijections": _suite_bijections,
    "injection": _suite_injection,
    "logconcavity": _suite_logconcavity,
}


def run_suites(suite: str, n_max: int, cap: int, seed: int = 0, jobs: int = 1) -> dict:
    names = SUITES if suite == "all" else (suite,)
    report = {"n_max": n_max, "suites": {}}
    for name in names:
        report["suites"][name] = _SUITE_FUNCS[name](n_max=n_max, cap=cap, seed=seed, jobs=jobs)
    report["passed"] = all(r["passed"] for rs in report["suites"].values() for r in rs)
    return report


def cmd_verify(args) -> int:
    n_max = args.n if args.n is not None else args.n_max
    report = run_suites(args.suite, n_max, args.cap, args.seed, args.jobs)
    if args.format == "json":
        sys.stdout.write(json.dumps(report, sort_keys=True) + "\n")
    elif args.format == "csv":
        rows = [(name, r["property"], "PASS" if r["passed"] else "FAIL",
                 json.dumps(r["counterexample"]) if r["counterexample"] else "")
                for name, rs in report["suites"].items() for r in rs]
        sys.stdout.write(_write_csv(rows, ("suite", "property", "status", "counterexample")))
    else:
        for name, rs in report["suites"].items():
            for r in rs:
                line = f"{'PASS' if r['passed'] else 'FAIL'}  [{name}] {r['property']}"
                if not r["passed"]:
                    line += f"  counterexample: {json.dumps(r['counterexample'])}"
                print(line)
        print("ALL PASS" if report["passed"] else "FAILURES PRESENT")
    return 0 if report["passed"] else 1


# ---------------------------------------------------------------- trace / inject

def trace_data(p) -> dict:
    path = perm_to_path(p)
    return {
        "permutation": str(p),
        "inversions": inversions(p),
        "m_stats": list(m_stats(p).m),
        "path": str(path),
        "overpartition": str(path_to_overpartition(path)),
        "tiling": str(path_to_tiling(path)),
    }


def cmd_trace(args) -> int:
    p = parse_perm(" ".join(args.perm))
    data = trace_data(p)
    if args.format == "json":
        sys.stdout.write(json.dumps(data, sort_keys=True) + "\n")
    elif args.format == "csv":
        sys.stdout.write(_write_csv([[data[k] if not isinstance(data[k], list)
                                      else " ".join(map(str, data[k])) for k in data]], data.keys()))
    else:
        for key, value in data.items():
            if isinstance(value, list):
                value = " ".join(map(str, value))
            print(f"{key:>14}: {value}")
    return 0


def inject_data(res) -> dict:
    return {
        "pivot": res.pivot.index,
        "shift": res.shift,
        "audit": [{"I": c.index, "strict": c.strict, "sigma_tail": c.sigma_tail,
                   "tau_tail": c.tau_tail, "lower_ok": c.lower_ok,
                   "upper_applies": c.upper_applies, "upper_lhs": c.upper_lhs,
                   "upper_ok": c.upper_ok} for c in res.pivot.audit],
        "first_chain": arrow_chain(res.theta_trace),
        "second_chain": arrow_chain(res.pi_trace),
        "first_steps": [[s.label, s.word] for s in res.theta_trace],
        "second_steps": [[s.label, s.word] for s in res.pi_trace],
        "output": [str(res.theta), str(res.pi)],
    }


def cmd_inject(args, parser) -> int:
    sigma, tau = parse_perm(args.sigma), parse_perm(args.tau)
    s, t = inversions(sigma), inversions(tau)
    if args.inverse:
        if s != t:
            parser.error(f"--inverse needs equal inversion counts, got {s} and {t}")
        res = apply_inverse(sigma, tau)
    else:
        if s - t != 2:
            parser.error(f"first permutation has {s} inversions and second has {t}; "
                         f"they must differ by exactly 2")
        res = apply_injection(sigma, tau)
    data = inject_data(res)
    if args.format == "json":
        sys.stdout.write(json.dumps(data, sort_keys=True) + "\n")
        return 0
    print(f"I = {data['pivot']}   pivot shift = {data['shift']}")
    for c in data["audit"]:
        verdict = "accepted" if c["lower_ok"] and c["upper_ok"] else "rejected"
        print(f"  I={c['I']}: sigma_tail={c['sigma_tail']} tau_tail={c['tau_tail']} "
              f"{'strict' if c['strict'] else 'weak'} lower={'ok' if c['lower_ok'] else 'fail'} "
              f"upper={'n/a' if not c['upper_applies'] else ('ok' if c['upper_ok'] else 'fail')}"
              f" -> {verdict}")
    print(" -> ".join(data["first_chain"]))
    print(" -> ".join(data["second_chain"]))
    print(f"({data['output'][0]}, {data['output'][1]})")
    return 0


# ---------------------------------------------------------------- count / modes

def cmd_count(args) -> int:
    n, k = args.n, args.k
    data = {"n": n, "k": k, "recurrence": cn.triangle(n, k),
            "four_term": cn.row_by_alt_recurrence(n)[k] if 0 <= k <= cn.max_inversions(n) else 0,
            "genfun": cn.row_by_genfun(n)[k] if k >= 0 else 0,
            "paths": count_paths(n, k)}
    if n <= args.cap:
        data["enumeration"] = count_by_enumeration(n, k, args.cap)
        data["tilings"] = count_tilings(n, k)
        data["overpartitions"] = sum(1 for _ in enumerate_overpartitions(n, k, args.cap))
    if args.format == "json":
        sys.stdout.write(json.dumps(data, sort_keys=True) + "\n")
    elif args.format == "csv":
        sys.stdout.write(_write_csv([list(data.values())], data.keys()))
    else:
        for key, value in data.items():
            print(f"{key:>14}: {value}")
    return 0 if len({v for key, v in data.items() if key not in ("n", "k")}) == 1 else 1


def cmd_modes(args) -> int:
    ns = [args.n] if args.n is not None else list(range(1, args.n_max + 1))
    reports = [find_modes(n) for n in ns]
    if args.format == "json":
        sys.stdout.write(json.dumps([r.to_dict() for r in reports], sort_keys=True) + "\n")
    elif args.format == "csv":
        sys.stdout.write(_write_csv([(r.n, r.value, " ".join(map(str, r.positions)), r.unimodal)
                                     for r in reports], ("n", "mode_value", "positions", "unimodal")))
    else:
        for r in reports:
            print(f"n={r.n}: mode value {r.value} at k={', '.join(map(str, r.positions))}"
                  f"{'' if r.unimodal else '  (row NOT unimodal)'}")
    return 0 if all(r.unimodal for r in reports) else 1


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n-max", type=int, default=5)
    common.add_argument("--cap", type=int, default=None,
                        help="enumeration cap (default: OVERMAHON_CAP or 8)")
    common.add_argument("--format", choices=("table", "csv", "json"), default="table")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=1)

    parser = argparse.ArgumentParser(prog="overmahon", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("triangle", parents=[common], help="print the triangle with totals")
    p.add_argument("n", nargs="?", type=int, help="alias for --n-max")
    p.add_argument("--out", help="directory for triangle.csv and total_inversions.csv")

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("suite", choices=SUITES + ("all",))
    p.add_argument("n", nargs="?", type=int, help="alias for --n-max")

    p = sub.add_parser("trace", parents=[common], help="show a permutation in all four guises")
    p.add_argument("perm", nargs="+", help="e.g. \"2 3' 1\" or 2 ~3 1")

    p = sub.add_parser("inject", parents=[common], help="apply the log-concavity injection")
    p.add_argument("sigma")
    p.add_argument("tau")
    p.add_argument("--inverse", action="store_true",
                   help="treat the inputs as an image pair and map it back")

    p = sub.add_parser("count", parents=[common], help="i(n,k) by every method")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)

    p = sub.add_parser("modes", parents=[common], help="report row maxima")
    p.add_argument("n", nargs="?", type=int)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.cap = default_cap() if args.cap is None else args.cap
    except InvalidArgumentError as exc:
        parser.error(str(exc))
    if args.cap < 1:
        parser.error("--cap must be at least 1")
    if args.command == "triangle" and args.n is not None:
        args.n_max = args.n
    if getattr(args, "n_max", 1) < 1:
        parser.error("--n-max must be positive")
    try:
        if args.command == "inject":
            return cmd_inject(args, parser)
        return {"triangle": cmd_triangle, "verify": cmd_verify, "trace": cmd_trace,
                "count": cmd_count, "modes": cmd_modes}[args.command](args)
    except OverMahonError as exc:
        print(f"overmahon: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
