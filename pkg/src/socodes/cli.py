"""``socodes`` command line.

Exit status: 0 on success, 1 when a check or computation fails, 2 for
bad arguments.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from typing import Callable, Sequence

from .census import identity_class_total, psi_le, psi_le2_closed, psi_table, rows_to_psi, s_count, s_count_alt
from .fixpoints import FixEvaluator, alpha_vector, fix_count_bruteforce, free_exponent
from .glclasses import brute_centralizer_order, enumerate_classes, find_class, gl_order
from .oracle import MAX_CANON_N, psi_le_bruteforce
from .partitions import parse_partition, partitions
from .quadform import all_types, classify_rows, count_types, zero_count

FORMATS = ("markdown", "csv", "json")


def _grouped(x: int) -> str:
    return f"{x:,}"


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("expected a nonnegative integer")
    return v


def _pos(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return v


# -- rendering -------------------------------------------------------------

def render_grid(title: str, grid: list[list[int]], fmt: str) -> str:
    kmax = len(grid[0]) - 1
    if fmt == "markdown":
        head = "| n | " + " | ".join(f"k={k}" for k in range(kmax + 1)) + " |"
        sep = "|---|" + "---:|" * (kmax + 1)
        body = [f"| {n} | " + " | ".join(_grouped(v) for v in row) + " |" for n, row in enumerate(grid, start=1)]
        return "\n".join([f"### {title}", "", head, sep, *body]) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n"] + [f"k{k}" for k in range(kmax + 1)])
    for n, row in enumerate(grid, start=1):
        w.writerow([n, *row])
    return buf.getvalue()


def table_json(le: list[list[int]], exact: list[list[int]]) -> str:
    doc = {
        "k_max": len(le[0]) - 1,
        "n_max": len(le),
        "psi_le": [[str(v) for v in row] for row in le],
        "psi": [[str(v) for v in row] for row in exact],
    }
    return json.dumps(doc, indent=2) + "\n"


def parse_table_json(text: str) -> tuple[list[list[int]], list[list[int]]]:
    doc = json.loads(text)
    le = [[int(v) for v in row] for row in doc["psi_le"]]
    exact = [[int(v) for v in row] for row in doc["psi"]]
    if len(le) != doc["n_max"] or any(len(r) != doc["k_max"] + 1 for r in le + exact):
        raise ValueError("table JSON does not match its declared shape")
    return le, exact


def _emit(text: str, out: str | None) -> int:
    if out is None:
        sys.stdout.write(text)
        return 0
    try:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"error: cannot write {out}: {exc}", file=sys.stderr)
        return 1
    return 0


# -- subcommands -----------------------------------------------------------

def cmd_psi(args) -> int:
    res = psi_le(args.k, args.n, args.threads)
    if args.le or args.k == 0:
        value = res.psi_le
    else:
        value = res.psi_le - psi_le(args.k - 1, args.n, args.threads).psi_le
    rows = [(label, f"{c.numerator}/{c.denominator}" if c.denominator != 1 else str(c.numerator)) for label, c in res.contributions]
    fmt = args.format
    if fmt == "json":
        doc = {"k": args.k, "n": args.n, "le": bool(args.le), "value": str(value)}
        if args.breakdown:
            doc["breakdown"] = [{"class": label, "contribution": c} for label, c in rows]
        text = json.dumps(doc, indent=2) + "\n"
    elif fmt == "markdown":
        text = _grouped(value) + "\n"
        if args.breakdown:
            text += "\n| class | contribution to psi_le |\n|---|---:|\n" + "".join(f"| {l} | {c} |\n" for l, c in rows)
    else:
        text = f"{value}\n"
        if args.breakdown:
            text += "".join(f"{l},{c}\n" for l, c in rows)
    return _emit(text, args.out)


def cmd_table(args) -> int:
    le = psi_table(args.kmax, args.nmax, args.threads)
    exact = rows_to_psi(le)
    if args.format == "json":
        text = table_json(le, exact)
    elif args.format == "markdown":
        text = render_grid("psi_le(k, n)", le, "markdown") + "\n" + render_grid("psi(k, n)", exact, "markdown")
    else:
        text = "# psi_le\n" + render_grid("", le, "csv") + "# psi\n" + render_grid("", exact, "csv")
    return _emit(text, args.out)


def cmd_classes(args) -> int:
    classes = enumerate_classes(args.k)
    rows = [
        {"index": i, "label": c.label, "divisors": [str(f) for f in c.profile.divisors()], "cent_order": c.cent_order, "t": c.t, "size": c.size}
        for i, c in enumerate(classes, start=1)
    ]
    if args.format == "json":
        for r in rows:
            r["cent_order"] = str(r["cent_order"])
            r["size"] = str(r["size"])
        text = json.dumps(rows, indent=2) + "\n"
    elif args.format == "markdown":
        lines = ["| # | elementary divisors | centralizer | t | class size |", "|---:|---|---:|---:|---:|"]
        for r in rows:
            lines.append(f"| {r['index']} | {', '.join(r['divisors'])} | {_grouped(r['cent_order'])} | {r['t']} | {_grouped(r['size'])} |")
        text = "\n".join(lines) + "\n"
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["index", "label", "divisors", "cent_order", "t", "size"])
        for r in rows:
            w.writerow([r["index"], r["label"], ";".join(r["divisors"]), r["cent_order"], r["t"], r["size"]])
        text = buf.getvalue()
    return _emit(text, args.out)


def cmd_fix(args) -> int:
    try:
        cls = find_class(args.k, args.label)
        lam = parse_partition(args.partition)
    except (KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    ev = FixEvaluator.of(cls.rep)
    alpha = alpha_vector(ev.ctx, lam)
    atuple = tuple(alpha[d] for d in ev.ctx.divisors)
    doc = {
        "class": cls.label,
        "partition": str(lam),
        "n": lam.n,
        "fix": str(ev.fix_count(lam)),
        "alpha": {str(d): a for d, a in alpha.items()},
        "theta": sum(ev.ctx.s[d] * alpha[d] for d in ev.ctx.divisors),
        "free_exponent": free_exponent(ev.ctx, lam),
        "L": ev.ctx.L,
        "n_of_A": str(ev.n_of_A(atuple)),
    }
    return _emit(json.dumps(doc, indent=2) + "\n", args.out)


def _enumerated_zeros(rows: Sequence[int], n: int) -> int:
    count = 0
    for x in range(1 << n):
        val = 0
        for i, r in enumerate(rows):
            if (x >> i) & 1:
                val ^= bin(r & x).count("1") & 1
        count += val == 0
    return count


def selfchecks(level: str) -> list[tuple[str, Callable[[], bool]]]:
    full = level == "full"
    kcls = 5
    kcent = 4 if full else 3
    qdim = 4 if full else 3
    fix_k, fix_n = (3, 6) if full else (2, 5)
    ok_k, ok_n = (5, 8) if full else (3, 6)

    def class_equation():
        return all(sum(c.size for c in enumerate_classes(k)) == gl_order(k) for k in range(1, kcls + 1))

    def centralizers():
        return all(c.cent_order == brute_centralizer_order(c.rep) for k in range(1, kcent + 1) for c in enumerate_classes(k))

    def classifier():
        for n in range(1, qdim + 1):
            freq: dict = {}
            for code in range(1 << (n * n)):
                rows = [(code >> (n * i)) & ((1 << n) - 1) for i in range(n)]
                t = classify_rows(rows, n)
                if zero_count(t) != _enumerated_zeros(rows, n):
                    return False
                freq[t] = freq.get(t, 0) + 1
            if freq != {t: count_types(*t) << (n * (n - 1) // 2) for t in all_types(n) if count_types(*t)}:
                return False
        return True

    def fix_oracle():
        for k in range(1, fix_k + 1):
            for c in enumerate_classes(k):
                ev = FixEvaluator.of(c.rep)
                for n in range(1, fix_n + 1):
                    for lam in partitions(n):
                        if ev.fix_count(lam) != fix_count_bruteforce(c.rep, lam):
                            return False
        return True

    def dimension_two():
        return all(psi_le(2, n).psi_le == psi_le2_closed(n) for n in range(1, 41 if full else 21))

    def dimension_one():
        return all(psi_le(1, n).psi_le == n // 2 + 1 for n in range(1, 41 if full else 21))

    def s_counts():
        return all(s_count(k, n) == s_count_alt(k, n) for k in range(0, 6) for n in range(1, 41 if full else 13))

    def identity_route():
        # the identity share must agree with the engine's own identity-class term
        for k in range(1, 4):
            for n in range(1, 11):
                res = psi_le(k, n)
                if res.contributions[0][1] != identity_class_total(k, n):
                    return False
        return True

    def oracle_grid():
        return all(psi_le(k, n).psi_le == psi_le_bruteforce(k, n) for k in range(0, ok_k + 1) for n in range(1, ok_n + 1))

    return [
        ("class equation k<=5", class_equation),
        (f"centralizer formula vs brute force k<={kcent}", centralizers),
        (f"form classifier exhaustive n<={qdim}", classifier),
        (f"fixed points vs brute force k<={fix_k} n<={fix_n}", fix_oracle),
        ("dimension one closed form", dimension_one),
        ("dimension two closed form", dimension_two),
        ("S count two routes agree", s_counts),
        ("identity class route", identity_route),
        (f"brute-force orbits k<={ok_k} n<={ok_n}", oracle_grid),
    ]


def cmd_selfcheck(args) -> int:
    failed = 0
    for name, check in selfchecks(args.level):
        t0 = time.perf_counter()
        try:
            ok = bool(check())
        except Exception as exc:  # a crash counts as a failed check
            ok = False
            name = f"{name} ({type(exc).__name__}: {exc})"
        failed += not ok
        print(f"{'PASS' if ok else 'FAIL'}  {name}  [{time.perf_counter() - t0:.1f}s]")
    return 1 if failed else 0


def cmd_oracle_compare(args) -> int:
    if args.nmax > MAX_CANON_N:
        print(f"error: brute force needs --nmax <= {MAX_CANON_N}", file=sys.stderr)
        return 2
    lines = ["n\\k " + " ".join(f"{k:>4}" for k in range(args.kmax + 1))]
    bad = 0
    for n in range(1, args.nmax + 1):
        cells = []
        for k in range(args.kmax + 1):
            ok = psi_le(k, n, args.threads).psi_le == psi_le_bruteforce(k, n)
            bad += not ok
            cells.append(f"{'pass' if ok else 'FAIL':>4}")
        lines.append(f"{n:>3} " + " ".join(cells))
    print("\n".join(lines))
    return 1 if bad else 0


# -- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="socodes", description="Count binary self-orthogonal codes up to equivalence.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, fmt_default: str):
        sp.add_argument("--format", choices=FORMATS, default=fmt_default)
        sp.add_argument("--out", help="write to this file instead of stdout")

    def threads(sp):
        sp.add_argument("--threads", type=_pos, default=1, help="worker processes")

    sp = sub.add_parser("psi", help="one value of psi or psi_le")
    sp.add_argument("--k", type=_nonneg, required=True)
    sp.add_argument("--n", type=_pos, required=True)
    sp.add_argument("--le", action="store_true", help="dimension at most k")
    sp.add_argument("--breakdown", action="store_true", help="per-class contributions to psi_le")
    common(sp, "csv")
    threads(sp)
    sp.set_defaults(func=cmd_psi)

    sp = sub.add_parser("table", help="psi_le and psi grids")
    sp.add_argument("--kmax", type=_nonneg, required=True)
    sp.add_argument("--nmax", type=_pos, required=True)
    common(sp, "markdown")
    threads(sp)
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("classes", help="conjugacy classes of GL(k,2)")
    sp.add_argument("--k", type=_nonneg, required=True)
    common(sp, "markdown")
    sp.set_defaults(func=cmd_classes)

    sp = sub.add_parser("fix", help="fixed-point count for one class and cycle type")
    sp.add_argument("--k", type=_pos, required=True)
    sp.add_argument("--label", required=True, help="class label or 1-based index")
    sp.add_argument("--partition", required=True, help='cycle type, e.g. "3,2,2" or "1^4,2"')
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_fix)

    sp = sub.add_parser("selfcheck", help="run the internal cross-checks")
    sp.add_argument("--level", choices=("quick", "full"), default="quick")
    sp.set_defaults(func=cmd_selfcheck)

    sp = sub.add_parser("oracle-compare", help="engine vs brute-force orbit counts")
    sp.add_argument("--kmax", type=_nonneg, default=5)
    sp.add_argument("--nmax", type=_pos, default=6)
    threads(sp)
    sp.set_defaults(func=cmd_oracle_compare)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ArithmeticError, ValueError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
