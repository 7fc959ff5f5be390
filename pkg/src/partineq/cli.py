"""Command line interface: ``partineq <command> ...``.

Exit codes: 0 all checks pass, 1 verification failure, 2 usage error,
3 a floating point check could not be decided (MARGINAL).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Sequence

from . import bounds, inequality, maxpart
from .core import ParseError, format_partition, p_exact, parse_partition

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_MARGINAL = 0, 1, 2, 3


class Output:
    """Collects one command's result and renders it as text, csv or json."""

    def __init__(self, fmt: str):
        self.fmt = fmt
        self.lines: list[str] = []
        self.data: dict = {}

    def table(self, header: Sequence[str], rows: Sequence[Sequence], key: str = "rows") -> None:
        rows = [[str(c) for c in r] for r in rows]
        if self.fmt == "csv":
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(header)
            w.writerows(rows)
            self.lines.append(buf.getvalue().rstrip("\n"))
        elif self.fmt == "json":
            self.data[key] = [dict(zip(header, r)) for r in rows]
        else:
            widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h) for i, h in enumerate(header)]
            fmt_row = lambda r: "  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip()  # noqa: E731
            self.lines.append(fmt_row(header))
            self.lines.append("  ".join("-" * w for w in widths))
            self.lines.extend(fmt_row(r) for r in rows)

    def text(self, line: str, **data) -> None:
        if self.fmt == "json":
            self.data.update(data)
        else:
            self.lines.append(line)

    def render(self) -> str:
        if self.fmt == "json":
            return json.dumps(self.data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
        return "\n".join(self.lines) + "\n"


def progress(msg: str) -> None:
    print(msg, file=sys.stderr, flush=True)


def _status_code(*statuses) -> int:
    names = {s.value if isinstance(s, bounds.Status) else s for s in statuses}
    if "FAIL" in names:
        return EXIT_FAIL
    if "MARGINAL" in names:
        return EXIT_MARGINAL
    return EXIT_OK


def cmd_pn(args, out: Output) -> int:
    if args.table is not None:
        out.table(["n", "p(n)"], [(n, p_exact(n)) for n in range(1, args.table + 1)])
    elif args.n is not None:
        out.text(str(p_exact(args.n)), n=args.n, p=str(p_exact(args.n)))
    else:
        raise UsageError("pn needs N or --table N_MAX")
    return EXIT_OK


def cmd_check(args, out: Output) -> int:
    v = inequality.compare_products(args.a, args.b)
    out.text(str(v), a=v.a, b=v.b, lhs=str(v.lhs), rhs=str(v.rhs), outcome=v.outcome.value)
    return EXIT_OK


def cmd_lambda_table(args, out: Output) -> int:
    rows = inequality.lambda_table(args.tol)
    if out.fmt == "json":
        out.data["tol"] = repr(args.tol)
        out.data["thresholds"] = [dict(t.to_dict(), printed_prefix=inequality.PRINTED_LAMBDA[t.a]) for t in rows]
    else:
        out.table(["a", "lambda_a", "prefix"], [(t.a, f"{t.lambda_a:.10f}", t.prefix()) for t in rows])
    return EXIT_OK


def _table2_rows(report: maxpart.Theorem2Report):
    return [(n, pn, r.maxp, ", ".join(map(str, r.argmax))) for n, pn, r in report.rows]


def _verify_theorem1(args, out: Output) -> str:
    progress(f"theorem1: gap(a,1) for 9 <= a <= {args.amax}, exhaustive check for a <= 8")
    r = inequality.verify_theorem1(a_max=args.amax)
    if out.fmt == "json":
        out.data["theorem1"] = r.to_dict()
    else:
        lg = r.large_a
        out.lines.append(f"theorem1: {r.status.value}")
        out.lines.append(
            f"  gap(a,1) > 0 for 9 <= a <= {lg.a_max}: {lg.status.value} "
            f"(min margin {lg.min_margin:.6g} at a={lg.argmin}, {lg.precision})"
        )
        regions = ", ".join(f"a={a}: b<={b}" for a, b in sorted(r.regions.items()))
        out.lines.append(f"  exhaustive region: {regions}")
        out.lines.append("  failures:   " + " ".join(f"({a},{b})" for a, b in sorted(r.found.failures)))
        out.lines.append("  equalities: " + " ".join(f"({a},{b})" for a, b in sorted(r.found.equalities)))
        for p in r.problems:
            out.lines.append(f"  problem: {p}")
        for c in r.unexpected:
            out.lines.append(f"  counterexample: {c}")
    return r.status.value


def _verify_theorem2(args, out: Output) -> str:
    n_max = args.nmax if args.nmax is not None else maxpart.DEFAULT_ENUM_CAP
    progress(f"theorem2: brute force over P(n), n <= {n_max}")
    r = maxpart.verify_theorem2(n_max)
    status = "PASS" if r.ok else "FAIL"
    if out.fmt == "json":
        out.data["theorem2"] = r.to_dict()
    else:
        out.table(["n", "p(n)", "maxp(n)", "mu"], _table2_rows(r))
        for c in r.counterexamples:
            out.lines.append(f"counterexample: {c}")
        if out.fmt == "text":
            out.lines.append(f"theorem2: {status}")
    return status


def _verify_sweep(report: bounds.SweepReport, out: Output) -> str:
    if out.fmt == "json":
        out.data[report.name] = report.to_dict()
    else:
        out.lines.append(
            f"{report.name}: {report.status.value} ({report.checked} inequalities, "
            f"min margin {report.min_margin:.6g} at n={report.argmin})"
        )
        if report.failures:
            out.lines.append(f"  failures: {report.failures}")
        if report.marginal:
            out.lines.append(f"  marginal: {report.marginal}")
    return report.status.value


def _verify_sandwich(args, out: Output) -> str:
    n_max = args.nmax if args.nmax is not None else 5000
    progress(f"sandwich: 2 <= n <= {n_max}; lehmer: 1 <= n <= {min(n_max, 2000)}")
    s1 = _verify_sweep(bounds.verify_sandwich(n_max), out)
    s2 = _verify_sweep(bounds.verify_lehmer(min(n_max, 2000)), out)
    return "FAIL" if "FAIL" in (s1, s2) else ("MARGINAL" if "MARGINAL" in (s1, s2) else "PASS")


def _verify_logconcavity(args, out: Output) -> str:
    n_max = args.nmax if args.nmax is not None else 1000
    progress(f"logconcavity: n <= {n_max}")
    r = maxpart.verify_remarks(n_max, border_max=min(n_max, 500))
    status = "PASS" if r.ok else "FAIL"
    if out.fmt == "json":
        out.data["logconcavity"] = r.to_dict()
    else:
        out.lines.append(f"logconcavity: {status}")
        out.lines.append("  violations for n <= 25: " + " ".join(f"(n={n},m={m})" for n, m in r.concavity_violations_small))
        out.lines.append(f"  failures for 25 < n <= {n_max}: {len(r.concavity_failures_large)}")
        out.lines.append(f"  border case p(n)^2 > p(2n) failures: {r.border_failures}")
        out.lines.append(f"  injection p(1)p(n) < p(n+1) failures: {r.injection_failures}")
    return status


VERIFIERS = {
    "theorem1": _verify_theorem1,
    "theorem2": _verify_theorem2,
    "sandwich": _verify_sandwich,
    "logconcavity": _verify_logconcavity,
}


def cmd_verify(args, out: Output) -> int:
    names = list(VERIFIERS) if args.what == "all" else [args.what]
    statuses = [VERIFIERS[name](args, out) for name in names]
    return _status_code(*statuses)


def cmd_maxp(args, out: Output) -> int:
    if args.range is not None:
        out.table(["n", "maxp(n)"], [(n, maxpart.maxp_closed_form(n)) for n in range(1, args.range + 1)])
    elif args.argmax is not None:
        r = maxpart.maxp_bruteforce(args.argmax)
        out.text(" ".join(map(str, r.argmax)), **r.to_dict())
    elif args.n is not None:
        v = maxpart.maxp_closed_form(args.n)
        out.text(str(v), n=args.n, maxp=str(v))
    else:
        raise UsageError("maxp needs N, --argmax N or --range N_MAX")
    return EXIT_OK


def cmd_normalize(args, out: Output) -> int:
    try:
        mu = parse_partition(args.partition)
    except ParseError as exc:
        raise UsageError(str(exc)) from None
    steps = list(maxpart.normalize_trace(mu))
    final = steps[-1].after if steps else mu
    try:
        canonical = maxpart.canonical_max_partition(final.weight)
    except maxpart.TieError as exc:
        canonical = final if final in exc.maximizers else None
    if out.fmt == "json":
        out.data.update(
            start=format_partition(mu),
            final=format_partition(final),
            canonical=final == canonical,
            steps=[
                {"rule": str(s.rule), "before": format_partition(s.before), "after": format_partition(s.after),
                 "p_before": str(s.value_before), "p_after": str(s.value_after)}
                for s in steps
            ],
        )
        return EXIT_OK
    if not steps:
        out.lines.append("already canonical" if final == canonical else f"{final}: no rule applies")
        return EXIT_OK
    rows = [(0, "", str(mu), steps[0].value_before)]
    rows += [(i, str(s.rule), str(s.after), s.value_after) for i, s in enumerate(steps, 1)]
    out.table(["step", "rule", "partition", "p"], rows)
    if out.fmt == "text":
        out.lines.append(f"fixed point {final}" + (" (canonical maximizer)" if final == canonical else ""))
    return EXIT_OK


class UsageError(Exception):
    pass


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {v}")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "csv", "json"), default="text", help="output format")
    common.add_argument("--out", metavar="FILE", help="write output to FILE instead of stdout")

    parser = argparse.ArgumentParser(
        prog="partineq",
        description="Exact and precision-controlled checks of p(a)p(b) >= p(a+b) and maxima of p(mu).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pn", parents=[common], help="exact partition numbers")
    p.add_argument("n", nargs="?", type=_nonneg)
    p.add_argument("--table", type=_positive, metavar="N_MAX", help="print p(n) for 1 <= n <= N_MAX")
    p.set_defaults(func=cmd_pn)

    p = sub.add_parser("check", parents=[common], help="compare p(a)p(b) with p(a+b)")
    p.add_argument("a", type=_positive)
    p.add_argument("b", type=_positive)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("lambda-table", parents=[common], help="thresholds lambda_a for 2 <= a <= 8")
    p.add_argument("--tol", type=float, default=inequality.DEFAULT_TOL, help="bisection tolerance")
    p.set_defaults(func=cmd_lambda_table)

    p = sub.add_parser("verify", parents=[common], help="run a verification sweep")
    p.add_argument("what", choices=(*VERIFIERS, "all"))
    p.add_argument("--nmax", type=_positive, help="upper end of the n range")
    p.add_argument("--amax", type=_positive, default=10_000, help="upper end of the gap(a,1) sweep")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("maxp", parents=[common], help="maximum of p(mu) over partitions of n")
    p.add_argument("n", nargs="?", type=_nonneg)
    p.add_argument("--argmax", type=_nonneg, metavar="N", help="all maximizers, by brute force")
    p.add_argument("--range", type=_positive, metavar="N_MAX", help="maxp(n) for 1 <= n <= N_MAX")
    p.set_defaults(func=cmd_maxp)

    p = sub.add_parser("normalize", parents=[common], help="rewrite a partition to a fixed point, with trace")
    p.add_argument("partition", help='comma separated parts, e.g. "7,2,4,4"')
    p.set_defaults(func=cmd_normalize)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify" and args.amax < 9:
        parser.error("--amax must be at least 9")
    out = Output(args.format)
    try:
        code = args.func(args, out)
    except (UsageError, maxpart.EnumerationCapExceeded) as exc:
        print(f"partineq: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = out.render()
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
