"""Exit criteria.  Each test records one PASS/FAIL line, listed in the
"acceptance criteria" section of the pytest summary."""

import math
import time

import pytest

from partineq.bounds import DOUBLE, EXTENDED, Status, lehmer_check, sandwich_check, verify_lehmer, verify_sandwich
from partineq.core import enumerate_partitions, p_exact
from partineq.inequality import (
    EXHAUSTIVE_SLACK,
    KNOWN_EQUALITIES,
    KNOWN_FAILURES,
    PRINTED_LAMBDA,
    Outcome,
    S,
    T,
    compare_products,
    lambda_table,
    log_threshold,
    scan_exceptional,
    verify_theorem1,
)
from partineq.maxpart import (
    TABLE2,
    canonical_max_partition,
    injection_check,
    log_concavity_check,
    maxp_bruteforce,
    maxp_closed_form,
    normalize,
    rule_catalog,
    rule_increases,
)

from oracles import count_partitions_dp


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


def test_c1_table2(criterion):
    with Timer() as t:
        mismatches = []
        for n, (pn, mx, mus) in TABLE2.items():
            r = maxp_bruteforce(n)
            got = (p_exact(n), r.maxp, {m.parts for m in r.argmax})
            if got != (pn, mx, set(mus)):
                mismatches.append((n, got))
    criterion("C1 Table 2 reproduction n=1..14", not mismatches and t.elapsed < 1, f"{t.elapsed:.3f}s {mismatches}")


def test_c2_table1(criterion):
    with Timer() as t:
        rows = lambda_table(tol=1e-9)
    bad = []
    for th in rows:
        prefix = float(PRINTED_LAMBDA[th.a])
        # printed digits are a truncation prefix
        if not (prefix <= th.lambda_a < prefix + 1e-2 and th.bracket[1] - th.bracket[0] <= 1e-9):
            bad.append((th.a, th.lambda_a))
    detail = " ".join(f"{th.a}:{th.lambda_a:.6f}" for th in rows) + f" {t.elapsed:.3f}s"
    criterion("C2 Table 1 lambda_a prefixes", not bad and t.elapsed < 1, detail)


def test_c3_exceptional_sets(criterion):
    with Timer() as t:
        s = scan_exceptional(200)
    ok = s.failures == KNOWN_FAILURES and s.equalities == KNOWN_EQUALITIES and t.elapsed < 5
    criterion("C3 exceptional pairs for a+b<=200", ok, f"{sorted(s.failures)} {sorted(s.equalities)} {t.elapsed:.3f}s")


def test_c4_theorem1_pipeline(criterion):
    with Timer() as t:
        r = verify_theorem1(a_max=10_000, tol=1e-9, precision="extended")
    regions_ok = all(r.regions[th.a] == math.ceil(th.lambda_a * th.a) + EXHAUSTIVE_SLACK for th in r.thresholds)
    ok = (
        r.status is Status.PASS
        and r.large_a.precision == "extended"
        and not r.large_a.marginal
        and not r.large_a.failures
        and r.large_a.checked == 10_000 - 8
        and regions_ok
        and r.found.failures == KNOWN_FAILURES
        and r.found.equalities == KNOWN_EQUALITIES
        and t.elapsed < 30
    )
    detail = f"min gap {r.large_a.min_margin:.5f} at a={r.large_a.argmin}, regions {r.regions}, {t.elapsed:.2f}s"
    criterion("C4 Theorem 1 pipeline", ok, detail)


def test_c5_theorem2_oracle(criterion):
    with Timer() as t:
        bad = []
        for n in range(0, 51):
            r = maxp_bruteforce(n)
            if n == 7:
                expected = {(7,), (4, 3)}
            else:
                expected = {canonical_max_partition(n).parts}
            if r.maxp != maxp_closed_form(n) or {m.parts for m in r.argmax} != expected:
                bad.append(n)
    criterion("C5 brute force == closed form, n<=50", not bad and t.elapsed < 60, f"{t.elapsed:.2f}s {bad}")


def test_c6_lehmer_sandwich(criterion):
    with Timer() as t:
        sw = verify_sandwich(5000, precision="extended")
        lb = verify_lehmer(2000, precision="extended")
    ok = sw.status is Status.PASS and lb.status is Status.PASS and sw.checked == 2 * 4999 and lb.checked == 2000
    detail = f"sandwich min {sw.min_margin:.4g}@{sw.argmin}, lehmer min {lb.min_margin:.4g}@{lb.argmin}, {t.elapsed:.2f}s"
    criterion("C6 Lehmer sandwich and bracket", ok and t.elapsed < 60, detail)


def test_c7_rewriting(criterion):
    with Timer() as t:
        rules_ok = all(rule_increases(r) for r in rule_catalog())
        bad = []
        count = 0
        for n in range(15, 31):
            target = canonical_max_partition(n)
            for mu in enumerate_partitions(n):
                count += 1
                if normalize(mu) != target:
                    bad.append(mu)
    criterion(
        "C7 rules increase p; normalize reaches canonical for 15<=n<=30",
        rules_ok and not bad and t.elapsed < 120,
        f"{count} partitions, {len(bad)} misses, {t.elapsed:.2f}s",
    )


def test_c8_remarks(criterion):
    with Timer() as t:
        small = [
            (n, m) for n in range(2, 26) for m in range(1, n)
            if log_concavity_check(n, m).outcome is not Outcome.GREATER
        ]
        large = [
            (n, m) for n in range(26, 1001) for m in range(2, n)
            if log_concavity_check(n, m).outcome is not Outcome.GREATER
        ]
        border = [n for n in range(4, 501) if log_concavity_check(n, n).outcome is not Outcome.GREATER]
        inj = [n for n in range(1, 1001) if injection_check(n).outcome is not Outcome.LESS]
    ok = bool(small) and not large and not border and not inj and t.elapsed < 120
    criterion("C8 log-concavity, border case, injection", ok, f"n<=25 violations {small}, {t.elapsed:.2f}s")


def test_c9_property_suites(criterion):
    grid = [1.25 ** i for i in range(24)] + [200.0]
    problems = []
    for ctx in (DOUBLE, EXTENDED):
        for a in range(2, 9):
            s = [S(a, lam, ctx) for lam in grid]
            tt = [T(a, lam, ctx) for lam in grid]
            if not all(x > y for x, y in zip(s, s[1:])) or not all(x < y for x, y in zip(tt, tt[1:])):
                problems.append(("monotone", a, ctx))
        for a in (9, 10, 50, 500, 10_000):
            c, t1, s1 = log_threshold(a, ctx), T(a, 1, ctx), ctx.log(S(a, 1, ctx))
            links = t1 > c + s1 and all(
                T(a, lam, ctx) >= t1 and s1 >= ctx.log(S(a, lam, ctx)) for lam in grid
            )
            if not links:
                problems.append(("chain", a, ctx))
    for precision in ("double", "extended"):
        for n in (2, 9, 100, 1000):
            if not all(c.ok for c in sandwich_check(n, precision)) or not lehmer_check(n, precision).ok:
                problems.append(("bounds", n, precision))
    for n in range(41):
        if not sum(1 for _ in enumerate_partitions(n)) == p_exact(n) == count_partitions_dp(n):
            problems.append(("count", n))
    criterion("C9 property suites at both precisions", not problems, str(problems) if problems else "")
