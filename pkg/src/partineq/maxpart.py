"""Maximizers of the extended partition function p(mu) over P(n).

The closed form uses only parts 4, 5 and 6 (p = 5, 7, 11), chosen by n mod 4.
A brute-force search over P(n) serves as the oracle, and a small rewriting
system of p-increasing replacements drives arbitrary partitions to the
maximizer.
"""

from __future__ import annotations

import os
import warnings
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterator

from .core import Partition, PartitionTable, format_partition, p_exact, p_extended, partition_tuples
from .inequality import Outcome

#: maxima for n <= 14, with their maximizers
TABLE2 = {
    1: (1, 1, [(1,)]),
    2: (2, 2, [(2,)]),
    3: (3, 3, [(3,)]),
    4: (5, 5, [(4,)]),
    5: (7, 7, [(5,)]),
    6: (11, 11, [(6,)]),
    7: (15, 15, [(7,), (4, 3)]),
    8: (22, 25, [(4, 4)]),
    9: (30, 35, [(5, 4)]),
    10: (42, 55, [(6, 4)]),
    11: (56, 77, [(6, 5)]),
    12: (77, 125, [(4, 4, 4)]),
    13: (101, 175, [(5, 4, 4)]),
    14: (135, 275, [(6, 4, 4)]),
}

ENUM_CAP_ENV = "PARTINEQ_ENUM_CAP"
DEFAULT_ENUM_CAP = 50


def enumeration_cap() -> int:
    return int(os.environ.get(ENUM_CAP_ENV, DEFAULT_ENUM_CAP))


class TieError(ValueError):
    """n = 7 has two maximizers, so there is no single canonical one."""

    def __init__(self, n: int, maximizers):
        super().__init__(f"maxp({n}) is attained at several partitions: {', '.join(map(str, maximizers))}")
        self.n = n
        self.maximizers = maximizers


class EnumerationCapExceeded(ValueError):
    pass


def canonical_max_partition(n: int) -> Partition:
    """The maximizer built from parts 4, 5, 6 by n mod 4 ((n) itself for n <= 3).

    Raises :class:`TieError` for n = 7.
    """
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    if n == 7:
        raise TieError(7, [Partition((7,)), Partition((4, 3))])
    if n <= 3:
        return Partition((n,)) if n else Partition()
    head = {0: (), 1: (5,), 2: (6,), 3: (6, 5)}[n % 4]
    fours = (n - sum(head)) // 4
    return Partition(head + (4,) * fours)


def maxp_closed_form(n: int) -> int:
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    if n == 0:
        return 1
    if n < 8:
        return TABLE2[n][1]
    r = n % 4
    if r == 0:
        return 5 ** (n // 4)
    if r == 1:
        return 7 * 5 ** ((n - 5) // 4)
    if r == 2:
        return 11 * 5 ** ((n - 6) // 4)
    return 11 * 7 * 5 ** ((n - 11) // 4)


@dataclass
class MaxResult:
    n: int
    maxp: int
    argmax: list

    def merge(self, other: "MaxResult") -> "MaxResult":
        if other.maxp > self.maxp:
            return other
        if other.maxp < self.maxp:
            return self
        return MaxResult(self.n, self.maxp, sorted(set(self.argmax) | set(other.argmax), reverse=True))

    def to_dict(self) -> dict:
        return {"n": self.n, "maxp": str(self.maxp), "argmax": [format_partition(m) for m in self.argmax]}


def maxp_bruteforce(n: int, cap: int | None = None, table: PartitionTable | None = None) -> MaxResult:
    """Maximum of p(mu) over all of P(n), with every maximizer.

    Refuses n above the enumeration cap (default 50, overridable through the
    ``PARTINEQ_ENUM_CAP`` environment variable).
    """
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    cap = enumeration_cap() if cap is None else cap
    if n > cap:
        raise EnumerationCapExceeded(f"n={n} exceeds the enumeration cap {cap}")
    if cap > DEFAULT_ENUM_CAP and n > DEFAULT_ENUM_CAP:
        warnings.warn(f"enumerating P({n}) has {p_exact(n)} partitions", stacklevel=2)
    values = [p_exact(k, table) for k in range(n + 1)]
    best, argmax = 0, []
    for parts in partition_tuples(n):
        v = 1
        for x in parts:
            v *= values[x]
        if v > best:
            best, argmax = v, [parts]
        elif v == best:
            argmax.append(parts)
    return MaxResult(n, best, [Partition(t) for t in argmax])


@dataclass
class Theorem2Report:
    n_max: int
    rows: list
    counterexamples: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def to_dict(self) -> dict:
        return {
            "n_max": self.n_max,
            "status": "PASS" if self.ok else "FAIL",
            "rows": [
                {"n": n, "p": str(pn), "maxp": str(r.maxp), "argmax": [format_partition(m) for m in r.argmax]}
                for n, pn, r in self.rows
            ],
            "counterexamples": self.counterexamples,
        }


def verify_theorem2(n_max: int = DEFAULT_ENUM_CAP, table: PartitionTable | None = None) -> Theorem2Report:
    """Brute force against the closed form and the canonical maximizer for 1 <= n <= n_max."""
    if n_max < 4:
        raise ValueError(f"n_max must be at least 4, got {n_max}")
    report = Theorem2Report(n_max, [])
    for n in range(1, n_max + 1):
        r = maxp_bruteforce(n, table=table)
        report.rows.append((n, p_exact(n, table), r))
        expected_value = maxp_closed_form(n)
        if n == 7:
            expected = {Partition((7,)), Partition((4, 3))}
        else:
            expected = {canonical_max_partition(n)}
        if r.maxp != expected_value:
            report.counterexamples.append({"n": n, "expected": str(expected_value), "found": str(r.maxp)})
        if set(r.argmax) != expected:
            report.counterexamples.append({
                "n": n,
                "expected": sorted(map(format_partition, expected)),
                "found": sorted(map(format_partition, r.argmax)),
            })
        if n in TABLE2:
            pn, mx, mus = TABLE2[n]
            if (p_exact(n, table), r.maxp, {Partition(m) for m in mus}) != (pn, mx, set(r.argmax)):
                report.counterexamples.append({"n": n, "expected": f"table row {TABLE2[n]}", "found": r.to_dict()})
    return report


# -- replacement rules ------------------------------------------------------


@dataclass(frozen=True)
class ReplacementRule:
    """A weight-preserving local rewrite that increases p(mu).

    ``kind`` is ``"fixed"`` (replace the sub-multiset ``from_parts`` by
    ``to_parts``), ``"split"`` (a part k >= 8 becomes floor(k/2), ceil(k/2))
    or ``"absorb"`` (drop a part 1 and add 1 to the largest part).
    """

    name: str
    from_parts: tuple
    to_parts: tuple
    kind: str = "fixed"
    guard: Callable[[Counter], bool] | None = None

    def __str__(self) -> str:
        return self.name


def _fixed(src, dst) -> ReplacementRule:
    arrow = ",".join(map(str, src)) + "→" + ",".join(map(str, dst))
    return ReplacementRule(arrow, tuple(src), tuple(dst))


_CATALOG = (
    ReplacementRule("k→⌊k/2⌋,⌈k/2⌉ (k≥8)", (8,), (4, 4), kind="split"),
    ReplacementRule("1→(largest+1)", (1,), (), kind="absorb"),
    _fixed((2, 2), (4,)),
    _fixed((3, 3), (6,)),
    _fixed((5, 5), (6, 4)),
    _fixed((6, 6), (4, 4, 4)),
    _fixed((7, 7), (6, 4, 4)),
    _fixed((7, 2), (5, 4)),
    _fixed((7, 3), (6, 4)),
    _fixed((7, 4), (6, 5)),
    _fixed((7, 5), (4, 4, 4)),
    _fixed((7, 6), (5, 4, 4)),
    _fixed((6, 2), (4, 4)),
    _fixed((6, 3), (5, 4)),
    _fixed((5, 4, 2), (6, 5)),
    _fixed((5, 3), (4, 4)),
    _fixed((4, 2), (6,)),
    _fixed((4, 4, 3), (6, 5)),
)


def rule_catalog() -> list[ReplacementRule]:
    """All rules, in the priority order used by :func:`normalize`.

    The split and absorb rules are parametric; their ``from_parts`` and
    ``to_parts`` hold the smallest instance.
    """
    return list(_CATALOG)


def apply_rule(mu: Partition, rule: ReplacementRule) -> Partition | None:
    """Apply ``rule`` once, or return None when it does not apply."""
    counts = mu.multiplicities()
    if rule.guard is not None and not rule.guard(counts):
        return None
    parts = list(mu.parts)
    if rule.kind == "split":
        k = mu.largest
        if k < 8:
            return None
        parts.remove(k)
        return Partition.of(parts + [k // 2, k - k // 2])
    if rule.kind == "absorb":
        if counts[1] == 0 or len(parts) < 2:
            return None
        parts.pop()  # the smallest part is a 1
        parts[0] += 1
        return Partition.of(parts)
    need = Counter(rule.from_parts)
    if any(counts[j] < c for j, c in need.items()):
        return None
    for j in rule.from_parts:
        parts.remove(j)
    return Partition.of(parts + list(rule.to_parts))


@dataclass(frozen=True)
class RewriteStep:
    rule: ReplacementRule
    before: Partition
    after: Partition
    value_before: int
    value_after: int


def normalize_trace(mu: Partition, table: PartitionTable | None = None) -> Iterator[RewriteStep]:
    """Yield each rewrite step; the first applicable rule in catalog order wins."""
    value = p_extended(mu, table)
    while True:
        for rule in _CATALOG:
            nu = apply_rule(mu, rule)
            if nu is not None:
                break
        else:
            return
        new = p_extended(nu, table)
        if new <= value:
            raise AssertionError(f"rule {rule} did not increase p: {mu} -> {nu}")
        yield RewriteStep(rule, mu, nu, value, new)
        mu, value = nu, new


def normalize(mu: Partition, table: PartitionTable | None = None) -> Partition:
    """Rewrite ``mu`` until no rule applies.

    Terminates because p(mu) strictly increases over the finite set P(n).
    For n >= 15 the fixed point is the canonical maximizer; below that it
    may be another local maximum (e.g. (3,2) stays put).
    """
    for step in normalize_trace(mu, table):
        mu = step.after
    return mu


def rule_increases(rule: ReplacementRule, k_max: int = 100, table: PartitionTable | None = None) -> bool:
    """Exact check that ``rule`` raises p as a standalone multiset.

    Parametric rules are checked for every instance with parts up to ``k_max``.
    """
    if rule.kind == "split":
        return all(
            p_exact(k // 2, table) * p_exact(k - k // 2, table) > p_exact(k, table) for k in range(8, k_max + 1)
        )
    if rule.kind == "absorb":
        return all(p_exact(k + 1, table) > p_exact(k, table) * p_exact(1, table) for k in range(1, k_max + 1))
    return p_extended(rule.to_parts, table) > p_extended(rule.from_parts, table)


# -- closing remarks: log-concavity and the injection inequality -------------


@dataclass(frozen=True)
class ProductVerdict:
    lhs: int
    rhs: int
    outcome: Outcome

    def __str__(self) -> str:
        return f"{self.outcome.value} {self.lhs} {self.outcome.symbol} {self.rhs}"


def log_concavity_check(n: int, m: int, table: PartitionTable | None = None) -> ProductVerdict:
    """Compare p(n)^2 with p(n-m) p(n+m); m = 1 and m = n are allowed."""
    if m < 0 or n - m < 0:
        raise ValueError(f"need 0 <= m <= n, got n={n}, m={m}")
    lhs = p_exact(n, table) ** 2
    rhs = p_exact(n - m, table) * p_exact(n + m, table)
    return ProductVerdict(lhs, rhs, Outcome.compare(lhs, rhs))


def injection_check(n: int, table: PartitionTable | None = None) -> ProductVerdict:
    """Compare p(1) p(n) with p(n+1); expected LESS for every n >= 1."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    lhs = p_exact(1, table) * p_exact(n, table)
    rhs = p_exact(n + 1, table)
    return ProductVerdict(lhs, rhs, Outcome.compare(lhs, rhs))


@dataclass
class RemarksReport:
    n_max: int
    concavity_violations_small: list
    concavity_failures_large: list
    border_failures: list
    injection_failures: list

    @property
    def ok(self) -> bool:
        return (
            bool(self.concavity_violations_small)
            and not self.concavity_failures_large
            and not self.border_failures
            and not self.injection_failures
        )

    def to_dict(self) -> dict:
        return {
            "n_max": self.n_max,
            "status": "PASS" if self.ok else "FAIL",
            "violations_n_le_25": [list(x) for x in self.concavity_violations_small],
            "failures_n_gt_25": [list(x) for x in self.concavity_failures_large],
            "border_failures": self.border_failures,
            "injection_failures": self.injection_failures,
        }


def verify_remarks(n_max: int = 1000, border_max: int = 500, table: PartitionTable | None = None) -> RemarksReport:
    """Log-concavity for 1 <= m < n <= n_max, the border case m = n, and p(1)p(n) < p(n+1).

    m = 1 is swept too: every violation with n <= 25 has m = 1.
    """
    small, large = [], []
    for n in range(2, n_max + 1):
        pn2 = p_exact(n, table) ** 2
        for m in range(1, n):
            if not pn2 > p_exact(n - m, table) * p_exact(n + m, table):
                (small if n <= 25 else large).append((n, m))
    border = [n for n in range(4, border_max + 1) if log_concavity_check(n, n, table).outcome is not Outcome.GREATER]
    inj = [n for n in range(1, n_max + 1) if injection_check(n, table).outcome is not Outcome.LESS]
    return RemarksReport(n_max, small, large, border, inj)
