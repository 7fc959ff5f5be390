"""The multiplicative inequality p(a)p(b) >= p(a+b).

Exact verdicts come from integer arithmetic.  The analytic side reduces the
inequality for b = lam*a to the sign of

    gap(a, lam) = T(a, lam) - log(2a*sqrt(3)) - log(S(a, lam))

which increases in lam.  For a >= 9 the gap is already positive at lam = 1;
for 2 <= a <= 8 the root lam_a is found by bisection and the pairs with
b <= lam_a * a are checked exactly.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .bounds import DOUBLE, EXTENDED, Certified, Status, certify_positive, precision_name
from .core import PartitionTable, p_exact

#: failures and equalities for 1 < a <= b, from the exceptional-pair remark
KNOWN_FAILURES = frozenset({(2, 2), (2, 3), (2, 4), (2, 5), (3, 3), (3, 5)})
KNOWN_EQUALITIES = frozenset({(2, 6), (3, 4), (2, 7)})
#: printed prefixes of lam_a, a = 2..8
PRINTED_LAMBDA = {2: "57.08", 3: "7.42", 4: "3.62", 5: "2.36", 6: "1.74", 7: "1.38", 8: "1.15"}

DEFAULT_TOL = 1e-9
EXHAUSTIVE_SLACK = 2


class Outcome(enum.Enum):
    GREATER = "GREATER"
    EQUAL = "EQUAL"
    LESS = "LESS"

    @property
    def symbol(self) -> str:
        return {"GREATER": ">", "EQUAL": "=", "LESS": "<"}[self.value]

    @classmethod
    def compare(cls, lhs: int, rhs: int) -> "Outcome":
        if lhs > rhs:
            return cls.GREATER
        if lhs == rhs:
            return cls.EQUAL
        return cls.LESS


@dataclass(frozen=True)
class InequalityVerdict:
    a: int
    b: int
    lhs: int
    rhs: int
    outcome: Outcome

    def __str__(self) -> str:
        return f"{self.outcome.value} {self.lhs} {self.outcome.symbol} {self.rhs}"


def compare_products(a: int, b: int, table: PartitionTable | None = None) -> InequalityVerdict:
    """Exact comparison of p(a)p(b) with p(a+b).

    ``a == 1`` (or ``b == 1``) is accepted and always comes out LESS.
    """
    if a < 1 or b < 1:
        raise ValueError(f"a and b must be positive, got ({a}, {b})")
    lhs = p_exact(a, table) * p_exact(b, table)
    rhs = p_exact(a + b, table)
    return InequalityVerdict(a, b, lhs, rhs, Outcome.compare(lhs, rhs))


def _pairs_json(pairs) -> list:
    return [list(p) for p in sorted(pairs)]


@dataclass
class ExceptionalSets:
    failures: set = field(default_factory=set)
    equalities: set = field(default_factory=set)
    scan_bound: int = 0

    def to_dict(self) -> dict:
        return {
            "scan_bound": self.scan_bound,
            "failures": _pairs_json(self.failures),
            "equalities": _pairs_json(self.equalities),
        }


def scan_exceptional(sum_bound: int, table: PartitionTable | None = None) -> ExceptionalSets:
    """Classify every 1 < a <= b with a + b <= sum_bound."""
    if sum_bound < 4:
        raise ValueError(f"sum_bound must be at least 4, got {sum_bound}")
    out = ExceptionalSets(scan_bound=sum_bound)
    for a in range(2, sum_bound // 2 + 1):
        for b in range(a, sum_bound - a + 1):
            v = compare_products(a, b, table)
            if v.outcome is Outcome.LESS:
                out.failures.add((a, b))
            elif v.outcome is Outcome.EQUAL:
                out.equalities.add((a, b))
    return out


def _check_domain(a, lam) -> None:
    if a < 2:
        raise ValueError(f"a must be >= 2, got {a}")
    if lam < 1:
        raise ValueError(f"lambda must be >= 1, got {lam}")


def S(a: int, lam, ctx=DOUBLE):
    """(1 + 1/sqrt(a + lam*a)) / ((1 - 1/sqrt(a)) (1 - 1/sqrt(lam*a))); decreasing in lam."""
    _check_domain(a, lam)
    a, lam = ctx.mpf(a), ctx.mpf(lam)
    return (1 + 1 / ctx.sqrt(a + lam * a)) / ((1 - 1 / ctx.sqrt(a)) * (1 - 1 / ctx.sqrt(lam * a)))


def T(a: int, lam, ctx=DOUBLE):
    """mu(a) + mu(lam*a) - mu(a + lam*a) with mu(x) = pi/6 sqrt(24x - 1); increasing in lam."""
    _check_domain(a, lam)
    a, lam = ctx.mpf(a), ctx.mpf(lam)
    return ctx.pi / 6 * (
        ctx.sqrt(24 * a - 1) + ctx.sqrt(24 * lam * a - 1) - ctx.sqrt(24 * (a + lam * a) - 1)
    )


def log_threshold(a: int, ctx=DOUBLE):
    """log(2a*sqrt(3)), the constant part of the gap condition."""
    return ctx.log(2 * a * ctx.sqrt(ctx.mpf(3)))


def gap_function(a: int, lam, ctx=DOUBLE):
    """T(a, lam) - log(2a*sqrt(3)) - log(S(a, lam)); positive means the inequality holds for b = lam*a."""
    return T(a, lam, ctx) - log_threshold(a, ctx) - ctx.log(S(a, lam, ctx))


def _gap_margin(a, lam):
    def fn(ctx):
        t = T(a, lam, ctx)
        c = log_threshold(a, ctx)
        ls = ctx.log(S(a, lam, ctx))
        # T is a difference of square roots of size ~ sqrt(24 lam a)
        scale = abs(c) + abs(ls) + 3 * ctx.pi / 6 * ctx.sqrt(24 * (a + lam * a))
        return t - c - ls, scale

    return fn


def certify_gap(a: int, lam, precision: str = "auto") -> Certified:
    return certify_positive(_gap_margin(a, lam), precision)


@dataclass(frozen=True)
class LambdaThreshold:
    a: int
    lambda_a: float
    bracket: tuple
    precision_used: str
    steps: int

    def prefix(self, digits: int = 2) -> str:
        """Truncated (not rounded) decimal prefix, as printed in tables."""
        q = math.floor(self.lambda_a * 10 ** digits)
        return f"{q // 10 ** digits}.{q % 10 ** digits:0{digits}d}"

    def to_dict(self) -> dict:
        return {
            "a": self.a,
            "lambda_a": repr(self.lambda_a),
            "bracket": [repr(self.bracket[0]), repr(self.bracket[1])],
            "precision": self.precision_used,
        }


class BracketError(RuntimeError):
    pass


def lambda_threshold(a: int, tol: float = DEFAULT_TOL, precision: str = "auto") -> LambdaThreshold:
    """Root of ``lam -> gap_function(a, lam)`` for 2 <= a <= 8, by bisection.

    The upper end of the bracket starts at 2 and doubles until the gap is
    positive.  Every midpoint's sign is certified; a midpoint whose sign
    cannot be resolved even at extended precision is returned as the root.
    """
    if not 2 <= a <= 8:
        raise ValueError(f"lambda_a is defined for 2 <= a <= 8, got {a}")
    if tol <= 0:
        raise ValueError("tol must be positive")
    used = {"double"}

    def sign(lam) -> int:
        c = certify_gap(a, lam, precision)
        used.add(c.precision)
        if c.status is Status.MARGINAL:
            return 0
        return 1 if c.status is Status.PASS else -1

    lo, hi = 1.0, 2.0
    if sign(lo) >= 0:
        raise BracketError(f"gap({a}, 1) is not negative")
    while sign(hi) <= 0:
        lo, hi = hi, 2 * hi
        if hi > 1e12:
            raise BracketError(f"no sign change for a={a}")
    steps = 0
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if mid in (lo, hi):
            break
        s = sign(mid)
        steps += 1
        if s == 0:
            lo = hi = mid
            break
        if s < 0:
            lo = mid
        else:
            hi = mid
    assert sign(lo) <= 0 <= sign(hi) or lo == hi
    ext = precision_name(EXTENDED)
    return LambdaThreshold(a, (lo + hi) / 2, (lo, hi), ext if ext in used else "double", steps)


def lambda_table(tol: float = DEFAULT_TOL, precision: str = "auto") -> list[LambdaThreshold]:
    return [lambda_threshold(a, tol, precision) for a in range(2, 9)]


@dataclass
class LargeAReport:
    a_max: int
    checked: int
    failures: list
    marginal: list
    min_margin: float
    argmin: int
    precision: str

    @property
    def status(self) -> Status:
        if self.failures:
            return Status.FAIL
        if self.marginal:
            return Status.MARGINAL
        return Status.PASS

    def to_dict(self) -> dict:
        return {
            "a_max": self.a_max,
            "status": self.status.value,
            "checked": self.checked,
            "failures": self.failures,
            "marginal": self.marginal,
            "min_margin": repr(self.min_margin),
            "argmin": self.argmin,
            "precision": self.precision,
        }


def verify_large_a(a_max: int = 10_000, precision: str = "extended") -> LargeAReport:
    """Check gap(a, 1) > 0 for 9 <= a <= a_max."""
    if a_max < 9:
        raise ValueError(f"a_max must be at least 9, got {a_max}")
    failures, marginal = [], []
    best, arg = math.inf, 9
    for a in range(9, a_max + 1):
        c = certify_gap(a, 1, precision)
        if c.status is Status.FAIL:
            failures.append(a)
        elif c.status is Status.MARGINAL:
            marginal.append(a)
        if c.margin < best:
            best, arg = c.margin, a
    return LargeAReport(a_max, a_max - 8, failures, marginal, best, arg, precision)


@dataclass
class Theorem1Report:
    large_a: LargeAReport
    thresholds: list
    regions: dict
    found: ExceptionalSets
    unexpected: list
    status: Status = Status.PASS
    problems: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.status is Status.PASS

    def to_dict(self) -> dict:
        return {
            "status": self.status.value,
            "large_a": self.large_a.to_dict(),
            "thresholds": [t.to_dict() for t in self.thresholds],
            "exhaustive_b_max": {str(a): b for a, b in sorted(self.regions.items())},
            "failures": _pairs_json(self.found.failures),
            "equalities": _pairs_json(self.found.equalities),
            "expected_failures": _pairs_json(KNOWN_FAILURES),
            "expected_equalities": _pairs_json(KNOWN_EQUALITIES),
            "counterexamples": self.unexpected,
            "problems": self.problems,
        }


def verify_theorem1(
    a_max: int = 10_000,
    tol: float = DEFAULT_TOL,
    precision: str = "extended",
    table: PartitionTable | None = None,
) -> Theorem1Report:
    """Analytic sweep for a >= 9 plus the exhaustive exact check for 2 <= a <= 8."""
    large = verify_large_a(a_max, precision)
    thresholds = lambda_table(tol)
    regions = {}
    found = ExceptionalSets()
    unexpected = []
    for th in thresholds:
        a = th.a
        b_max = math.ceil(th.lambda_a * a) + EXHAUSTIVE_SLACK
        regions[a] = b_max
        found.scan_bound = max(found.scan_bound, a + b_max)
        for b in range(a, b_max + 1):
            v = compare_products(a, b, table)
            if v.outcome is Outcome.LESS:
                found.failures.add((a, b))
            elif v.outcome is Outcome.EQUAL:
                found.equalities.add((a, b))
            if a + b > 8:
                bad = v.outcome is Outcome.LESS or (v.outcome is Outcome.EQUAL) != ((a, b) == (2, 7))
                if bad:
                    unexpected.append({"a": a, "b": b, "lhs": str(v.lhs), "rhs": str(v.rhs), "outcome": v.outcome.value})
    problems = []
    if large.status is not Status.PASS:
        problems.append(f"gap(a,1) check {large.status.value} for a in {large.failures + large.marginal}")
    if found.failures != KNOWN_FAILURES:
        problems.append(f"failure set mismatch: {_pairs_json(found.failures)}")
    if found.equalities != KNOWN_EQUALITIES:
        problems.append(f"equality set mismatch: {_pairs_json(found.equalities)}")
    if unexpected:
        problems.append(f"{len(unexpected)} verdicts contradict the a+b>8 statement")
    if large.status is Status.MARGINAL and len(problems) == 1:
        status = Status.MARGINAL
    else:
        status = Status.FAIL if problems else Status.PASS
    return Theorem1Report(large, thresholds, regions, found, unexpected, status, problems)
