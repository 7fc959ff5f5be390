"""Lehmer's estimate for p(n), the exponential sandwich bounds, and the
precision policy used for every floating point inequality in the package.

Real-valued functions take a ``ctx`` argument: a numeric context exposing
``sqrt``, ``exp``, ``log``, ``sinh``, ``pi`` and ``mpf``.  :data:`DOUBLE` is
mpmath's hardware-float context and :data:`EXTENDED` a 113-bit mpmath
context, so the same formula is evaluated at both working precisions.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable

import mpmath

from .core import PartitionTable, p_exact

DOUBLE = mpmath.fp
EXTENDED = mpmath.MPContext()
EXTENDED.prec = 113

#: relative margin below which a double evaluation is not trusted
ESCALATE_BELOW = 1e-9
#: rounding error estimate = ROUNDING_FACTOR * unit roundoff * scale
ROUNDING_FACTOR = 64

_LN2 = math.log(2.0)


def precision_bits(ctx) -> int:
    return 53 if ctx is DOUBLE else ctx.prec


def precision_name(ctx) -> str:
    return "double" if ctx is DOUBLE else f"mp{ctx.prec}"


def unit_roundoff(ctx) -> float:
    return 2.0 ** -precision_bits(ctx)


class Status(enum.Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    MARGINAL = "MARGINAL"


@dataclass(frozen=True)
class Certified:
    """Sign decision for a floating point margin (positive means the inequality holds)."""

    margin: float
    error: float
    status: Status
    precision: str

    @property
    def ok(self) -> bool:
        return self.status is Status.PASS


MarginFn = Callable[[object], tuple]


def _decide(margin_fn: MarginFn, ctx) -> Certified:
    margin, scale = margin_fn(ctx)
    error = ROUNDING_FACTOR * unit_roundoff(ctx) * float(abs(scale))
    if abs(margin) <= error:
        status = Status.MARGINAL
    else:
        status = Status.PASS if margin > 0 else Status.FAIL
    return Certified(float(margin), error, status, precision_name(ctx))


def certify_positive(margin_fn: MarginFn, precision: str = "auto") -> Certified:
    """Decide ``margin > 0`` where ``margin_fn(ctx)`` returns ``(margin, scale)``.

    ``scale`` is the magnitude of the terms that were combined into the
    margin; it sizes the rounding error estimate.  ``precision`` is
    ``"double"``, ``"extended"`` or ``"auto"`` (double, escalating to extended
    when the relative margin is under :data:`ESCALATE_BELOW`).
    """
    if precision == "extended":
        return _decide(margin_fn, EXTENDED)
    if precision == "double":
        return _decide(margin_fn, DOUBLE)
    if precision != "auto":
        raise ValueError(f"unknown precision {precision!r}")
    try:
        margin, scale = margin_fn(DOUBLE)
    except OverflowError:
        return _decide(margin_fn, EXTENDED)
    if abs(margin) > ESCALATE_BELOW * abs(scale):
        error = ROUNDING_FACTOR * unit_roundoff(DOUBLE) * abs(scale)
        return Certified(float(margin), error, Status.PASS if margin > 0 else Status.FAIL, "double")
    return _decide(margin_fn, EXTENDED)


def mu(n: int, ctx=DOUBLE):
    """pi/6 * sqrt(24n - 1), correctly rounded in double precision."""
    if n < 1:
        raise ValueError(f"mu(n) needs n >= 1, got {n}")
    if ctx is DOUBLE:
        # three roundings in float arithmetic can drift by 2 ulp
        return float(mu(n, EXTENDED))
    return ctx.pi / 6 * ctx.sqrt(ctx.mpf(24 * n - 1))


@dataclass(frozen=True)
class LehmerEstimate:
    n: int
    mu_n: object
    main_term: object
    error_cap: object
    log_main_term: object

    def brackets(self, value: int) -> bool:
        return abs(value - self.main_term) < self.error_cap


def lehmer_estimate(n: int, ctx=DOUBLE) -> LehmerEstimate:
    """Main term and error cap of Lehmer's explicit formula for p(n).

    Raises :class:`OverflowError` when ``e^mu`` leaves the double range
    (n above roughly 76000); use ``ctx=EXTENDED`` there.
    """
    m = mu(n, ctx)
    if ctx is DOUBLE and m > 700:
        raise OverflowError(f"e^mu(n) overflows double precision at n={n}; use EXTENDED")
    em = ctx.exp(m)
    c = ctx.sqrt(ctx.mpf(12)) / (24 * n - 1)
    main = c * ((1 - 1 / m) * em + (1 + 1 / m) / em)
    cap = ctx.pi ** 2 / ctx.sqrt(ctx.mpf(3)) * (ctx.sinh(m) / m ** 3 + ctx.mpf(1) / 6 - 1 / m ** 2)
    log_main = ctx.log(c) + m + ctx.log((1 - 1 / m) + (1 + 1 / m) / em ** 2)
    return LehmerEstimate(n, m, main, cap, log_main)


@dataclass(frozen=True)
class LogBoundPair:
    n: int
    log_lower: object
    log_upper: object


def sandwich_log_bounds(n: int, ctx=DOUBLE) -> LogBoundPair:
    """Natural logs of ``sqrt(3)/(12n) * (1 -+ 1/sqrt(n)) * e^mu(n)``."""
    if n < 2:
        raise ValueError(f"the lower sandwich bound needs n >= 2, got {n}")
    base = ctx.log(ctx.sqrt(ctx.mpf(3)) / (12 * n)) + mu(n, ctx)
    r = 1 / ctx.sqrt(ctx.mpf(n))
    return LogBoundPair(n, base + ctx.log(1 - r), base + ctx.log(1 + r))


def log_bigcount(x: int, ctx=None):
    """ln(x) for a positive integer of any size.

    The integer is reduced to its leading bits plus a binary exponent, so no
    float conversion of ``x`` itself can overflow.  With ``ctx=None`` the
    result is a Python float (relative error near 1e-16); otherwise it is
    computed in ``ctx`` keeping ``prec + 16`` leading bits.
    """
    if x < 1:
        raise ValueError(f"log of nonpositive value {x}")
    keep = 64 if ctx is None else precision_bits(ctx) + 16
    shift = max(x.bit_length() - keep, 0)
    top = x >> shift
    if ctx is None:
        return math.log(top) + shift * _LN2
    return ctx.log(ctx.mpf(top)) + shift * ctx.ln2


def _ctx_log_int(x: int, ctx):
    return log_bigcount(x, None if ctx is DOUBLE else ctx)


@dataclass
class SweepReport:
    name: str
    checked: int
    failures: list
    marginal: list
    min_margin: float
    argmin: int | None

    @property
    def status(self) -> Status:
        if self.failures:
            return Status.FAIL
        if self.marginal:
            return Status.MARGINAL
        return Status.PASS

    def to_dict(self) -> dict:
        return {
            "check": self.name,
            "status": self.status.value,
            "checked": self.checked,
            "failures": self.failures,
            "marginal": self.marginal,
            "min_margin": repr(self.min_margin),
            "argmin": self.argmin,
        }


def sandwich_check(n: int, precision: str = "auto", table: PartitionTable | None = None) -> tuple[Certified, Certified]:
    """Certify ``log_lower(n) < ln p(n)`` and ``ln p(n) < log_upper(n)``."""
    pn = p_exact(n, table)

    def lower(ctx):
        lp = _ctx_log_int(pn, ctx)
        b = sandwich_log_bounds(n, ctx)
        return lp - b.log_lower, abs(lp) + abs(b.log_lower)

    def upper(ctx):
        lp = _ctx_log_int(pn, ctx)
        b = sandwich_log_bounds(n, ctx)
        return b.log_upper - lp, abs(lp) + abs(b.log_upper)

    return certify_positive(lower, precision), certify_positive(upper, precision)


def lehmer_check(n: int, precision: str = "auto", table: PartitionTable | None = None) -> Certified:
    """Certify ``|p(n) - main_term(n)| < error_cap(n)``."""
    pn = p_exact(n, table)

    def margin(ctx):
        est = lehmer_estimate(n, ctx)
        pv = ctx.mpf(pn)
        # converting p(n) itself rounds, hence |pv| in the scale
        return est.error_cap - abs(pv - est.main_term), abs(est.error_cap) + abs(pv) + abs(est.main_term)

    return certify_positive(margin, precision)


def _sweep(name: str, ns, check) -> SweepReport:
    failures, marginal = [], []
    best, arg = math.inf, None
    count = 0
    for n in ns:
        for c in check(n):
            count += 1
            if c.status is Status.FAIL:
                failures.append(n)
            elif c.status is Status.MARGINAL:
                marginal.append(n)
            if c.margin < best:
                best, arg = c.margin, n
    return SweepReport(name, count, sorted(set(failures)), sorted(set(marginal)), best, arg)


def verify_sandwich(n_max: int = 5000, precision: str = "extended") -> SweepReport:
    return _sweep("sandwich", range(2, n_max + 1), lambda n: sandwich_check(n, precision))


def verify_lehmer(n_max: int = 2000, precision: str = "extended") -> SweepReport:
    return _sweep("lehmer", range(1, n_max + 1), lambda n: (lehmer_check(n, precision),))
