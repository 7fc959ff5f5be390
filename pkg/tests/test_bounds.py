import math

import mpmath
import pytest
from hypothesis import given, strategies as st

from partineq.bounds import (
    DOUBLE,
    EXTENDED,
    Status,
    certify_positive,
    lehmer_check,
    lehmer_estimate,
    log_bigcount,
    mu,
    sandwich_check,
    sandwich_log_bounds,
)
from partineq.core import p_exact

REF = mpmath.MPContext()
REF.prec = 200


def ref_mu(n):
    return REF.pi / 6 * REF.sqrt(24 * n - 1)


@pytest.mark.parametrize("n, approx", [(1, 2.5110915135822642), (5, 5.711788306577589)])
def test_mu_values(n, approx):
    assert mu(n) == pytest.approx(approx, rel=1e-15)
    assert abs(mu(n, EXTENDED) - ref_mu(n)) < 2.0 ** -105
    assert abs(mu(n) - float(ref_mu(n))) <= math.ulp(approx)


def test_mu_increasing():
    vals = [mu(n) for n in range(1, 2000)]
    assert all(a < b for a, b in zip(vals, vals[1:]))


def test_mu_domain():
    with pytest.raises(ValueError):
        mu(0)


@pytest.mark.parametrize("n", [1, 14, 200])
def test_lehmer_brackets(n):
    for ctx in (DOUBLE, EXTENDED):
        est = lehmer_estimate(n, ctx)
        assert est.mu_n > 0 and est.error_cap > 0 and est.main_term > 0
        assert est.brackets(p_exact(n))


def test_lehmer_main_term_accuracy_at_1000():
    est = lehmer_estimate(1000, EXTENDED)
    ratio = est.main_term / EXTENDED.mpf(p_exact(1000))
    assert 1 - 1e-3 < ratio < 1 + 1e-3
    assert est.log_main_term == pytest.approx(float(EXTENDED.log(est.main_term)), rel=1e-15)


def test_lehmer_relative_error_cap_decreases():
    rel = [float(e.error_cap / e.main_term) for e in (lehmer_estimate(n, EXTENDED) for n in (10, 100, 1000))]
    assert rel[0] > rel[1] > rel[2]


def test_lehmer_overflow_reported():
    with pytest.raises(OverflowError):
        lehmer_estimate(200_000, DOUBLE)
    est = lehmer_estimate(200_000, EXTENDED)
    assert est.main_term > 0 and EXTENDED.isfinite(est.main_term)


@pytest.mark.parametrize("n", [2, 9, 100])
def test_sandwich_small(n):
    for ctx in (DOUBLE, EXTENDED):
        b = sandwich_log_bounds(n, ctx)
        assert b.log_lower < math.log(p_exact(n)) < b.log_upper


def test_sandwich_ten_thousand():
    lo, hi = sandwich_check(10_000, "extended")
    assert lo.status is Status.PASS and hi.status is Status.PASS


def test_sandwich_domain():
    with pytest.raises(ValueError):
        sandwich_log_bounds(1)


def test_log_bigcount_exact_cases():
    assert log_bigcount(1) == 0
    assert log_bigcount(1024) == pytest.approx(10 * math.log(2), rel=2 ** -52)
    assert log_bigcount(p_exact(100)) == pytest.approx(math.log(190569292), rel=2 ** -50)
    with pytest.raises(ValueError):
        log_bigcount(0)


@given(st.integers(min_value=1, max_value=1 << 5000))
def test_log_bigcount_relative_error(x):
    ref = REF.log(REF.mpf(x))
    got = log_bigcount(x)
    if x > 1:
        assert abs(got - ref) / abs(ref) <= 2.0 ** -48
    ext = log_bigcount(x, EXTENDED)
    assert abs(ext - ref) <= 2.0 ** -100 * max(1, abs(ref))


def test_certify_escalates_and_flags_marginal():
    # relative margin 1e-12: double is not trusted, extended resolves it
    c = certify_positive(lambda ctx: (ctx.mpf(1) + ctx.mpf("1e-12") - 1, 1))
    assert c.precision.startswith("mp") and c.status is Status.PASS
    c = certify_positive(lambda ctx: (ctx.mpf(0), 1))
    assert c.status is Status.MARGINAL
    c = certify_positive(lambda ctx: (ctx.mpf(-0.5), 1))
    assert c.status is Status.FAIL and c.precision == "double"


@pytest.mark.parametrize("precision", ["double", "extended"])
def test_checks_pass_at_both_precisions(precision):
    for n in (2, 50, 777):
        assert all(c.ok for c in sandwich_check(n, precision))
        assert lehmer_check(n, precision).ok
