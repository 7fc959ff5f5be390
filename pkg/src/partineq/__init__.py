"""Verification toolkit for the multiplicative inequality p(a)p(b) >= p(a+b)
and the maximizers of p(mu) = prod p(mu_j) over partitions of n."""

from .bounds import (
    DOUBLE,
    EXTENDED,
    Certified,
    LehmerEstimate,
    LogBoundPair,
    Status,
    certify_positive,
    lehmer_estimate,
    log_bigcount,
    mu,
    sandwich_log_bounds,
)
from .core import (
    ParseError,
    Partition,
    PartitionTable,
    enumerate_partitions,
    format_partition,
    p_exact,
    p_extended,
    parse_partition,
)
from .inequality import (
    ExceptionalSets,
    InequalityVerdict,
    LambdaThreshold,
    Outcome,
    S,
    T,
    compare_products,
    gap_function,
    lambda_threshold,
    scan_exceptional,
    verify_large_a,
    verify_theorem1,
)
from .maxpart import (
    MaxResult,
    ReplacementRule,
    TieError,
    apply_rule,
    canonical_max_partition,
    injection_check,
    log_concavity_check,
    maxp_bruteforce,
    maxp_closed_form,
    normalize,
    rule_catalog,
    verify_theorem2,
)

__version__ = "0.1.0"
