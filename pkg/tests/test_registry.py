"""Registry contents, descriptor flags and lookup errors."""

import pytest

from distbench import Family, describe, evaluate, list_metrics, pairwise, similarity
from distbench.errors import (
    DimensionMismatchError,
    DomainViolationError,
    UnknownMetricError,
)

EXPECTED_ABBREVS = (
    "MD", "CD", "ED", "LD", "CanD", "SD", "SoD", "KD", "MCD", "NID",
    "JacD", "CosD", "DicD", "ChoD", "BD", "SCD", "MatD", "HeD", "SED",
    "ClaD", "NCSD", "PCSD", "SquD", "PSCSD", "DivD", "ASCSD", "AD",
    "MCED", "SCSD", "KLD", "JefD", "KDD", "TopD", "JSD", "JDD", "VWHD",
    "VSDF1", "VSDF2", "VSDF3", "MSCD", "MiSCSD", "AvgD", "KJD", "TanD",
    "PeaD", "CorD", "SPeaD", "HamD", "HauD", "CSSD", "WIAD", "MeeD",
    "MotD", "HasD",
)

FAMILY_SIZES = {
    Family.MINKOWSKI: 3,
    Family.L1: 7,
    Family.INNER_PRODUCT: 4,
    Family.SQUARED_CHORD: 4,
    Family.SQUARED_L2: 11,
    Family.SHANNON_ENTROPY: 6,
    Family.VICISSITUDE: 6,
    Family.OTHER: 13,
}


def test_registry_has_exactly_the_54_measures():
    assert set(list_metrics()) == set(EXPECTED_ABBREVS)
    assert len(list_metrics()) == 54


def test_family_sizes():
    for family, size in FAMILY_SIZES.items():
        assert len(list_metrics(family)) == size, family
    assert sum(FAMILY_SIZES.values()) == 54


def test_describe_examples():
    hasd = describe("HasD")
    assert hasd.family is Family.OTHER
    assert hasd.full_metric
    kld = describe("KLD")
    assert not kld.symmetric
    assert kld.family is Family.SHANNON_ENTROPY
    ncsd = describe("NCSD")
    assert not ncsd.symmetric


def test_unknown_metric():
    with pytest.raises(UnknownMetricError):
        describe("XYZ")


def test_descriptor_carries_default_guard_policy():
    from distbench import DEFAULT_GUARD, GuardPolicy
    assert describe("CanD").guard == DEFAULT_GUARD
    assert describe("CanD").guard.epsilon == 1e-12
    # an explicit guard overrides the descriptor's policy
    strict = GuardPolicy(zero_denominator="term_is_zero")
    assert evaluate("VWHD", [0.0, 1.0], [2.0, 1.0], guard=strict) == 0.0


def test_full_metric_implies_other_flags():
    for abbrev in list_metrics():
        desc = describe(abbrev)
        if desc.full_metric:
            assert desc.symmetric and desc.zero_self and desc.nonneg_output, abbrev


def test_nonneg_input_flags():
    required = {a for a in list_metrics() if describe(a).requires_nonneg_inputs}
    assert {"BD", "SCD", "MatD", "HeD"} <= required  # sqrt of raw values
    assert {"KLD", "JefD", "KDD", "TopD", "JSD", "JDD"} <= required  # logs
    assert "HasD" not in required  # has an explicit negative-value branch
    assert "ED" not in required


def test_domain_violation_on_negative_inputs():
    with pytest.raises(DomainViolationError):
        evaluate("SCD", [1.0, -2.0], [1.0, 1.0])
    with pytest.raises(DomainViolationError):
        evaluate("KLD", [1.0, 2.0], [-1.0, 1.0])
    assert evaluate("HasD", [-1.0, 2.0], [1.0, 1.0]) >= 0.0


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        evaluate("ED", [1.0, 2.0], [1.0, 2.0, 3.0])
    with pytest.raises(DimensionMismatchError):
        pairwise("ED", [1.0, 2.0], [[1.0, 2.0, 3.0]])


def test_similarity_is_one_minus_distance():
    x, y = [5.1, 3.5, 1.4, 0.3], [5.4, 3.4, 1.7, 0.2]
    assert similarity("CosD", x, y) == 1.0 - evaluate("CosD", x, y)
    assert similarity("MotD", x, x) == 0.5


def test_pairwise_matches_evaluate():
    import numpy as np
    rng = np.random.default_rng(3)
    rows = rng.uniform(0.0, 5.0, size=(8, 6))
    q = rng.uniform(0.0, 5.0, size=6)
    for abbrev in list_metrics():
        got = pairwise(abbrev, q, rows)
        want = [evaluate(abbrev, q, row) for row in rows]
        assert got == pytest.approx(want, abs=1e-12), abbrev
