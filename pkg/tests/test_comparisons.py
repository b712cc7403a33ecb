#!/usr/bin/env python3
"""
Comparison envelope tests
"""

import math
import os
import sys

import numpy as np
import pytest
from hypothesis import given, strategies as st

current_dir = os.path.dirname(os.path.abspath(__file__))
src_dir = os.path.join(os.path.dirname(current_dir), 'src')
if src_dir not in sys.path:
    sys.path.insert(0, src_dir)

from comparisons import (
    Relation,
    envelope_caratheodory_kobayashi,
    envelope_for,
    envelope_general,
    envelope_kobayashi_bergman,
    envelope_kobayashi_ke,
    envelope_table,
    envelope_volume_pair,
    parse_relation,
    pinching_metric,
    pinching_volume,
)
from squeeze_errors import NotDecreasing, OutOfRange

S_GRID = [round(0.05 * i, 2) for i in range(1, 21)]
DIMENSIONS = list(range(1, 9))


def test_pinching_functions():
    assert pinching_metric(0.5) == 2.0
    assert pinching_volume(0.5, 1) == 4.0
    with pytest.raises(OutOfRange):
        pinching_metric(1.0)
    with pytest.raises(OutOfRange):
        pinching_volume(0.0, 2)
    with pytest.raises(OutOfRange):
        pinching_volume(0.5, 1.5)
    with pytest.raises(OutOfRange):
        pinching_volume(0.5, 0)


def test_caratheodory_kobayashi():
    envelope = envelope_caratheodory_kobayashi(0.4)
    assert (envelope.low, envelope.high) == (0.4, 1.0)
    assert envelope.relation is Relation.METRIC_CK


def test_bergman_at_full_squeezing():
    envelope = envelope_kobayashi_bergman(1.0, 1)
    assert envelope.low == 1.0
    assert envelope.high == 8.0 * math.pi


def test_kahler_einstein_constants():
    envelope = envelope_kobayashi_ke(0.5, 4)
    assert envelope.low == pytest.approx(math.sqrt(0.5) * 0.5, abs=1e-15)
    assert envelope.high == pytest.approx(8.0 ** 1.5, rel=1e-14)
    assert envelope.consistent


def test_kahler_einstein_one_dimensional_inconsistency():
    low_s = envelope_kobayashi_ke(0.5, 1)
    assert (low_s.low, low_s.high) == pytest.approx((math.sqrt(2.0) * 0.5, 1.0))
    assert low_s.consistent
    high_s = envelope_kobayashi_ke(0.9, 1)
    assert not high_s.consistent
    assert not envelope_volume_pair(0.9, 1, Relation.VOLUME_KKE).consistent


def test_volume_any_is_reciprocal():
    for s in S_GRID:
        for n in DIMENSIONS:
            envelope = envelope_volume_pair(s, n, Relation.VOLUME_ANY)
            assert envelope.low * envelope.high == pytest.approx(1.0, rel=1e-12)


def test_volume_bergman_and_ke():
    kb = envelope_volume_pair(1.0, 1, Relation.VOLUME_KB)
    assert (kb.low, kb.high) == pytest.approx((1.0, (8.0 * math.pi) ** 2))
    kke = envelope_volume_pair(0.5, 2, Relation.VOLUME_KKE)
    assert kke.low == pytest.approx(0.5 ** 4)
    assert kke.high == pytest.approx(16.0)
    with pytest.raises(OutOfRange):
        envelope_volume_pair(0.5, 2, Relation.METRIC_KB)


def test_envelopes_monotone_over_grid():
    for relation in Relation:
        for n in DIMENSIONS:
            envelopes = [envelope_for(relation, s, n) for s in S_GRID]
            for a, b in zip(envelopes, envelopes[1:]):
                assert b.low >= a.low - 1e-12
                assert b.high <= a.high * (1.0 + 1e-12)


@pytest.mark.parametrize("relation", list(Relation))
def test_envelope_bounds_are_ordered(relation):
    for n in DIMENSIONS:
        for s in S_GRID:
            envelope = envelope_for(relation, s, n)
            if n == 1 and relation in (Relation.METRIC_KKE, Relation.VOLUME_KKE) and s > 2 ** -0.5:
                assert envelope.consistent is False
                assert envelope.low > envelope.high
            else:
                assert envelope.low <= envelope.high, (relation, s, n)
                assert envelope.consistent is True


def test_invalid_inputs():
    with pytest.raises(OutOfRange):
        envelope_kobayashi_bergman(0.0, 1)
    with pytest.raises(OutOfRange):
        envelope_kobayashi_ke(1.2, 2)
    with pytest.raises(OutOfRange):
        envelope_volume_pair(0.5, 0, Relation.VOLUME_ANY)


def test_general_envelope_reproduces_volume_envelope():
    for n in (1, 3):
        general = envelope_general(lambda r: pinching_volume(r, n), lambda r: pinching_volume(r, n), 0.6,
                                   Relation.VOLUME_ANY, n)
        special = envelope_volume_pair(0.6, n, Relation.VOLUME_ANY)
        assert general.low == pytest.approx(special.low, rel=1e-12)
        assert general.high == pytest.approx(special.high, rel=1e-12)


def test_general_envelope_with_metric_pinching():
    general = envelope_general(pinching_metric, pinching_metric, 0.5, Relation.METRIC_CK)
    assert general.low == pytest.approx(envelope_caratheodory_kobayashi(0.5).low)
    assert general.high == pytest.approx(2.0)


def test_general_envelope_rejects_increasing_functions():
    with pytest.raises(NotDecreasing):
        envelope_general(lambda r: 1.0 + r, pinching_metric, 0.5)
    with pytest.raises(OutOfRange):
        envelope_general(pinching_metric, lambda r: -1.0, 0.5)
    with pytest.raises(OutOfRange):
        envelope_general(pinching_metric, pinching_metric, 1.0)


@given(st.floats(min_value=0.01, max_value=0.99), st.integers(min_value=1, max_value=8))
def test_general_envelope_low_below_high(s, n):
    envelope = envelope_general(lambda r: pinching_volume(r, n), lambda r: pinching_volume(r, n), s, n=n)
    assert envelope.low <= envelope.high


def test_parse_relation():
    assert parse_relation("KB") is Relation.METRIC_KB
    assert parse_relation("ck") is Relation.METRIC_CK
    assert parse_relation("volumekke") is Relation.VOLUME_KKE
    assert parse_relation("MetricKKE") is Relation.METRIC_KKE
    with pytest.raises(OutOfRange):
        parse_relation("nope")


def test_envelope_table_shape():
    table = envelope_table(S_GRID, DIMENSIONS)
    assert len(table) == len(S_GRID) * len(DIMENSIONS) * len(Relation)
    assert {"relation", "s", "n", "low", "high", "consistent", "label"} <= set(table.columns)
    row = table[(table.relation == "MetricKB") & (table.n == 1) & np.isclose(table.s, 1.0)].iloc[0]
    assert row["high"] == 8.0 * math.pi


if __name__ == "__main__":
    import pytest as _pytest
    print("🧪 COMPARISON ENVELOPE TESTS")
    print("=" * 50)
    sys.exit(_pytest.main([__file__, "-v"]))
