#!/usr/bin/env python3
"""
Embedding verifier tests - witness radii and inclusion checks
"""

import math
import os
import sys
from dataclasses import replace

import numpy as np
import pytest

current_dir = os.path.dirname(os.path.abspath(__file__))
src_dir = os.path.join(os.path.dirname(current_dir), 'src')
if src_dir not in sys.path:
    sys.path.insert(0, src_dir)

from domains_catalog import ball_domain
from embedding_verifier import (
    RADIAL_LEVELS,
    EmbeddingSpec,
    EmbeddingVerifier,
    bidisc_scaled_embedding,
    embedding_lookup,
    identity_embedding,
    inclusion_targets,
    moebius_embedding,
    triangle_product_embedding,
    verify_inclusion,
    witness_for,
)
from geometry_core import RealPoint
from squeeze_bounds import product_lower_bound
from squeeze_errors import BadParams, BasepointNotMappedToZero, ImageEscapesBall, OutOfRange, UnknownDomain


def test_identity_witness_is_one():
    verifier = EmbeddingVerifier(identity_embedding(2), samples=2000)
    bound = verifier.witness()
    assert bound.lower == 1.0
    assert bound.tag == "EmbeddingWitness"
    report = verifier.verify(0.9, grid=8)
    assert report.included and report.certified
    assert report.solved == report.targets == 1 + RADIAL_LEVELS * 8


@pytest.mark.parametrize("a", [0.2, 0.5, 0.8])
def test_moebius_witness_equals_basepoint_modulus(a):
    bound, log = witness_for(f"moebius:a={a}", samples=2000)
    assert bound.lower == pytest.approx(a, abs=2e-3)
    assert any("Witness radius" in entry for entry in log)


@pytest.mark.parametrize("a", [0.2, 0.5, 0.8])
def test_moebius_inclusion_flips_at_witness(a):
    verifier = EmbeddingVerifier(moebius_embedding(a), samples=2000)
    inside = verifier.verify(a - 0.05, grid=16)
    outside = verifier.verify(a + 0.05, grid=16)
    assert inside.included
    assert inside.max_residual <= 1e-8
    assert not outside.included
    assert outside.certified
    # the puncture lands on -a
    assert outside.counterexample == pytest.approx((-a, 0.0), abs=1e-12)
    assert outside.to_dict()["provenance"] == "EmbeddingWitness"


def test_bidisc_witness():
    bound = EmbeddingVerifier(bidisc_scaled_embedding(), samples=5000).witness()
    assert bound.lower == pytest.approx(1.0 / math.sqrt(2.0), abs=2e-3)
    assert bound.lower >= 1.0 / math.sqrt(2.0) - 1e-9


def test_triangle_witness_matches_product_bound():
    bound = EmbeddingVerifier(triangle_product_embedding(0.5, 0.25), samples=5000).witness()
    expected = product_lower_bound([0.5, 0.5])
    assert bound.lower == pytest.approx(expected, abs=5e-3)
    assert bound.lower >= expected - 1e-9


def test_heuristic_mode_without_boundary_extension():
    spec = replace(moebius_embedding(0.5), boundary_extension=False)
    bound = EmbeddingVerifier(spec, samples=2000).witness()
    assert bound.heuristic
    assert bound.tag == "Heuristic"
    assert 0.0 < bound.lower <= 1.0


def test_basepoint_must_map_to_zero():
    spec = replace(identity_embedding(1), basepoint=RealPoint((0.5, 0.0), 1))
    with pytest.raises(BasepointNotMappedToZero):
        EmbeddingVerifier(spec, samples=1000).witness()


def test_images_must_stay_in_ball():
    spec = EmbeddingSpec("double", lambda x: 2.0 * x, ball_domain(1), RealPoint((0.0, 0.0), 1))
    with pytest.raises(ImageEscapesBall):
        EmbeddingVerifier(spec, samples=1000).witness()


def test_verify_rejects_bad_radius():
    verifier = EmbeddingVerifier(identity_embedding(1), samples=1000)
    with pytest.raises(OutOfRange):
        verifier.verify(1.0)
    with pytest.raises(OutOfRange):
        verifier.verify(0.5, grid=0)


def test_verify_inclusion_wrapper():
    assert verify_inclusion(moebius_embedding(0.5), 0.3, grid=8, samples=2000).included


def test_inclusion_targets():
    targets = inclusion_targets(4, 0.5, 10, seed=1)
    assert targets.shape == (1 + RADIAL_LEVELS * 10, 4)
    assert np.all(targets[0] == 0.0)
    norms = np.linalg.norm(targets, axis=1)
    assert norms.max() < 0.5
    assert np.array_equal(targets, inclusion_targets(4, 0.5, 10, seed=1))


def test_embedding_lookup():
    assert embedding_lookup("moebius:a=0.3").name == "moebius:a=0.3"
    assert embedding_lookup("triangle-product-scaled:b1=0.6:b2=0.3").basepoint.coords == (0.6, 0.0, 0.3, 0.0)
    with pytest.raises(UnknownDomain):
        embedding_lookup("spiral")
    with pytest.raises(BadParams):
        embedding_lookup("moebius:a=2")
    with pytest.raises(BadParams):
        embedding_lookup("triangle-product-scaled:b1=0.2:b2=0.4")


if __name__ == "__main__":
    import pytest as _pytest
    print("🧪 EMBEDDING VERIFIER TESTS")
    print("=" * 50)
    sys.exit(_pytest.main([__file__, "-v"]))
