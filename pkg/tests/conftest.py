"""Shared fixtures: small deterministic traces and fast compressor handles.

Unit tests stick to DEFLATE or low-preset LZMA on short traces so the suite
stays quick; the acceptance tests (test_acceptance.py) run the real defaults
at full length.
"""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import settings

from tracecomplexity import (CompressorHandle, GeneratorSpec, RngSeed, Trace,
                             TrafficMatrix, generate)

settings.register_profile("suite", deadline=None, max_examples=50)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def deflate() -> CompressorHandle:
    return CompressorHandle("deflate", 9)


@pytest.fixture(scope="session")
def lzma_fast() -> CompressorHandle:
    return CompressorHandle("lzma", 1)


@pytest.fixture
def seed() -> RngSeed:
    return RngSeed(0)


@pytest.fixture(scope="session")
def uniform_trace() -> Trace:
    """50k-entry iid uniform trace over 16 IDs."""
    spec = GeneratorSpec(TrafficMatrix.uniform(16), 0.0, 50_000, RngSeed(11),
                         name="uniform-iid")
    return generate(spec)


@pytest.fixture(scope="session")
def bursty_trace() -> Trace:
    """50k-entry uniform-matrix trace with repeat probability 0.7."""
    spec = GeneratorSpec(TrafficMatrix.uniform(16), 0.7, 50_000, RngSeed(12),
                         name="bursty")
    return generate(spec)


def tiny(pairs, name="tiny") -> Trace:
    return Trace.from_pairs(pairs, name=name)


@pytest.fixture
def tiny_trace() -> Trace:
    return tiny([(0, 1), (1, 0), (2, 3), (3, 2)])
