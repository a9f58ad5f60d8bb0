"""Randomization transforms that strip selected structure out of a trace.

``temporal_shuffle`` permutes rows, destroying ordering while conserving the
pair histogram exactly. The ``uniform_resample`` family replaces the whole
trace with same-length uniform noise over the observed ID sets, destroying
both ordering and pair-frequency structure. All transforms are deterministic
functions of (trace, seed), so randomized trials are reproducible and can run
in parallel.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .trace import Trace


@dataclass(frozen=True)
class RngSeed:
    """A 64-bit seed plus a stream tag, e.g. the trial index.

    Identical (seed, stream) pairs reproduce identical transform output;
    distinct streams derived from one seed are statistically independent.
    """

    seed: int = 0
    stream: tuple[int, ...] = ()

    def derive(self, *tags: int) -> "RngSeed":
        return RngSeed(self.seed, self.stream + tags)

    def generator(self) -> np.random.Generator:
        return np.random.default_rng(
            np.random.SeedSequence(entropy=self.seed, spawn_key=self.stream))


def temporal_shuffle(trace: Trace, seed: RngSeed) -> Trace:
    """Uniform random permutation of the rows; the pair multiset is untouched."""
    rng = seed.generator()
    perm = rng.permutation(len(trace))
    return trace.replaced(trace.sources[perm], trace.dests[perm])


def uniform_resample(trace: Trace, seed: RngSeed) -> Trace:
    """Same-length trace with both columns drawn uniformly from the ID union."""
    rng = seed.generator()
    ids = trace.id_space.union
    t = len(trace)
    src = ids[rng.integers(0, ids.size, size=t)]
    dst = ids[rng.integers(0, ids.size, size=t)]
    return trace.replaced(src, dst)


def uniform_resample_columnwise(trace: Trace, seed: RngSeed) -> Trace:
    """Uniform resample where each column only draws from its own ID set.

    Appropriate when the trace samples sources and destinations from visibly
    different populations; drawing each column from the union would overstate
    its randomness.
    """
    rng = seed.generator()
    t = len(trace)
    s_ids = trace.id_space.source_ids
    d_ids = trace.id_space.dest_ids
    src = s_ids[rng.integers(0, s_ids.size, size=t)]
    dst = d_ids[rng.integers(0, d_ids.size, size=t)]
    return trace.replaced(src, dst)


def uniform_resample_single(trace: Trace, seed: RngSeed) -> Trace:
    """Uniform resample for single-column traces: one draw, duplicated.

    Used on slice_column output, where both columns carry the same sequence.
    Duplicating the uniform draw keeps the randomized counterpart in the same
    duplicated-pair encoding, so compressed-size ratios normalize against one
    column's worth of randomness rather than two.
    """
    rng = seed.generator()
    ids = trace.id_space.union
    col = ids[rng.integers(0, ids.size, size=len(trace))]
    return trace.replaced(col, col.copy())


UNIFORM_MODES = ("pair", "columnwise", "single")

_RESAMPLERS = {
    "pair": uniform_resample,
    "columnwise": uniform_resample_columnwise,
    "single": uniform_resample_single,
}

# Column-set asymmetry above which the columnwise resampler is the default.
ASYMMETRY_THRESHOLD = 0.10


def default_uniform_mode(trace: Trace) -> str:
    """Pick "columnwise" for traces with materially asymmetric ID sets.

    Falls back to "pair" when either column holds a single ID: resampling a
    one-ID column from its own set reproduces the column verbatim, which
    would make the uniform counterpart carry no randomness to compare against.
    """
    space = trace.id_space
    if (space.symmetric_difference_ratio() > ASYMMETRY_THRESHOLD
            and space.source_ids.size > 1 and space.dest_ids.size > 1):
        return "columnwise"
    return "pair"


def resample_uniform(trace: Trace, seed: RngSeed, mode: str) -> Trace:
    try:
        fn = _RESAMPLERS[mode]
    except KeyError:
        raise ValueError(f"unknown uniform mode {mode!r}, expected one of {UNIFORM_MODES}")
    return fn(trace, seed)
