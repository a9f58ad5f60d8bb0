"""Markov repeat-model traffic generator.

One knob per complexity axis: a traffic matrix M supplies the pair-frequency
(non-temporal) structure and a repeat probability p supplies the burst
(temporal) structure. Each step repeats the previous pair with probability p,
otherwise draws a fresh pair from M; the fresh draw is unconditioned, which
makes M the chain's exact stationary distribution. Both knobs are solvable in
closed form from a target point on the complexity map, and fittable from a
measured trace.
"""

from __future__ import annotations

import json
import warnings as _warnings
from dataclasses import dataclass, replace

import numpy as np

from .complexity import CompressorHandle, trace_complexity
from .entropy import (TrafficMatrix, joint_entropy, solve_repeat_probability,
                      solve_zipf_exponent, zipf_matrix, empirical_matrix)
from .errors import ConfigError, DataError, SolverError
from .trace import Trace
from .transforms import RngSeed


@dataclass(frozen=True)
class GeneratorSpec:
    """Everything needed to reproduce one synthetic trace."""

    matrix: TrafficMatrix
    repeat_p: float
    length: int
    seed: RngSeed = RngSeed(0)
    name: str = "generated"

    def __post_init__(self):
        if not 0.0 <= self.repeat_p <= 1.0:
            raise ConfigError(f"repeat probability {self.repeat_p} outside [0, 1]")
        if self.length < 1:
            raise ConfigError("length must be at least 1")


@dataclass(frozen=True)
class MapTarget:
    """A point (x, y) on the complexity map to synthesize toward."""

    x: float  # temporal target
    y: float  # non-temporal target
    n_ids: int = 16

    def __post_init__(self):
        if not 0.0 <= self.x <= 1.0:
            raise ConfigError(f"temporal target {self.x} outside [0, 1]")
        if not 0.0 <= self.y <= 1.0:
            raise ConfigError(f"non-temporal target {self.y} outside [0, 1]")
        if self.n_ids < 2:
            raise ConfigError("need at least two IDs")


def generate(spec: GeneratorSpec) -> Trace:
    """Run the repeat chain: deterministic for a given spec (seed included)."""
    rng = spec.seed.generator()
    t = spec.length
    m = spec.matrix
    cdf = np.cumsum(m.probs)
    draw = np.searchsorted(cdf, rng.random(t), side="right")
    np.clip(draw, 0, m.support_size - 1, out=draw)
    fresh_src = m.sources[draw]
    fresh_dst = m.dests[draw]
    # Positions that keep the previous pair inherit the index of the most
    # recent fresh draw; a running maximum turns that into pure indexing.
    fresh = np.ones(t, dtype=bool)
    if t > 1 and spec.repeat_p > 0.0:
        fresh[1:] = rng.random(t - 1) >= spec.repeat_p
    pos = np.where(fresh, np.arange(t), 0)
    np.maximum.accumulate(pos, out=pos)
    return Trace.from_arrays(fresh_src[pos], fresh_dst[pos], name=spec.name, copy=False)


def spec_from_target(target: MapTarget,
                     length: int = 1_000_000,
                     seed: RngSeed = RngSeed(0),
                     name: str | None = None,
                     allow_degenerate: bool = False) -> GeneratorSpec:
    """Solve the matrix and repeat probability for a target map point.

    The Zipf exponent is solved so the matrix's normalized entropy equals y,
    then the repeat probability is solved so the model's temporal ratio
    equals x. y=0 has no Zipf solution; pass allow_degenerate=True to accept
    a single-pair matrix (whose temporal ratio is undefined, so p is pinned
    to 1).
    """
    if target.y == 0.0:
        if not allow_degenerate:
            raise SolverError(
                "non-temporal target 0 requires a degenerate single-pair matrix; "
                "pass allow_degenerate=True to accept one (repeat probability "
                "is then pinned to 1)")
        matrix = TrafficMatrix.from_cells({(0, 0): 1.0}, n=target.n_ids)
        return GeneratorSpec(matrix=matrix, repeat_p=1.0, length=length, seed=seed,
                             name=name or "degenerate")
    exponent = solve_zipf_exponent(target.n_ids, target.y)
    matrix = zipf_matrix(target.n_ids, exponent)
    repeat_p = solve_repeat_probability(target.x, joint_entropy(matrix))
    return GeneratorSpec(matrix=matrix, repeat_p=repeat_p, length=length, seed=seed,
                         name=name or f"target({target.x:g},{target.y:g})")


def spec_from_trace(trace: Trace,
                    trials: int = 3,
                    compressor: CompressorHandle | None = None,
                    seed: RngSeed = RngSeed(0)) -> GeneratorSpec:
    """Fit a spec to a measured trace.

    The matrix is the trace's own pair-frequency matrix; the repeat
    probability is solved from the measured temporal ratio, so a regenerated
    trace lands near the original on the complexity map. Length defaults to
    the original's.
    """
    matrix = empirical_matrix(trace)
    h = joint_entropy(matrix)
    if h == 0.0:
        _warnings.warn("trace has a single repeated pair; repeat probability pinned to 1")
        repeat_p = 1.0
    else:
        point = trace_complexity(trace, compressor, trials=trials, seed=seed)
        measured = point.temporal
        if measured > 1.0:
            _warnings.warn(
                f"measured temporal ratio {measured:.4f} exceeds 1 (compressor "
                f"noise); solving with 1.0")
            measured = 1.0
        repeat_p = solve_repeat_probability(measured, h)
    return GeneratorSpec(matrix=matrix, repeat_p=repeat_p, length=len(trace),
                         seed=seed, name=f"fit:{trace.name}")


#: Map coordinates of the four synthetic reference traces.
REFERENCE_TARGETS = {
    "uniform": (1.0, 1.0),
    "skewed": (1.0, 0.4),
    "bursty": (0.4, 1.0),
    "skewed_bursty": (0.4, 0.4),
}


def reference_presets(n_ids: int = 16,
                      length: int = 10_000_000,
                      seed: RngSeed = RngSeed(0)) -> dict[str, GeneratorSpec]:
    """The four corner reference specs, keyed by name.

    Each preset gets its own seed stream so the four traces are independent.
    """
    presets = {}
    for i, (name, (x, y)) in enumerate(REFERENCE_TARGETS.items()):
        spec = spec_from_target(MapTarget(x=x, y=y, n_ids=n_ids), length=length,
                                seed=seed.derive(100 + i), name=name)
        presets[name] = spec
    return presets


def spec_to_json(spec: GeneratorSpec, matrix_path: str | None = None) -> str:
    """Serialize a spec; the matrix goes inline unless a CSV path is given.

    With ``matrix_path`` the document references that file (write it with
    TrafficMatrix.write_csv) instead of embedding cells.
    """
    doc: dict = {
        "schema": "trace-generator-spec/1",
        "name": spec.name,
        "repeat_p": spec.repeat_p,
        "length": spec.length,
        "seed": {"seed": spec.seed.seed, "stream": list(spec.seed.stream)},
    }
    if matrix_path is not None:
        doc["matrix"] = {"path": str(matrix_path), "n": spec.matrix.n}
    else:
        doc["matrix"] = {
            "n": spec.matrix.n,
            "cells": [[int(s), int(d), float(p)] for s, d, p in
                      zip(spec.matrix.sources, spec.matrix.dests, spec.matrix.probs)],
        }
    return json.dumps(doc, indent=2, sort_keys=True)


def spec_from_json(text: str, base_dir: str | None = None) -> GeneratorSpec:
    try:
        doc = json.loads(text)
    except ValueError as e:
        raise DataError(f"malformed generator spec: {e}") from e
    if not isinstance(doc, dict) or doc.get("schema") != "trace-generator-spec/1":
        found = doc.get("schema") if isinstance(doc, dict) else None
        raise DataError(f"not a generator spec document (schema {found!r})")
    try:
        mdoc = doc["matrix"]
        if "path" in mdoc:
            import pathlib

            p = pathlib.Path(mdoc["path"])
            if base_dir is not None and not p.is_absolute():
                p = pathlib.Path(base_dir) / p
            matrix = TrafficMatrix.read_csv(p)
            if "n" in mdoc:
                matrix = replace(matrix, n=int(mdoc["n"]))
        else:
            cells = {(int(s), int(d)): float(p) for s, d, p in mdoc["cells"]}
            matrix = TrafficMatrix.from_cells(cells, n=int(mdoc["n"]))
        seed_doc = doc.get("seed", {"seed": 0, "stream": []})
        seed = RngSeed(int(seed_doc["seed"]),
                       tuple(int(v) for v in seed_doc.get("stream", ())))
        return GeneratorSpec(matrix=matrix, repeat_p=float(doc["repeat_p"]),
                             length=int(doc["length"]), seed=seed,
                             name=doc.get("name", "generated"))
    except (KeyError, TypeError, ValueError) as e:
        raise DataError(f"malformed generator spec: {e!r}") from e
