"""Trace data model, CSV ingestion, and the canonical byte encoding.

A trace is an ordered sequence of (source, destination) endpoint-ID pairs.
Raw IDs from a file are relabeled to dense integers 0..k-1 in first-occurrence
order, so every ID renders at the same byte width regardless of how the
original identifiers looked. The canonical encoding is fixed-width zero-padded
decimal text, one ``src,dst`` record per line; it is bit-exact across runs and
is what the compression stage consumes.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import IO, Iterable, Iterator, NamedTuple, Sequence

import numpy as np

from .errors import EmptyTraceError, TraceParseError


class TraceEntry(NamedTuple):
    source: int
    destination: int


@dataclass(frozen=True)
class IdSpace:
    """Canonical IDs observed in each column; ``n`` is the union size."""

    source_ids: np.ndarray  # sorted unique int64
    dest_ids: np.ndarray    # sorted unique int64

    @property
    def union(self) -> np.ndarray:
        return np.union1d(self.source_ids, self.dest_ids)

    @property
    def n(self) -> int:
        return int(self.union.size)

    def symmetric_difference_ratio(self) -> float:
        """|source_ids XOR dest_ids| / n, a measure of column asymmetry."""
        sym = np.setxor1d(self.source_ids, self.dest_ids)
        return sym.size / self.n


@dataclass(frozen=True)
class Trace:
    """Ordered (source, destination) pairs plus the ID space they live in."""

    sources: np.ndarray
    dests: np.ndarray
    id_space: IdSpace
    name: str = "trace"

    def __post_init__(self):
        if self.sources.size == 0:
            raise EmptyTraceError("trace must contain at least one entry")
        if self.sources.shape != self.dests.shape:
            raise ValueError("source and destination columns differ in length")

    def __len__(self) -> int:
        return int(self.sources.size)

    def __getitem__(self, i: int) -> TraceEntry:
        return TraceEntry(int(self.sources[i]), int(self.dests[i]))

    def __iter__(self) -> Iterator[TraceEntry]:
        for s, d in zip(self.sources.tolist(), self.dests.tolist()):
            yield TraceEntry(s, d)

    @classmethod
    def from_arrays(cls, sources, dests, name: str = "trace", copy: bool = True) -> "Trace":
        """Build a trace from two integer columns, deriving the ID space."""
        src = np.asarray(sources, dtype=np.int64)
        dst = np.asarray(dests, dtype=np.int64)
        if copy:
            src, dst = src.copy(), dst.copy()
        if src.size and (src.min() < 0 or dst.min() < 0):
            raise ValueError("canonical IDs must be non-negative")
        space = IdSpace(source_ids=np.unique(src), dest_ids=np.unique(dst))
        return cls(sources=src, dests=dst, id_space=space, name=name)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]], name: str = "trace") -> "Trace":
        arr = np.asarray(list(pairs), dtype=np.int64)
        if arr.size == 0:
            raise EmptyTraceError("trace must contain at least one entry")
        return cls.from_arrays(arr[:, 0], arr[:, 1], name=name, copy=False)

    def replaced(self, sources: np.ndarray, dests: np.ndarray, name: str | None = None) -> "Trace":
        """Same ID space, new columns (used by transforms that preserve the domain)."""
        return Trace(sources=sources, dests=dests, id_space=self.id_space,
                     name=self.name if name is None else name)


@dataclass(frozen=True)
class CsvFormat:
    """How to pull the two ID columns out of a delimited text file."""

    delimiter: str = ","
    source_column: int = 0
    dest_column: int = 1
    skip_rows: int = 0


def canonicalize_ids(raw_ids: Sequence[str]) -> dict[str, int]:
    """Map raw ID strings to dense integers 0..k-1 in first-occurrence order.

    The mapping is injective and deterministic for a given input order, and
    the dense range guarantees all canonical IDs render at the same decimal
    width in the canonical encoding.
    """
    mapping: dict[str, int] = {}
    for raw in raw_ids:
        if raw not in mapping:
            mapping[raw] = len(mapping)
    return mapping


def parse_trace(stream: IO, fmt: CsvFormat = CsvFormat(), name: str = "trace") -> Trace:
    """Parse a delimited text stream into a Trace.

    Only the two configured ID columns are kept; any other fields (sizes,
    ports, timestamps) are discarded. Raises TraceParseError with the
    offending 1-based line number on malformed rows, EmptyTraceError if no
    data rows remain.
    """
    if isinstance(stream, (io.RawIOBase, io.BufferedIOBase)) or "b" in getattr(stream, "mode", ""):
        stream = io.TextIOWrapper(stream, encoding="utf-8")
    reader = csv.reader(stream, delimiter=fmt.delimiter)
    needed = max(fmt.source_column, fmt.dest_column) + 1
    mapping: dict[str, int] = {}
    sources: list[int] = []
    dests: list[int] = []
    for lineno, row in enumerate(reader, start=1):
        if lineno <= fmt.skip_rows:
            continue
        if len(row) < needed:
            raise TraceParseError(
                f"expected at least {needed} columns, got {len(row)}", line=lineno)
        s_raw = row[fmt.source_column].strip()
        d_raw = row[fmt.dest_column].strip()
        if not s_raw or not d_raw:
            raise TraceParseError("empty ID field", line=lineno)
        for raw in (s_raw, d_raw):
            if raw not in mapping:
                mapping[raw] = len(mapping)
        sources.append(mapping[s_raw])
        dests.append(mapping[d_raw])
    if not sources:
        raise EmptyTraceError("no entries parsed from input")
    return Trace.from_arrays(np.array(sources, dtype=np.int64),
                             np.array(dests, dtype=np.int64),
                             name=name, copy=False)


def load_trace(path, fmt: CsvFormat = CsvFormat(), name: str | None = None) -> Trace:
    """Read a trace from a CSV file; the trace is named after the file stem."""
    import pathlib

    p = pathlib.Path(path)
    with open(p, "r", encoding="utf-8", newline="") as fh:
        return parse_trace(fh, fmt, name=name if name is not None else p.stem)


def _render_fixed_width(values: np.ndarray, width: int, out: np.ndarray) -> None:
    # Writes zero-padded ASCII decimal digits of `values` into `out` columns.
    rem = values.astype(np.int64, copy=True)
    for j in range(width - 1, -1, -1):
        out[:, j] = rem % 10 + ord("0")
        rem //= 10


def encode_canonical(trace: Trace) -> bytes:
    """Render a trace as fixed-width decimal text, ``src,dst\\n`` per entry.

    The field width is the digit count of the largest canonical ID, so every
    record occupies exactly 2*width + 2 bytes. Output is deterministic.
    """
    max_id = int(max(trace.sources.max(), trace.dests.max()))
    width = len(str(max_id))
    t = len(trace)
    block = np.empty((t, 2 * width + 2), dtype=np.uint8)
    _render_fixed_width(trace.sources, width, block[:, :width])
    block[:, width] = ord(",")
    _render_fixed_width(trace.dests, width, block[:, width + 1:2 * width + 1])
    block[:, -1] = ord("\n")
    return block.tobytes()


def write_trace(trace: Trace, path) -> None:
    """Write the canonical encoding to a file (it parses back via parse_trace)."""
    with open(path, "wb") as fh:
        fh.write(encode_canonical(trace))


def slice_column(trace: Trace, which: str) -> Trace:
    """Single-column view: both columns carry the chosen column's sequence.

    ``which`` is "source" or "destination". The slice keeps the parent
    trace's full ID universe, so its uniform counterpart and normalization
    are relative to all n IDs, not just the ones this column happens to use
    (a constant column still counts as one symbol out of n). Downstream
    transforms and compression run unchanged on the duplicated pair;
    complexity code must be told the result is single-column (see
    complexity.trace_complexity).
    """
    if which == "source":
        col = trace.sources
    elif which == "destination":
        col = trace.dests
    else:
        raise ValueError(f"unknown column {which!r}, expected 'source' or 'destination'")
    ids = trace.id_space.union
    space = IdSpace(source_ids=ids, dest_ids=ids.copy())
    return Trace(sources=col.copy(), dests=col.copy(), id_space=space,
                 name=f"{trace.name}:{which}")
