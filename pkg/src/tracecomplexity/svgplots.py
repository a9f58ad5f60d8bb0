"""Static SVG figures: the complexity map and traffic-matrix heatmaps.

Hand-rolled SVG so output is a pure function of the input values: no
plotting-library version can perturb bytes between runs.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

PALETTE = [
    "#4c72b0", "#dd8452", "#55a868", "#c44e52", "#8172b3",
    "#937860", "#da8bc3", "#8c8c8c", "#ccb974", "#64b5cd",
]


@dataclass(frozen=True)
class MapPoint:
    name: str
    temporal: float
    non_temporal: float
    overall: float


# Plot geometry: a square data region for [0, 1] x [0, 1] with headroom for
# noise-driven values slightly above 1.
_SIZE = 560
_MARGIN_L, _MARGIN_R, _MARGIN_T, _MARGIN_B = 70, 24, 24, 60
_SPAN = 1.05
_MAX_RADIUS = 34.0  # radius at overall complexity 1; area scales with overall


def _sx(x: float) -> float:
    return _MARGIN_L + x / _SPAN * (_SIZE - _MARGIN_L - _MARGIN_R)


def _sy(y: float) -> float:
    return _SIZE - _MARGIN_B - y / _SPAN * (_SIZE - _MARGIN_T - _MARGIN_B)


def complexity_map_svg(points: list[MapPoint]) -> str:
    """Scatter of traces on the (temporal, non-temporal) plane.

    Circle area is proportional to the overall complexity; a tiny visibility
    floor applies to the radius only, never to the recorded values.
    """
    if not points:
        raise ValueError("no points to plot")
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_SIZE}" height="{_SIZE}" '
        f'viewBox="0 0 {_SIZE} {_SIZE}">',
        f'<rect width="{_SIZE}" height="{_SIZE}" fill="white"/>',
    ]
    # grid and ticks at 0.2 steps
    for i in range(6):
        v = i * 0.2
        x, y = _sx(v), _sy(v)
        parts.append(f'<line x1="{x:.2f}" y1="{_sy(0):.2f}" x2="{x:.2f}" y2="{_sy(_SPAN):.2f}" '
                     f'stroke="#dddddd" stroke-width="1"/>')
        parts.append(f'<line x1="{_sx(0):.2f}" y1="{y:.2f}" x2="{_sx(_SPAN):.2f}" y2="{y:.2f}" '
                     f'stroke="#dddddd" stroke-width="1"/>')
        parts.append(f'<text x="{x:.2f}" y="{_sy(0) + 20:.2f}" font-size="12" '
                     f'text-anchor="middle" font-family="sans-serif">{v:.1f}</text>')
        parts.append(f'<text x="{_sx(0) - 8:.2f}" y="{y + 4:.2f}" font-size="12" '
                     f'text-anchor="end" font-family="sans-serif">{v:.1f}</text>')
    # axes
    parts.append(f'<line x1="{_sx(0):.2f}" y1="{_sy(0):.2f}" x2="{_sx(_SPAN):.2f}" '
                 f'y2="{_sy(0):.2f}" stroke="black" stroke-width="1.5"/>')
    parts.append(f'<line x1="{_sx(0):.2f}" y1="{_sy(0):.2f}" x2="{_sx(0):.2f}" '
                 f'y2="{_sy(_SPAN):.2f}" stroke="black" stroke-width="1.5"/>')
    parts.append(f'<text x="{(_sx(0) + _sx(_SPAN)) / 2:.2f}" y="{_SIZE - 14}" font-size="14" '
                 f'text-anchor="middle" font-family="sans-serif">temporal complexity</text>')
    parts.append(f'<text x="18" y="{(_sy(0) + _sy(_SPAN)) / 2:.2f}" font-size="14" '
                 f'text-anchor="middle" font-family="sans-serif" '
                 f'transform="rotate(-90 18 {(_sy(0) + _sy(_SPAN)) / 2:.2f})">'
                 f'non-temporal complexity</text>')
    for i, p in enumerate(points):
        color = PALETTE[i % len(PALETTE)]
        r = max(_MAX_RADIUS * math.sqrt(max(p.overall, 0.0)), 1.5)
        cx = _sx(min(max(p.temporal, 0.0), _SPAN))
        cy = _sy(min(max(p.non_temporal, 0.0), _SPAN))
        parts.append(f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="{r:.2f}" fill="{color}" '
                     f'fill-opacity="0.45" stroke="{color}" stroke-width="1.5"/>')
        parts.append(f'<text x="{cx:.2f}" y="{cy - r - 4:.2f}" font-size="12" '
                     f'text-anchor="middle" font-family="sans-serif">{_escape(p.name)}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def write_map_csv(points: list[MapPoint], path) -> None:
    """The plotted values, verbatim: no rounding between report and CSV."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["name", "temporal", "non_temporal", "overall"])
        for p in points:
            w.writerow([p.name, repr(p.temporal), repr(p.non_temporal), repr(p.overall)])


def matrix_heatmap_svg(dense: np.ndarray, log_scale: bool = False, cell: int = 24) -> str:
    """Heatmap of a dense pair-probability grid; darker means more traffic.

    With log_scale the color ramp runs between the smallest and largest
    positive cells on a log axis, which keeps heavy-tailed matrices readable.
    """
    n_rows, n_cols = dense.shape
    pad_l, pad_t = 40, 10
    width = pad_l + n_cols * cell + 10
    height = pad_t + n_rows * cell + 40
    vmax = float(dense.max())
    positive = dense[dense > 0]
    vmin = float(positive.min()) if positive.size else 0.0
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    for i in range(n_rows):
        for j in range(n_cols):
            v = float(dense[i, j])
            if v <= 0 or vmax <= 0:
                intensity = 0.0
            elif log_scale and vmax > vmin:
                intensity = (math.log10(v) - math.log10(vmin)) / \
                            (math.log10(vmax) - math.log10(vmin))
            elif log_scale:
                intensity = 1.0
            else:
                intensity = v / vmax
            shade = int(round(255 * (1.0 - 0.92 * min(max(intensity, 0.0), 1.0))))
            color = f"rgb({shade},{shade},255)" if v > 0 else "rgb(255,255,255)"
            x = pad_l + j * cell
            y = pad_t + i * cell
            parts.append(f'<rect x="{x}" y="{y}" width="{cell}" height="{cell}" '
                         f'fill="{color}" stroke="#eeeeee" stroke-width="0.5"/>')
    parts.append(f'<text x="{pad_l + n_cols * cell / 2:.0f}" y="{height - 12}" font-size="13" '
                 f'text-anchor="middle" font-family="sans-serif">destination</text>')
    parts.append(f'<text x="14" y="{pad_t + n_rows * cell / 2:.0f}" font-size="13" '
                 f'text-anchor="middle" font-family="sans-serif" '
                 f'transform="rotate(-90 14 {pad_t + n_rows * cell / 2:.0f})">source</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _escape(text: str) -> str:
    return (text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;"))
