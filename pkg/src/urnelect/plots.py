"""Standalone SVG 1.1 figure emission.

Figures are written as self-contained SVG documents with one <rect> per
histogram bin, one <circle> per scatter point and one <path> per overlay
curve, so structural checks (and diffs) stay trivial.  No plotting library
is involved.
"""

from __future__ import annotations

from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from .stats import ReplicateDataset, SwingRecord, histogram, swing_regression

__all__ = ["PLOT_KINDS", "emit_plots", "svg_histogram", "svg_scatter", "emit_swing_plot"]

PLOT_KINDS = ("seat_hist", "popular_hist", "district_hist", "seats_votes", "north_south")

_W, _H = 640, 480
_ML, _MR, _MT, _MB = 60, 20, 40, 50  # margins around the data area


class _Canvas:
    """Maps data coordinates onto the fixed SVG viewport."""

    def __init__(self, x_lo, x_hi, y_lo, y_hi):
        if x_hi <= x_lo or y_hi <= y_lo:
            raise ValueError("degenerate axis range")
        self.x_lo, self.x_hi = x_lo, x_hi
        self.y_lo, self.y_hi = y_lo, y_hi

    def x(self, v: float) -> float:
        return _ML + (v - self.x_lo) / (self.x_hi - self.x_lo) * (_W - _ML - _MR)

    def y(self, v: float) -> float:
        return _H - _MB - (v - self.y_lo) / (self.y_hi - self.y_lo) * (_H - _MT - _MB)


def _axes(canvas: _Canvas, x_label: str, y_label: str, title: str) -> list[str]:
    parts = [
        f'<line x1="{_ML}" y1="{_H - _MB}" x2="{_W - _MR}" y2="{_H - _MB}" stroke="black"/>',
        f'<line x1="{_ML}" y1="{_MT}" x2="{_ML}" y2="{_H - _MB}" stroke="black"/>',
        f'<text x="{(_ML + _W - _MR) / 2:.1f}" y="{_H - 12}" text-anchor="middle" '
        f'font-size="14">{x_label}</text>',
        f'<text x="16" y="{(_MT + _H - _MB) / 2:.1f}" text-anchor="middle" font-size="14" '
        f'transform="rotate(-90 16 {(_MT + _H - _MB) / 2:.1f})">{y_label}</text>',
        f'<text x="{_W / 2:.1f}" y="24" text-anchor="middle" font-size="16">{title}</text>',
    ]
    for frac in (0.0, 0.25, 0.5, 0.75, 1.0):
        xv = canvas.x_lo + frac * (canvas.x_hi - canvas.x_lo)
        yv = canvas.y_lo + frac * (canvas.y_hi - canvas.y_lo)
        parts.append(f'<text x="{canvas.x(xv):.1f}" y="{_H - _MB + 18}" text-anchor="middle" '
                     f'font-size="11">{xv:g}</text>')
        parts.append(f'<text x="{_ML - 6}" y="{canvas.y(yv) + 4:.1f}" text-anchor="end" '
                     f'font-size="11">{yv:g}</text>')
    return parts


def _document(body: list[str]) -> str:
    return (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}">\n'
        + "\n".join(body)
        + "\n</svg>\n"
    )


def svg_histogram(values: Sequence[float], bin_edges: Sequence[float], path: str | Path,
                  title: str = "", x_label: str = "value", y_label: str = "count") -> Path:
    """One bar per bin (zero-height bins included, so bars == bins)."""
    edges = np.asarray(bin_edges, dtype=float)
    counts = histogram(values, edges)
    canvas = _Canvas(edges[0], edges[-1], 0.0, max(1.0, counts.max() * 1.05))
    body = _axes(canvas, x_label, y_label, title)
    for lo, hi, c in zip(edges[:-1], edges[1:], counts):
        x0 = canvas.x(lo)
        y0 = canvas.y(float(c))
        body.append(
            f'<rect class="bar" x="{x0:.2f}" y="{y0:.2f}" '
            f'width="{canvas.x(hi) - x0:.2f}" height="{canvas.y(0.0) - y0:.2f}" '
            'fill="steelblue" stroke="white" stroke-width="0.5"/>'
        )
    out = Path(path)
    out.write_text(_document(body), encoding="utf-8")
    return out


def svg_scatter(x: Sequence[float], y: Sequence[float], path: str | Path,
                title: str = "", x_label: str = "x", y_label: str = "y",
                overlay: Callable[[float], float] | None = None,
                x_range: tuple[float, float] = (0.0, 1.0),
                y_range: tuple[float, float] = (0.0, 1.0)) -> Path:
    """Scatter plot with an optional fitted-curve overlay path."""
    xa = np.asarray(x, dtype=float)
    ya = np.asarray(y, dtype=float)
    if xa.size == 0:
        raise ValueError("nothing to plot")
    canvas = _Canvas(*x_range, *y_range)
    body = _axes(canvas, x_label, y_label, title)
    for xi, yi in zip(xa, ya):
        body.append(f'<circle class="pt" cx="{canvas.x(xi):.2f}" cy="{canvas.y(yi):.2f}" '
                    'r="2.5" fill="steelblue" fill-opacity="0.55"/>')
    if overlay is not None:
        lo, hi = x_range
        grid = np.linspace(lo + 1e-6 * (hi - lo), hi - 1e-6 * (hi - lo), 256)
        coords = []
        for gx in grid:
            gy = min(y_range[1], max(y_range[0], overlay(float(gx))))
            coords.append(f"{canvas.x(float(gx)):.2f} {canvas.y(gy):.2f}")
        body.append(f'<path class="fit" d="M {" L ".join(coords)}" fill="none" '
                    'stroke="crimson" stroke-width="1.5"/>')
    out = Path(path)
    out.write_text(_document(body), encoding="utf-8")
    return out


def emit_plots(dataset: ReplicateDataset, kind: str, out_dir: str | Path,
               bins: int = 20, overlay: Callable[[float], float] | None = None) -> Path:
    """Render one figure of the given kind from a replicate dataset."""
    if kind not in PLOT_KINDS:
        raise ValueError(f"unknown plot kind {kind!r}; choose from {', '.join(PLOT_KINDS)}")
    if dataset.num_replicates < 1:
        raise ValueError("empty dataset")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    target = out_dir / f"{kind}.svg"
    if kind == "seat_hist":
        n = dataset.num_districts
        return svg_histogram(dataset.seats[:, 0].astype(float), np.arange(-0.5, n + 1.5),
                             target, title="Seats won by party 1", x_label="seats")
    if kind == "popular_hist":
        return svg_histogram(dataset.popular_share_party1, np.linspace(0, 1, bins + 1),
                             target, title="Popular vote share, party 1", x_label="share")
    if kind == "district_hist":
        return svg_histogram(dataset.district1_shares, np.linspace(0, 1, bins + 1),
                             target, title="District 1 vote share, party 1", x_label="share")
    if kind == "seats_votes":
        return svg_scatter(dataset.popular_share_party1, dataset.seat_share_party1, target,
                           title="Seats versus votes", x_label="popular vote share",
                           y_label="seat share", overlay=overlay)
    return svg_scatter(dataset.north_shares, dataset.south_shares, target,
                       title="North versus south vote share", x_label="north share",
                       y_label="south share")


def emit_swing_plot(records: Sequence[SwingRecord], path: str | Path) -> Path:
    """Scatter of (local - national) swing against original share, with OLS line."""
    if not records:
        raise ValueError("no swing records to plot")
    x = [r.original_district_share for r in records]
    y = [r.local_swing - r.national_swing for r in records]
    fit = swing_regression(records)
    span = max(0.05, max(abs(min(y)), abs(max(y))) * 1.1)
    return svg_scatter(
        x, y, path,
        title="Local minus national swing",
        x_label="original district share", y_label="swing difference",
        overlay=lambda v: fit.intercept + fit.slope * v,
        x_range=(0.0, 1.0), y_range=(-span, span),
    )
