"""Minimal self-contained SVG line plots (no plotting-library dependency).

Loop displays only need a polyline, axes with a few ticks, and a caption;
emitting the SVG directly keeps outputs deterministic and diffable.
"""

from __future__ import annotations

import numpy as np

_WIDTH, _HEIGHT = 640, 480
_MARGIN = 64
_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def _fmt(v: float) -> str:
    return f"{v:.6g}"


def _ticks(lo: float, hi: float, count: int = 5) -> list[float]:
    if hi <= lo:
        hi = lo + 1.0
    raw = np.linspace(lo, hi, count)
    return [float(v) for v in raw]


def write_line_svg(path, series, title: str = "", xlabel: str = "u",
                   ylabel: str = "y") -> None:
    """Write polyline series to ``path`` as a standalone SVG file.

    ``series`` is a list of ``(x, y, label)`` triples of equal-length 1-D
    arrays.  Axis limits cover all series with a 5% pad.
    """
    if not series:
        raise ValueError("need at least one series")
    xs = np.concatenate([np.asarray(s[0], dtype=float) for s in series])
    ys = np.concatenate([np.asarray(s[1], dtype=float) for s in series])
    x_lo, x_hi = float(xs.min()), float(xs.max())
    y_lo, y_hi = float(ys.min()), float(ys.max())
    x_pad = 0.05 * (x_hi - x_lo or 1.0)
    y_pad = 0.05 * (y_hi - y_lo or 1.0)
    x_lo, x_hi = x_lo - x_pad, x_hi + x_pad
    y_lo, y_hi = y_lo - y_pad, y_hi + y_pad

    def sx(v):
        return _MARGIN + (v - x_lo) / (x_hi - x_lo) * (_WIDTH - 2 * _MARGIN)

    def sy(v):
        return _HEIGHT - _MARGIN - (v - y_lo) / (y_hi - y_lo) * (_HEIGHT - 2 * _MARGIN)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" '
        f'height="{_HEIGHT}" viewBox="0 0 {_WIDTH} {_HEIGHT}">',
        f'<rect width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
        f'<text x="{_WIDTH / 2:g}" y="28" text-anchor="middle" '
        f'font-family="sans-serif" font-size="16">{title}</text>',
    ]
    ax = (f'M {sx(x_lo):.2f} {sy(y_lo):.2f} H {sx(x_hi):.2f} '
          f'M {sx(x_lo):.2f} {sy(y_lo):.2f} V {sy(y_hi):.2f}')
    parts.append(f'<path d="{ax}" stroke="black" fill="none" stroke-width="1"/>')
    for tx in _ticks(x_lo, x_hi):
        parts.append(
            f'<line x1="{sx(tx):.2f}" y1="{sy(y_lo):.2f}" x2="{sx(tx):.2f}" '
            f'y2="{sy(y_lo) + 5:.2f}" stroke="black"/>'
            f'<text x="{sx(tx):.2f}" y="{sy(y_lo) + 20:.2f}" '
            f'text-anchor="middle" font-family="sans-serif" font-size="11">'
            f'{_fmt(tx)}</text>'
        )
    for ty in _ticks(y_lo, y_hi):
        parts.append(
            f'<line x1="{sx(x_lo) - 5:.2f}" y1="{sy(ty):.2f}" '
            f'x2="{sx(x_lo):.2f}" y2="{sy(ty):.2f}" stroke="black"/>'
            f'<text x="{sx(x_lo) - 8:.2f}" y="{sy(ty) + 4:.2f}" '
            f'text-anchor="end" font-family="sans-serif" font-size="11">'
            f'{_fmt(ty)}</text>'
        )
    parts.append(
        f'<text x="{_WIDTH / 2:g}" y="{_HEIGHT - 12}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13">{xlabel}</text>'
    )
    parts.append(
        f'<text x="18" y="{_HEIGHT / 2:g}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13" '
        f'transform="rotate(-90 18 {_HEIGHT / 2:g})">{ylabel}</text>'
    )
    for idx, (x, y, label) in enumerate(series):
        color = _COLORS[idx % len(_COLORS)]
        pts = " ".join(f"{sx(float(a)):.2f},{sy(float(b)):.2f}"
                       for a, b in zip(np.asarray(x), np.asarray(y)))
        parts.append(f'<polyline points="{pts}" fill="none" '
                     f'stroke="{color}" stroke-width="1.2"/>')
        if label:
            parts.append(
                f'<text x="{_WIDTH - _MARGIN:g}" y="{_MARGIN + 16 * idx:g}" '
                f'text-anchor="end" font-family="sans-serif" font-size="12" '
                f'fill="{color}">{label}</text>'
            )
    parts.append("</svg>")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(parts) + "\n")
