"""Dependency-free SVG line plot of a computed solution."""

from __future__ import annotations

import numpy as np

WIDTH, HEIGHT = 900, 540
LEFT, RIGHT, TOP, BOTTOM = 90, 30, 30, 60


def _ticks(lo, hi, count=5):
    return np.linspace(lo, hi, count)


def _y_range(values):
    lo, hi = float(np.min(values)), float(np.max(values))
    span = hi - lo
    if span == 0:
        pad = 0.5 * abs(lo) if lo != 0 else 1.0
        return lo - pad, hi + pad
    return lo - 0.05 * span, hi + 0.05 * span


def svg_text(x, y, title=None):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.size == 0 or x.shape != y.shape:
        raise ValueError("need matching, nonempty x and y")
    x0, x1 = float(x.min()), float(x.max())
    if x1 == x0:
        x1 = x0 + 1.0
    y0, y1 = _y_range(y)
    pw, ph = WIDTH - LEFT - RIGHT, HEIGHT - TOP - BOTTOM

    def px(v):
        return LEFT + (v - x0) / (x1 - x0) * pw

    def py(v):
        return TOP + (y1 - v) / (y1 - y0) * ph

    points = " ".join(f"{px(a):.2f},{py(b):.2f}" for a, b in zip(x, y))
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {WIDTH} {HEIGHT}" '
        f'width="{WIDTH}" height="{HEIGHT}" font-family="sans-serif" font-size="13">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<line x1="{LEFT}" y1="{TOP + ph}" x2="{LEFT + pw}" y2="{TOP + ph}" stroke="black"/>',
        f'<line x1="{LEFT}" y1="{TOP}" x2="{LEFT}" y2="{TOP + ph}" stroke="black"/>',
    ]
    for t in _ticks(x0, x1):
        out.append(f'<line x1="{px(t):.2f}" y1="{TOP + ph}" x2="{px(t):.2f}" y2="{TOP + ph + 5}" stroke="black"/>')
        out.append(f'<text x="{px(t):.2f}" y="{TOP + ph + 20}" text-anchor="middle">{t:.2g}</text>')
    for t in _ticks(y0, y1):
        out.append(f'<line x1="{LEFT - 5}" y1="{py(t):.2f}" x2="{LEFT}" y2="{py(t):.2f}" stroke="black"/>')
        out.append(f'<text x="{LEFT - 8}" y="{py(t) + 4:.2f}" text-anchor="end">{t:.3e}</text>')
    out.append(f'<text x="{LEFT + pw / 2:.1f}" y="{HEIGHT - 15}" text-anchor="middle">x</text>')
    if title:
        safe = title.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
        out.append(f'<text x="{LEFT + pw / 2:.1f}" y="{TOP - 10}" text-anchor="middle">{safe}</text>')
    out.append(f'<polyline fill="none" stroke="#1f4e9c" stroke-width="2" points="{points}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_svg(solution, path, title=None):
    """Write the curve (x_i, U_i) of ``solution`` as a standalone SVG file."""
    with open(path, "w") as fh:
        fh.write(svg_text(solution.x, solution.u, title))
