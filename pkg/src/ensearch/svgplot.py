"""Dependency-free SVG 1.1 renderings of the search diagnostics.

Two plots: a filled-cell contour of log10(Z) over alpha x log10(lambda) with
the global minimum marked in red, and minimum cvm against nzero.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from xml.sax.saxutils import escape

import numpy as np

# 10 samples of viridis, dark (near the minimum) to light
PALETTE = ("#440154", "#482878", "#3e4989", "#31688e", "#26828e",
           "#1f9e89", "#35b779", "#6ece58", "#b5de2b", "#fde725")
MIN_MARKER = "#e41a1c"

WIDTH, HEIGHT = 640, 480
MARGIN_LEFT, MARGIN_RIGHT, MARGIN_TOP, MARGIN_BOTTOM = 70, 130, 30, 55


@dataclass(frozen=True)
class Axis:
    lo: float
    hi: float
    px_lo: float
    px_hi: float

    def __call__(self, v: float) -> float:
        if self.hi == self.lo:
            return 0.5 * (self.px_lo + self.px_hi)
        return self.px_lo + (v - self.lo) / (self.hi - self.lo) * (self.px_hi - self.px_lo)


def _edges(values: np.ndarray, pad: float) -> np.ndarray:
    """Cell boundaries: midpoints between neighbours, half a step beyond each end."""
    v = np.sort(np.asarray(values, dtype=float))
    if v.size == 1:
        return np.array([v[0] - pad, v[0] + pad])
    mids = 0.5 * (v[1:] + v[:-1])
    return np.concatenate([[v[0] - (mids[0] - v[0])], mids, [v[-1] + (v[-1] - mids[-1])]])


def _num(v: float) -> str:
    return f"{v:.2f}"


def _tick_label(v: float) -> str:
    if v == 0:
        return "0"
    if abs(v) >= 1e4 or abs(v) < 1e-3:
        return f"{v:.1e}"
    return f"{v:.3g}"


def _ticks(lo: float, hi: float, n: int = 5) -> list[float]:
    if hi == lo:
        return [lo]
    raw = (hi - lo) / n
    mag = 10 ** math.floor(math.log10(raw))
    step = min((m * mag for m in (1, 2, 5, 10) if m * mag >= raw), default=10 * mag)
    start = math.ceil(lo / step - 1e-9) * step
    out = []
    t = start
    while t <= hi + 1e-9 * step:
        out.append(round(t, 12) + 0.0)
        t += step
    return out


def _head(title: str) -> list[str]:
    return [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        '<!DOCTYPE svg PUBLIC "-//W3C//DTD SVG 1.1//EN" "http://www.w3.org/Graphics/SVG/1.1/DTD/svg11.dtd">',
        f'<svg version="1.1" xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="11">',
        f"<title>{escape(title)}</title>",
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
    ]


def _axes(parts, xa: Axis, ya: Axis, xticks, yticks, xlabel, ylabel):
    x0, x1 = MARGIN_LEFT, WIDTH - MARGIN_RIGHT
    y0, y1 = HEIGHT - MARGIN_BOTTOM, MARGIN_TOP
    parts.append(f'<g id="axes" stroke="black" fill="none">')
    parts.append(f'<rect x="{x0}" y="{y1}" width="{x1 - x0}" height="{y0 - y1}"/>')
    for t in xticks:
        px = _num(xa(t))
        parts.append(f'<line x1="{px}" y1="{y0}" x2="{px}" y2="{y0 + 5}"/>')
    for t in yticks:
        py = _num(ya(t))
        parts.append(f'<line x1="{x0 - 5}" y1="{py}" x2="{x0}" y2="{py}"/>')
    parts.append("</g>")
    parts.append('<g id="tick-labels" fill="black">')
    for t in xticks:
        parts.append(f'<text x="{_num(xa(t))}" y="{y0 + 18}" text-anchor="middle">{_tick_label(t)}</text>')
    for t in yticks:
        parts.append(f'<text x="{x0 - 8}" y="{_num(ya(t) + 4)}" text-anchor="end">{_tick_label(t)}</text>')
    parts.append("</g>")
    parts.append(f'<text x="{_num(0.5 * (x0 + x1))}" y="{HEIGHT - 15}" text-anchor="middle">{escape(xlabel)}</text>')
    cy = _num(0.5 * (y0 + y1))
    parts.append(f'<text x="18" y="{cy}" text-anchor="middle" transform="rotate(-90 18 {cy})">{escape(ylabel)}</text>')


def contour_axes(surface) -> tuple[Axis, Axis, np.ndarray, np.ndarray]:
    """Pixel transforms for the contour plot: x is alpha, y is log10(lambda)."""
    a_edges = _edges(surface.alphas, 0.05)
    l_edges = _edges(np.log10(surface.lambdas), 0.5)
    xa = Axis(a_edges[0], a_edges[-1], MARGIN_LEFT, WIDTH - MARGIN_RIGHT)
    ya = Axis(l_edges[0], l_edges[-1], HEIGHT - MARGIN_BOTTOM, MARGIN_TOP)
    return xa, ya, a_edges, l_edges


def color_levels(log10z: np.ndarray, n: int = len(PALETTE)) -> np.ndarray:
    lo, hi = float(np.min(log10z)), float(np.max(log10z))
    if hi == lo:
        return np.linspace(lo, lo + 1.0, n + 1)
    return np.linspace(lo, hi, n + 1)


def contour_svg(surface) -> str:
    xa, ya, a_edges, l_edges = contour_axes(surface)
    levels = color_levels(surface.log10z)
    a_order = np.argsort(surface.alphas)
    l_order = np.argsort(np.log10(surface.lambdas))
    parts = _head("log10(Z) over the lambda-alpha grid")
    parts.append('<g id="cells" stroke="none">')
    for ci, i in enumerate(a_order):
        for cj, k in enumerate(l_order):
            v = surface.log10z[i, k]
            b = min(int(np.searchsorted(levels, v, side="right")) - 1, len(PALETTE) - 1)
            xl, xr = xa(a_edges[ci]), xa(a_edges[ci + 1])
            yt, yb = ya(l_edges[cj + 1]), ya(l_edges[cj])
            parts.append(f'<rect x="{_num(xl)}" y="{_num(yt)}" width="{_num(xr - xl)}" '
                         f'height="{_num(yb - yt)}" fill="{PALETTE[max(b, 0)]}"/>')
    parts.append("</g>")
    a_min, l_min = surface.minimum
    parts.append(f'<circle id="global-minimum" cx="{_num(xa(a_min))}" cy="{_num(ya(math.log10(l_min)))}" '
                 f'r="5" fill="{MIN_MARKER}" stroke="white" stroke-width="1"/>')
    xt = list(surface.alphas) if len(surface.alphas) <= 11 else _ticks(xa.lo, xa.hi)
    yt = _ticks(l_edges[0], l_edges[-1])
    _axes(parts, xa, ya, xt, yt, "alpha", "log10(lambda)")
    # legend
    lx, top = WIDTH - MARGIN_RIGHT + 20, MARGIN_TOP + 15
    parts.append('<g id="legend">')
    parts.append(f'<text x="{lx}" y="{top - 5}">log10(Z)</text>')
    h = 20
    for b in range(len(PALETTE)):
        y = top + (len(PALETTE) - 1 - b) * h
        parts.append(f'<rect x="{lx}" y="{y}" width="16" height="{h}" fill="{PALETTE[b]}"/>')
        parts.append(f'<text x="{lx + 22}" y="{y + h - 5}">{_tick_label(levels[b])}</text>')
    y = top + len(PALETTE) * h + 20
    parts.append(f'<circle cx="{lx + 8}" cy="{y}" r="5" fill="{MIN_MARKER}"/>')
    parts.append(f'<text x="{lx + 22}" y="{y + 4}">min cvm</text>')
    parts.append("</g>")
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def nzero_axes(rows) -> tuple[Axis, Axis]:
    nz = [r.nzero for r in rows]
    cv = [r.cvm for r in rows]
    xlo, xhi = min(nz), max(nz)
    ylo, yhi = min(cv), max(cv)
    if xhi == xlo:
        xlo, xhi = xlo - 1, xhi + 1
    pad = 0.05 * (yhi - ylo) if yhi > ylo else max(abs(ylo) * 0.05, 1e-3)
    xa = Axis(xlo - 0.5, xhi + 0.5, MARGIN_LEFT, WIDTH - MARGIN_RIGHT)
    ya = Axis(ylo - pad, yhi + pad, HEIGHT - MARGIN_BOTTOM, MARGIN_TOP)
    return xa, ya


def nzero_svg(rows) -> str:
    """Point-and-line plot of minimum cvm against the number of nonzero coefficients."""
    rows = sorted(rows, key=lambda r: r.nzero)
    xa, ya = nzero_axes(rows)
    parts = _head("minimum cvm by number of nonzero coefficients")
    pts = " ".join(f"{_num(xa(r.nzero))},{_num(ya(r.cvm))}" for r in rows)
    parts.append(f'<polyline id="trace" points="{pts}" fill="none" stroke="#31688e" stroke-width="1.5"/>')
    parts.append('<g id="points" fill="#31688e">')
    for r in rows:
        parts.append(f'<circle cx="{_num(xa(r.nzero))}" cy="{_num(ya(r.cvm))}" r="3.5"/>')
    parts.append("</g>")
    lo, hi = int(math.ceil(xa.lo)), int(math.floor(xa.hi))
    step = max(1, (hi - lo) // 10 + 1)
    xt = list(range(lo, hi + 1, step))
    _axes(parts, xa, ya, xt, _ticks(ya.lo, ya.hi), "nzero", "minimum cvm")
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def emit_contour_svg(surface, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(contour_svg(surface))


def emit_nzero_svg(rows, path) -> None:
    if not rows:
        raise ValueError("no rows to plot")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(nzero_svg(rows))
