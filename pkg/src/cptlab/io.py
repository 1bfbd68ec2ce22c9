"""CSV formatting and minimal static SVG line charts."""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

import numpy as np


def format_number(x) -> str:
    """17 significant digits, so values round-trip exactly through text."""
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.17g}"


def write_metadata(fh, metadata: dict):
    for key, value in metadata.items():
        if isinstance(value, float):
            value = format_number(value)
        fh.write(f"# {key}: {value}\n")


def read_csv(path):
    """Parse a file written by this package into (metadata, header, rows of floats)."""
    metadata, header, rows = {}, None, []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if line.startswith("#"):
                key, _, value = line[1:].strip().partition(":")
                metadata[key.strip()] = value.strip()
            elif header is None:
                header = line.split(",")
            elif line:
                rows.append([float(v) for v in line.split(",")])
    return metadata, header, np.array(rows)


_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def _ticks(lo, hi, n=5):
    if hi == lo:
        return [lo]
    return list(np.linspace(lo, hi, n))


def line_chart(series, *, title="", xlabel="", ylabel="", logx=False,
               width=640, height=420) -> str:
    """Render ``[(label, x, y), ...]`` as an SVG document string."""
    margin_l, margin_r, margin_t, margin_b = 80, 20, 40, 55
    pw, ph = width - margin_l - margin_r, height - margin_t - margin_b

    def tx(x):
        return np.log10(x) if logx else np.asarray(x, dtype=float)

    xs = [tx(np.asarray(x, dtype=float)) for _, x, _ in series]
    ys = [np.asarray(y, dtype=float) for _, _, y in series]
    finite = [(x[np.isfinite(x) & np.isfinite(y)], y[np.isfinite(x) & np.isfinite(y)])
              for x, y in zip(xs, ys)]
    allx = np.concatenate([x for x, _ in finite]) if finite else np.array([0.0, 1.0])
    ally = np.concatenate([y for _, y in finite]) if finite else np.array([0.0, 1.0])
    x0, x1 = float(allx.min()), float(allx.max())
    y0, y1 = float(ally.min()), float(ally.max())
    if x1 == x0:
        x0, x1 = x0 - 0.5, x1 + 0.5
    if y1 == y0:
        y0, y1 = y0 - 0.5, y1 + 0.5
    pad = 0.05 * (y1 - y0)
    y0, y1 = y0 - pad, y1 + pad

    def px(x):
        return margin_l + (x - x0) / (x1 - x0) * pw

    def py(y):
        return margin_t + (1 - (y - y0) / (y1 - y0)) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<rect x="{margin_l}" y="{margin_t}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
        f'<text x="{width / 2:.1f}" y="22" text-anchor="middle" font-size="14">{escape(title)}</text>',
        f'<text x="{margin_l + pw / 2:.1f}" y="{height - 12}" text-anchor="middle">{escape(xlabel)}</text>',
        f'<text x="18" y="{margin_t + ph / 2:.1f}" text-anchor="middle" '
        f'transform="rotate(-90 18 {margin_t + ph / 2:.1f})">{escape(ylabel)}</text>',
    ]
    for xt in _ticks(x0, x1):
        label = f"{10 ** xt:.3g}" if logx else f"{xt:.3g}"
        out.append(f'<line x1="{px(xt):.2f}" y1="{margin_t + ph}" x2="{px(xt):.2f}" '
                   f'y2="{margin_t + ph + 5}" stroke="black"/>')
        out.append(f'<text x="{px(xt):.2f}" y="{margin_t + ph + 18}" text-anchor="middle">{label}</text>')
    for yt in _ticks(y0, y1):
        out.append(f'<line x1="{margin_l - 5}" y1="{py(yt):.2f}" x2="{margin_l}" '
                   f'y2="{py(yt):.2f}" stroke="black"/>')
        out.append(f'<text x="{margin_l - 8}" y="{py(yt) + 4:.2f}" text-anchor="end">{yt:.3g}</text>')
    for k, ((label, _, _), (x, y)) in enumerate(zip(series, finite)):
        colour = _PALETTE[k % len(_PALETTE)]
        pts = " ".join(f"{px(a):.2f},{py(b):.2f}" for a, b in zip(x, y))
        out.append(f'<polyline fill="none" stroke="{colour}" stroke-width="1.5" points="{pts}"/>')
        ly = margin_t + 16 + 16 * k
        out.append(f'<line x1="{margin_l + pw - 150}" y1="{ly - 4}" x2="{margin_l + pw - 130}" '
                   f'y2="{ly - 4}" stroke="{colour}" stroke-width="2"/>')
        out.append(f'<text x="{margin_l + pw - 125}" y="{ly}">{escape(label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
