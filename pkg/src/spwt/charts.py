"""Self-contained SVG renderers for sweep curves and correlation maps.

Presentation only: the CSV files are the data contract.  Output is plain
SVG 1.1 text with deterministic formatting, so identical inputs give
byte-identical files.
"""

import math

_PALETTE = ("#1f77b4", "#333333", "#2ca02c", "#d62728", "#9467bd", "#8c564b")

_W, _H = 640, 420
_ML, _MR, _MT, _MB = 62, 16, 20, 46


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def _ticks(lo: float, hi: float, count: int = 5) -> list[float]:
    if hi <= lo:
        return [lo]
    return [lo + (hi - lo) * i / (count - 1) for i in range(count)]


def render_line_chart(
    x_values, series: dict, x_label: str, y_label: str, title: str = ""
) -> str:
    """Polyline chart of one or more named series over a shared x axis.

    The series named "theory" is drawn dashed so a curve sitting exactly on
    it stays visible.
    """
    xs = [float(v) for v in x_values]
    x_lo, x_hi = min(xs), max(xs)
    if x_hi == x_lo:
        x_lo, x_hi = x_lo - 1.0, x_hi + 1.0
    y_hi = max((max(v) for v in series.values() if v), default=1.0)
    y_hi = y_hi * 1.06 if y_hi > 0 else 1.0
    y_lo = 0.0

    def px(v: float) -> float:
        return _ML + (v - x_lo) / (x_hi - x_lo) * (_W - _ML - _MR)

    def py(v: float) -> float:
        return _H - _MB - (v - y_lo) / (y_hi - y_lo) * (_H - _MT - _MB)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}" font-family="sans-serif" font-size="11">',
        f'<rect width="{_W}" height="{_H}" fill="white"/>',
    ]
    if title:
        parts.append(
            f'<text x="{_W / 2:.0f}" y="14" text-anchor="middle">{title}</text>'
        )
    for yt in _ticks(y_lo, y_hi):
        parts.append(
            f'<line x1="{_ML}" y1="{_fmt(py(yt))}" x2="{_W - _MR}" '
            f'y2="{_fmt(py(yt))}" stroke="#dddddd" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{_ML - 6}" y="{_fmt(py(yt) + 4)}" '
            f'text-anchor="end">{yt:.4g}</text>'
        )
    x_ticks = xs if len(xs) <= 12 else _ticks(x_lo, x_hi, 6)
    for xt in x_ticks:
        parts.append(
            f'<line x1="{_fmt(px(xt))}" y1="{_H - _MB}" x2="{_fmt(px(xt))}" '
            f'y2="{_H - _MB + 4}" stroke="#333333" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{_fmt(px(xt))}" y="{_H - _MB + 16}" '
            f'text-anchor="middle">{xt:.4g}</text>'
        )
    parts.append(
        f'<line x1="{_ML}" y1="{_MT}" x2="{_ML}" y2="{_H - _MB}" '
        f'stroke="#333333" stroke-width="1"/>'
    )
    parts.append(
        f'<line x1="{_ML}" y1="{_H - _MB}" x2="{_W - _MR}" y2="{_H - _MB}" '
        f'stroke="#333333" stroke-width="1"/>'
    )
    parts.append(
        f'<text x="{(_ML + _W - _MR) / 2:.0f}" y="{_H - 10}" '
        f'text-anchor="middle">{x_label}</text>'
    )
    parts.append(
        f'<text x="14" y="{(_MT + _H - _MB) / 2:.0f}" text-anchor="middle" '
        f'transform="rotate(-90 14 {(_MT + _H - _MB) / 2:.0f})">{y_label}</text>'
    )
    for idx, (name, values) in enumerate(series.items()):
        color = _PALETTE[idx % len(_PALETTE)]
        dash = ' stroke-dasharray="7 4"' if name == "theory" else ""
        points = " ".join(
            f"{_fmt(px(x))},{_fmt(py(float(y)))}" for x, y in zip(xs, values)
        )
        parts.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="1.6"'
            f'{dash} points="{points}"/>'
        )
        ly = _MT + 14 + 15 * idx
        parts.append(
            f'<line x1="{_W - _MR - 120}" y1="{ly}" x2="{_W - _MR - 96}" '
            f'y2="{ly}" stroke="{color}" stroke-width="1.6"{dash}/>'
        )
        parts.append(f'<text x="{_W - _MR - 90}" y="{ly + 4}">{name}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def render_heatmap(
    xs, ys, values, overlays=(), x_label: str = "x (m)", y_label: str = "y (m)"
) -> str:
    """Grayscale map of correlation magnitude over a position grid.

    ``values`` is indexed [row = y, column = x]; residuals are displayed on
    a log scale clamped to [1e-6, 1], darker meaning closer to a null.  The
    grid is subsampled to at most ~200 cells per axis for rendering;
    ``overlays`` positions (x, y) are marked with circles.
    """
    nx, ny = len(xs), len(ys)
    stride = max(1, math.ceil(nx / 200), math.ceil(ny / 200))
    sx = list(range(0, nx, stride))
    sy = list(range(0, ny, stride))
    x_lo, x_hi = float(xs[0]), float(xs[-1])
    y_lo, y_hi = float(ys[0]), float(ys[-1])
    span_x = x_hi - x_lo if x_hi > x_lo else 1.0
    span_y = y_hi - y_lo if y_hi > y_lo else 1.0

    def px(v: float) -> float:
        return _ML + (v - x_lo) / span_x * (_W - _ML - _MR)

    def py(v: float) -> float:
        return _H - _MB - (v - y_lo) / span_y * (_H - _MT - _MB)

    cell_w = (_W - _ML - _MR) / max(1, len(sx)) + 0.5
    cell_h = (_H - _MT - _MB) / max(1, len(sy)) + 0.5

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}" font-family="sans-serif" font-size="11">',
        f'<rect width="{_W}" height="{_H}" fill="white"/>',
    ]
    for i in sy:
        for j in sx:
            level = math.log10(max(float(values[i][j]), 1e-6))
            shade = int(round(255 * min(1.0, max(0.0, (level + 6.0) / 6.0))))
            parts.append(
                f'<rect x="{_fmt(px(float(xs[j])) - cell_w / 2)}" '
                f'y="{_fmt(py(float(ys[i])) - cell_h / 2)}" '
                f'width="{_fmt(cell_w)}" height="{_fmt(cell_h)}" '
                f'fill="rgb({shade},{shade},{shade})"/>'
            )
    for ox, oy in overlays:
        parts.append(
            f'<circle cx="{_fmt(px(float(ox)))}" cy="{_fmt(py(float(oy)))}" '
            f'r="4" fill="none" stroke="#d62728" stroke-width="1.8"/>'
        )
    for value, anchor, x, y in (
        (x_lo, "start", _ML, _H - _MB + 16),
        (x_hi, "end", _W - _MR, _H - _MB + 16),
    ):
        parts.append(
            f'<text x="{x}" y="{y}" text-anchor="{anchor}">{value:.5g}</text>'
        )
    for value, y in ((y_lo, _H - _MB), (y_hi, _MT + 8)):
        parts.append(
            f'<text x="{_ML - 6}" y="{y}" text-anchor="end">{value:.5g}</text>'
        )
    parts.append(
        f'<text x="{(_ML + _W - _MR) / 2:.0f}" y="{_H - 10}" '
        f'text-anchor="middle">{x_label}</text>'
    )
    parts.append(
        f'<text x="14" y="{(_MT + _H - _MB) / 2:.0f}" text-anchor="middle" '
        f'transform="rotate(-90 14 {(_MT + _H - _MB) / 2:.0f})">{y_label}</text>'
    )
    parts.append(
        '<text x="'
        + str(_W - _MR)
        + '" y="14" text-anchor="end">dark = |correlation| near 0 '
        "(log scale 1e-6..1)</text>"
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
