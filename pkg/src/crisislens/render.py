"""Static SVG figures.

Every plotted datum carries a ``data-value`` attribute formatted with
:func:`fmt`, the same formatter used for the CSV/JSON outputs, so figures
can be checked against their sibling tables by string equality.
"""
from __future__ import annotations

import math
from typing import Mapping, Sequence
from xml.sax.saxutils import escape, quoteattr

FONT = "font-family=\"DejaVu Sans, Arial, sans-serif\""

SENTIMENT_COLORS = {
    "happy-left": "#1f3f99",
    "sad-left": "#8ea6cf",
    "happy-right": "#f2c500",
    "sad-right": "#e3d69b",
    "neutral-left": "#bbbbbb",
    "neutral-right": "#bbbbbb",
}
SERIES_COLORS = ("#1f3f99", "#d9a400", "#000000", "#b2182b", "#4d9221", "#762a83", "#8c510a", "#35978f")


def fmt(value) -> str:
    """Canonical text form for numbers in every output file."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if value == 0.0:
            return "0"
        return format(value, ".12g")
    return str(value)


class SVG:
    def __init__(self, width: int, height: int, title: str = ""):
        self.width = width
        self.height = height
        self.parts: list[str] = []
        if title:
            self.text(width / 2, 20, title, size=14, anchor="middle", weight="bold")

    def rect(self, x, y, w, h, fill, **data):
        self.parts.append(
            f'<rect x="{x:.2f}" y="{y:.2f}" width="{w:.2f}" height="{h:.2f}" fill="{fill}"{_data(data)}/>'
        )

    def line(self, x1, y1, x2, y2, stroke="#000", width=1.0, dash: str | None = None):
        extra = f' stroke-dasharray="{dash}"' if dash else ""
        self.parts.append(
            f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" stroke="{stroke}" stroke-width="{width}"{extra}/>'
        )

    def circle(self, x, y, r, fill, **data):
        self.parts.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="{r:.2f}" fill="{fill}"{_data(data)}/>')

    def polyline(self, points, stroke, width=1.5):
        if len(points) < 2:
            return
        pts = " ".join(f"{x:.2f},{y:.2f}" for x, y in points)
        self.parts.append(f'<polyline points="{pts}" fill="none" stroke="{stroke}" stroke-width="{width}"/>')

    def text(self, x, y, s, size=10, anchor="start", weight="normal", rotate: float | None = None):
        transform = f' transform="rotate({rotate} {x:.2f} {y:.2f})"' if rotate is not None else ""
        self.parts.append(
            f'<text x="{x:.2f}" y="{y:.2f}" font-size="{size}" text-anchor="{anchor}" '
            f'font-weight="{weight}" {FONT}{transform}>{escape(str(s))}</text>'
        )

    def group(self, cls: str):
        self.parts.append(f'<g class="{cls}">')

    def end(self):
        self.parts.append("</g>")

    def render(self) -> str:
        head = (
            '<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{self.width}" '
            f'height="{self.height}" viewBox="0 0 {self.width} {self.height}">\n'
            f'<rect x="0" y="0" width="{self.width}" height="{self.height}" fill="#ffffff"/>\n'
        )
        return head + "\n".join(self.parts) + "\n</svg>\n"


def _data(data: Mapping) -> str:
    return "".join(f" data-{k.replace('_', '-')}={quoteattr(fmt(v))}" for k, v in data.items())


def _entropy_fill(value: float | None) -> str:
    """White for homogeneous content, dark blue for diverse content."""
    v = 0.0 if value is None else min(max(value, 0.0), 1.0)
    lo, hi = (255, 255, 255), (8, 48, 107)
    r, g, b = (round(a + (c - a) * v) for a, c in zip(lo, hi))
    return f"#{r:02x}{g:02x}{b:02x}"


def wordshift_svg(entries: Sequence, title: str, labels: Sequence[str], kind: str = "sentiment") -> str:
    """Horizontal signed bars, positive (toward the first corpus) drawn to the left."""
    bar_h, top, width = 14, 60, 640
    height = top + bar_h * max(len(entries), 1) + 40
    svg = SVG(width, height, title)
    mid = width / 2
    half = width / 2 - 110
    scale = max((abs(e.contribution) for e in entries), default=0.0) or 1.0
    svg.text(mid - 10, 42, f"← {labels[0]}", size=11, anchor="end")
    svg.text(mid + 10, 42, f"{labels[1]} →", size=11, anchor="start")
    svg.line(mid, top - 6, mid, height - 30, "#444")
    svg.group("bars")
    for i, e in enumerate(entries):
        y = top + i * bar_h
        length = abs(e.contribution) / scale * half
        x = mid - length if e.side == "left" else mid
        if kind == "jsd":
            fill = _entropy_fill(e.entropy_color)
            svg.rect(x, y + 1, length, bar_h - 2, fill, token=e.token, value=e.contribution, side=e.side,
                     entropy=e.entropy_color)
        else:
            fill = SENTIMENT_COLORS.get(e.klass, "#999999")
            svg.rect(x, y + 1, length, bar_h - 2, fill, token=e.token, value=e.contribution, side=e.side)
        if e.side == "left":
            svg.text(x - 4, y + bar_h - 3, e.token, anchor="end")
        else:
            svg.text(x + length + 4, y + bar_h - 3, e.token, anchor="start")
    svg.end()
    unit = "bits" if kind == "jsd" else "contribution to happiness difference"
    svg.text(mid, height - 10, f"{unit} (longest bar = {fmt(scale)})", size=10, anchor="middle")
    return svg.render()


def _axis_range(values: Sequence[float]) -> tuple[float, float]:
    lo, hi = min(values), max(values)
    if lo == hi:
        pad = abs(lo) * 0.1 or 1.0
        return lo - pad, hi + pad
    pad = (hi - lo) * 0.05
    return lo - pad, hi + pad


def line_chart_svg(
    x_labels: Sequence[str],
    series: Mapping[str, Sequence[float | None]],
    title: str,
    y_label: str = "",
) -> str:
    """Line chart over categorical x; ``None`` values break the line."""
    width, height = 720, 360
    left, right, top, bottom = 70, 130, 40, 60
    pw, ph = width - left - right, height - top - bottom
    svg = SVG(width, height, title)
    finite = [v for vals in series.values() for v in vals if v is not None]
    y0, y1 = _axis_range(finite) if finite else (-1.0, 1.0)
    n = len(x_labels)

    def px(i):
        return left + (pw * i / (n - 1) if n > 1 else pw / 2)

    def py(v):
        return top + ph - (v - y0) / (y1 - y0) * ph

    svg.line(left, top + ph, left + pw, top + ph)
    svg.line(left, top, left, top + ph)
    if y0 < 0 < y1:
        svg.line(left, py(0.0), left + pw, py(0.0), "#999", 0.5, "3,3")
    for k in range(5):
        v = y0 + (y1 - y0) * k / 4
        svg.text(left - 6, py(v) + 3, f"{v:.3g}", size=9, anchor="end")
    step = max(1, n // 10)
    for i in range(0, n, step):
        svg.text(px(i), top + ph + 14, x_labels[i], size=8, anchor="end", rotate=-35)
    if y_label:
        svg.text(16, top + ph / 2, y_label, size=10, anchor="middle", rotate=-90)

    for idx, (name, values) in enumerate(series.items()):
        color = SERIES_COLORS[idx % len(SERIES_COLORS)]
        svg.group(f"series-{name}")
        run: list[tuple[float, float]] = []
        for i, v in enumerate(values):
            if v is None:
                svg.polyline(run, color)
                run = []
                continue
            run.append((px(i), py(v)))
        svg.polyline(run, color)
        for i, v in enumerate(values):
            if v is not None:
                svg.circle(px(i), py(v), 2.2, color, series=name, label=x_labels[i], value=v)
        svg.end()
        svg.line(width - right + 10, top + 10 + idx * 16, width - right + 30, top + 10 + idx * 16, color, 2)
        svg.text(width - right + 34, top + 14 + idx * 16, name, size=10)
    return svg.render()


def degree_svg(histogram: Mapping[int, int], title: str) -> str:
    """Log-log scatter of an in-degree histogram; degree 0 is listed but not plotted."""
    width, height = 480, 380
    left, top, pw, ph = 70, 40, 370, 280
    svg = SVG(width, height, title)
    pts = [(d, c) for d, c in sorted(histogram.items()) if d > 0 and c > 0]
    svg.line(left, top + ph, left + pw, top + ph)
    svg.line(left, top, left, top + ph)
    svg.text(left + pw / 2, height - 15, "in-degree (log)", anchor="middle")
    svg.text(16, top + ph / 2, "nodes (log)", anchor="middle", rotate=-90)
    if 0 in histogram:
        svg.text(left + pw, top - 8, f"degree 0: {histogram[0]} nodes", size=9, anchor="end")
    if pts:
        lx = [math.log10(d) for d, _ in pts]
        ly = [math.log10(c) for _, c in pts]
        x0, x1 = min(lx), max(lx) if max(lx) > min(lx) else min(lx) + 1
        y0, y1 = 0.0, max(ly) if max(ly) > 0 else 1.0
        svg.group("points")
        for (d, c), a, b in zip(pts, lx, ly):
            x = left + (a - x0) / (x1 - x0) * pw
            y = top + ph - (b - y0) / (y1 - y0) * ph
            svg.circle(x, y, 3, "#1f3f99", degree=d, value=c)
        svg.end()
        svg.text(left, top + ph + 14, str(pts[0][0]), size=9, anchor="middle")
        svg.text(left + pw, top + ph + 14, str(pts[-1][0]), size=9, anchor="middle")
    return svg.render()


def stacked_bars_svg(x_labels: Sequence[str], stacks: Mapping[str, Sequence[int]], title: str) -> str:
    """Stacked bars per x category; ``stacks`` maps layer name to per-x heights."""
    width, height = 760, 380
    left, right, top, bottom = 60, 160, 40, 60
    pw, ph = width - left - right, height - top - bottom
    svg = SVG(width, height, title)
    n = max(len(x_labels), 1)
    totals = [sum(vals[i] for vals in stacks.values()) for i in range(len(x_labels))]
    ymax = max(totals, default=0) or 1
    bw = pw / n
    svg.line(left, top + ph, left + pw, top + ph)
    svg.line(left, top, left, top + ph)
    svg.text(left - 6, top + 3, str(ymax), size=9, anchor="end")
    svg.text(left - 6, top + ph + 3, "0", size=9, anchor="end")
    for idx, (name, values) in enumerate(stacks.items()):
        color = SERIES_COLORS[idx % len(SERIES_COLORS)]
        svg.group(f"layer-{name.replace(' ', '-')}")
        for i, v in enumerate(values):
            if v == 0:
                continue
            below = sum(list(stacks.values())[j][i] for j in range(idx))
            h = v / ymax * ph
            y = top + ph - below / ymax * ph - h
            svg.rect(left + i * bw + 1, y, max(bw - 2, 0.5), h, color, layer=name, label=x_labels[i], value=v)
        svg.end()
        svg.rect(width - right + 10, top + 4 + idx * 16, 12, 10, color)
        svg.text(width - right + 28, top + 13 + idx * 16, name, size=10)
    step = max(1, n // 12)
    for i in range(0, len(x_labels), step):
        svg.text(left + (i + 0.5) * bw, top + ph + 14, x_labels[i], size=8, anchor="end", rotate=-35)
    return svg.render()
