"""Minimal log-log line plots written as SVG text."""
import dataclasses
import datetime
import math
from typing import List, Optional, Sequence
from xml.sax.saxutils import escape

from ..core.errors import InvalidInput


WIDTH = 640
HEIGHT = 480
MARGIN_LEFT = 80
MARGIN_RIGHT = 20
MARGIN_TOP = 40
MARGIN_BOTTOM = 60
COLORS = ('#1f77b4', '#d62728', '#2ca02c', '#9467bd')


@dataclasses.dataclass
class Series:
    label: str
    xs: Sequence[float]
    ys: Sequence[float]
    dashed: bool = False
    markers: bool = True


def _decades(low: float, high: float) -> List[int]:
    return list(range(math.floor(low), math.ceil(high) + 1))


def _fmt(value: float) -> str:
    return f'{value:.2f}'


def loglog_svg(series: List[Series], title: str = '', x_label: str = '',
               y_label: str = '', timestamp: bool = True,
               now: Optional[datetime.datetime] = None) -> str:
    """
    render positive data on log10 axes with decade ticks.

    :param timestamp: add a generation comment (the only non-deterministic
        part of the output)
    """
    points = [(x, y) for s in series for x, y in zip(s.xs, s.ys)
              if x > 0 and y > 0]
    if not points:
        raise InvalidInput('nothing to plot: no positive data points')
    lx = [math.log10(x) for x, _ in points]
    ly = [math.log10(y) for _, y in points]
    x_ticks = _decades(min(lx), max(lx))
    y_ticks = _decades(min(ly), max(ly))
    x_lo, x_hi = x_ticks[0], max(x_ticks[-1], x_ticks[0] + 1)
    y_lo, y_hi = y_ticks[0], max(y_ticks[-1], y_ticks[0] + 1)
    plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
    plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM

    def px(x):
        return MARGIN_LEFT + (math.log10(x) - x_lo) / (x_hi - x_lo) * plot_w

    def py(y):
        return MARGIN_TOP + (y_hi - math.log10(y)) / (y_hi - y_lo) * plot_h

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" '
        f'height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
    ]
    if timestamp:
        now = now or datetime.datetime.now(datetime.timezone.utc)
        out.append(f'<!-- generated {now.isoformat(timespec="seconds")} -->')
    out.append(f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" '
               f'fill="white"/>')
    out.append(f'<rect x="{MARGIN_LEFT}" y="{MARGIN_TOP}" width="{plot_w}" '
               f'height="{plot_h}" fill="none" stroke="black"/>')

    for t in range(x_lo, x_hi + 1):
        x = _fmt(px(10.0 ** t))
        bottom = MARGIN_TOP + plot_h
        out.append(f'<line x1="{x}" y1="{MARGIN_TOP}" x2="{x}" '
                   f'y2="{bottom}" stroke="#dddddd"/>')
        out.append(f'<text x="{x}" y="{bottom + 18}" font-size="12" '
                   f'text-anchor="middle">1e{t}</text>')
    for t in range(y_lo, y_hi + 1):
        y = _fmt(py(10.0 ** t))
        right = MARGIN_LEFT + plot_w
        out.append(f'<line x1="{MARGIN_LEFT}" y1="{y}" x2="{right}" '
                   f'y2="{y}" stroke="#dddddd"/>')
        out.append(f'<text x="{MARGIN_LEFT - 8}" y="{y}" font-size="12" '
                   f'text-anchor="end" dominant-baseline="middle">'
                   f'1e{t}</text>')

    for i, s in enumerate(series):
        color = COLORS[i % len(COLORS)]
        data = sorted((x, y) for x, y in zip(s.xs, s.ys) if x > 0 and y > 0)
        coords = ' '.join(f'{_fmt(px(x))},{_fmt(py(y))}' for x, y in data)
        dash = ' stroke-dasharray="6,4"' if s.dashed else ''
        out.append(f'<polyline points="{coords}" fill="none" '
                   f'stroke="{color}" stroke-width="2"{dash}/>')
        if s.markers:
            for x, y in data:
                out.append(f'<circle cx="{_fmt(px(x))}" cy="{_fmt(py(y))}" '
                           f'r="3" fill="{color}"/>')
        legend_y = MARGIN_TOP + 16 + 18 * i
        out.append(f'<line x1="{MARGIN_LEFT + 12}" y1="{legend_y}" '
                   f'x2="{MARGIN_LEFT + 36}" y2="{legend_y}" '
                   f'stroke="{color}" stroke-width="2"{dash}/>')
        out.append(f'<text x="{MARGIN_LEFT + 42}" y="{legend_y}" '
                   f'font-size="12" dominant-baseline="middle">'
                   f'{escape(s.label)}</text>')

    out.append(f'<text x="{WIDTH / 2}" y="24" font-size="15" '
               f'text-anchor="middle">{escape(title)}</text>')
    out.append(f'<text x="{MARGIN_LEFT + plot_w / 2}" y="{HEIGHT - 16}" '
               f'font-size="13" text-anchor="middle">{escape(x_label)}</text>')
    out.append(f'<text x="18" y="{MARGIN_TOP + plot_h / 2}" font-size="13" '
               f'text-anchor="middle" transform="rotate(-90 18 '
               f'{MARGIN_TOP + plot_h / 2})">{escape(y_label)}</text>')
    out.append('</svg>')
    return '\n'.join(out) + '\n'


def write_svg(text: str, path) -> None:
    with open(path, 'w', encoding='utf-8') as f:
        f.write(text)
