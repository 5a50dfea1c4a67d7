"""Self-contained SVG scatter plots of bound against dimension."""

import math
from dataclasses import dataclass

from django.template.loader import render_to_string

from bounds import BoundReport

WIDTH, HEIGHT = 800, 500
MARGIN_LEFT, MARGIN_RIGHT, MARGIN_TOP, MARGIN_BOTTOM = 80, 170, 30, 60
MARKERS = ["circle", "diamond", "square", "triangle"]
COLORS = ["#1f4e79", "#b03a2e", "#1e8449", "#7d3c98", "#b9770e", "#2e4053"]
LOG_TEN = math.log(10.0)


@dataclass(frozen=True)
class Series:
    label: str
    reports: tuple[BoundReport, ...]


def series_label(report: BoundReport) -> str:
    return f"{report.method.value}/{report.gauge}" if report.gauge else report.method.value


def group_series(reports: list[BoundReport]) -> list[Series]:
    """One series per method and gauge, in order of first appearance."""
    grouped: dict[str, list[BoundReport]] = {}
    for report in reports:
        grouped.setdefault(series_label(report), []).append(report)
    return [Series(label, tuple(sorted(items, key=lambda r: r.n))) for label, items in grouped.items()]


def _fmt(value: float) -> str:
    return f"{value:.2f}"


def _tick_label(value: float, log_scale: bool) -> str:
    if log_scale:
        return f"1e{int(value)}"
    return f"{value:g}"


def _nice_step(span: float, target: int) -> float:
    raw = span / target
    magnitude = 10 ** math.floor(math.log10(raw))
    for factor in (1, 2, 5, 10):
        if factor * magnitude >= raw:
            return factor * magnitude
    return 10 * magnitude


def _ticks(low: float, high: float, target: int) -> list[float]:
    step = _nice_step(high - low, target)
    start = math.ceil(low / step - 1e-9) * step
    ticks = []
    value = start
    while value <= high + 1e-9 * step:
        ticks.append(round(value, 10))
        value += step
    return ticks


def render_plot_svg(reports: list[BoundReport], log_scale: bool = False, lines: bool = False) -> str:
    """
    Scatter of bound against n, one marker style per series.

    With ``log_scale`` the y axis is log10 of the bound, taken from
    ``log_bound`` so values below the float range still plot.
    """
    if not reports:
        raise ValueError("nothing to plot")
    series = group_series(reports)

    def y_value(report: BoundReport) -> float:
        clamped = min(report.log_bound, 0.0)
        return clamped / LOG_TEN if log_scale else math.exp(clamped)

    xs = [report.n for report in reports]
    ys = [y_value(report) for report in reports]
    x_low, x_high = min(xs), max(xs)
    if x_low == x_high:
        x_low, x_high = x_low - 1, x_high + 1
    if log_scale:
        y_low, y_high = math.floor(min(ys)), max(0, math.ceil(max(ys)))
        if y_low == y_high:
            y_low -= 1
    else:
        y_low, y_high = 0.0, max(1.0, max(ys))

    plot_width = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
    plot_height = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM

    def px(x: float) -> float:
        return MARGIN_LEFT + (x - x_low) / (x_high - x_low) * plot_width

    def py(y: float) -> float:
        return MARGIN_TOP + (y_high - y) / (y_high - y_low) * plot_height

    x_ticks = [t for t in _ticks(x_low, x_high, 8) if float(t).is_integer()]
    if log_scale:
        y_ticks = _ticks(y_low, y_high, 8)
        y_ticks = [t for t in y_ticks if float(t).is_integer()]
    else:
        y_ticks = _ticks(y_low, y_high, 5)

    context_series = []
    for index, item in enumerate(series):
        points = [(px(report.n), py(y_value(report))) for report in item.reports]
        context_series.append(
            {
                "label": item.label,
                "marker": MARKERS[index % len(MARKERS)],
                "color": COLORS[index % len(COLORS)],
                "points": [
                    {
                        "x": _fmt(x),
                        "y": _fmt(y),
                        "diamond": f"{_fmt(x)},{_fmt(y - 5)} {_fmt(x + 5)},{_fmt(y)} {_fmt(x)},{_fmt(y + 5)} {_fmt(x - 5)},{_fmt(y)}",
                        "triangle": f"{_fmt(x)},{_fmt(y - 5)} {_fmt(x + 5)},{_fmt(y + 4)} {_fmt(x - 5)},{_fmt(y + 4)}",
                        "square_x": _fmt(x - 4),
                        "square_y": _fmt(y - 4),
                    }
                    for x, y in points
                ],
                "polyline": " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in points),
                "legend_y": _fmt(MARGIN_TOP + 20 + 22 * index),
            }
        )

    context = {
        "width": WIDTH,
        "height": HEIGHT,
        "left": MARGIN_LEFT,
        "right": _fmt(WIDTH - MARGIN_RIGHT),
        "top": MARGIN_TOP,
        "bottom": _fmt(HEIGHT - MARGIN_BOTTOM),
        "tick_end": _fmt(HEIGHT - MARGIN_BOTTOM + 5),
        "center_x": _fmt(MARGIN_LEFT + plot_width / 2),
        "center_y": _fmt(MARGIN_TOP + plot_height / 2),
        "legend_x": _fmt(WIDTH - MARGIN_RIGHT + 20),
        "x_ticks": [{"pos": _fmt(px(t)), "label": f"{int(t)}"} for t in x_ticks],
        "y_ticks": [{"pos": _fmt(py(t)), "label": _tick_label(t, log_scale)} for t in y_ticks],
        "y_label": "log10 bound on δ(Xⁿ)" if log_scale else "bound on δ(Xⁿ)",
        "series": context_series,
        "lines": lines,
    }
    return render_to_string("cli/bounds_plot.svg", context)
