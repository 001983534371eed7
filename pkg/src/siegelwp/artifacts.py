"""Deterministic artifact writers: CSV tables, complex matrices, JSON reports, SVG plots.

Every writer goes through an atomic temp-file-then-rename so partially
written artifacts never appear, and all numbers are formatted with ``repr``
(shortest round-trip form) so identical inputs yield identical bytes.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile

import numpy as np


def atomic_write_text(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix="~")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def fmt_float(x) -> str:
    return repr(float(x))


def fmt_complex_cell(z) -> str:
    """A complex entry as one CSV cell 're,im' (quoted by the csv layer)."""
    z = complex(z)
    return f"{repr(z.real)},{repr(z.imag)}"


def csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(list(header))
    for row in rows:
        writer.writerow(list(row))
    return buf.getvalue()


def write_csv(path: str, header, rows) -> None:
    atomic_write_text(path, csv_text(header, rows))


def complex_matrix_csv_text(A: np.ndarray) -> str:
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2:
        raise ValueError("expected a matrix")
    rows = ([fmt_complex_cell(z) for z in row] for row in A)
    header = [f"c{j}" for j in range(A.shape[1])]
    return csv_text(header, rows)


def write_complex_matrix_csv(path: str, A: np.ndarray) -> None:
    atomic_write_text(path, complex_matrix_csv_text(A))


def read_complex_matrix_csv(path: str) -> np.ndarray:
    with open(path, "r", encoding="utf-8", newline="") as handle:
        rows = list(csv.reader(handle))
    if not rows:
        raise ValueError("empty matrix file")
    data = []
    for row in rows[1:]:
        parsed = []
        for cell in row:
            re_s, im_s = cell.split(",")
            parsed.append(complex(float(re_s), float(im_s)))
        data.append(parsed)
    return np.array(data, dtype=complex)


def _json_safe(value):
    if isinstance(value, dict):
        return {k: _json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(v) for v in value]
    if isinstance(value, (np.floating, float)):
        v = float(value)
        if math.isnan(v):
            return None
        if math.isinf(v):
            return 1e308 if v > 0 else -1e308
        return v
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.bool_,)):
        return bool(value)
    return value


def json_report_text(report: dict) -> str:
    return json.dumps(_json_safe(report), indent=2, sort_keys=True) + "\n"


def write_json_report(path: str, report: dict) -> None:
    atomic_write_text(path, json_report_text(report))


def svg_line_plot(
    xs,
    ys,
    *,
    title: str,
    xlabel: str,
    ylabel: str,
    width: int = 640,
    height: int = 420,
) -> str:
    """A small self-contained line-and-marker plot; no external assets."""
    xs = [float(v) for v in xs]
    ys = [float(v) for v in ys]
    if len(xs) != len(ys) or not xs:
        raise ValueError("need matching non-empty coordinate lists")
    left, right, top, bottom = 70, 20, 40, 50
    pw, ph = width - left - right, height - top - bottom

    def span(values):
        lo, hi = min(values), max(values)
        if hi - lo < 1e-300:
            pad = max(abs(hi), 1.0) * 0.05
            return lo - pad, hi + pad
        pad = 0.07 * (hi - lo)
        return lo - pad, hi + pad

    x0, x1 = span(xs)
    y0, y1 = span(ys)

    def px(x):
        return left + pw * (x - x0) / (x1 - x0)

    def py(y):
        return top + ph * (1.0 - (y - y0) / (y1 - y0))

    pts = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in zip(xs, ys))
    markers = "".join(
        f'<circle cx="{px(x):.2f}" cy="{py(y):.2f}" r="3.5" fill="#1f4e79"/>'
        for x, y in zip(xs, ys)
    )
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width / 2:.0f}" y="24" text-anchor="middle" '
        f'font-family="sans-serif" font-size="15">{title}</text>',
        f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" '
        f'fill="none" stroke="#444" stroke-width="1"/>',
        f'<polyline points="{pts}" fill="none" stroke="#1f4e79" stroke-width="1.5"/>',
        markers,
        f'<text x="{left + pw / 2:.0f}" y="{height - 12}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12">{xlabel}</text>',
        f'<text x="18" y="{top + ph / 2:.0f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12" '
        f'transform="rotate(-90 18 {top + ph / 2:.0f})">{ylabel}</text>',
        f'<text x="{left - 6}" y="{py(y0) + 4:.2f}" text-anchor="end" '
        f'font-family="sans-serif" font-size="11">{y0:.6g}</text>',
        f'<text x="{left - 6}" y="{py(y1) + 4:.2f}" text-anchor="end" '
        f'font-family="sans-serif" font-size="11">{y1:.6g}</text>',
        f'<text x="{px(x0):.2f}" y="{height - 30}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="11">{x0:.6g}</text>',
        f'<text x="{px(x1):.2f}" y="{height - 30}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="11">{x1:.6g}</text>',
        "</svg>",
    ]
    return "\n".join(parts) + "\n"


def write_svg_line_plot(path: str, xs, ys, **kwargs) -> None:
    atomic_write_text(path, svg_line_plot(xs, ys, **kwargs))
