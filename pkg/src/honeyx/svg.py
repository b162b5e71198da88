"""Tiny deterministic SVG line charts for sweep output.

Hand-rolled on purpose: byte-identical output for identical data is part of
the reproducibility contract, so no plotting library is involved. Charts
are mean lines with optional +/- one-standard-deviation bands.
"""

import math

_W, _H = 640, 420
_ML, _MR, _MT, _MB = 64, 16, 36, 48
_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b")


def _nice_step(span, target=5):
    if span <= 0:
        return 1.0
    raw = span / target
    mag = 10.0 ** math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 5.0, 10.0):
        if raw <= mult * mag:
            return mult * mag
    return 10.0 * mag


def _ticks(lo, hi):
    step = _nice_step(hi - lo)
    first = math.ceil(lo / step) * step
    ticks = []
    t = first
    while t <= hi + 1e-9 * max(1.0, abs(hi)):
        ticks.append(0.0 if abs(t) < 1e-12 else t)
        t += step
    return ticks


def _fmt_num(v):
    if v == int(v) and abs(v) < 1e6:
        return str(int(v))
    return format(v, ".4g")


def line_chart(series, title="", xlabel="", ylabel="", logx=False, logy=False):
    """SVG text for a chart of the given series.

    Each series is a dict with keys label, xs, ys and optionally stds; the
    log flags plot base-10 logarithms with power-of-ten tick labels.
    """
    def tx(v):
        return math.log10(v) if logx else v

    def ty(v):
        return math.log10(v) if logy else v

    pts = []
    for s in series:
        for x, y, sd in zip(s["xs"], s["ys"],
                            s.get("stds") or [0.0] * len(s["xs"])):
            pts.append((tx(x), ty(y - sd if not logy else y),
                        ty(y + sd if not logy else y)))
    if not pts:
        pts = [(0.0, 0.0, 0.0), (1.0, 1.0, 1.0)]  # empty chart, sane frame
    xs = [p[0] for p in pts]
    ylo = [p[1] for p in pts]
    yhi = [p[2] for p in pts]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ylo), max(yhi)
    if x1 - x0 < 1e-12:
        x0, x1 = x0 - 1.0, x1 + 1.0
    if y1 - y0 < 1e-12:
        y0, y1 = y0 - 1.0, y1 + 1.0
    pad = 0.05 * (y1 - y0)
    y0, y1 = y0 - pad, y1 + pad

    pw = _W - _ML - _MR
    ph = _H - _MT - _MB

    def px(v):
        return _ML + (v - x0) / (x1 - x0) * pw

    def py(v):
        return _MT + (y1 - v) / (y1 - y0) * ph

    def c(v):
        return format(v, ".2f")

    out = []
    out.append(f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" '
               f'height="{_H}" viewBox="0 0 {_W} {_H}">')
    out.append(f'<rect width="{_W}" height="{_H}" fill="white"/>')
    if title:
        out.append(f'<text x="{_W // 2}" y="22" text-anchor="middle" '
                   f'font-family="sans-serif" font-size="15">{title}</text>')

    if logx:
        xticks = [t for t in range(math.ceil(x0 - 1e-9),
                                   math.floor(x1 + 1e-9) + 1)]
    else:
        xticks = _ticks(x0, x1)
    if logy:
        yticks = [t for t in range(math.ceil(y0 - 1e-9),
                                   math.floor(y1 + 1e-9) + 1)]
    else:
        yticks = _ticks(y0, y1)

    for t in xticks:
        X = px(t)
        out.append(f'<line x1="{c(X)}" y1="{_MT}" x2="{c(X)}" '
                   f'y2="{_MT + ph}" stroke="#dddddd" stroke-width="1"/>')
        label = f"1e{int(t)}" if logx else _fmt_num(t)
        out.append(f'<text x="{c(X)}" y="{_MT + ph + 18}" '
                   f'text-anchor="middle" font-family="sans-serif" '
                   f'font-size="11">{label}</text>')
    for t in yticks:
        Y = py(t)
        out.append(f'<line x1="{_ML}" y1="{c(Y)}" x2="{_ML + pw}" '
                   f'y2="{c(Y)}" stroke="#dddddd" stroke-width="1"/>')
        label = f"1e{int(t)}" if logy else _fmt_num(t)
        out.append(f'<text x="{_ML - 6}" y="{c(Y + 4)}" text-anchor="end" '
                   f'font-family="sans-serif" font-size="11">{label}</text>')

    out.append(f'<rect x="{_ML}" y="{_MT}" width="{pw}" height="{ph}" '
               f'fill="none" stroke="#333333"/>')
    if xlabel:
        out.append(f'<text x="{_ML + pw // 2}" y="{_H - 10}" '
                   f'text-anchor="middle" font-family="sans-serif" '
                   f'font-size="12">{xlabel}</text>')
    if ylabel:
        out.append(f'<text x="16" y="{_MT + ph // 2}" text-anchor="middle" '
                   f'font-family="sans-serif" font-size="12" '
                   f'transform="rotate(-90 16 {_MT + ph // 2})">{ylabel}'
                   f'</text>')

    for si, s in enumerate(series):
        color = _PALETTE[si % len(_PALETTE)]
        sxs = [tx(v) for v in s["xs"]]
        sys_ = [ty(v) for v in s["ys"]]
        stds = s.get("stds")
        if stds and not logy and any(sd > 0 for sd in stds):
            upper = [(x, y + sd) for x, y, sd in zip(sxs, sys_, stds)]
            lower = [(x, y - sd) for x, y, sd in zip(sxs, sys_, stds)]
            ring = upper + lower[::-1]
            path = " ".join(f"{c(px(x))},{c(py(y))}" for x, y in ring)
            out.append(f'<polygon points="{path}" fill="{color}" '
                       f'fill-opacity="0.15" stroke="none"/>')
        path = " ".join(f"{c(px(x))},{c(py(y))}" for x, y in zip(sxs, sys_))
        out.append(f'<polyline points="{path}" fill="none" '
                   f'stroke="{color}" stroke-width="2"/>')
        for x, y in zip(sxs, sys_):
            out.append(f'<circle cx="{c(px(x))}" cy="{c(py(y))}" r="3" '
                       f'fill="{color}"/>')
        ly = _MT + 16 + 16 * si
        out.append(f'<line x1="{_ML + pw - 120}" y1="{ly}" '
                   f'x2="{_ML + pw - 96}" y2="{ly}" stroke="{color}" '
                   f'stroke-width="2"/>')
        out.append(f'<text x="{_ML + pw - 90}" y="{ly + 4}" '
                   f'font-family="sans-serif" font-size="11">'
                   f'{s["label"]}</text>')

    out.append("</svg>")
    return "\n".join(out) + "\n"
