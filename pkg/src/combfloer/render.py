"""Static SVG pictures of a curve pair, optionally with its lunes shaded."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional

from .geometry import Pt, interior_point
from .surfaces import CurvePair, Surface

SIZE = 480
PAD = 24


def _num(q) -> str:
    s = f"{float(q):.3f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


class _View:
    def __init__(self, x0, y0, x1, y1):
        self.x0, self.y0 = Fraction(x0), Fraction(y0)
        w, h = Fraction(x1) - self.x0, Fraction(y1) - self.y0
        self.scale = Fraction(SIZE - 2 * PAD) / max(w, h)
        self.w = w * self.scale + 2 * PAD
        self.h = h * self.scale + 2 * PAD

    def xy(self, p: Pt) -> str:
        # svg y grows downwards
        x = (p.x - self.x0) * self.scale + PAD
        y = self.h - ((p.y - self.y0) * self.scale + PAD)
        return f"{_num(x)},{_num(y)}"


def _view(pair: CurvePair) -> _View:
    if pair.surface is Surface.TORUS:
        return _View(0, 0, 1, 1)
    xs, ys = [], []
    for c in (pair.alpha, pair.beta):
        x0, y0, x1, y1 = c.bbox()
        xs += [x0, x1]
        ys += [y0, y1]
    lo_x, hi_x, lo_y, hi_y = min(xs), max(xs), min(ys), max(ys)
    if pair.surface is Surface.ANNULUS:
        lo_x, hi_x = Fraction(0), Fraction(1)
    m = max(hi_x - lo_x, hi_y - lo_y) / 10
    return _View(lo_x - m, lo_y - m, hi_x + m, hi_y + m)


def _copies(pair: CurvePair, view: _View) -> list:
    if pair.surface is Surface.TORUS:
        return [Pt(i, j) for i in range(-2, 3) for j in range(-2, 3)]
    if pair.surface is Surface.ANNULUS:
        return [Pt(i, 0) for i in range(-2, 3)]
    return [Pt(0, 0)]


def _polyline(curve, shift: Pt, view: _View) -> str:
    pts = [curve.vertex(k) + shift for k in range(curve.n + 1)]
    return " ".join(view.xy(p) for p in pts)


def render_svg(pair: CurvePair, lunes: Optional[dict] = None) -> str:
    view = _view(pair)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_num(view.w)}" '
        f'height="{_num(view.h)}" viewBox="0 0 {_num(view.w)} {_num(view.h)}">',
        '<defs><clipPath id="dom"><rect x="0" y="0" '
        f'width="{_num(view.w)}" height="{_num(view.h)}"/></clipPath></defs>',
        f'<rect x="0" y="0" width="{_num(view.w)}" height="{_num(view.h)}" fill="white"/>',
    ]
    if pair.surface in (Surface.TORUS, Surface.ANNULUS):
        lo = view.xy(Pt(view.x0 if pair.surface is Surface.ANNULUS else 0, 0))
        corner = view.xy(Pt(1, 1)) if pair.surface is Surface.TORUS else None
        if corner:
            (x0, y1), (x1, y0) = lo.split(","), corner.split(",")
            out.append(f'<rect x="{x0}" y="{y0}" width="{_num(Fraction(x1) - Fraction(x0))}" '
                       f'height="{_num(Fraction(y1) - Fraction(y0))}" fill="none" stroke="#999" '
                       'stroke-dasharray="4 3"/>')
        else:
            for xv in (0, 1):
                a, b = view.xy(Pt(xv, view.y0)), view.xy(Pt(xv, view.y0 + (view.h - 2 * PAD) / view.scale))
                out.append(f'<line x1="{a.split(",")[0]}" y1="{a.split(",")[1]}" '
                           f'x2="{b.split(",")[0]}" y2="{b.split(",")[1]}" stroke="#999" '
                           'stroke-dasharray="4 3"/>')
    out.append('<g clip-path="url(#dom)">')
    if lunes:
        for (x, y), ls in sorted(lunes.items()):
            for i, lu in enumerate(ls):
                tr = lu.trace
                g = Pt(math.floor(tr.lift_x.x), math.floor(tr.lift_x.y)) if pair.surface is Surface.TORUS \
                    else Pt(math.floor(tr.lift_x.x), 0) if pair.surface is Surface.ANNULUS else Pt(0, 0)
                tr = tr.translated(-g)
                arr, vals = tr.arrangement, tr.values
                out.append(f'<g class="lune" data-from="{x}" data-to="{y}" data-index="{i}">')
                for f in arr.faces:
                    w = vals.get(f.id, 0)
                    if not f.bounded or w == 0:
                        continue
                    d = " ".join("M " + " L ".join(view.xy(p) for p in arr.cycle_points(c)) + " Z"
                                 for c in f.cycles)
                    op = _num(min(Fraction(1, 4) * abs(w), Fraction(3, 4)))
                    out.append(f'<path d="{d}" fill="#f0c040" fill-opacity="{op}" '
                               'fill-rule="evenodd" stroke="none"/>')
                    lp = view.xy(interior_point(arr, f)).split(",")
                    out.append(f'<text x="{lp[0]}" y="{lp[1]}" font-size="11" '
                               f'text-anchor="middle" fill="#704000">w={w}</text>')
                out.append("</g>")
    for name, colour in (("alpha", "#1f4fd0"), ("beta", "#d02020")):
        curve = pair.curve(name)
        for s in _copies(pair, view):
            out.append(f'<polyline class="{name}" points="{_polyline(curve, s, view)}" '
                       f'fill="none" stroke="{colour}" stroke-width="2"/>')
    out.append("</g>")
    for p in pair.points:
        x, y = view.xy(p.pos).split(",")
        sgn = "+" if p.eps > 0 else "-"
        out.append(f'<circle cx="{x}" cy="{y}" r="3.5" fill="black"/>')
        out.append(f'<text x="{x}" y="{y}" dx="5" dy="-6" font-size="12">x{p.id}{sgn}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
