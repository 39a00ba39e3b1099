"""Static SVG rendering of a Nochka diagram.

Output depends only on the diagram: fixed scale, fixed element order, integer
pixel coordinates (every anchor sits on a half-lattice point and one lattice
step is an even number of pixels), so identical input gives identical bytes.
"""

from __future__ import annotations

from fractions import Fraction

from .diagram import NochkaDiagram

UNIT = 60
MARGIN = 40


def _px(value) -> int:
    v = Fraction(value) * UNIT
    if v.denominator != 1:
        raise ValueError(f"coordinate {value} is off the half-lattice")
    return int(v)


def render_svg(d: NochkaDiagram) -> str:
    arr = d.arrangement
    n, k = arr.n, arr.k
    X = d.X
    xmax = max([X[0]] + [p.x for p in d.points])
    ymax = k + 1
    width = 2 * MARGIN + UNIT * xmax
    height = 2 * MARGIN + UNIT * ymax

    def sx(x):
        return MARGIN + _px(x)

    def sy(y):
        return MARGIN + _px(ymax) - _px(y)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">',
        f"<title>Nochka diagram, k={k}, n={n}, q={arr.q}</title>",
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        '<g stroke="#e4e4e4" stroke-width="1">',
    ]
    for x in range(xmax + 1):
        out.append(f'<line x1="{sx(x)}" y1="{sy(0)}" x2="{sx(x)}" y2="{sy(ymax)}"/>')
    for y in range(ymax + 1):
        out.append(f'<line x1="{sx(0)}" y1="{sy(y)}" x2="{sx(xmax)}" y2="{sy(y)}"/>')
    out.append("</g>")

    out.append('<g stroke="black" stroke-width="2">')
    out.append(f'<line x1="{sx(0)}" y1="{sy(0)}" x2="{sx(xmax)}" y2="{sy(0)}"/>')
    out.append(f'<line x1="{sx(0)}" y1="{sy(0)}" x2="{sx(0)}" y2="{sy(ymax)}"/>')
    out.append("</g>")
    out.append('<g fill="#444" text-anchor="middle">')
    for x in range(xmax + 1):
        out.append(f'<text x="{sx(x)}" y="{sy(0) + 16}">{x}</text>')
    for y in range(ymax + 1):
        out.append(f'<text x="{sx(0) - 12}" y="{sy(y) + 4}">{y}</text>')
    out.append(f'<text x="{sx(xmax) + 20}" y="{sy(0) + 4}">α</text>')
    out.append(f'<text x="{sx(0)}" y="{sy(ymax) - 14}">codim</text>')
    out.append("</g>")

    # ell: y = x - (n - k), from the x-axis up to the top row
    ex0, ex1 = n - k, n + 1
    out.append(
        f'<line class="ell" x1="{sx(ex0)}" y1="{sy(0)}" x2="{sx(ex1)}" y2="{sy(ymax)}" '
        'stroke="#2a7ab0" stroke-width="2"/>'
    )
    out.append(f'<text x="{sx(ex1) + 6}" y="{sy(ymax) + 4}" fill="#2a7ab0">ℓ</text>')
    out.append(
        f'<line class="OX" x1="{sx(0)}" y1="{sy(0)}" x2="{sx(X[0])}" y2="{sy(X[1])}" '
        'stroke="#888" stroke-width="2" stroke-dasharray="6 4"/>'
    )

    hull_pts = " ".join(f"{sx(x)},{sy(y)}" for x, y in d.hull)
    out.append(
        f'<polyline class="hull" points="{hull_pts}" fill="none" stroke="#c0392b" stroke-width="3"/>'
    )
    for (x0, y0), (x1, y1), s in zip(d.hull, d.hull[1:], d.slopes):
        mx, my = Fraction(x0 + x1, 2), Fraction(y0 + y1, 2)
        out.append(
            f'<text class="slope" x="{sx(mx) + 8}" y="{sy(my) + 16}" fill="#c0392b">{s}</text>'
        )

    hull_set = set(d.hull)
    for p in d.points:
        r, fill = (5, "#c0392b") if p.xy in hull_set else (4, "black")
        out.append(
            f'<circle class="point" cx="{sx(p.x)}" cy="{sy(p.y)}" r="{r}" fill="{fill}">'
            f"<title>P(L) = ({p.x}, {p.y}), {len(p.witnesses)} flat(s)</title></circle>"
        )

    wx, wy = d.W
    out.append(f'<circle cx="{sx(wx)}" cy="{sy(wy)}" r="4" fill="white" stroke="#2a7ab0" stroke-width="2"/>')
    out.append(f'<text x="{sx(wx) - 8}" y="{sy(wy) - 8}" fill="#2a7ab0" text-anchor="end">W</text>')
    out.append(f'<circle cx="{sx(X[0])}" cy="{sy(X[1])}" r="5" fill="#c0392b"/>')
    out.append(f'<text x="{sx(X[0]) + 8}" y="{sy(X[1]) - 8}">X</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
