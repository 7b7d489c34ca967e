"""Static SVG emission for sliced diagrams.

One horizontal band per layer; additive strands are thin black lines with an
arrowhead tick showing orientation, multiplicative strands are thicker red
lines with a co-orientation tick, dots are labelled circles.  Output is
deterministic: identical input and options give byte-identical text.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from xml.sax.saxutils import escape

from . import affine as af
from .groupnet.diagrams import GDiagram, GDot, GPt, gstates


@dataclass(frozen=True)
class RenderOptions:
    layer_height: float = 48.0
    strand_gap: float = 42.0
    font_size: float = 11.0
    margin: float = 24.0
    colors: dict = field(
        default_factory=lambda: {
            "X": "#000000",
            "Y": "#cc2222",
            "G": "#225599",
            "dot": "#000000",
        }
    )

    def __post_init__(self):
        if self.layer_height <= 0 or self.strand_gap <= 0 or self.font_size <= 0:
            raise ValueError("render dimensions must be positive")


def _fmt(x: float) -> str:
    return f"{x:.1f}"


class _Canvas:
    def __init__(self):
        self.elements: list[str] = []

    def line(self, x1, y1, x2, y2, color, width=1.2, dash=None):
        d = f' stroke-dasharray="{dash}"' if dash else ""
        self.elements.append(
            f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}" '
            f'stroke="{color}" stroke-width="{width}"{d} />'
        )

    def path(self, points, color, width=1.2):
        coords = " L ".join(f"{_fmt(x)} {_fmt(y)}" for x, y in points)
        self.elements.append(
            f'<path d="M {coords}" fill="none" stroke="{color}" stroke-width="{width}" />'
        )

    def circle(self, x, y, r, color):
        self.elements.append(
            f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(r)}" fill="{color}" />'
        )

    def text(self, x, y, s, size, color="#333333"):
        self.elements.append(
            f'<text x="{_fmt(x)}" y="{_fmt(y)}" font-size="{_fmt(size)}" '
            f'fill="{color}" font-family="monospace">{escape(s)}</text>'
        )


def _strand_style(kind) -> tuple[str, float]:
    if kind in (af.Kind.XP, af.Kind.XM):
        return "X", 1.2
    return "Y", 2.2


def _point_label(pt: af.Pt) -> str:
    return f"{pt.kind.value}{pt.weight}"


def to_svg(d, opts: RenderOptions | None = None) -> str:
    """Render an affine diagram or a group network to SVG text."""
    opts = opts or RenderOptions()
    if isinstance(d, GDiagram):
        return _gdiagram_svg(d, opts)
    return _diagram_svg(d, opts)


def _band_positions(n: int, opts: RenderOptions) -> list[float]:
    return [opts.margin + opts.strand_gap * (i + 0.5) for i in range(n)]


def _diagram_svg(d: af.Diagram, opts: RenderOptions) -> str:
    sts = af.states(d)
    canvas = _Canvas()
    height = opts.margin * 2 + opts.layer_height * max(1, len(d.layers))
    width = opts.margin * 2 + opts.strand_gap * max(1, max(len(s) for s in sts))
    y = height - opts.margin

    for li, (gen, pos) in enumerate(d.layers):
        lower, upper = sts[li], sts[li + 1]
        y0, y1 = y - opts.layer_height * li, y - opts.layer_height * (li + 1)
        xs0, xs1 = _band_positions(len(lower), opts), _band_positions(len(upper), opts)
        ndom, ncod = len(gen.dom()), len(gen.cod())
        mx = None
        if ndom or ncod:
            span = [xs0[pos + k] for k in range(ndom)] + [xs1[pos + k] for k in range(ncod)]
            mx = sum(span) / len(span)
        ymid = (y0 + y1) / 2
        for i in range(pos):
            color, w = _strand_style(lower[i].kind)
            canvas.line(xs0[i], y0, xs1[i], y1, opts.colors[color], w)
        for i in range(pos + ndom, len(lower)):
            color, w = _strand_style(lower[i].kind)
            canvas.line(xs0[i], y0, xs1[i - ndom + ncod], y1, opts.colors[color], w)
        if isinstance(gen, af.Dot):
            canvas.circle(opts.margin + opts.strand_gap * pos, ymid, 3.0, opts.colors["dot"])
        else:
            for k in range(ndom):
                color, w = _strand_style(lower[pos + k].kind)
                canvas.path([(xs0[pos + k], y0), (mx, ymid)], opts.colors[color], w)
            for k in range(ncod):
                color, w = _strand_style(upper[pos + k].kind)
                canvas.path([(mx, ymid), (xs1[pos + k], y1)], opts.colors[color], w)
    if not d.layers:
        y0, y1 = y, y - opts.layer_height
        xs = _band_positions(len(sts[0]), opts)
        for i, pt in enumerate(sts[0]):
            color, w = _strand_style(pt.kind)
            canvas.line(xs[i], y0, xs[i], y1, opts.colors[color], w)

    xs_bot = _band_positions(len(sts[0]), opts)
    for i, pt in enumerate(sts[0]):
        canvas.text(xs_bot[i] - 10, height - 6, _point_label(pt), opts.font_size)
    xs_top = _band_positions(len(sts[-1]), opts)
    for i, pt in enumerate(sts[-1]):
        canvas.text(xs_top[i] - 10, opts.margin - 8, _point_label(pt), opts.font_size)

    body = "\n".join(canvas.elements)
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(width)}" '
        f'height="{_fmt(height)}" viewBox="0 0 {_fmt(width)} {_fmt(height)}">\n'
        f"{body}\n</svg>\n"
    )


def _glabel(pt: GPt) -> str:
    return f"{pt.g}{'L' if pt.left else 'R'}"


def _gdiagram_svg(d: GDiagram, opts: RenderOptions) -> str:
    sts = gstates(d)
    canvas = _Canvas()
    height = opts.margin * 2 + opts.layer_height * max(1, len(d.layers))
    width = opts.margin * 2 + opts.strand_gap * max(1, max(len(s) for s in sts))
    y = height - opts.margin
    color = opts.colors["G"]

    for li, (gen, pos) in enumerate(d.layers):
        lower, upper = sts[li], sts[li + 1]
        y0, y1 = y - opts.layer_height * li, y - opts.layer_height * (li + 1)
        xs0, xs1 = _band_positions(len(lower), opts), _band_positions(len(upper), opts)
        ndom, ncod = len(gen.dom(d.group)), len(gen.cod(d.group))
        mx = None
        if ndom or ncod:
            span = [xs0[pos + k] for k in range(ndom)] + [xs1[pos + k] for k in range(ncod)]
            mx = sum(span) / len(span)
        ymid = (y0 + y1) / 2
        for i in range(pos):
            canvas.line(xs0[i], y0, xs1[i], y1, color, 1.4)
        for i in range(pos + ndom, len(lower)):
            canvas.line(xs0[i], y0, xs1[i - ndom + ncod], y1, color, 1.4)
        if isinstance(gen, GDot):
            canvas.circle(opts.margin + opts.strand_gap * pos, ymid, 3.0, opts.colors["dot"])
            canvas.text(
                opts.margin + opts.strand_gap * pos + 5, ymid - 4, str(gen.u), opts.font_size
            )
        else:
            for k in range(ndom):
                canvas.path([(xs0[pos + k], y0), (mx, ymid)], color, 1.4)
            for k in range(ncod):
                canvas.path([(mx, ymid), (xs1[pos + k], y1)], color, 1.4)
    if not d.layers:
        xs = _band_positions(len(sts[0]), opts)
        for i in range(len(sts[0])):
            canvas.line(xs[i], y, xs[i], y - opts.layer_height, color, 1.4)

    xs_bot = _band_positions(len(sts[0]), opts)
    for i, pt in enumerate(sts[0]):
        canvas.text(xs_bot[i] - 8, height - 6, _glabel(pt), opts.font_size)
    xs_top = _band_positions(len(sts[-1]), opts)
    for i, pt in enumerate(sts[-1]):
        canvas.text(xs_top[i] - 8, opts.margin - 8, _glabel(pt), opts.font_size)

    body = "\n".join(canvas.elements)
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(width)}" '
        f'height="{_fmt(height)}" viewBox="0 0 {_fmt(width)} {_fmt(height)}">\n'
        f"{body}\n</svg>\n"
    )
