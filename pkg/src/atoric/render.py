"""Deterministic SVG rendering of diagrams.

The output is a pure function of the diagram and the options: exact
coordinates are mapped through one fixed transform and formatted to four
decimal places (round half up), so repeated renders are byte-identical.
"""

from __future__ import annotations

from decimal import ROUND_HALF_UP, Decimal
from fractions import Fraction

from .diagram import SMOOTHED, Diagram

_STYLE = (
    ".boundary{fill:#f7f3e8;stroke:#333;stroke-width:1.5}"
    ".edge{fill:none;stroke:#333;stroke-width:1.5}"
    ".cut{stroke:#b04030;stroke-width:1;stroke-dasharray:4 3}"
    ".vertex{fill:#333}"
    ".smoothed{fill:#fff;stroke:#b04030;stroke-width:1.2}"
    ".node{stroke:#b04030;stroke-width:1.2}"
    ".label{font:italic 11px serif;fill:#222}"
)

_Q4 = Decimal("0.0001")


def _fmt(x: float) -> str:
    s = str(Decimal(repr(x)).quantize(_Q4, rounding=ROUND_HALF_UP))
    if "." in s:
        s = s.rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


def _ray_exit(base, direction, lo_x, lo_y, hi_x, hi_y) -> Fraction:
    """Largest t >= 0 keeping base + t*direction inside the window."""
    best = None
    for p, d, lo, hi in ((base[0], direction[0], lo_x, hi_x),
                         (base[1], direction[1], lo_y, hi_y)):
        if d > 0:
            t = Fraction(hi - p, d)
        elif d < 0:
            t = Fraction(lo - p, d)
        else:
            continue
        if best is None or t < best:
            best = t
    if best is None or best < 0:
        return Fraction(0)
    return best


def render_svg(d: Diagram, width: int = 480, height: int = 360,
               margin: int = 30, window=None, labels: bool = True) -> str:
    """Render a diagram to an SVG document string.

    `window` = (xmin, ymin, xmax, ymax) in diagram coordinates; it is
    required for unbounded diagrams and optional for bounded ones (the
    default bounded window is the bounding box of the geometry).
    """
    if width <= 0 or height <= 0 or margin < 0:
        raise ValueError("width and height must be positive, margin non-negative")
    if 2 * margin >= width or 2 * margin >= height:
        raise ValueError("margin leaves no drawing area")
    b = d.boundary
    if window is None:
        if not b.bounded:
            raise ValueError("window required for an unbounded diagram")
        xs = [v[0] for v in b.vertices]
        ys = [v[1] for v in b.vertices]
        for c in d.cuts:
            for p in (c.base, c.tip()):
                xs.append(p[0])
                ys.append(p[1])
        lo_x, lo_y, hi_x, hi_y = min(xs), min(ys), max(xs), max(ys)
    else:
        lo_x, lo_y, hi_x, hi_y = (Fraction(w) for w in window)
    if hi_x <= lo_x or hi_y <= lo_y:
        raise ValueError("window must have positive extent")

    span_x, span_y = hi_x - lo_x, hi_y - lo_y
    scale = min(Fraction(width - 2 * margin, 1) / span_x,
                Fraction(height - 2 * margin, 1) / span_y)
    off_x = Fraction(width, 2) - scale * (lo_x + hi_x) / 2
    off_y = Fraction(height, 2) + scale * (lo_y + hi_y) / 2

    def sx(x) -> float:
        return float(off_x + scale * x)

    def sy(y) -> float:
        return float(off_y - scale * y)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
        f"<style>{_STYLE}</style>",
    ]

    # boundary outline
    if b.bounded:
        coords = " L ".join(f"{_fmt(sx(v[0]))} {_fmt(sy(v[1]))}" for v in b.vertices)
        parts.append(f'<path id="boundary" class="boundary" d="M {coords} Z"/>')
    else:
        t_in = _ray_exit(b.vertices[0], b.ray_in, lo_x, lo_y, hi_x, hi_y)
        t_out = _ray_exit(b.vertices[-1], b.ray_out, lo_x, lo_y, hi_x, hi_y)
        p_in = (b.vertices[0][0] + t_in * b.ray_in[0],
                b.vertices[0][1] + t_in * b.ray_in[1])
        p_out = (b.vertices[-1][0] + t_out * b.ray_out[0],
                 b.vertices[-1][1] + t_out * b.ray_out[1])
        pts = [p_in, *b.vertices, p_out]
        coords = " L ".join(f"{_fmt(sx(p[0]))} {_fmt(sy(p[1]))}" for p in pts)
        parts.append(f'<path id="boundary" class="edge" d="M {coords}"/>')

    # cuts under the vertex glyphs
    for ci, c in enumerate(d.cuts):
        tip = c.tip()
        parts.append(
            f'<line id="cut-{ci}" class="cut" '
            f'x1="{_fmt(sx(c.base[0]))}" y1="{_fmt(sy(c.base[1]))}" '
            f'x2="{_fmt(sx(tip[0]))}" y2="{_fmt(sy(tip[1]))}"/>')
        for ni, p in enumerate(c.node_points()):
            x, y = sx(p[0]), sy(p[1])
            r = 3.0
            parts.append(
                f'<path id="cut-{ci}-node-{ni}" class="node" '
                f'd="M {_fmt(x - r)} {_fmt(y - r)} L {_fmt(x + r)} {_fmt(y + r)} '
                f'M {_fmt(x - r)} {_fmt(y + r)} L {_fmt(x + r)} {_fmt(y - r)}"/>')

    infos = d.classify_vertices() if labels else None
    for i, v in enumerate(b.vertices):
        x, y = sx(v[0]), sy(v[1])
        if b.marks[i] == SMOOTHED:
            parts.append(f'<circle id="vertex-{i}" class="smoothed" '
                         f'cx="{_fmt(x)}" cy="{_fmt(y)}" r="3.5"/>')
        else:
            parts.append(f'<circle id="vertex-{i}" class="vertex" '
                         f'cx="{_fmt(x)}" cy="{_fmt(y)}" r="2.5"/>')
        if infos is not None:
            e_prev, e_next = b.corner_dirs(i)
            bx = float(e_prev[0] + e_next[0])
            by = float(e_prev[1] + e_next[1])
            norm = (bx * bx + by * by) ** 0.5
            if norm == 0:
                ux, uy = 0.0, 1.0
            else:
                ux, uy = bx / norm, by / norm
            lx, ly = x + 10 * ux, y - 10 * uy
            parts.append(f'<text id="label-{i}" class="label" '
                         f'x="{_fmt(lx)}" y="{_fmt(ly)}">{infos[i].label}</text>')

    parts.append("</svg>")
    return "\n".join(parts)
