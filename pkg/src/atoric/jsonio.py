"""JSON (de)serialization for diagrams, moves, and classification data.

Rationals travel as strings ("25/11", "3"); integer vectors as two-element
lists.  Every move a diagram records in its log is itself a valid input to
`apply_move`, so `replay(log)` rebuilds any diagram that started from a
template.
"""

from __future__ import annotations

from fractions import Fraction

from . import diagram as dg
from . import sequences as sq
from .cqs import MilnorInvariants, TData
from .diagram import Boundary, Cut, Diagram


def frac_str(x) -> str:
    return str(Fraction(x))


def parse_frac(s) -> Fraction:
    if isinstance(s, bool) or isinstance(s, float):
        raise ValueError(f"not an exact rational: {s!r}")
    return Fraction(s)


def _point_json(p):
    return [frac_str(p[0]), frac_str(p[1])]


def _parse_point(obj):
    if not (isinstance(obj, (list, tuple)) and len(obj) == 2):
        raise ValueError(f"not a point: {obj!r}")
    return (parse_frac(obj[0]), parse_frac(obj[1]))


def _parse_vec(obj):
    if (not isinstance(obj, (list, tuple)) or len(obj) != 2
            or not all(isinstance(c, int) and not isinstance(c, bool) for c in obj)):
        raise ValueError(f"not an integer vector: {obj!r}")
    return (obj[0], obj[1])


def cut_to_json(c: Cut) -> dict:
    return {"base": _point_json(c.base), "direction": list(c.direction),
            "nodes": [frac_str(t) for t in c.nodes]}


def cut_from_json(obj: dict) -> Cut:
    return Cut(_parse_point(obj["base"]), _parse_vec(obj["direction"]),
               tuple(parse_frac(t) for t in obj["nodes"]))


def diagram_to_json(d: Diagram) -> dict:
    b = d.boundary
    out = {
        "boundary": {
            "vertices": [_point_json(v) for v in b.vertices],
            "marks": list(b.marks),
            "ray_in": list(b.ray_in) if b.ray_in else None,
            "ray_out": list(b.ray_out) if b.ray_out else None,
        },
        "cuts": [cut_to_json(c) for c in d.cuts],
        "log": [dict(e) for e in d.log],
    }
    return out


def diagram_from_json(obj: dict) -> Diagram:
    bo = obj["boundary"]
    b = Boundary(
        tuple(_parse_point(v) for v in bo["vertices"]),
        tuple(bo["marks"]),
        ray_in=_parse_vec(bo["ray_in"]) if bo.get("ray_in") else None,
        ray_out=_parse_vec(bo["ray_out"]) if bo.get("ray_out") else None,
    )
    cuts = tuple(cut_from_json(c) for c in obj.get("cuts", []))
    log = tuple(dict(e) for e in obj.get("log", []))
    return Diagram(b, cuts, log)


def t_to_json(t: TData | None):
    return None if t is None else {"d": t.d, "p": t.p, "q": t.q}


def milnor_to_json(m: MilnorInvariants) -> dict:
    return {"t": t_to_json(m.t), "lens": list(m.lens), "h1_order": m.h1_order,
            "h2_rank": m.h2_rank, "rational_ball": m.rational_ball}


def vertex_info_to_json(vi: dg.VertexInfo) -> dict:
    return {"index": vi.index, "point": _point_json(vi.point), "mark": vi.mark,
            "type": list(vi.type) if vi.type else None,
            "t": t_to_json(vi.t), "label": vi.label}


# -- moves ------------------------------------------------------------------------


def template_diagram(spec: dict) -> Diagram:
    """Build a diagram from a template spec: wedge or pi-minus."""
    kind = spec.get("kind")
    if kind == "wedge":
        return dg.wedge_diagram(int(spec["n"]), int(spec["a"]))
    if kind == "pi-minus":
        return sq.pi_minus(
            int(spec.get("n", 11)), int(spec.get("a", 3)),
            parse_frac(spec.get("c_len", 1)),
            parse_frac(spec["height"]) if spec.get("height") is not None else None,
        )
    raise ValueError(f"unknown template kind: {kind!r}")


def apply_move(d: Diagram, move: dict) -> Diagram:
    """Apply one move dict (same shape as a diagram log entry)."""
    if not isinstance(move, dict):
        raise ValueError("move must be an object")
    kind = move.get("move")
    if kind == "truncate":
        where = move["where"]
        if where != "end":
            where = int(where)
        return dg.truncate(d, where, _parse_vec(move["direction"]),
                           parse_frac(move["depth"]))
    if kind == "smooth":
        length = move.get("length")
        return dg.smooth_vertex(d, int(move["vertex"]),
                                parse_frac(length) if length is not None else None)
    if kind == "trade":
        length = move.get("length")
        return dg.nodal_trade(d, int(move["vertex"]),
                              parse_frac(length) if length is not None else None)
    if kind == "slide":
        return dg.nodal_slide(d, int(move["cut"]),
                              [parse_frac(t) for t in move["nodes"]])
    if kind == "translate":
        return dg.translate_cut(d, int(move["cut"]), _parse_point(move["base"]))
    if kind == "mutate":
        return dg.mutate(d, int(move["cut"]))
    if kind == "mutate_inverse":
        return dg.mutate_inverse(d, int(move["cut"]))
    raise ValueError(f"unknown move: {kind!r}")


def replay(log) -> Diagram:
    """Rebuild a diagram from a log that starts with a template entry."""
    if not log or log[0].get("move") != "template":
        raise ValueError("log must start with a template entry")
    d = template_diagram(log[0])
    for entry in log[1:]:
        d = apply_move(d, entry)
    return d
