"""Almost toric diagrams: marked regions with branch cuts, and their moves.

A diagram is a region in the plane (a bounded polygon, or a convex
unbounded region with two boundary rays), a mark on every vertex
("true" = honest toric corner, "smoothed" = corner replaced by nodal
fibres), and a set of cuts.  A cut is a dashed segment from a boundary
base point into the interior, carrying d nodes at prescribed parameters
along its primitive direction.

The boundary is stored counterclockwise (interior on the left).  For an
unbounded region, traversal arrives from infinity along -ray_in into
vertices[0] and leaves vertices[-1] along ray_out.

Moves (truncate, smooth_vertex, nodal_trade, nodal_slide, translate_cut,
mutate) are pure: each returns a new diagram with a log entry appended.
Every constructed diagram is re-validated from scratch, so a move that
would break an invariant raises instead of producing a bad state.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .cqs import TData, fibre_label, normalize_corner, t_classify, type_label
from .lattice import (Mat, Point, Vec, cross_pp, det2, mat_pow, mat_vec,
                      mat_vec_pt, point_on_segment, primitive, primitive_dir,
                      seg_intersect_params)

TRUE = "true"
SMOOTHED = "smoothed"


class MutationBlocked(ValueError):
    """The cut line cannot separate the region cleanly."""

    code = "mutation_blocked"


def monodromy(w: Vec) -> Mat:
    """Monodromy of a node with vanishing class w = (p, q), primitive.

    M(w) = I + w (x) (q, -p); it fixes w, has trace 2, and (M - I)^2 = 0.
    """
    v, g = primitive(w)
    if g != 1:
        raise ValueError("monodromy direction must be primitive")
    p, q = v
    return ((1 + p * q, -p * p), (q * q, 1 - p * q))


def _frac_pt(p) -> Point:
    return (Fraction(p[0]), Fraction(p[1]))


@dataclass(frozen=True)
class Cut:
    """A branch cut: base on the boundary, primitive direction, node params."""

    base: Point
    direction: Vec
    nodes: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "base", _frac_pt(self.base))
        object.__setattr__(self, "direction", tuple(self.direction))
        object.__setattr__(self, "nodes", tuple(Fraction(t) for t in self.nodes))
        v, g = primitive(self.direction)
        if g != 1:
            raise ValueError("cut direction must be primitive")
        if not self.nodes:
            raise ValueError("a cut must carry at least one node")
        if any(t <= 0 for t in self.nodes):
            raise ValueError("node parameters must be positive")
        if any(s >= t for s, t in zip(self.nodes, self.nodes[1:])):
            raise ValueError("node parameters must be strictly increasing")

    @property
    def d(self) -> int:
        return len(self.nodes)

    def node_points(self) -> list[Point]:
        return [(self.base[0] + t * self.direction[0],
                 self.base[1] + t * self.direction[1]) for t in self.nodes]

    def tip(self) -> Point:
        t = self.nodes[-1]
        return (self.base[0] + t * self.direction[0],
                self.base[1] + t * self.direction[1])


@dataclass(frozen=True)
class Boundary:
    vertices: tuple[Point, ...]
    marks: tuple[str, ...]
    ray_in: Optional[Vec] = None
    ray_out: Optional[Vec] = None

    def __post_init__(self):
        verts = tuple(_frac_pt(v) for v in self.vertices)
        marks = tuple(self.marks)
        if len(verts) != len(marks):
            raise ValueError("marks must align with vertices")
        if any(m not in (TRUE, SMOOTHED) for m in marks):
            raise ValueError("marks must be 'true' or 'smoothed'")
        if (self.ray_in is None) != (self.ray_out is None):
            raise ValueError("unbounded boundaries need both rays")
        if self.ray_in is not None:
            object.__setattr__(self, "ray_in", tuple(self.ray_in))
            object.__setattr__(self, "ray_out", tuple(self.ray_out))
            if primitive(self.ray_in)[1] != 1 or primitive(self.ray_out)[1] != 1:
                raise ValueError("boundary rays must be primitive")
            if len(verts) < 1:
                raise ValueError("an unbounded boundary needs at least one vertex")
        else:
            if len(verts) < 3:
                raise ValueError("a bounded boundary needs at least three vertices")
            # canonical rotation: lexicographically smallest vertex first
            k = min(range(len(verts)), key=lambda i: verts[i])
            verts = verts[k:] + verts[:k]
            marks = marks[k:] + marks[:k]
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "marks", marks)
        self._validate_shape()

    # -- shape ---------------------------------------------------------------

    @property
    def bounded(self) -> bool:
        return self.ray_in is None

    def _walk_dirs(self) -> list[Vec]:
        """Primitive travel directions along the boundary, in ccw order."""
        dirs: list[Vec] = []
        if not self.bounded:
            dirs.append(primitive((-self.ray_in[0], -self.ray_in[1]))[0])
        n = len(self.vertices)
        last = n if self.bounded else n - 1
        for i in range(last):
            j = (i + 1) % n
            dirs.append(primitive_dir((self.vertices[j][0] - self.vertices[i][0],
                                       self.vertices[j][1] - self.vertices[i][1])))
        if not self.bounded:
            dirs.append(primitive(self.ray_out)[0])
        return dirs

    def _validate_shape(self):
        n = len(self.vertices)
        for i in range(n):
            j = (i + 1) % n
            if (self.bounded or j > i) and self.vertices[i] == self.vertices[j] and n > 1:
                raise ValueError("boundary vertices must be distinct")
        dirs = self._walk_dirs()
        # no flat vertices: consecutive travel directions must turn
        for a, b in zip(dirs, dirs[1:]):
            if det2(a, b) == 0:
                raise ValueError("boundary has a flat or reversing vertex")
        if self.bounded:
            area2 = sum(cross_pp((Fraction(0), Fraction(0)), self.vertices[i],
                                 self.vertices[(i + 1) % n]) for i in range(n))
            if area2 <= 0:
                raise ValueError("boundary must be counterclockwise")
        else:
            # unbounded regions must be convex: every turn to the left
            for a, b in zip(dirs, dirs[1:]):
                if det2(a, b) <= 0:
                    raise ValueError("unbounded boundary must be convex")
            if det2(self.ray_in, self.ray_out) >= 0:
                raise ValueError("boundary rays must open counterclockwise")
        self._check_simple()

    def pieces(self):
        """Boundary pieces: ("seg", a, b) segments and ("ray", origin, dir)."""
        out = []
        n = len(self.vertices)
        if not self.bounded:
            out.append(("ray", self.vertices[0], self.ray_in))
        last = n if self.bounded else n - 1
        for i in range(last):
            out.append(("seg", self.vertices[i], self.vertices[(i + 1) % n]))
        if not self.bounded:
            out.append(("ray", self.vertices[-1], self.ray_out))
        return out

    def _check_simple(self):
        ps = self.pieces()
        for i in range(len(ps)):
            for j in range(i + 1, len(ps)):
                shared = self._piece_meet(ps[i], ps[j])
                adjacent = (j == i + 1) or (self.bounded and i == 0 and j == len(ps) - 1)
                if adjacent:
                    continue  # flat-vertex check already constrains the joint
                if shared:
                    raise ValueError("boundary is not simple")

    @staticmethod
    def _piece_points(piece, tmax=None):
        kind, a, b = piece
        if kind == "seg":
            return a, b
        t = tmax if tmax is not None else 1
        return a, (a[0] + t * b[0], a[1] + t * b[1])

    @staticmethod
    def _piece_meet(p1, p2) -> bool:
        """Do two boundary pieces share any point?  Rays handled exactly."""
        k1, a1, b1 = p1
        k2, a2, b2 = p2
        d1 = (b1[0] - a1[0], b1[1] - a1[1]) if k1 == "seg" else (Fraction(b1[0]), Fraction(b1[1]))
        d2 = (b2[0] - a2[0], b2[1] - a2[1]) if k2 == "seg" else (Fraction(b2[0]), Fraction(b2[1]))
        st = seg_intersect_params(a1, d1, a2, d2)
        def in_range(kind, t):
            return 0 <= t <= 1 if kind == "seg" else t >= 0
        if st is None:
            # parallel: overlap iff collinear and parameter ranges meet
            if cross_pp(a1, (a1[0] + d1[0], a1[1] + d1[1]), a2) != 0:
                return False
            dd = d1[0] * d1[0] + d1[1] * d1[1]
            t2a = ((a2[0] - a1[0]) * d1[0] + (a2[1] - a1[1]) * d1[1]) / dd
            t2b = t2a + (d2[0] * d1[0] + d2[1] * d1[1]) / dd
            if k2 == "ray":
                lo2, hi2 = (t2a, None) if t2b > t2a else (None, t2a)
            else:
                lo2, hi2 = min(t2a, t2b), max(t2a, t2b)
            lo1, hi1 = 0, (1 if k1 == "seg" else None)
            lo = lo1 if lo2 is None else (lo2 if lo1 is None else max(lo1, lo2))
            if hi1 is None and hi2 is None:
                return True
            hi = hi1 if hi2 is None else (hi2 if hi1 is None else min(hi1, hi2))
            return lo is None or lo <= hi
        s, t = st
        return in_range(k1, s) and in_range(k2, t)

    # -- queries ---------------------------------------------------------------

    def corner_dirs(self, i: int) -> tuple[Vec, Vec]:
        """Primitive edge directions pointing away from vertex i."""
        n = len(self.vertices)
        v = self.vertices[i]
        if not self.bounded and i == 0:
            e_prev = primitive(self.ray_in)[0]
        else:
            u = self.vertices[(i - 1) % n]
            e_prev = primitive_dir((u[0] - v[0], u[1] - v[1]))
        if not self.bounded and i == n - 1:
            e_next = primitive(self.ray_out)[0]
        else:
            u = self.vertices[(i + 1) % n]
            e_next = primitive_dir((u[0] - v[0], u[1] - v[1]))
        return e_prev, e_next

    def on_boundary(self, p: Point) -> bool:
        p = _frac_pt(p)
        for kind, a, b in self.pieces():
            if kind == "seg":
                if point_on_segment(p, a, b):
                    return True
            else:
                w = (p[0] - a[0], p[1] - a[1])
                if w[0] * b[1] - w[1] * b[0] == 0:
                    t = (w[0] * b[0] + w[1] * b[1])
                    if t >= 0:
                        return True
        return False

    def strictly_inside(self, p: Point) -> bool:
        p = _frac_pt(p)
        if self.on_boundary(p):
            return False
        if not self.bounded:
            # convex: strictly left of every piece
            v0, vl = self.vertices[0], self.vertices[-1]
            if det2(self.ray_in, (p[0] - v0[0], p[1] - v0[1])) >= 0:
                return False
            if det2(self.ray_out, (p[0] - vl[0], p[1] - vl[1])) <= 0:
                return False
            for i in range(len(self.vertices) - 1):
                a, b = self.vertices[i], self.vertices[i + 1]
                if cross_pp(a, b, p) <= 0:
                    return False
            return True
        crossings = 0
        n = len(self.vertices)
        for i in range(n):
            a, b = self.vertices[i], self.vertices[(i + 1) % n]
            if (a[1] > p[1]) != (b[1] > p[1]):
                x_int = a[0] + (p[1] - a[1]) * (b[0] - a[0]) / (b[1] - a[1])
                if x_int > p[0]:
                    crossings += 1
        return crossings % 2 == 1

    def vertex_at(self, p: Point) -> Optional[int]:
        p = _frac_pt(p)
        for i, v in enumerate(self.vertices):
            if v == p:
                return i
        return None

    def area2(self) -> Fraction:
        if not self.bounded:
            raise ValueError("area of an unbounded region")
        n = len(self.vertices)
        o = (Fraction(0), Fraction(0))
        return sum(cross_pp(o, self.vertices[i], self.vertices[(i + 1) % n])
                   for i in range(n))


@dataclass(frozen=True)
class Diagram:
    boundary: Boundary
    cuts: tuple[Cut, ...] = ()
    log: tuple = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "cuts", tuple(self.cuts))
        object.__setattr__(self, "log", tuple(self.log))
        self._validate()

    # -- invariants -----------------------------------------------------------

    def _validate(self):
        b = self.boundary
        base_vertex_cuts: dict[int, int] = {}
        for ci, c in enumerate(self.cuts):
            if not b.on_boundary(c.base):
                raise ValueError("cut base must lie on the boundary")
            for p in c.node_points():
                if not b.strictly_inside(p):
                    raise ValueError("cut nodes must lie strictly inside the region")
            self._check_cut_segment(c)
            vi = b.vertex_at(c.base)
            if vi is not None:
                if vi in base_vertex_cuts:
                    raise ValueError("two cuts share a base vertex")
                base_vertex_cuts[vi] = ci
        for i, m in enumerate(b.marks):
            if m == SMOOTHED:
                if i not in base_vertex_cuts:
                    raise ValueError("smoothed vertex has no cut")
                self._check_monodromy(i, self.cuts[base_vertex_cuts[i]])
            elif i in base_vertex_cuts:
                raise ValueError("a cut based at a vertex needs it smoothed")
        for i in range(len(self.cuts)):
            for j in range(i + 1, len(self.cuts)):
                if _segments_touch(self.cuts[i].base, self.cuts[i].tip(),
                                   self.cuts[j].base, self.cuts[j].tip()):
                    raise ValueError("cuts must be pairwise disjoint")

    def _check_cut_segment(self, c: Cut):
        """The open segment (base, tip] must stay inside the region."""
        w = c.direction
        ww = w[0] * w[0] + w[1] * w[1]
        t_last = c.nodes[-1]
        for kind, a, bb in self.boundary.pieces():
            d = ((bb[0] - a[0], bb[1] - a[1]) if kind == "seg"
                 else (Fraction(bb[0]), Fraction(bb[1])))
            st = seg_intersect_params(c.base, w, a, d)
            if st is None:
                # parallel: overlap only if collinear and the ranges meet
                if cross_pp(a, (a[0] + d[0], a[1] + d[1]), c.base) != 0:
                    continue
                t0 = ((a[0] - c.base[0]) * w[0] + (a[1] - c.base[1]) * w[1]) / ww
                if kind == "seg":
                    t1 = ((bb[0] - c.base[0]) * w[0] + (bb[1] - c.base[1]) * w[1]) / ww
                    lo, hi = min(t0, t1), max(t0, t1)
                    overlap = hi > 0 and lo <= t_last
                else:
                    overlap = (t0 <= t_last) if dot_sign(d, w) > 0 else (t0 > 0)
                if overlap:
                    raise ValueError("cut runs along the boundary")
                continue
            s, t = st
            ok_t = (0 <= t <= 1) if kind == "seg" else (t >= 0)
            if ok_t and 0 < s <= t_last:
                raise ValueError("cut leaves the region")

    def _check_monodromy(self, i: int, c: Cut):
        e_prev, e_next = self.boundary.corner_dirs(i)
        u_in = (-e_prev[0], -e_prev[1])
        m = mat_pow(monodromy(c.direction), c.d)
        if mat_vec(m, u_in) != e_next:
            raise ValueError("smoothed vertex fails the monodromy condition")
        # the cut must point into the corner
        if det2(e_next, c.direction) <= 0 or det2(c.direction, e_prev) <= 0:
            raise ValueError("cut direction must point into its corner")

    # -- classification ---------------------------------------------------------

    def classify_vertices(self) -> list["VertexInfo"]:
        out = []
        cuts_at = {self.boundary.vertex_at(c.base): c for c in self.cuts
                   if self.boundary.vertex_at(c.base) is not None}
        for i, v in enumerate(self.boundary.vertices):
            e_prev, e_next = self.boundary.corner_dirs(i)
            mark = self.boundary.marks[i]
            if det2(e_prev, e_next) >= 0:
                out.append(VertexInfo(i, v, mark, None, None, "reflex"))
                continue
            (n, a), _ = normalize_corner(e_prev, e_next)
            t = t_classify(n, a)
            if mark == SMOOTHED:
                assert t is not None and t.d == cuts_at[i].d
                label = fibre_label(t)
            else:
                label = type_label(n, a)
            out.append(VertexInfo(i, v, mark, (n, a), t, label))
        return out

    def area2(self) -> Fraction:
        return self.boundary.area2()

    def _logged(self, entry: dict, boundary=None, cuts=None) -> "Diagram":
        return Diagram(boundary if boundary is not None else self.boundary,
                       self.cuts if cuts is None else tuple(cuts),
                       self.log + (entry,))


@dataclass(frozen=True)
class VertexInfo:
    index: int
    point: Point
    mark: str
    type: Optional[tuple[int, int]]
    t: Optional[TData]
    label: str


def dot_sign(u, v) -> int:
    s = u[0] * v[0] + u[1] * v[1]
    return (s > 0) - (s < 0)


def _segments_touch(a: Point, b: Point, c: Point, d: Point) -> bool:
    from .lattice import segments_cross
    return segments_cross(a, b, c, d)


# -- constructors ---------------------------------------------------------------


def wedge_diagram(n: int, a: int) -> Diagram:
    """The toric wedge of 1/n(1,a): apex at the origin, rays (0,1) and (n,a)."""
    from .cqs import check_type
    check_type(n, a)
    if n == 1:
        rays = ((0, 1), (1, 0))
    else:
        rays = ((0, 1), (n, a))
    b = Boundary(((Fraction(0), Fraction(0)),), (TRUE,), ray_in=rays[0], ray_out=rays[1])
    return Diagram(b, (), ({"move": "template", "kind": "wedge", "n": n, "a": a},))


# -- moves -----------------------------------------------------------------------


def truncate(d: Diagram, where, direction: Vec, depth) -> Diagram:
    """Chop a corner, or close off the open end of an unbounded region.

    Vertex form: where = vertex index.  The new edge starts ``depth`` along
    the incoming (previous) edge and runs with ``direction`` until it meets
    the outgoing edge.  End form: where = "end"; the new edge starts
    ``depth`` along ray_out and runs until it meets ray_in, producing a
    bounded polygon.
    """
    depth = Fraction(depth)
    if depth <= 0:
        raise ValueError("truncation depth must be positive")
    direction = primitive(direction)[0]
    b = d.boundary
    entry = {"move": "truncate", "where": where, "direction": list(direction),
             "depth": str(depth)}

    if where == "end":
        if b.bounded:
            raise ValueError("only an unbounded region has an end to close")
        p1 = (b.vertices[-1][0] + depth * b.ray_out[0],
              b.vertices[-1][1] + depth * b.ray_out[1])
        st = seg_intersect_params(p1, direction, b.vertices[0],
                                  (Fraction(b.ray_in[0]), Fraction(b.ray_in[1])))
        if st is None:
            raise ValueError("closing edge is parallel to the incoming ray")
        s, t = st
        if s <= 0 or t <= 0:
            raise ValueError("closing edge misses the incoming ray")
        p2 = (p1[0] + s * direction[0], p1[1] + s * direction[1])
        verts = (p2,) + b.vertices + (p1,)
        marks = (TRUE,) + b.marks + (TRUE,)
        nb = Boundary(verts, marks)
        return d._logged(entry, boundary=nb)

    i = int(where)
    if not (0 <= i < len(b.vertices)):
        raise IndexError("no such vertex")
    if b.marks[i] != TRUE:
        raise ValueError("cannot truncate a smoothed vertex")
    e_prev, e_next = b.corner_dirs(i)
    v = b.vertices[i]
    p1 = (v[0] + depth * e_prev[0], v[1] + depth * e_prev[1])
    # depth must stay short of the previous vertex when the edge is a segment
    n = len(b.vertices)
    prev_is_ray = (not b.bounded) and i == 0
    if not prev_is_ray:
        u = b.vertices[(i - 1) % n]
        edge_len = _affine_param(v, u, e_prev)
        if depth >= edge_len:
            raise ValueError("truncation depth exceeds the incoming edge")
    st = seg_intersect_params(p1, direction,
                              v, (Fraction(e_next[0]), Fraction(e_next[1])))
    if st is None:
        raise ValueError("truncation edge is parallel to the outgoing edge")
    s, t = st
    if s <= 0 or t <= 0:
        raise ValueError("truncation edge misses the outgoing edge")
    next_is_ray = (not b.bounded) and i == len(b.vertices) - 1
    if not next_is_ray:
        u = b.vertices[(i + 1) % n]
        if t >= _affine_param(v, u, e_next):
            raise ValueError("truncation edge overshoots the outgoing edge")
    p2 = (v[0] + t * e_next[0], v[1] + t * e_next[1])
    verts = b.vertices[:i] + (p1, p2) + b.vertices[i + 1:]
    marks = b.marks[:i] + (TRUE, TRUE) + b.marks[i + 1:]
    nb = Boundary(verts, marks, ray_in=b.ray_in, ray_out=b.ray_out)
    return d._logged(entry, boundary=nb)


def _affine_param(origin: Point, target: Point, direction: Vec) -> Fraction:
    """t with origin + t*direction == target (requires collinearity)."""
    dx = target[0] - origin[0]
    dy = target[1] - origin[1]
    if direction[0]:
        t = Fraction(dx, direction[0])
    else:
        t = Fraction(dy, direction[1])
    assert origin[0] + t * direction[0] == target[0]
    assert origin[1] + t * direction[1] == target[1]
    return t


def _default_cut_length(d: Diagram, base: Point, w: Vec) -> Fraction:
    """Largest cut parameter: first boundary exit or first hit on another cut,
    capped at 1 when the ray escapes to infinity inside the region."""
    best: Optional[Fraction] = None
    for kind, a, bb in d.boundary.pieces():
        dd = ((bb[0] - a[0], bb[1] - a[1]) if kind == "seg"
              else (Fraction(bb[0]), Fraction(bb[1])))
        st = seg_intersect_params(base, w, a, dd)
        if st is None:
            continue
        s, t = st
        ok_t = (0 <= t <= 1) if kind == "seg" else (t >= 0)
        if ok_t and s > 0 and (best is None or s < best):
            best = s
    for c in d.cuts:
        st = seg_intersect_params(base, w, c.base,
                                  (Fraction(c.direction[0]), Fraction(c.direction[1])))
        if st is None:
            continue
        s, t = st
        if 0 <= t <= c.nodes[-1] and s > 0 and (best is None or s < best):
            best = s
    return best if best is not None else Fraction(1)


def smooth_vertex(d: Diagram, i: int, length=None) -> Diagram:
    """Replace a T-type corner by a cut with its d nodes (corner smoothing).

    The cut direction is the image of (p, q) under the corner's normal form;
    nodes sit at j/(d+1) of the cut length for j = 1..d.  The default length
    runs to the first obstruction (boundary or another cut).
    """
    b = d.boundary
    if not (0 <= i < len(b.vertices)):
        raise IndexError("no such vertex")
    if b.marks[i] != TRUE:
        raise ValueError("vertex is already smoothed")
    e_prev, e_next = b.corner_dirs(i)
    (n, a), m0 = normalize_corner(e_prev, e_next)
    t = t_classify(n, a)
    if t is None:
        raise ValueError("vertex is not of T-type")
    w = mat_vec(m0, (t.p, t.q))
    base = b.vertices[i]
    big = Fraction(length) if length is not None else _default_cut_length(d, base, w)
    if big <= 0:
        raise ValueError("cut length must be positive")
    nodes = tuple(Fraction(j, t.d + 1) * big for j in range(1, t.d + 1))
    cut = Cut(base, w, nodes)
    marks = b.marks[:i] + (SMOOTHED,) + b.marks[i + 1:]
    nb = Boundary(b.vertices, marks, ray_in=b.ray_in, ray_out=b.ray_out)
    entry = {"move": "smooth", "vertex": i, "length": str(big)}
    return d._logged(entry, boundary=nb, cuts=d.cuts + (cut,))


def nodal_trade(d: Diagram, i: int, length=None) -> Diagram:
    """Trade a smooth corner for a single node (smoothing with d = 1)."""
    e_prev, e_next = d.boundary.corner_dirs(i)
    (n, a), _ = normalize_corner(e_prev, e_next)
    if (n, a) != (1, 0):
        raise ValueError("nodal trade needs a smooth corner")
    out = smooth_vertex(d, i, length)
    log = out.log[:-1] + ({**out.log[-1], "move": "trade"},)
    return Diagram(out.boundary, out.cuts, log)


def nodal_slide(d: Diagram, cut_index: int, nodes) -> Diagram:
    """Move the nodes of one cut along its line (count must not change)."""
    c = _cut(d, cut_index)
    new_nodes = tuple(Fraction(t) for t in nodes)
    if len(new_nodes) != c.d:
        raise ValueError("nodal slide cannot change the number of nodes")
    nc = Cut(c.base, c.direction, new_nodes)
    cuts = d.cuts[:cut_index] + (nc,) + d.cuts[cut_index + 1:]
    entry = {"move": "slide", "cut": cut_index, "nodes": [str(t) for t in new_nodes]}
    return d._logged(entry, cuts=cuts)


def translate_cut(d: Diagram, cut_index: int, new_base) -> Diagram:
    """Slide a cut's base along the boundary, keeping direction and nodes.

    The old base vertex (if any) reverts to a true corner.  A new base in
    the interior of an edge dangles (no vertex there); a new base on an
    existing true vertex smooths it, which requires the monodromy condition.
    """
    c = _cut(d, cut_index)
    new_base = _frac_pt(new_base)
    b = d.boundary
    marks = list(b.marks)
    old_i = b.vertex_at(c.base)
    if old_i is not None:
        marks[old_i] = TRUE
    new_i = b.vertex_at(new_base)
    if new_i is not None:
        marks[new_i] = SMOOTHED
    nc = Cut(new_base, c.direction, c.nodes)
    nb = Boundary(b.vertices, tuple(marks), ray_in=b.ray_in, ray_out=b.ray_out)
    cuts = d.cuts[:cut_index] + (nc,) + d.cuts[cut_index + 1:]
    entry = {"move": "translate", "cut": cut_index,
             "base": [str(new_base[0]), str(new_base[1])]}
    return d._logged(entry, boundary=nb, cuts=cuts)


def _cut(d: Diagram, i: int) -> Cut:
    if not (0 <= i < len(d.cuts)):
        raise IndexError("no such cut")
    return d.cuts[i]


# -- mutation ---------------------------------------------------------------------


def mutate(d: Diagram, cut_index: int, inverse: bool = False) -> Diagram:
    """Mutate along a cut: shear one side of its line by the monodromy.

    The line through the cut must cross the boundary exactly once beyond the
    base (a single chord).  The anticlockwise side {det2(w, x-base) > 0} is
    transformed by M(w)^d (the clockwise side by M(w)^-d for the inverse
    move); the cut re-bases at the far intersection with direction -w and
    node parameters measured from there.  The smoothed corner at the old
    base straightens, and a fresh smoothed corner appears at the new base.

    The far crossing may also land on an unsmoothed vertex, but only when
    the shear straightens that corner exactly (this is the inverse of a
    mutation based at an interior point of an edge): the corner is dropped
    and the re-based cut starts at an interior point of the straightened
    edge.  Any other vertex on the cut line blocks the move.
    """
    if not d.boundary.bounded:
        raise MutationBlocked("mutation blocked: mutation requires a bounded diagram")
    c = _cut(d, cut_index)
    beta, w = c.base, c.direction
    wf = (Fraction(w[0]), Fraction(w[1]))

    # -- find the single far crossing of the full line with the boundary
    crossings: dict[Fraction, Optional[int]] = {}  # line parameter -> vertex hit
    for kind, a, bb in d.boundary.pieces():
        dd = (bb[0] - a[0], bb[1] - a[1])
        st = seg_intersect_params(beta, wf, a, dd)
        if st is None:
            if cross_pp(a, bb, beta) == 0:
                raise MutationBlocked("mutation blocked: boundary runs along the cut line")
            continue
        s, t = st
        if s == 0 or not (0 <= t < 1):
            continue  # a hit at t == 1 recurs as t == 0 of the next edge
        crossings[s] = d.boundary.vertex_at(a) if t == 0 else None
    if any(s < 0 for s in crossings) or len(crossings) != 1:
        raise MutationBlocked("mutation blocked: cut line fails to separate the region")
    (s_star, exit_vertex), = crossings.items()
    assert s_star > c.nodes[-1]
    e_pt = (beta[0] + s_star * wf[0], beta[1] + s_star * wf[1])

    # -- no other cut may touch the chord
    for j, o in enumerate(d.cuts):
        if j == cut_index:
            continue
        if _segments_touch(beta, e_pt, o.base, o.tip()):
            raise MutationBlocked("mutation blocked: cut line crosses another cut")

    sign = -1 if inverse else 1
    m = mat_pow(monodromy(w), sign * c.d)

    def side(p: Point) -> int:
        v = det2(w, (p[0] - beta[0], p[1] - beta[1]))
        return (v > 0) - (v < 0)

    moved_side = 1 if not inverse else -1

    def phi(p: Point) -> Point:
        rel = (p[0] - beta[0], p[1] - beta[1])
        img = mat_vec_pt(m, rel)
        return (beta[0] + img[0], beta[1] + img[1])

    b = d.boundary
    n = len(b.vertices)
    if exit_vertex is not None:
        # Allowed only if the shear straightens the corner exactly.
        u = b.vertices[(exit_vertex - 1) % n]
        nxt = b.vertices[(exit_vertex + 1) % n]
        if b.marks[exit_vertex] != TRUE or side(u) == 0 or side(u) == side(nxt):
            raise MutationBlocked("mutation blocked: cut line exits at a vertex")
        off_u = (u[0] - e_pt[0], u[1] - e_pt[1])
        off_n = (nxt[0] - e_pt[0], nxt[1] - e_pt[1])
        if side(u) == moved_side:
            off_u = mat_vec_pt(m, off_u)
        else:
            off_n = mat_vec_pt(m, off_n)
        if off_u[0] * off_n[1] - off_u[1] * off_n[0] != 0:
            raise MutationBlocked("mutation blocked: cut line exits at a vertex")

    out_verts: list[Point] = []
    out_marks: list[str] = []
    base_vertex = b.vertex_at(beta)
    for i in range(n):
        v = b.vertices[i]
        if base_vertex == i or exit_vertex == i:
            pass  # this corner straightens under the shear: drop the vertex
        else:
            out_verts.append(phi(v) if side(v) == moved_side else v)
            out_marks.append(b.marks[i])
        a, bb = v, b.vertices[(i + 1) % n]
        for q_pt, q_mark in ((beta, TRUE), (e_pt, SMOOTHED)):
            if q_pt != a and q_pt != bb and point_on_segment(q_pt, a, bb):
                if q_pt == beta and base_vertex is not None:
                    continue
                if q_pt == beta and side(a) == side(bb):
                    continue  # line only touches; no bend at a dangling base
                out_verts.append(q_pt)
                out_marks.append(q_mark)

    new_cut = Cut(e_pt, (-w[0], -w[1]),
                  tuple(sorted(s_star - t for t in c.nodes)))
    new_cuts: list[Cut] = []
    for j, o in enumerate(d.cuts):
        if j == cut_index:
            new_cuts.append(new_cut)
            continue
        sd = side(o.base)
        if sd == 0:
            sd = (det2(w, o.direction) > 0) - (det2(w, o.direction) < 0)
        if sd == moved_side:
            new_cuts.append(Cut(phi(o.base), mat_vec(m, o.direction), o.nodes))
        else:
            new_cuts.append(o)

    entry = {"move": "mutate_inverse" if inverse else "mutate", "cut": cut_index}
    nb = Boundary(tuple(out_verts), tuple(out_marks))
    return d._logged(entry, boundary=nb, cuts=new_cuts)


def mutate_inverse(d: Diagram, cut_index: int) -> Diagram:
    return mutate(d, cut_index, inverse=True)


# -- equivalence --------------------------------------------------------------------


def _cut_signature(cuts, transform=None):
    from collections import Counter
    out = Counter()
    for c in cuts:
        if transform is None:
            out[(c.base, c.direction, c.d)] += 1
        else:
            m, shift = transform
            base = mat_vec_pt(m, c.base)
            out[((base[0] + shift[0], base[1] + shift[1]),
                 mat_vec(m, c.direction), c.d)] += 1
    return out


def equivalent(d1: Diagram, d2: Diagram) -> bool:
    """Integral affine equivalence: an orientation-preserving unimodular map
    plus translation matching boundary, marks, and cuts with node counts.

    Node parameters are not compared (nodal slides do not change the space).
    """
    from .lattice import solve_gl2

    b1, b2 = d1.boundary, d2.boundary
    if b1.bounded != b2.bounded or len(b1.vertices) != len(b2.vertices):
        return False
    n = len(b1.vertices)
    offsets = range(n) if b1.bounded else (0,)
    for r in offsets:
        if any(b1.marks[i] != b2.marks[(i + r) % n] for i in range(n)):
            continue
        e1a, e1b = _frame(b1, 0)
        e2a, e2b = _frame(b2, r)
        try:
            m = solve_gl2(e1a, e2a, e1b, e2b)
        except ValueError:
            continue
        if m[0][0] * m[1][1] - m[0][1] * m[1][0] != 1:
            continue
        v0 = mat_vec_pt(m, b1.vertices[0])
        w0 = b2.vertices[r % n]
        shift = (w0[0] - v0[0], w0[1] - v0[1])
        if not b1.bounded:
            if mat_vec(m, b1.ray_in) != b2.ray_in or mat_vec(m, b1.ray_out) != b2.ray_out:
                continue
        ok = True
        for i in range(n):
            img = mat_vec_pt(m, b1.vertices[i])
            if (img[0] + shift[0], img[1] + shift[1]) != b2.vertices[(i + r) % n]:
                ok = False
                break
        if not ok:
            continue
        if _cut_signature(d1.cuts, (m, shift)) == _cut_signature(d2.cuts):
            return True
    return False


def _frame(b: Boundary, i: int) -> tuple[Vec, Vec]:
    """Two independent primitive directions anchored at vertex i."""
    e_prev, e_next = b.corner_dirs(i)
    return e_prev, e_next
