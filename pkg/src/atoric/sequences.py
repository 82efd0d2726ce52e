"""Markov triples, Mori recursions, and the quintic mutation ladder."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .diagram import (Diagram, MutationBlocked, mutate, nodal_slide, nodal_trade,
                      smooth_vertex, truncate, wedge_diagram)
from .lattice import seg_intersect_params


def is_markov(a: int, b: int, c: int) -> bool:
    return min(a, b, c) >= 1 and a * a + b * b + c * c == 3 * a * b * c


def vieta_mutate(triple, i: int):
    """Replace entry i by the other root of the Markov quadratic."""
    a, b, c = triple
    if not is_markov(a, b, c):
        raise ValueError("not a Markov triple")
    others = [a, b, c]
    x = others.pop(i)
    return tuple(others[:i] + [3 * others[0] * others[1] - x] + others[i:])


def markov_triples(bound: int) -> list[tuple[int, int, int]]:
    """All Markov triples a <= b <= c <= bound, found by Vieta mutations
    from (1,1,1)."""
    if bound < 1:
        return []
    seen = {(1, 1, 1)}
    queue = deque(seen)
    while queue:
        t = queue.popleft()
        for i in range(3):
            nt = tuple(sorted(vieta_mutate(t, i)))
            if nt[2] <= bound and nt not in seen:
                seen.add(nt)
                queue.append(nt)
    return sorted(seen)


def mori_extend(pairs, steps: int, delta: int = 3) -> list[tuple[int, int]]:
    """Extend (p, q) pairs by x_{i+2} = delta*x_{i+1} - x_i to `steps` terms."""
    out = [tuple(p) for p in pairs]
    if len(out) < 2:
        raise ValueError("need two seed pairs")
    while len(out) < steps:
        (p0, q0), (p1, q1) = out[-2], out[-1]
        out.append((delta * p1 - p0, delta * q1 - q0))
    return out[:steps]


def pi_minus(n: int = 11, a: int = 3, c_len=1, height=None,
             chop_dir=(1, -2)) -> Diagram:
    """Bounded, pre-smoothed ladder region for 1/n(1,a).

    The wedge corner is chopped by an edge of direction chop_dir and affine
    length c_len, the open end is closed flat at the given height, and the
    T-corner created by the chop is smoothed.  The default height is four
    times the minimum.
    """
    c_len = Fraction(c_len)
    if c_len <= 0:
        raise ValueError("edge length must be positive")
    # depth along the (0,1)-ray so that the chop edge has affine length c_len
    dx, dy = chop_dir
    if dx <= 0:
        raise ValueError("chop direction must cross the cone")
    depth = c_len * Fraction(a * dx - n * dy, n)
    if depth <= 0:
        raise ValueError("chop direction must cross the cone")
    height = Fraction(height) if height is not None else 4 * depth
    if height <= depth:
        raise ValueError("height must exceed the truncated corner")
    d = wedge_diagram(n, a)
    d = truncate(d, 0, chop_dir, depth)
    corner = d.boundary.vertices[-1] if d.boundary.vertices[-1][0] > 0 else d.boundary.vertices[0]
    y_corner = corner[1]
    d = truncate(d, "end", (-1, 0), (height - y_corner) / a)
    ci = d.boundary.vertex_at(corner)
    info = d.classify_vertices()[ci]
    if info.t is None:
        raise ValueError("chop does not create a T-corner")
    if info.type == (1, 0):
        raise ValueError("chop corner is already smooth")
    d = smooth_vertex(d, ci)
    entry = {"move": "template", "kind": "pi-minus", "n": n, "a": a,
             "c_len": str(c_len), "height": str(height)}
    return Diagram(d.boundary, d.cuts, (entry,))


@dataclass(frozen=True)
class LadderResult:
    pairs: tuple[tuple[int, int], ...]
    blocked: bool
    reason: Optional[str]
    diagram: Diagram


def _slide_clear_of(d: Diagram, idle: int, active: int) -> Diagram:
    """Shrink the idle cut until it clears the active cut's line."""
    ca, ci = d.cuts[active], d.cuts[idle]
    st = seg_intersect_params(ci.base, ci.direction, ca.base, ca.direction)
    if st is None:
        return d
    s, _ = st
    if s <= 0:
        return d
    target = min(ci.nodes[-1], s / 2)
    if target == ci.nodes[-1]:
        return d
    dd = ci.d
    return nodal_slide(d, idle, tuple(Fraction(j, dd) * target for j in range(1, dd + 1)))


def quintic_ladder(steps: int, n: int = 11, a: int = 3, c_len=1,
                   height=None) -> LadderResult:
    """Run the mutation ladder on the pre-smoothed region of 1/n(1,a).

    Emits one (p, q) pair per smoothed corner: the template's corner first,
    then one per mutation.  Each iteration trades the smooth corner next to
    the active cut (first iteration only -- afterwards no smooth tradeable
    corner remains), slides the idle cut clear of the mutation line, and
    mutates.  Stops early with blocked=True when a mutation is obstructed
    or a new corner leaves the T-family.
    """
    if steps < 1:
        raise ValueError("steps must be >= 1")
    d = pi_minus(n, a, c_len, height)
    smoothed = d.cuts[0].base
    info = [v for v in d.classify_vertices() if v.point == smoothed][0]
    pairs: list[tuple[int, int]] = [(info.t.p, info.t.q)]

    def done(blocked: bool, reason: Optional[str]) -> LadderResult:
        return LadderResult(tuple(pairs), blocked, reason, d)

    if steps == 1:
        return done(False, None)

    # one-off nodal trade at the smooth corner adjacent to the smoothed one
    k = d.boundary.vertex_at(smoothed)
    nv = len(d.boundary.vertices)
    cands = [j for j in ((k - 1) % nv, (k + 1) % nv)
             if d.boundary.marks[j] == "true"
             and d.classify_vertices()[j].type == (1, 0)]
    if not cands:
        return done(True, "no tradeable smooth corner")
    d = nodal_trade(d, cands[0])

    active, idle = 1, 0
    while len(pairs) < steps:
        try:
            d = _slide_clear_of(d, idle, active)
            d = mutate(d, active)
        except MutationBlocked as e:
            return done(True, str(e))
        base = d.cuts[active].base
        info = [v for v in d.classify_vertices() if v.point == base][0]
        if info.t is None:
            return done(True, "new corner leaves the T-family")
        pairs.append((info.t.p, info.t.q))
        active, idle = idle, active
    return done(False, None)
