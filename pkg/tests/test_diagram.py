"""Diagram engine: wedges, truncation, smoothing, slides, translation, mutation."""

import random
from fractions import Fraction as F

import pytest

from atoric.diagram import (
    SMOOTHED,
    TRUE,
    Boundary,
    Cut,
    Diagram,
    MutationBlocked,
    equivalent,
    monodromy,
    mutate,
    mutate_inverse,
    nodal_slide,
    nodal_trade,
    smooth_vertex,
    translate_cut,
    truncate,
    wedge_diagram,
)
from atoric.lattice import IDENTITY, mat_mul, mat_pow, mat_vec


def _triangle():
    """Bounded diagram from the smoothed wedge of 1/4(1,1), closed at x-depth 3."""
    d = wedge_diagram(4, 1)
    d = smooth_vertex(d, 0)
    return truncate(d, "end", (-1, 0), F(3))


def test_monodromy_anchors():
    assert monodromy((1, 0)) == ((1, -1), (0, 1))
    assert monodromy((2, 1)) == ((3, -4), (1, -1))
    assert monodromy((0, 1)) == ((1, 0), (1, 1))


def test_monodromy_properties():
    rng = random.Random(7)
    from math import gcd

    seen = 0
    while seen < 100:
        p, q = rng.randint(-20, 20), rng.randint(-20, 20)
        if (p, q) == (0, 0) or gcd(p, q) != 1:
            continue
        seen += 1
        m = monodromy((p, q))
        assert m == ((1 + p * q, -p * p), (q * q, 1 - p * q))
        assert mat_vec(m, (p, q)) == (p, q)
        assert m[0][0] + m[1][1] == 2
        n = ((m[0][0] - 1, m[0][1]), (m[1][0], m[1][1] - 1))
        assert mat_mul(n, n) == ((0, 0), (0, 0))
        assert mat_mul(m, mat_pow(m, -1)) == IDENTITY


def test_wedge_anchors():
    d = wedge_diagram(4, 1)
    assert d.boundary.vertices == ((0, 0),)
    assert d.boundary.ray_in == (0, 1) and d.boundary.ray_out == (4, 1)
    assert not d.boundary.bounded
    info = d.classify_vertices()[0]
    assert info.type == (4, 1) and info.t == (1, 2, 1) and info.label == "1/4(1,1)"

    d = wedge_diagram(1, 0)
    assert d.boundary.ray_in == (0, 1) and d.boundary.ray_out == (1, 0)
    assert d.classify_vertices()[0].label == "smooth"


def test_smoothed_wedge_cut_direction():
    # d = 1 wedges: the cut direction is (p, q) itself
    for p, q in ((2, 1), (3, 1), (3, 2), (5, 3)):
        n, a = p * p, (p * q - 1) % (p * p)
        d = smooth_vertex(wedge_diagram(n, a), 0)
        assert d.cuts[0].direction == (p, q)
        assert d.cuts[0].d == 1
        # the monodromy moves the incoming boundary direction to the outgoing ray
        assert mat_vec(monodromy((p, q)), (0, -1)) == (n, a)


def test_truncate_end_anchor():
    d = _triangle()
    assert d.boundary.vertices == ((0, 0), (12, 3), (0, 3))
    assert d.boundary.marks == (SMOOTHED, TRUE, TRUE)
    assert d.cuts[0] == Cut((0, 0), (2, 1), (F(1, 2),))
    assert [v.label for v in d.classify_vertices()] == ["B_{2,1}", "smooth", "smooth"]
    assert d.area2() == 36


def test_truncate_vertex_form():
    d = truncate(_triangle(), 1, (-1, 1), 1)
    assert d.boundary.vertices == ((0, 0), (8, 2), (7, 3), (0, 3))
    assert d.boundary.marks == (SMOOTHED, TRUE, TRUE, TRUE)
    with pytest.raises(ValueError):
        truncate(_triangle(), 1, (-1, 1), 0)
    with pytest.raises(ValueError):
        truncate(_triangle(), 1, (-1, 1), -2)


def test_smooth_vertex_errors():
    d = _triangle()
    with pytest.raises(ValueError, match="not of T-type"):
        smooth_vertex(wedge_diagram(3, 1), 0)  # 1/3(1,1) is not in the family
    with pytest.raises(ValueError, match="already smoothed"):
        smooth_vertex(d, 0)
    with pytest.raises(IndexError):
        smooth_vertex(d, 5)
    with pytest.raises(ValueError, match="length"):
        smooth_vertex(wedge_diagram(4, 1), 0, length=0)


def test_nodal_trade():
    d = _triangle()
    t = nodal_trade(d, 1)
    assert t.boundary.marks == (SMOOTHED, SMOOTHED, TRUE)
    assert t.cuts[1] == Cut((12, 3), (-5, -1), (F(6, 5),))
    assert t.log[-1]["move"] == "trade"
    assert [v.label for v in t.classify_vertices()] == ["B_{2,1}", "B_{1,1}", "smooth"]
    with pytest.raises(ValueError, match="smooth corner"):
        nodal_trade(d, 0)  # the T-corner is not a smooth corner


def test_nodal_slide():
    d = _triangle()
    s = nodal_slide(d, 0, (F(1, 4),))
    assert s.cuts[0] == Cut((0, 0), (2, 1), (F(1, 4),))
    assert s.log[-1] == {"move": "slide", "cut": 0, "nodes": ["1/4"]}
    with pytest.raises(ValueError, match="number of nodes"):
        nodal_slide(d, 0, (F(1, 4), F(1, 2)))
    with pytest.raises(IndexError):
        nodal_slide(d, 3, (F(1, 4),))
    with pytest.raises(ValueError):
        nodal_slide(d, 0, (F(-1, 4),))


def test_translate_cut():
    d = nodal_slide(_triangle(), 0, (F(1, 2),))
    t = translate_cut(d, 0, (6, F(3, 2)))
    assert t.boundary.marks == (TRUE, TRUE, TRUE)       # old base reverts
    assert t.cuts[0] == Cut((6, F(3, 2)), (2, 1), (F(1, 2),))
    # translating back onto the vertex smooths it again
    back = translate_cut(t, 0, (0, 0))
    assert back.boundary.marks == (SMOOTHED, TRUE, TRUE)
    assert back.cuts[0] == d.cuts[0]


def test_mutate_triangle_anchor():
    d = _triangle()
    m = mutate(d, 0)
    assert m.boundary.vertices == ((-12, -3), (12, 3), (6, 3))
    assert m.boundary.marks == (TRUE, TRUE, SMOOTHED)
    assert m.cuts[0] == Cut((6, 3), (-2, -1), (F(5, 2),))
    assert [v.label for v in m.classify_vertices()] == ["smooth", "smooth", "B_{1,1}"]
    assert m.area2() == d.area2() == 36
    assert m.log[-1] == {"move": "mutate", "cut": 0}


def test_mutate_inverse_is_exact():
    d = _triangle()
    m = mutate(d, 0)
    back = mutate_inverse(m, 0)
    assert back.boundary == d.boundary
    assert back.cuts == d.cuts
    assert back.log[-1] == {"move": "mutate_inverse", "cut": 0}


def test_double_mutation_equivalent():
    d = _triangle()
    m2 = mutate(mutate(d, 0), 0)
    assert m2.boundary != d.boundary  # a genuinely different presentation
    assert equivalent(m2, d)
    assert [v.label for v in m2.classify_vertices()].count("B_{2,1}") == 1


def test_mutate_translated_cut_round_trip():
    # cut based at an interior point of an edge: the forward move inserts a
    # true bend at the old base, the inverse straightens it again
    d = nodal_slide(_triangle(), 0, (F(1, 2),))
    d = translate_cut(d, 0, (6, F(3, 2)))
    m = mutate(d, 0)
    assert m.boundary.vertices == ((-18, -6), (-6, -3), (6, F(3, 2)), (12, 3), (9, 3))
    assert m.boundary.marks == (TRUE, TRUE, TRUE, TRUE, SMOOTHED)
    assert m.cuts[0] == Cut((9, 3), (-2, -1), (F(1),))
    assert m.area2() == 36
    back = mutate_inverse(m, 0)
    assert back.boundary == d.boundary and back.cuts == d.cuts


def test_mutate_blocked_cases():
    # (a) the cut line exits at a vertex that does not straighten
    b = Boundary(((F(0), F(0)), (F(12), F(3)), (F(6), F(3)), (F(0), F(2))),
                 (SMOOTHED, TRUE, TRUE, TRUE))
    d = Diagram(b, (Cut((0, 0), (2, 1), (F(3, 2),)),),
                ({"move": "template", "kind": "test"},))
    with pytest.raises(MutationBlocked, match="exits at a vertex"):
        mutate(d, 0)

    # (b) chord crosses another cut
    from atoric.sequences import pi_minus

    d = nodal_trade(pi_minus(), 0)
    with pytest.raises(MutationBlocked, match="crosses another cut"):
        mutate(d, 1)

    # (c) unbounded diagrams cannot mutate
    with pytest.raises(MutationBlocked, match="bounded"):
        mutate(smooth_vertex(wedge_diagram(4, 1), 0), 0)

    # (d) non-convex region: the line crosses the boundary more than once
    b = Boundary(((F(0), F(0)), (F(6), F(0)), (F(6), F(6)), (F(4), F(6)),
                  (F(4), F(3)), (F(0), F(3))),
                 (SMOOTHED, TRUE, TRUE, TRUE, TRUE, TRUE))
    d = Diagram(b, (Cut((0, 0), (1, 1), (F(1, 2),)),),
                ({"move": "template", "kind": "test"},))
    with pytest.raises(MutationBlocked, match="fails to separate"):
        mutate(d, 0)

    # blocked moves leave no trace: the original diagram is untouched
    assert d.cuts[0].nodes == (F(1, 2),)


def test_equivalence_invariance():
    d = _triangle()
    # translate by (5, -7) and act by a unimodular matrix
    m = ((2, 1), (1, 1))

    def move_pt(p):
        q = mat_vec(m, p)
        return (q[0] + 5, q[1] - 7)

    b = d.boundary
    nb = Boundary(tuple(move_pt(v) for v in b.vertices), b.marks)
    nc = tuple(Cut(move_pt(c.base), mat_vec(m, c.direction), c.nodes) for c in d.cuts)
    d2 = Diagram(nb, nc, d.log)
    assert equivalent(d, d2)
    assert equivalent(d2, d)

    # a genuinely different region is not equivalent
    other = truncate(smooth_vertex(wedge_diagram(4, 1), 0), "end", (-1, 0), F(4))
    assert not equivalent(d, other)
    # sliding nodes along the cut line does not change the class
    assert equivalent(d, nodal_slide(d, 0, (F(1, 4),)))
    # an extra cut does
    assert not equivalent(d, nodal_trade(d, 1))


def test_reflex_vertex_classification():
    b = Boundary(((F(0), F(0)), (F(6), F(0)), (F(6), F(6)), (F(4), F(6)),
                  (F(4), F(3)), (F(0), F(3))),
                 (TRUE,) * 6)
    d = Diagram(b, (), ({"move": "template", "kind": "test"},))
    infos = d.classify_vertices()
    reflex = [v for v in infos if v.label == "reflex"]
    assert len(reflex) == 1
    assert reflex[0].point == (4, 3)
    assert reflex[0].type is None and reflex[0].t is None
