"""Exact primitives for the rank-2 lattice: vectors, 2x2 integer matrices, points.

Vectors are plain ``(int, int)`` tuples, matrices are row tuples
``((a, b), (c, d))``, and affine points are ``(Fraction, Fraction)``.
Everything here is exact; no floats anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

Vec = tuple[int, int]
Mat = tuple[tuple[int, int], tuple[int, int]]
Point = tuple[Fraction, Fraction]

IDENTITY: Mat = ((1, 0), (0, 1))


def primitive(v) -> tuple[Vec, int]:
    """Return (v/g, g) where g = gcd of the coordinates.

    Errors on the zero vector: it has no direction to normalize.
    """
    x, y = v
    if x == 0 and y == 0:
        raise ValueError("zero vector has no direction")
    g = gcd(x, y)
    return (x // g, y // g), g


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended gcd: returns (g, u, v) with u*a + v*b == g >= 0."""
    old_r, r = a, b
    old_u, u = 1, 0
    old_v, v = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_u, u = u, old_u - q * u
        old_v, v = v, old_v - q * v
    if old_r < 0:
        old_r, old_u, old_v = -old_r, -old_u, -old_v
    return old_r, old_u, old_v


def det2(u, v) -> int:
    return u[0] * v[1] - u[1] * v[0]


def dot2(u, v) -> int:
    return u[0] * v[0] + u[1] * v[1]


def vec_add(u, v):
    return (u[0] + v[0], u[1] + v[1])


def vec_sub(u, v):
    return (u[0] - v[0], u[1] - v[1])


def vec_neg(u):
    return (-u[0], -u[1])


def vec_scale(c, u):
    return (c * u[0], c * u[1])


def mat_vec(m: Mat, v):
    (a, b), (c, d) = m
    return (a * v[0] + b * v[1], c * v[0] + d * v[1])


def mat_mul(m: Mat, n: Mat) -> Mat:
    (a, b), (c, d) = m
    (e, f), (g, h) = n
    return ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))


def mat_det(m: Mat) -> int:
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def mat_inv(m: Mat) -> Mat:
    """Inverse of a unimodular (det = +-1) integer matrix."""
    (a, b), (c, d) = m
    det = a * d - b * c
    if det == 1:
        return ((d, -b), (-c, a))
    if det == -1:
        return ((-d, b), (c, -a))
    raise ValueError("matrix is not unimodular")


def mat_pow(m: Mat, k: int) -> Mat:
    """m**k for integer k (negative k inverts a unimodular m first)."""
    if k < 0:
        m, k = mat_inv(m), -k
    out = IDENTITY
    while k:
        if k & 1:
            out = mat_mul(out, m)
        m = mat_mul(m, m)
        k >>= 1
    return out


def solve_gl2(u1, v1, u2, v2) -> Mat:
    """The integer matrix M with det M = +-1, M u1 = v1 and M u2 = v2.

    Solved via M = [v1 v2] adj([u1 u2]) / det([u1 u2]); the pair determines
    M over the rationals whenever u1, u2 are independent, and we then demand
    integrality and unimodularity.  Raises with "no unimodular transport"
    when no such matrix exists.
    """
    du = det2(u1, u2)
    if du == 0:
        raise ValueError("no unimodular transport")
    # [u1 u2]^-1 = adj / du with adj = ((u2y, -u2x), (-u1y, u1x))
    raw = (
        (v1[0] * u2[1] - v2[0] * u1[1], -v1[0] * u2[0] + v2[0] * u1[0]),
        (v1[1] * u2[1] - v2[1] * u1[1], -v1[1] * u2[0] + v2[1] * u1[0]),
    )
    if any(e % du for row in raw for e in row):
        raise ValueError("no unimodular transport")
    m: Mat = tuple(tuple(e // du for e in row) for row in raw)  # type: ignore[assignment]
    if mat_det(m) not in (1, -1):
        raise ValueError("no unimodular transport")
    return m


# -- affine helpers on rational points ---------------------------------------

def pt(x, y) -> Point:
    return (Fraction(x), Fraction(y))


def pt_add_vec(p: Point, t, v) -> Point:
    return (p[0] + t * v[0], p[1] + t * v[1])


def pt_sub(p: Point, q: Point) -> tuple[Fraction, Fraction]:
    return (p[0] - q[0], p[1] - q[1])


def cross_pp(o: Point, a: Point, b: Point) -> Fraction:
    """Cross product (a - o) x (b - o); sign = orientation of the triple."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def mat_vec_pt(m: Mat, v: tuple[Fraction, Fraction]) -> tuple[Fraction, Fraction]:
    (a, b), (c, d) = m
    return (a * v[0] + b * v[1], c * v[0] + d * v[1])


def primitive_dir(delta: tuple[Fraction, Fraction]) -> Vec:
    """Primitive integer vector pointing along a rational displacement."""
    dx, dy = Fraction(delta[0]), Fraction(delta[1])
    if dx == 0 and dy == 0:
        raise ValueError("zero vector has no direction")
    den = dx.denominator * dy.denominator // gcd(dx.denominator, dy.denominator)
    ix, iy = int(dx * den), int(dy * den)
    return primitive((ix, iy))[0]


def seg_intersect_params(p: Point, u, q: Point, v):
    """Parameters (s, t) with p + s*u == q + t*v, or None for parallel lines."""
    den = det2(u, v)
    if den == 0:
        return None
    w = pt_sub(q, p)
    s = Fraction(w[0] * v[1] - w[1] * v[0], den)
    t = Fraction(w[0] * u[1] - w[1] * u[0], den)
    return s, t


def point_on_segment(x: Point, a: Point, b: Point) -> bool:
    """True iff x lies on the closed segment [a, b]."""
    if cross_pp(a, b, x) != 0:
        return False
    lo0, hi0 = (a[0], b[0]) if a[0] <= b[0] else (b[0], a[0])
    lo1, hi1 = (a[1], b[1]) if a[1] <= b[1] else (b[1], a[1])
    return lo0 <= x[0] <= hi0 and lo1 <= x[1] <= hi1


def segments_cross(a: Point, b: Point, c: Point, d: Point) -> bool:
    """True iff closed segments [a,b] and [c,d] share at least one point."""
    d1 = cross_pp(c, d, a)
    d2 = cross_pp(c, d, b)
    d3 = cross_pp(a, b, c)
    d4 = cross_pp(a, b, d)
    if ((d1 > 0) != (d2 > 0)) and ((d3 > 0) != (d4 > 0)) and d1 != d2 and d3 != d4:
        return True
    return (point_on_segment(a, c, d) or point_on_segment(b, c, d)
            or point_on_segment(c, a, b) or point_on_segment(d, a, b))
