"""Partial resolutions of the cone over 1/n(1,a) and the positivity test.

Conventions (fan side): the cone of 1/n(1,a) has boundary rays (1, 0) and
(-a, n), listed counterclockwise.  Interior rays of a chain [b_1..b_l] obey
r_{i+1} = b_i r_i - r_{i-1} starting from r_0 = (1, 0), r_1 = (0, 1), and
end at r_{l+1} = (-a, n).

A partial resolution keeps a subset of the maximal resolution's rays; the
cones between consecutive kept rays are its vertices, and the kept curves
carry canonical degrees K.D computed from the contracted runs on either
side.  A P-resolution is one whose vertices are all T-or-smooth and whose
kept degrees are all strictly positive.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional

from .cqs import SMOOTH, check_type, hj_eval, hj_expand, t_classify
from .lattice import Vec, det2, mat_vec, solve_gl2, xgcd
from .resolution import Chain, discrepancies, maximal_resolution


def cone_rays(n: int, a: int) -> tuple[Vec, Vec]:
    check_type(n, a)
    return ((1, 0), (-a, n))


def rays_from_chain(n: int, a: int, bs) -> list[Vec]:
    """Interior rays of the subdivision given by a chain contracting to (n, a)."""
    check_type(n, a)
    prev: Vec = (1, 0)
    cur: Vec = (0, 1)
    rays: list[Vec] = []
    for b in bs:
        rays.append(cur)
        prev, cur = cur, (b * cur[0] - prev[0], b * cur[1] - prev[1])
    if n == 1:
        assert not rays and cur == (0, 1)
    else:
        assert cur == (-a, n), f"chain does not contract to ({n},{a})"
    return rays


def cone_type(u: Vec, v: Vec) -> tuple[int, int]:
    """Singularity type (n, a) of the two-dimensional cone spanned by u, v.

    Requires primitive generators with det2(u, v) = n > 0; a is the unique
    residue with v + a*u = 0 (mod n).
    """
    if gcd(u[0], u[1]) != 1 or gcd(v[0], v[1]) != 1:
        raise ValueError("cone generators must be primitive")
    n = det2(u, v)
    if n <= 0:
        raise ValueError("cone generators must be positively oriented")
    g, s, t = xgcd(u[0], u[1])
    assert g == 1
    a = (-(s * v[0] + t * v[1])) % n
    assert (v[0] + a * u[0]) % n == 0 and (v[1] + a * u[1]) % n == 0
    return check_type(n, a)


@dataclass(frozen=True)
class PartialResolution:
    """A subset of the maximal resolution's rays kept (not contracted)."""

    n: int
    a: int
    kept: tuple[Vec, ...]

    def __post_init__(self):
        check_type(self.n, self.a)
        first, last = cone_rays(self.n, self.a)
        seq = (first,) + self.kept + (last,)
        for r in self.kept:
            if gcd(r[0], r[1]) != 1:
                raise ValueError(f"kept ray {r} is not primitive")
        for u, v in zip(seq, seq[1:]):
            if det2(u, v) <= 0:
                raise ValueError("kept rays must lie strictly inside the cone, "
                                 "in counterclockwise order")


@dataclass(frozen=True)
class Refinement:
    """The smooth subdivision refining a partial resolution.

    rays/bs cover the interior rays only; kept[i] says whether rays[i] is a
    kept ray of the partial resolution (False = contracted).
    """

    rays: tuple[Vec, ...]
    bs: tuple[int, ...]
    kept: tuple[bool, ...]


def refine_to_smooth(pr: PartialResolution) -> Refinement:
    """Resolve each vertex cone minimally, keeping track of the kept rays."""
    first, last = cone_rays(pr.n, pr.a)
    seq = (first,) + pr.kept + (last,)
    rays: list[Vec] = []
    flags: list[bool] = []
    for u, v in zip(seq, seq[1:]):
        m, c = cone_type(u, v)
        if m > 1:
            # transport the standard subdivision of the (m, c) cone onto (u, v)
            tr = solve_gl2((1, 0), u, (-c, m), v)
            for r in rays_from_chain(m, c, hj_expand(m, c)):
                rays.append(mat_vec(tr, r))
                flags.append(False)
        if v != last:
            rays.append(v)
            flags.append(True)
    # read off self-intersections: r_{i-1} + r_{i+1} = b_i * r_i
    full = [first] + rays + [last]
    bs: list[int] = []
    for i in range(1, len(full) - 1):
        sx = full[i - 1][0] + full[i + 1][0]
        sy = full[i - 1][1] + full[i + 1][1]
        rx, ry = full[i]
        b = sx // rx if rx != 0 else sy // ry
        assert b * rx == sx and b * ry == sy, "refinement is not a smooth chain"
        assert b >= 1
        bs.append(b)
    return Refinement(tuple(rays), tuple(bs), tuple(flags))


@dataclass(frozen=True)
class PartialChain:
    """A resolution chain with a subset of curves kept, the rest contracted.

    Unlike a PartialResolution this is purely chain-side: entries b_i = 1
    are allowed (blown-up chains), so it also covers partial contractions
    of non-minimal chains that have no fan-subdivision picture.
    """

    bs: tuple[int, ...]
    kept: tuple[int, ...]   # indices of kept curves, strictly increasing

    def __post_init__(self):
        for b in self.bs:
            if not isinstance(b, int) or b < 1:
                raise ValueError("chain entries must be integers >= 1")
        if list(self.kept) != sorted(set(self.kept)):
            raise ValueError("kept indices must be strictly increasing")
        for i in self.kept:
            if not (0 <= i < len(self.bs)):
                raise IndexError(f"kept index {i} outside the chain")


@dataclass(frozen=True)
class DegreeReport:
    """Vertex types and kept-curve canonical degrees of a partial resolution."""

    vertex_types: tuple[tuple[int, int], ...]   # len(kept) + 1 cones
    k_degrees: tuple[Fraction, ...]             # one per kept ray


def _chain_degrees(pc: PartialChain) -> DegreeReport:
    """Chain-side degree computation: K.D_r = (b_r - 2) minus the adjacent
    end discrepancies of the contracted runs on either side of r."""
    runs: list[tuple[int, int]] = []  # half-open contracted runs [s, e)
    s = 0
    for p in list(pc.kept) + [len(pc.bs)]:
        runs.append((s, p))
        s = p + 1
    types = tuple(hj_eval(list(pc.bs[a:b])) for a, b in runs)
    run_ks = {span: discrepancies(pc.bs[span[0]: span[1]]) for span in runs}
    degs: list[Fraction] = []
    for j, p in enumerate(pc.kept):
        d = Fraction(pc.bs[p] - 2)
        left, right = run_ks[runs[j]], run_ks[runs[j + 1]]
        if left:
            d -= left[-1]
        if right:
            d -= right[0]
        degs.append(d)
    return DegreeReport(types, tuple(degs))


def canonical_degrees(pr: PartialResolution | PartialChain) -> DegreeReport:
    """K.D on each kept curve, with discrepancies solved per contracted run.

    K.D_r = (b_r - 2) - sum of the discrepancies of the contracted curves
    adjacent to r (at most one on each side, from the neighbouring runs).
    Accepts the fan-side PartialResolution or the chain-side PartialChain;
    for the former the vertex types are the cone types of consecutive kept
    rays, for the latter the contracted runs' contraction types.
    """
    if isinstance(pr, PartialChain):
        return _chain_degrees(pr)
    ref = refine_to_smooth(pr)
    first, last = cone_rays(pr.n, pr.a)
    seq = (first,) + pr.kept + (last,)
    types = tuple(cone_type(u, v) for u, v in zip(seq, seq[1:]))

    m = len(ref.rays)
    kept_pos = [i for i in range(m) if ref.kept[i]]
    runs: list[tuple[int, int]] = []  # half-open contracted runs [s, e)
    s = 0
    for p in kept_pos + [m]:
        runs.append((s, p))
        s = p + 1
    run_ks = {span: discrepancies(ref.bs[span[0]: span[1]]) for span in runs}

    degs: list[Fraction] = []
    for j, p in enumerate(kept_pos):
        left = runs[j]
        right = runs[j + 1]
        d = Fraction(ref.bs[p] - 2)
        if left[1] > left[0]:
            d -= run_ks[left][-1]
        if right[1] > right[0]:
            d -= run_ks[right][0]
        degs.append(d)
    return DegreeReport(types, tuple(degs))


def is_p_resolution(pr: PartialResolution) -> tuple[bool, Optional[dict]]:
    """Check the two P-resolution conditions; returns (ok, certificate).

    The certificate names the first failure: a vertex cone outside the
    T-or-smooth family, or a kept curve with K.D <= 0.
    """
    rep = canonical_degrees(pr)
    for t in rep.vertex_types:
        if t != SMOOTH and t_classify(*t) is None:
            return False, {"kind": "vertex", "type": t}
    for ray, d in zip(pr.kept, rep.k_degrees):
        if d <= 0:
            return False, {"kind": "curve", "ray": ray, "k_degree": d}
    return True, None


@dataclass(frozen=True)
class PResolutionEntry:
    pr: PartialResolution
    vertex_types: tuple[tuple[int, int], ...]
    k_degrees: tuple[Fraction, ...]


def enumerate_p_resolutions(n: int, a: int) -> list[PResolutionEntry]:
    """All P-resolutions of 1/n(1,a), as subsets of maximal-resolution rays.

    Depth-first over kept positions with pruning: a contracted run whose
    cone is not T-or-smooth, or a kept ray whose two adjacent runs force
    K.D <= 0, cannot occur in any P-resolution, so the prefix is dropped.
    Both tests are local to a ray and its neighbouring runs, which makes
    the pruned search complete.
    """
    check_type(n, a)
    chain = maximal_resolution(n, a)
    rays = rays_from_chain(n, a, chain.bs)
    first, last = cone_rays(n, a)
    m = len(rays)
    anchor = [first] + rays + [last]          # anchor[0..m+1]
    bs = chain.bs

    run_type_memo: dict[tuple[int, int], tuple[int, int]] = {}
    run_ks_memo: dict[tuple[int, int], tuple[Fraction, ...]] = {}

    def run_type(i: int, j: int) -> tuple[int, int]:
        if (i, j) not in run_type_memo:
            run_type_memo[(i, j)] = cone_type(anchor[i], anchor[j])
        return run_type_memo[(i, j)]

    def run_ok(i: int, j: int) -> bool:
        t = run_type(i, j)
        return t == SMOOTH or t_classify(*t) is not None

    def run_ks(i: int, j: int) -> tuple[Fraction, ...]:
        # discrepancies of the contracted rays strictly between anchors i, j
        if (i, j) not in run_ks_memo:
            run_ks_memo[(i, j)] = discrepancies(bs[i: j - 1])
        return run_ks_memo[(i, j)]

    def kd(p: int, i: int, j: int) -> Fraction:
        d = Fraction(bs[p - 1] - 2)
        left, right = run_ks(i, p), run_ks(p, j)
        if left:
            d -= left[-1]
        if right:
            d -= right[0]
        return d

    results: list[tuple[int, ...]] = []

    def dfs(prev: Optional[int], last_anchor: int, acc: tuple[int, ...]):
        for nxt in range(last_anchor + 1, m + 2):
            if not run_ok(last_anchor, nxt):
                continue
            if last_anchor != 0 and kd(last_anchor, prev, nxt) <= 0:
                continue
            if nxt == m + 1:
                results.append(acc)
            else:
                dfs(last_anchor, nxt, acc + (nxt,))

    dfs(None, 0, ())

    entries = []
    for positions in sorted(results, key=lambda t: (len(t), t)):
        pr = PartialResolution(n, a, tuple(rays[p - 1] for p in positions))
        rep = canonical_degrees(pr)
        ok, cert = is_p_resolution(pr)
        assert ok, f"enumeration produced a non-P-resolution: {cert}"
        entries.append(PResolutionEntry(pr, rep.vertex_types, rep.k_degrees))
    return entries


@dataclass(frozen=True)
class MonotoneReport:
    k_signs: tuple[int, ...]
    classification: str


def monotone_type(pr: PartialResolution) -> MonotoneReport:
    """Side of the monotone boundary for a one-curve partial resolution.

    K.D < 0 on the kept curve means "positive", K.D > 0 "negative", and
    K.D = 0 "exact-boundary".
    """
    if len(pr.kept) != 1:
        raise ValueError("monotone type needs exactly one kept ray")
    rep = canonical_degrees(pr)
    d = rep.k_degrees[0]
    sign = (d > 0) - (d < 0)
    label = {1: "negative", -1: "positive", 0: "exact-boundary"}[sign]
    return MonotoneReport((sign,), label)
