"""Cyclic quotient singularity types 1/n(1,a).

A type is an ordinary pair ``(n, a)`` with ``n >= 1`` and ``0 <= a < n``,
``gcd(n, a) = 1``; the smooth point is ``(1, 0)``.  This module converts
between types, negative continued fractions, lattice corner data, and the
special T-family with its Milnor fibre invariants.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import NamedTuple, Optional

from .lattice import Mat, Vec, det2, mat_det, xgcd

SMOOTH = (1, 0)


class DegenerateChainError(ValueError):
    """A chain that does not contract: some partial evaluation was <= 0."""


def check_type(n: int, a: int) -> tuple[int, int]:
    if not (isinstance(n, int) and isinstance(a, int)):
        raise TypeError("type parameters must be integers")
    if n < 1 or not (0 <= a < n) or gcd(n, a) != 1:
        raise ValueError(f"invalid singularity type ({n},{a}): need 0 <= a < n, gcd(n,a)=1")
    return (n, a)


def hj_expand(n: int, a: int) -> list[int]:
    """Continued fraction n/a = [b1, ..., bl], all b_i >= 2; [] for (1, 0).

    Expansion rule: b = ceil(n/a), then recurse on (a, b*a - n).
    """
    check_type(n, a)
    bs: list[int] = []
    while a:
        b = -(-n // a)
        bs.append(b)
        n, a = a, b * a - n
    assert n == 1
    return bs


def hj_eval(bs: list[int]) -> tuple[int, int]:
    """Contract a chain back to its type (n, a).

    Evaluates b1 - 1/(b2 - 1/(... )) right to left.  Entries b_i = 1 are
    allowed (blown-up chains); the value is then n/q with q possibly >= n
    and the type is (n, q mod n).  Raises DegenerateChainError as soon as a
    partial value is <= 0, including the final one.
    """
    for b in bs:
        if not isinstance(b, int) or b < 1:
            raise ValueError("chain entries must be integers >= 1")
    v: Optional[Fraction] = None
    for b in reversed(bs):
        v = Fraction(b) if v is None else b - 1 / v
        if v <= 0:
            raise DegenerateChainError("degenerate")
    if v is None:
        return SMOOTH
    n, q = v.numerator, v.denominator
    return (n, q % n)


class TData(NamedTuple):
    """Parameters of a T-type 1/(d p^2)(1, d p q - 1); smooth = (1, 1, 1)."""

    d: int
    p: int
    q: int


def t_classify(n: int, a: int) -> Optional[TData]:
    """TData for (n, a) if it lies in the T-family, else None.

    Searches p with p^2 | n; for each, q must solve d p q = a + 1 (mod n)
    with 1 <= q <= p and gcd(p, q) = 1.  The solution is unique when it
    exists (asserted).
    """
    check_type(n, a)
    if (n, a) == SMOOTH:
        return TData(1, 1, 1)
    found: list[TData] = []
    p = 1
    while p * p <= n:
        if n % (p * p) == 0:
            d = n // (p * p)
            if (a + 1) % (d * p) == 0:
                q = ((a + 1) // (d * p)) % p
                if p == 1:
                    q = 1
                if 1 <= q and gcd(p, q) == 1 and (d * p * q - 1) % n == a:
                    found.append(TData(d, p, q))
        p += 1
    assert len(found) <= 1, f"T-parameters not unique for ({n},{a}): {found}"
    return found[0] if found else None


@dataclass(frozen=True)
class MilnorInvariants:
    """Topology of the Milnor fibre B of a T-type smoothing."""

    t: TData
    lens: tuple[int, int]        # boundary lens space L(n, a)
    h1_order: int                # |H_1(B)| = p
    h2_rank: int                 # rank H_2(B) = d - 1
    rational_ball: bool          # d == 1


def milnor_invariants(t: TData) -> MilnorInvariants:
    d, p, q = t
    n = d * p * p
    a = (d * p * q - 1) % n
    return MilnorInvariants(t=t, lens=(n, a), h1_order=p, h2_rank=d - 1,
                            rational_ball=(d == 1))


def normalize_corner(e1: Vec, e2: Vec) -> tuple[tuple[int, int], Mat]:
    """Type and change of basis for the lattice corner spanned by e1, e2.

    Preconditions: e1, e2 primitive with det2(e1, e2) = -n < 0.  Returns
    ((n, a), M) where M is the unimodular matrix (det +1) with
    M (0, 1) = e1 and M (n, a) = e2; a is the unique residue mod n with
    e2 = a * e1 (mod n).
    """
    d = det2(e1, e2)
    if d >= 0:
        raise ValueError("corner determinant must be negative")
    n = -d
    g, u, v = xgcd(e1[0], e1[1])
    if g != 1 or gcd(e2[0], e2[1]) != 1:
        raise ValueError("corner edge vectors must be primitive")
    a = (u * e2[0] + v * e2[1]) % n
    if (e2[0] - a * e1[0]) % n or (e2[1] - a * e1[1]) % n:
        raise ValueError("corner has no lattice normal form")  # unreachable for primitive input
    c1 = ((e2[0] - a * e1[0]) // n, (e2[1] - a * e1[1]) // n)
    m: Mat = ((c1[0], e1[0]), (c1[1], e1[1]))
    assert mat_det(m) == 1
    assert gcd(n, a) == 1
    return (n, a), m


def type_label(n: int, a: int) -> str:
    return "smooth" if (n, a) == SMOOTH else f"1/{n}(1,{a})"


def fibre_label(t: TData) -> str:
    """Label for the Milnor fibre: B_{p,q}, or B_{d,p,q} when d > 1."""
    d, p, q = t
    return f"B_{{{p},{q}}}" if d == 1 else f"B_{{{d},{p},{q}}}"
