"""Exceptional chains, discrepancies, and blow-up combinatorics.

A chain is the dual graph of a string of rational curves with
self-intersections -b_1, ..., -b_l.  The discrepancy vector k solves

    k_{i-1} - b_i k_i + k_{i+1} = b_i - 2,   k_0 = k_{l+1} = 0,

and alpha_i = k_i + 1 are the shifted discrepancies used to steer blow-ups.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .cqs import DegenerateChainError, check_type, hj_expand


def discrepancies(bs) -> tuple[Fraction, ...]:
    """Solve the tridiagonal discrepancy system for a chain.

    Entries may be any integers >= 1.  Raises DegenerateChainError when the
    intersection matrix is singular (the chain does not contract).
    """
    bs = tuple(bs)
    for b in bs:
        if not isinstance(b, int) or b < 1:
            raise ValueError("chain entries must be integers >= 1")
    l = len(bs)
    if l == 0:
        return ()
    # Thomas sweep on diag(-b) with unit off-diagonals, rhs b - 2.
    cp: list[Fraction] = [Fraction(0)] * l
    dp: list[Fraction] = [Fraction(0)] * l
    m = Fraction(-bs[0])
    cp[0] = Fraction(1) / m
    dp[0] = Fraction(bs[0] - 2) / m
    for j in range(1, l):
        m = -bs[j] - cp[j - 1]
        if m == 0:
            raise DegenerateChainError("degenerate")
        cp[j] = Fraction(1) / m
        dp[j] = (bs[j] - 2 - dp[j - 1]) / m
    ks = [Fraction(0)] * l
    ks[l - 1] = dp[l - 1]
    for j in range(l - 2, -1, -1):
        ks[j] = dp[j] - cp[j] * ks[j + 1]
    return tuple(ks)


def singularity_class(ks) -> str:
    """Classify by the worst discrepancy: terminal > canonical > log-terminal
    > log-canonical > worse."""
    ks = [Fraction(k) for k in ks]
    if all(k > 0 for k in ks):
        return "terminal"
    if all(k >= 0 for k in ks):
        return "canonical"
    if all(k > -1 for k in ks):
        return "log-terminal"
    if all(k >= -1 for k in ks):
        return "log-canonical"
    return "worse"


@dataclass(frozen=True)
class Chain:
    """A chain of exceptional curves together with its discrepancies."""

    bs: tuple[int, ...]
    ks: tuple[Fraction, ...]

    @staticmethod
    def from_bs(bs) -> "Chain":
        bs = tuple(bs)
        return Chain(bs, discrepancies(bs))

    @staticmethod
    def minimal(n: int, a: int) -> "Chain":
        check_type(n, a)
        return Chain.from_bs(hj_expand(n, a))

    @property
    def alphas(self) -> tuple[Fraction, ...]:
        return tuple(k + 1 for k in self.ks)

    def __len__(self) -> int:
        return len(self.bs)


def is_admissible(chain: Chain, i: int) -> bool:
    """Can the point where curves i and i+1 meet be blown up towards the
    maximal resolution?  Criterion: alpha_i + alpha_{i+1} < 1."""
    return chain.ks[i] + chain.ks[i + 1] + 1 < 0


def blow_up(chain: Chain, i: int) -> Chain:
    """Blow up the intersection point of curves i and i+1 (0-based).

    Both neighbours gain 1, a -1-curve is inserted between them, and its
    discrepancy is k_i + k_{i+1} + 1; the old discrepancies carry over
    unchanged (the enlarged system is still solved exactly).
    """
    if not (0 <= i < len(chain) - 1):
        raise IndexError("blow-up index must name an adjacent pair")
    bs = chain.bs[: i] + (chain.bs[i] + 1, 1, chain.bs[i + 1] + 1) + chain.bs[i + 2:]
    k_new = chain.ks[i] + chain.ks[i + 1] + 1
    ks = chain.ks[: i + 1] + (k_new,) + chain.ks[i + 1:]
    return Chain(bs, ks)


def blow_up_free(chain: Chain, side: str) -> Chain:
    """Blow up a free point of an end curve ("left" or "right" end).

    The end curve gains 1 and a -1-curve with discrepancy k_end + 1 is
    attached outside it.  Used to build non-minimal test chains.
    """
    if len(chain) == 0:
        raise ValueError("cannot blow up the empty chain")
    if side == "left":
        bs = (1, chain.bs[0] + 1) + chain.bs[1:]
        ks = (chain.ks[0] + 1,) + chain.ks
    elif side == "right":
        bs = chain.bs[:-1] + (chain.bs[-1] + 1, 1)
        ks = chain.ks + (chain.ks[-1] + 1,)
    else:
        raise ValueError("side must be 'left' or 'right'")
    return Chain(bs, ks)


def maximal_resolution(n: int, a: int, rng: random.Random | None = None) -> Chain:
    """Greedy closure of admissible interior blow-ups from the minimal chain.

    The result is independent of the order in which admissible pairs are
    chosen; pass an rng to randomize the order (used by tests).
    """
    chain = Chain.minimal(n, a)
    while True:
        options = [i for i in range(max(len(chain) - 1, 0)) if is_admissible(chain, i)]
        if not options:
            return chain
        chain = blow_up(chain, options[0] if rng is None else rng.choice(options))
