"""
Hypertangent schedules at the singular point and the ratio chain that
excludes a maximal singularity there.

Only the combinatorics is tracked: which truncations are available at
each level b, the slopes (b+1)/b of the resulting divisors in standard
order, and the exact product of slopes along the chain of cycles.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import Dict, Optional, Tuple

from .params import RigidityParams, Verdict

logger = logging.getLogger(__name__)

SEED_FACTOR = 4
# The chain starts at the codimension-2 cycle, so the first two slopes are skipped.
SKIPPED_SLOPES = 2


@dataclass(frozen=True)
class HypertangentSchedule:
    """
    Counting functions and slopes of the hypertangent divisors.

    Attributes:
        a: First level with c(a) >= 1, None for a degenerate schedule
        c_table: c(j) for j = 1 ... d_k - 1
        m_table: m(j) = c(j) - c(j-1)
        slopes: (b+1)/b with multiplicity m(b), ascending b
        divisors: labels (b, alpha) of D_{b,alpha}, aligned with slopes
        m_total: number of hypertangent divisors
    """
    a: Optional[int]
    c_table: Dict[int, int]
    m_table: Dict[int, int]
    slopes: Tuple[Fraction, ...]
    divisors: Tuple[Tuple[int, int], ...]
    m_total: int
    degenerate: bool = False

    @property
    def levels(self) -> Tuple[int, ...]:
        return tuple(sorted(self.c_table))


@dataclass(frozen=True)
class ChainStep:
    index: int
    slope: Fraction
    bound: Fraction


@dataclass(frozen=True)
class RatioChain:
    """mult/deg along Y_2, ..., Y_m, normalised by n^2."""
    seed: Fraction
    steps: Tuple[ChainStep, ...]
    final_bound: Fraction
    short_chain: bool = False


@dataclass(frozen=True)
class Certificate:
    ok: bool
    margin: Fraction
    explanation: str = field(default="", compare=False)


def c_of_j(p: RigidityParams, j: int) -> int:
    """Number of pairs (i, alpha) with xi_i <= alpha <= min(j, d_i - 1)."""
    return sum(max(0, min(j, d - 1) - xi + 1) for d, xi in p.pairs())


def level_pairs(p: RigidityParams, b: int) -> Tuple[Tuple[int, int], ...]:
    """Truncations f_{i,b} contributing new divisors at level b (1-based i)."""
    return tuple(
        (i, b) for i, (d, xi) in enumerate(p.pairs(), start=1)
        if xi <= b <= d - 1
    )


def build_schedule(p: RigidityParams) -> HypertangentSchedule:
    """Tabulate c(j), m(j) and the slopes in standard order."""
    top = p.d_k - 1
    c_table = {j: c_of_j(p, j) for j in range(1, top + 1)}
    m_table = {j: c_table[j] - c_table.get(j - 1, 0) for j in c_table}

    slopes = []
    divisors = []
    for b in range(1, top + 1):
        slopes.extend([Fraction(b + 1, b)] * m_table[b])
        divisors.extend((b, alpha) for alpha in range(1, m_table[b] + 1))

    m_total = c_table.get(top, 0)
    if m_total == 0:
        logger.warning(f"Degenerate hypertangent schedule for {p}: every equation is a cone")
        return HypertangentSchedule(a=None, c_table=c_table, m_table=m_table, slopes=(),
                                    divisors=(), m_total=0, degenerate=True)

    a = min(j for j, c in c_table.items() if c >= 1)
    return HypertangentSchedule(a=a, c_table=c_table, m_table=m_table, slopes=tuple(slopes),
                                divisors=tuple(divisors), m_total=m_total)


def slope_product(s: HypertangentSchedule) -> Fraction:
    """Exact product of all slopes; 1 for the empty schedule."""
    return prod(s.slopes, start=Fraction(1))


def telescoping_check(p: RigidityParams, s: HypertangentSchedule) -> Verdict:
    """slope_product * mu must equal d exactly."""
    return Verdict.equal('slope_telescoping', slope_product(s) * p.mu, Fraction(p.deg_v))


def ratio_chain(p: RigidityParams, s: HypertangentSchedule, reverse_steps: bool = False) -> RatioChain:
    """
    Multiply the seed 4*mu/d by beta_3, ..., beta_m.

    With reverse_steps the same factors are applied from beta_m down to
    beta_3; only the intermediate bounds change.
    """
    seed = Fraction(SEED_FACTOR * p.mu, p.deg_v)
    indexed = list(enumerate(s.slopes, start=1))[SKIPPED_SLOPES:]
    if reverse_steps:
        indexed.reverse()

    steps = []
    bound = seed
    for index, slope in indexed:
        bound *= slope
        steps.append(ChainStep(index=index, slope=slope, bound=bound))

    short = s.m_total < SKIPPED_SLOPES + 1
    if short:
        logger.warning(f"Short hypertangent chain (m={s.m_total}) for {p}")
    return RatioChain(seed=seed, steps=tuple(steps), final_bound=bound, short_chain=short)


def certify_exclusion(chain: RatioChain) -> Certificate:
    """
    ok iff the final normalised ratio is at least 1.

    The seed comes from a strict inequality, so a final bound >= 1 means
    mult_o Y_m > deg Y_m, which no subvariety satisfies.
    """
    margin = chain.final_bound - 1
    ok = chain.final_bound >= 1
    explanation = (
        f"mult/deg of the last cycle exceeds {chain.final_bound} strictly; "
        + ("this contradicts mult <= deg, so o is not a maximal singularity" if ok
           else "no contradiction is reached")
    )
    return Certificate(ok=ok, margin=margin, explanation=explanation)
