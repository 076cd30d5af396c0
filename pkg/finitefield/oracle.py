"""
Exhaustive point counting over GF(p)^N and the regular-sequence probe.

A list of forms behaves like a regular sequence when each new form cuts
the number of common zeros by about a factor p. Counts are exact; only
the threshold is heuristic.
"""

import logging
import multiprocessing
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from rigidity.conf import lab_setting
from rigidity.params import RigidityParams

from .poly import MultiPoly
from .sampling import TupleSample, check_budget, random_tuple

logger = logging.getLogger(__name__)

# Points evaluated per numpy block.
BLOCK_POINTS = 2 ** 20


@dataclass(frozen=True)
class RegularityVerdict:
    """
    Attributes:
        counts: N(s') for s' = 1 ... s
        thresholds: threshold_factor * p^(N - s') for the same prefixes
        passed: Every count is within its threshold
        first_failure: Smallest failing prefix length, None when passed
    """
    counts: Tuple[int, ...]
    thresholds: Tuple[Fraction, ...]
    passed: bool
    first_failure: Optional[int] = None


@dataclass(frozen=True)
class BatchStatistics:
    trials: int
    passes: int
    pass_rate: Fraction
    # prefix length -> {count: number of seeds}
    count_distributions: Dict[int, Dict[int, int]] = field(default_factory=dict)
    failing_seeds: Tuple[int, ...] = ()
    verdicts: Tuple[RegularityVerdict, ...] = field(default=(), compare=False, repr=False)


def _block_split(prime: int, nvars: int) -> int:
    """Number of leading coordinates fixed per block."""
    fixed = 0
    while fixed < nvars and prime ** (nvars - fixed) > BLOCK_POINTS:
        fixed += 1
    return fixed


def _tail_grid(prime: int, width: int) -> np.ndarray:
    """Every point of GF(p)^width as rows, last coordinate fastest."""
    if width == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return np.indices((prime,) * width, dtype=np.int64).reshape(width, -1).T


def _block_prefixes(prime: int, fixed: int) -> List[Tuple[int, ...]]:
    return [tuple(int(v) for v in row) for row in _tail_grid(prime, fixed)]


def _count_block(task) -> np.ndarray:
    """Surviving point counts after each form, for points whose head is fixed."""
    forms, prime, nvars, head = task
    tail = _tail_grid(prime, nvars - len(head))
    points = np.hstack([np.tile(np.array(head, dtype=np.int64), (tail.shape[0], 1)), tail])
    counts = np.zeros(len(forms), dtype=np.int64)
    for position, form in enumerate(forms):
        if points.shape[0] == 0:
            break
        points = points[form.evaluate_many(points) == 0]
        counts[position] = points.shape[0]
    return counts


def prefix_zero_counts(forms: Sequence[MultiPoly], prime: int, nvars: int,
                       cap: Optional[int] = None, parallel: Optional[int] = None) -> List[int]:
    """
    Common zeros of forms[:1], forms[:2], ..., forms[:s] in GF(p)^nvars.

    Each form is evaluated only on the zeros of the previous ones. Blocks of
    points are independent and their counts are summed.

    Raises:
        BudgetError: If prime^nvars exceeds the enumeration cap
    """
    check_budget(prime, nvars, cap)
    for form in forms:
        if (form.nvars, form.prime) != (nvars, prime):
            raise ValueError(f"form over {form.nvars} vars and GF({form.prime}) "
                             f"does not live in GF({prime})^{nvars}")
    if not forms:
        return []

    tasks = [(list(forms), prime, nvars, head) for head in _block_prefixes(prime, _block_split(prime, nvars))]
    workers = lab_setting('PARALLEL') if parallel is None else parallel
    if workers > 1 and len(tasks) > 1:
        with multiprocessing.Pool(processes=min(workers, len(tasks))) as pool:
            partials = pool.map(_count_block, tasks)
    else:
        partials = [_count_block(task) for task in tasks]
    return [int(c) for c in np.sum(partials, axis=0)]


def count_affine_zeros(polys: Sequence[MultiPoly], prime: int, nvars: int,
                       cap: Optional[int] = None, parallel: Optional[int] = None) -> int:
    """
    Exact number of common zeros in GF(p)^nvars; p^nvars for an empty list.

    Raises:
        BudgetError: If prime^nvars exceeds the enumeration cap
    """
    size = check_budget(prime, nvars, cap)
    if not polys:
        return size
    return prefix_zero_counts(polys, prime, nvars, cap=cap, parallel=parallel)[-1]


def check_forms(forms: Sequence[MultiPoly], prime: int, nvars: int,
                threshold_factor: Optional[Fraction] = None, cap: Optional[int] = None,
                parallel: Optional[int] = None) -> RegularityVerdict:
    """Compare N(s') with threshold_factor * p^(N - s') for every prefix of forms."""
    factor = lab_setting('THRESHOLD_FACTOR') if threshold_factor is None else Fraction(threshold_factor)
    counts = prefix_zero_counts(forms, prime, nvars, cap=cap, parallel=parallel)
    thresholds = [factor * Fraction(prime) ** (nvars - s) for s in range(1, len(counts) + 1)]
    first_failure = next(
        (s for s, (n, t) in enumerate(zip(counts, thresholds), start=1) if n > t),
        None,
    )
    return RegularityVerdict(
        counts=tuple(counts),
        thresholds=tuple(thresholds),
        passed=first_failure is None,
        first_failure=first_failure,
    )


def check_R02(sample: TupleSample, threshold_factor: Optional[Fraction] = None,
              cap: Optional[int] = None, parallel: Optional[int] = None) -> RegularityVerdict:
    """
    Probe whether the forms q_{i,j}, in (i, j) order, behave like a regular sequence.

    Raises:
        BudgetError: If prime^(M+k) exceeds the enumeration cap
    """
    verdict = check_forms(sample.forms(), sample.prime, sample.nvars,
                          threshold_factor=threshold_factor, cap=cap, parallel=parallel)
    logger.debug(f"Seed {sample.seed}: counts={verdict.counts} passed={verdict.passed}")
    return verdict


def _check_seed(task) -> RegularityVerdict:
    p, prime, seed, threshold_factor, cap, sampler = task
    return check_R02(sampler(p, prime, seed, cap=cap), threshold_factor=threshold_factor,
                     cap=cap, parallel=1)


def check_R02_batch(p: RigidityParams, prime: int, seeds: Sequence[int],
                    threshold_factor: Optional[Fraction] = None, cap: Optional[int] = None,
                    parallel: Optional[int] = None,
                    sampler: Callable[..., TupleSample] = random_tuple) -> BatchStatistics:
    """
    Run check_R02 on one sample per seed and aggregate.

    Seeds are distributed over workers and merged back in input order, so
    the statistics do not depend on the worker count. ``sampler`` must be a
    module-level function when parallel.

    Raises:
        BudgetError: If prime^(M+k) exceeds the enumeration cap
    """
    seeds = list(seeds)
    check_budget(prime, p.M + p.k, cap)
    if threshold_factor is None:
        threshold_factor = lab_setting('THRESHOLD_FACTOR')
    tasks = [(p, prime, seed, threshold_factor, cap, sampler) for seed in seeds]

    workers = lab_setting('PARALLEL') if parallel is None else parallel
    if workers > 1 and len(tasks) > 1:
        with multiprocessing.Pool(processes=min(workers, len(tasks))) as pool:
            verdicts = pool.map(_check_seed, tasks)
    else:
        verdicts = [_check_seed(task) for task in tasks]

    passes = sum(1 for v in verdicts if v.passed)
    distributions: Dict[int, Counter] = {}
    for verdict in verdicts:
        for s, n in enumerate(verdict.counts, start=1):
            distributions.setdefault(s, Counter())[n] += 1

    pass_rate = Fraction(passes, len(seeds)) if seeds else Fraction(0)
    logger.info(f"Regularity probe for {p} over GF({prime}): {passes}/{len(seeds)} seeds passed")
    return BatchStatistics(
        trials=len(seeds),
        passes=passes,
        pass_rate=pass_rate,
        count_distributions={s: dict(sorted(c.items())) for s, c in sorted(distributions.items())},
        failing_seeds=tuple(seed for seed, v in zip(seeds, verdicts) if not v.passed),
        verdicts=tuple(verdicts),
    )
