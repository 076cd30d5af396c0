"""
Enumeration of admissible parameter tuples and survey statistics.

Degree vectors are sorted compositions of M + k; multiplicity vectors are
nested inside, pruned by the dimension inequality's budget. Work is split
by the leading degree d_1 and merged back in lexicographic order, so the
output never depends on the worker count.
"""

import logging
import multiprocessing
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .codim import theorem21_assemble
from .conf import lab_setting
from .exceptions import ResourceError
from .hypertangent import build_schedule, certify_exclusion, ratio_chain
from .params import (
    DegreeVector,
    MultiplicityVector,
    RigidityParams,
    check_dimension_inequality,
    check_main_inequality,
    iter_degree_vectors,
    mu_over_d,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AdmissibleRecord:
    """One admissible tuple with the statistics the survey aggregates."""
    params: RigidityParams
    mu_over_d: Fraction
    m_total: int
    final_bound: Fraction
    all_codim_ok: bool
    eq1_lhs: int
    eq1_rhs: int
    eq2_ok: bool
    exclusion_ok: bool

    def sort_key(self) -> Tuple:
        return self.params.sort_key()


@dataclass(frozen=True)
class SurveySummary:
    count: int
    max_ratio: Optional[Fraction]
    max_ratio_witness: Optional[RigidityParams]
    min_m: Optional[int]
    min_m_witness: Optional[RigidityParams]
    failures: Tuple[AdmissibleRecord, ...]
    max_ratio_by_M: Dict[int, Fraction] = field(default_factory=dict)
    count_by_k: Dict[int, int] = field(default_factory=dict)
    trend_non_decreasing: bool = True

    @property
    def empty(self) -> bool:
        return self.count == 0


def _multiplicity_vectors(degrees: Sequence[int], budget: int) -> Iterator[Tuple[int, ...]]:
    """
    Yield xi with 1 <= xi_i <= d_i and sum over xi_i >= 2 of (xi_i + 1) <= budget.

    Lexicographic order.
    """
    def extend(prefix: Tuple[int, ...], remaining: int):
        position = len(prefix)
        if position == len(degrees):
            yield prefix
            return
        yield from extend(prefix + (1,), remaining)
        for xi in range(2, min(degrees[position], remaining - 1) + 1):
            yield from extend(prefix + (xi,), remaining - xi - 1)

    yield from extend((), budget)


def build_record(p: RigidityParams) -> AdmissibleRecord:
    """Compute every statistic of an admissible tuple."""
    eq1 = check_main_inequality(p)
    eq2 = check_dimension_inequality(p)
    schedule = build_schedule(p)
    chain = ratio_chain(p, schedule)
    return AdmissibleRecord(
        params=p,
        mu_over_d=mu_over_d(p),
        m_total=schedule.m_total,
        final_bound=chain.final_bound,
        all_codim_ok=theorem21_assemble(p).certified,
        eq1_lhs=eq1.lhs,
        eq1_rhs=eq1.rhs,
        eq2_ok=eq2.holds,
        exclusion_ok=certify_exclusion(chain).ok,
    )


def _records_for_lead(task: Tuple[int, int, int]) -> List[AdmissibleRecord]:
    k, M, lead = task
    records = []
    for degrees in iter_degree_vectors(k, M, first=lead):
        for xi in _multiplicity_vectors(degrees, M - 3):
            p = RigidityParams(k=k, M=M, degrees=DegreeVector(degrees), multiplicities=MultiplicityVector(xi))
            # the budget already enforces the dimension inequality
            if check_main_inequality(p).holds:
                records.append(build_record(p))
    return records


def projected_size(k: int, M_values: Iterable[int]) -> int:
    """Number of candidate (d, xi) pairs before pruning."""
    return sum(prod(d) for M in M_values for d in iter_degree_vectors(k, M))


def _valid_M(k: int, M_range: Iterable[int]) -> List[int]:
    values = sorted(set(M_range))
    skipped = [M for M in values if M < 2 * k + 1]
    if skipped:
        logger.debug(f"Skipping M={skipped} below 2k+1 for k={k}")
    return [M for M in values if M >= 2 * k + 1]


def _check_cap(size: int, cap: Optional[int]) -> None:
    cap = lab_setting('ENUMERATION_CAP') if cap is None else cap
    if size > cap:
        raise ResourceError(f"projected enumeration of {size} candidate tuples exceeds the cap {cap}")


def enumerate_admissible(k: int, M_range: Iterable[int], cap: Optional[int] = None,
                         parallel: Optional[int] = None) -> Iterator[AdmissibleRecord]:
    """
    Yield every admissible tuple for k and M in M_range, lexicographically.

    Raises:
        ResourceError: If the projected candidate count exceeds the cap
    """
    if k < 2:
        raise ValueError(f"k must be at least 2, got {k}")
    M_values = _valid_M(k, M_range)
    _check_cap(projected_size(k, M_values), cap)

    tasks = [
        (k, M, lead)
        for M in M_values
        for lead in sorted({d[0] for d in iter_degree_vectors(k, M)})
    ]
    workers = lab_setting('PARALLEL') if parallel is None else parallel
    if workers <= 1 or len(tasks) <= 1:
        for task in tasks:
            yield from _records_for_lead(task)
        return

    with multiprocessing.Pool(processes=min(workers, len(tasks))) as pool:
        # map keeps task order, which is the lexicographic order
        for chunk in pool.map(_records_for_lead, tasks):
            yield from chunk


def summarize(records: Iterable[AdmissibleRecord], k_values: Iterable[int] = ()) -> SurveySummary:
    """
    Aggregate records: extremes, per-M maximal ratio, per-k counts, failures.

    Every k in k_values gets a count, zero included.
    """
    count = 0
    best_ratio = best_ratio_params = None
    min_m = min_m_params = None
    failures = []
    max_ratio_by_M: Dict[int, Fraction] = {}
    count_by_k: Dict[int, int] = {k: 0 for k in k_values}

    for record in records:
        p = record.params
        count += 1
        count_by_k[p.k] = count_by_k.get(p.k, 0) + 1
        if best_ratio is None or record.mu_over_d > best_ratio:
            best_ratio, best_ratio_params = record.mu_over_d, p
        if min_m is None or record.m_total < min_m:
            min_m, min_m_params = record.m_total, p
        if record.mu_over_d > max_ratio_by_M.get(p.M, Fraction(0)):
            max_ratio_by_M[p.M] = record.mu_over_d
        if not (record.all_codim_ok and record.exclusion_ok):
            logger.warning(f"Admissible tuple fails a certificate: {p}")
            failures.append(record)

    ordered = [max_ratio_by_M[M] for M in sorted(max_ratio_by_M)]
    return SurveySummary(
        count=count,
        max_ratio=best_ratio,
        max_ratio_witness=best_ratio_params,
        min_m=min_m,
        min_m_witness=min_m_params,
        failures=tuple(failures),
        max_ratio_by_M=dict(sorted(max_ratio_by_M.items())),
        count_by_k=dict(sorted(count_by_k.items())),
        trend_non_decreasing=all(a <= b for a, b in zip(ordered, ordered[1:])),
    )


def enumerate_range(k_range: Iterable[int], M_range: Iterable[int], cap: Optional[int] = None,
                    parallel: Optional[int] = None) -> Iterator[AdmissibleRecord]:
    """
    enumerate_admissible over every k of k_range, with one cap check for the whole range.

    Raises:
        ResourceError: If the projected candidate count exceeds the cap
    """
    k_values = sorted(set(k_range))
    M_values = sorted(set(M_range))
    _check_cap(sum(projected_size(k, _valid_M(k, M_values)) for k in k_values), cap)
    for k in k_values:
        yield from enumerate_admissible(k, M_values, cap=cap, parallel=parallel)


def survey(k_range: Iterable[int], M_range: Iterable[int], cap: Optional[int] = None,
           parallel: Optional[int] = None) -> SurveySummary:
    """
    Aggregate admissible tuples over ranges of k and M.

    Raises:
        ResourceError: If the projected candidate count exceeds the cap
    """
    k_values = sorted(set(k_range))
    M_values = sorted(set(M_range))
    summary = summarize(enumerate_range(k_values, M_values, cap=cap, parallel=parallel), k_values)

    if summary.empty:
        logger.warning(f"Empty survey for k={k_values}, M={M_values[:1]}..{M_values[-1:]}")
    else:
        logger.info(f"Surveyed {summary.count} admissible tuples; max mu/d={summary.max_ratio}, "
                    f"min m={summary.min_m}, failures={len(summary.failures)}")
    return summary
