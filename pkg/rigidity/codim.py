"""
Codimension counts for the regularity conditions at non-singular points.

Each function returns an integer count or a Verdict comparing it with its
threshold. The geometric sets behind the counts (lines through the
tangent point, components of good sequences, linear spans) are never
built; only their codimensions are computed, exactly.

Closed forms are paired with brute-force minimisations so that the two
can be compared in tests and in assemble runs.
"""

import logging
from dataclasses import dataclass
from math import comb
from typing import Iterator, List, Optional, Sequence, Tuple

from .exceptions import InternalError
from .params import DegreeVector, RigidityParams, Verdict, iter_degree_vectors

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DegreeMultiset:
    """Degrees of p_1, ..., p_{M-1} in standard (non-decreasing) order."""
    degrees: Tuple[int, ...]

    def __len__(self) -> int:
        return len(self.degrees)

    def __iter__(self) -> Iterator[int]:
        return iter(self.degrees)

    def __getitem__(self, index):
        return self.degrees[index]


@dataclass(frozen=True)
class SumDegMinimum:
    min_value: int
    argmin: Tuple[DegreeVector, ...]


@dataclass(frozen=True)
class Prop23Bound:
    """
    Lower bound for codim(B_i) from the good-sequence count.

    closed_form uses the endpoints of the b-range, brute_force every b;
    display is the simplified minimum shown in reports.
    """
    i: int
    b_max: int
    closed_form: int
    brute_force: int
    display: int

    @property
    def diverges(self) -> bool:
        return self.display != self.closed_form


@dataclass(frozen=True)
class CodimReport:
    """Every quantity behind the codimension estimate at non-singular points, with verdicts."""
    params: RigidityParams
    sum_deg: Verdict
    # sum_deg of the balanced vector, the minimum over all d for (k, M)
    lemma21: Verdict
    b_minus_line: Verdict
    b_plus_line: Verdict
    prop22: Verdict
    special_union: Verdict
    lemma22_counts: Tuple[Verdict, ...]
    lemma23_count: Verdict
    remark21_binomials: Tuple[Verdict, ...]
    remark21_floor: Verdict
    prop23: Tuple[Verdict, ...]
    prop23_endgame: Optional[Verdict]
    prop21: Verdict
    theorem21_total: Verdict
    identity_total: int
    point_conditions: int
    linear_dependence: int
    display_divergences: Tuple[int, ...] = ()

    def records(self) -> List[Verdict]:
        """All verdicts in report order."""
        rows = [self.sum_deg, self.lemma21, self.b_minus_line, self.b_plus_line, self.prop22,
                self.special_union]
        rows.extend(self.lemma22_counts)
        rows.append(self.lemma23_count)
        rows.extend(self.remark21_binomials)
        rows.append(self.remark21_floor)
        rows.extend(self.prop23)
        if self.prop23_endgame is not None:
            rows.append(self.prop23_endgame)
        rows.extend([self.prop21, self.theorem21_total])
        return rows

    @property
    def certified(self) -> bool:
        return all(record.holds for record in self.records())


def standard_degrees(p: RigidityParams) -> DegreeMultiset:
    """
    Degrees j, 2 <= j <= d_i, over all i, without the last pair (k, d_k).

    Raises:
        InternalError: If the multiset does not have M - 1 entries
    """
    degrees = [j for d in p.degrees for j in range(2, d + 1)]
    degrees.remove(p.d_k)
    if len(degrees) != p.M - 1:
        raise InternalError(f"standard degrees of {p} have length {len(degrees)}, expected {p.M - 1}")
    return DegreeMultiset(tuple(sorted(degrees)))


def sum_deg_of_degrees(degrees: Sequence[int]) -> int:
    """Closed form of sum(deg p_i) for a sorted degree vector."""
    *head, last = degrees
    return sum(d * (d + 1) // 2 for d in head) + (last - 1) * last // 2 - len(degrees)


def sum_deg(p: RigidityParams) -> int:
    """
    sum_{i<k} d_i(d_i+1)/2 + (d_k-1)d_k/2 - k.

    Raises:
        InternalError: If the closed form disagrees with the direct sum
    """
    value = sum_deg_of_degrees(p.degrees.entries)
    direct = sum(standard_degrees(p))
    if value != direct:
        raise InternalError(f"sum_deg closed form {value} != direct sum {direct} for {p}")
    return value


def lemma21_check(p: RigidityParams) -> Verdict:
    return Verdict.at_least('lemma21', sum_deg(p), 2 * p.M - 2)


def balanced_degrees(k: int, M: int) -> DegreeVector:
    """With M = k*a + l: (a+1) repeated k-l times, then (a+2) repeated l times."""
    a, l = divmod(M, k)
    return DegreeVector((a + 1,) * (k - l) + (a + 2,) * l)


def minimize_sum_deg(k: int, M: int) -> SumDegMinimum:
    """
    Minimise sum_deg over all sorted degree vectors with sum M + k.

    Returns every minimiser; ties are common.

    Raises:
        InternalError: If the balanced vector does not attain the minimum
    """
    values = [(sum_deg_of_degrees(d), d) for d in iter_degree_vectors(k, M)]
    min_value = min(value for value, _ in values)
    argmin = tuple(DegreeVector(d) for value, d in values if value == min_value)
    balanced = balanced_degrees(k, M)
    if balanced not in argmin:
        raise InternalError(f"balanced vector {balanced} misses the minimum {min_value} for k={k}, M={M}")
    return SumDegMinimum(min_value=min_value, argmin=argmin)


def b_minus_line_codim(p: RigidityParams) -> Verdict:
    """Lines not through the tangent point: sum_deg - M + 3 >= M + 1."""
    return Verdict.at_least('b_minus_line', sum_deg(p) - p.M + 3, p.M + 1)


def lemma22_count(d_i: int, xi_i: int) -> int:
    """Conditions q_{i,j,alpha}(lambda) = 0 for xi_i <= j <= d_i, 0 <= alpha <= j."""
    return ((d_i + 1) * (d_i + 2) - xi_i * (xi_i + 1)) // 2


def lemma23_count(d_k: int, xi_k: int) -> int:
    """Conditions from the levels 2 ... d_k - 1 of the last equation."""
    return (d_k * (d_k + 1) - xi_k * (xi_k + 1)) // 2


def b_plus_line_check(p: RigidityParams) -> Verdict:
    """
    Lines through the tangent point.

    Conditions from all equations, less the d_k + 1 of the dropped last form,
    less the M - 2 parameters of the line, against M + 1 + c_* - k.
    """
    conditions = sum(lemma22_count(d, xi) for d, xi in p.pairs())
    value = conditions - (p.d_k + 1) - (p.M - 2)
    return Verdict.at_least('b_plus_line', value, p.M + 1 + p.c_star - p.k)


def prop22_check(p: RigidityParams) -> Verdict:
    """codim(B_line) >= min over the two line cases."""
    value = min(b_minus_line_codim(p).value, b_plus_line_check(p).value)
    return Verdict.at_least('prop22', value, p.M + 1 + p.c_star - p.k)


def special_union_codim(p: RigidityParams) -> int:
    """k conditions for the point plus one for every non-cone equation."""
    return p.k + sum(1 for d, xi in p.pairs() if xi <= d - 1)


def remark21_binomial(p: RigidityParams, i: int) -> int:
    """
    Linear-projection bound C(M - i - 1 + deg p_i, deg p_i).

    Raises:
        IndexError: If i is outside 1 ... M - 1
    """
    if not 1 <= i <= p.M - 1:
        raise IndexError(f"i={i} outside 1..{p.M - 1}")
    degree = standard_degrees(p)[i - 1]
    return comb(p.M - i - 1 + degree, degree)


def remark21_floor(p: RigidityParams) -> int:
    """C(M - k + 1, 2), the bound for every i <= k."""
    return comb(p.M - p.k + 1, 2)


def phi1(t: int, M: int) -> int:
    return (2 * t + 3) * (M - 1 - t) - t * (M - t)


def phi2(t: int, M: int) -> int:
    return (M - t - 1) * (t + 2) + 1


def lemma24_bound(b: int, M: int) -> int:
    """codim of B_{i,b,I}(P) is at least (2b+3)(M-1-b) - 2."""
    return (2 * b + 3) * (M - 1 - b) - 2


def _b_bound(b: int, M: int) -> int:
    # the span P of codimension b moves in a b(M-b)-dimensional family
    return lemma24_bound(b, M) - b * (M - b)


def prop23_b_max(i: int, M: int) -> int:
    """b runs over 0 ... i-1, capped at M-3 for i = M-1 (b = M-2 is a line)."""
    return M - 3 if i == M - 1 else i - 1


def prop23_display_bound(i: int, M: int) -> int:
    if i == M - 1:
        return min(3 * M - 5, M + 1)
    return min(3 * M - 5, (M - i - 1) * (i + 2) + 1)


def prop23_bound(i: int, M: int) -> Prop23Bound:
    """
    Bound for codim(B_i) by minimising over b.

    Both functions of b are concave, so the endpoint minimum must match a
    scan over every b.

    Raises:
        InternalError: If the endpoint minimum and the full scan disagree
    """
    b_max = prop23_b_max(i, M)
    closed_form = min(_b_bound(0, M), _b_bound(b_max, M))
    brute_force = min(_b_bound(b, M) for b in range(0, b_max + 1))
    if closed_form != brute_force:
        raise InternalError(f"endpoint minimum {closed_form} != scan minimum {brute_force} for i={i}, M={M}")
    bound = Prop23Bound(i=i, b_max=b_max, closed_form=closed_form, brute_force=brute_force,
                        display=prop23_display_bound(i, M))
    if bound.diverges:
        logger.warning(f"Displayed minimum {bound.display} differs from derived {closed_form} for i={i}, M={M}")
    return bound


def prop23_check(p: RigidityParams) -> List[Verdict]:
    """One verdict per i = k+1 ... M-1 against M + 1."""
    return [
        Verdict.at_least(f'prop23[{i}]', prop23_bound(i, p.M).closed_form, p.M + 1)
        for i in range(p.k + 1, p.M)
    ]


def prop23_endgame(p: RigidityParams) -> Optional[Verdict]:
    """phi2 at the left endpoint i = k+1: (k+3)(M-k-2)+1 >= M+1."""
    if p.k + 1 > p.M - 2:
        return None
    return Verdict.at_least('prop23_endgame', phi2(p.k + 1, p.M), p.M + 1)


def k_boundary_checks(k: int) -> Tuple[Verdict, Verdict]:
    """The endgame inequality at M = 2k+1 and M = 2k+2."""
    return (
        Verdict.at_least('k_boundary_odd', (k + 3) * (k - 1) + 1, 2 * k + 2),
        Verdict.at_least('k_boundary_even', (k + 3) * k + 1, 2 * k + 3),
    )


def k_two_value(M: int) -> Verdict:
    """The endgame left hand side at k = 2, 5M - 19, against M + 1."""
    return Verdict.at_least('k_two_value', 5 * M - 19, M + 1)


def point_condition_count(p: RigidityParams) -> int:
    """Phi_{i,0} = 0: the tangent point lies on V."""
    return p.k


def linear_dependence_count(p: RigidityParams) -> int:
    """Conditions for the linear parts Phi_{i,1} to be dependent."""
    return p.M + 1


def theorem21_assemble(p: RigidityParams) -> CodimReport:
    """
    Assemble the special-case union with the bound for the remaining sets.

    The remaining-sets threshold M + 1 + c_* - k equals
    M + 1 - #{xi_i <= d_i - 1}, so the identity branch totals M + k + 1.
    """
    M, k = p.M, p.k
    special = special_union_codim(p)
    prop22 = prop22_check(p)
    remark21 = tuple(
        Verdict.at_least(f'remark21[{i}]', remark21_binomial(p, i), M + 1)
        for i in range(1, k + 1)
    )
    prop23 = tuple(prop23_check(p))
    divergences = tuple(i for i in range(k + 1, M) if prop23_bound(i, M).diverges)

    prop21_threshold = M + 1 + p.c_star - k
    if prop21_threshold != M + 1 - sum(1 for d, xi in p.pairs() if xi <= d - 1):
        raise InternalError(f"c_* bookkeeping broken for {p}")
    prop21_value = min([prop22.value] + [v.value for v in remark21] + [v.value for v in prop23])
    prop21 = Verdict.at_least('prop21', prop21_value, prop21_threshold)

    identity_total = special + prop21_threshold
    if identity_total != M + k + 1:
        raise InternalError(f"identity branch totals {identity_total}, expected {M + k + 1} for {p}")

    last_conditions = lemma22_count(p.d_k, p.multiplicities[-1]) - (p.d_k + 1)
    report = CodimReport(
        params=p,
        sum_deg=Verdict.at_least('sum_deg', sum_deg(p), 2 * M - 2),
        lemma21=Verdict.at_least('lemma21_minimizer', sum_deg_of_degrees(balanced_degrees(k, M).entries), 2 * M - 2),
        b_minus_line=b_minus_line_codim(p),
        b_plus_line=b_plus_line_check(p),
        prop22=prop22,
        special_union=Verdict.at_least('special_union', special, k),
        lemma22_counts=tuple(
            Verdict.at_least(f'lemma22[{i}]', lemma22_count(d, xi), d + 1)
            for i, (d, xi) in enumerate(p.pairs(), start=1)
        ),
        lemma23_count=Verdict.equal('lemma23', lemma23_count(p.d_k, p.multiplicities[-1]), last_conditions),
        remark21_binomials=remark21,
        remark21_floor=Verdict.at_least('remark21_floor', remark21_floor(p), M + 1),
        prop23=prop23,
        prop23_endgame=prop23_endgame(p),
        prop21=prop21,
        theorem21_total=Verdict.at_least('theorem21_total', special + prop21_value, M + k + 1),
        identity_total=identity_total,
        point_conditions=point_condition_count(p),
        linear_dependence=linear_dependence_count(p),
        display_divergences=divergences,
    )
    logger.debug(f"Codimension report for {p}: certified={report.certified}")
    return report
