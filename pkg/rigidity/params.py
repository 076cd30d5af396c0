"""
Parameters of a singular Fano complete intersection and its two
admissibility hypotheses.

A parameter tuple is (k, M, d, xi): k equations of degrees
d_1 <= ... <= d_k in a projective space of dimension M + k, with
sum(d) = M + k, and multiplicities 1 <= xi_i <= d_i of the equations at
the singular point. xi_i is paired with d_i by position, so degree vectors
are required sorted and are never permuted.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import Iterable, Iterator, Optional, Sequence, Tuple, Union

from .exceptions import ShapeError

logger = logging.getLogger(__name__)

Number = Union[int, Fraction]


@dataclass(frozen=True)
class DegreeVector:
    """Degrees d_1 <= ... <= d_k of the defining equations."""
    entries: Tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.entries)

    @property
    def total(self) -> int:
        return sum(self.entries)

    @property
    def last(self) -> int:
        """d_k, the largest degree."""
        return self.entries[-1]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, index):
        return self.entries[index]

    def __str__(self) -> str:
        return ",".join(str(d) for d in self.entries)


@dataclass(frozen=True)
class MultiplicityVector:
    """Multiplicities xi_1, ..., xi_k of the equations at the singular point."""
    entries: Tuple[int, ...]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, index):
        return self.entries[index]

    def __str__(self) -> str:
        return ",".join(str(x) for x in self.entries)


@dataclass(frozen=True)
class Verdict:
    """
    Outcome of an inequality (or identity) with both of its sides.

    Attributes:
        name: Identifier of the checked quantity
        value: Left hand side
        threshold: Right hand side
        holds: Whether the relation holds
        relation: '>=' or '=='
    """
    name: str
    value: Number
    threshold: Number
    holds: bool
    relation: str = '>='

    @classmethod
    def at_least(cls, name: str, value: Number, threshold: Number) -> 'Verdict':
        return cls(name=name, value=value, threshold=threshold, holds=value >= threshold)

    @classmethod
    def equal(cls, name: str, value: Number, threshold: Number) -> 'Verdict':
        return cls(name=name, value=value, threshold=threshold,
                   holds=value == threshold, relation='==')

    @property
    def lhs(self) -> Number:
        return self.value

    @property
    def rhs(self) -> Number:
        return self.threshold

    @property
    def margin(self) -> Number:
        return self.value - self.threshold


# The two hypotheses report the same shape of result.
HypothesisVerdict = Verdict


@dataclass(frozen=True)
class RigidityParams:
    """
    A parameter tuple (k, M, d, xi) with its derived invariants.

    Derived fields are computed on construction and never passed in:
    c_star counts the cone equations (xi_i = d_i), sing_type is the sorted
    tuple of the xi_i >= 2, mu = prod(xi), deg_v = prod(d).
    """
    k: int
    M: int
    degrees: DegreeVector
    multiplicities: MultiplicityVector
    c_star: int = field(init=False)
    sing_type: Tuple[int, ...] = field(init=False)
    mu: int = field(init=False)
    deg_v: int = field(init=False)

    def __post_init__(self):
        pairs = list(zip(self.degrees, self.multiplicities))
        object.__setattr__(self, 'c_star', sum(1 for d, xi in pairs if xi == d))
        object.__setattr__(self, 'sing_type', tuple(sorted(xi for xi in self.multiplicities if xi >= 2)))
        object.__setattr__(self, 'mu', prod(self.multiplicities))
        object.__setattr__(self, 'deg_v', prod(self.degrees))

    @property
    def l(self) -> int:
        """Number of singular equations, the length of the type."""
        return len(self.sing_type)

    @property
    def d(self) -> int:
        """Degree of the variety, d_1 * ... * d_k."""
        return self.deg_v

    @property
    def d_k(self) -> int:
        return self.degrees.last

    def pairs(self) -> Iterable[Tuple[int, int]]:
        """Positional pairs (d_i, xi_i)."""
        return zip(self.degrees, self.multiplicities)

    def sort_key(self) -> Tuple:
        return (self.k, self.M, self.degrees.entries, self.multiplicities.entries)

    def __str__(self) -> str:
        return f"k={self.k} M={self.M} d=({self.degrees}) xi=({self.multiplicities})"


def _as_tuple(values: Union[Sequence[int], DegreeVector, MultiplicityVector]) -> Tuple[int, ...]:
    if isinstance(values, (DegreeVector, MultiplicityVector)):
        return values.entries
    entries = []
    for v in values:
        try:
            entry = int(v)
        except (TypeError, ValueError, OverflowError):
            raise ShapeError(f"not an integer: {v!r}")
        if entry != v:
            raise ShapeError(f"not an integer: {v!r}")
        entries.append(entry)
    return tuple(entries)


def _check_vectors(d: Tuple[int, ...], xi: Tuple[int, ...], min_degree: int) -> None:
    if len(d) != len(xi):
        raise ShapeError(f"length mismatch: {len(d)} degrees but {len(xi)} multiplicities")
    if any(di < min_degree for di in d):
        raise ShapeError(f"degree below {min_degree}: d={d}")
    if any(a > b for a, b in zip(d, d[1:])):
        raise ShapeError(f"degrees not sorted: d={d} must be non-decreasing")


def _check_multiplicities(d: Tuple[int, ...], xi: Tuple[int, ...]) -> None:
    for i, (di, x) in enumerate(zip(d, xi), start=1):
        if x < 1:
            raise ShapeError(f"xi below 1: xi_{i}={x}")
        if x > di:
            raise ShapeError(f"xi exceeds degree: xi_{i}={x} > d_{i}={di}")


def validate_shape(k: int, M: int,
                   d: Union[Sequence[int], DegreeVector],
                   xi: Union[Sequence[int], MultiplicityVector]) -> RigidityParams:
    """
    Validate raw integers and build a fully derived RigidityParams.

    Raises:
        ShapeError: Naming the first violated constraint
    """
    d = _as_tuple(d)
    xi = _as_tuple(xi)
    if k < 2:
        raise ShapeError(f"k below 2: k={k}")
    if M < 2 * k + 1:
        raise ShapeError(f"M below 2k+1: M={M}, k={k}")
    if len(d) != k:
        raise ShapeError(f"length mismatch: k={k} but {len(d)} degrees")
    _check_vectors(d, xi, min_degree=2)
    if sum(d) != M + k:
        raise ShapeError(f"degree sum mismatch: sum(d)={sum(d)} but M+k={M + k}")
    _check_multiplicities(d, xi)
    return RigidityParams(k=k, M=M, degrees=DegreeVector(d), multiplicities=MultiplicityVector(xi))


def shape_only(d: Union[Sequence[int], DegreeVector],
               xi: Union[Sequence[int], MultiplicityVector]) -> RigidityParams:
    """
    Build params checking only the vector invariants; M is sum(d) - k.

    Used for schedules of hypothetical shapes (a single factor, d=(2,2))
    that are not valid complete intersections of the theorem.
    """
    d = _as_tuple(d)
    xi = _as_tuple(xi)
    if not d:
        raise ShapeError("length mismatch: empty degree vector")
    _check_vectors(d, xi, min_degree=1)
    _check_multiplicities(d, xi)
    return RigidityParams(k=len(d), M=sum(d) - len(d),
                         degrees=DegreeVector(d), multiplicities=MultiplicityVector(xi))


def iter_degree_vectors(k: int, M: int, first: Optional[int] = None,
                        minimum: int = 2) -> Iterator[Tuple[int, ...]]:
    """
    Yield every non-decreasing degree vector of length k with sum M + k.

    Vectors come in lexicographic order. With ``first`` only vectors whose
    leading degree equals it are produced.
    """
    def extend(prefix: Tuple[int, ...], low: int, remaining: int, slots: int):
        if slots == 0:
            if remaining == 0:
                yield prefix
            return
        if slots == 1:
            if remaining >= low:
                yield prefix + (remaining,)
            return
        # every later entry is at least the current one
        for value in range(low, remaining // slots + 1):
            yield from extend(prefix + (value,), value, remaining - value, slots - 1)

    total = M + k
    if first is None:
        yield from extend((), minimum, total, k)
    elif first >= minimum and k >= 1 and first * k <= total:
        yield from extend((first,), first, total - first, k - 1)


def parse_int_list(text: str) -> Tuple[int, ...]:
    """
    Parse a comma-separated list of integers such as "4,4".

    Raises:
        ShapeError: If the text is empty or holds a non-integer entry
    """
    parts = [part.strip() for part in str(text).split(',')]
    if not parts or any(part == '' for part in parts):
        raise ShapeError(f"malformed integer list: '{text}'")
    try:
        return tuple(int(part) for part in parts)
    except ValueError:
        raise ShapeError(f"malformed integer list: '{text}'") from None


def check_main_inequality(p: RigidityParams) -> Verdict:
    """
    sum_i [(d_i+1)(d_i+2) - xi_i(xi_i+1)] >= 4M + 2 d_k + 2 c_* - 2k.
    """
    lhs = sum((d + 1) * (d + 2) - xi * (xi + 1) for d, xi in p.pairs())
    rhs = 4 * p.M + 2 * p.d_k + 2 * p.c_star - 2 * p.k
    return Verdict.at_least('main_inequality', lhs, rhs)


def check_dimension_inequality(p: RigidityParams) -> Verdict:
    """M >= 3 + sum over xi_i >= 2 of (xi_i + 1)."""
    rhs = 3 + sum(xi + 1 for xi in p.multiplicities if xi >= 2)
    return Verdict.at_least('dimension_inequality', p.M, rhs)


def mu_over_d(p: RigidityParams) -> Fraction:
    """Multiplicity of the singular point over the degree, reduced."""
    return Fraction(p.mu, p.deg_v)


def type_weight(p: RigidityParams) -> int:
    """|mu| = mu_1 + ... + mu_l."""
    return sum(p.sing_type)


def exceptional_discrepancy(p: RigidityParams) -> int:
    """
    Discrepancy of the exceptional divisor of the blow-up of the singular point.

    Adjunction on the blow-up of a point of the (M+k)-dimensional ambient
    space gives a = (M + k - 1) - sum(xi).
    """
    return p.M + p.k - 1 - sum(p.multiplicities)


def check_terminal(p: RigidityParams) -> Verdict:
    """The singular point is terminal when the discrepancy is positive."""
    return Verdict.at_least('terminal_singularity', exceptional_discrepancy(p), 1)


def admissible(p: RigidityParams) -> bool:
    """Both hypotheses hold."""
    return check_main_inequality(p).holds and check_dimension_inequality(p).holds
