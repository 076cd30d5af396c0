"""
Sparse multivariate polynomials over GF(p).

Terms map exponent tuples of length ``nvars`` to nonzero coefficients;
zero coefficients are never stored. Variables are indexed from 0, so
``z_1`` of the coordinate formulas is variable 0.
"""

from itertools import combinations_with_replacement
from math import comb
from typing import Dict, Iterator, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from .field import PrimeFieldElement

Exponents = Tuple[int, ...]
Scalar = Union[int, PrimeFieldElement]


def monomial_exponents(nvars: int, degree: int) -> Iterator[Exponents]:
    """Exponent vectors of all monomials of the given total degree, in a fixed order."""
    for combo in combinations_with_replacement(range(nvars), degree):
        exps = [0] * nvars
        for var in combo:
            exps[var] += 1
        yield tuple(exps)


def monomial_count(nvars: int, degree: int) -> int:
    return comb(nvars + degree - 1, degree)


class MultiPoly:
    """Polynomial in ``nvars`` variables with coefficients in GF(prime)."""

    __slots__ = ('nvars', 'prime', '_terms')

    def __init__(self, nvars: int, prime: int, terms: Optional[Mapping[Exponents, Scalar]] = None):
        self.nvars = nvars
        self.prime = prime
        self._terms: Dict[Exponents, int] = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != nvars:
                raise ValueError(f"exponent vector {exps} has length {len(exps)}, expected {nvars}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            self._accumulate(exps, int(coeff))

    def _accumulate(self, exps: Exponents, coeff: int) -> None:
        value = (self._terms.get(exps, 0) + coeff) % self.prime
        if value:
            self._terms[exps] = value
        else:
            self._terms.pop(exps, None)

    def _spawn(self, terms: Optional[Mapping[Exponents, int]] = None) -> 'MultiPoly':
        return MultiPoly(self.nvars, self.prime, terms)

    @classmethod
    def zero(cls, nvars: int, prime: int) -> 'MultiPoly':
        return cls(nvars, prime)

    @classmethod
    def constant(cls, nvars: int, prime: int, value: Scalar) -> 'MultiPoly':
        return cls(nvars, prime, {(0,) * nvars: value})

    @classmethod
    def variable(cls, nvars: int, prime: int, index: int) -> 'MultiPoly':
        exps = [0] * nvars
        exps[index] = 1
        return cls(nvars, prime, {tuple(exps): 1})

    @classmethod
    def monomial(cls, nvars: int, prime: int, exps: Sequence[int], coeff: Scalar = 1) -> 'MultiPoly':
        return cls(nvars, prime, {tuple(exps): coeff})

    @property
    def terms(self) -> Dict[Exponents, PrimeFieldElement]:
        return {exps: PrimeFieldElement(c, self.prime) for exps, c in self._terms.items()}

    def items(self):
        """(exponents, int coefficient) pairs in sorted exponent order."""
        return sorted(self._terms.items())

    def coefficient(self, exps: Sequence[int]) -> int:
        return self._terms.get(tuple(exps), 0)

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degree(self) -> int:
        """Largest total degree of a term; -1 for the zero polynomial."""
        return max((sum(exps) for exps in self._terms), default=-1)

    def is_homogeneous(self, degree: Optional[int] = None) -> bool:
        """All terms share one total degree (and equal ``degree`` when given). Zero qualifies."""
        degrees = {sum(exps) for exps in self._terms}
        if degree is not None:
            return degrees <= {degree}
        return len(degrees) <= 1

    def homogeneous_part(self, degree: int) -> 'MultiPoly':
        return self._spawn({exps: c for exps, c in self._terms.items() if sum(exps) == degree})

    def split_by_first(self) -> Dict[int, 'MultiPoly']:
        """
        Write f = sum over alpha of z_1^(deg - alpha) f_alpha.

        Returns f_alpha (free of z_1) keyed by alpha, its degree in the
        remaining variables; f must be homogeneous.
        """
        parts: Dict[int, Dict[Exponents, int]] = {}
        for exps, c in self._terms.items():
            alpha = sum(exps[1:])
            parts.setdefault(alpha, {})[(0,) + exps[1:]] = c
        return {alpha: self._spawn(terms) for alpha, terms in sorted(parts.items())}

    def _check_compatible(self, other: 'MultiPoly') -> None:
        if (self.nvars, self.prime) != (other.nvars, other.prime):
            raise ValueError(
                f"incompatible polynomials: {self.nvars} vars over GF({self.prime}) "
                f"and {other.nvars} vars over GF({other.prime})"
            )

    def __add__(self, other: Union['MultiPoly', Scalar]) -> 'MultiPoly':
        if not isinstance(other, MultiPoly):
            other = MultiPoly.constant(self.nvars, self.prime, other)
        self._check_compatible(other)
        result = self._spawn(self._terms)
        for exps, c in other._terms.items():
            result._accumulate(exps, c)
        return result

    __radd__ = __add__

    def __neg__(self) -> 'MultiPoly':
        return self._spawn({exps: -c for exps, c in self._terms.items()})

    def __sub__(self, other: Union['MultiPoly', Scalar]) -> 'MultiPoly':
        return self + (-other)

    def __rsub__(self, other: Scalar) -> 'MultiPoly':
        return (-self) + other

    def __mul__(self, other: Union['MultiPoly', Scalar]) -> 'MultiPoly':
        if not isinstance(other, MultiPoly):
            scalar = int(other)
            return self._spawn({exps: c * scalar for exps, c in self._terms.items()})
        self._check_compatible(other)
        result = self._spawn()
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                result._accumulate(tuple(a + b for a, b in zip(e1, e2)), c1 * c2)
        return result

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> 'MultiPoly':
        if exponent < 0:
            raise ValueError("negative powers are not polynomials")
        result = MultiPoly.constant(self.nvars, self.prime, 1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def shift_first(self, power: int) -> 'MultiPoly':
        """Multiply by z_1^power."""
        return self._spawn({(exps[0] + power,) + exps[1:]: c for exps, c in self._terms.items()})

    def compose(self, images: Sequence['MultiPoly']) -> 'MultiPoly':
        """Substitute images[v] for variable v."""
        if len(images) != self.nvars:
            raise ValueError(f"need {self.nvars} images, got {len(images)}")
        target = images[0] if images else None
        result = MultiPoly.zero(target.nvars, self.prime) if target else self._spawn()
        powers: Dict[Tuple[int, int], MultiPoly] = {}
        for exps, c in self._terms.items():
            term = MultiPoly.constant(result.nvars, self.prime, c)
            for var, e in enumerate(exps):
                if e:
                    if (var, e) not in powers:
                        powers[(var, e)] = images[var] ** e
                    term = term * powers[(var, e)]
            result = result + term
        return result

    def evaluate(self, point: Sequence[Scalar]) -> int:
        """Value at one point, as an int in [0, prime)."""
        if len(point) != self.nvars:
            raise ValueError(f"point has {len(point)} coordinates, expected {self.nvars}")
        values = [int(x) % self.prime for x in point]
        total = 0
        for exps, c in self._terms.items():
            term = c
            for x, e in zip(values, exps):
                if e:
                    term = term * pow(x, e, self.prime) % self.prime
            total += term
        return total % self.prime

    def evaluate_many(self, points: np.ndarray) -> np.ndarray:
        """
        Values at every row of an (n, nvars) integer array.

        Powers are read from per-exponent lookup tables. A term is reduced
        mod p once when its unreduced product fits in int64, after every
        factor otherwise.
        """
        p = self.prime
        points = np.asarray(points, dtype=np.int64) % p
        n = points.shape[0]
        result = np.zeros(n, dtype=np.int64)
        reduce_each_factor = p ** (self.degree + 1) >= 2 ** 62
        columns: Dict[Tuple[int, int], np.ndarray] = {}
        for exps, c in self._terms.items():
            term = None
            for var, e in enumerate(exps):
                if e:
                    if (var, e) not in columns:
                        table = np.array([pow(x, e, p) for x in range(p)], dtype=np.int64)
                        columns[(var, e)] = table[points[:, var]]
                    term = columns[(var, e)] * c if term is None else term * columns[(var, e)]
                    if reduce_each_factor:
                        term %= p
            if term is None:
                result += c
            else:
                result += term % p
        return result % p

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return (self.nvars, self.prime, self._terms) == (other.nvars, other.prime, other._terms)

    __hash__ = None

    def __repr__(self) -> str:
        return f"<MultiPoly(nvars={self.nvars}, prime={self.prime}, terms={len(self._terms)})>"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for exps, c in self.items():
            factors = [f"z{v + 1}" + (f"^{e}" if e > 1 else "") for v, e in enumerate(exps) if e]
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            else:
                parts.append(f"{c}*" + "*".join(factors))
        return " + ".join(parts)
