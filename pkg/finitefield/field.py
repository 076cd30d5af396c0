"""
Arithmetic in the prime field with p elements.
"""

from dataclasses import dataclass
from typing import Union

Operand = Union['PrimeFieldElement', int]


def is_prime(n: int) -> bool:
    """Trial division; the primes used here are small."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    factor = 3
    while factor * factor <= n:
        if n % factor == 0:
            return False
        factor += 2
    return True


@dataclass(frozen=True)
class PrimeFieldElement:
    """
    An element of GF(p), stored as its representative in [0, p).

    Integers mix freely with elements; two elements must share the modulus.
    """
    value: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 2:
            raise ValueError(f"modulus must be a prime, got {self.modulus}")
        object.__setattr__(self, 'value', self.value % self.modulus)

    def _coerce(self, other: Operand) -> int:
        if isinstance(other, PrimeFieldElement):
            if other.modulus != self.modulus:
                raise ValueError(f"Cannot mix GF({self.modulus}) and GF({other.modulus})")
            return other.value
        if isinstance(other, int):
            return other % self.modulus
        return NotImplemented

    def _make(self, value: int) -> 'PrimeFieldElement':
        return PrimeFieldElement(value, self.modulus)

    def __add__(self, other: Operand) -> 'PrimeFieldElement':
        value = self._coerce(other)
        if value is NotImplemented:
            return NotImplemented
        return self._make(self.value + value)

    __radd__ = __add__

    def __sub__(self, other: Operand) -> 'PrimeFieldElement':
        value = self._coerce(other)
        if value is NotImplemented:
            return NotImplemented
        return self._make(self.value - value)

    def __rsub__(self, other: Operand) -> 'PrimeFieldElement':
        value = self._coerce(other)
        if value is NotImplemented:
            return NotImplemented
        return self._make(value - self.value)

    def __mul__(self, other: Operand) -> 'PrimeFieldElement':
        value = self._coerce(other)
        if value is NotImplemented:
            return NotImplemented
        return self._make(self.value * value)

    __rmul__ = __mul__

    def __neg__(self) -> 'PrimeFieldElement':
        return self._make(-self.value)

    def inverse(self) -> 'PrimeFieldElement':
        """
        Multiplicative inverse by Fermat's little theorem.

        Raises:
            ZeroDivisionError: For the zero element
        """
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse in GF({self.modulus})")
        return self._make(pow(self.value, self.modulus - 2, self.modulus))

    def __truediv__(self, other: Operand) -> 'PrimeFieldElement':
        value = self._coerce(other)
        if value is NotImplemented:
            return NotImplemented
        return self * self._make(value).inverse()

    def __rtruediv__(self, other: Operand) -> 'PrimeFieldElement':
        value = self._coerce(other)
        if value is NotImplemented:
            return NotImplemented
        return self._make(value) * self.inverse()

    def __pow__(self, exponent: int) -> 'PrimeFieldElement':
        if exponent < 0:
            return self.inverse() ** -exponent
        return self._make(pow(self.value, exponent, self.modulus))

    def __eq__(self, other) -> bool:
        if isinstance(other, PrimeFieldElement):
            return self.value == other.value and self.modulus == other.modulus
        if isinstance(other, int):
            return self.value == other % self.modulus
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.value, self.modulus))

    def __int__(self) -> int:
        return self.value

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        return f"{self.value} (mod {self.modulus})"
