"""
Random tuples of equations with a prescribed singular point at the origin.

Equation i is f_i = q_{i,xi_i} + ... + q_{i,d_i} in N = M + k affine
variables, each q_{i,j} homogeneous of degree exactly j.
"""

import logging
import random
from dataclasses import dataclass
from typing import Iterable, List, Optional, TextIO, Tuple

from rigidity.conf import lab_setting
from rigidity.exceptions import BudgetError
from rigidity.params import RigidityParams, parse_int_list, validate_shape

from .field import is_prime
from .poly import MultiPoly, monomial_exponents

logger = logging.getLogger(__name__)

DUMP_HEADER = "# rigidity-lab tuple sample v1"


@dataclass(frozen=True)
class TupleSample:
    """
    Attributes:
        params: The parameter tuple the sample realises
        prime: Field size
        seed: Seed the coefficients were drawn with
        polys: polys[i][j - xi_i] is q_{i,j} (0-based i)
    """
    params: RigidityParams
    prime: int
    seed: int
    polys: Tuple[Tuple[MultiPoly, ...], ...]

    @property
    def nvars(self) -> int:
        return self.params.M + self.params.k

    def labelled_forms(self) -> List[Tuple[Tuple[int, int], MultiPoly]]:
        """((i, j), q_{i,j}) with 1-based i, in (i, j) lexicographic order."""
        labelled = []
        for i, ((d, xi), forms) in enumerate(zip(self.params.pairs(), self.polys), start=1):
            labelled.extend(((i, j), q) for j, q in zip(range(xi, d + 1), forms))
        return labelled

    def forms(self) -> List[MultiPoly]:
        return [q for _, q in self.labelled_forms()]

    def equation(self, i: int) -> MultiPoly:
        """f_i, 1-based."""
        return truncation(self, i, self.params.degrees[i - 1])


def check_budget(prime: int, nvars: int, cap: Optional[int] = None) -> int:
    """
    Number of points of the affine space, if within the cap.

    Raises:
        BudgetError: If prime^nvars exceeds the cap
    """
    cap = lab_setting('ENUMERATION_CAP') if cap is None else cap
    size = prime ** nvars
    if size > cap:
        raise BudgetError(f"{prime}^{nvars} = {size} points exceeds the enumeration cap {cap}")
    return size


def random_form(nvars: int, prime: int, degree: int, rng: random.Random) -> MultiPoly:
    """Uniform coefficients on every monomial of the degree, redrawn until nonzero."""
    monomials = list(monomial_exponents(nvars, degree))
    while True:
        form = MultiPoly(nvars, prime, {exps: rng.randrange(prime) for exps in monomials})
        if not form.is_zero():
            return form


def random_tuple(p: RigidityParams, prime: int, seed: int, cap: Optional[int] = None) -> TupleSample:
    """
    Draw every q_{i,j} independently from a generator seeded with ``seed``.

    Raises:
        ValueError: If prime is not prime
        BudgetError: If prime^(M+k) exceeds the enumeration cap
    """
    if not is_prime(prime):
        raise ValueError(f"{prime} is not a prime")
    nvars = p.M + p.k
    check_budget(prime, nvars, cap)
    rng = random.Random(seed)
    polys = tuple(
        tuple(random_form(nvars, prime, j, rng) for j in range(xi, d + 1))
        for d, xi in p.pairs()
    )
    logger.debug(f"Drew tuple sample for {p} over GF({prime}) with seed {seed}")
    return TupleSample(params=p, prime=prime, seed=seed, polys=polys)


def adversarial_tuple(p: RigidityParams, prime: int, seed: int, cap: Optional[int] = None) -> TupleSample:
    """Every q_{i,j} is z_1^j: all forms cut out the same hyperplane."""
    nvars = p.M + p.k
    check_budget(prime, nvars, cap)
    first = MultiPoly.variable(nvars, prime, 0)
    polys = tuple(tuple(first ** j for j in range(xi, d + 1)) for d, xi in p.pairs())
    return TupleSample(params=p, prime=prime, seed=seed, polys=polys)


def truncation(sample: TupleSample, i: int, alpha: int) -> MultiPoly:
    """f_{i,alpha} = q_{i,xi_i} + ... + q_{i,alpha}; zero when alpha < xi_i."""
    xi = sample.params.multiplicities[i - 1]
    result = MultiPoly.zero(sample.nvars, sample.prime)
    for q in sample.polys[i - 1][:max(0, alpha - xi + 1)]:
        result = result + q
    return result


def dump_sample(sample: TupleSample, stream: TextIO) -> None:
    """Write the textual dump: a header, then one monomial per line under each form."""
    p = sample.params
    stream.write(f"{DUMP_HEADER}\n")
    stream.write(f"k {p.k}\nM {p.M}\nd {p.degrees}\nxi {p.multiplicities}\n")
    stream.write(f"prime {sample.prime}\nseed {sample.seed}\n")
    for (i, j), q in sample.labelled_forms():
        stream.write(f"form {i} {j}\n")
        for exps, c in q.items():
            stream.write(f"{','.join(str(e) for e in exps)} {c}\n")
    stream.write("end\n")


def _data_lines(lines: Iterable[str]):
    for number, raw in enumerate(lines, start=1):
        line = raw.strip()
        if line and not line.startswith('#'):
            yield number, line


def load_sample(stream: TextIO) -> TupleSample:
    """
    Read a dump written by dump_sample.

    Raises:
        ValueError: On a malformed line, naming its number
        ShapeError: If the header describes invalid parameters
    """
    header = {}
    forms = {}
    current = None
    ended = False
    for number, line in _data_lines(stream):
        key, _, rest = line.partition(' ')
        if ended:
            raise ValueError(f"line {number}: content after 'end'")
        if key == 'end':
            ended = True
        elif key == 'form':
            try:
                i, j = (int(part) for part in rest.split())
            except ValueError:
                raise ValueError(f"line {number}: malformed form label '{line}'") from None
            current = forms.setdefault((i, j), {})
        elif key in ('k', 'M', 'd', 'xi', 'prime', 'seed') and current is None:
            header[key] = rest.strip()
        elif current is not None:
            try:
                exps = tuple(int(e) for e in key.split(','))
                current[exps] = int(rest)
            except ValueError:
                raise ValueError(f"line {number}: malformed monomial '{line}'") from None
        else:
            raise ValueError(f"line {number}: unexpected '{line}'")

    missing = {'k', 'M', 'd', 'xi', 'prime', 'seed'} - set(header)
    if missing:
        raise ValueError(f"dump is missing header fields {sorted(missing)}")
    if not ended:
        raise ValueError("dump is truncated: no 'end' line")

    params = validate_shape(int(header['k']), int(header['M']),
                            parse_int_list(header['d']), parse_int_list(header['xi']))
    prime = int(header['prime'])
    nvars = params.M + params.k
    polys = []
    for i, (d, xi) in enumerate(params.pairs(), start=1):
        polys.append(tuple(MultiPoly(nvars, prime, forms.get((i, j), {})) for j in range(xi, d + 1)))
    return TupleSample(params=params, prime=prime, seed=int(header['seed']), polys=tuple(polys))
