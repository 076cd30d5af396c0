"""
Moving the point (1, 0, ..., 0) to the origin.

In the coordinates u_1 = z_1 - 1, u_i = z_i (i >= 2) an equation
f = q_xi + ... + q_d becomes Phi_0 + Phi_1 + ... + Phi_d with Phi_e
homogeneous of degree e in u. Two routes are provided: the binomial
recombination of the z_1-graded pieces of each q_j, and plain substitution
followed by regrading. They must agree.
"""

import logging
from math import comb
from typing import Dict, List, Mapping, Optional

from rigidity.exceptions import GradingError

from .poly import MultiPoly

logger = logging.getLogger(__name__)


def graded_components(f: MultiPoly) -> Dict[int, MultiPoly]:
    """Nonzero homogeneous components of f keyed by degree."""
    degrees = sorted({sum(exps) for exps, _ in f.items()})
    return {j: f.homogeneous_part(j) for j in degrees}


def _check_grading(components: Mapping[int, MultiPoly]) -> None:
    for j, q in components.items():
        if not q.is_homogeneous(j):
            raise GradingError(f"component declared of degree {j} is not homogeneous of that degree: {q}")


def shift_expand(components: Mapping[int, MultiPoly]) -> List[MultiPoly]:
    """
    Phi_0, ..., Phi_d for f = sum of components[j], d the largest declared degree.

    Each q_j is written as sum over alpha of z_1^(j - alpha) q_{j,alpha}; then
    Phi_e = sum over alpha of u_1^(e - alpha) sum over j of C(j - alpha, e - alpha) q_{j,alpha}.

    Raises:
        GradingError: If a component is not homogeneous of its declared degree
    """
    if not components:
        raise GradingError("no graded components given")
    _check_grading(components)
    sample = next(iter(components.values()))
    nvars, prime = sample.nvars, sample.prime
    top = max(components)

    pieces = {j: q.split_by_first() for j, q in components.items()}
    phis = []
    for e in range(top + 1):
        phi = MultiPoly.zero(nvars, prime)
        for alpha in range(e + 1):
            inner = MultiPoly.zero(nvars, prime)
            for j, split in pieces.items():
                if alpha in split and j - alpha >= e - alpha:
                    inner = inner + split[alpha] * comb(j - alpha, e - alpha)
            if not inner.is_zero():
                phi = phi + inner.shift_first(e - alpha)
        phis.append(phi)
    return phis


def shift_by_substitution(f: MultiPoly, top: Optional[int] = None) -> List[MultiPoly]:
    """Phi_0, ..., Phi_top by substituting z_1 = 1 + u_1 and regrading."""
    nvars, prime = f.nvars, f.prime
    images = [MultiPoly.variable(nvars, prime, v) for v in range(nvars)]
    images[0] = images[0] + 1
    shifted = f.compose(images)
    top = f.degree if top is None else top
    return [shifted.homogeneous_part(e) for e in range(top + 1)]


def shift_tuple(sample) -> List[List[MultiPoly]]:
    """Phi_{i,0}, ..., Phi_{i,d_i} for every equation of a TupleSample."""
    expanded = []
    for i, (d, xi) in enumerate(sample.params.pairs()):
        components = {j: q for j, q in zip(range(xi, d + 1), sample.polys[i])}
        expanded.append(shift_expand(components))
    return expanded


def passes_through_point(sample) -> bool:
    """The shifted point lies on every hypersurface, i.e. every Phi_{i,0} vanishes."""
    constants = [phis[0] for phis in shift_tuple(sample)]
    result = all(phi.is_zero() for phi in constants)
    logger.debug(f"Point (1,0,...,0) on sample seed={sample.seed}: {result}")
    return result
