"""
Checks certifying a parameter tuple.

Each check is registered with the CheckRegistry when this module is
imported (see CertifyConfig.ready).
"""

from rigidity.codim import theorem21_assemble
from rigidity.hypertangent import build_schedule, certify_exclusion, ratio_chain, telescoping_check
from rigidity.params import Verdict, check_dimension_inequality, check_main_inequality, check_terminal

from .engine import BaseCheck

# Order in which `verify` runs and reports the checks.
VERIFY_CHECKS = [
    'main_inequality',
    'dimension_inequality',
    'terminal_singularity',
    'slope_telescoping',
    'exclusion_certificate',
    'codim_theorem21',
]


class MainInequalityCheck(BaseCheck):
    """
    sum over i of (d_i+1)(d_i+2) - xi_i(xi_i+1) against 4M + 2d_k + 2c_* - 2k.
    """
    name = "main_inequality"
    description = "Quadratic inequality on degrees and multiplicities"

    def evaluate(self, params) -> Verdict:
        return check_main_inequality(params)


class DimensionInequalityCheck(BaseCheck):
    name = "dimension_inequality"
    description = "M is at least 3 plus the sum of xi_i + 1 over singular equations"

    def evaluate(self, params) -> Verdict:
        return check_dimension_inequality(params)


class TerminalSingularityCheck(BaseCheck):
    name = "terminal_singularity"
    description = "The exceptional divisor of the blow-up of the point has positive discrepancy"

    def evaluate(self, params) -> Verdict:
        return check_terminal(params)


class SlopeTelescopingCheck(BaseCheck):
    name = "slope_telescoping"
    description = "Product of hypertangent slopes times mu equals the degree"

    def evaluate(self, params) -> Verdict:
        return telescoping_check(params, build_schedule(params))


class ExclusionCertificateCheck(BaseCheck):
    """
    The ratio chain ends at a bound of at least 1, so the singular point
    cannot be the centre of a maximal singularity.
    """
    name = "exclusion_certificate"
    description = "Final mult/deg bound of the hypertangent chain is at least 1"

    def evaluate(self, params) -> Verdict:
        chain = ratio_chain(params, build_schedule(params))
        certificate = certify_exclusion(chain)
        return Verdict(name=self.name, value=chain.final_bound, threshold=1, holds=certificate.ok)


class CodimensionCheck(BaseCheck):
    """
    Headline of the codimension report: the assembled total against
    M + k + 1, holding only when every row of the report holds.
    """
    name = "codim_theorem21"
    description = "Regularity at non-singular points fails in codimension at least M + k + 1"

    def evaluate(self, params) -> Verdict:
        report = theorem21_assemble(params)
        total = report.theorem21_total
        return Verdict(name=self.name, value=total.value, threshold=total.threshold,
                       holds=report.certified)
