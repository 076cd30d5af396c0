from rigidity.hypertangent import (
    build_schedule,
    certify_exclusion,
    ratio_chain,
    slope_product,
    telescoping_check,
)
from rigidity.params import Verdict

from certify.base import CommandReport, LabCommand, verdict_rows
from certify.serializers import ParamsConfigSerializer


def _slope_row(slopes) -> str:
    return ', '.join(str(slope) for slope in slopes)


class Command(LabCommand):
    help = 'Prints the hypertangent schedule: a, c(j), m(j), the slopes and the ratio chain'
    config_serializer_class = ParamsConfigSerializer

    def add_run_arguments(self, parser):
        self.add_params_arguments(parser)

    def run(self, config):
        params = config['params']
        schedule = build_schedule(params)
        chain = ratio_chain(params, schedule)
        certificate = certify_exclusion(chain)
        exclusion = Verdict(name='exclusion_certificate', value=chain.final_bound, threshold=1,
                            holds=certificate.ok)

        report = CommandReport(
            command='schedule',
            input=self.input_echo(config, ['k', 'M', 'd', 'xi']),
            checks=[telescoping_check(params, schedule), exclusion],
            data={
                'a': schedule.a,
                'degenerate': schedule.degenerate,
                'c': {str(j): c for j, c in schedule.c_table.items()},
                'm': {str(j): m for j, m in schedule.m_table.items()},
                'slopes': [str(slope) for slope in schedule.slopes],
                'divisors': [list(label) for label in schedule.divisors],
                'm_total': schedule.m_total,
                'slope_product': str(slope_product(schedule)),
                'chain': [
                    {'index': step.index, 'slope': str(step.slope), 'bound': str(step.bound)}
                    for step in chain.steps
                ],
                'seed': str(chain.seed),
                'final_bound': str(chain.final_bound),
                'margin': str(certificate.margin),
            },
        )

        lines = [f"params: {params}"]
        if schedule.degenerate:
            lines.append("degenerate schedule: every equation is a cone at the point")
        lines.append(f"a: {schedule.a if schedule.a is not None else '-'}")
        lines.append("j c(j) m(j)")
        lines.extend(f"{j} {schedule.c_table[j]} {schedule.m_table[j]}" for j in schedule.levels)
        lines.append(f"slopes: {_slope_row(schedule.slopes)}")
        lines.append(f"slope_product: {slope_product(schedule)}")
        lines.append(f"seed: {chain.seed}")
        lines.extend(f"step {step.index}: x{step.slope} -> {step.bound}" for step in chain.steps)
        lines.extend(verdict_rows(report.checks))
        self.emit(report, config['format'], lines)
        self.finish(report)
