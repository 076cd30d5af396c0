from rigidity.codim import theorem21_assemble

from certify.base import CommandReport, LabCommand, verdict_rows
from certify.serializers import ParamsConfigSerializer


class Command(LabCommand):
    help = 'Prints every codimension count behind the estimate at non-singular points'
    config_serializer_class = ParamsConfigSerializer

    def add_run_arguments(self, parser):
        self.add_params_arguments(parser)

    def run(self, config):
        params = config['params']
        codim = theorem21_assemble(params)

        report = CommandReport(
            command='codim',
            input=self.input_echo(config, ['k', 'M', 'd', 'xi']),
            checks=codim.records(),
            data={
                'identity_total': codim.identity_total,
                'point_conditions': codim.point_conditions,
                'linear_dependence': codim.linear_dependence,
                'display_divergences': list(codim.display_divergences),
            },
        )

        lines = [f"params: {params}"]
        lines.extend(verdict_rows(report.checks))
        lines.append(f"identity_total {codim.identity_total} = {params.M + params.k + 1}")
        lines.append(f"point_conditions {codim.point_conditions}")
        lines.append(f"linear_dependence {codim.linear_dependence}")
        if codim.display_divergences:
            lines.append(f"display_divergences {', '.join(str(i) for i in codim.display_divergences)}")
        self.emit(report, config['format'], lines)
        self.finish(report)
