from certify.base import CommandReport, LabCommand, verdict_rows
from certify.engine import CertificationEngine
from certify.rigidity_checks import VERIFY_CHECKS
from certify.serializers import ParamsConfigSerializer
from rigidity.hypertangent import build_schedule, certify_exclusion, ratio_chain
from rigidity.params import mu_over_d
from rigidity.serializers import ParamsSerializer


class Command(LabCommand):
    help = 'Certifies a parameter tuple: both hypotheses, the exclusion chain and the codimension estimate'
    config_serializer_class = ParamsConfigSerializer

    def add_run_arguments(self, parser):
        self.add_params_arguments(parser)

    def run(self, config):
        params = config['params']
        result = CertificationEngine().evaluate_checks(params, VERIFY_CHECKS)

        schedule = build_schedule(params)
        chain = ratio_chain(params, schedule)
        certificate = certify_exclusion(chain)

        report = CommandReport(
            command='verify',
            input=self.input_echo(config, ['k', 'M', 'd', 'xi']),
            checks=list(result['details'].values()),
            data={
                'params': ParamsSerializer(params).data,
                'mu_over_d': str(mu_over_d(params)),
                'm_total': schedule.m_total,
                'final_bound': str(chain.final_bound),
                'margin': str(certificate.margin),
                'short_chain': chain.short_chain,
            },
        )

        lines = [f"params: {params}"]
        lines.extend(verdict_rows(report.checks))
        lines.append(f"final_bound: {chain.final_bound}")
        lines.append(f"exclusion: {certificate.explanation}")
        self.emit(report, config['format'], lines)
        self.finish(report)
