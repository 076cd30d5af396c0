from rigidity.conf import lab_setting
from rigidity.params import Verdict

from finitefield.oracle import check_R02_batch

from certify.base import CommandReport, LabCommand, verdict_rows
from certify.serializers import FFCheckConfigSerializer


class Command(LabCommand):
    help = 'Probes the regular-sequence condition on random tuples by exhaustive point counting'
    config_serializer_class = FFCheckConfigSerializer

    def add_run_arguments(self, parser):
        self.add_params_arguments(parser)
        parser.add_argument('--prime', type=int, help='Field size (default from settings)')
        parser.add_argument('--seed', type=int, help='First seed (default 0)')
        parser.add_argument('--trials', type=int, help='Number of seeds, seed ... seed+trials-1 (default 20)')
        parser.add_argument('--threshold-factor', help='Allowed excess over p^(N-s), e.g. 4')
        parser.add_argument('--parallel', type=int, help='Worker processes')

    def run(self, config):
        params = config['params']
        prime = config.get('prime') or lab_setting('DEFAULT_PRIME')
        factor = config.get('threshold_factor') or lab_setting('THRESHOLD_FACTOR')
        seeds = list(range(config['seed'], config['seed'] + config['trials']))

        stats = check_R02_batch(params, prime, seeds, threshold_factor=factor,
                                parallel=config.get('parallel'))
        rate_check = Verdict.at_least('pass_rate', stats.pass_rate, lab_setting('MIN_PASS_RATE'))

        report = CommandReport(
            command='ff_check',
            input=self.input_echo(config, ['k', 'M', 'd', 'xi', 'seed', 'trials']) | {
                'prime': prime,
                'threshold_factor': str(factor),
            },
            checks=[rate_check],
            data={
                'nvars': params.M + params.k,
                'forms': len(stats.count_distributions),
                'trials': stats.trials,
                'passes': stats.passes,
                'pass_rate': str(stats.pass_rate),
                'count_distributions': {
                    str(s): {str(n): freq for n, freq in counts.items()}
                    for s, counts in stats.count_distributions.items()
                },
                'failing_seeds': list(stats.failing_seeds),
            },
        )

        lines = [
            f"params: {params}",
            f"field: GF({prime}), {params.M + params.k} variables, threshold factor {factor}",
            f"seeds: {seeds[0]}..{seeds[-1]}",
        ]
        for s, counts in stats.count_distributions.items():
            spread = ', '.join(f"{n}x{freq}" for n, freq in counts.items())
            lines.append(f"prefix {s}: {spread}")
        lines.append(f"pass rate: {stats.passes}/{stats.trials} ({float(stats.pass_rate):.2f})")
        if stats.failing_seeds:
            lines.append(f"failing seeds: {', '.join(str(seed) for seed in stats.failing_seeds)}")
        lines.extend(verdict_rows(report.checks))
        self.emit(report, config['format'], lines)
        self.finish(report)
