from pathlib import Path

from rigidity.explorer import enumerate_range, summarize
from rigidity.params import Verdict
from rigidity.reports import export_report, render_records
from rigidity.serializers import SurveySummarySerializer

from certify.base import CommandReport, LabCommand, verdict_rows
from certify.serializers import ExploreConfigSerializer


class Command(LabCommand):
    help = 'Enumerates admissible tuples over ranges of k and M and summarises them'
    config_serializer_class = ExploreConfigSerializer
    formats = ('text', 'json', 'csv')

    def add_run_arguments(self, parser):
        parser.add_argument('--k', type=int, help='Single number of equations')
        parser.add_argument('--k-min', type=int, help='Smallest k of a range')
        parser.add_argument('--k-max', type=int, help='Largest k of a range (default k-min)')
        parser.add_argument('--m-min', type=int, help='Smallest M')
        parser.add_argument('--m-max', type=int, help='Largest M')
        parser.add_argument('--out', help='Write every record to this file (CSV for .csv, JSON otherwise)')
        parser.add_argument('--parallel', type=int, help='Worker processes')

    def run(self, config):
        fmt = config['format']
        k_values = list(config['k_range'])
        records = list(enumerate_range(k_values, config['M_range'], parallel=config.get('parallel')))
        summary = summarize(records, k_values)
        report = self._report(config, summary)

        if config.get('out'):
            out = Path(config['out'])
            file_format = 'csv' if out.suffix.lower() == '.csv' or fmt == 'csv' else 'json'
            export_report(records, file_format, out)
        elif fmt == 'csv':
            self.stdout.write(render_records(records, 'csv'), ending='')
            self.finish(report)
            return

        lines = [
            f"admissible tuples: {summary.count}",
            f"max mu/d: {summary.max_ratio if summary.max_ratio is not None else '-'}"
            + (f" at {summary.max_ratio_witness}" if summary.max_ratio_witness else ""),
            f"min m: {summary.min_m if summary.min_m is not None else '-'}"
            + (f" at {summary.min_m_witness}" if summary.min_m_witness else ""),
        ]
        lines.extend(f"k={k}: {count} tuples" for k, count in summary.count_by_k.items())
        lines.extend(f"M={M}: max mu/d {ratio}" for M, ratio in summary.max_ratio_by_M.items())
        lines.append(f"trend non-decreasing: {'yes' if summary.trend_non_decreasing else 'no'}")
        lines.extend(f"failure: {record.params}" for record in summary.failures)
        lines.extend(verdict_rows(report.checks))
        if config.get('out'):
            lines.append(f"records written to {config['out']}")
        self.emit(report, 'json' if fmt == 'json' else 'text', lines)
        self.finish(report)

    def _report(self, config, summary) -> CommandReport:
        return CommandReport(
            command='explore',
            input=self.input_echo(config, ['k', 'k_min', 'k_max', 'm_min', 'm_max', 'out']),
            checks=[Verdict.equal('certificate_failures', len(summary.failures), 0)],
            data={'summary': SurveySummarySerializer(summary).data},
        )
