"""
Shared plumbing for the lab's management commands.

A command declares the serializer validating its options and implements
``run``. Options come from the flags and, with ``--config``, from a file of
``key = value`` lines; flags win. Any exception leaves ``handle`` as a
CommandError carrying its exit code.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional

from django.core.management.base import BaseCommand, CommandError
from dotenv import dotenv_values

from rigidity import __version__
from rigidity.params import Verdict
from rigidity.reports import render_json

from .exceptions import EXIT_CHECK_FAILED, EXIT_INVALID_INPUT, as_command_error
from .serializers import JsonReportSerializer, VerdictSerializer

logger = logging.getLogger(__name__)

TOOL_NAME = "rigidity-lab"
RELATION_SYMBOLS = {'>=': '≥', '==': '='}


@dataclass
class CommandReport:
    command: str
    input: Dict
    checks: List[Verdict] = field(default_factory=list)
    data: Dict = field(default_factory=dict)
    tool: str = TOOL_NAME
    version: str = __version__

    @property
    def passed(self) -> bool:
        return all(check.holds for check in self.checks)

    @property
    def verdict(self) -> str:
        return 'PASS' if self.passed else 'FAIL'


def verdict_row(row: dict) -> str:
    """'sum_deg 14 ≥ 10 PASS' from a serialized verdict."""
    symbol = RELATION_SYMBOLS.get(row['relation'], row['relation'])
    status = 'PASS' if row['holds'] else 'FAIL'
    return f"{row['name']} {row['value']} {symbol} {row['threshold']} {status}"


def verdict_rows(verdicts: List[Verdict]) -> List[str]:
    return [verdict_row(row) for row in VerdictSerializer(verdicts, many=True).data]


def read_config_file(path: str) -> Dict[str, str]:
    """
    Read ``key = value`` lines.

    Raises:
        CommandError: Exit code 2 if the file does not exist
    """
    config_path = Path(path)
    if not config_path.is_file():
        raise CommandError(f"Config file not found: {path}", returncode=EXIT_INVALID_INPUT)
    return {key: value for key, value in dotenv_values(config_path).items() if value is not None}


class LabCommand(BaseCommand):
    """
    Base class for the lab's commands.

    Subclasses set ``config_serializer_class`` and implement
    ``add_run_arguments`` and ``run``.
    """
    config_serializer_class = None
    formats = ('text', 'json')

    def add_arguments(self, parser):
        parser.add_argument('--format', choices=self.formats, help='Output format (default text)')
        parser.add_argument('--config', help='File of key = value lines; flags override it')
        self.add_run_arguments(parser)

    def add_run_arguments(self, parser):
        pass

    def add_params_arguments(self, parser):
        parser.add_argument('--k', type=int, help='Number of equations')
        parser.add_argument('--M', type=int, help='Dimension of the variety')
        parser.add_argument('--d', help='Degrees, comma-separated and non-decreasing, e.g. 4,4')
        parser.add_argument('--xi', help='Multiplicities at the singular point, e.g. 2,1')

    def load_config(self, options: dict) -> dict:
        """
        Merge the config file with the flags and validate the result.

        Raises:
            ValidationError: If the merged options are invalid
        """
        field_names = list(self.config_serializer_class().fields)
        data = {}
        if options.get('config'):
            file_values = read_config_file(options['config'])
            data.update({name: file_values[name] for name in field_names if name in file_values})
        data.update({name: options[name] for name in field_names if options.get(name) is not None})

        serializer = self.config_serializer_class(data=data)
        serializer.is_valid(raise_exception=True)
        return serializer.validated_data

    def handle(self, *args, **options):
        try:
            config = self.load_config(options)
            self.run(config)
        except Exception as exc:
            raise as_command_error(exc) from exc

    def run(self, config: dict) -> None:
        raise NotImplementedError('subclasses of LabCommand must provide a run() method')

    def input_echo(self, config: dict, names: List[str]) -> Dict:
        echo = {}
        for name in names:
            value = config.get(name)
            if value is None:
                continue
            if isinstance(value, tuple):
                value = list(value)
            elif not isinstance(value, (int, str, bool)):
                value = str(value)
            echo[name] = value
        return echo

    def emit(self, report: CommandReport, fmt: str, text_lines: Optional[List[str]] = None) -> None:
        """Print the report as JSON or as text lines."""
        if fmt == 'json':
            self.stdout.write(render_json(JsonReportSerializer(report).data), ending='')
            return
        for line in text_lines or []:
            self.stdout.write(line)
        self.stdout.write(f"verdict: {report.verdict}")

    def finish(self, report: CommandReport) -> None:
        """Exit code 1 when a check failed."""
        if not report.passed:
            failed = [check.name for check in report.checks if not check.holds]
            raise CommandError(f"Failed checks: {', '.join(failed)}", returncode=EXIT_CHECK_FAILED)
