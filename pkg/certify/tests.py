"""
Test suite for the certification engine and the lab's commands.
"""

import json
import tempfile
from io import StringIO
from pathlib import Path

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, override_settings
from rest_framework.exceptions import ValidationError

from rigidity.exceptions import BudgetError, InternalError, ShapeError
from rigidity.explorer import enumerate_admissible
from rigidity.params import Verdict, validate_shape
from rigidity.reports import render_records

from .engine import BaseCheck, CertificationEngine, CheckRegistry
from .exceptions import EXIT_CHECK_FAILED, EXIT_INVALID_INPUT, EXIT_RESOURCE, describe, exit_code_for
from .rigidity_checks import VERIFY_CHECKS

WITNESS = {'k': 2, 'M': 6, 'd': '4,4', 'xi': '2,1'}


def run(command, **options):
    """Run a command and return its stdout."""
    out = StringIO()
    call_command(command, stdout=out, **options)
    return out.getvalue()


class TestCheckRegistry(SimpleTestCase):
    """Tests for the CheckRegistry."""

    def test_checks_are_registered(self):
        """Test that every verify check is auto-registered."""
        for name in VERIFY_CHECKS:
            self.assertIn(name, CheckRegistry.get_all_checks())

    def test_get_check(self):
        """Test retrieving a check by name."""
        check_class = CheckRegistry.get_check('main_inequality')
        self.assertEqual(check_class.name, 'main_inequality')

    def test_get_nonexistent_check_raises_error(self):
        """Test that getting a non-existent check raises KeyError."""
        with self.assertRaises(KeyError):
            CheckRegistry.get_check('nonexistent_check')

    def test_check_exists(self):
        """Test checking if a check exists."""
        self.assertTrue(CheckRegistry.check_exists('codim_theorem21'))
        self.assertFalse(CheckRegistry.check_exists('nonexistent_check'))

    def test_defining_a_check_registers_it(self):
        """Test that a subclass with a name registers itself and one without does not."""
        class DegreeAtLeastThree(BaseCheck):
            name = 'test_degree_at_least_3'

            def evaluate(self, params):
                return Verdict.at_least(self.name, min(params.degrees), 3)

        class Unnamed(BaseCheck):
            def evaluate(self, params):
                return None

        try:
            self.assertIs(CheckRegistry.get_check('test_degree_at_least_3'), DegreeAtLeastThree)
            self.assertNotIn(Unnamed, CheckRegistry.get_all_checks().values())
            verdict = DegreeAtLeastThree().evaluate(validate_shape(2, 6, (4, 4), (2, 1)))
            self.assertTrue(verdict.holds)
        finally:
            CheckRegistry._checks.pop('test_degree_at_least_3', None)


class TestCertificationEngine(SimpleTestCase):
    """Tests for the CertificationEngine."""

    def setUp(self):
        self.engine = CertificationEngine()

    def test_witness_passes_every_check(self):
        """Test that (4,4),(2,1) passes all checks, in order."""
        result = self.engine.evaluate_checks(validate_shape(2, 6, (4, 4), (2, 1)), VERIFY_CHECKS)
        self.assertTrue(result['passed'])
        self.assertEqual(list(result['details']), VERIFY_CHECKS)
        self.assertEqual(str(result['details']['exclusion_certificate'].value), '4/3')

    def test_failing_tuple(self):
        """Test that the dimension inequality fails for (3,4),(2,1) at M=5."""
        result = self.engine.evaluate_checks(validate_shape(2, 5, (3, 4), (2, 1)), VERIFY_CHECKS)
        self.assertFalse(result['passed'])
        self.assertFalse(result['details']['dimension_inequality'].holds)
        self.assertTrue(result['details']['main_inequality'].holds)

    def test_unknown_check(self):
        """Test that an unknown check name raises KeyError."""
        with self.assertRaises(KeyError):
            self.engine.evaluate_checks(validate_shape(2, 6, (4, 4), (2, 1)), ['nonexistent_check'])


class TestVerifyCommand(SimpleTestCase):
    """Tests for the verify command."""

    def test_witness(self):
        """Test exit 0 with the final bound 4/3."""
        output = run('verify', **WITNESS)
        self.assertIn('main_inequality 52 ≥ 28 PASS', output)
        self.assertIn('final_bound: 4/3', output)
        self.assertIn('verdict: PASS', output)

    def test_failed_check_exits_one(self):
        """Test that the failing dimension inequality exits with code 1."""
        with self.assertRaises(CommandError) as ctx:
            run('verify', k=2, M=5, d='3,4', xi='2,1')
        self.assertEqual(ctx.exception.returncode, EXIT_CHECK_FAILED)
        self.assertIn('dimension_inequality', str(ctx.exception))

    def test_invalid_input_exits_two(self):
        """Test that xi above the degree exits with code 2."""
        with self.assertRaises(CommandError) as ctx:
            run('verify', k=2, M=6, d='4,4', xi='9,1')
        self.assertEqual(ctx.exception.returncode, EXIT_INVALID_INPUT)
        self.assertIn('xi exceeds degree', str(ctx.exception))

    def test_malformed_list_exits_two(self):
        """Test that an unparsable degree list exits with code 2."""
        with self.assertRaises(CommandError) as ctx:
            run('verify', k=2, M=6, d='4;4', xi='2,1')
        self.assertEqual(ctx.exception.returncode, EXIT_INVALID_INPUT)

    def test_missing_parameter_exits_two(self):
        """Test that omitting xi exits with code 2."""
        with self.assertRaises(CommandError) as ctx:
            run('verify', k=2, M=6, d='4,4')
        self.assertEqual(ctx.exception.returncode, EXIT_INVALID_INPUT)

    def test_json_report(self):
        """Test the JSON key order, values and byte-identical re-dump."""
        output = run('verify', format='json', **WITNESS)
        report = json.loads(output)
        self.assertEqual(list(report), ['tool', 'version', 'command', 'input', 'checks', 'data', 'verdict'])
        self.assertEqual(report['tool'], 'rigidity-lab')
        self.assertEqual(report['command'], 'verify')
        self.assertEqual(report['input'], {'k': 2, 'M': 6, 'd': [4, 4], 'xi': [2, 1]})
        self.assertEqual([check['name'] for check in report['checks']], VERIFY_CHECKS)
        self.assertEqual(report['data']['final_bound'], '4/3')
        self.assertEqual(report['data']['mu_over_d'], '1/8')
        self.assertEqual(report['verdict'], 'PASS')
        self.assertEqual(json.dumps(report, indent=2, ensure_ascii=False) + '\n', output)

    def test_json_numbers(self):
        """Test that integer values stay numbers and rationals become strings."""
        report = json.loads(run('verify', format='json', **WITNESS))
        checks = {check['name']: check for check in report['checks']}
        self.assertEqual(checks['main_inequality']['value'], 52)
        self.assertEqual(checks['exclusion_certificate']['value'], '4/3')
        self.assertEqual(checks['slope_telescoping']['relation'], '==')


class TestConfigFile(SimpleTestCase):
    """Tests for --config files."""

    def setUp(self):
        self.tmpdir = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmpdir.cleanup)

    def write_config(self, text):
        path = Path(self.tmpdir.name) / 'lab.env'
        path.write_text(text, encoding='utf-8')
        return str(path)

    def test_values_from_file(self):
        """Test that a config file alone supplies the tuple."""
        path = self.write_config("k = 2\nM = 6\nd = 4,4\nxi = 2,1\n")
        self.assertIn('verdict: PASS', run('verify', config=path))

    def test_flags_win(self):
        """Test that a flag overrides the file."""
        path = self.write_config("k = 2\nM = 6\nd = 4,4\nxi = 9,1\n")
        self.assertIn('verdict: PASS', run('verify', config=path, xi='2,1'))

    def test_unknown_keys_ignored(self):
        """Test that keys the command does not take are skipped."""
        path = self.write_config("k = 2\nM = 6\nd = 4,4\nxi = 2,1\nprime = 7\n")
        self.assertIn('verdict: PASS', run('verify', config=path))

    def test_missing_file_exits_two(self):
        """Test that a missing config file exits with code 2."""
        with self.assertRaises(CommandError) as ctx:
            run('verify', config=str(Path(self.tmpdir.name) / 'missing.env'))
        self.assertEqual(ctx.exception.returncode, EXIT_INVALID_INPUT)


class TestScheduleCommand(SimpleTestCase):
    """Tests for the schedule command."""

    def test_witness(self):
        """Test the tables, the slope row and the chain."""
        output = run('schedule', **WITNESS)
        self.assertIn('a: 1', output)
        self.assertIn('3 5 2', output)
        self.assertIn('slopes: 2, 3/2, 3/2, 4/3, 4/3', output)
        self.assertIn('step 5: x4/3 -> 4/3', output)
        self.assertIn('slope_telescoping 16 = 16 PASS', output)

    def test_degenerate(self):
        """Test that cones at the point print the notice and still exit 0."""
        output = run('schedule', k=2, M=6, d='4,4', xi='4,4')
        self.assertIn('degenerate schedule: every equation is a cone at the point', output)
        self.assertIn('a: -', output)
        self.assertIn('verdict: PASS', output)

    def test_json(self):
        """Test the schedule data in the JSON report."""
        report = json.loads(run('schedule', format='json', **WITNESS))
        self.assertEqual(report['data']['slopes'], ['2', '3/2', '3/2', '4/3', '4/3'])
        self.assertEqual(report['data']['c'], {'1': 1, '2': 3, '3': 5})
        self.assertEqual(report['data']['divisors'], [[1, 1], [2, 1], [2, 2], [3, 1], [3, 2]])
        self.assertEqual(report['data']['slope_product'], '8')


class TestCodimCommand(SimpleTestCase):
    """Tests for the codim command."""

    def test_witness(self):
        """Test the headline rows for (4,4),(2,1)."""
        output = run('codim', **WITNESS)
        self.assertIn('sum_deg 14 ≥ 10 PASS', output)
        self.assertIn('b_plus_line 17 ≥ 5 PASS', output)
        self.assertIn('prop21 7 ≥ 5 PASS', output)
        self.assertIn('theorem21_total 11 ≥ 9 PASS', output)
        self.assertIn('identity_total 9 = 9', output)

    def test_inadmissible_exits_one(self):
        """Test that a tuple failing the line count exits with code 1."""
        with self.assertRaises(CommandError) as ctx:
            run('codim', k=2, M=5, d='3,4', xi='3,4')
        self.assertEqual(ctx.exception.returncode, EXIT_CHECK_FAILED)


class TestExploreCommand(SimpleTestCase):
    """Tests for the explore command."""

    def setUp(self):
        self.tmpdir = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmpdir.cleanup)

    def test_csv_file(self):
        """Test that --out writes the sorted records and the summary exits 0."""
        path = Path(self.tmpdir.name) / 'survey.csv'
        output = run('explore', k=2, m_min=5, m_max=8, out=str(path))
        expected = render_records(enumerate_admissible(2, range(5, 9)), 'csv')
        self.assertEqual(path.read_text(encoding='utf-8'), expected)
        self.assertIn('certificate_failures 0 = 0 PASS', output)
        self.assertIn('verdict: PASS', output)

    def test_parallel_output_identical(self):
        """Test that two workers write the same bytes."""
        serial = Path(self.tmpdir.name) / 'serial.csv'
        parallel = Path(self.tmpdir.name) / 'parallel.csv'
        run('explore', k=2, m_min=5, m_max=9, out=str(serial))
        run('explore', k=2, m_min=5, m_max=9, out=str(parallel), parallel=2)
        self.assertEqual(serial.read_bytes(), parallel.read_bytes())

    def test_csv_to_stdout(self):
        """Test that format csv without --out prints the records."""
        output = run('explore', k=2, m_min=5, m_max=6, format='csv')
        self.assertEqual(output, render_records(enumerate_admissible(2, [5, 6]), 'csv'))

    def test_json_summary(self):
        """Test the survey summary in the JSON report."""
        report = json.loads(run('explore', k_min=2, k_max=3, m_min=5, m_max=7, format='json'))
        summary = report['data']['summary']
        self.assertEqual(list(summary['count_by_k']), ['2', '3'])
        self.assertEqual(summary['failures'], [])
        self.assertEqual(report['verdict'], 'PASS')

    def test_json_out_file(self):
        """Test that a non-csv --out writes JSON rows."""
        path = Path(self.tmpdir.name) / 'survey.json'
        run('explore', k=2, m_min=5, m_max=6, out=str(path))
        rows = json.loads(path.read_text(encoding='utf-8'))
        self.assertEqual(rows[0]['d'], [2, 5])

    def test_empty_range(self):
        """Test that a range below 2k+1 reports nothing and still exits 0."""
        output = run('explore', k=3, m_min=5, m_max=6)
        self.assertIn('admissible tuples: 0', output)

    def test_invalid_ranges_exit_two(self):
        """Test k below 2, an empty M range and a missing k."""
        for options in ({'k': 1, 'm_min': 5, 'm_max': 6},
                        {'k': 2, 'm_min': 8, 'm_max': 6},
                        {'m_min': 5, 'm_max': 6}):
            with self.subTest(options=options):
                with self.assertRaises(CommandError) as ctx:
                    run('explore', **options)
                self.assertEqual(ctx.exception.returncode, EXIT_INVALID_INPUT)

    @override_settings(RIGIDITY_LAB={'ENUMERATION_CAP': 10})
    def test_cap_exits_three(self):
        """Test that exceeding the enumeration cap exits with code 3."""
        with self.assertRaises(CommandError) as ctx:
            run('explore', k=2, m_min=5, m_max=9)
        self.assertEqual(ctx.exception.returncode, EXIT_RESOURCE)


class TestFFCheckCommand(SimpleTestCase):
    """Tests for the ff_check command."""

    SMALL = {'k': 2, 'M': 5, 'd': '3,4', 'xi': '1,1', 'prime': 3}

    @override_settings(RIGIDITY_LAB={'MIN_PASS_RATE': '0'})
    def test_small_run(self):
        """Test the distribution and pass-rate lines over GF(3)."""
        output = run('ff_check', trials=4, **self.SMALL)
        self.assertIn('field: GF(3), 7 variables, threshold factor 4', output)
        self.assertIn('seeds: 0..3', output)
        self.assertIn('prefix 1: ', output)
        self.assertIn('prefix 7: ', output)
        self.assertIn('pass rate: ', output)
        self.assertIn('verdict: PASS', output)

    def test_witness_run(self):
        """Test twenty seeds for (4,4),(2,1) over GF(5) from seed 1."""
        output = run('ff_check', prime=5, trials=20, seed=1, **WITNESS)
        self.assertIn('seeds: 1..20', output)
        self.assertIn('pass rate: ', output)
        self.assertIn('verdict: PASS', output)

    @override_settings(RIGIDITY_LAB={'MIN_PASS_RATE': '1'})
    def test_low_pass_rate_exits_one(self):
        """Test that a tiny threshold factor fails every seed and exits with code 1."""
        with self.assertRaises(CommandError) as ctx:
            run('ff_check', trials=3, threshold_factor='1/1000', **self.SMALL)
        self.assertEqual(ctx.exception.returncode, EXIT_CHECK_FAILED)

    def test_json(self):
        """Test the batch statistics in the JSON report."""
        with override_settings(RIGIDITY_LAB={'MIN_PASS_RATE': '0'}):
            report = json.loads(run('ff_check', trials=3, seed=5, format='json', **self.SMALL))
        self.assertEqual(report['data']['trials'], 3)
        self.assertEqual(report['data']['forms'], 7)
        self.assertEqual(report['input']['prime'], 3)
        counts = report['data']['count_distributions']
        self.assertEqual(sum(counts['1'].values()), 3)

    def test_not_prime_exits_two(self):
        """Test that a composite field size exits with code 2."""
        with self.assertRaises(CommandError) as ctx:
            run('ff_check', k=2, M=5, d='3,4', xi='1,1', prime=4)
        self.assertEqual(ctx.exception.returncode, EXIT_INVALID_INPUT)

    def test_non_positive_factor_exits_two(self):
        """Test that a zero threshold factor exits with code 2."""
        with self.assertRaises(CommandError) as ctx:
            run('ff_check', threshold_factor='0', **self.SMALL)
        self.assertEqual(ctx.exception.returncode, EXIT_INVALID_INPUT)

    @override_settings(RIGIDITY_LAB={'ENUMERATION_CAP': 10})
    def test_budget_exits_three(self):
        """Test that a field too large for the cap exits with code 3."""
        with self.assertRaises(CommandError) as ctx:
            run('ff_check', trials=1, **self.SMALL)
        self.assertEqual(ctx.exception.returncode, EXIT_RESOURCE)


class TestExitCodes(SimpleTestCase):
    """Tests for the exception to exit code mapping."""

    def test_exit_codes(self):
        """Test every class of exception."""
        self.assertEqual(exit_code_for(CommandError('x', returncode=1)), 1)
        self.assertEqual(exit_code_for(ShapeError('x')), 2)
        self.assertEqual(exit_code_for(ValidationError('x')), 2)
        self.assertEqual(exit_code_for(BudgetError('x')), 3)
        self.assertEqual(exit_code_for(InternalError('x')), 3)
        self.assertEqual(exit_code_for(RuntimeError('x')), 3)

    def test_describe_flattens_field_errors(self):
        """Test the one-line message of a serializer error."""
        self.assertEqual(describe(ValidationError({'d': ['bad list']})), 'd: bad list')
        self.assertEqual(describe(ValidationError({'non_field_errors': ['k below 2']})), 'k below 2')
        self.assertEqual(describe(ShapeError('xi below 1')), 'xi below 1')
