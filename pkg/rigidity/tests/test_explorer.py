"""
Tests for the admissible-tuple enumeration, the survey and its reports.
"""

import io
import json
from fractions import Fraction

from django.test import SimpleTestCase, override_settings

from rigidity.codim import lemma22_count, lemma23_count, standard_degrees, theorem21_assemble
from rigidity.exceptions import ResourceError
from rigidity.explorer import (
    build_record,
    enumerate_admissible,
    enumerate_range,
    projected_size,
    summarize,
    survey,
)
from rigidity.hypertangent import build_schedule, slope_product
from rigidity.params import admissible, iter_degree_vectors, validate_shape
from rigidity.reports import CSV_COLUMNS, export_report, render_records


def naive_admissible(k, M):
    """Every valid tuple that passes both hypotheses, by filtering all shapes."""
    from itertools import product
    found = []
    for d in iter_degree_vectors(k, M):
        for xi in product(*(range(1, di + 1) for di in d)):
            p = validate_shape(k, M, d, xi)
            if admissible(p):
                found.append(p)
    return found


class TestEnumerateAdmissible(SimpleTestCase):
    """Tests for enumerate_admissible."""

    def test_smallest_case(self):
        """Test that k=2, M=5 only admits smooth points."""
        records = list(enumerate_admissible(2, [5]))
        self.assertEqual([(r.params.degrees.entries, r.params.multiplicities.entries) for r in records],
                         [((2, 5), (1, 1)), ((3, 4), (1, 1))])
        self.assertNotIn((3, 4), [r.params.multiplicities.entries for r in records])

    def test_matches_naive_filter(self):
        """Test the pruned enumeration against filtering every shape, k=2 and M <= 10."""
        enumerated = [r.params for r in enumerate_admissible(2, range(5, 11))]
        naive = [p for M in range(5, 11) for p in naive_admissible(2, M)]
        self.assertEqual(enumerated, naive)

    def test_naive_filter_k_three(self):
        """Test the pruned enumeration for k=3, M=7 and M=8."""
        enumerated = [r.params for r in enumerate_admissible(3, [7, 8])]
        naive = naive_admissible(3, 7) + naive_admissible(3, 8)
        self.assertEqual(enumerated, naive)

    def test_lexicographic_order(self):
        """Test that records come sorted by (k, M, d, xi)."""
        keys = [r.sort_key() for r in enumerate_admissible(2, range(5, 13))]
        self.assertEqual(keys, sorted(keys))

    def test_M_below_range_is_skipped(self):
        """Test that M < 2k+1 contributes nothing."""
        self.assertEqual(list(enumerate_admissible(3, range(2, 7))), [])

    def test_k_below_two(self):
        """Test that k=1 raises ValueError."""
        with self.assertRaises(ValueError):
            list(enumerate_admissible(1, [5]))

    def test_every_record_is_certified(self):
        """Test telescoping, the exclusion bound and codimension for k = 2, 3 and M <= 20."""
        for k, top in ((2, 20), (3, 20)):
            for record in enumerate_admissible(k, range(2 * k + 1, top + 1)):
                p = record.params
                s = build_schedule(p)
                self.assertEqual(slope_product(s) * p.mu, p.deg_v)
                self.assertGreaterEqual(record.final_bound, 1)
                if s.m_total >= 2:
                    self.assertEqual(record.final_bound, 4 / (s.slopes[0] * s.slopes[1]))
                self.assertTrue(record.exclusion_ok)
                self.assertTrue(record.all_codim_ok)
                self.assertTrue(record.eq2_ok)
                self.assertGreaterEqual(record.eq1_lhs, record.eq1_rhs)
                self.assertEqual(len(standard_degrees(p)), p.M - 1)
                self.assertEqual(theorem21_assemble(p).identity_total, p.M + p.k + 1)
                for d, xi in p.pairs():
                    self.assertEqual(lemma22_count(d, xi) - (d + 1), lemma23_count(d, xi))

    def test_survey_has_no_failures(self):
        """Test that the survey over k = 2, 3 and 5 <= M <= 20 lists no failures."""
        summary = survey(range(2, 4), range(5, 21), parallel=2)
        self.assertEqual(summary.failures, ())
        self.assertEqual(set(summary.count_by_k), {2, 3})
        self.assertTrue(all(n > 0 for n in summary.count_by_k.values()))
        self.assertEqual(summary.count, sum(summary.count_by_k.values()))

    def test_build_record_witness(self):
        """Test the statistics of (4,4),(2,1)."""
        record = build_record(validate_shape(2, 6, (4, 4), (2, 1)))
        self.assertEqual(record.mu_over_d, Fraction(1, 8))
        self.assertEqual(record.m_total, 5)
        self.assertEqual(record.final_bound, Fraction(4, 3))
        self.assertEqual((record.eq1_lhs, record.eq1_rhs), (52, 28))
        self.assertTrue(record.exclusion_ok)

    def test_cap_exceeded(self):
        """Test that a projection above the cap raises ResourceError."""
        with self.assertRaises(ResourceError):
            list(enumerate_admissible(2, range(5, 8), cap=1))

    def test_cap_from_settings(self):
        """Test that the configured cap applies when none is passed."""
        with override_settings(RIGIDITY_LAB={'ENUMERATION_CAP': 10}):
            with self.assertRaises(ResourceError):
                list(enumerate_admissible(2, range(5, 8)))

    def test_projected_size(self):
        """Test the candidate count sum(prod(d)) for k=2, M=6."""
        self.assertEqual(projected_size(2, [6]), 12 + 15 + 16)

    def test_parallel_is_deterministic(self):
        """Test that two workers give exactly the serial output."""
        serial = list(enumerate_admissible(2, range(5, 15), parallel=1))
        parallel = list(enumerate_admissible(2, range(5, 15), parallel=2))
        self.assertEqual(serial, parallel)


class TestSurvey(SimpleTestCase):
    """Tests for survey and summarize."""

    def test_survey_extremes(self):
        """Test that the maximal ratio is witnessed and at least 1/8 once M=6 is covered."""
        summary = survey([2], range(5, 11))
        self.assertGreaterEqual(summary.max_ratio, Fraction(1, 8))
        witness = summary.max_ratio_witness
        self.assertEqual(Fraction(witness.mu, witness.deg_v), summary.max_ratio)
        self.assertEqual(summary.failures, ())
        self.assertEqual(summary.count, len(list(enumerate_admissible(2, range(5, 11)))))
        self.assertEqual(sorted(summary.max_ratio_by_M), list(range(5, 11)))

    def test_min_m_witness(self):
        """Test that min_m is attained by its witness."""
        summary = survey([2, 3], range(5, 10))
        self.assertEqual(build_schedule(summary.min_m_witness).m_total, summary.min_m)

    def test_count_by_k_includes_empty_k(self):
        """Test that a k with no admissible tuple in range still gets a zero count."""
        summary = survey([2, 3], [5, 6])
        self.assertEqual(summary.count_by_k[3], 0)
        self.assertEqual(summary.count_by_k[2], summary.count)

    def test_empty_survey(self):
        """Test an empty range gives an empty summary and a warning."""
        with self.assertLogs('rigidity.explorer', level='WARNING'):
            summary = survey([3], [5, 6])
        self.assertTrue(summary.empty)
        self.assertIsNone(summary.max_ratio)
        self.assertIsNone(summary.min_m)

    def test_summarize_counts_failures(self):
        """Test that a record failing its certificate is listed and logged."""
        bad = build_record(validate_shape(2, 5, (3, 4), (3, 4)))
        good = build_record(validate_shape(2, 6, (4, 4), (2, 1)))
        with self.assertLogs('rigidity.explorer', level='WARNING'):
            summary = summarize([good, bad])
        self.assertEqual(summary.failures, (bad,))
        self.assertEqual(summary.count, 2)

    def test_enumerate_range_single_cap_check(self):
        """Test that the range-wide cap applies to the sum over k."""
        size = projected_size(2, [7]) + projected_size(3, [7])
        records = list(enumerate_range([2, 3], [7], cap=size))
        self.assertTrue(records)
        with self.assertRaises(ResourceError):
            list(enumerate_range([2, 3], [7], cap=size - 1))


class TestReports(SimpleTestCase):
    """Tests for the CSV and JSON survey reports."""

    def witness_record(self):
        return build_record(validate_shape(2, 6, (4, 4), (2, 1)))

    def test_csv_header_and_row(self):
        """Test the header and the witness row with reduced rationals."""
        text = render_records([self.witness_record()], 'csv')
        header, row = text.splitlines()
        self.assertEqual(header, ','.join(CSV_COLUMNS))
        self.assertEqual(row, '2,6,"4,4","2,1",0,2,16,1/8,5,4/3,52,28,true,true')
        self.assertTrue(text.endswith('\n'))

    def test_csv_is_sorted_and_deterministic(self):
        """Test that input order does not change the output bytes."""
        records = list(enumerate_admissible(2, range(5, 9)))
        forward = render_records(records, 'csv')
        backward = render_records(list(reversed(records)), 'csv')
        self.assertEqual(forward, backward)
        self.assertEqual(len(forward.splitlines()), len(records) + 1)

    def test_json_rows(self):
        """Test the JSON row keys, integer lists and rationals as strings."""
        rows = json.loads(render_records([self.witness_record()], 'json'))
        self.assertEqual(list(rows[0]), list(CSV_COLUMNS))
        self.assertEqual(rows[0]['d'], [4, 4])
        self.assertEqual(rows[0]['mu_over_d'], '1/8')
        self.assertEqual(rows[0]['final_bound'], '4/3')
        self.assertIs(rows[0]['codim_ok'], True)

    def test_unknown_format(self):
        """Test that an unknown format raises ValueError."""
        with self.assertRaises(ValueError):
            render_records([self.witness_record()], 'xml')

    def test_export_to_stream(self):
        """Test writing to an open stream."""
        buffer = io.StringIO()
        export_report([self.witness_record()], 'csv', buffer)
        self.assertEqual(buffer.getvalue(), render_records([self.witness_record()], 'csv'))
