"""
Tests for parameter validation and the two admissibility hypotheses.
"""

from fractions import Fraction
from math import prod

from django.test import SimpleTestCase, override_settings

from rigidity.conf import lab_setting
from rigidity.exceptions import ShapeError
from rigidity.params import (
    admissible,
    check_dimension_inequality,
    check_main_inequality,
    check_terminal,
    exceptional_discrepancy,
    iter_degree_vectors,
    mu_over_d,
    parse_int_list,
    shape_only,
    type_weight,
    validate_shape,
)


class TestValidateShape(SimpleTestCase):
    """Tests for validate_shape and the derived invariants."""

    def test_witness_tuple(self):
        """Test that (4,4),(2,1) derives c_*=0, mu=2, d=16 and type (2)."""
        p = validate_shape(2, 6, (4, 4), (2, 1))
        self.assertEqual(p.c_star, 0)
        self.assertEqual(p.mu, 2)
        self.assertEqual(p.deg_v, 16)
        self.assertEqual(p.sing_type, (2,))
        self.assertEqual(p.l, 1)

    def test_smooth_point(self):
        """Test that all xi_i = 1 gives an empty type and mu = 1."""
        p = validate_shape(2, 5, (3, 4), (1, 1))
        self.assertEqual(p.c_star, 0)
        self.assertEqual(p.mu, 1)
        self.assertEqual(p.sing_type, ())

    def test_cone_equations_counted(self):
        """Test that c_* counts the equations with xi_i = d_i."""
        p = validate_shape(2, 5, (3, 4), (3, 4))
        self.assertEqual(p.c_star, 2)
        self.assertEqual(p.sing_type, (3, 4))

    def test_sing_type_is_sorted(self):
        """Test that the type is the sorted list of xi_i >= 2, not positional."""
        p = validate_shape(3, 9, (4, 4, 4), (3, 1, 2))
        self.assertEqual(p.sing_type, (2, 3))
        self.assertEqual(type_weight(p), 5)

    def test_error_messages_name_the_constraint(self):
        """Test that each violation names the first failed constraint."""
        cases = [
            ((1, 3, (4,), (1,)), "k below 2"),
            ((2, 4, (3, 3), (1, 1)), "M below 2k+1"),
            ((2, 6, (4, 4, 4), (1, 1, 1)), "length mismatch"),
            ((2, 6, (4, 4), (1,)), "length mismatch"),
            ((2, 6, (1, 7), (1, 1)), "degree below 2"),
            ((2, 6, (5, 3), (1, 1)), "degrees not sorted"),
            ((2, 6, (4, 5), (1, 1)), "degree sum mismatch"),
            ((2, 6, (4, 4), (0, 1)), "xi below 1"),
            ((2, 6, (4, 4), (5, 1)), "xi exceeds degree"),
        ]
        for args, message in cases:
            with self.subTest(args=args):
                with self.assertRaisesMessage(ShapeError, message):
                    validate_shape(*args)

    def test_shape_error_is_value_error(self):
        """Test that ShapeError can be caught as ValueError."""
        with self.assertRaises(ValueError):
            validate_shape(2, 6, (4, 4), (9, 1))

    def test_non_integer_entries_rejected(self):
        """Test that 3.7 or '4' as an entry raises ShapeError instead of being truncated."""
        with self.assertRaisesMessage(ShapeError, "not an integer"):
            validate_shape(2, 6, (4, 4), (3.7, 1))
        with self.assertRaises(ShapeError):
            validate_shape(2, 6, (4.5, 3.5), (1, 1))
        with self.assertRaises(ShapeError):
            shape_only(("4", 4), (1, 1))
        # integral values of other numeric types are accepted
        self.assertEqual(validate_shape(2, 6, (4.0, Fraction(4)), (2, 1)).degrees.entries, (4, 4))

    def test_derived_fields_match_naive_rederivation(self):
        """Test that derived invariants match a recomputation from the raw vectors."""
        for M in range(5, 10):
            for d in iter_degree_vectors(2, M):
                for x1 in range(1, d[0] + 1):
                    for x2 in range(1, d[1] + 1):
                        p = validate_shape(2, M, d, (x1, x2))
                        xi = (x1, x2)
                        self.assertEqual(p.c_star, sum(1 for a, b in zip(d, xi) if a == b))
                        self.assertEqual(p.mu, x1 * x2)
                        self.assertEqual(p.deg_v, prod(d))
                        self.assertEqual(list(p.sing_type), sorted(x for x in xi if x >= 2))
                        self.assertLessEqual(p.mu, p.deg_v)

    def test_shape_only_single_factor(self):
        """Test that shape_only accepts a single equation and derives M."""
        p = shape_only((5,), (1,))
        self.assertEqual(p.k, 1)
        self.assertEqual(p.M, 4)

    def test_shape_only_still_checks_multiplicities(self):
        """Test that shape_only rejects xi above the degree."""
        with self.assertRaisesMessage(ShapeError, "xi exceeds degree"):
            shape_only((2, 2), (3, 1))


class TestHypotheses(SimpleTestCase):
    """Tests for the main and dimension inequalities."""

    def test_main_inequality_witness(self):
        """Test lhs 52 against rhs 28 for (4,4),(2,1)."""
        verdict = check_main_inequality(validate_shape(2, 6, (4, 4), (2, 1)))
        self.assertEqual((verdict.lhs, verdict.rhs), (52, 28))
        self.assertTrue(verdict.holds)
        self.assertEqual(verdict.margin, 24)

    def test_main_inequality_smooth(self):
        """Test lhs 46 against rhs 24 for (3,4),(1,1)."""
        verdict = check_main_inequality(validate_shape(2, 5, (3, 4), (1, 1)))
        self.assertEqual((verdict.lhs, verdict.rhs), (46, 24))
        self.assertTrue(verdict.holds)

    def test_main_inequality_fails_for_cones(self):
        """Test that all xi_i = d_i fails with lhs 18 < rhs 28."""
        verdict = check_main_inequality(validate_shape(2, 5, (3, 4), (3, 4)))
        self.assertEqual((verdict.lhs, verdict.rhs), (18, 28))
        self.assertFalse(verdict.holds)

    def test_main_inequality_matches_naive_sum(self):
        """Test both sides against a direct re-summation."""
        for M in range(5, 11):
            for d in iter_degree_vectors(2, M):
                p = validate_shape(2, M, d, (min(2, d[0]), 1))
                lhs = 0
                for di, xi in zip(d, p.multiplicities):
                    lhs += (di + 1) * (di + 2) - xi * (xi + 1)
                verdict = check_main_inequality(p)
                self.assertEqual(verdict.lhs, lhs)
                self.assertEqual(verdict.rhs, 4 * M + 2 * d[-1] + 2 * p.c_star - 4)

    def test_dimension_inequality(self):
        """Test 6 >= 6 holding and 5 >= 6 failing."""
        holds = check_dimension_inequality(validate_shape(2, 6, (4, 4), (2, 1)))
        self.assertEqual((holds.lhs, holds.rhs), (6, 6))
        self.assertTrue(holds.holds)
        fails = check_dimension_inequality(validate_shape(2, 5, (3, 4), (2, 1)))
        self.assertEqual((fails.lhs, fails.rhs), (5, 6))
        self.assertFalse(fails.holds)

    def test_dimension_inequality_empty_sum(self):
        """Test that a smooth point gives rhs 3."""
        verdict = check_dimension_inequality(validate_shape(2, 5, (3, 4), (1, 1)))
        self.assertEqual(verdict.rhs, 3)
        self.assertTrue(verdict.holds)

    def test_checks_are_pure(self):
        """Test that repeated checks give identical verdicts."""
        p = validate_shape(3, 9, (4, 4, 4), (2, 1, 1))
        self.assertEqual(check_main_inequality(p), check_main_inequality(p))
        self.assertEqual(check_dimension_inequality(p), check_dimension_inequality(p))

    def test_admissible(self):
        """Test that admissible requires both hypotheses."""
        self.assertTrue(admissible(validate_shape(2, 6, (4, 4), (2, 1))))
        self.assertFalse(admissible(validate_shape(2, 5, (3, 4), (2, 1))))


class TestRatiosAndDiscrepancy(SimpleTestCase):
    """Tests for mu/d and the discrepancy of the point."""

    def test_mu_over_d_reduced(self):
        """Test that 2/16 is reported as 1/8."""
        ratio = mu_over_d(validate_shape(2, 6, (4, 4), (2, 1)))
        self.assertEqual(ratio, Fraction(1, 8))
        self.assertEqual(str(ratio), "1/8")

    def test_mu_over_d_extremes(self):
        """Test 1/d at a smooth point and 1 when every equation is a cone."""
        self.assertEqual(mu_over_d(validate_shape(2, 5, (3, 4), (1, 1))), Fraction(1, 12))
        self.assertEqual(mu_over_d(validate_shape(2, 5, (3, 4), (3, 4))), 1)

    def test_mu_over_d_equals_one_iff_all_cones(self):
        """Test that mu/d = 1 exactly when c_* = k."""
        for d in iter_degree_vectors(2, 7):
            for x1 in range(1, d[0] + 1):
                for x2 in range(1, d[1] + 1):
                    p = validate_shape(2, 7, d, (x1, x2))
                    self.assertEqual(mu_over_d(p) == 1, p.c_star == p.k)

    def test_discrepancy(self):
        """Test a = M + k - 1 - sum(xi) for the witness."""
        p = validate_shape(2, 6, (4, 4), (2, 1))
        self.assertEqual(exceptional_discrepancy(p), 4)
        self.assertTrue(check_terminal(p).holds)

    def test_admissible_points_are_terminal(self):
        """Test that the dimension inequality forces a positive discrepancy."""
        for M in range(5, 12):
            for d in iter_degree_vectors(2, M):
                for x1 in range(1, d[0] + 1):
                    for x2 in range(1, d[1] + 1):
                        p = validate_shape(2, M, d, (x1, x2))
                        if check_dimension_inequality(p).holds:
                            self.assertGreaterEqual(exceptional_discrepancy(p), 2)


class TestHelpers(SimpleTestCase):
    """Tests for parsing, enumeration and settings access."""

    def test_parse_int_list(self):
        """Test parsing comma-separated integers."""
        self.assertEqual(parse_int_list("4,4"), (4, 4))
        self.assertEqual(parse_int_list(" 2, 1 "), (2, 1))

    def test_parse_int_list_malformed(self):
        """Test that malformed lists raise ShapeError."""
        for text in ["", "4,", "a,b", "4;4"]:
            with self.subTest(text=text):
                with self.assertRaises(ShapeError):
                    parse_int_list(text)

    def test_iter_degree_vectors(self):
        """Test the sorted compositions of 8 into two parts of at least 2."""
        self.assertEqual(list(iter_degree_vectors(2, 6)), [(2, 6), (3, 5), (4, 4)])

    def test_iter_degree_vectors_matches_naive(self):
        """Test the pruned generator against filtering every tuple."""
        from itertools import product
        for k in (2, 3):
            for M in range(2 * k + 1, 12):
                naive = [
                    d for d in product(range(2, M + k + 1), repeat=k)
                    if sum(d) == M + k and list(d) == sorted(d)
                ]
                self.assertEqual(list(iter_degree_vectors(k, M)), naive)

    def test_iter_degree_vectors_first(self):
        """Test restricting the leading degree."""
        self.assertEqual(list(iter_degree_vectors(2, 6, first=3)), [(3, 5)])
        self.assertEqual(list(iter_degree_vectors(2, 6, first=5)), [])

    def test_lab_setting_defaults(self):
        """Test that settings fall back to the built-in defaults."""
        with override_settings(RIGIDITY_LAB={}):
            self.assertEqual(lab_setting('ENUMERATION_CAP'), 10_000_000)
            self.assertEqual(lab_setting('THRESHOLD_FACTOR'), Fraction(4))
            self.assertEqual(lab_setting('MIN_PASS_RATE'), Fraction(1, 2))

    def test_lab_setting_unknown(self):
        """Test that an unknown setting raises KeyError."""
        with self.assertRaises(KeyError):
            lab_setting('NO_SUCH_SETTING')
