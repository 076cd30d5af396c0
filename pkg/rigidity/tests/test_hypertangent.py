"""
Tests for hypertangent schedules, the ratio chain and the exclusion certificate.
"""

from fractions import Fraction

from django.test import SimpleTestCase

from rigidity.hypertangent import (
    build_schedule,
    c_of_j,
    certify_exclusion,
    level_pairs,
    ratio_chain,
    slope_product,
    telescoping_check,
)
from rigidity.params import iter_degree_vectors, shape_only, validate_shape


def witness():
    return validate_shape(2, 6, (4, 4), (2, 1))


def all_shapes(k, M):
    """Every valid (d, xi) for k and M, admissible or not."""
    def xis(degrees):
        if not degrees:
            yield ()
            return
        for x in range(1, degrees[0] + 1):
            for rest in xis(degrees[1:]):
                yield (x,) + rest

    for d in iter_degree_vectors(k, M):
        for xi in xis(d):
            yield validate_shape(k, M, d, xi)


class TestCountingFunctions(SimpleTestCase):
    """Tests for c(j), m(j) and the level pairs."""

    def test_c_of_j_witness(self):
        """Test c(1) = 1 and c(3) = 5 for (4,4),(2,1)."""
        p = witness()
        self.assertEqual(c_of_j(p, 1), 1)
        self.assertEqual(c_of_j(p, 2), 3)
        self.assertEqual(c_of_j(p, 3), 5)

    def test_c_of_j_cones(self):
        """Test that c vanishes when every equation is a cone."""
        p = validate_shape(2, 6, (4, 4), (4, 4))
        for j in range(1, 6):
            self.assertEqual(c_of_j(p, j), 0)

    def test_c_of_j_matches_pair_enumeration(self):
        """Test c(j) against counting the pairs (i, alpha) one by one."""
        for p in all_shapes(2, 7):
            for j in range(1, p.d_k + 2):
                pairs = [
                    (i, alpha)
                    for i, (d, xi) in enumerate(p.pairs())
                    for alpha in range(1, j + 1)
                    if xi <= alpha <= d - 1
                ]
                self.assertEqual(c_of_j(p, j), len(pairs))

    def test_level_pairs(self):
        """Test the truncations contributing at each level."""
        p = witness()
        self.assertEqual(level_pairs(p, 1), ((2, 1),))
        self.assertEqual(level_pairs(p, 2), ((1, 2), (2, 2)))
        self.assertEqual(level_pairs(p, 4), ())


class TestBuildSchedule(SimpleTestCase):
    """Tests for build_schedule."""

    def test_witness_schedule(self):
        """Test a=1, c=(1,3,5), m=(1,2,2) and the slope row."""
        s = build_schedule(witness())
        self.assertEqual(s.a, 1)
        self.assertEqual(s.c_table, {1: 1, 2: 3, 3: 5})
        self.assertEqual(s.m_table, {1: 1, 2: 2, 3: 2})
        self.assertEqual(list(s.slopes), [Fraction(2), Fraction(3, 2), Fraction(3, 2),
                                          Fraction(4, 3), Fraction(4, 3)])
        self.assertEqual(s.m_total, 5)
        self.assertEqual(s.divisors, ((1, 1), (2, 1), (2, 2), (3, 1), (3, 2)))
        self.assertFalse(s.degenerate)

    def test_degenerate_schedule(self):
        """Test that all xi_i = d_i gives an empty flagged schedule."""
        s = build_schedule(validate_shape(2, 6, (4, 4), (4, 4)))
        self.assertTrue(s.degenerate)
        self.assertIsNone(s.a)
        self.assertEqual(s.slopes, ())
        self.assertEqual(s.m_total, 0)

    def test_every_divisor_at_level_one(self):
        """Test that d=(2,2), xi=(1,1) gives slopes [2, 2]."""
        s = build_schedule(shape_only((2, 2), (1, 1)))
        self.assertEqual(list(s.slopes), [2, 2])

    def test_schedule_invariants(self):
        """Test monotone c, m_total = sum(d_i - xi_i) and non-increasing slopes in (1, 2]."""
        for k, M in [(2, 5), (2, 8), (3, 7), (3, 9)]:
            for p in all_shapes(k, M):
                s = build_schedule(p)
                levels = s.levels
                self.assertTrue(all(s.c_table[a] <= s.c_table[b] for a, b in zip(levels, levels[1:])))
                self.assertTrue(all(m >= 0 for m in s.m_table.values()))
                self.assertEqual(s.m_total, sum(d - xi for d, xi in p.pairs()))
                self.assertEqual(s.m_total, sum(s.m_table.values()))
                self.assertEqual(len(s.slopes), s.m_total)
                self.assertTrue(all(a >= b for a, b in zip(s.slopes, s.slopes[1:])))
                self.assertTrue(all(1 < slope <= 2 for slope in s.slopes))
                for (b, _), slope in zip(s.divisors, s.slopes):
                    self.assertEqual(slope, Fraction(b + 1, b))
                if s.a is not None:
                    self.assertTrue(all(s.c_table[j] == 0 for j in levels if j < s.a))


class TestSlopeProduct(SimpleTestCase):
    """Tests for slope_product and the telescoping identity."""

    def test_witness_product(self):
        """Test 2 * (3/2)^2 * (4/3)^2 = 8."""
        self.assertEqual(slope_product(build_schedule(witness())), 8)

    def test_empty_product(self):
        """Test that the empty schedule has product 1."""
        self.assertEqual(slope_product(build_schedule(validate_shape(2, 6, (4, 4), (4, 4)))), 1)

    def test_single_factor_telescopes(self):
        """Test that a single equation of degree d with xi = 1 gives product d."""
        for d in range(2, 9):
            self.assertEqual(slope_product(build_schedule(shape_only((d,), (1,)))), d)

    def test_telescoping_identity(self):
        """Test slope_product * mu = d for every valid shape, admissible or not."""
        for k, M in [(2, 5), (2, 9), (3, 8)]:
            for p in all_shapes(k, M):
                verdict = telescoping_check(p, build_schedule(p))
                self.assertTrue(verdict.holds, str(p))
                self.assertEqual(verdict.relation, '==')


class TestRatioChain(SimpleTestCase):
    """Tests for ratio_chain and certify_exclusion."""

    def test_witness_chain(self):
        """Test seed 1/2, steps 3/2, 4/3, 4/3 and final bound 4/3."""
        p = witness()
        chain = ratio_chain(p, build_schedule(p))
        self.assertEqual(chain.seed, Fraction(1, 2))
        self.assertEqual([step.slope for step in chain.steps],
                         [Fraction(3, 2), Fraction(4, 3), Fraction(4, 3)])
        self.assertEqual([step.bound for step in chain.steps],
                         [Fraction(3, 4), Fraction(1), Fraction(4, 3)])
        self.assertEqual([step.index for step in chain.steps], [3, 4, 5])
        self.assertEqual(chain.final_bound, Fraction(4, 3))
        self.assertFalse(chain.short_chain)

    def test_witness_certificate(self):
        """Test that the witness is certified with margin 1/3."""
        p = witness()
        certificate = certify_exclusion(ratio_chain(p, build_schedule(p)))
        self.assertTrue(certificate.ok)
        self.assertEqual(certificate.margin, Fraction(1, 3))

    def test_cone_chain_is_short(self):
        """Test seed 4, final bound 4 and margin 3 when every equation is a cone."""
        p = validate_shape(2, 6, (4, 4), (4, 4))
        chain = ratio_chain(p, build_schedule(p))
        self.assertEqual(chain.seed, 4)
        self.assertEqual(chain.final_bound, 4)
        self.assertTrue(chain.short_chain)
        self.assertEqual(chain.steps, ())
        self.assertEqual(certify_exclusion(chain).margin, 3)

    def test_two_smooth_equations_give_bound_one(self):
        """Test that beta_1 = beta_2 = 2 gives a final bound of exactly 1."""
        p = validate_shape(2, 6, (4, 4), (1, 1))
        certificate = certify_exclusion(ratio_chain(p, build_schedule(p)))
        self.assertTrue(certificate.ok)
        self.assertEqual(certificate.margin, 0)

    def test_final_bound_is_four_over_first_two_slopes(self):
        """Test final_bound = 4 / (beta_1 beta_2) whenever m >= 2, and >= 1."""
        for k, M in [(2, 6), (2, 10), (3, 9)]:
            for p in all_shapes(k, M):
                s = build_schedule(p)
                chain = ratio_chain(p, s)
                if s.m_total >= 2:
                    self.assertEqual(chain.final_bound, 4 / (s.slopes[0] * s.slopes[1]))
                    self.assertGreaterEqual(chain.final_bound, 1)

    def test_reversed_steps_keep_final_bound(self):
        """Test that applying the factors in reverse only changes intermediate bounds."""
        p = witness()
        s = build_schedule(p)
        forward = ratio_chain(p, s)
        backward = ratio_chain(p, s, reverse_steps=True)
        self.assertEqual(forward.final_bound, backward.final_bound)
        self.assertNotEqual([st.bound for st in forward.steps], [st.bound for st in backward.steps])
