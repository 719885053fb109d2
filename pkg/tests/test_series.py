import unittest
from fractions import Fraction

from qh_moduli.evaluation import evaluator
from qh_moduli.exceptions import RelationError, UnsupportedGenusError
from qh_moduli.parser import parse
from qh_moduli.series import (SOURCE_CLOSED_FORM, closed_form, compare, genus_shift_check, pde_check,
                              psi_series_relation, series_table, taylor)


class SeriesTableTests(unittest.TestCase):
    def test_genus_three_coefficients(self):
        table = series_table(3, 6)

        self.assertEqual(table.get(6, 0, 0), Fraction(-14, 45))
        self.assertEqual(table.get(0, 0, 2), Fraction(-12))
        self.assertEqual(table.get(0, 0, 0), Fraction(0))

    def test_genus_two_coefficients(self):
        table = series_table(2, 4)

        self.assertEqual(table.get(3, 0, 0), Fraction(-2, 3))
        self.assertEqual(table.get(0, 0, 1), Fraction(-4))
        self.assertEqual(table.get(1, 1, 0), Fraction(4))

    def test_order_is_bounded(self):
        with self.assertRaises(ValueError):
            series_table(2, 99)

    def test_no_closed_form_for_genus_four(self):
        with self.assertRaises(UnsupportedGenusError):
            closed_form(4)


class ClosedFormTests(unittest.TestCase):
    def test_genus_two_matches(self):
        report = compare(2, 8)

        self.assertTrue(report.passed, report.mismatches[:3])
        self.assertGreater(report.checked, 0)

    def test_genus_three_matches(self):
        self.assertTrue(compare(3, 8).passed)

    def test_taylor_constant_term_of_genus_three(self):
        self.assertEqual(taylor(closed_form(3), 0).get(0, 0, 0), Fraction(0))


class RelationTests(unittest.TestCase):
    def test_genus_three_relation(self):
        ctx = evaluator(3).context
        report = pde_check(3, parse("gamma*alpha^2 + gamma*beta - 8*gamma", ctx), 8)

        self.assertTrue(report.passed)

    def test_genus_three_wrong_sign_is_rejected(self):
        ctx = evaluator(3).context
        with self.assertRaises(RelationError):
            pde_check(3, parse("gamma*alpha^2 + gamma*beta + 8*gamma", ctx), 8)

    def test_genus_two_relation_on_closed_form(self):
        ctx = evaluator(2).context
        report = pde_check(2, parse("beta^2 - 64", ctx), 8, source=SOURCE_CLOSED_FORM)

        self.assertTrue(report.passed)

    def test_genus_two_non_relation(self):
        ctx = evaluator(2).context
        with self.assertRaises(RelationError):
            pde_check(2, parse("beta + 8", ctx), 6)

    def test_multiple_point_series_sign(self):
        self.assertTrue(psi_series_relation(6).passed)

    def test_genus_shift(self):
        self.assertTrue(genus_shift_check(6).passed)


if __name__ == "__main__":
    unittest.main()
