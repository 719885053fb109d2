import os
import tempfile
import unittest
from fractions import Fraction
from itertools import permutations

from qh_moduli.evaluation import Evaluator, embed_lower_genus, evaluator, genus_step_check
from qh_moduli.exceptions import UnsupportedGenusError
from qh_moduli.models import KIND_CLASSICAL, KIND_QUANTUM
from qh_moduli.parser import parse
from qh_moduli.presentations import export_presentation, fixtures, genus_data, load_file


class ProjectionTests(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.ev = evaluator(3)
        cls.ctx = cls.ev.context

    def _p(self, text):
        return parse(text, self.ctx)

    def test_symplectic_pair(self):
        self.assertEqual(self.ev.project_invariant(self._p("psi1*psi4")), self._p("gamma").scale(Fraction(-1, 6)))

    def test_non_symplectic_pair_vanishes(self):
        self.assertTrue(self.ev.project_invariant(self._p("psi1*psi2*alpha")).is_zero)

    def test_odd_length_vanishes(self):
        self.assertTrue(self.ev.project_invariant(self._p("psi1*beta")).is_zero)

    def test_even_part_is_unchanged(self):
        x = self._p("alpha^2*beta + 3*gamma")
        self.assertEqual(self.ev.project_invariant(x), x)


class PairingTests(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.ev = evaluator(3)
        cls.ctx = cls.ev.context

    def _p(self, text):
        return parse(text, self.ctx)

    def test_fixtures(self):
        for word, value in fixtures(3):
            with self.subTest(word=str(word)):
                self.assertEqual(self.ev.top_pairing(word), value)

    def test_classical_pairing_of_a_product(self):
        self.assertEqual(self.ev.classical_pairing(self._p("alpha^3"), self._p("gamma")), Fraction(24))
        self.assertEqual(self.ev.classical_pairing(self._p("psi1*alpha"), self._p("psi4*alpha^2")), Fraction(-4))

    def test_pairing_value_reports_d(self):
        top = self.ev.pairing_value(self._p("gamma^2"), KIND_QUANTUM)
        shifted = self.ev.pairing_value(self._p("gamma^2*alpha^2"), KIND_QUANTUM)

        self.assertEqual(top.value, Fraction(24))
        self.assertEqual(top.coefficient, Fraction(1))
        self.assertEqual(top.d, 0)
        self.assertEqual(shifted.d, 1)
        self.assertIsNone(self.ev.pairing_value(self._p("alpha"), KIND_QUANTUM).d)

    def test_pairing_value_rejects_odd_terms(self):
        with self.assertRaises(ValueError):
            self.ev.pairing_value(self._p("psi1*psi4"), KIND_CLASSICAL)

    def test_gw_multipoint_degree_rule(self):
        alpha, gamma = self._p("alpha"), self._p("gamma")

        self.assertEqual(self.ev.gw_multipoint([alpha, alpha, alpha, gamma], 0), Fraction(24))
        self.assertEqual(self.ev.gw_multipoint([alpha, gamma], 0), Fraction(0))
        self.assertEqual(self.ev.gw_multipoint([self.ctx.zero(), gamma], 0), Fraction(0))

    def test_gw_multipoint_symmetric_in_even_classes(self):
        classes = [self._p("alpha"), self._p("beta"), self._p("gamma")]
        for order in permutations(classes):
            with self.subTest(order=[str(c) for c in order]):
                self.assertEqual(self.ev.gw_multipoint(list(order), 0), Fraction(-24))

    def test_gw_multipoint_antisymmetric_in_odd_classes(self):
        psi1, psi4, alpha3 = self._p("psi1"), self._p("psi4"), self._p("alpha^3")

        self.assertEqual(self.ev.gw_multipoint([psi1, psi4, alpha3], 0), Fraction(-4))
        self.assertEqual(self.ev.gw_multipoint([psi4, psi1, alpha3], 0), Fraction(4))
        self.assertEqual(self.ev.gw_multipoint([psi1, alpha3, psi4], 0), Fraction(-4))

    def test_gw_multipoint_rejects_inhomogeneous(self):
        with self.assertRaises(ValueError):
            self.ev.gw_multipoint([self._p("alpha + beta"), self._p("gamma")], 0)

    def test_mod_four_vanishing(self):
        self.assertEqual(self.ev.tilde_psi(self._p("alpha^7")), Fraction(0))
        self.assertEqual(self.ev.tilde_psi(self._p("gamma^2*alpha")), Fraction(0))


class DonaldsonTests(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.g2 = evaluator(2)
        cls.g3 = evaluator(3)

    def test_genus_two_through_floer(self):
        ctx = self.g2.context
        expected = {"gamma": -4, "alpha*beta": 4, "alpha^3": -4, "alpha": 0, "1": 0, "beta": 0}
        for text, value in expected.items():
            with self.subTest(text=text):
                self.assertEqual(self.g2.donaldson(parse(text, ctx)), Fraction(value))

    def test_genus_three_through_quantum(self):
        ctx = self.g3.context
        self.assertEqual(self.g3.donaldson(parse("gamma^2", ctx)), Fraction(-24))
        self.assertEqual(self.g3.donaldson(parse("alpha^6", ctx)), Fraction(-224))

    def test_donaldson_vanishes_off_the_mod_four_class(self):
        words = {
            self.g2: ("1", "beta", "alpha^2", "alpha*gamma", "beta^2", "gamma^2", "alpha^2*beta", "alpha^4"),
            self.g3: ("alpha^5", "gamma^2*alpha", "psi1*psi4*beta^2", "beta^3*alpha"),
        }
        for ev, texts in words.items():
            for text in texts:
                with self.subTest(genus=ev.genus, text=text):
                    self.assertEqual(ev.donaldson(parse(text, ev.context)), Fraction(0))

    def test_donaldson_is_linear_over_components(self):
        ctx = self.g3.context
        self.assertEqual(self.g3.donaldson(parse("gamma^2 + alpha^6 + alpha", ctx)), Fraction(-248))

    def test_genus_step(self):
        ctx = self.g2.context
        for text in ("gamma", "alpha*beta", "alpha^3", "psi1*psi3*alpha"):
            with self.subTest(text=text):
                left, right = genus_step_check(parse(text, ctx), 3, self.g2, self.g3)
                self.assertEqual(left, right)

    def test_genus_step_reports_both_sides(self):
        left, right = genus_step_check(parse("gamma", self.g2.context), 3, self.g2, self.g3)

        self.assertEqual((left, right), (Fraction(-24), Fraction(-24)))

    def test_embedding_keeps_symplectic_pairs(self):
        lower, upper = genus_data(2), genus_data(3)
        image = embed_lower_genus(parse("psi1*psi3", lower.context), lower, upper)

        self.assertEqual(image, parse("psi1*psi4", upper.context))

    def test_unsupported_genus(self):
        with self.assertRaises(UnsupportedGenusError):
            genus_data(5)


class PresentationFileEvaluationTests(unittest.TestCase):
    def test_loaded_presentation_evaluates(self):
        with tempfile.NamedTemporaryFile("w", suffix=".txt", delete=False, encoding="utf-8") as handle:
            handle.write(export_presentation(3, 'classical'))
            path = handle.name
        try:
            ev = Evaluator(load_file(path))
        finally:
            os.remove(path)

        self.assertEqual(ev.top_pairing(parse("alpha^6", ev.context)), Fraction(224))


if __name__ == "__main__":
    unittest.main()
