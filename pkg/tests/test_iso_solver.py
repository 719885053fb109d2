import unittest
from fractions import Fraction
from itertools import permutations

from qh_moduli.evaluation import evaluator
from qh_moduli.exceptions import SolverError
from qh_moduli.iso_solver import IsoSolver, solver
from qh_moduli.models import SOURCE_DEGREE_ONE, SOURCE_DEGREE_TWO, SOURCE_PAIRING
from qh_moduli.parser import parse

SOLVED = {
    "A1": 0, "A2": 4, "A3": -12, "A4": -8, "A5": -3, "A6": -3, "A7": -20, "A8": -12, "A9": 8, "A10": -6,
    "N1": -4, "N2": 4,
    "B1": 0, "B2": -1, "B3": 24, "B4": -24, "B5": -1, "C": -8,
}


class IsoSolverTests(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.iso = solver()
        cls.report = cls.iso.solve()
        cls.table = cls.iso.iso_table()
        cls.ctx = cls.iso.context

    def _p(self, text):
        return parse(text, self.ctx)

    def test_solution(self):
        self.assertEqual(self.report.solution, {k: Fraction(v) for k, v in SOLVED.items()})
        self.assertEqual(self.report.unknown_count, 18)
        self.assertTrue(self.report.consistent)

    def test_every_equation_family_is_used(self):
        for source in (SOURCE_DEGREE_ONE, SOURCE_PAIRING, SOURCE_DEGREE_TWO):
            with self.subTest(source=source):
                self.assertGreater(self.report.equation_counts[source], 0)
        self.assertEqual(self.report.equation_counts[SOURCE_DEGREE_TWO], 2)

    def test_discrepancies(self):
        names = {d.name for d in self.table.discrepancies}

        self.assertIn("N2", names)
        self.assertIn("line beta^2", names)
        self.assertNotIn("A3", names)
        self.assertNotIn("line alpha*beta", names)

    def test_forward_lines(self):
        forward = dict(zip(self.table.words, self.table.forward))

        self.assertEqual(forward[self._p("alpha*beta")], self._p("alpha*beta + 4*alpha"))
        self.assertEqual(forward[self._p("beta^2")], self._p("beta^2 - 12*beta - 8*alpha^2"))
        self.assertEqual(forward[self._p("psi1*beta")], self._p("psi1*beta - 4*psi1"))

    def test_inverse_undoes_forward(self):
        forward = dict(zip(self.table.words, self.table.forward))
        inverse = dict(zip(self.table.classes, self.table.inverse))
        beta = self._p("beta")

        self.assertEqual(inverse[beta], beta)
        self.assertEqual(inverse[self._p("alpha*beta")], self._p("alpha*beta - 4*alpha"))
        self.assertEqual(forward[self._p("alpha^2")], self._p("alpha^2"))

    def test_forward_and_inverse_are_mutually_inverse(self):
        index = self.iso.index
        for cls, inverse in zip(self.table.classes, self.table.inverse):
            with self.subTest(cls=str(cls)):
                image = self.ctx.zero()
                for key, v in self.iso.quantum.coordinates(inverse).items():
                    image = image + self.table.forward[index[key]].scale(v)
                self.assertEqual(image, cls)
        for word, forward in zip(self.table.words, self.table.forward):
            with self.subTest(word=str(word)):
                back = self.ctx.zero()
                for key, v in self.iso.classical.coordinates(forward).items():
                    back = back + self.table.inverse[index[key]].scale(v)
                self.assertEqual(back, word)

    def test_quantum_products(self):
        gamma, beta = self._p("gamma"), self._p("beta")

        self.assertEqual(self.iso.quantum_product(beta, beta), self._p("beta^2 - 12*beta - 8*alpha^2"))
        self.assertEqual(self.iso.quantum_product(gamma, gamma),
                         self._p("gamma^2 + 8*alpha*gamma - 6*beta^2 - 24*alpha^2 - beta - 8"))

    def test_products_with_odd_words(self):
        forward = dict(zip(self.table.words, self.table.forward))
        psi1 = self._p("psi1")

        self.assertTrue(self.iso.quantum_product(psi1, self._p("psi2*psi3")).is_zero)
        self.assertEqual(self.iso.quantum_product(psi1, self._p("psi2*psi4")),
                         forward[self._p("psi2*gamma")].scale(Fraction(1, 4)))

    def test_unit_is_neutral(self):
        x = self._p("alpha*gamma")
        self.assertEqual(self.iso.quantum_product(self.ctx.one(), x), x)

    def test_three_point_invariant(self):
        beta, gamma = self._p("beta"), self._p("gamma")
        self.assertEqual(self.iso.gw3_classical(beta, gamma, beta * gamma), Fraction(-576))

    def test_three_point_invariant_is_symmetric(self):
        classes = [self._p("beta"), self._p("gamma"), self._p("beta*gamma")]
        for x, y, z in permutations(classes):
            with self.subTest(order=(str(x), str(y), str(z))):
                self.assertEqual(self.iso.gw3_classical(x, y, z), Fraction(-576))

    def test_degree_one_line_for_psi(self):
        line = self.iso.line("psi1*beta")
        self.assertEqual({s.name for s in line.unknowns}, {"N1"})


class IsoSolverSetupTests(unittest.TestCase):
    def test_rejects_genus_two(self):
        with self.assertRaises(SolverError):
            IsoSolver(evaluator(2))


if __name__ == "__main__":
    unittest.main()
