import unittest
from fractions import Fraction

from qh_moduli.degree_one import gw_degree1, n_ring, psi_n_degree1, restrict_to_n, restriction_table
from qh_moduli.evaluation import evaluator
from qh_moduli.exceptions import ContextMismatchError
from qh_moduli.parser import parse

EXPECTED_RESTRICTIONS = {
    "alpha": "4*omega + h",
    "beta": "h^2",
    "gamma": "-2*omega*h^2",
    "alpha*beta": "-8*omega^2*h - 32/3*omega^3",
    "gamma^2": "0",
    "psi1": "-phi1*h",
    "psi1*gamma": "-8*phi1*omega^2*h^2",
}


class RestrictionTests(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.table = restriction_table()
        cls.nctx = n_ring().context

    def test_known_restrictions(self):
        for name, text in EXPECTED_RESTRICTIONS.items():
            with self.subTest(name=name):
                self.assertEqual(self.table[name], parse(text, self.nctx))

    def test_table_covers_the_ansatz_products(self):
        self.assertEqual(len(self.table), 13)

    def test_omega_above_the_jacobian_vanishes(self):
        self.assertTrue(n_ring().reduce(parse("omega^4", self.nctx)).is_zero)

    def test_rejects_other_genus(self):
        with self.assertRaises(ContextMismatchError):
            restrict_to_n(parse("alpha", evaluator(2).context))


class DegreeOneInvariantTests(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.ctx = evaluator(3).context
        cls.nctx = n_ring().context

    def _p(self, text):
        return parse(text, self.ctx)

    def test_alpha_beta_beta_gamma(self):
        self.assertEqual(gw_degree1(self._p("alpha"), self._p("beta"), self._p("beta*gamma")), Fraction(-96))

    def test_gamma_squared_restricts_to_zero(self):
        self.assertEqual(gw_degree1(self._p("alpha"), self._p("alpha"), self._p("gamma^2")), Fraction(0))

    def test_odd_invariant_on_n(self):
        value = psi_n_degree1(parse("-phi1*h", self.nctx), parse("h^2", self.nctx),
                              parse("-8*phi4*omega^2*h^2", self.nctx))
        self.assertEqual(value, Fraction(16))

    def test_invariant_on_n_is_graded_symmetric(self):
        a, b, c = (parse(t, self.nctx) for t in ("-phi1*h", "h^2", "-8*phi4*omega^2*h^2"))

        self.assertEqual(psi_n_degree1(b, a, c), Fraction(16))
        self.assertEqual(psi_n_degree1(a, c, b), Fraction(16))
        self.assertEqual(psi_n_degree1(c, b, a), Fraction(-16))
        self.assertEqual(psi_n_degree1(c, a, b), Fraction(-16))

    def test_invariant_on_n_is_multilinear(self):
        x, y = parse("h^2", self.nctx), parse("4*omega + h", self.nctx)
        b, c = parse("h^2", self.nctx), parse("omega^3*h", self.nctx)
        combined = x + y.scale(3)

        self.assertEqual(psi_n_degree1(combined, b, c), psi_n_degree1(x, b, c) + 3 * psi_n_degree1(y, b, c))
        self.assertEqual(psi_n_degree1(b, combined, c), psi_n_degree1(b, x, c) + 3 * psi_n_degree1(b, y, c))
        self.assertEqual(psi_n_degree1(b, c, combined), psi_n_degree1(b, c, x) + 3 * psi_n_degree1(b, c, y))

    def test_point_class_on_n(self):
        value = psi_n_degree1(parse("h^2", self.nctx), parse("h^2", self.nctx), parse("omega^3*h", self.nctx))
        self.assertEqual(value, Fraction(6))

    def test_pair_j_of_decorated_omega(self):
        ring = n_ring()
        self.assertEqual(ring.pair_j(parse("phi1*phi4*omega^2", self.nctx)), Fraction(2))
        self.assertEqual(ring.pair_j(parse("phi1*phi2*omega^2", self.nctx)), Fraction(0))

    def test_pair_j_orientation(self):
        self.assertEqual(n_ring().pair_j(parse("omega^3", self.nctx)), Fraction(6))
        self.assertEqual(n_ring().pair_j(parse("phi1*phi4*phi2*phi5*phi3*phi6", self.nctx)), Fraction(1))

    def test_wrong_total_degree_gives_zero(self):
        self.assertEqual(gw_degree1(self._p("alpha"), self._p("alpha"), self._p("beta")), Fraction(0))


if __name__ == "__main__":
    unittest.main()
