import unittest
from fractions import Fraction

from qh_moduli.evaluation import evaluator
from qh_moduli.exceptions import BasisError, InconsistentPresentationError, PresentationError
from qh_moduli.groebner import GroebnerEngine, WeightedOrder
from qh_moduli.parser import parse, read_presentation
from qh_moduli.presentations import builtin
from qh_moduli.reduction import BasisKey, ReductionEngine, build_reduction, graded_coordinates, normal_form


class GroebnerEngineTests(unittest.TestCase):
    def test_finite_quotient(self):
        engine = GroebnerEngine(['x', 'y'], [1, 1], [{(2, 0): Fraction(1), (0, 0): Fraction(-1)},
                                                     {(0, 2): Fraction(1)}])

        self.assertEqual(engine.dimension, 4)
        self.assertEqual(engine.reduce({(3, 0): Fraction(1)}), {(1, 0): Fraction(1)})
        self.assertEqual(engine.reduce({(1, 2): Fraction(5)}), {})

    def test_unit_ideal(self):
        with self.assertRaises(InconsistentPresentationError):
            GroebnerEngine(['x', 'y'], [1, 1], [{(1, 0): Fraction(1)}, {(1, 0): Fraction(1), (0, 0): Fraction(1)}])

    def test_infinite_quotient(self):
        with self.assertRaises(BasisError):
            GroebnerEngine(['x', 'y'], [1, 1], [{(2, 0): Fraction(1)}])

    def test_weights_must_be_positive(self):
        with self.assertRaises(PresentationError):
            WeightedOrder([1, 0])

    def test_weighted_order_compares_weight_first(self):
        order = WeightedOrder([2, 4])

        self.assertLess(order((3, 0)), order((0, 2)))
        self.assertLess(order((2, 0)), order((0, 1)))

    def test_no_variables(self):
        engine = GroebnerEngine([], [], [])

        self.assertEqual(engine.dimension, 1)
        self.assertEqual(engine.reduce({(): Fraction(3)}), {(): Fraction(3)})


class ReductionEngineTests(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.classical = ReductionEngine(builtin(3, 'classical'))
        cls.quantum = ReductionEngine(builtin(3, 'quantum'))
        cls.ctx = cls.classical.context

    def _p(self, text):
        return parse(text, self.ctx)

    def test_piece_dimensions(self):
        self.assertEqual(self.classical.piece_dimensions(), {'trivial': 10, 'H3': 4, 'L20': 1})
        self.assertEqual(self.classical.dimension, 48)
        self.assertEqual(self.quantum.dimension, 48)
        self.assertEqual(len(self.classical.basis()), 48)

    def test_relations_reduce_to_zero(self):
        for text in ("alpha^3 + 5*alpha*beta + 4*gamma", "gamma*alpha^2 + gamma*beta",
                     "psi2*(alpha^2 + beta)", "(psi1*psi2)*alpha"):
            with self.subTest(text=text):
                self.assertTrue(self.classical.normal_form(self._p(text)).is_zero)

    def test_quantum_relations_reduce_to_zero(self):
        for text in ("gamma*alpha^2 + gamma*beta + 8*gamma", "psi3*(beta + 8 + alpha^2)"):
            with self.subTest(text=text):
                self.assertTrue(self.quantum.normal_form(self._p(text)).is_zero)

    def test_normal_form_is_idempotent(self):
        x = self._p("alpha^5*beta + psi1*psi4*alpha^2 + psi2*gamma*beta")
        nf = self.classical.normal_form(x)

        self.assertEqual(self.classical.normal_form(nf), nf)

    def test_normal_form_properties_in_both_rings(self):
        x = self._p("alpha^5*beta - 2/3*psi1*psi4*alpha^2 + psi2*psi3*psi5*beta + psi6*gamma")
        y = self._p("beta^3 + psi1*psi2 - 5*psi3*alpha^4")
        c = Fraction(-7, 3)
        for engine in (self.classical, self.quantum):
            relations = engine.presentation.piece('trivial').relations
            with self.subTest(ring=engine.presentation.name):
                nx = engine.normal_form(x)
                self.assertEqual(engine.normal_form(nx), nx)
                self.assertEqual(engine.normal_form(x + y.scale(c)), nx + engine.normal_form(y).scale(c))
                for relation in relations:
                    self.assertTrue(engine.normal_form(self._p("alpha*beta^2") * relation).is_zero)

    def test_symplectic_pair_projects_to_gamma(self):
        coords = self.classical.coordinates(self._p("psi1*psi4"))

        self.assertEqual(coords[BasisKey('trivial', 0, 3)], Fraction(-1, 6))

    def test_primitive_odd_words_vanish(self):
        for engine in (self.classical, self.quantum):
            with self.subTest(ring=engine.presentation.name):
                self.assertTrue(engine.normal_form(self._p("psi1*psi2*psi3")).is_zero)
                self.assertTrue(engine.normal_form(self._p("psi1*psi2*psi4 + psi2*psi3*psi6")).is_zero)

    def test_odd_word_of_length_three(self):
        for engine in (self.classical, self.quantum):
            with self.subTest(ring=engine.presentation.name):
                self.assertEqual(engine.normal_form(self._p("psi1*psi2*psi4")), self._p("1/4*psi2*gamma"))

    def test_odd_normal_form_keeps_pairings(self):
        ev = evaluator(3)
        word, psi5 = self._p("psi1*psi2*psi4"), self._p("psi5")
        nf = self.classical.normal_form(word)

        self.assertEqual(ev.top_pairing(word * psi5), Fraction(-1))
        self.assertEqual(ev.top_pairing(nf * psi5), Fraction(-1))

    def test_module_level_helpers(self):
        engine = build_reduction(builtin(3, 'classical'))

        self.assertEqual(engine.dimension, 48)
        self.assertEqual(normal_form(engine, self._p("alpha^3")), self._p("-5*alpha*beta - 4*gamma"))

    def test_key_parts(self):
        prefactor, even = self.classical.key_parts(BasisKey('H3', 0, 2))

        self.assertEqual(prefactor, self._p("psi1"))
        self.assertEqual(even, self._p("beta"))

    def test_declared_basis_must_span(self):
        text = "generator x degree=2\nrelation x^3\nbasis 1, x\n"
        with self.assertRaises(BasisError):
            ReductionEngine(read_presentation(text).presentation)

    def test_plain_presentation_keeps_odd_words(self):
        text = "generator x degree=2\ngenerator e degree=1 parity=odd\nrelation x^2\n"
        engine = ReductionEngine(read_presentation(text).presentation)
        ctx = engine.context

        self.assertEqual(engine.dimension, 2)
        self.assertEqual(engine.normal_form(parse("x*e + x^2*e", ctx)), parse("x*e", ctx))

    def test_product_split_uses_global_basis(self):
        floer = ReductionEngine(builtin(2, 'floer'))
        ctx = floer.context

        self.assertEqual(floer.dimension, 4)
        self.assertEqual(floer.piece_dimensions(), {'R-1': 1, 'R0': 2, 'R1': 1})
        self.assertTrue(floer.normal_form(parse("gamma*(alpha - 4)*(alpha + 4)*alpha", ctx)).is_zero)


class GradedOracleTests(unittest.TestCase):
    def test_agrees_with_groebner_normal_form(self):
        pres = builtin(3, 'classical')
        piece = pres.piece('trivial')
        ctx = pres.context
        engine = ReductionEngine(pres)
        target = parse("alpha^4*beta", ctx)

        oracle = graded_coordinates(ctx, piece.relations, piece.basis, target, 12)
        coords = engine.coordinates(target)

        expected = [coords.get(BasisKey('trivial', 0, i), Fraction(0)) for i in range(10)]
        self.assertEqual(list(oracle), expected)

    def test_agrees_on_the_quantum_ideal(self):
        pres = builtin(3, 'quantum')
        piece = pres.piece('trivial')
        ctx = pres.context
        engine = ReductionEngine(pres)
        for text in ("alpha^4*beta", "gamma^2", "alpha^3*gamma", "beta^3", "alpha^8", "beta^2*gamma"):
            with self.subTest(target=text):
                target = parse(text, ctx)
                oracle = graded_coordinates(ctx, piece.relations, piece.basis, target, 16)
                coords = engine.coordinates(target)

                expected = [coords.get(BasisKey('trivial', 0, i), Fraction(0)) for i in range(10)]
                self.assertEqual(list(oracle), expected)


if __name__ == "__main__":
    unittest.main()
