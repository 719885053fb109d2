import unittest

from qh_moduli.verification import check_names, run_checks


class VerificationTests(unittest.TestCase):
    def test_registry(self):
        names = check_names()

        self.assertIn("iso-solver", names)
        self.assertIn("groebner-oracle", names)
        self.assertIn("genus-step", names)
        self.assertEqual(len(names), len(set(names)))

    def test_cheap_checks_pass(self):
        results = run_checks(["top-pairings", "noninvariant-pairings", "quantum-reduction",
                              "quotient-dimensions", "restriction-table", "degree-one-invariants",
                              "degree-two-geometry", "genus-step"])

        for result in results:
            with self.subTest(check=result.name):
                self.assertTrue(result.passed, result.detail)

    def test_unknown_check(self):
        (result,) = run_checks(["missing"])

        self.assertFalse(result.passed)
        self.assertEqual(result.detail, "unknown check")


if __name__ == "__main__":
    unittest.main()
