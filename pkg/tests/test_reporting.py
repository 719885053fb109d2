import json
import unittest
from fractions import Fraction

from qh_moduli.exceptions import UnknownGeneratorError
from qh_moduli.models import CheckResult
from qh_moduli.parser import parse
from qh_moduli.presentations import builtin
from qh_moduli.reporting import checks_text, encode_error, encode_result, scalar_dict


class EncodeTests(unittest.TestCase):
    def test_scalar_dict(self):
        self.assertEqual(scalar_dict(Fraction(-2, 3)), {"num": -2, "den": 3})
        self.assertEqual(scalar_dict(4), {"num": 4, "den": 1})

    def test_result_envelope(self):
        ctx = builtin(3, 'classical').context
        payload = json.loads(encode_result("eval", {"expr": parse("alpha^6", ctx)}, Fraction(224)))

        self.assertEqual(payload["command"], "eval")
        self.assertEqual(payload["inputs"], {"expr": "alpha^6"})
        self.assertEqual(payload["value"], {"num": 224, "den": 1})

    def test_unencodable_value_is_reported(self):
        with self.assertRaises(TypeError):
            encode_result("eval", {}, object())

    def test_error_envelope(self):
        payload = json.loads(encode_error(UnknownGeneratorError("delta", 8)))

        self.assertEqual(payload["error"], "UnknownGeneratorError")
        self.assertIn("delta", payload["message"])


class CheckRenderingTests(unittest.TestCase):
    def test_summary_line(self):
        text = checks_text([CheckResult("a", True, "fine"), CheckResult("b", False, "wrong")])

        self.assertIn("[PASS] a: fine", text)
        self.assertIn("[FAIL] b: wrong", text)
        self.assertTrue(text.endswith("1/2 checks passed"))


if __name__ == "__main__":
    unittest.main()
