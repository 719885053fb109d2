import io
import json
import sys
import unittest
from contextlib import redirect_stderr, redirect_stdout
from unittest import mock

from qh_moduli import config
from qh_moduli.cli import main, run


class CliTests(unittest.TestCase):
    def _run(self, *argv):
        out, err = io.StringIO(), io.StringIO()
        with redirect_stdout(out), redirect_stderr(err):
            code = run(list(argv) + ["--no-log-file"])
        return code, out.getvalue(), err.getvalue()

    def test_eval_classical(self):
        code, out, _ = self._run("eval", "alpha^6", "--ring", "classical")

        self.assertEqual(code, config.EXIT_OK)
        self.assertIn("pairing: 224", out)

    def test_eval_json(self):
        code, out, _ = self._run("eval", "gamma^2", "--format", "json")
        payload = json.loads(out)

        self.assertEqual(code, config.EXIT_OK)
        self.assertEqual(payload["command"], "eval")
        self.assertEqual(payload["value"]["pairing"], {"num": 24, "den": 1})

    def test_series_csv(self):
        code, out, _ = self._run("series", "--genus", "2", "--order", "6", "--format", "csv")

        self.assertEqual(code, config.EXIT_OK)
        self.assertTrue(out.startswith("a,b,c,num,den"))
        self.assertIn("0,0,1,-4,1", out.splitlines())
        self.assertIn("3,0,0,-2,3", out.splitlines())

    def test_degree_one_with_cup_classes(self):
        code, out, _ = self._run("gw", "alpha", "beta", "beta*gamma", "--degree", "1", "--cup")

        self.assertEqual(code, config.EXIT_OK)
        self.assertEqual(out.strip(), "-96")

    def test_multipoint_invariant(self):
        code, out, _ = self._run("gw", "alpha", "alpha", "alpha", "gamma")

        self.assertEqual(code, config.EXIT_OK)
        self.assertEqual(out.strip(), "24")

    def test_export_presentation(self):
        code, out, _ = self._run("export-presentation", "--genus", "2")

        self.assertEqual(code, config.EXIT_OK)
        self.assertIn("kind floer", out)

    def test_bad_expression_is_a_usage_error(self):
        code, _, err = self._run("nf", "alpha +")

        self.assertEqual(code, config.EXIT_USAGE)
        self.assertIn("Error:", err)

    def test_unknown_generator_in_json(self):
        code, _, err = self._run("nf", "delta", "--format", "json")

        self.assertEqual(code, config.EXIT_USAGE)
        self.assertEqual(json.loads(err)["error"], "UnknownGeneratorError")

    def test_missing_command(self):
        code, _, _ = self._run()
        self.assertEqual(code, config.EXIT_USAGE)

    def test_gw3_needs_genus_three(self):
        code, _, _ = self._run("gw3", "beta", "gamma", "beta*gamma", "--genus", "2")
        self.assertEqual(code, config.EXIT_USAGE)

    def test_unknown_check_fails_verification(self):
        code, out, _ = self._run("verify", "--check", "no-such-check")

        self.assertEqual(code, config.EXIT_VERIFY_FAILED)
        self.assertIn("unknown check", out)

    def test_single_check_passes(self):
        code, out, _ = self._run("verify", "--check", "top-pairings")

        self.assertEqual(code, config.EXIT_OK)
        self.assertIn("1/1 checks passed", out)

    def test_rejected_relation_is_a_computation_error(self):
        code, _, _ = self._run("series", "--check", "pde", "--relation", "gamma*alpha^2 + gamma*beta + 8*gamma",
                               "--order", "6")
        self.assertEqual(code, config.EXIT_COMPUTATION)

    def test_main_exits_with_the_command_status(self):
        argv = ["run_cli.py", "eval", "alpha^6", "--ring", "classical", "--no-log-file"]
        with mock.patch.object(sys, "argv", argv), redirect_stdout(io.StringIO()) as out:
            with self.assertRaises(SystemExit) as cm:
                main()

        self.assertEqual(cm.exception.code, config.EXIT_OK)
        self.assertIn("pairing: 224", out.getvalue())


if __name__ == "__main__":
    unittest.main()
