# qh_moduli/cli.py
"""Command-line front end: ``run(argv)`` returns the process exit code."""
import argparse
import logging
import sys
from typing import Any, Dict, List, Optional, Sequence

from . import config, reporting, series
from .degree_one import gw_degree1, restrict_to_n
from .degree_two import psi2a_alpha_gamma_pt, psi2a_beta_beta_pt, r_ring
from .evaluation import Evaluator, evaluator
from .exceptions import ExpressionSyntaxError, QHModuliError, UnknownGeneratorError
from .iso_solver import gw3_classical, solver
from .models import KIND_CLASSICAL, KIND_FLOER, KIND_QUANTUM
from .parser import parse
from .presentations import export_presentation, load_file
from .verification import run_checks

logger = config.setup_logger(config.APP_NAME + ".CLI", config.CLI_LOG_LEVEL, config.CLI_LOG_FILE, console=False)

SERIES_CHECKS = ('table', 'compare', 'pde', 'psi', 'shift')


class UsageError(Exception):
    """Bad command line."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument('--genus', type=int, default=config.DEFAULT_GENUS, choices=(2, 3),
                        help='Genus of the surface.')
    common.add_argument('--ring', choices=config.RING_KINDS, default=None,
                        help='Presentation to work in (classical for genus 3, floer for genus 2).')
    common.add_argument('--format', choices=config.OUTPUT_FORMATS, default='text', dest='output_format',
                        help='Output format.')
    common.add_argument('--presentation', default=None,
                        help='Presentation file to use instead of the built-in data.')
    log_group = common.add_argument_group('Logging')
    log_group.add_argument('--debug', action='store_true', help='Enable DEBUG level logging.')
    log_group.add_argument('--no-log-file', action='store_true', help='Disable logging to the log files.')

    parser = _Parser(
        prog='qh_moduli',
        description=f"Quantum cohomology and Donaldson invariants of the rank-2 moduli space, v{config.VERSION}.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    sub = parser.add_subparsers(dest='command', required=True, parser_class=_Parser)

    p = sub.add_parser('nf', parents=[common], help='Normal form of an expression.')
    p.add_argument('expression')
    p = sub.add_parser('eval', parents=[common], help='Pairing and Donaldson invariant of an expression.')
    p.add_argument('expression')
    p = sub.add_parser('gw', parents=[common], help='Multiple-point invariant of generator words.')
    p.add_argument('classes', nargs='+')
    p.add_argument('--degree', type=int, default=0, help='Degree d of the class dA.')
    p.add_argument('--cup', action='store_true',
                   help='Degree one only: treat the three inputs as cup-product classes.')
    p = sub.add_parser('gw3', parents=[common], help='Three-point invariant summed over degrees (genus 3).')
    p.add_argument('classes', nargs=3)
    p = sub.add_parser('pair', parents=[common], help='Classical pairing of two classes.')
    p.add_argument('classes', nargs=2)
    p = sub.add_parser('series', parents=[common], help='Donaldson series coefficients and checks.')
    p.add_argument('--order', type=int, default=config.DEFAULT_SERIES_ORDER)
    p.add_argument('--check', choices=SERIES_CHECKS, default='table')
    p.add_argument('--relation', default=None, help="Relation for '--check pde'.")
    p.add_argument('--source', choices=('evaluation', 'closed_form'), default=None)
    sub.add_parser('iso', parents=[common], help='Solve the genus 3 isomorphism.')
    p = sub.add_parser('verify', parents=[common], help='Run the verification suite.')
    p.add_argument('--check', action='append', default=None, dest='checks', help='Run only this check.')
    sub.add_parser('export-presentation', parents=[common], help='Write a built-in presentation.')
    p = sub.add_parser('restrict', parents=[common], help='Restriction of a genus 3 class to N.')
    p.add_argument('expression')
    sub.add_parser('rring', parents=[common], help='Degree-two data on the space of conics.')
    return parser


def _configure_logging(args: argparse.Namespace):
    names = [n for n in logging.Logger.manager.loggerDict
             if n.startswith('qh_moduli') or n.startswith(config.APP_NAME)]
    for name in names:
        log = logging.getLogger(name)
        if args.debug:
            log.setLevel(logging.DEBUG)
            for handler in log.handlers:
                handler.setLevel(logging.DEBUG)
        if args.no_log_file:
            config.disable_file_logging(log)
    if args.debug:
        logger.debug("DEBUG logging enabled via command line.")


def _evaluator(args: argparse.Namespace) -> Evaluator:
    if args.presentation:
        data = load_file(args.presentation)
        if data.genus != args.genus:
            logger.info(f"Using genus {data.genus} from {args.presentation}")
        return Evaluator(data)
    return evaluator(args.genus)


def _ring(args: argparse.Namespace, ev: Evaluator) -> str:
    if args.ring:
        return args.ring
    for kind in (KIND_CLASSICAL, KIND_QUANTUM, KIND_FLOER):
        if getattr(ev.data, kind) is not None:
            return kind
    raise UsageError("No presentation available")


def _emit(args: argparse.Namespace, inputs: Dict[str, Any], value: Any):
    if args.output_format == 'json':
        print(reporting.encode_result(args.command, inputs, value))
    else:
        print(reporting.result_text(value))


# --- commands ---

def _cmd_nf(args) -> int:
    ev = _evaluator(args)
    kind = _ring(args, ev)
    x = parse(args.expression, ev.context)
    _emit(args, {"expression": args.expression, "ring": kind, "genus": ev.genus},
          ev.engine(kind).normal_form(x))
    return config.EXIT_OK


def _cmd_eval(args) -> int:
    ev = _evaluator(args)
    kind = _ring(args, ev)
    z = parse(args.expression, ev.context)
    result = ev.pairing_value(ev.project_invariant(z), kind)
    value = {"pairing": result.value, "coefficient": result.coefficient, "normal_form": result.normal_form}
    if result.d is not None:
        value["d"] = result.d
    if kind != KIND_CLASSICAL:
        value["donaldson"] = ev.donaldson(z)
    _emit(args, {"expression": args.expression, "ring": kind, "genus": ev.genus}, value)
    return config.EXIT_OK


def _cmd_gw(args) -> int:
    ev = _evaluator(args)
    classes = [parse(text, ev.context) for text in args.classes]
    if args.cup:
        if args.degree != 1 or len(classes) != 3 or ev.genus != 3:
            raise UsageError("--cup needs genus 3, --degree 1 and three classes")
        value = gw_degree1(*classes)
    else:
        value = ev.gw_multipoint(classes, args.degree)
    _emit(args, {"classes": args.classes, "degree": args.degree, "genus": ev.genus}, value)
    return config.EXIT_OK


def _cmd_gw3(args) -> int:
    if args.genus != 3:
        raise UsageError("gw3 is available for genus 3")
    ctx = evaluator(3).context
    x, y, z = (parse(text, ctx) for text in args.classes)
    _emit(args, {"classes": args.classes}, gw3_classical(x, y, z))
    return config.EXIT_OK


def _cmd_pair(args) -> int:
    ev = _evaluator(args)
    x, y = (parse(text, ev.context) for text in args.classes)
    _emit(args, {"classes": args.classes, "genus": ev.genus}, ev.classical_pairing(x, y))
    return config.EXIT_OK


def _cmd_series(args) -> int:
    if args.check == 'table':
        source = args.source or series.SOURCE_EVALUATION
        table = series.source_table(args.genus, args.order, source, None)
        if args.output_format == 'csv':
            sys.stdout.write(reporting.series_csv(table))
        elif args.output_format == 'json':
            print(reporting.series_json(table))
        else:
            print(reporting.series_text(table))
        return config.EXIT_OK
    if args.check == 'compare':
        report = series.compare(args.genus, args.order)
    elif args.check == 'pde':
        if not args.relation:
            raise UsageError("--check pde needs --relation")
        ev = evaluator(args.genus)
        report = series.pde_check(args.genus, parse(args.relation, ev.context), args.order,
                                  args.source or series.SOURCE_EVALUATION)
    elif args.check == 'psi':
        report = series.psi_series_relation(args.order, args.source or series.SOURCE_CLOSED_FORM)
    else:
        report = series.genus_shift_check(args.order, args.source or series.SOURCE_EVALUATION)
    if args.output_format == 'json':
        print(reporting.serialize({"command": "series", "inputs": {"check": args.check, "order": args.order},
                                    "value": reporting.report_dict(report)}))
    else:
        print(reporting.report_text(report))
    return config.EXIT_OK if report.passed else config.EXIT_VERIFY_FAILED


def _cmd_iso(args) -> int:
    iso = solver()
    report = iso.solve()
    table = iso.iso_table()
    if args.output_format == 'json':
        print(reporting.serialize({"command": "iso", "inputs": {}, "value": reporting.iso_dict(table, report)}))
    else:
        print(reporting.iso_text(table, report))
    return config.EXIT_OK


def _cmd_verify(args) -> int:
    results = run_checks(args.checks)
    if args.output_format == 'json':
        print(reporting.checks_json(results))
    else:
        print(reporting.checks_text(results))
    return config.EXIT_OK if all(r.passed for r in results) else config.EXIT_VERIFY_FAILED


def _cmd_export(args) -> int:
    if args.presentation:
        ev = _evaluator(args)
        text = export_presentation(ev.genus, _ring(args, ev), ev.data)
    else:
        kind = args.ring or (KIND_FLOER if args.genus == 2 else KIND_CLASSICAL)
        text = export_presentation(args.genus, kind)
    sys.stdout.write(text)
    return config.EXIT_OK


def _cmd_restrict(args) -> int:
    x = parse(args.expression, evaluator(3).context)
    _emit(args, {"expression": args.expression}, restrict_to_n(x))
    return config.EXIT_OK


def _cmd_rring(args) -> int:
    ring = r_ring()
    value: Dict[str, Any] = {f"{name}_R": x for name, x in ring.classes().items()}
    value["pair_R(gamma_R)"] = ring.pair(ring.classes()['gamma'])
    value["Psi_2A(alpha, gamma, pt)"] = psi2a_alpha_gamma_pt()
    value["Psi_2A(beta, beta, pt)"] = psi2a_beta_beta_pt()
    _emit(args, {}, value)
    return config.EXIT_OK


COMMANDS = {
    'nf': _cmd_nf,
    'eval': _cmd_eval,
    'gw': _cmd_gw,
    'gw3': _cmd_gw3,
    'pair': _cmd_pair,
    'series': _cmd_series,
    'iso': _cmd_iso,
    'verify': _cmd_verify,
    'export-presentation': _cmd_export,
    'restrict': _cmd_restrict,
    'rring': _cmd_rring,
}


def _report_error(error: BaseException, output_format: str):
    if output_format == 'json':
        print(reporting.encode_error(error), file=sys.stderr)
    else:
        print(f"Error: {error}", file=sys.stderr)


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parses argv, runs one command and maps failures to exit codes."""
    argv = list(sys.argv[1:] if argv is None else argv)
    output_format = 'json' if _wants_json(argv) else 'text'
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        _report_error(e, output_format)
        return config.EXIT_USAGE
    except SystemExit as e:
        return int(e.code or 0)

    _configure_logging(args)
    logger.info(f"Running {args.command} (genus {args.genus})")
    try:
        return COMMANDS[args.command](args)
    except (UsageError, ExpressionSyntaxError, UnknownGeneratorError, ValueError) as e:
        logger.warning(f"{args.command}: {e}")
        _report_error(e, args.output_format)
        return config.EXIT_USAGE
    except QHModuliError as e:
        logger.error(f"{args.command} failed: {e}")
        _report_error(e, args.output_format)
        return config.EXIT_COMPUTATION
    except Exception as e:
        logger.error(f"Unexpected error in {args.command}: {e}", exc_info=True)
        _report_error(e, args.output_format)
        return config.EXIT_COMPUTATION


def _wants_json(argv: List[str]) -> bool:
    for i, item in enumerate(argv):
        if item == '--format=json' or (item == '--format' and i + 1 < len(argv) and argv[i + 1] == 'json'):
            return True
    return False


def main():
    sys.exit(run())
