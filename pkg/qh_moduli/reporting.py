# qh_moduli/reporting.py
"""Output codec of the CLI: text, JSON and CSV renderings of results."""
import csv
import io
import json
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional

from . import config
from .algebra import Element
from .models import CheckResult, SeriesReport, SeriesTable, SolveReport
from .parser import format_element, format_scalar

logger = config.setup_logger(__name__, config.ENGINE_LOG_LEVEL, config.ENGINE_LOG_FILE, console=False)

CSV_COLUMNS = ("a", "b", "c", "num", "den")


def scalar_dict(value: Fraction) -> Dict[str, int]:
    value = Fraction(value)
    return {"num": value.numerator, "den": value.denominator}


def serialize(payload: Dict[str, Any]) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False)


def _jsonable(value: Any) -> Any:
    if isinstance(value, Fraction):
        return scalar_dict(value)
    if isinstance(value, Element):
        return format_element(value)
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


# --- single results ---

def encode_result(command: str, inputs: Dict[str, Any], value: Any) -> str:
    """{"command", "inputs", "value"}; scalars become {"num", "den"}, elements their text."""
    try:
        return serialize({"command": command, "inputs": _jsonable(inputs), "value": _jsonable(value)})
    except (TypeError, ValueError) as e:
        logger.error(f"Failed to JSON encode the result of {command}: {e}", exc_info=True)
        raise


def encode_error(error: BaseException) -> str:
    return json.dumps({"error": type(error).__name__, "message": str(error)}, ensure_ascii=False)


def result_text(value: Any) -> str:
    if isinstance(value, Fraction):
        return format_scalar(value)
    if isinstance(value, Element):
        return format_element(value)
    if isinstance(value, dict):
        return "\n".join(f"{k}: {result_text(v)}" for k, v in value.items())
    return str(value)


# --- series ---

def series_csv(table: SeriesTable) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for a, b, c in table.indices():
        value = table.get(a, b, c)
        writer.writerow((a, b, c, value.numerator, value.denominator))
    return out.getvalue()


def series_json(table: SeriesTable, report: Optional[SeriesReport] = None) -> str:
    payload = {
        "command": "series",
        "inputs": {"genus": table.genus, "order": table.order, "source": table.source},
        "value": [
            {"index": [a, b, c], **scalar_dict(table.get(a, b, c))}
            for a, b, c in table.indices()
        ],
    }
    if report is not None:
        payload["report"] = report_dict(report)
    return serialize(payload)


def series_text(table: SeriesTable) -> str:
    lines = [f"F_{table.genus} up to order {table.order} ({table.source}):"]
    for a, b, c in table.indices():
        value = table.get(a, b, c)
        if value:
            lines.append(f"  F[{a},{b},{c}] = {format_scalar(value)}")
    return "\n".join(lines)


def report_dict(report: SeriesReport) -> Dict[str, Any]:
    return {
        "name": report.name,
        "order": report.order,
        "checked": report.checked,
        "passed": report.passed,
        "mismatches": [
            {"index": list(m.index), "left": scalar_dict(m.left), "right": scalar_dict(m.right)}
            for m in report.mismatches
        ],
    }


def report_text(report: SeriesReport) -> str:
    status = "ok" if report.passed else f"{len(report.mismatches)} mismatches"
    lines = [f"{report.name} (order {report.order}): {report.checked} coefficients checked, {status}"]
    for m in report.mismatches[:20]:
        lines.append(f"  {m.index}: {format_scalar(m.left)} != {format_scalar(m.right)}")
    return "\n".join(lines)


# --- isomorphism ---

def iso_dict(table, report: SolveReport) -> Dict[str, Any]:
    return {
        "solution": {k: scalar_dict(v) for k, v in report.solution.items()},
        "equations": report.equation_counts,
        "ranks": report.ranks,
        "unknowns": report.unknown_count,
        "consistent": report.consistent,
        "lines": [
            {"word": format_element(w), "classical": format_element(f)}
            for w, f in zip(table.words, table.forward)
        ],
        "inverse": [
            {"class": format_element(c), "quantum": format_element(i)}
            for c, i in zip(table.classes, table.inverse)
        ],
        "discrepancies": [
            {"name": d.name, "solved": _jsonable(d.solved), "stated": _jsonable(d.stated), "note": d.note}
            for d in table.discrepancies
        ],
    }


def iso_text(table, report: SolveReport) -> str:
    lines = ["Solved constants:"]
    lines += [f"  {k} = {format_scalar(v)}" for k, v in report.solution.items()]
    counts = ", ".join(f"{k}: {v}" for k, v in report.equation_counts.items())
    lines.append(f"Equations: {counts}; unknowns: {report.unknown_count}")
    lines.append("Ranks: " + ", ".join(f"{k} {v}" for k, v in report.ranks.items()))
    lines.append("Isomorphism (quantum word -> classical class):")
    for word, image in zip(table.words, table.forward):
        if word != image:
            lines.append(f"  {format_element(word)} -> {format_element(image)}")
    if table.discrepancies:
        lines.append("Discrepancies against the stated values:")
        for d in table.discrepancies:
            lines.append(f"  {d.name}: solved {result_text(d.solved)}, stated {result_text(d.stated)} ({d.note})")
    return "\n".join(lines)


# --- verification ---

def checks_json(results: Iterable[CheckResult]) -> str:
    return serialize([{"name": r.name, "passed": r.passed, "detail": r.detail} for r in results])


def checks_text(results: List[CheckResult]) -> str:
    lines = [f"[{'PASS' if r.passed else 'FAIL'}] {r.name}" + (f": {r.detail}" if r.detail else "")
             for r in results]
    failed = sum(1 for r in results if not r.passed)
    lines.append(f"{len(results) - failed}/{len(results)} checks passed")
    return "\n".join(lines)
