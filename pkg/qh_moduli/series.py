# qh_moduli/series.py
"""
Generating functions of the Donaldson invariants of the product of a surface
with the projective line.

F(s, lambda, r) = sum_{a,b,c} F[a,b,c] s^a lambda^b r^c with
F[a,b,c] = D(alpha^a beta^b gamma^c) / (a! b! c!).
"""
from fractions import Fraction
from math import factorial
from typing import Dict, Optional, Sequence, Tuple

from . import config
from .algebra import Element, Monomial
from .evaluation import Evaluator, evaluator
from .exceptions import RelationError, UnsupportedGenusError
from .models import ClosedFormTerm, KIND_FLOER, KIND_QUANTUM, SeriesMismatch, SeriesReport, SeriesTable
from .parser import format_element

logger = config.setup_logger(__name__, config.ENGINE_LOG_LEVEL, config.ENGINE_LOG_FILE, console=False)

Index = Tuple[int, int, int]
SOURCE_EVALUATION = 'evaluation'
SOURCE_CLOSED_FORM = 'closed_form'

_F = Fraction

CLOSED_FORMS: Dict[int, Tuple[ClosedFormTerm, ...]] = {
    2: (
        ClosedFormTerm(_F(-1, 16), 'sinh', _F(4), _F(-8)),
        ClosedFormTerm(_F(-1, 4), 'one', _F(0), _F(8), (((0, 0, 1), _F(16)), ((1, 0, 0), _F(-1)))),
    ),
    3: (
        ClosedFormTerm(_F(1, 2048), 'cos', _F(8), _F(8)),
        ClosedFormTerm(_F(3, 128), 'cosh', _F(4), _F(-8)),
        ClosedFormTerm(_F(-1, 32), 'sinh', _F(4), _F(-8), (((1, 0, 0), _F(1)),)),
        ClosedFormTerm(_F(1, 8), 'cosh', _F(4), _F(-8), (((0, 1, 0), _F(1)),)),
        ClosedFormTerm(_F(-3, 8), 'sinh', _F(4), _F(-8), (((0, 0, 1), _F(1)),)),
        ClosedFormTerm(_F(-1), 'one', _F(0), _F(8), (
            ((0, 0, 0), _F(49, 2048)),
            ((0, 1, 0), _F(-1, 4)),
            ((0, 0, 2), _F(12)),
            ((1, 0, 1), _F(-3, 2)),
            ((2, 0, 0), _F(3, 64)),
            ((0, 2, 0), _F(1)),
        )),
    ),
}


def _check_order(order: int):
    if order < 0 or order > config.MAX_SERIES_ORDER:
        raise ValueError(f"Series order must lie in 0..{config.MAX_SERIES_ORDER}, got {order}")


def _indices(order: int):
    return [(a, b, n - a - b) for n in range(order + 1) for a in range(n + 1) for b in range(n - a + 1)]


def series_table(genus: int, order: int = config.DEFAULT_SERIES_ORDER,
                 source: Optional[Evaluator] = None) -> SeriesTable:
    """Exact coefficients F[a,b,c] for a + b + c <= order, evaluated through the rings."""
    _check_order(order)
    ev = source or evaluator(genus)
    if ev.genus != genus:
        raise ValueError(f"Evaluator is for genus {ev.genus}, not {genus}")
    ctx = ev.context
    table = SeriesTable(genus=genus, order=order, source=SOURCE_EVALUATION)
    for a, b, c in _indices(order):
        word = ctx.generator('alpha') ** a * ctx.generator('beta') ** b * ctx.generator('gamma') ** c
        value = ev.donaldson(word)
        if value:
            table.coefficients[(a, b, c)] = value / (factorial(a) * factorial(b) * factorial(c))
    logger.debug(f"Series table genus {genus} order {order}: {len(table.coefficients)} nonzero coefficients")
    return table


def closed_form(genus: int) -> Tuple[ClosedFormTerm, ...]:
    if genus not in CLOSED_FORMS:
        raise UnsupportedGenusError(f"No closed form for genus {genus}")
    return CLOSED_FORMS[genus]


def _function_series(function: str, frequency: Fraction, order: int) -> Dict[int, Fraction]:
    coefficients: Dict[int, Fraction] = {}
    for n in range(order + 1):
        base = frequency ** n / factorial(n)
        if function == 'sinh' and n % 2:
            coefficients[n] = base
        elif function == 'cosh' and n % 2 == 0:
            coefficients[n] = base
        elif function == 'cos' and n % 2 == 0:
            coefficients[n] = base * (-1) ** (n // 2)
        elif function == 'sin' and n % 2:
            coefficients[n] = base * (-1) ** (n // 2)
        elif function == 'one' and n == 0:
            coefficients[n] = Fraction(1)
    if function not in ('sinh', 'cosh', 'cos', 'sin', 'one'):
        raise ValueError(f"Unknown function {function!r}")
    return coefficients


def taylor(terms: Sequence[ClosedFormTerm], order: int, genus: int = 0) -> SeriesTable:
    """Expands a closed form exactly up to total degree order."""
    _check_order(order)
    table = SeriesTable(genus=genus, order=order, source=SOURCE_CLOSED_FORM)
    for term in terms:
        in_s = _function_series(term.function, term.frequency, order)
        in_lambda = {j: term.rate ** j / factorial(j) for j in range(order + 1)}
        for (i, j, k), p in term.polynomial:
            for n, fs in in_s.items():
                for m, fl in in_lambda.items():
                    index = (i + n, j + m, k)
                    if sum(index) > order:
                        continue
                    value = term.coefficient * p * fs * fl
                    table.coefficients[index] = table.coefficients.get(index, Fraction(0)) + value
    table.coefficients = {k: v for k, v in table.coefficients.items() if v}
    return table


def compare(genus: int, order: int = config.DEFAULT_SERIES_ORDER,
            source: Optional[Evaluator] = None) -> SeriesReport:
    """Coefficientwise comparison of the evaluated table with the closed form."""
    evaluated = series_table(genus, order, source)
    expanded = taylor(closed_form(genus), order, genus)
    report = SeriesReport(name=f"compare-g{genus}", order=order)
    for index in _indices(order):
        report.checked += 1
        left, right = evaluated.get(*index), expanded.get(*index)
        if left != right:
            report.mismatches.append(SeriesMismatch(index, left, right))
    if report.mismatches:
        logger.warning(f"Genus {genus} series differs from its closed form at {len(report.mismatches)} coefficients")
    return report


def source_table(genus: int, order: int, source: str, ev: Optional[Evaluator]) -> SeriesTable:
    if source == SOURCE_CLOSED_FORM:
        return taylor(closed_form(genus), order, genus)
    if source == SOURCE_EVALUATION:
        return series_table(genus, order, ev)
    raise ValueError(f"Unknown series source {source!r}")


def _falling(n: int, k: int) -> int:
    return factorial(n) // factorial(n - k)


def _sign(n: int) -> int:
    return -1 if n % 2 else 1


def _twist_to_quantum(relation: Element) -> Element:
    """
    Image of a Floer-side relation in the quantum ring: alpha^a beta^b gamma^c
    is multiplied by i^(c-a) (-1)^b, with the common factor i removed from the
    terms where c - a is odd.
    """
    ctx = relation.context
    ia, ib, ic = (ctx.even_index(n) for n in ('alpha', 'beta', 'gamma'))

    def twist(m: Monomial, value: Fraction) -> Fraction:
        a, b, c = m.exponents[ia], m.exponents[ib], m.exponents[ic]
        shift = c - a
        quarter = (shift if shift % 2 == 0 else shift - 1) // 2
        return value * _sign(quarter + b)
    return relation.map_terms(twist)


def pde_check(genus: int, relation: Element, order: int = config.DEFAULT_SERIES_ORDER,
              source: str = SOURCE_EVALUATION, ev: Optional[Evaluator] = None) -> SeriesReport:
    """
    Applies relation(d/ds, d/dlambda, d/dr) to the truncated series; every
    coefficient up to order - (total degree of the relation) must vanish.

    Raises:
        RelationError: the relation does not hold in the ring behind the series.
    """
    ev = ev or evaluator(genus)
    if relation.has_odd_terms:
        raise ValueError("A differential relation must be a polynomial in alpha, beta, gamma")
    if ev.data.floer is not None:
        nf = ev.engine(KIND_FLOER).normal_form(relation)
        if not nf.is_zero:
            raise RelationError(f"{format_element(relation)} is not a relation of the Floer ring",
                                format_element(nf))
    else:
        for part in _parity_parts(relation, ev):
            nf = ev.engine(KIND_QUANTUM).normal_form(_twist_to_quantum(part))
            if not nf.is_zero:
                raise RelationError(f"{format_element(relation)} does not come from the quantum ideal",
                                    format_element(nf))

    ctx = relation.context
    ia, ib, ic = (ctx.even_index(n) for n in ('alpha', 'beta', 'gamma'))
    terms = [((m.exponents[ia], m.exponents[ib], m.exponents[ic]), c) for m, c in relation.terms().items()]
    width = max((sum(e) for e, _ in terms), default=0)
    table = source_table(genus, order, source, ev)
    report = SeriesReport(name=f"pde-g{genus}", order=order)
    for a, b, c in _indices(order - width):
        value = Fraction(0)
        for (i, j, k), coeff in terms:
            value += coeff * table.get(a + i, b + j, c + k) \
                * _falling(a + i, i) * _falling(b + j, j) * _falling(c + k, k)
        report.checked += 1
        if value:
            report.mismatches.append(SeriesMismatch((a, b, c), value, Fraction(0)))
    return report


def _parity_parts(relation: Element, ev: Evaluator):
    """Splits by degree mod 4, the grading the quantum ideal respects."""
    parts: Dict[int, Dict[Monomial, Fraction]] = {}
    for m, c in relation.terms().items():
        parts.setdefault(ev.context.monomial_degree(m) % 4, {})[m] = c
    return [Element(relation.context, t) for t in parts.values()]


def psi_series_relation(order: int = config.DEFAULT_SERIES_ORDER, source: str = SOURCE_CLOSED_FORM,
                        ev: Optional[Evaluator] = None) -> SeriesReport:
    """
    Genus 3: Psi~(alpha^a beta^b gamma^c) = i^(a-c) (-1)^b D(alpha^a beta^b gamma^c)
    for a - c even; both sides vanish when a - c is odd.
    """
    ev = ev or evaluator(3)
    if ev.genus != 3:
        raise UnsupportedGenusError("The multiple-point series relation is stated for genus 3")
    table = source_table(3, order, source, ev)
    ctx = ev.context
    report = SeriesReport(name="psi-series", order=order)
    overall = _sign((ev.genus + 1) // 2)
    for a, b, c in _indices(order):
        word = ctx.generator('alpha') ** a * ctx.generator('beta') ** b * ctx.generator('gamma') ** c
        psi = ev.tilde_psi(word)
        d_value = table.get(a, b, c) * factorial(a) * factorial(b) * factorial(c)
        if (a - c) % 2:
            expected, left = Fraction(0), psi
            if d_value:
                report.mismatches.append(SeriesMismatch((a, b, c), d_value, Fraction(0)))
        else:
            expected = overall * _sign((a - c) // 2 + b) * d_value
            left = psi
        report.checked += 1
        if left != expected:
            report.mismatches.append(SeriesMismatch((a, b, c), left, expected))
    return report


def genus_shift_check(order: int = config.DEFAULT_SERIES_ORDER, source: str = SOURCE_EVALUATION) -> SeriesReport:
    """d/dr F_3 = 6 F_2 coefficientwise up to order - 1."""
    upper = source_table(3, order, source, None)
    lower = source_table(2, max(order - 1, 0), source, None)
    report = SeriesReport(name="genus-shift", order=order)
    for a, b, c in _indices(order - 1):
        report.checked += 1
        left = (c + 1) * upper.get(a, b, c + 1)
        right = 6 * lower.get(a, b, c)
        if left != right:
            report.mismatches.append(SeriesMismatch((a, b, c), left, right))
    return report
