# qh_moduli/iso_solver.py
"""
Reconstruction of the genus 3 isomorphism between the classical and the
quantum cohomology rings.

Every quantum basis word is written as its cup product plus unknown multiples
of lower classical basis classes. Three families of linear equations fix the
unknowns:

* degree-1: each line paired with a complementary classical class equals the
  degree-one invariant of its factors and that class;
* pairing: two lines pair classically to the multiple-point invariant of the
  product of their words;
* degree-2: the beta^2 and alpha*gamma lines paired with gamma^2 equal the
  two degree-two invariants.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

import sympy
from sympy import QQ, Rational
from sympy.polys.matrices import DomainMatrix

from . import config
from .algebra import Element
from .degree_one import gw_degree1
from .degree_two import psi2a_alpha_gamma_pt, psi2a_beta_beta_pt
from .evaluation import Evaluator, evaluator
from .exceptions import SolverError
from .groebner import to_fraction
from .models import (Discrepancy, Equation, KIND_CLASSICAL, KIND_QUANTUM, SOURCE_DEGREE_ONE,
                     SOURCE_DEGREE_TWO, SOURCE_PAIRING, SolveReport)
from .parser import format_element, parse
from .presentations import STATED_CONSTANTS, UNKNOWN_ORDER, ansatz_corrections, stated_lines
from .reduction import BasisKey

logger = config.setup_logger(__name__, config.ENGINE_LOG_LEVEL, config.ENGINE_LOG_FILE, console=False)

# Real degree of the class a line is paired with in a degree-one equation, added to the line degree.
DEGREE_ONE_TOTAL = 16
# Lines whose pairing with gamma^2 is a degree-two invariant.
DEGREE_TWO_LINES = (("beta^2", psi2a_beta_beta_pt), ("alpha*gamma", psi2a_alpha_gamma_pt))
DEGREE_TWO_PARTNER = "gamma^2"


def _rational(value: Fraction) -> Rational:
    return Rational(value.numerator, value.denominator)


@dataclass
class AnsatzLine:
    """A quantum basis word and its classical expansion with unknown coefficients."""
    key: BasisKey
    word: Element
    factors: Tuple[Element, Element]
    degree: int
    expansion: Dict[int, sympy.Expr] = field(default_factory=dict)

    @property
    def unknowns(self) -> set:
        return set().union(*(e.free_symbols for e in self.expansion.values())) if self.expansion else set()


@dataclass
class IsoTable:
    """The solved isomorphism: forward rows (quantum word -> classical class) and the inverse."""
    words: List[Element]
    classes: List[Element]
    forward: List[Element]
    inverse: List[Element]
    discrepancies: List[Discrepancy] = field(default_factory=list)


class IsoSolver:
    """Builds the ansatz from the genus 3 rings and solves it exactly."""

    def __init__(self, ev: Optional[Evaluator] = None):
        self.ev = ev or evaluator(3)
        if self.ev.genus != 3:
            raise SolverError(f"The isomorphism ansatz is defined for genus 3, not {self.ev.genus}")
        self.context = self.ev.context
        self.classical = self.ev.engine(KIND_CLASSICAL)
        self.quantum = self.ev.engine(KIND_QUANTUM)
        self.basis = self.classical.basis()
        quantum_keys = [k for k, _ in self.quantum.basis()]
        if [k for k, _ in self.basis] != quantum_keys:
            raise SolverError("Classical and quantum presentations have different canonical bases")
        self.index = {key: i for i, (key, _) in enumerate(self.basis)}
        self.degrees = [b.degree() or 0 for _, b in self.basis]
        self.symbols = {name: sympy.Symbol(name) for name in UNKNOWN_ORDER}
        self._gram: Dict[Tuple[int, int], Fraction] = {}
        self.lines = self._build_lines()
        self._report: Optional[SolveReport] = None
        self._solution: Dict[str, Fraction] = {}
        self._table: Optional[IsoTable] = None

    # --- ansatz ---
    def _classical_vector(self, x: Element) -> Dict[int, Fraction]:
        return {self.index[k]: v for k, v in self.classical.coordinates(x).items()}

    def _factors(self, key: BasisKey) -> Tuple[Element, Element]:
        prefactor, even = self.quantum.key_parts(key)
        if key.piece != 'trivial':
            return prefactor, even
        (monomial, _), = even.terms().items()
        for gen, e in zip(self.context.even, monomial.exponents):
            if e:
                first = self.context.generator(gen.name)
                exps = list(monomial.exponents)
                exps[self.context.even_index(gen.name)] -= 1
                return first, self.context.even_monomial(exps)
        return self.context.one(), self.context.one()

    def _build_lines(self) -> List[AnsatzLine]:
        lines = []
        for key, word in self.quantum.basis():
            prefactor, even = self.quantum.key_parts(key)
            degree = word.degree() or 0
            line = AnsatzLine(key=key, word=word, factors=self._factors(key), degree=degree)
            for i, v in self._classical_vector(word).items():
                line.expansion[i] = line.expansion.get(i, 0) + _rational(v)
            for term in ansatz_corrections(key.piece, format_element(even), prefactor):
                vector = self._classical_vector(term.element)
                for i, v in vector.items():
                    step = degree - self.degrees[i]
                    if step <= 0 or step % 4 or self.basis[i][0].piece != key.piece:
                        raise SolverError(
                            f"Ansatz term {term.unknown} of {format_element(word)} is not a lower class of its piece")
                    line.expansion[i] = line.expansion.get(i, 0) + self.symbols[term.unknown] * _rational(v)
            lines.append(line)
        logger.debug(f"Ansatz: {len(lines)} lines, "
                     f"{sum(1 for line in lines if line.unknowns)} with unknowns")
        return lines

    def line(self, word_text: str) -> AnsatzLine:
        word = parse(word_text, self.context)
        for line in self.lines:
            if line.word == word:
                return line
        raise KeyError(word_text)

    # --- pairings ---
    def gram(self, i: int, j: int) -> Fraction:
        """Classical pairing of two basis classes."""
        if self.degrees[i] + self.degrees[j] != self.ev.data.pairing_degree:
            return Fraction(0)
        key = (min(i, j), max(i, j))
        if key not in self._gram:
            value = self.ev.classical_pairing(self.basis[key[0]][1], self.basis[key[1]][1])
            self._gram[key] = value
        sign = 1
        if i > j and self.degrees[i] % 2 and self.degrees[j] % 2:
            sign = -1
        return sign * self._gram[key]

    def _pair(self, first: Dict[int, sympy.Expr], second: Dict[int, sympy.Expr]) -> sympy.Expr:
        total = sympy.Integer(0)
        for i, a in first.items():
            for j, b in second.items():
                g = self.gram(i, j)
                if g:
                    total += a * b * _rational(g)
        return sympy.expand(total)

    # --- equations ---
    def degree_one_equations(self) -> List[Equation]:
        equations = []
        for line in self.lines:
            if not line.unknowns:
                continue
            target = DEGREE_ONE_TOTAL - line.degree
            for j, (_, w) in enumerate(self.basis):
                if self.degrees[j] != target:
                    continue
                lhs = self._pair(line.expansion, {j: sympy.Integer(1)})
                rhs = gw_degree1(line.factors[0], line.factors[1], w)
                if lhs == 0 and rhs == 0:
                    continue
                label = f"<{format_element(line.word)}, {format_element(w)}>"
                equations.append(Equation(SOURCE_DEGREE_ONE, label, lhs, rhs))
        return equations

    def pairing_equations(self) -> List[Equation]:
        equations = []
        base = self.ev.data.pairing_degree
        for a, first in enumerate(self.lines):
            for second in self.lines[a:]:
                total = first.degree + second.degree
                if total < base or (total - base) % 4 or first.key.piece != second.key.piece:
                    continue
                if not (first.unknowns or second.unknowns):
                    continue
                lhs = self._pair(first.expansion, second.expansion)
                rhs = self.ev.tilde_psi(first.word * second.word)
                if lhs == 0 and rhs == 0:
                    continue
                label = f"<{format_element(first.word)}, {format_element(second.word)}>"
                equations.append(Equation(SOURCE_PAIRING, label, lhs, rhs))
        return equations

    def degree_two_equations(self) -> List[Equation]:
        partner = self.index[next(k for k, b in self.basis if b == parse(DEGREE_TWO_PARTNER, self.context))]
        equations = []
        for word, invariant in DEGREE_TWO_LINES:
            line = self.line(word)
            lhs = self._pair(line.expansion, {partner: sympy.Integer(1)})
            equations.append(Equation(SOURCE_DEGREE_TWO, f"<{word}, {DEGREE_TWO_PARTNER}>", lhs, invariant()))
        return equations

    # --- solving ---
    def _order(self, symbols) -> List[sympy.Symbol]:
        return sorted(symbols, key=lambda s: UNKNOWN_ORDER.index(s.name))

    def _determine(self, equations: List[Equation], solved: Dict[sympy.Symbol, sympy.Expr],
                   phase: str) -> int:
        """
        One elimination round: substitutes what is known, keeps the equations
        that are linear in the rest and adds every unknown they fix uniquely.
        Returns the rank of the linear system.

        Raises:
            SolverError: the linear equations are inconsistent.
        """
        exprs = [sympy.expand(e.lhs.subs(solved) - _rational(e.rhs)) for e in equations]
        unknowns = self._order(set().union(*(x.free_symbols for x in exprs)))
        if unknowns:
            linear = [x for x in exprs if sympy.Poly(x, *unknowns).total_degree() <= 1]
        else:
            linear = exprs
        dump = "\n".join(e.describe() for e in equations)
        if not unknowns:
            if any(x != 0 for x in linear):
                raise SolverError(f"The {phase} equations are inconsistent with the solved values", dump)
            return 0
        if not linear:
            return 0
        matrix, vector = sympy.linear_eq_to_matrix(linear, unknowns)
        rank = matrix.rank()
        if matrix.row_join(vector).rank() != rank:
            raise SolverError(f"The {phase} equations are inconsistent (rank {rank})", dump)
        if not rank:
            return 0
        solution, params = matrix.gauss_jordan_solve(vector)
        free = set(params)
        for i, u in enumerate(unknowns):
            value = solution[i, 0]
            if not (value.free_symbols & free):
                solved[u] = value
        logger.info(f"{phase}: {len(linear)} linear equations in {len(unknowns)} unknowns, rank {rank}")
        return rank

    def solve(self) -> SolveReport:
        """
        Assembles and solves all equations.

        The degree-1 equations are linear and go first; the remaining equations
        become linear once their products of unknowns are substituted, so
        elimination rounds repeat until every unknown is fixed.

        Raises:
            SolverError: inconsistent or underdetermined system (the message holds the equation dump).
        """
        if self._report is not None:
            return self._report
        first = self.degree_one_equations()
        later = self.pairing_equations() + self.degree_two_equations()
        everything = first + later
        all_unknowns = self._order(set().union(*(line.unknowns for line in self.lines)))
        solved: Dict[sympy.Symbol, sympy.Expr] = {}
        ranks = {'degree-1': self._determine(first, solved, 'degree-1')}
        rounds = 0
        while len(solved) < len(all_unknowns):
            before = len(solved)
            rounds += 1
            ranks[f"round {rounds}"] = self._determine(everything, solved, f"round {rounds}")
            if len(solved) == before:
                missing = ", ".join(u.name for u in all_unknowns if u not in solved)
                raise SolverError(f"The equations leave unknowns free: {missing}",
                                  "\n".join(e.describe() for e in everything))

        residuals = []
        for e in everything:
            value = sympy.expand(e.lhs.subs(solved)) - _rational(e.rhs)
            if value != 0:
                residuals.append(f"{e.describe()} (residual {value})")
        if residuals:
            raise SolverError("Solved values leave nonzero residuals", "\n".join(residuals))

        solution = {}
        for u, v in solved.items():
            value = sympy.Rational(v)
            solution[u.name] = Fraction(int(value.p), int(value.q))
        counts = {SOURCE_DEGREE_ONE: len(first), SOURCE_PAIRING: 0, SOURCE_DEGREE_TWO: 0}
        for e in later:
            counts[e.source] += 1
        report = SolveReport(
            solution={name: solution[name] for name in UNKNOWN_ORDER if name in solution},
            equation_counts=counts,
            ranks=ranks,
            unknown_count=len(all_unknowns),
        )
        for name, stated in STATED_CONSTANTS.items():
            if name in solution and solution[name] != stated:
                report.discrepancies.append(Discrepancy(name, solution[name], stated, "stated constant"))
                logger.warning(f"{name}: solved {solution[name]}, stated {stated}")
        self._solution = solution
        self._report = report
        return report

    # --- the isomorphism ---
    def _expansion_element(self, line: AnsatzLine) -> Element:
        result = self.context.zero()
        for i, expr in line.expansion.items():
            value = sympy.Rational(expr.subs({self.symbols[n]: _rational(v) for n, v in self._solution.items()}))
            result = result + self.basis[i][1].scale(Fraction(int(value.p), int(value.q)))
        return result

    def iso_table(self) -> IsoTable:
        """Forward and inverse isomorphism on the canonical bases, with discrepancies against the stated lines."""
        if self._table is not None:
            return self._table
        self.solve()
        n = len(self.basis)
        forward = [self._expansion_element(line) for line in self.lines]
        rows = [[QQ(0)] * n for _ in range(n)]
        for q, element in enumerate(forward):
            for i, v in self._classical_vector(element).items():
                rows[q][i] = QQ(v.numerator, v.denominator)
        inverse_matrix = DomainMatrix(rows, (n, n), QQ).inv().to_list()
        inverse = []
        for c in range(n):
            value = self.context.zero()
            for q in range(n):
                entry = to_fraction(inverse_matrix[c][q])
                if entry:
                    value = value + self.lines[q].word.scale(entry)
            inverse.append(value)
        self._inverse_rows = [[to_fraction(x) for x in row] for row in inverse_matrix]
        table = IsoTable(
            words=[line.word for line in self.lines],
            classes=[b for _, b in self.basis],
            forward=forward,
            inverse=inverse,
            discrepancies=list(self._report.discrepancies),
        )
        for word, stated in stated_lines(self.context):
            line = next((ln for ln in self.lines if ln.word == word), None)
            if line is None:
                continue
            solved = forward[self.lines.index(line)]
            if solved != stated:
                table.discrepancies.append(Discrepancy(
                    f"line {format_element(word)}", format_element(solved), format_element(stated), "stated line"))
                logger.warning(f"Line {format_element(word)}: solved {solved}, stated {stated}")
        self._table = table
        return table

    def _quantum_vector(self, x: Element) -> List[Fraction]:
        """Coordinates of a classical class in the quantum word basis."""
        self.iso_table()
        classical = self._classical_vector(x)
        n = len(self.basis)
        return [sum((self._inverse_rows[c][q] * v for c, v in classical.items()), Fraction(0)) for q in range(n)]

    def quantum_product(self, x: Element, y: Element) -> Element:
        """
        Quantum product of two classical classes, returned in the classical basis.

        Raises:
            NotDeterminedError: the product leaves the span of the stored pieces.
        """
        table = self.iso_table()
        ux, uy = self._quantum_vector(x), self._quantum_vector(y)
        qx = sum((self.lines[q].word.scale(v) for q, v in enumerate(ux) if v), self.context.zero())
        qy = sum((self.lines[q].word.scale(v) for q, v in enumerate(uy) if v), self.context.zero())
        result = self.context.zero()
        for key, value in self.quantum.coordinates(qx * qy).items():
            result = result + table.forward[self.index[key]].scale(value)
        return result

    def gw3_classical(self, x: Element, y: Element, z: Element) -> Fraction:
        """Three-point invariant summed over degrees: <x * y, z>."""
        return self.ev.classical_pairing(self.quantum_product(x, y), z)


@lru_cache(maxsize=1)
def solver() -> IsoSolver:
    return IsoSolver()


def build_and_solve() -> SolveReport:
    return solver().solve()


def iso_table() -> IsoTable:
    return solver().iso_table()


def quantum_product(x: Element, y: Element) -> Element:
    return solver().quantum_product(x, y)


def gw3_classical(x: Element, y: Element, z: Element) -> Fraction:
    return solver().gw3_classical(x, y, z)


__all__ = ['IsoSolver', 'IsoTable', 'AnsatzLine', 'build_and_solve', 'iso_table', 'quantum_product',
           'gw3_classical']
