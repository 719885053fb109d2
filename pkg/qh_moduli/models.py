# qh_moduli/models.py
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Dict, List, NewType, Optional, Tuple

from .algebra import Context, Element, Monomial
from .exceptions import PresentationError, UnsupportedGenusError

# Ring kinds a genus may carry
RingKind = NewType('RingKind', str)
KIND_CLASSICAL = RingKind('classical')
KIND_QUANTUM = RingKind('quantum')
KIND_FLOER = RingKind('floer')

# How a presentation is cut into pieces
SPLIT_PLAIN = 'plain'      # one quotient, odd generators free
SPLIT_MODULE = 'module'    # pieces tensored with odd prefactors
SPLIT_PRODUCT = 'product'  # product of quotient rings glued by a global basis

# Equation provenance tags for the isomorphism solver
SOURCE_DEGREE_ONE = 'degree-1'
SOURCE_PAIRING = 'pairing'
SOURCE_DEGREE_TWO = 'degree-2'


@dataclass(frozen=True)
class PieceSpec:
    """One piece of a split presentation."""
    label: str
    prefactors: Tuple[Element, ...] = ()
    relations: Tuple[Element, ...] = ()
    basis: Optional[Tuple[Element, ...]] = None


@dataclass(frozen=True)
class Truncation:
    """Terms with odd length + 2 * (exponents of the listed generators) > bound vanish."""
    generators: Tuple[str, ...]
    bound: int


@dataclass(frozen=True)
class Presentation:
    """
    Generators, relations and an optional declared basis.

    Pieces either all carry odd prefactors (a module split over the invariant
    ring) or none do (a product of quotient rings).
    """
    name: str
    context: Context
    relations: Tuple[Element, ...] = ()
    pieces: Tuple[PieceSpec, ...] = ()
    basis: Optional[Tuple[Element, ...]] = None
    definitions: Tuple[Tuple[str, Element], ...] = ()
    truncation: Optional[Truncation] = None

    def __post_init__(self):
        elements: List[Element] = list(self.relations) + list(self.basis or ())
        for piece in self.pieces:
            elements.extend(piece.prefactors)
            elements.extend(piece.relations)
            elements.extend(piece.basis or ())
        elements.extend(expr for _, expr in self.definitions)
        for e in elements:
            if e.context != self.context:
                raise PresentationError(f"Presentation {self.name}: element {e} uses a foreign context")
        labels = [p.label for p in self.pieces]
        if len(set(labels)) != len(labels):
            raise PresentationError(f"Presentation {self.name}: duplicate piece labels {labels}")
        with_prefactors = {bool(p.prefactors) for p in self.pieces}
        if len(with_prefactors) > 1:
            raise PresentationError(f"Presentation {self.name}: pieces must all have prefactors or none")
        if self.truncation is not None:
            for name in self.truncation.generators:
                if not self.context.has(name):
                    raise PresentationError(f"Presentation {self.name}: truncation names unknown generator {name}")

    @property
    def split(self) -> str:
        if not self.pieces:
            return SPLIT_PLAIN
        return SPLIT_MODULE if self.pieces[0].prefactors else SPLIT_PRODUCT

    def definition(self, name: str) -> Optional[Element]:
        for key, expr in self.definitions:
            if key == name:
                return expr
        return None

    def piece(self, label: str) -> PieceSpec:
        for p in self.pieces:
            if p.label == label:
                return p
        raise KeyError(label)


@dataclass(frozen=True)
class GenusData:
    """Everything the evaluators need for one genus."""
    genus: int
    context: Context
    gamma_name: str
    gamma_expression: Element
    classical: Optional[Presentation] = None
    quantum: Optional[Presentation] = None
    floer: Optional[Presentation] = None
    fixtures: Tuple[Tuple[Element, Fraction], ...] = ()

    def __post_init__(self):
        if self.genus < 1:
            raise PresentationError(f"Genus must be positive, got {self.genus}")
        if len(self.context.odd) != 2 * self.genus:
            raise PresentationError(
                f"Genus {self.genus} needs {2 * self.genus} odd generators, context has {len(self.context.odd)}")
        terms = self.gamma_expression.terms()
        expected = {
            Monomial((0,) * len(self.context.even), (i, i + self.genus)): Fraction(-2)
            for i in range(self.genus)
        }
        if terms != expected:
            raise PresentationError(
                f"The odd expression of {self.gamma_name} must be -2 times the sum of the "
                f"{self.genus} symplectic pairs, got {self.gamma_expression}")
        for kind in ('classical', 'quantum', 'floer'):
            pres = getattr(self, kind)
            if pres is not None and pres.context != self.context:
                raise PresentationError(f"The {kind} presentation does not use the genus context")

    @property
    def pairing_normalization(self) -> Fraction:
        """The pairing value of the top class of the invariant ring: 2^(g-1) g!."""
        return Fraction(2 ** (self.genus - 1) * factorial(self.genus))

    @property
    def pairing_degree(self) -> int:
        return 6 * self.genus - 6

    @property
    def gamma(self) -> Element:
        return self.context.generator(self.gamma_name)

    def top_invariant_monomial(self) -> Monomial:
        exps = [0] * len(self.context.even)
        exps[self.context.even_index(self.gamma_name)] = self.genus - 1
        return Monomial(tuple(exps))

    def presentation(self, kind: str) -> Presentation:
        pres = getattr(self, kind, None) if kind in ('classical', 'quantum', 'floer') else None
        if pres is None:
            raise UnsupportedGenusError(f"No {kind} presentation for genus {self.genus}")
        return pres


@dataclass
class EvalResult:
    """Result of a pairing evaluation."""
    value: Fraction
    coefficient: Fraction
    normal_form: Element
    d: Optional[int] = None


@dataclass
class SeriesTable:
    """Taylor coefficients F[a, b, c] of a generating function in (s, lambda, r)."""
    genus: int
    order: int
    coefficients: Dict[Tuple[int, int, int], Fraction] = field(default_factory=dict)
    source: str = 'evaluation'

    def get(self, a: int, b: int, c: int) -> Fraction:
        return self.coefficients.get((a, b, c), Fraction(0))

    def indices(self) -> List[Tuple[int, int, int]]:
        return [
            (a, b, n - a - b)
            for n in range(self.order + 1)
            for a in range(n, -1, -1)
            for b in range(n - a, -1, -1)
        ]


@dataclass(frozen=True)
class ClosedFormTerm:
    """coefficient * polynomial(s, lambda, r) * f(frequency * s) * exp(rate * lambda)."""
    coefficient: Fraction
    function: str
    frequency: Fraction
    rate: Fraction
    polynomial: Tuple[Tuple[Tuple[int, int, int], Fraction], ...] = (((0, 0, 0), Fraction(1)),)


@dataclass
class SeriesMismatch:
    index: Tuple[int, int, int]
    left: Fraction
    right: Fraction


@dataclass
class SeriesReport:
    """Outcome of a coefficientwise comparison."""
    name: str
    order: int
    checked: int = 0
    mismatches: List[SeriesMismatch] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.mismatches


@dataclass
class Equation:
    """One equation of the isomorphism system, lhs built from sympy expressions."""
    source: str
    label: str
    lhs: object
    rhs: Fraction

    def describe(self) -> str:
        return f"[{self.source}] {self.label}: {self.lhs} = {self.rhs}"


@dataclass
class Discrepancy:
    """A solved value that differs from a stated one."""
    name: str
    solved: object
    stated: object
    note: str = ''


@dataclass
class SolveReport:
    solution: Dict[str, Fraction]
    equation_counts: Dict[str, int]
    ranks: Dict[str, int]
    unknown_count: int
    residuals: List[str] = field(default_factory=list)
    discrepancies: List[Discrepancy] = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        return not self.residuals


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ''
