# qh_moduli/algebra.py
"""
Graded-commutative polynomial algebra over the rationals.

Even generators commute with everything; odd generators anticommute with each
other and square to zero. A monomial is stored as an exponent tuple over the
even generators plus a strictly increasing word of odd generator indices, so
every element has exactly one representation.
"""
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from .exceptions import ContextMismatchError, UnknownGeneratorError

Scalar = Fraction

PARITY_EVEN = 'even'
PARITY_ODD = 'odd'


@dataclass(frozen=True)
class GeneratorSpec:
    """A named generator with its cohomological degree and parity."""
    name: str
    degree: int
    parity: str = PARITY_EVEN

    def __post_init__(self):
        if not isinstance(self.name, str) or not self.name.isidentifier():
            raise ValueError(f"Invalid generator name: {self.name!r}")
        if self.parity not in (PARITY_EVEN, PARITY_ODD):
            raise ValueError(f"Invalid parity for {self.name}: {self.parity!r}")
        if not isinstance(self.degree, int) or self.degree < 0:
            raise ValueError(f"Generator {self.name} needs a non-negative integer degree")

    @property
    def is_odd(self) -> bool:
        return self.parity == PARITY_ODD


@dataclass(frozen=True, order=True)
class Monomial:
    """Exponents of the even generators and the sorted word of odd generators."""
    exponents: Tuple[int, ...]
    word: Tuple[int, ...] = ()

    def __post_init__(self):
        if any(e < 0 for e in self.exponents):
            raise ValueError(f"Negative exponent in {self.exponents}")
        if any(a >= b for a, b in zip(self.word, self.word[1:])):
            raise ValueError(f"Odd word must be strictly increasing: {self.word}")

    @property
    def odd_length(self) -> int:
        return len(self.word)

    @property
    def is_even(self) -> bool:
        return not self.word


class Context:
    """An ordered list of generators; every Element belongs to exactly one Context."""

    def __init__(self, generators: Iterable[GeneratorSpec]):
        self.generators: Tuple[GeneratorSpec, ...] = tuple(generators)
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise ValueError(f"Duplicate generator names in {names}")
        self.even: Tuple[GeneratorSpec, ...] = tuple(g for g in self.generators if not g.is_odd)
        self.odd: Tuple[GeneratorSpec, ...] = tuple(g for g in self.generators if g.is_odd)
        self._even_index = {g.name: i for i, g in enumerate(self.even)}
        self._odd_index = {g.name: i for i, g in enumerate(self.odd)}

    def __eq__(self, other) -> bool:
        return isinstance(other, Context) and self.generators == other.generators

    def __hash__(self) -> int:
        return hash(self.generators)

    def __repr__(self) -> str:
        return f"Context({', '.join(g.name for g in self.generators)})"

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(g.name for g in self.generators)

    def has(self, name: str) -> bool:
        return name in self._even_index or name in self._odd_index

    def even_index(self, name: str) -> int:
        try:
            return self._even_index[name]
        except KeyError:
            raise UnknownGeneratorError(name) from None

    def odd_index(self, name: str) -> int:
        try:
            return self._odd_index[name]
        except KeyError:
            raise UnknownGeneratorError(name) from None

    def monomial_degree(self, monomial: Monomial) -> int:
        even = sum(e * g.degree for e, g in zip(monomial.exponents, self.even))
        return even + sum(self.odd[i].degree for i in monomial.word)

    def unit_monomial(self) -> Monomial:
        return Monomial((0,) * len(self.even))

    def zero(self) -> 'Element':
        return Element(self, {})

    def one(self) -> 'Element':
        return self.constant(1)

    def constant(self, value) -> 'Element':
        return Element(self, {self.unit_monomial(): Fraction(value)})

    def generator(self, name: str) -> 'Element':
        """The element consisting of a single generator."""
        if name in self._even_index:
            exps = [0] * len(self.even)
            exps[self._even_index[name]] = 1
            return Element(self, {Monomial(tuple(exps)): Fraction(1)})
        if name in self._odd_index:
            return Element(self, {Monomial((0,) * len(self.even), (self._odd_index[name],)): Fraction(1)})
        raise UnknownGeneratorError(name)

    def even_monomial(self, exponents: Sequence[int]) -> 'Element':
        return Element(self, {Monomial(tuple(exponents)): Fraction(1)})


Coercible = Union['Element', int, Fraction]


def _multiply_monomials(m1: Monomial, m2: Monomial) -> Optional[Tuple[int, Monomial]]:
    """Returns (sign, product) or None when the odd words overlap."""
    if m1.word and m2.word and set(m1.word) & set(m2.word):
        return None
    # Each pair (a in m1, b in m2) with a > b costs one transposition.
    inversions = sum(bisect_left(m2.word, a) for a in m1.word)
    exponents = tuple(a + b for a, b in zip(m1.exponents, m2.exponents))
    word = tuple(sorted(m1.word + m2.word))
    return (-1 if inversions % 2 else 1), Monomial(exponents, word)


class Element:
    """An immutable finite linear combination of monomials with Fraction coefficients."""

    __slots__ = ('context', '_terms')

    def __init__(self, context: Context, terms: Optional[Mapping[Monomial, Coercible]] = None):
        self.context = context
        clean: Dict[Monomial, Fraction] = {}
        n_even, n_odd = len(context.even), len(context.odd)
        for monomial, coeff in (terms or {}).items():
            if len(monomial.exponents) != n_even or any(i >= n_odd for i in monomial.word):
                raise ValueError(f"Monomial {monomial} does not fit {context}")
            value = Fraction(coeff)
            if value:
                clean[monomial] = value
        self._terms = clean

    # --- Construction helpers ---
    @classmethod
    def from_monomial(cls, context: Context, monomial: Monomial, coefficient: Coercible = 1) -> 'Element':
        return cls(context, {monomial: coefficient})

    def _coerce(self, other) -> 'Element':
        if isinstance(other, Element):
            if other.context != self.context:
                raise ContextMismatchError(f"Cannot combine elements of {self.context} and {other.context}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.context.constant(other)
        raise TypeError(f"Cannot combine Element with {type(other).__name__}")

    # --- Inspection ---
    def terms(self) -> Dict[Monomial, Fraction]:
        return dict(self._terms)

    def __iter__(self) -> Iterator[Tuple[Monomial, Fraction]]:
        return iter(sorted(self._terms.items(), key=lambda item: display_key(self.context, item[0])))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, monomial: Monomial) -> Fraction:
        return self._terms.get(monomial, Fraction(0))

    def constant_term(self) -> Fraction:
        return self.coefficient(self.context.unit_monomial())

    @property
    def has_odd_terms(self) -> bool:
        return any(m.word for m in self._terms)

    def degrees(self) -> List[int]:
        return sorted({self.context.monomial_degree(m) for m in self._terms})

    def is_homogeneous(self) -> bool:
        """True for zero and for elements whose terms share one degree."""
        return len(self.degrees()) <= 1

    def degree(self) -> Optional[int]:
        """The degree of a nonzero homogeneous element; None for zero or inhomogeneous input."""
        degrees = self.degrees()
        return degrees[0] if len(degrees) == 1 else None

    def homogeneous_components(self) -> Dict[int, 'Element']:
        parts: Dict[int, Dict[Monomial, Fraction]] = {}
        for m, c in self._terms.items():
            parts.setdefault(self.context.monomial_degree(m), {})[m] = c
        return {d: Element(self.context, t) for d, t in sorted(parts.items())}

    def by_word(self) -> Dict[Tuple[int, ...], Dict[Tuple[int, ...], Fraction]]:
        """Groups terms by odd word: word -> {even exponents: coefficient}."""
        grouped: Dict[Tuple[int, ...], Dict[Tuple[int, ...], Fraction]] = {}
        for m, c in self._terms.items():
            grouped.setdefault(m.word, {})[m.exponents] = c
        return grouped

    # --- Arithmetic ---
    def __add__(self, other: Coercible) -> 'Element':
        other = self._coerce(other)
        terms = dict(self._terms)
        for m, c in other._terms.items():
            terms[m] = terms.get(m, Fraction(0)) + c
        return Element(self.context, terms)

    __radd__ = __add__

    def __neg__(self) -> 'Element':
        return Element(self.context, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other: Coercible) -> 'Element':
        return self + (-self._coerce(other))

    def __rsub__(self, other: Coercible) -> 'Element':
        return self._coerce(other) - self

    def __mul__(self, other: Coercible) -> 'Element':
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return multiply(self, other)

    def __rmul__(self, other: Coercible) -> 'Element':
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return multiply(self._coerce(other), self)

    def __pow__(self, exponent: int) -> 'Element':
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("Exponent must be a non-negative integer")
        result = self.context.one()
        for _ in range(exponent):
            result = multiply(result, self)
        return result

    def scale(self, factor: Coercible) -> 'Element':
        factor = Fraction(factor)
        return Element(self.context, {m: c * factor for m, c in self._terms.items()})

    def map_terms(self, function) -> 'Element':
        """Applies function(monomial, coefficient) -> coefficient and drops zeros."""
        return Element(self.context, {m: function(m, c) for m, c in self._terms.items()})

    # --- Equality / hashing ---
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.context.constant(other)
        if not isinstance(other, Element):
            return NotImplemented
        return self.context == other.context and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.context, frozenset(self._terms.items())))

    def __str__(self) -> str:
        from .parser import format_element
        return format_element(self)

    def __repr__(self) -> str:
        return f"Element({self})"


def display_key(context: Context, monomial: Monomial):
    """Display order: higher degree first, later generators dominant, then odd word."""
    return (
        -context.monomial_degree(monomial),
        tuple(-e for e in reversed(monomial.exponents)),
        len(monomial.word),
        monomial.word,
    )


def multiply(x: Element, y: Element) -> Element:
    """Graded-commutative product; overlapping odd words vanish."""
    if x.context != y.context:
        raise ContextMismatchError(f"Cannot multiply elements of {x.context} and {y.context}")
    terms: Dict[Monomial, Fraction] = {}
    for m1, c1 in x._terms.items():
        for m2, c2 in y._terms.items():
            product = _multiply_monomials(m1, m2)
            if product is None:
                continue
            sign, m = product
            terms[m] = terms.get(m, Fraction(0)) + sign * c1 * c2
    return Element(x.context, terms)


def coefficient(x: Element, monomial: Monomial) -> Scalar:
    return x.coefficient(monomial)


def product(factors: Iterable[Element], context: Context) -> Element:
    result = context.one()
    for f in factors:
        result = multiply(result, f)
    return result


def apply_homomorphism(x: Element, target: Context, images: Mapping[str, Element]) -> Element:
    """
    Evaluates the algebra map sending each generator to images[name].

    Odd generators are applied in word order, so the images of odd generators
    must themselves be odd for the map to respect the sign rule.
    """
    missing = [g.name for g in x.context.generators if g.name not in images]
    if missing:
        raise UnknownGeneratorError(missing[0])
    even_images = [images[g.name] for g in x.context.even]
    odd_images = [images[g.name] for g in x.context.odd]
    powers: Dict[Tuple[int, int], Element] = {}
    result = target.zero()
    for m, c in x._terms.items():
        value = target.constant(c)
        for i, e in enumerate(m.exponents):
            if e:
                if (i, e) not in powers:
                    powers[(i, e)] = even_images[i] ** e
                value = multiply(value, powers[(i, e)])
        for i in m.word:
            value = multiply(value, odd_images[i])
        result = result + value
    return result
