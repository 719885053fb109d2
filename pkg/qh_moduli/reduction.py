# qh_moduli/reduction.py
"""
Normal forms modulo a Presentation.

Three shapes are supported:

* plain: one quotient of the even generators, odd generators are free;
* module split: pieces of the form (odd prefactor) x (quotient of the even
  generators), odd words decomposed over prefactor * (defined expression)^j;
* product split: a product of quotient rings glued by a declared global basis.
"""
from fractions import Fraction
from itertools import combinations, product as cartesian
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from sympy import Matrix, QQ, Rational
from sympy.polys.matrices import DomainMatrix

from . import config
from .algebra import Context, Element, Monomial
from .exceptions import BasisError, ContextMismatchError, NotDeterminedError, PresentationError
from .groebner import GroebnerEngine, PolyDict, to_fraction
from .models import Presentation, SPLIT_MODULE, SPLIT_PLAIN, SPLIT_PRODUCT

logger = config.setup_logger(__name__, config.ENGINE_LOG_LEVEL, config.ENGINE_LOG_FILE, console=False)


class BasisKey(NamedTuple):
    """Addresses one canonical basis element: piece, prefactor index, basis index, odd word."""
    piece: str
    prefactor: int
    index: int
    word: Tuple[int, ...] = ()


def _sym(value: Fraction) -> Rational:
    return Rational(value.numerator, value.denominator)


def _frac(value) -> Fraction:
    return Fraction(int(value.p), int(value.q))


def _even_poly(x: Element) -> PolyDict:
    if x.has_odd_terms:
        raise PresentationError(f"Expected an even polynomial, got {x}")
    return {m.exponents: c for m, c in x.terms().items()}


class _EvenQuotient:
    """Quotient of the even generators of a context by a list of relations."""

    def __init__(self, context: Context, relations: Sequence[Element],
                 declared: Optional[Sequence[Element]], label: str):
        self.context = context
        self.label = label
        polys = [_even_poly(r) for r in relations]
        self._gb = GroebnerEngine(
            [g.name for g in context.even],
            [g.degree for g in context.even],
            polys,
        )
        self._standard = list(self._gb.standard_monomials)
        self._std_index = {m: i for i, m in enumerate(self._standard)}
        self._cache: Dict[Tuple[int, ...], List[Fraction]] = {}
        self._inverse: Optional[List[List[Fraction]]] = None

        if declared is None:
            self.basis: Tuple[Element, ...] = tuple(context.even_monomial(m) for m in self._standard)
            return

        for b in declared:
            _even_poly(b)
        n = len(self._standard)
        columns = [self._standard_coordinates(_even_poly(b)) for b in declared]
        M = Matrix(n, len(declared), lambda i, j: _sym(columns[j][i]))
        rank = M.rank()
        if len(declared) != n or rank != n:
            raise BasisError(f"Declared basis of {label} does not span the quotient", rank=rank, expected=n)
        inv = M.inv()
        self._inverse = [[_frac(inv[i, j]) for j in range(n)] for i in range(n)]
        self.basis = tuple(declared)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def _standard_coordinates(self, poly: PolyDict) -> List[Fraction]:
        vector = [Fraction(0)] * len(self._standard)
        for m, c in self._gb.reduce(poly).items():
            vector[self._std_index[m]] += c
        return vector

    def _monomial_coordinates(self, exponents: Tuple[int, ...]) -> List[Fraction]:
        if exponents not in self._cache:
            vector = self._standard_coordinates({exponents: Fraction(1)})
            if self._inverse is not None:
                vector = [sum((row[j] * vector[j] for j in range(len(vector)) if vector[j]), Fraction(0))
                          for row in self._inverse]
            self._cache[exponents] = vector
        return self._cache[exponents]

    def reduce(self, poly: PolyDict) -> List[Fraction]:
        """Coordinates in the canonical basis."""
        result = [Fraction(0)] * self.dimension
        for m, c in poly.items():
            if not c:
                continue
            for i, v in enumerate(self._monomial_coordinates(m)):
                if v:
                    result[i] += c * v
        return result


class ReductionEngine:
    """Normal forms and canonical coordinates for one Presentation."""

    def __init__(self, presentation: Presentation):
        self.presentation = presentation
        self.context = presentation.context
        self.split = presentation.split
        self._quotients: List[_EvenQuotient] = []
        self._decompositions: Dict[int, Dict[Tuple[int, ...], Optional[List[Tuple[Tuple[int, int, int], Fraction]]]]] = {}
        if self.split == SPLIT_PLAIN:
            self._build_plain()
        elif self.split == SPLIT_PRODUCT:
            self._build_product()
        else:
            self._build_module()
        logger.info(f"Reduction engine for {presentation.name}: {self.split} split, dimension {self.dimension}")

    # --- construction ---
    def _build_plain(self):
        p = self.presentation
        self._quotients = [_EvenQuotient(self.context, p.relations, p.basis, p.name)]

    def _build_product(self):
        p = self.presentation
        if p.basis is None:
            raise PresentationError(f"Product split {p.name} needs a global basis line")
        self._quotients = [
            _EvenQuotient(self.context, p.relations + piece.relations, piece.basis, piece.label)
            for piece in p.pieces
        ]
        rows: List[List[Fraction]] = [[] for _ in p.basis]
        for j, b in enumerate(p.basis):
            poly = _even_poly(b)
            for q in self._quotients:
                rows[j].extend(q.reduce(poly))
        total = sum(q.dimension for q in self._quotients)
        M = Matrix(total, len(p.basis), lambda i, j: _sym(rows[j][i]))
        rank = M.rank()
        if total != len(p.basis) or rank != total:
            raise BasisError(f"Global basis of {p.name} does not match the product of its pieces",
                             rank=rank, expected=total)
        inv = M.inv()
        self._product_inverse = [[_frac(inv[i, j]) for j in range(total)] for i in range(total)]

    def _build_module(self):
        p = self.presentation
        definitions = [(name, expr) for name, expr in p.definitions]
        if len(definitions) > 1:
            raise PresentationError(f"Module split {p.name} supports a single define line")
        self._contraction: Optional[Tuple[int, Element, int]] = None
        if definitions:
            name, expr = definitions[0]
            lengths = self._odd_lengths(expr, f"definition of {name}")
            self._contraction = (self.context.even_index(name), expr, lengths)
        self._prefactor_lengths: List[List[int]] = []
        for piece in p.pieces:
            self._prefactor_lengths.append([self._odd_lengths(f, f"prefactor of {piece.label}")
                                            for f in piece.prefactors])
            self._quotients.append(
                _EvenQuotient(self.context, p.relations + piece.relations, piece.basis, piece.label))

    def _odd_lengths(self, x: Element, what: str) -> int:
        lengths = {m.odd_length for m in x.terms()}
        if x.is_zero or len(lengths) != 1 or any(any(m.exponents) for m in x.terms()):
            raise PresentationError(f"The {what} must be a nonzero odd expression of one word length: {x}")
        return lengths.pop()

    # --- odd word decomposition (module split) ---
    def _decomposition(self, length: int):
        if length in self._decompositions:
            return self._decompositions[length]
        p = self.presentation
        candidates: List[Tuple[Optional[Tuple[int, int, int]], Element]] = []
        for pi, piece in enumerate(p.pieces):
            for ri, prefactor in enumerate(piece.prefactors):
                k = self._prefactor_lengths[pi][ri]
                if k == length:
                    candidates.append(((pi, ri, 0), prefactor))
                elif self._contraction is not None and k < length:
                    step = self._contraction[2]
                    if (length - k) % step == 0:
                        j = (length - k) // step
                        candidates.append(((pi, ri, j), prefactor * self._contraction[1] ** j))
        words = list(combinations(range(len(self.context.odd)), length))
        word_index = {w: i for i, w in enumerate(words)}
        if self._contraction is not None and self._contraction[2] == 2 \
                and not any(key[2] == 0 for key, _ in candidates):
            # primitive words of a length no piece stores are zero
            for vector in self._primitive_words(length, words):
                candidates.append((None, Element(self.context, {
                    Monomial((0,) * len(self.context.even), w): _frac(v)
                    for w, v in zip(words, vector) if v
                })))
        table: Dict[Tuple[int, ...], Optional[List]] = {}
        if not candidates:
            table = {w: None for w in words}
        else:
            C = Matrix.zeros(len(words), len(candidates))
            for col, (_, element) in enumerate(candidates):
                for m, c in element.terms().items():
                    C[word_index[m.word], col] = _sym(c)
            if C.rank() != len(candidates):
                raise PresentationError(f"Prefactor candidates of odd length {length} in {p.name} are dependent")
            _, pivot_rows = C.T.rref()
            sub_inverse = C.extract(list(pivot_rows), list(range(len(candidates)))).inv()
            for w in words:
                target = Matrix.zeros(len(words), 1)
                target[word_index[w], 0] = 1
                solution = sub_inverse * target.extract(list(pivot_rows), [0])
                if C * solution != target:
                    table[w] = None
                    continue
                table[w] = [(candidates[i][0], _frac(solution[i, 0]))
                            for i in range(len(candidates))
                            if solution[i, 0] != 0 and candidates[i][0] is not None]
        self._decompositions[length] = table
        logger.debug(f"{p.name}: odd length {length} has {len(candidates)} candidates for {len(words)} words")
        return table

    def _primitive_words(self, length: int, words: List[Tuple[int, ...]]) -> List[Matrix]:
        """Kernel of the contraction dual to multiplication by the defined expression."""
        if length < 2:
            return [Matrix.eye(len(words)).col(i) for i in range(len(words))]
        pairs = [(m.word, c) for m, c in self._contraction[1].terms().items()]
        shorter = list(combinations(range(len(self.context.odd)), length - 2))
        shorter_index = {w: i for i, w in enumerate(shorter)}
        L = Matrix.zeros(len(shorter), len(words))
        for col, w in enumerate(words):
            for (a, b), c in pairs:
                if a not in w or b not in w:
                    continue
                pa, pb = w.index(a), w.index(b)
                sign = -1 if (pa + pb - 1) % 2 else 1
                rest = tuple(i for i in w if i not in (a, b))
                L[shorter_index[rest], col] += sign * _sym(c)
        return L.nullspace()

    # --- truncation ---
    def _truncate(self, x: Element) -> Element:
        t = self.presentation.truncation
        if t is None:
            return x
        indices = [self.context.even_index(n) for n in t.generators]

        def keep(m: Monomial, c: Fraction) -> Fraction:
            weight = m.odd_length + 2 * sum(m.exponents[i] for i in indices)
            return c if weight <= t.bound else Fraction(0)
        return x.map_terms(keep)

    # --- public API ---
    def _check(self, x: Element):
        if x.context != self.context:
            raise ContextMismatchError(f"Element of {x.context} given to reduction over {self.context}")

    def coordinates(self, x: Element) -> Dict[BasisKey, Fraction]:
        """
        Canonical coordinates of the normal form.

        Raises:
            ContextMismatchError: x belongs to another context.
            NotDeterminedError: an odd word lies outside the span of the stored pieces.
        """
        self._check(x)
        coords: Dict[BasisKey, Fraction] = {}

        def add(key: BasisKey, vector: List[Fraction]):
            for i, v in enumerate(vector):
                if v:
                    k = key._replace(index=i)
                    coords[k] = coords.get(k, Fraction(0)) + v

        if self.split == SPLIT_PLAIN:
            x = self._truncate(x)
            for word, poly in x.by_word().items():
                add(BasisKey('', 0, 0, word), self._quotients[0].reduce(poly))
            return self._truncate_coordinates(coords)

        if self.split == SPLIT_PRODUCT:
            grouped = x.by_word()
            if any(word for word in grouped):
                raise NotDeterminedError(f"{self.presentation.name} has no image for odd terms of {x}")
            poly = grouped.get((), {})
            vector: List[Fraction] = []
            for q in self._quotients:
                vector.extend(q.reduce(poly))
            values = [sum((row[j] * vector[j] for j in range(len(vector)) if vector[j]), Fraction(0))
                      for row in self._product_inverse]
            add(BasisKey('', 0, 0), values)
            return {k: v for k, v in coords.items() if v}

        accumulated: Dict[Tuple[int, int], PolyDict] = {}
        for word, poly in x.by_word().items():
            table = self._decomposition(len(word))
            parts = table.get(word)
            if parts is None:
                raise NotDeterminedError(
                    f"Odd word of length {len(word)} in {x} is outside the span of the pieces of "
                    f"{self.presentation.name}")
            for (pi, ri, j), a in parts:
                target = accumulated.setdefault((pi, ri), {})
                for exps, c in poly.items():
                    if j:
                        gi = self._contraction[0]
                        exps = exps[:gi] + (exps[gi] + j,) + exps[gi + 1:]
                    target[exps] = target.get(exps, Fraction(0)) + a * c
        for (pi, ri), poly in sorted(accumulated.items()):
            add(BasisKey(self.presentation.pieces[pi].label, ri, 0), self._quotients[pi].reduce(poly))
        return {k: v for k, v in coords.items() if v}

    def _truncate_coordinates(self, coords: Dict[BasisKey, Fraction]) -> Dict[BasisKey, Fraction]:
        if self.presentation.truncation is None:
            return {k: v for k, v in coords.items() if v}
        kept = {}
        for key, value in coords.items():
            if value and not self._truncate(self.basis_element(key)).is_zero:
                kept[key] = value
        return kept

    def basis_element(self, key: BasisKey) -> Element:
        if self.split == SPLIT_PLAIN:
            word = Element.from_monomial(self.context, Monomial((0,) * len(self.context.even), key.word))
            return self._quotients[0].basis[key.index] * word
        if self.split == SPLIT_PRODUCT:
            return self.presentation.basis[key.index]
        pi = self._piece_index(key.piece)
        prefactor = self.presentation.pieces[pi].prefactors[key.prefactor]
        return prefactor * self._quotients[pi].basis[key.index]

    def key_parts(self, key: BasisKey) -> Tuple[Element, Element]:
        """(odd prefactor, even basis element) of a module-split basis key."""
        if self.split != SPLIT_MODULE:
            raise PresentationError(f"{self.presentation.name} is not a module split")
        pi = self._piece_index(key.piece)
        return self.presentation.pieces[pi].prefactors[key.prefactor], self._quotients[pi].basis[key.index]

    def _piece_index(self, label: str) -> int:
        for i, piece in enumerate(self.presentation.pieces):
            if piece.label == label:
                return i
        raise KeyError(label)

    def normal_form(self, x: Element) -> Element:
        """The unique canonical representative of x modulo the presentation."""
        result = self.context.zero()
        for key, value in self.coordinates(x).items():
            result = result + self.basis_element(key).scale(value)
        return self._truncate(result)

    def basis(self) -> List[Tuple[BasisKey, Element]]:
        """Canonical basis; plain presentations list only the even quotient."""
        if self.split == SPLIT_PLAIN:
            keys = [BasisKey('', 0, i) for i in range(self._quotients[0].dimension)]
        elif self.split == SPLIT_PRODUCT:
            keys = [BasisKey('', 0, i) for i in range(len(self.presentation.basis))]
        else:
            keys = [
                BasisKey(piece.label, ri, i)
                for pi, piece in enumerate(self.presentation.pieces)
                for ri in range(len(piece.prefactors))
                for i in range(self._quotients[pi].dimension)
            ]
        return [(k, self.basis_element(k)) for k in keys]

    @property
    def dimension(self) -> int:
        if self.split == SPLIT_PLAIN:
            return self._quotients[0].dimension
        if self.split == SPLIT_PRODUCT:
            return len(self.presentation.basis)
        return sum(q.dimension * len(piece.prefactors)
                   for q, piece in zip(self._quotients, self.presentation.pieces))

    def piece_dimensions(self) -> Dict[str, int]:
        labels = [piece.label for piece in self.presentation.pieces] or [self.presentation.name]
        return {label: q.dimension for label, q in zip(labels, self._quotients)}


def build_reduction(presentation: Presentation) -> ReductionEngine:
    return ReductionEngine(presentation)


def normal_form(engine: ReductionEngine, x: Element) -> Element:
    return engine.normal_form(x)


# --- brute-force oracle ---
def _monomials_up_to(weights: Sequence[int], bound: int) -> List[Tuple[int, ...]]:
    ranges = [range(bound // w + 1) for w in weights]
    return [e for e in cartesian(*ranges) if sum(w * x for w, x in zip(weights, e)) <= bound]


def graded_coordinates(context: Context, relations: Sequence[Element], basis: Sequence[Element],
                       target: Element, max_weight: int) -> List[Fraction]:
    """
    Coordinates of an even element in a declared basis by plain linear algebra.

    The ideal is replaced by the span of {m * r : weight(m) + top weight(r) <= max_weight};
    this agrees with the Groebner normal form when the top-weight parts of the
    relations generate the associated graded ideal.

    Raises:
        NotDeterminedError: target is not in the span of the basis and the slice.
    """
    weights = [g.degree for g in context.even]

    def weight(e):
        return sum(w * x for w, x in zip(weights, e))

    monomials = _monomials_up_to(weights, max_weight)
    index = {m: i for i, m in enumerate(monomials)}
    columns: List[PolyDict] = []
    for r in relations:
        poly = _even_poly(r)
        top = max(weight(e) for e in poly)
        for m in monomials:
            if weight(m) + top <= max_weight:
                columns.append({tuple(a + b for a, b in zip(e, m)): c for e, c in poly.items()})
    n_relations = len(columns)
    usable = [i for i, b in enumerate(basis) if max(weight(e) for e in _even_poly(b)) <= max_weight]
    columns.extend(_even_poly(basis[i]) for i in usable)
    target_poly = _even_poly(target)
    if any(weight(e) > max_weight for e in target_poly):
        raise NotDeterminedError(f"{target} exceeds weight {max_weight}")
    columns.append(target_poly)

    rows = [[QQ(0)] * len(columns) for _ in monomials]
    for j, col in enumerate(columns):
        for e, c in col.items():
            rows[index[e]][j] = QQ(c.numerator, c.denominator)
    rref, pivots = DomainMatrix(rows, (len(monomials), len(columns)), QQ).rref()
    if len(columns) - 1 in pivots:
        raise NotDeterminedError(f"{target} is not reducible within weight {max_weight}")
    entries = rref.to_list()
    result = [Fraction(0)] * len(basis)
    for row, col in enumerate(pivots):
        if n_relations <= col < len(columns) - 1:
            result[usable[col - n_relations]] = to_fraction(entries[row][-1])
    return result
