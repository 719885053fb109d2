# qh_moduli/evaluation.py
"""
Evaluation of invariants through normal forms.

The odd generators enter every invariant through the projection onto the
Sp-invariant part: a word of length 2k is replaced by the multiple of
gamma^k with the same top pairing against powers of gamma.
"""
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Optional, Sequence, Tuple

from . import config
from .algebra import Context, Element, Monomial, apply_homomorphism, product
from .exceptions import NotDeterminedError, UnsupportedGenusError
from .models import EvalResult, GenusData, KIND_CLASSICAL, KIND_FLOER, KIND_QUANTUM
from .presentations import genus_data
from .reduction import ReductionEngine, build_reduction

logger = config.setup_logger(__name__, config.ENGINE_LOG_LEVEL, config.ENGINE_LOG_FILE, console=False)


class Evaluator:
    """Holds one GenusData and lazily built reduction engines for its rings."""

    def __init__(self, data: GenusData):
        self.data = data
        self.genus = data.genus
        self.context: Context = data.context
        self._engines: Dict[str, ReductionEngine] = {}
        self._gamma_powers = [self.context.one()]
        top_word = tuple(range(2 * self.genus))
        self._top = Monomial((0,) * len(self.context.even), top_word)
        self._top_value = self._gamma_def_power(self.genus).coefficient(self._top)
        if not self._top_value:
            raise NotDeterminedError("The odd expression of gamma has vanishing top power")

    def engine(self, kind: str) -> ReductionEngine:
        if kind not in self._engines:
            self._engines[kind] = build_reduction(self.data.presentation(kind))
        return self._engines[kind]

    def _gamma_def_power(self, k: int) -> Element:
        while len(self._gamma_powers) <= k:
            self._gamma_powers.append(self._gamma_powers[-1] * self.data.gamma_expression)
        return self._gamma_powers[k]

    # --- projection ---
    def project_invariant(self, x: Element) -> Element:
        """
        Projects onto the invariant subring: odd words of length 2k become
        c * gamma^k with c = <w * G^(g-k)> / <G^g>, G the odd expression of gamma.
        """
        g = self.genus
        gamma_index = self.context.even_index(self.data.gamma_name)
        terms: Dict[Monomial, Fraction] = {}
        for m, c in x.terms().items():
            k2 = m.odd_length
            if k2 % 2:
                continue
            k = k2 // 2
            if k == 0:
                factor = Fraction(1)
            else:
                word = Element.from_monomial(self.context, Monomial((0,) * len(m.exponents), m.word))
                factor = (word * self._gamma_def_power(g - k)).coefficient(self._top) / self._top_value
            if not factor:
                continue
            exps = list(m.exponents)
            exps[gamma_index] += k
            target = Monomial(tuple(exps))
            terms[target] = terms.get(target, Fraction(0)) + c * factor
        return Element(self.context, terms)

    # --- pairings ---
    def pairing_value(self, z: Element, kind: str) -> EvalResult:
        """
        Reads the gamma^(g-1) coefficient of the normal form and scales it by
        the top pairing 2^(g-1) g!; the Floer ring carries an extra minus sign.
        """
        if z.has_odd_terms:
            raise ValueError("pairing_value expects an invariant polynomial; project it first")
        if kind not in (KIND_QUANTUM, KIND_FLOER, KIND_CLASSICAL):
            raise ValueError(f"Unknown ring kind {kind}")
        nf = self.engine(kind).normal_form(z)
        coefficient = nf.coefficient(self.data.top_invariant_monomial())
        sign = -1 if kind == KIND_FLOER else 1
        value = sign * coefficient * self.data.pairing_normalization
        d = None
        degree = z.degree()
        if degree is not None and (degree - self.data.pairing_degree) % 4 == 0 \
                and degree >= self.data.pairing_degree:
            d = (degree - self.data.pairing_degree) // 4
        return EvalResult(value=value, coefficient=coefficient, normal_form=nf, d=d)

    def tilde_psi(self, word: Element) -> Fraction:
        """Multiple-point invariant of a generator word, read from the quantum ring."""
        if self.data.quantum is None:
            raise UnsupportedGenusError(f"No quantum presentation for genus {self.genus}")
        return self.pairing_value(self.project_invariant(word), KIND_QUANTUM).value

    def gw_multipoint(self, classes: Sequence[Element], d: int) -> Fraction:
        """
        Psi_dA of generator words; zero unless the degrees add up to 6g - 6 + 4d.

        Raises:
            ValueError: an inhomogeneous input class.
        """
        total = 0
        for x in classes:
            if x.is_zero:
                return Fraction(0)
            degree = x.degree()
            if degree is None:
                raise ValueError(f"Input class {x} is not homogeneous")
            total += degree
        if total != self.data.pairing_degree + 4 * d:
            return Fraction(0)
        return self.tilde_psi(product(classes, self.context))

    def classical_pairing(self, x: Element, y: Element) -> Fraction:
        """Top pairing of the cup product."""
        z = self.project_invariant(x * y)
        return self.pairing_value(z, KIND_CLASSICAL).value

    def top_pairing(self, x: Element) -> Fraction:
        return self.pairing_value(self.project_invariant(x), KIND_CLASSICAL).value

    # --- Donaldson invariants ---
    def donaldson(self, z: Element) -> Fraction:
        """
        Donaldson invariant of the product with the projective line, extended
        linearly over homogeneous components.
        """
        if self.data.quantum is not None:
            total = Fraction(0)
            for degree, part in z.homogeneous_components().items():
                shifted = degree - self.data.pairing_degree
                if shifted < 0 or shifted % 4:
                    continue
                d = shifted // 4
                sign = -1 if (self.genus * d + 1) % 2 else 1
                total += sign * self.tilde_psi(part)
            return total
        if self.data.floer is not None:
            return self.pairing_value(self.project_invariant(z), KIND_FLOER).value
        raise UnsupportedGenusError(f"Genus {self.genus} has neither a quantum nor a Floer presentation")


@lru_cache(maxsize=None)
def evaluator(genus: int = config.DEFAULT_GENUS) -> Evaluator:
    """Shared evaluator over the built-in data of a genus."""
    return Evaluator(genus_data(genus))


def embed_lower_genus(z: Element, lower: GenusData, upper: GenusData) -> Element:
    """Maps psi_i -> psi_i and psi_(h+i) -> psi_(g+i) for genus h = g - 1; even generators keep their names."""
    h, g = lower.genus, upper.genus
    images = {gen.name: upper.context.generator(gen.name) for gen in lower.context.even}
    for i in range(h):
        images[lower.context.odd[i].name] = upper.context.generator(upper.context.odd[i].name)
        images[lower.context.odd[h + i].name] = upper.context.generator(upper.context.odd[g + i].name)
    return apply_homomorphism(z, upper.context, images)


def project_invariant(x: Element, genus: int = config.DEFAULT_GENUS) -> Element:
    return evaluator(genus).project_invariant(x)


def pairing_value(z: Element, genus: int, ring: str) -> EvalResult:
    return evaluator(genus).pairing_value(z, ring)


def tilde_psi(word: Element, genus: int = config.DEFAULT_GENUS) -> Fraction:
    return evaluator(genus).tilde_psi(word)


def gw_multipoint(classes: Sequence[Element], d: int, genus: int = config.DEFAULT_GENUS) -> Fraction:
    return evaluator(genus).gw_multipoint(classes, d)


def classical_pairing(x: Element, y: Element, genus: int = config.DEFAULT_GENUS) -> Fraction:
    return evaluator(genus).classical_pairing(x, y)


def donaldson(z: Element, genus: int) -> Fraction:
    return evaluator(genus).donaldson(z)


def genus_step_check(z: Element, genus: int, lower: Optional[Evaluator] = None,
                     upper: Optional[Evaluator] = None) -> Tuple[Fraction, Fraction]:
    """
    Both sides of D_g(gamma * z) = 2g D_(g-1)(z) for z in the genus g - 1 context.

    z is projected to its invariant part in genus g - 1 before embedding; the
    relation is a statement about invariant classes.
    """
    lower = lower or evaluator(genus - 1)
    upper = upper or evaluator(genus)
    invariant = lower.project_invariant(z)
    lifted = embed_lower_genus(invariant, lower.data, upper.data)
    left = upper.donaldson(upper.data.gamma * lifted)
    right = 2 * genus * lower.donaldson(z)
    logger.debug(f"Genus step for {z}: {left} and {right}")
    return left, right
