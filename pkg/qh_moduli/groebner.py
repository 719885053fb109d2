# qh_moduli/groebner.py
"""
Commutative Groebner engine for the even part of a presentation.

Polynomials are passed in and out as ``{exponent tuple: Fraction}`` dicts so
callers never touch sympy objects.
"""
from collections import deque
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from sympy import QQ
from sympy.polys.groebnertools import groebner
from sympy.polys.orderings import MonomialOrder
from sympy.polys.rings import ring

from . import config
from .exceptions import BasisError, InconsistentPresentationError, PresentationError

logger = config.setup_logger(__name__, config.ENGINE_LOG_LEVEL, config.ENGINE_LOG_FILE, console=False)

Exponents = Tuple[int, ...]
PolyDict = Dict[Exponents, Fraction]


class WeightedOrder(MonomialOrder):
    """
    Weighted degree order; ties are broken by comparing exponents from the
    last declared generator to the first.
    """

    alias = 'wdeglex'
    is_global = True

    def __init__(self, weights: Sequence[int]):
        weights = tuple(int(w) for w in weights)
        if any(w <= 0 for w in weights):
            raise PresentationError(f"Monomial order weights must be positive: {weights}")
        self.weights = weights

    def __call__(self, monomial):
        return (sum(w * e for w, e in zip(self.weights, monomial)), tuple(reversed(monomial)))

    def __repr__(self):
        return f"WeightedOrder({self.weights})"

    def __eq__(self, other):
        return isinstance(other, WeightedOrder) and self.weights == other.weights

    def __hash__(self):
        return hash((self.__class__, self.weights))

    def weight(self, exponents: Exponents) -> int:
        return sum(w * e for w, e in zip(self.weights, exponents))


def to_fraction(c) -> Fraction:
    return Fraction(int(c.numerator), int(c.denominator))


def _to_qq(value: Fraction):
    return QQ(value.numerator, value.denominator)


def _divides(a: Exponents, b: Exponents) -> bool:
    return all(x <= y for x, y in zip(a, b))


class GroebnerEngine:
    """
    Reduced Groebner basis of an ideal of QQ[x_1..x_n] under a WeightedOrder,
    with the standard monomials of the (finite-dimensional) quotient.
    """

    def __init__(self, names: Sequence[str], weights: Sequence[int], relations: Sequence[PolyDict]):
        self.names = tuple(names)
        self.order = WeightedOrder(weights)
        self.nvars = len(self.names)
        nonzero = [r for r in relations if any(r.values())]
        if self.nvars == 0:
            self._ring = None
            if any(r.get((), 0) for r in nonzero):
                raise InconsistentPresentationError("The relations generate the unit ideal")
            self.basis = []
            self.leading: List[Exponents] = []
            self.standard_monomials: List[Exponents] = [()]
            return

        self._ring = ring(",".join(self.names), QQ, order=self.order)[0]
        polys = [self._from_dict(r) for r in nonzero]
        self.basis = groebner(polys, self._ring) if polys else []
        self.leading = [tuple(g.LM) for g in self.basis]
        if any(all(e == 0 for e in lm) for lm in self.leading):
            raise InconsistentPresentationError("The relations generate the unit ideal")
        logger.debug(f"Groebner basis over ({', '.join(self.names)}): {len(self.basis)} elements")
        self.standard_monomials = self._standard_monomials()
        logger.debug(f"Standard monomials: {len(self.standard_monomials)}")

    def _from_dict(self, poly: PolyDict):
        return self._ring.from_dict({tuple(m): _to_qq(c) for m, c in poly.items() if c})

    def _standard_monomials(self) -> List[Exponents]:
        for i in range(self.nvars):
            if not any(lm[i] > 0 and all(e == 0 for j, e in enumerate(lm) if j != i) for lm in self.leading):
                raise BasisError(
                    f"The quotient is infinite-dimensional: no pure power of {self.names[i]} is a leading monomial",
                    rank=0, expected=0)
        start: Exponents = (0,) * self.nvars
        seen = {start}
        queue = deque([start])
        while queue:
            m = queue.popleft()
            for i in range(self.nvars):
                nxt = m[:i] + (m[i] + 1,) + m[i + 1:]
                if nxt in seen or any(_divides(lm, nxt) for lm in self.leading):
                    continue
                seen.add(nxt)
                if len(seen) > config.MAX_STANDARD_MONOMIALS:
                    raise BasisError("Too many standard monomials", rank=len(seen),
                                     expected=config.MAX_STANDARD_MONOMIALS)
                queue.append(nxt)
        return sorted(seen, key=self.order)

    @property
    def dimension(self) -> int:
        return len(self.standard_monomials)

    def reduce(self, poly: PolyDict) -> PolyDict:
        """Normal form modulo the Groebner basis, as a dict over standard monomials."""
        if self._ring is None:
            value = sum(poly.values(), Fraction(0))
            return {(): value} if value else {}
        p = self._from_dict(poly)
        if self.basis:
            p = p.rem(self.basis)
        return {tuple(m): to_fraction(c) for m, c in p.terms()}
