# qh_moduli/degree_two.py
"""
The two degree-two invariants needed by the genus 3 isomorphism, computed on
the space R of conics through a point and its projective bundle P(E).
"""
from fractions import Fraction
from functools import lru_cache
from typing import Dict

from . import config
from .algebra import Context, Element, GeneratorSpec, Monomial, PARITY_EVEN
from .models import Presentation
from .parser import parse
from .reduction import ReductionEngine

logger = config.setup_logger(__name__, config.ENGINE_LOG_LEVEL, config.ENGINE_LOG_FILE, console=False)

# alpha evaluated on a line is 1, so on a conic class 2A it is 2.
ALPHA_ON_LINE = 1
CONIC_MULTIPLE = 2


class RRing:
    """
    H*(R) = QQ[f, h, k] / (f^2, h^2 - Lambda h, k^2 - c1 k + c2) with
    Lambda -> f, K -> 4f, c1 = Lambda + K - 2h, c2 = -2hK.
    """

    def __init__(self):
        self.context = Context([GeneratorSpec(n, 2, PARITY_EVEN) for n in ('f', 'h', 'k')])
        f, h, k = (self.context.generator(n) for n in ('f', 'h', 'k'))
        big_lambda, big_k = f, 4 * f
        c1 = big_lambda + big_k - 2 * h
        c2 = -2 * h * big_k
        self.presentation = Presentation(
            name='R-conics',
            context=self.context,
            relations=(f ** 2, h ** 2 - big_lambda * h, k ** 2 - c1 * k + c2),
            basis=tuple(parse(t, self.context) for t in ("1", "f", "h", "k", "f*h", "f*k", "h*k", "f*h*k")),
        )
        self.engine = ReductionEngine(self.presentation)
        self._top = Monomial((1, 1, 1))

        self.pe_context = Context([GeneratorSpec('fbar', 2, PARITY_EVEN), GeneratorSpec('h', 2, PARITY_EVEN)])
        fbar, hbar = self.pe_context.generator('fbar'), self.pe_context.generator('h')
        self.pe_presentation = Presentation(
            name='P(E)',
            context=self.pe_context,
            relations=(fbar ** 2, hbar ** 2 - fbar * hbar),
        )
        self.pe_engine = ReductionEngine(self.pe_presentation)
        self._pe_top = Monomial((1, 1))

    def reduce(self, x: Element) -> Element:
        return self.engine.normal_form(x)

    def classes(self) -> Dict[str, Element]:
        """alpha_R, beta_R, gamma_R, the restrictions of the generators to R."""
        f, h, k = (self.context.generator(n) for n in ('f', 'h', 'k'))
        return {
            'alpha': self.reduce(2 * f - 4 * h - 2 * k),
            'beta': self.reduce(-(8 * h + k) * f),
            'gamma': self.reduce(-6 * (2 * h + k) ** 2 * f),
        }

    def pair(self, x: Element) -> Fraction:
        """Integral over R, normalised by <f h k> = 1."""
        return self.reduce(x).coefficient(self._top)

    def slant(self, x: Element) -> Element:
        """Integration over the fibre of R -> P(E): the coefficient of k, with f -> fbar."""
        result = self.pe_context.zero()
        for m, c in self.reduce(x).terms().items():
            a, b, e = m.exponents
            if e != 1:
                continue
            result = result + Element.from_monomial(self.pe_context, Monomial((a, b)), c)
        return self.pe_engine.normal_form(result)

    def pair_pe(self, y: Element) -> Fraction:
        """Integral over P(E), normalised by <fbar h> = 1."""
        return self.pe_engine.normal_form(y).coefficient(self._pe_top)


@lru_cache(maxsize=1)
def r_ring() -> RRing:
    return RRing()


def psi2a_alpha_gamma_pt() -> Fraction:
    """Psi_2A(alpha, gamma, pt) = alpha[2A] <gamma_R, [R]>."""
    ring = r_ring()
    value = CONIC_MULTIPLE * ALPHA_ON_LINE * ring.pair(ring.classes()['gamma'])
    logger.debug(f"Psi_2A(alpha, gamma, pt) = {value}")
    return value


def psi2a_beta_beta_pt() -> Fraction:
    """Psi_2A(beta, beta, pt) = <(beta_R / P^1)^2, [P(E)]>."""
    ring = r_ring()
    slant = ring.slant(ring.classes()['beta'])
    value = ring.pair_pe(slant * slant)
    logger.debug(f"Psi_2A(beta, beta, pt) = {value}")
    return value
