# qh_moduli/degree_one.py
"""
Degree-one Gromov-Witten invariants of the genus 3 moduli space, computed on
the projective bundle N over the Jacobian that carries the lines.

H*(N) is generated over H*(J) by h with h^3 + c1 h^2 + c2 h + c3 = 0,
c_i = (4^i / i!) omega^i, where omega = phi1 phi4 + phi2 phi5 + phi3 phi6.
"""
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict

from . import config
from .algebra import Context, Element, GeneratorSpec, Monomial, PARITY_EVEN, PARITY_ODD, apply_homomorphism
from .evaluation import evaluator
from .exceptions import ContextMismatchError
from .models import Presentation, Truncation
from .parser import format_element, parse
from .reduction import ReductionEngine

logger = config.setup_logger(__name__, config.ENGINE_LOG_LEVEL, config.ENGINE_LOG_FILE, console=False)

JACOBIAN_DIMENSION = 3
# Real dimension of the Jacobian; classes of J above it vanish.
JACOBIAN_TOP_DEGREE = 2 * JACOBIAN_DIMENSION
# Exponent of h that the fibre integration needs before the Segre series takes over.
FIBRE_EXPONENT = 5
# Degree of a triple product that pushes down to a top class of J.
TRIPLE_DEGREE = 16


class NRing:
    """The cohomology of N with its restriction from A(Sigma) and the Jacobian pairing."""

    def __init__(self):
        gens = [GeneratorSpec('omega', 2, PARITY_EVEN), GeneratorSpec('h', 2, PARITY_EVEN)]
        gens += [GeneratorSpec(f"phi{i}", 1, PARITY_ODD) for i in range(1, 2 * JACOBIAN_DIMENSION + 1)]
        self.context = Context(gens)
        omega = self.context.generator('omega')
        h = self.context.generator('h')
        chern = [Fraction(4 ** i, factorial(i)) * omega ** i for i in range(4)]
        cubic = h ** 3 + chern[1] * h ** 2 + chern[2] * h + chern[3]
        self.presentation = Presentation(
            name='N-bundle',
            context=self.context,
            relations=(cubic, omega ** (JACOBIAN_DIMENSION + 1)),
            truncation=Truncation(('omega',), JACOBIAN_TOP_DEGREE),
        )
        self.engine = ReductionEngine(self.presentation)
        phi = [self.context.generator(f"phi{i}") for i in range(1, 2 * JACOBIAN_DIMENSION + 1)]
        n = JACOBIAN_DIMENSION
        self.omega_form = sum((phi[i] * phi[i + n] for i in range(n)), self.context.zero())
        orientation = self.context.one()
        for i in range(n):
            orientation = orientation * phi[i] * phi[i + n]
        self._top = Monomial((0, 0), tuple(range(2 * n)))
        # phi1 phi4 phi2 phi5 phi3 phi6 is the positive class.
        self._orientation_sign = orientation.coefficient(self._top)
        self._omega_index = self.context.even_index('omega')
        self._h_index = self.context.even_index('h')

    def reduce(self, x: Element) -> Element:
        return self.engine.normal_form(x)

    def restrict(self, x: Element) -> Element:
        """
        Pullback of a class of A(Sigma) to N: alpha -> 4 omega + h, beta -> h^2,
        gamma -> -2 omega h^2, psi_i -> -h phi_i; reduced in H*(N).
        """
        source = x.context
        if len(source.odd) != 2 * JACOBIAN_DIMENSION:
            raise ContextMismatchError(f"Restriction to N needs the genus 3 context, got {source}")
        omega = self.context.generator('omega')
        h = self.context.generator('h')
        images = {
            'alpha': 4 * omega + h,
            'beta': h ** 2,
            'gamma': -2 * omega * h ** 2,
        }
        for i, gen in enumerate(source.odd):
            images[gen.name] = -(h * self.context.generator(f"phi{i + 1}"))
        return self.reduce(apply_homomorphism(x, self.context, images))

    def pair_j(self, x: Element) -> Fraction:
        """
        Integral over J of a class written in omega and the phi's; omega is
        expanded into phi's and phi1 phi4 phi2 phi5 phi3 phi6 integrates to 1.
        Terms containing h or of the wrong degree are ignored.
        """
        total = Fraction(0)
        ignored = []
        for m, c in x.terms().items():
            a = m.exponents[self._omega_index]
            if m.exponents[self._h_index] or 2 * a + m.odd_length != JACOBIAN_TOP_DEGREE:
                ignored.append(m)
                continue
            word = Element.from_monomial(self.context, Monomial((0, 0), m.word), c)
            total += (word * self.omega_form ** a).coefficient(self._top)
        if ignored:
            logger.warning(f"pair_j ignored {len(ignored)} non-top terms of {format_element(x)}")
        return total / self._orientation_sign

    def psi_degree1(self, z1: Element, z2: Element, z3: Element) -> Fraction:
        """
        Three-point invariant on N: the product is pushed down to J through the
        Segre classes, h^b -> (-8 omega)^(b-5) / (b-5)! for b >= 5.
        """
        reduced = [self.reduce(z) for z in (z1, z2, z3)]
        total = Fraction(0)
        for m1, c1 in reduced[0].terms().items():
            for m2, c2 in reduced[1].terms().items():
                for m3, c3 in reduced[2].terms().items():
                    prod = (Element.from_monomial(self.context, m1, c1)
                            * Element.from_monomial(self.context, m2, c2)
                            * Element.from_monomial(self.context, m3, c3))
                    for m, c in prod.terms().items():
                        total += self._push_down(m, c)
        return total

    def _push_down(self, m: Monomial, c: Fraction) -> Fraction:
        a = m.exponents[self._omega_index]
        b = m.exponents[self._h_index]
        if b < FIBRE_EXPONENT or self.context.monomial_degree(m) != TRIPLE_DEGREE:
            return Fraction(0)
        shift = b - FIBRE_EXPONENT
        factor = Fraction((-8) ** shift, factorial(shift))
        exps = [0, 0]
        exps[self._omega_index] = a + shift
        return self.pair_j(Element.from_monomial(self.context, Monomial(tuple(exps), m.word), c * factor))


@lru_cache(maxsize=1)
def n_ring() -> NRing:
    return NRing()


def restrict_to_n(x: Element) -> Element:
    return n_ring().restrict(x)


def pair_j(x: Element) -> Fraction:
    return n_ring().pair_j(x)


def psi_n_degree1(z1: Element, z2: Element, z3: Element) -> Fraction:
    return n_ring().psi_degree1(z1, z2, z3)


def gw_degree1(x: Element, y: Element, z: Element) -> Fraction:
    """Degree-one invariant of three classes of the genus 3 moduli space."""
    ring = n_ring()
    return ring.psi_degree1(ring.restrict(x), ring.restrict(y), ring.restrict(z))


def restriction_table() -> Dict[str, Element]:
    """Restrictions of the classical generators and the products used by the ansatz."""
    ctx = evaluator(3).context
    names = ["alpha", "beta", "gamma", "alpha^2", "alpha*beta", "beta^2", "alpha*gamma",
             "beta*gamma", "gamma^2", "psi1", "psi1*alpha", "psi1*beta", "psi1*gamma"]
    return {name: restrict_to_n(parse(name, ctx)) for name in names}

