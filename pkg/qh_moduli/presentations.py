# qh_moduli/presentations.py
"""
Built-in datasets: ring presentations, invariant bases, fixtures, the
isomorphism ansatz and the constants stated alongside it.

Built-in presentations are kept in the presentation file format and read with
the same parser used for user files.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from . import config
from .algebra import Element
from .exceptions import PresentationError, QHModuliError, UnsupportedGenusError
from .models import GenusData, Presentation
from .parser import PresentationFile, parse, read_presentation, write_presentation
from .reduction import ReductionEngine

logger = config.setup_logger(__name__, config.ENGINE_LOG_LEVEL, config.ENGINE_LOG_FILE, console=False)


def _generator_lines(genus: int) -> str:
    lines = [
        "generator alpha degree=2 parity=even",
        "generator beta degree=4 parity=even",
        "generator gamma degree=6 parity=even",
    ]
    lines += [f"generator psi{i} degree=3 parity=odd" for i in range(1, 2 * genus + 1)]
    pairs = " - ".join(f"2*psi{i}*psi{i + genus}" for i in range(1, genus + 1))
    lines.append(f"define gamma = -{pairs}")
    return "\n".join(lines)


def _lambda20_prefactors() -> str:
    items = [f"psi{i}*psi{j}" for i in range(1, 7) for j in range(i + 1, 7) if j != i + 3]
    items += ["psi1*psi4 - psi2*psi5", "psi1*psi4 - psi3*psi6"]
    return ", ".join(items)


_INVARIANT_BASIS_G3 = "1, alpha, beta, gamma, alpha^2, alpha*beta, alpha*gamma, beta^2, beta*gamma, gamma^2"
_H3_PREFACTORS_G3 = ", ".join(f"psi{i}" for i in range(1, 7))

CLASSICAL_G3 = f"""
# Cohomology ring of the moduli space, genus 3
genus 3
kind classical
name classical-g3
{_generator_lines(3)}
piece trivial prefactors=1
relation alpha^3 + 5*alpha*beta + 4*gamma
relation alpha^2*beta + beta^2 + 4/3*gamma*alpha
relation gamma*alpha^2 + gamma*beta
basis {_INVARIANT_BASIS_G3}
piece H3 prefactors={_H3_PREFACTORS_G3}
relation alpha^2 + beta
relation alpha*beta + gamma
relation gamma*alpha
basis 1, alpha, beta, gamma
piece L20 prefactors={_lambda20_prefactors()}
relation alpha
relation beta
relation gamma
basis 1
"""

QUANTUM_G3 = f"""
# Quantum cohomology ring of the moduli space, genus 3
genus 3
kind quantum
name quantum-g3
{_generator_lines(3)}
piece trivial prefactors=1
relation alpha^3 + 5*alpha*beta + 4*gamma - 24*alpha
relation alpha^2*beta + beta^2 + 4/3*gamma*alpha + 8*alpha^2 + 16*beta + 64
relation gamma*alpha^2 + gamma*beta + 8*gamma
basis {_INVARIANT_BASIS_G3}
piece H3 prefactors={_H3_PREFACTORS_G3}
relation alpha^2 + beta + 8
relation alpha*beta + gamma - 8*alpha
relation gamma*alpha
basis 1, alpha, beta, gamma
piece L20 prefactors={_lambda20_prefactors()}
relation alpha
relation beta + 8
relation gamma
basis 1
"""

FLOER_G2 = f"""
# Invariant part of the instanton Floer homology of the product with a circle, genus 2
genus 2
kind floer
name floer-g2
{_generator_lines(2)}
basis 1, alpha, beta, gamma
piece R-1
relation alpha - 4
relation beta + 8
relation gamma
piece R0
relation alpha^2
relation beta - 8
relation gamma + 16*alpha
piece R1
relation alpha + 4
relation beta + 8
relation gamma
"""

_BUILTIN_TEXT = {
    (2, 'floer'): FLOER_G2,
    (3, 'classical'): CLASSICAL_G3,
    (3, 'quantum'): QUANTUM_G3,
}

# Top pairings on the classical ring (word -> value), used only as test oracles.
FIXTURES_G3 = (
    ("alpha^6", 224),
    ("alpha^4*beta", -64),
    ("alpha^2*beta^2", 32),
    ("beta^3", 0),
    ("alpha^3*gamma", 24),
    ("alpha*beta*gamma", -24),
    ("gamma^2", 24),
    ("psi1*psi4*alpha^3", -4),
    ("psi1*psi4*alpha*beta", 4),
    ("psi1*psi4*gamma", -4),
)

# --- Isomorphism ansatz (genus 3) ---
# Correction terms (unknown, classical class) keyed by the quantum word of the
# invariant piece; the principal term of every line is the cup product of the word.
INVARIANT_CORRECTIONS: Dict[str, Tuple[Tuple[str, str], ...]] = {
    "alpha^2": (("A1", "1"),),
    "alpha*beta": (("A2", "alpha"),),
    "beta^2": (("A3", "beta"), ("A4", "alpha^2"), ("B1", "1")),
    "alpha*gamma": (("A5", "beta"), ("A6", "alpha^2"), ("B2", "1")),
    "beta*gamma": (("A7", "gamma"), ("A8", "alpha*beta"), ("B3", "alpha")),
    "gamma^2": (("A9", "alpha*gamma"), ("A10", "beta^2"), ("B4", "alpha^2"), ("B5", "beta"), ("C", "1")),
}
# H3 lines: correction classes are multiplied by the prefactor psi_i.
H3_CORRECTIONS: Dict[str, Tuple[Tuple[str, str], ...]] = {
    "beta": (("N1", "1"),),
    "gamma": (("N2", "alpha"),),
}
UNKNOWN_ORDER = ("A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8", "A9", "A10",
                 "N1", "N2", "B1", "B2", "B3", "B4", "B5", "C")

# Constants as stated in the source derivation; compared against, never used.
STATED_CONSTANTS: Dict[str, Fraction] = {
    "A1": Fraction(0), "A2": Fraction(4), "A3": Fraction(-12), "A4": Fraction(-8),
    "A5": Fraction(-3), "A6": Fraction(-3), "A7": Fraction(-20), "A8": Fraction(-12),
    "A9": Fraction(8), "A10": Fraction(-6),
    "B1": Fraction(0), "B2": Fraction(-1), "B3": Fraction(24), "B4": Fraction(-24),
    "B5": Fraction(-1), "C": Fraction(-8),
    "N1": Fraction(-4), "N2": Fraction(-4),
}

# The isomorphism as displayed in the final statement (quantum word -> classical class).
# psi lines are given for i = 1, the display holds them for every i.
STATED_LINES: Tuple[Tuple[str, str], ...] = (
    ("alpha^2", "alpha^2"),
    ("alpha*beta", "alpha*beta + 4*alpha"),
    ("beta^2", "beta^2 + 16*beta - 8*alpha^2"),
    ("alpha*gamma", "alpha*gamma - 3*beta - 3*alpha^2 - 1"),
    ("beta*gamma", "beta*gamma - 20*gamma - 12*alpha*beta + 24*alpha"),
    ("gamma^2", "gamma^2 + 8*gamma*alpha - 6*beta^2 - 24*alpha^2 - beta - 8"),
    ("psi1*alpha", "psi1*alpha"),
    ("psi1*beta", "psi1*beta - 4*psi1"),
    ("psi1*gamma", "psi1*gamma - 4*psi1*alpha"),
    ("psi1*psi4", "psi1*psi4"),
)


@dataclass(frozen=True)
class AnsatzTerm:
    unknown: str
    element: Element


@lru_cache(maxsize=None)
def _builtin_file(genus: int, kind: str) -> PresentationFile:
    if (genus, kind) not in _BUILTIN_TEXT:
        raise UnsupportedGenusError(
            f"No built-in {kind} presentation for genus {genus}; supply a presentation file")
    return read_presentation(_BUILTIN_TEXT[(genus, kind)], source=f"builtin:{kind}-g{genus}")


def builtin(genus: int, kind: str) -> Presentation:
    """
    Returns a built-in presentation.

    Raises:
        UnsupportedGenusError: (genus, kind) is not one of the built-ins.
    """
    return _builtin_file(genus, kind).presentation


def _genus_data_from(genus: int, presentations: Dict[str, Presentation],
                     fixtures: Tuple[Tuple[Element, Fraction], ...] = ()) -> GenusData:
    first = next(iter(presentations.values()))
    gamma_expression = first.definition('gamma')
    if gamma_expression is None:
        raise PresentationError(f"Presentation {first.name} must define gamma by its odd expression")
    return GenusData(
        genus=genus,
        context=first.context,
        gamma_name='gamma',
        gamma_expression=gamma_expression,
        fixtures=fixtures,
        **presentations,
    )


@lru_cache(maxsize=None)
def genus_data(genus: int) -> GenusData:
    """All built-in data for a genus."""
    kinds = {kind: builtin(g, kind) for g, kind in sorted(config.SUPPORTED_BUILTINS) if g == genus}
    if not kinds:
        raise UnsupportedGenusError(f"Genus {genus} has no built-in data; supply a presentation file")
    return _genus_data_from(genus, kinds, fixtures(genus) if genus == 3 else ())


def fixtures(genus: int = 3) -> Tuple[Tuple[Element, Fraction], ...]:
    """The top-pairing fixtures as (word, value)."""
    if genus != 3:
        raise UnsupportedGenusError(f"Fixtures are only known for genus 3, not {genus}")
    context = builtin(3, 'classical').context
    return tuple((parse(text, context), Fraction(value)) for text, value in FIXTURES_G3)


def load_file(path: Union[str, Path]) -> GenusData:
    """
    Loads a presentation file into a GenusData holding that one presentation.

    The file must carry ``genus`` and ``kind`` lines and define gamma; the
    presentation is reduced once so that an unrealizable basis fails here.

    Raises:
        PresentationError: unreadable file, missing header or invalid presentation.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise PresentationError(f"Cannot read presentation file {path}: {e}") from e
    parsed = read_presentation(text, source=str(path))
    if parsed.genus is None or parsed.kind not in config.RING_KINDS:
        raise PresentationError(f"{path}: needs a 'genus <g>' line and 'kind <classical|quantum|floer>'")
    try:
        ReductionEngine(parsed.presentation)
    except QHModuliError as e:
        raise PresentationError(f"{path}: presentation {parsed.presentation.name} is not usable: {e}") from e
    logger.info(f"Loaded {parsed.kind} presentation for genus {parsed.genus} from {path}")
    return _genus_data_from(parsed.genus, {parsed.kind: parsed.presentation})


def export_presentation(genus: int, kind: str, data: Optional[GenusData] = None) -> str:
    """Writes a presentation (built-in unless data is given) in the file format."""
    presentation = data.presentation(kind) if data is not None else builtin(genus, kind)
    return write_presentation(presentation, genus=genus, kind=kind)


def ansatz_corrections(piece: str, basis_text: str, prefactor: Element) -> List[AnsatzTerm]:
    """Correction terms of the ansatz line whose quantum word is prefactor * basis element."""
    context = prefactor.context
    if piece == 'trivial':
        table = INVARIANT_CORRECTIONS
    elif piece == 'H3':
        table = H3_CORRECTIONS
    else:
        return []
    return [AnsatzTerm(unknown, prefactor * parse(text, context)) for unknown, text in table.get(basis_text, ())]


def stated_lines(context) -> List[Tuple[Element, Element]]:
    return [(parse(word, context), parse(value, context)) for word, value in STATED_LINES]
