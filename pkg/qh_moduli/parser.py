# qh_moduli/parser.py
"""
Text forms: the expression grammar, canonical formatting and the
line-oriented presentation file format.

Expression grammar::

    expr    := term (('+' | '-') term)*
    term    := signed ('*' signed)*
    signed  := ('+' | '-')* power
    power   := atom ('^' integer)?
    atom    := rational | identifier | '(' expr ')'
    rational:= digits ('/' digits)?
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Tuple

import pyparsing as pp

from . import config
from .algebra import Context, Element, GeneratorSpec, Monomial, PARITY_EVEN
from .exceptions import ExpressionSyntaxError, PresentationError, QHModuliError, UnknownGeneratorError
from .models import PieceSpec, Presentation, Truncation

logger = config.setup_logger(__name__, config.ENGINE_LOG_LEVEL, config.ENGINE_LOG_FILE, console=False)


# --- Syntax tree ---
@dataclass(frozen=True)
class _Num:
    value: Fraction


@dataclass(frozen=True)
class _Gen:
    name: str
    loc: int


@dataclass(frozen=True)
class _Pow:
    base: object
    exponent: int


@dataclass(frozen=True)
class _Neg:
    operand: object


@dataclass(frozen=True)
class _Mul:
    factors: Tuple[object, ...]


@dataclass(frozen=True)
class _Sum:
    terms: Tuple[Tuple[int, object], ...]


def _signed_action(tokens):
    *signs, node = tokens
    return _Neg(node) if signs.count('-') % 2 else node


def _sum_action(tokens):
    items = list(tokens)
    terms = [(1, items[0])]
    for op, node in zip(items[1::2], items[2::2]):
        terms.append((-1 if op == '-' else 1, node))
    return terms[0][1] if len(terms) == 1 else _Sum(tuple(terms))


def _number_action(s, loc, tokens):
    _, _, denominator = tokens[0].partition("/")
    if denominator and not int(denominator):
        raise pp.ParseFatalException(s, loc, f"zero denominator in {tokens[0]}")
    return _Num(Fraction(tokens[0]))


@lru_cache(maxsize=1)
def _grammar() -> pp.ParserElement:
    number = pp.Regex(r"\d+(?:/\d+)?")
    number.set_parse_action(_number_action)
    identifier = pp.Word(pp.alphas, pp.alphanums + "_")
    identifier.set_parse_action(lambda s, loc, t: _Gen(t[0], loc))

    expr = pp.Forward()
    atom = number | identifier | (pp.Suppress("(") + expr + pp.Suppress(")"))
    power = atom + pp.Optional(pp.Suppress("^") + pp.Word(pp.nums))
    power.set_parse_action(lambda t: _Pow(t[0], int(t[1])) if len(t) == 2 else t[0])
    signed = pp.ZeroOrMore(pp.one_of("+ -")) + power
    signed.set_parse_action(_signed_action)
    term = signed + pp.ZeroOrMore(pp.Suppress("*") + signed)
    term.set_parse_action(lambda t: t[0] if len(t) == 1 else _Mul(tuple(t)))
    expr <<= term + pp.ZeroOrMore(pp.one_of("+ -") + term)
    expr.set_parse_action(_sum_action)
    return expr + pp.StringEnd()


def _evaluate(node, context: Context) -> Element:
    if isinstance(node, _Num):
        return context.constant(node.value)
    if isinstance(node, _Gen):
        if not context.has(node.name):
            raise UnknownGeneratorError(node.name, node.loc)
        return context.generator(node.name)
    if isinstance(node, _Pow):
        return _evaluate(node.base, context) ** node.exponent
    if isinstance(node, _Neg):
        return -_evaluate(node.operand, context)
    if isinstance(node, _Mul):
        result = context.one()
        for factor in node.factors:
            result = result * _evaluate(factor, context)
        return result
    if isinstance(node, _Sum):
        result = context.zero()
        for sign, term in node.terms:
            value = _evaluate(term, context)
            result = result + value if sign > 0 else result - value
        return result
    raise TypeError(f"Unexpected syntax node {node!r}")


def parse(text: str, context: Context) -> Element:
    """
    Parses an expression into an Element of the given context.

    Raises:
        ExpressionSyntaxError: malformed text (carries the failing position).
        UnknownGeneratorError: an identifier that is not a generator of the context.
    """
    try:
        tree = _grammar().parse_string(text, parse_all=True)[0]
    except pp.ParseBaseException as e:
        raise ExpressionSyntaxError(f"Cannot parse {text!r}: {e.msg}", e.loc) from e
    return _evaluate(tree, context)


# --- Formatting ---
def format_monomial(context: Context, monomial: Monomial) -> str:
    parts = []
    for e, gen in zip(monomial.exponents, context.even):
        if e == 1:
            parts.append(gen.name)
        elif e > 1:
            parts.append(f"{gen.name}^{e}")
    parts.extend(context.odd[i].name for i in monomial.word)
    return "*".join(parts)


def format_element(x: Element) -> str:
    """Canonical text; parse(format_element(x), x.context) == x."""
    pieces: List[str] = []
    for monomial, coeff in x:
        mono = format_monomial(x.context, monomial)
        magnitude = abs(coeff)
        if not mono:
            body = str(magnitude)
        elif magnitude == 1:
            body = mono
        else:
            body = f"{magnitude}*{mono}"
        if not pieces:
            pieces.append(f"-{body}" if coeff < 0 else body)
        else:
            pieces.append(f"- {body}" if coeff < 0 else f"+ {body}")
    return " ".join(pieces) if pieces else "0"


def format_scalar(value: Fraction) -> str:
    return str(Fraction(value))


# --- Presentation files ---
@dataclass(frozen=True)
class PresentationFile:
    """A parsed presentation file: header fields plus the presentation itself."""
    genus: Optional[int]
    kind: Optional[str]
    presentation: Presentation


def _split_list(text: str) -> List[str]:
    return [item.strip() for item in text.split(",") if item.strip()]


def _parse_generator(rest: str) -> GeneratorSpec:
    name, *options = rest.split()
    fields = {}
    for option in options:
        key, _, value = option.partition("=")
        fields[key] = value
    if 'degree' not in fields:
        raise PresentationError(f"Generator {name} needs degree=<n>")
    return GeneratorSpec(name, int(fields['degree']), fields.get('parity', PARITY_EVEN))


def read_presentation(text: str, source: str = "<string>") -> PresentationFile:
    """
    Reads the line-oriented presentation format.

    Lines are ``genus``, ``kind``, ``name``, ``generator``, ``relation``,
    ``basis``, ``define``, ``truncate`` and ``piece``; ``#`` starts a comment.
    Relations and basis lines after a ``piece`` line belong to that piece.

    Raises:
        PresentationError: for any malformed line (the message names the line).
    """
    genus = kind = None
    name = source
    generators: List[GeneratorSpec] = []
    context: Optional[Context] = None
    pending: List[Tuple[int, str, str]] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, _, rest = line.partition(" ")
        rest = rest.strip()
        try:
            if keyword == 'genus':
                genus = int(rest)
            elif keyword == 'kind':
                kind = rest
            elif keyword == 'name':
                name = rest
            elif keyword == 'generator':
                if pending:
                    raise PresentationError("generator lines must precede relations")
                generators.append(_parse_generator(rest))
            elif keyword in ('relation', 'basis', 'define', 'truncate', 'piece'):
                pending.append((lineno, keyword, rest))
            else:
                raise PresentationError(f"unknown keyword {keyword!r}")
        except (ValueError, QHModuliError) as e:
            raise PresentationError(f"{source}:{lineno}: {e}") from e

    try:
        context = Context(generators)
    except ValueError as e:
        raise PresentationError(f"{source}: {e}") from e

    relations: List[Element] = []
    basis: Optional[List[Element]] = None
    definitions: List[Tuple[str, Element]] = []
    truncation: Optional[Truncation] = None
    pieces: List[dict] = []

    for lineno, keyword, rest in pending:
        try:
            if keyword == 'relation':
                target = pieces[-1]['relations'] if pieces else relations
                target.append(parse(rest, context))
            elif keyword == 'basis':
                elements = [parse(item, context) for item in _split_list(rest)]
                if pieces:
                    pieces[-1]['basis'] = elements
                else:
                    basis = elements
            elif keyword == 'define':
                gen_name, _, expr = rest.partition("=")
                definitions.append((gen_name.strip(), parse(expr.strip(), context)))
            elif keyword == 'truncate':
                *names, bound = rest.replace(",", " ").split()
                truncation = Truncation(tuple(names), int(bound))
            elif keyword == 'piece':
                label, _, options = rest.partition(" ")
                prefactors: List[Element] = []
                options = options.strip()
                if options:
                    key, _, value = options.partition("=")
                    if key.strip() != 'prefactors':
                        raise PresentationError(f"unknown piece option {key!r}")
                    prefactors = [parse(item, context) for item in _split_list(value)]
                pieces.append({'label': label, 'prefactors': prefactors, 'relations': [], 'basis': None})
        except (ValueError, QHModuliError) as e:
            raise PresentationError(f"{source}:{lineno}: {e}") from e

    presentation = Presentation(
        name=name,
        context=context,
        relations=tuple(relations),
        pieces=tuple(
            PieceSpec(
                p['label'],
                tuple(p['prefactors']),
                tuple(p['relations']),
                tuple(p['basis']) if p['basis'] is not None else None,
            )
            for p in pieces
        ),
        basis=tuple(basis) if basis is not None else None,
        definitions=tuple(definitions),
        truncation=truncation,
    )
    logger.debug(f"Read presentation {name} from {source}: {len(generators)} generators, {len(pieces)} pieces")
    return PresentationFile(genus, kind, presentation)


def write_presentation(presentation: Presentation, genus: Optional[int] = None, kind: Optional[str] = None) -> str:
    """Writes a presentation in the format read_presentation accepts."""
    lines = [f"# {config.APP_NAME} presentation"]
    if genus is not None:
        lines.append(f"genus {genus}")
    if kind is not None:
        lines.append(f"kind {kind}")
    lines.append(f"name {presentation.name}")
    for gen in presentation.context.generators:
        lines.append(f"generator {gen.name} degree={gen.degree} parity={gen.parity}")
    if presentation.truncation is not None:
        t = presentation.truncation
        lines.append(f"truncate {','.join(t.generators)} {t.bound}")
    for gen_name, expr in presentation.definitions:
        lines.append(f"define {gen_name} = {format_element(expr)}")
    lines.extend(f"relation {format_element(r)}" for r in presentation.relations)
    if presentation.basis is not None:
        lines.append("basis " + ", ".join(format_element(b) for b in presentation.basis))
    for piece in presentation.pieces:
        header = f"piece {piece.label}"
        if piece.prefactors:
            header += " prefactors=" + ", ".join(format_element(p) for p in piece.prefactors)
        lines.append(header)
        lines.extend(f"relation {format_element(r)}" for r in piece.relations)
        if piece.basis is not None:
            lines.append("basis " + ", ".join(format_element(b) for b in piece.basis))
    return "\n".join(lines) + "\n"
