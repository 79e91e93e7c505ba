"""
Multiplicative-additive linear logic interpreted in the weights.

Formulas are evaluated in ([0, inf], >=, *, 1): tensor is the product, par
the dual product, the dual is the involution, lollipop is division, with is
sup, plus is inf. A formula is valid in this model when its value is at most
1 (an arrow 1 -> value) for every environment checked. This is model
validity only: the model is sound for MALL but not complete.

Concrete syntax:
    *  tensor     @  par      -o  lollipop (right associative)
    &  with       (+) plus    ^   postfix dual
    1  one        bot bottom  top   0 zero
Precedence, tightest first: ^, then * and @, then & and (+), then -o.
"""

import logging
import re
from dataclasses import dataclass
from itertools import product
from typing import Dict, FrozenSet, Iterator, List, Mapping, Optional, Union

import pyparsing as pp

import weight_core as wc
from weight_core import INF, ONE, TEST_GRID, ZERO, Weight, WeightError

logger = logging.getLogger(__name__)

pp.ParserElement.enable_packrat()

Environment = Dict[str, Weight]


class FormulaSyntaxError(WeightError):
    """Raised when a formula does not parse"""

    def __init__(self, line: int, column: int, expected: FrozenSet[str], found: str):
        self.line = line
        self.column = column
        self.expected = expected
        self.found = found
        listing = ", ".join(sorted(expected))
        super().__init__(f"line {line}, column {column}: expected one of {listing}; found {found}")


class UnboundAtomError(WeightError):
    """Raised when evaluating an atom the environment does not bind"""

    def __init__(self, name: str):
        self.name = name
        super().__init__(f"Unbound atom: {name}")


# Abstract syntax

@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class Constant:
    name: str  # one, bottom, top or zero


@dataclass(frozen=True)
class Dual:
    arg: "Formula"


@dataclass(frozen=True)
class Tensor:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Par:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Lollipop:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class With:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Plus:
    left: "Formula"
    right: "Formula"


Formula = Union[Atom, Constant, Dual, Tensor, Par, Lollipop, With, Plus]

CONSTANT_SYMBOLS = {"one": "1", "bottom": "bot", "top": "top", "zero": "0"}
CONSTANT_VALUES = {"one": ONE, "bottom": ONE, "top": ZERO, "zero": INF}

BINARY_NODES = {"*": Tensor, "@": Par, "-o": Lollipop, "&": With, "(+)": Plus}
BINARY_SYMBOLS = {node: symbol for symbol, node in BINARY_NODES.items()}


# Grammar

def _fold_left(tokens):
    items = tokens[0]
    result = items[0]
    for i in range(1, len(items), 2):
        result = BINARY_NODES[items[i]](result, items[i + 1])
    return result


def _fold_right(tokens):
    items = tokens[0]
    result = items[-1]
    for i in range(len(items) - 2, 0, -2):
        result = BINARY_NODES[items[i]](items[i - 1], result)
    return result


def _fold_dual(tokens):
    items = tokens[0]
    result = items[0]
    for _ in items[1:]:
        result = Dual(result)
    return result


def _build_grammar() -> pp.ParserElement:
    one = pp.Keyword("1").set_parse_action(lambda: Constant("one"))
    zero = pp.Keyword("0").set_parse_action(lambda: Constant("zero"))
    bottom = pp.Keyword("bot").set_parse_action(lambda: Constant("bottom"))
    top = pp.Keyword("top").set_parse_action(lambda: Constant("top"))
    atom = pp.Regex(r"[a-z][a-z0-9_]*").set_parse_action(lambda t: Atom(t[0]))

    operand = one | zero | bottom | top | atom

    return pp.infix_notation(
        operand,
        [
            (pp.Literal("^"), 1, pp.OpAssoc.LEFT, _fold_dual),
            (pp.one_of("* @"), 2, pp.OpAssoc.LEFT, _fold_left),
            (pp.Literal("&") | pp.Literal("(+)"), 2, pp.OpAssoc.LEFT, _fold_left),
            (pp.Literal("-o"), 2, pp.OpAssoc.RIGHT, _fold_right),
        ],
    )


FORMULA = _build_grammar()

# Token scanner used to pinpoint syntax errors
_TOKEN_RE = re.compile(r"-o|\(\+\)|[()*@&^]|[a-z][a-z0-9_]*|[0-9]+|\S")
_IDENT_RE = re.compile(r"[a-z][a-z0-9_]*")

OPERAND_TOKENS = frozenset({"atom", "1", "0", "bot", "top", "("})
OPERATOR_TOKENS = frozenset({"*", "@", "&", "(+)", "-o", "^"})
END_OF_INPUT = "end of input"


def _syntax_error(text: str, loc: int, expected: FrozenSet[str], found: str) -> FormulaSyntaxError:
    return FormulaSyntaxError(pp.lineno(loc, text), pp.col(loc, text), expected, found)


def _locate_error(text: str) -> Optional[FormulaSyntaxError]:
    """Walk the token stream and report the first place it stops being a formula"""
    expect_operand = True
    depth = 0
    for match in _TOKEN_RE.finditer(text):
        token, loc = match.group(), match.start()
        if expect_operand:
            if token == "(":
                depth += 1
            elif token in ("1", "0") or _IDENT_RE.fullmatch(token):
                expect_operand = False
            else:
                return _syntax_error(text, loc, OPERAND_TOKENS, token)
        else:
            closing = {")"} if depth else {END_OF_INPUT}
            if token in OPERATOR_TOKENS:
                expect_operand = token != "^"
            elif token == ")" and depth:
                depth -= 1
            else:
                return _syntax_error(text, loc, OPERATOR_TOKENS | closing, token)

    end = len(text)
    if expect_operand:
        return _syntax_error(text, end, OPERAND_TOKENS, END_OF_INPUT)
    if depth:
        return _syntax_error(text, end, OPERATOR_TOKENS | {")"}, END_OF_INPUT)
    return None


def parse(text: str) -> Formula:
    """Parse a formula; unbound atoms are not an error at this stage"""
    located = _locate_error(text)
    if located is not None:
        raise located
    try:
        return FORMULA.parse_string(text, parse_all=True)[0]
    except pp.ParseException as e:
        raise FormulaSyntaxError(e.lineno, e.col, frozenset({str(e.msg)}), e.line[e.col - 1:] or END_OF_INPUT)


def format_formula(f: Formula) -> str:
    """Print with every binary node parenthesised, except the outermost one"""
    text = _format(f)
    if isinstance(f, tuple(BINARY_SYMBOLS)):
        return text[1:-1]
    return text


def _format(f: Formula) -> str:
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Constant):
        return CONSTANT_SYMBOLS[f.name]
    if isinstance(f, Dual):
        return f"{_format(f.arg)}^"
    symbol = BINARY_SYMBOLS[type(f)]
    return f"({_format(f.left)} {symbol} {_format(f.right)})"


# Semantics

def evaluate(f: Formula, env: Mapping[str, Weight]) -> Weight:
    if isinstance(f, Atom):
        if f.name not in env:
            raise UnboundAtomError(f.name)
        return env[f.name]
    if isinstance(f, Constant):
        return CONSTANT_VALUES[f.name]
    if isinstance(f, Dual):
        return wc.w_inv(evaluate(f.arg, env))

    left, right = evaluate(f.left, env), evaluate(f.right, env)
    if isinstance(f, Tensor):
        return wc.w_mul(left, right)
    if isinstance(f, Par):
        return wc.w_bullet(left, right)
    if isinstance(f, Lollipop):
        return wc.hom_dot(left, right)
    if isinstance(f, With):
        return wc.w_lattice([left, right], "sup")
    if isinstance(f, Plus):
        return wc.w_lattice([left, right], "inf")
    raise TypeError(f"Not a formula: {f!r}")


def atoms(f: Formula) -> List[str]:
    """Atom names in order of first occurrence"""
    seen: Dict[str, None] = {}

    def walk(node):
        if isinstance(node, Atom):
            seen.setdefault(node.name)
        elif isinstance(node, Dual):
            walk(node.arg)
        elif not isinstance(node, Constant):
            walk(node.left)
            walk(node.right)

    walk(f)
    return list(seen)


def grid_environments(f: Formula, fixed: Optional[Mapping[str, Weight]] = None) -> Iterator[Environment]:
    """Every assignment of the test grid to the atoms `fixed` leaves unbound"""
    fixed = dict(fixed or {})
    free = [name for name in atoms(f) if name not in fixed]
    for values in product(TEST_GRID, repeat=len(free)):
        env = dict(fixed)
        env.update(zip(free, values))
        yield env


@dataclass(frozen=True)
class ValidityResult:
    valid: bool
    env: Optional[Environment] = None
    value: Optional[Weight] = None

    def describe(self) -> str:
        if self.valid:
            return "valid"
        parts = [f"{name}={value}" for name, value in self.env.items()]
        return " ".join(["counterexample", *parts, f"value={self.value}"])


def valid(f: Formula, envs=None) -> ValidityResult:
    """Check value <= 1 in every environment (the grid when none are given)"""
    if envs is None:
        envs = grid_environments(f)
    checked = 0
    for env in envs:
        checked += 1
        value = evaluate(f, env)
        if value > ONE:
            logger.debug(f"Counterexample after {checked} environments: {env}")
            return ValidityResult(False, dict(env), value)
    logger.debug(f"Formula valid on {checked} environments")
    return ValidityResult(True)
