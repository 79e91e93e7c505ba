"""
Exact weights on [0, inf].

A Weight is a nonnegative rational or infinity. The module provides the two
symmetric monoidal closed structures on weights (addition with truncated
subtraction, multiplication with division), the involution, the dual
operations (harmonic sum and the "bullet" product), truth-value functors and
the floating transforms to probabilistic and relative weights.

The undetermined forms are fixed as follows:
    0 * inf = inf       0 (bullet) inf = 0
    inf - inf = 0       0/0 = inf/inf = 0
    v/0 = inf (v > 0)   v/inf = 0
"""

import logging
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import total_ordering
from typing import Callable, Iterable, List, NamedTuple, Optional, Union

logger = logging.getLogger(__name__)

ADDITIVE = "additive"
MULTIPLICATIVE = "multiplicative"
SUP = "sup"
KINDS = (ADDITIVE, MULTIPLICATIVE, SUP)

PROBABILISTIC = "probabilistic"
RELATIVE = "relative"

MAX_DECIMAL_DIGITS = 9


class WeightError(Exception):
    """Base exception for every failure raised by the weight toolkit"""
    pass


class WeightParseError(WeightError):
    """Raised when a weight literal cannot be parsed"""

    def __init__(self, text: str, reason: str = "not a weight literal"):
        self.text = text
        self.reason = reason
        super().__init__(f"{reason}: {text!r}")


@total_ordering
class Weight:
    """A nonnegative rational in lowest terms, or infinity"""

    __slots__ = ("_q",)

    def __init__(self, num: Union[int, Fraction] = 0, den: int = 1):
        if isinstance(num, (float, bool)) or isinstance(den, (float, bool)):
            raise TypeError("weights are exact: use int or Fraction")
        q = Fraction(num, den)
        if q < 0:
            raise WeightError(f"weights are nonnegative, got {q}")
        self._q: Optional[Fraction] = q

    @classmethod
    def _infinite(cls) -> "Weight":
        w = object.__new__(cls)
        w._q = None
        return w

    @classmethod
    def infinity(cls) -> "Weight":
        return INF

    @property
    def is_infinite(self) -> bool:
        return self._q is None

    @property
    def is_finite(self) -> bool:
        return self._q is not None

    @property
    def value(self) -> Fraction:
        if self._q is None:
            raise WeightError("infinity has no rational value")
        return self._q

    @property
    def num(self) -> int:
        return self.value.numerator

    @property
    def den(self) -> int:
        return self.value.denominator

    def __float__(self) -> float:
        return math.inf if self._q is None else float(self._q)

    def _coerce(self, other) -> Optional["Weight"]:
        if isinstance(other, Weight):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool) and other >= 0:
            return Weight(other)
        return None

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._q == other._q

    def __lt__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self._q is None:
            return False
        if other._q is None:
            return True
        return self._q < other._q

    def __hash__(self) -> int:
        return hash(self._q)

    def __repr__(self) -> str:
        return f"Weight({self})"

    def __str__(self) -> str:
        return format_weight(self)


ZERO = Weight(0)
ONE = Weight(1)
INF = Weight._infinite()

# Fixed grid for exact law checks: units, a value below one, non-dyadic
# rationals and both absorbing elements.
TEST_GRID = (
    ZERO,
    Weight(1, 3),
    Weight(1, 2),
    ONE,
    Weight(3, 2),
    Weight(2),
    Weight(7),
    INF,
)


_INT_RE = re.compile(r"^(\d+)$")
_FRACTION_RE = re.compile(r"^(\d+)\s*/\s*(\d+)$")
_DECIMAL_RE = re.compile(r"^(\d+)\.(\d+)$")


def parse_weight(text: str) -> Weight:
    """Parse `inf`, `<int>`, `<int>/<int>` or a decimal with at most 9 fractional digits"""
    literal = text.strip()
    if literal == "inf":
        return INF

    match = _INT_RE.match(literal)
    if match:
        return Weight(int(match.group(1)))

    match = _FRACTION_RE.match(literal)
    if match:
        den = int(match.group(2))
        if den == 0:
            raise WeightParseError(text, "zero denominator")
        return Weight(int(match.group(1)), den)

    match = _DECIMAL_RE.match(literal)
    if match:
        digits = match.group(2)
        if len(digits) > MAX_DECIMAL_DIGITS:
            raise WeightParseError(text, f"more than {MAX_DECIMAL_DIGITS} fractional digits")
        return Weight(Fraction(literal))

    raise WeightParseError(text)


def format_weight(w: Weight) -> str:
    """Canonical literal: `inf`, integers bare, otherwise lowest-terms `num/den`"""
    if w.is_infinite:
        return "inf"
    q = w.value
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


# Arithmetic

def w_add(lam: Weight, mu: Weight) -> Weight:
    if lam.is_infinite or mu.is_infinite:
        return INF
    return Weight(lam.value + mu.value)


def w_mul(lam: Weight, mu: Weight) -> Weight:
    """Product with 0 * inf = inf"""
    if lam.is_infinite or mu.is_infinite:
        return INF
    return Weight(lam.value * mu.value)


def w_inv(lam: Weight) -> Weight:
    if lam.is_infinite:
        return ZERO
    if lam.value == 0:
        return INF
    return Weight(1 / lam.value)


def w_harmonic(lam: Weight, mu: Weight) -> Weight:
    """Harmonic sum (lam^-1 + mu^-1)^-1, the parallel law of resistances"""
    return w_inv(w_add(w_inv(lam), w_inv(mu)))


def w_bullet(lam: Weight, mu: Weight) -> Weight:
    """Dual product (lam^-1 * mu^-1)^-1: the product, except 0 . inf = 0"""
    if (lam == ZERO and mu.is_infinite) or (lam.is_infinite and mu == ZERO):
        return ZERO
    return w_mul(lam, mu)


def hom_plus(mu: Weight, nu: Weight) -> Weight:
    """Truncated subtraction 0 v (nu - mu), right adjoint of adding mu"""
    if mu.is_infinite:
        return ZERO
    if nu.is_infinite:
        return INF
    return Weight(max(Fraction(0), nu.value - mu.value))


def hom_dot(mu: Weight, nu: Weight) -> Weight:
    """Division nu / mu, right adjoint of multiplying by mu"""
    if mu.is_infinite:
        return ZERO
    if mu == ZERO:
        return ZERO if nu == ZERO else INF
    if nu.is_infinite:
        return INF
    return Weight(nu.value / mu.value)


def w_lattice(items: Iterable[Weight], kind: str) -> Weight:
    """sup or inf of a finite family; sup of nothing is 0, inf of nothing is inf"""
    items = list(items)
    if kind == "sup":
        return max(items, default=ZERO)
    if kind == "inf":
        return min(items, default=INF)
    raise ValueError(f"Unknown lattice operation: {kind}")


def w_sum(items: Iterable[Weight]) -> Weight:
    total = ZERO
    for item in items:
        total = w_add(total, item)
    return total


def w_product(items: Iterable[Weight]) -> Weight:
    total = ONE
    for item in items:
        total = w_mul(total, item)
    return total


# The three quantales used for weighted categories

def monoidal_op(kind: str) -> Callable[[Weight, Weight], Weight]:
    if kind == ADDITIVE:
        return w_add
    if kind == MULTIPLICATIVE:
        return w_mul
    if kind == SUP:
        return max
    raise ValueError(f"Unknown kind: {kind}")


def monoidal_unit(kind: str) -> Weight:
    if kind in (ADDITIVE, SUP):
        return ZERO
    if kind == MULTIPLICATIVE:
        return ONE
    raise ValueError(f"Unknown kind: {kind}")


def internal_hom(kind: str) -> Callable[[Weight, Weight], Weight]:
    """Right adjoint of the kind's tensor (sup has none on the weight object here)"""
    if kind == ADDITIVE:
        return hom_plus
    if kind == MULTIPLICATIVE:
        return hom_dot
    raise ValueError(f"No internal hom for kind: {kind}")


# Truth values

class TruthPair(NamedTuple):
    p_value: int
    q_value: int


def truth_classify(lam: Weight) -> TruthPair:
    """P(lam) = 1 iff lam is finite, Q(lam) = 1 iff lam = 0"""
    return TruthPair(int(lam.is_finite), int(lam == ZERO))


def truth_embed(bit: int) -> Weight:
    """The embedding M of truth values: true is 0, false is inf"""
    if bit not in (0, 1):
        raise WeightError(f"truth values are 0 or 1, got {bit}")
    return ZERO if bit else INF


# Floating transforms

@dataclass(frozen=True)
class FloatWeight:
    value: float
    tag: str

    def __post_init__(self):
        if math.isnan(self.value):
            raise WeightError("NaN is not a weight")
        if self.tag == PROBABILISTIC:
            if not 0.0 <= self.value <= 1.0:
                raise WeightError(f"probabilistic weights lie in [0,1], got {self.value}")
        elif self.tag != RELATIVE:
            raise WeightError(f"Unknown transform target: {self.tag}")


@dataclass(frozen=True)
class ApproxWeight:
    """Double-precision approximation of a weight, never exact"""
    value: float
    exact: bool = False

    def rationalize(self, max_denominator: int = 10 ** 9) -> Weight:
        if math.isinf(self.value):
            return INF
        return Weight(Fraction(self.value).limit_denominator(max_denominator))


def _ln(q: Fraction) -> float:
    return math.log(q.numerator) - math.log(q.denominator)


def transform(lam: Weight, target: str) -> FloatWeight:
    """p = exp(-lam) for probabilistic weights, x = ln(lam) for relative ones"""
    if target == PROBABILISTIC:
        if lam.is_infinite:
            return FloatWeight(0.0, PROBABILISTIC)
        return FloatWeight(math.exp(-float(lam.value)), PROBABILISTIC)
    if target == RELATIVE:
        if lam.is_infinite:
            return FloatWeight(math.inf, RELATIVE)
        if lam == ZERO:
            return FloatWeight(-math.inf, RELATIVE)
        return FloatWeight(_ln(lam.value), RELATIVE)
    raise WeightError(f"Unknown transform target: {target}")


def transform_back(fw: FloatWeight) -> ApproxWeight:
    if fw.tag == PROBABILISTIC:
        if fw.value == 0.0:
            return ApproxWeight(math.inf)
        return ApproxWeight(max(0.0, -math.log(fw.value)))
    return ApproxWeight(math.exp(fw.value))


def prob_tensor(p: float, q: float) -> float:
    return p * q


def prob_hom(q: float, r: float) -> float:
    """Internal hom of probabilistic weights: 1 ^ r/q"""
    if q == 0.0:
        return 1.0
    return min(1.0, r / q)


def rel_tensor(x: float, y: float) -> float:
    """Sum of relative weights with -inf + inf = inf"""
    if math.inf in (x, y):
        return math.inf
    return x + y


def rel_hom(y: float, z: float) -> float:
    """z - y, with the undetermined forms carried over from division"""
    if y == math.inf:
        return -math.inf
    if y == -math.inf:
        return -math.inf if z == -math.inf else math.inf
    if z == math.inf:
        return math.inf
    return z - y


def rel_dual(x: float) -> float:
    return -x


# Law reports shared by the axiom checkers

@dataclass(frozen=True)
class Violation:
    axiom: str
    instance: tuple
    lhs: Weight
    rhs: Weight

    def __str__(self) -> str:
        return f"{self.axiom} at {self.instance}: {self.lhs} > {self.rhs}"


@dataclass
class AxiomReport:
    kind: str
    checked: int = 0
    violations: List[Violation] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def record(self, axiom: str, instance: tuple, lhs: Weight, rhs: Weight) -> None:
        """Count one instance of `lhs <= rhs`, keeping it when it fails"""
        self.checked += 1
        if not lhs <= rhs:
            self.violations.append(Violation(axiom, instance, lhs, rhs))
