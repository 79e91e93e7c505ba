"""
Exact impedances on the projective line over the Gaussian rationals.

P^1(Q[i]) = Q[i] u {inf} with sum, product and the involution z -> 1/z is an
involutive cubical semiring: inf absorbs both operations and 1/0 = inf.
Series composition of two-terminal networks is the sum, parallel
composition the harmonic sum (1/z + 1/w)^-1.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import product
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, ConfigDict, ValidationError, model_validator

from weight_core import ADDITIVE, MULTIPLICATIVE, AxiomReport, Violation, WeightError

logger = logging.getLogger(__name__)

ELEMENT_KINDS = ("R", "L", "C")


class DomainViolationError(WeightError):
    """Raised when an operation is applied outside its domain"""
    pass


class NetworkError(WeightError):
    """Raised for malformed networks or element values"""
    pass


@dataclass(frozen=True)
class ProjValue:
    """A Gaussian rational re + im i, or the projective point at infinity"""
    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)
    infinite: bool = False

    def __post_init__(self):
        if self.infinite:
            object.__setattr__(self, "re", Fraction(0))
            object.__setattr__(self, "im", Fraction(0))
        else:
            object.__setattr__(self, "re", Fraction(self.re))
            object.__setattr__(self, "im", Fraction(self.im))

    @property
    def is_zero(self) -> bool:
        return not self.infinite and self.re == 0 and self.im == 0

    @property
    def is_real(self) -> bool:
        return not self.infinite and self.im == 0

    def __str__(self) -> str:
        return format_exact(self)

    def __repr__(self) -> str:
        return f"ProjValue({self})"


PC_ZERO = ProjValue()
PC_ONE = ProjValue(1)
PC_I = ProjValue(0, 1)
PC_INF = ProjValue(infinite=True)


class _Undefined:
    """Marker for an internal hom that does not exist"""

    def __repr__(self) -> str:
        return "UNDEFINED"

    def __str__(self) -> str:
        return "undefined"


UNDEFINED = _Undefined()


def gaussian(re: Union[int, Fraction, str], im: Union[int, Fraction, str] = 0) -> ProjValue:
    return ProjValue(Fraction(re), Fraction(im))


# Arithmetic

def conj(z: ProjValue) -> ProjValue:
    return z if z.infinite else ProjValue(z.re, -z.im)


def abs2(z: ProjValue) -> Optional[Fraction]:
    """Squared modulus; None for inf"""
    return None if z.infinite else z.re * z.re + z.im * z.im


def is_right_half(z: ProjValue) -> bool:
    """Membership in C+ u {inf}"""
    return z.infinite or z.re >= 0


def pc_add(z: ProjValue, w: ProjValue) -> ProjValue:
    if z.infinite or w.infinite:
        return PC_INF
    return ProjValue(z.re + w.re, z.im + w.im)


def pc_neg(z: ProjValue) -> ProjValue:
    return z if z.infinite else ProjValue(-z.re, -z.im)


def pc_sub(z: ProjValue, w: ProjValue) -> ProjValue:
    return pc_add(z, pc_neg(w))


def pc_mul(z: ProjValue, w: ProjValue) -> ProjValue:
    """Product with inf absorbing, so 0 * inf = inf"""
    if z.infinite or w.infinite:
        return PC_INF
    return ProjValue(z.re * w.re - z.im * w.im, z.re * w.im + z.im * w.re)


def pc_inv(z: ProjValue) -> ProjValue:
    if z.infinite:
        return PC_ZERO
    if z.is_zero:
        return PC_INF
    n = abs2(z)
    return ProjValue(z.re / n, -z.im / n)


def pc_parallel(z: ProjValue, w: ProjValue) -> ProjValue:
    """Harmonic sum zw / (z + w); 0 absorbs and inf is the unit"""
    if z.is_zero or w.is_zero:
        return PC_ZERO
    if z.infinite:
        return w
    if w.infinite:
        return z
    total = pc_add(z, w)
    if total.is_zero:
        return PC_INF
    return pc_mul(pc_mul(z, w), pc_inv(total))


def pc_bullet(z: ProjValue, w: ProjValue) -> ProjValue:
    """Dual product: 0 absorbs, so 0 . inf = 0"""
    if z.is_zero or w.is_zero:
        return PC_ZERO
    return pc_mul(z, w)


def pc_div(w2: ProjValue, w: ProjValue) -> ProjValue:
    """w2 / w with 0/0 = inf/inf = 0"""
    if w.infinite:
        return PC_ZERO
    if w.is_zero:
        return PC_ZERO if w2.is_zero else PC_INF
    return pc_mul(w2, pc_inv(w))


# Orders and internal homs

def cplane_leq(z: ProjValue, w: ProjValue, kind: str) -> bool:
    """
    Whether there is an arrow z -> w, i.e. z >= w in the kind's order.

    additive: Re z >= Re w and Im z = Im w, with inf the maximum.
    multiplicative: |z| >= |w| and equal arguments, with inf the maximum
    and 0 the minimum whatever their argument.
    """
    if kind == ADDITIVE:
        if z.infinite:
            return True
        if w.infinite:
            return False
        return z.re >= w.re and z.im == w.im
    if kind == MULTIPLICATIVE:
        if z.infinite or w.is_zero:
            return True
        if w.infinite or z.is_zero:
            return False
        product = pc_mul(z, conj(w))
        return abs2(z) >= abs2(w) and product.im == 0 and product.re > 0
    raise ValueError(f"Unknown order kind: {kind}")


def cplane_hom(w: ProjValue, w2: ProjValue, kind: str) -> Union[ProjValue, _Undefined]:
    """
    Internal hom of the kind's closed structure, adjoint to the tensor:
    z + w >= w2 iff z >= hom(w, w2), and likewise for the product.
    """
    if kind == ADDITIVE:
        if not (is_right_half(w) and is_right_half(w2)):
            raise DomainViolationError(f"additive hom needs real parts >= 0: {w}, {w2}")
        if w.infinite:
            return UNDEFINED
        if w2.infinite:
            return PC_INF
        return ProjValue(max(Fraction(0), w2.re - w.re), w2.im - w.im)
    if kind == MULTIPLICATIVE:
        return pc_div(w2, w)
    raise ValueError(f"Unknown order kind: {kind}")


def cubical_check(samples: Sequence[ProjValue],
                  pairs: Optional[Iterable[Tuple[ProjValue, ProjValue]]] = None) -> AxiomReport:
    """
    Involutive cubical semiring identities and the dual operations.

    Unary identities run on every sample; binary ones on `pairs`, which
    defaults to every ordered pair of samples.
    """
    report = AxiomReport("cubical")

    def expect(axiom: str, instance: tuple, got: ProjValue, want: ProjValue) -> None:
        report.checked += 1
        if got != want:
            report.violations.append(Violation(axiom, tuple(str(v) for v in instance), got, want))

    expect("0* = inf", (), pc_inv(PC_ZERO), PC_INF)
    expect("1* = 1", (), pc_inv(PC_ONE), PC_ONE)
    for x in samples:
        expect("x** = x", (x,), pc_inv(pc_inv(x)), x)
        expect("x + inf = inf", (x,), pc_add(x, PC_INF), PC_INF)
        expect("x.inf = inf", (x,), pc_mul(x, PC_INF), PC_INF)
        expect("inf.x = inf", (x,), pc_mul(PC_INF, x), PC_INF)
    for x, y in (product(samples, repeat=2) if pairs is None else pairs):
        expect("x:y = (x* + y*)*", (x, y), pc_parallel(x, y), pc_inv(pc_add(pc_inv(x), pc_inv(y))))
        expect("x.y dual = (x*.y*)*", (x, y), pc_bullet(x, y), pc_inv(pc_mul(pc_inv(x), pc_inv(y))))
    return report


# Formatting

def format_exact(z: ProjValue) -> str:
    """`re + im i` with exact rationals, or `inf`"""
    if z.infinite:
        return "inf"
    sign = "-" if z.im < 0 else "+"
    return f"{z.re} {sign} {abs(z.im)} i"


def format_approx(z: ProjValue) -> str:
    if z.infinite:
        return "inf"
    sign = "-" if z.im < 0 else "+"
    return f"{float(z.re)!r} {sign} {float(abs(z.im))!r} i"


# Networks

@dataclass(frozen=True)
class Leaf:
    kind: str
    value: Fraction

    def __post_init__(self):
        if self.kind not in ELEMENT_KINDS:
            raise NetworkError(f"Unknown element kind: {self.kind}")
        if self.value <= 0:
            raise NetworkError(f"Element values must be positive: {self.kind}={self.value}")


@dataclass(frozen=True)
class Series:
    children: Tuple["Node", ...]

    def __post_init__(self):
        if not self.children:
            raise NetworkError("series node has no children")


@dataclass(frozen=True)
class Parallel:
    children: Tuple["Node", ...]

    def __post_init__(self):
        if not self.children:
            raise NetworkError("parallel node has no children")


Node = Union[Leaf, Series, Parallel]


def element_impedance(kind: str, value: Fraction, omega: Fraction) -> ProjValue:
    """R -> R, L -> i omega L, C -> -i / (omega C)"""
    value, omega = Fraction(value), Fraction(omega)
    if value <= 0:
        raise NetworkError(f"Element values must be positive: {kind}={value}")
    if omega <= 0:
        raise NetworkError(f"Angular frequency must be positive: {omega}")
    if kind == "R":
        return ProjValue(value)
    if kind == "L":
        return ProjValue(0, omega * value)
    if kind == "C":
        return ProjValue(0, -1 / (omega * value))
    raise NetworkError(f"Unknown element kind: {kind}")


def reduce_network(net: Node, omega: Fraction) -> ProjValue:
    if isinstance(net, Leaf):
        return element_impedance(net.kind, net.value, omega)
    parts = [reduce_network(child, omega) for child in net.children]
    if isinstance(net, Series):
        return reduce(pc_add, parts)
    return reduce(pc_parallel, parts)


def _rational(text: Union[int, str], field_name: str) -> Fraction:
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as e:
        raise NetworkError(f"{field_name}: not a rational literal: {text!r}") from e


class NetworkSpec(BaseModel):
    """One node of a network file: exactly one of the fields is set"""
    model_config = ConfigDict(extra="forbid")

    series: Optional[List["NetworkSpec"]] = None
    parallel: Optional[List["NetworkSpec"]] = None
    R: Optional[Union[int, str]] = None
    L: Optional[Union[int, str]] = None
    C: Optional[Union[int, str]] = None

    @model_validator(mode="after")
    def exactly_one_field(self) -> "NetworkSpec":
        present = [name for name in ("series", "parallel") + ELEMENT_KINDS if getattr(self, name) is not None]
        if len(present) != 1:
            raise ValueError(f"expected exactly one of series, parallel, R, L, C; got {present or 'none'}")
        if present[0] in ("series", "parallel") and not getattr(self, present[0]):
            raise ValueError(f"{present[0]} needs at least one child")
        return self

    def to_tree(self) -> Node:
        if self.series is not None:
            return Series(tuple(child.to_tree() for child in self.series))
        if self.parallel is not None:
            return Parallel(tuple(child.to_tree() for child in self.parallel))
        for kind in ELEMENT_KINDS:
            value = getattr(self, kind)
            if value is not None:
                return Leaf(kind, _rational(value, kind))
        raise NetworkError("empty network node")


def parse_network_json(text: str) -> Node:
    try:
        model = NetworkSpec.model_validate_json(text)
    except ValidationError as e:
        raise NetworkError(f"Invalid network: {e}") from e
    tree = model.to_tree()
    logger.debug(f"Parsed network with {_count_leaves(tree)} elements")
    return tree


def _count_leaves(net: Node) -> int:
    if isinstance(net, Leaf):
        return 1
    return sum(_count_leaves(child) for child in net.children)
