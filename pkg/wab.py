"""
Free weighted abelian groups and weight-axiom checks for algebraic samples.

The free weighted abelian group on a weighted set X has elements
sum_x k_x x with weight sum over the support of w(k_x) * |x|, where
w(k) = k for k >= 0 and w(k) = inf for k < 0 (the weighted integers wZ).

Tensor weights and symmetrised weights are infima over infinitely many
decompositions. They are computed by a bounded search (number of parts and
coefficient size) seeded with a closed-form candidate, and every result
says whether the search ran to completion.
"""

import logging
import os
import re
from dataclasses import dataclass
from itertools import product
from typing import Any, Callable, Dict, Hashable, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

import weight_core as wc
from weight_core import INF, ONE, ZERO, AxiomReport, Weight, WeightError
import wset
from wset import WSet

logger = logging.getLogger(__name__)

DEFAULT_MAX_PARTS = int(os.getenv("SEARCH_MAX_PARTS", "4"))
DEFAULT_MAX_COEFFICIENT = int(os.getenv("SEARCH_MAX_COEFFICIENT", "4"))
DEFAULT_MAX_STATES = int(os.getenv("SEARCH_MAX_STATES", "200000"))

ADDITIVE_MONOID = "additive-monoid"
MULTIPLICATIVE_MONOID = "multiplicative-monoid"
RING = "ring"
MODULE = "module"
SAMPLE_KINDS = (ADDITIVE_MONOID, MULTIPLICATIVE_MONOID, RING, MODULE)


class UnknownGeneratorError(WeightError):
    """Raised when an element mentions an id outside the basis"""
    pass


class DimensionMismatchError(WeightError):
    """Raised when a homomorphism matrix does not fit its bases"""
    pass


class MalformedSampleError(WeightError):
    """Raised when an algebra sample's operations are not total on its carrier"""
    pass


def int_weight(k: int) -> Weight:
    """The weight of wZ: k for k >= 0, inf for k < 0"""
    return Weight(k) if k >= 0 else INF


class GroupElement:
    """Finite integer combination of generators; zero coefficients are not stored"""

    __slots__ = ("_coefficients",)

    def __init__(self, coefficients: Optional[Mapping[Hashable, int]] = None):
        self._coefficients = {x: k for x, k in (coefficients or {}).items() if k != 0}

    @property
    def support(self) -> List[Hashable]:
        return list(self._coefficients)

    def coefficient(self, x: Hashable) -> int:
        return self._coefficients.get(x, 0)

    def items(self):
        return self._coefficients.items()

    def is_zero(self) -> bool:
        return not self._coefficients

    def __add__(self, other: "GroupElement") -> "GroupElement":
        result = dict(self._coefficients)
        for x, k in other.items():
            result[x] = result.get(x, 0) + k
        return GroupElement(result)

    def __neg__(self) -> "GroupElement":
        return GroupElement({x: -k for x, k in self.items()})

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self + (-other)

    def __rmul__(self, k: int) -> "GroupElement":
        return GroupElement({x: k * c for x, c in self.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self._coefficients == other._coefficients

    def __hash__(self) -> int:
        return hash(frozenset(self._coefficients.items()))

    def __repr__(self) -> str:
        return f"<GroupElement({format_element(self)})>"


_TERM_RE = re.compile(r"\s*([+-])?\s*(\d*)\s*\*?\s*([A-Za-z_][A-Za-z0-9_]*)\s*")


def parse_element(text: str) -> GroupElement:
    """Parse `3a - 2b + c` style combinations; `0` is the zero element"""
    if text.strip() == "0":
        return GroupElement()
    coefficients: Dict[str, int] = {}
    pos = 0
    first = True
    while pos < len(text.rstrip()):
        match = _TERM_RE.match(text, pos)
        if not match or (match.group(1) is None and not first):
            raise WeightError(f"Malformed element literal at column {pos + 1}: {text!r}")
        sign = -1 if match.group(1) == "-" else 1
        k = int(match.group(2)) if match.group(2) else 1
        name = match.group(3)
        coefficients[name] = coefficients.get(name, 0) + sign * k
        pos = match.end()
        first = False
    if first:
        raise WeightError(f"Empty element literal: {text!r}")
    return GroupElement(coefficients)


def format_element(v: GroupElement) -> str:
    if v.is_zero():
        return "0"
    parts = []
    for x, k in v.items():
        sign = "-" if k < 0 else "+"
        magnitude = "" if abs(k) == 1 else str(abs(k))
        parts.append(f"{sign} {magnitude}{x}")
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


@dataclass(frozen=True)
class FreeWAb:
    """Free weighted abelian group on a finite weighted basis"""
    basis: WSet

    def check(self, v: GroupElement) -> None:
        for x in v.support:
            if x not in self.basis:
                raise UnknownGeneratorError(f"Unknown generator: {x!r}")

    def generator(self, x: Hashable, k: int = 1) -> GroupElement:
        self.basis.weight(x)
        return GroupElement({x: k})


def wz() -> FreeWAb:
    """The weighted integers: one generator `e` of weight 1"""
    return FreeWAb(WSet({"e": ONE}))


def free_on_set(elements: Iterable[Hashable]) -> FreeWAb:
    """wZ S: every generator weighs 1, so |sum k_x x| = sum w(k_x)"""
    return FreeWAb(WSet((x, ONE) for x in elements))


def elem_weight(a: FreeWAb, v: GroupElement) -> Weight:
    """sum over the support of w(k_x) * |x|"""
    a.check(v)
    return wc.w_sum(wc.w_mul(int_weight(k), a.basis.weight(x)) for x, k in v.items())


def opposite_weight(a: FreeWAb, v: GroupElement) -> Weight:
    return elem_weight(a, -v)


def attainable_leq(a: FreeWAb, v: GroupElement, u: GroupElement) -> bool:
    """v <= u iff u - v is attainable (of finite weight)"""
    a.check(v)
    a.check(u)
    return elem_weight(a, u - v).is_finite


# Bounded decomposition search

@dataclass(frozen=True)
class SearchBound:
    max_parts: int = DEFAULT_MAX_PARTS
    max_coefficient: int = DEFAULT_MAX_COEFFICIENT
    max_states: int = DEFAULT_MAX_STATES


@dataclass(frozen=True)
class SearchResult:
    """
    Outcome of an infimum search.

    `exhaustive` is True when every decomposition within the bound was
    considered. `certified` is True when the search confirmed the closed-form
    candidate (symmetrisation) or was exhaustive (tensor weights).
    """
    weight: Weight
    exhaustive: bool
    certified: bool


def _box(dimension: int, c: int) -> Iterable[Tuple[int, ...]]:
    for vector in product(range(-c, c + 1), repeat=dimension):
        if any(vector):
            yield vector


def _cheapest_sum(target: Tuple[int, ...], terms: Mapping[Tuple[int, ...], Weight],
                  max_parts: int, reach: int, max_states: int) -> Tuple[Optional[Weight], bool]:
    """
    Least total cost of at most `max_parts` terms summing to `target`.

    Only finite-cost terms are considered. `reach` bounds each coordinate of
    a single term, which prunes partial sums that can no longer reach the
    target. Returns (best or None, exhaustive).
    """
    zero = tuple(0 for _ in target)
    if target == zero:
        return ZERO, True

    best: Optional[Weight] = None
    seen: Dict[Tuple[int, ...], Weight] = {zero: ZERO}
    frontier: Dict[Tuple[int, ...], Weight] = {zero: ZERO}

    for used in range(max_parts):
        for state, cost in frontier.items():
            residual = tuple(t - s for t, s in zip(target, state))
            if residual in terms:
                total = wc.w_add(cost, terms[residual])
                if best is None or total < best:
                    best = total

        remaining = max_parts - used - 1
        if remaining == 0:
            break
        next_frontier: Dict[Tuple[int, ...], Weight] = {}
        for state, cost in frontier.items():
            for term, term_cost in terms.items():
                total = wc.w_add(cost, term_cost)
                if best is not None and total >= best:
                    continue
                moved = tuple(s + t for s, t in zip(state, term))
                if any(abs(t - m) > remaining * reach for t, m in zip(target, moved)):
                    continue
                if moved in seen and seen[moved] <= total:
                    continue
                seen[moved] = total
                next_frontier[moved] = total
                if len(seen) > max_states:
                    logger.warning(f"Decomposition search stopped after {len(seen)} states")
                    return best, False
        frontier = next_frontier
        logger.debug(f"Search layer {used + 1}: {len(frontier)} partial sums")
        if not frontier:
            break
    return best, True


def symmetrized_weight(a: FreeWAb, v: GroupElement, bound: SearchBound = SearchBound()) -> SearchResult:
    """
    Greatest symmetric weight below |.|: the inf over v = a_1 + ... + a_p
    of sum min(|a_i|, |-a_i|).

    Parts are searched on the support of v only; the element weight is a sum
    over coordinates, so coordinates outside the support only add cost.
    """
    a.check(v)
    support = v.support
    closed_form = wc.w_sum(wc.w_mul(Weight(abs(k)), a.basis.weight(x)) for x, k in v.items())

    def part_cost(vector):
        part = GroupElement(dict(zip(support, vector)))
        return min(elem_weight(a, part), opposite_weight(a, part))

    terms = {}
    for vector in _box(len(support), bound.max_coefficient):
        cost = part_cost(vector)
        if cost.is_finite:
            terms[vector] = cost

    target = tuple(v.coefficient(x) for x in support)
    found, exhaustive = _cheapest_sum(target, terms, bound.max_parts, bound.max_coefficient, bound.max_states)
    weight = closed_form if found is None else min(found, closed_form)
    return SearchResult(weight, exhaustive, found is not None and found == closed_form)


def symmetrized_product_weight(a: FreeWAb, b: FreeWAb, va: GroupElement, vb: GroupElement,
                               bound: SearchBound = SearchBound()) -> SearchResult:
    """Symmetrised weight of (va, vb) in the product A x B (weight: the sup)"""
    a.check(va)
    b.check(vb)
    sa, sb = va.support, vb.support

    def weight_of(vector):
        left = GroupElement(dict(zip(sa, vector[:len(sa)])))
        right = GroupElement(dict(zip(sb, vector[len(sa):])))
        return max(elem_weight(a, left), elem_weight(b, right))

    terms = {}
    for vector in _box(len(sa) + len(sb), bound.max_coefficient):
        cost = min(weight_of(vector), weight_of(tuple(-k for k in vector)))
        if cost.is_finite:
            terms[vector] = cost

    target = tuple(va.coefficient(x) for x in sa) + tuple(vb.coefficient(x) for x in sb)
    found, exhaustive = _cheapest_sum(target, terms, bound.max_parts, bound.max_coefficient, bound.max_states)
    return SearchResult(INF if found is None else found, exhaustive, exhaustive)


@dataclass(frozen=True)
class ProductWitness:
    element: Tuple[GroupElement, GroupElement]
    symmetrized_product: Weight
    product_of_symmetrized: Weight


def product_symmetrization_witness() -> ProductWitness:
    """(e, -e) in wZ x wZ: symmetrising the product gives 2, the product of symmetrisations 1"""
    z = wz()
    va, vb = z.generator("e"), z.generator("e", -1)
    together = symmetrized_product_weight(z, z, va, vb).weight
    apart = max(symmetrized_weight(z, va).weight, symmetrized_weight(z, vb).weight)
    return ProductWitness((va, vb), together, apart)


def _outer(left: Tuple[int, ...], right: Tuple[int, ...]) -> Tuple[int, ...]:
    return tuple(i * j for i in left for j in right)


def tensor_weight(a: FreeWAb, b: FreeWAb, xi: Mapping[Tuple[Hashable, Hashable], int],
                  bound: SearchBound = SearchBound()) -> SearchResult:
    """
    Projective weight of xi = sum k_xy x (x) y: the inf of sum |a_i| * |b_i|
    over decompositions xi = sum a_i (x) b_i.

    The canonical decomposition (one term per pair) seeds the result, so the
    value is always an upper bound of the true infimum. Factors are searched
    on the rows and columns of xi's support; projecting a factor onto them
    never raises its weight.
    """
    for x, y in xi:
        if x not in a.basis or y not in b.basis:
            raise UnknownGeneratorError(f"Unknown pair: {(x, y)!r}")
    entries = {pair: k for pair, k in xi.items() if k != 0}
    if not entries:
        return SearchResult(ZERO, True, True)

    rows = [x for x in a.basis if any(p[0] == x for p in entries)]
    cols = [y for y in b.basis if any(p[1] == y for p in entries)]

    canonical = wc.w_sum(
        min(
            wc.w_mul(elem_weight(a, a.generator(x, k)), b.basis.weight(y)),
            wc.w_mul(a.basis.weight(x), elem_weight(b, b.generator(y, k))),
        )
        for (x, y), k in entries.items()
    )

    c = bound.max_coefficient
    left_factors = [(u, elem_weight(a, GroupElement(dict(zip(rows, u))))) for u in _box(len(rows), c)]
    right_factors = [(w, elem_weight(b, GroupElement(dict(zip(cols, w))))) for w in _box(len(cols), c)]
    terms: Dict[Tuple[int, ...], Weight] = {}
    for u, wu in left_factors:
        for w, ww in right_factors:
            cost = wc.w_mul(wu, ww)
            if cost.is_infinite:
                continue
            matrix = _outer(u, w)
            if matrix not in terms or cost < terms[matrix]:
                terms[matrix] = cost

    target = tuple(entries.get((x, y), 0) for x in rows for y in cols)
    found, exhaustive = _cheapest_sum(target, terms, bound.max_parts, c * c, bound.max_states)
    weight = canonical if found is None else min(found, canonical)
    logger.debug(f"Tensor weight {weight} (canonical {canonical}, exhaustive={exhaustive})")
    return SearchResult(weight, exhaustive, exhaustive)


def free_tensor_discrepancies(x: WSet, y: WSet, elements: Iterable[Mapping[Tuple[Hashable, Hashable], int]],
                              bound: SearchBound = SearchBound()) -> List[Tuple[Dict, Weight, Weight]]:
    """
    Compare wZ(X (x)_1 Y) with wZ X (x) wZ Y on the given elements.

    Returns (element, free weight, tensor weight) for every element on which
    the two weights differ.
    """
    joint = FreeWAb(wset.tensor(x, y, wc.MULTIPLICATIVE))
    left, right = FreeWAb(x), FreeWAb(y)
    found = []
    for xi in elements:
        free = elem_weight(joint, GroupElement(dict(xi)))
        projective = tensor_weight(left, right, xi, bound).weight
        if free != projective:
            found.append((dict(xi), free, projective))
    return found


# Homomorphisms

@dataclass(frozen=True)
class HomMatrix:
    """Homomorphism between free groups: row i is the image of source generator i"""
    source: FreeWAb
    target: FreeWAb
    matrix: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "matrix", tuple(tuple(row) for row in self.matrix))
        if len(self.matrix) != len(self.source.basis):
            raise DimensionMismatchError(
                f"{len(self.matrix)} rows for {len(self.source.basis)} source generators"
            )
        for row in self.matrix:
            if len(row) != len(self.target.basis):
                raise DimensionMismatchError(
                    f"Row of length {len(row)} for {len(self.target.basis)} target generators"
                )

    def image(self, x: Hashable) -> GroupElement:
        i = self.source.basis.elements.index(x)
        return GroupElement(dict(zip(self.target.basis.elements, self.matrix[i])))

    def apply(self, v: GroupElement) -> GroupElement:
        self.source.check(v)
        result = GroupElement()
        for x, k in v.items():
            result = result + k * self.image(x)
        return result


def hom_weight(h: HomMatrix) -> Weight:
    """Lipschitz weight: max over source generators of |h(x)| / |x|"""
    return wc.w_lattice(
        [wc.hom_dot(h.source.basis.weight(x), elem_weight(h.target, h.image(x))) for x in h.source.basis],
        "sup",
    )


def is_contracting(h: HomMatrix) -> bool:
    """
    |h(v)| <= |v| for every v of the source.

    Generators decide it: a combination with a negative coefficient weighs
    inf, and the target weight is subadditive on the others.
    """
    return all(elem_weight(h.target, h.image(x)) <= h.source.basis.weight(x) for x in h.source.basis)


def hom_matrices(b: FreeWAb, c: FreeWAb, max_coefficient: int) -> Iterator[HomMatrix]:
    """Every homomorphism B -> C with entries in [-max_coefficient, max_coefficient]"""
    rows, cols = len(b.basis), len(c.basis)
    for flat in product(range(-max_coefficient, max_coefficient + 1), repeat=rows * cols):
        yield HomMatrix(b, c, tuple(flat[i * cols:(i + 1) * cols] for i in range(rows)))


def contracting_homs(b: FreeWAb, c: FreeWAb, max_coefficient: int = 1) -> List[HomMatrix]:
    """The morphisms B -> C of wAb among the bounded matrices"""
    return [h for h in hom_matrices(b, c, max_coefficient) if is_contracting(h)]


def hom_unit_ball(b: FreeWAb, c: FreeWAb, max_coefficient: int = 1) -> List[HomMatrix]:
    """Elements of the internal hom Hom(B, C) of Lipschitz weight at most 1"""
    return [h for h in hom_matrices(b, c, max_coefficient) if hom_weight(h) <= ONE]


def unit_ball(a: FreeWAb, max_coefficient: int = 1) -> List[GroupElement]:
    """Elements of weight at most 1, coefficients bounded"""
    basis = a.basis.elements
    found = []
    for vector in product(range(-max_coefficient, max_coefficient + 1), repeat=len(basis)):
        v = GroupElement(dict(zip(basis, vector)))
        if elem_weight(a, v) <= ONE:
            found.append(v)
    return found


def point_of(a: FreeWAb, v: GroupElement) -> HomMatrix:
    """The homomorphism wZ -> A sending the generator to v"""
    a.check(v)
    return HomMatrix(wz(), a, (tuple(v.coefficient(x) for x in a.basis),))


def zero_hom(b: FreeWAb, c: FreeWAb) -> HomMatrix:
    return HomMatrix(b, c, tuple((0,) * len(c.basis) for _ in b.basis))


def identity_hom(b: FreeWAb) -> HomMatrix:
    n = len(b.basis)
    return HomMatrix(b, b, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))


def add_homs(f: HomMatrix, g: HomMatrix) -> HomMatrix:
    if (f.source, f.target) != (g.source, g.target):
        raise DimensionMismatchError("Only parallel homomorphisms can be added")
    return HomMatrix(f.source, f.target,
                     tuple(tuple(p + q for p, q in zip(fr, gr)) for fr, gr in zip(f.matrix, g.matrix)))


def compose_homs(g: HomMatrix, f: HomMatrix) -> HomMatrix:
    """g after f; rows are images of generators, so the matrix is F G"""
    if f.target != g.source:
        raise DimensionMismatchError("Composite needs f's target to be g's source")
    cols = range(len(g.target.basis))
    rows = tuple(
        tuple(sum(k * g.matrix[j][col] for j, k in enumerate(row)) for col in cols)
        for row in f.matrix
    )
    return HomMatrix(f.source, g.target, rows)


# Axiom checks on finite samples

@dataclass(frozen=True)
class AlgebraSample:
    """
    A finite window on an algebraic structure.

    Operations are total functions on the ambient structure; results of
    operations on carrier elements may fall outside the carrier, and are
    weighed by `weight`, which must accept them.
    """
    kind: str
    carrier: Tuple[Any, ...]
    weight: Callable[[Any], Weight]
    add: Optional[Callable[[Any, Any], Any]] = None
    zero: Any = None
    mul: Optional[Callable[[Any, Any], Any]] = None
    one: Any = None
    scalars: Tuple[Any, ...] = ()
    scalar_weight: Optional[Callable[[Any], Weight]] = None
    action: Optional[Callable[[Any, Any], Any]] = None

    def __post_init__(self):
        if self.kind not in SAMPLE_KINDS:
            raise MalformedSampleError(f"Unknown sample kind: {self.kind}")
        needs = {
            ADDITIVE_MONOID: ("add",),
            MULTIPLICATIVE_MONOID: ("mul",),
            RING: ("add", "mul"),
            MODULE: ("add", "action", "scalar_weight"),
        }[self.kind]
        for name in needs:
            if getattr(self, name) is None:
                raise MalformedSampleError(f"{self.kind} sample needs {name}")
        self._weigh(self.zero if self.kind != MULTIPLICATIVE_MONOID else self.one)

    def _weigh(self, value, weight=None) -> Weight:
        try:
            result = (weight or self.weight)(value)
        except Exception as e:
            raise MalformedSampleError(f"Weight undefined at {value!r}: {e}") from e
        if not isinstance(result, Weight):
            raise MalformedSampleError(f"Weight of {value!r} is not a Weight: {result!r}")
        return result

    def _apply(self, op, *args):
        try:
            return op(*args)
        except Exception as e:
            raise MalformedSampleError(f"Operation undefined at {args!r}: {e}") from e


def algebra_weight_check(sample: AlgebraSample) -> AxiomReport:
    """Check the sample's weight axioms on every carrier element and pair"""
    report = AxiomReport(sample.kind)
    s = sample
    carrier = s.carrier

    if s.kind in (ADDITIVE_MONOID, RING, MODULE):
        report.record("|0| = 0", (s.zero,), s._weigh(s.zero), ZERO)
        for a, b in product(carrier, repeat=2):
            total = s._weigh(s._apply(s.add, a, b))
            report.record("|a+b| <= |a|+|b|", (a, b), total, wc.w_add(s._weigh(a), s._weigh(b)))

    if s.kind in (MULTIPLICATIVE_MONOID, RING):
        report.record("|1| <= 1", (s.one,), s._weigh(s.one), ONE)
        for a, b in product(carrier, repeat=2):
            total = s._weigh(s._apply(s.mul, a, b))
            report.record("|ab| <= |a||b|", (a, b), total, wc.w_mul(s._weigh(a), s._weigh(b)))

    if s.kind == MODULE:
        for lam, a in product(s.scalars, carrier):
            total = s._weigh(s._apply(s.action, lam, a))
            bound = wc.w_mul(s._weigh(lam, s.scalar_weight), s._weigh(a))
            report.record("|la| <= |l||a|", (lam, a), total, bound)

    logger.info(f"{s.kind} sample: {report.checked} instances, {len(report.violations)} violations")
    return report


def tensor_chain_check(sample: AlgebraSample, max_terms: int = 2) -> AxiomReport:
    """
    |ab| <= sum |a_i||b_i| for every decomposition ab = sum a_i b_i with at
    most `max_terms` pairs from the carrier: |ab| is below the tensor weight
    of a (x) b.
    """
    if sample.kind != RING:
        raise MalformedSampleError("Tensor chain check needs a ring sample")
    s = sample
    report = AxiomReport(RING)
    pairs = [
        (s._apply(s.mul, a, b), wc.w_mul(s._weigh(a), s._weigh(b)), (a, b))
        for a, b in product(s.carrier, repeat=2)
    ]
    for a, b in product(s.carrier, repeat=2):
        target = s._apply(s.mul, a, b)
        best = INF
        witness: Tuple = ((a, b),)
        for count in range(1, max_terms + 1):
            for combo in product(pairs, repeat=count):
                total = s.zero
                for value, _, _ in combo:
                    total = s._apply(s.add, total, value)
                if total != target:
                    continue
                cost = wc.w_sum(c for _, c, _ in combo)
                if cost < best:
                    best, witness = cost, tuple(p for _, _, p in combo)
        report.record("|ab| <= sum |a_i||b_i|", witness, s._weigh(target), best)
    return report


def _int_add(a: int, b: int) -> int:
    return a + b


def _int_mul(a: int, b: int) -> int:
    return a * b


def wz_ring_sample(lo: int = -3, hi: int = 3) -> AlgebraSample:
    """The integers weighted by w (k for k >= 0, inf below) on [lo, hi]"""
    return AlgebraSample(RING, tuple(range(lo, hi + 1)), int_weight,
                         add=_int_add, zero=0, mul=_int_mul, one=1)


def abs_ring_sample(lo: int = -3, hi: int = 3) -> AlgebraSample:
    """The integers weighted by the absolute value on [lo, hi]"""
    return AlgebraSample(RING, tuple(range(lo, hi + 1)), lambda k: Weight(abs(k)),
                         add=_int_add, zero=0, mul=_int_mul, one=1)


def codiscrete_sample(kind: str, lo: int = -3, hi: int = 3) -> AlgebraSample:
    """The integers with every weight 0"""
    carrier = tuple(range(lo, hi + 1))
    if kind == MODULE:
        return AlgebraSample(MODULE, carrier, lambda k: ZERO, add=_int_add, zero=0,
                             scalars=carrier, scalar_weight=lambda k: ZERO, action=_int_mul)
    return AlgebraSample(kind, carrier, lambda k: ZERO, add=_int_add, zero=0, mul=_int_mul, one=1)


def cone_sample(carrier: Sequence[int], positive: Callable[[int], bool]) -> AlgebraSample:
    """
    Additive monoid weighted 0 on a positive cone and inf elsewhere: the
    weight induced by a preorder on an ordinary abelian group.
    """
    return AlgebraSample(ADDITIVE_MONOID, tuple(carrier), lambda k: ZERO if positive(k) else INF,
                         add=_int_add, zero=0)
