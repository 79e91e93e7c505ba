"""
Weighted categories over the three quantales of weights.

A weighted category assigns every arrow a weight; identities weigh at most
the unit and composites at most the combination of their factors:

    additive        |1| = 0   |ba| <= |a| + |b|
    multiplicative  |1| <= 1  |ba| <= |a| * |b|
    sup             |1| = 0   |ba| <= |a| v |b|

The free weighted category on a weighted graph has the cheapest path as the
weight between two objects; `best_cost` computes it by closure.

A weighted additive category is multiplicative with abelian hom groups
where |0| = 0 and |f + g| <= |f| + |g|; free weighted groups with their
Lipschitz hom weights form one.
"""

import logging
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement, product
from typing import Any, Callable, Dict, Hashable, List, Mapping, Optional, Sequence, Tuple

import wab
import weight_core as wc
from weight_core import ADDITIVE, INF, MULTIPLICATIVE, ONE, TEST_GRID, ZERO, AxiomReport, Weight, WeightError

logger = logging.getLogger(__name__)

CLOSURE_WORKERS = int(os.getenv("CLOSURE_WORKERS", "4"))
CLOSURE_PARALLEL_MIN_OBJECTS = int(os.getenv("CLOSURE_PARALLEL_MIN_OBJECTS", "64"))  # smaller graphs run inline


class GraphFormatError(WeightError):
    """Raised for malformed graph files"""

    def __init__(self, line_number: int, message: str):
        self.line_number = line_number
        super().__init__(f"line {line_number}: {message}")


class InvalidCategoryError(WeightError):
    """Raised when a presentation breaks the category laws"""
    pass


class NotAFunctorError(WeightError):
    """Raised when an assignment does not preserve identities or composites"""

    def __init__(self, message: str, composite: Optional[Tuple] = None):
        self.composite = composite
        super().__init__(message)


class PLFunctionError(WeightError):
    """Raised for invalid piecewise-linear functions or unrepresentable composites"""
    pass


# Graphs and path closure

@dataclass(frozen=True)
class WGraph:
    objects: Tuple[Hashable, ...]
    edges: Tuple[Tuple[Hashable, Hashable, Weight], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(self.objects))
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        if len(set(self.objects)) != len(self.objects):
            raise WeightError("Duplicate objects in graph")
        known = set(self.objects)
        for src, dst, weight in self.edges:
            if src not in known or dst not in known:
                raise WeightError(f"Edge {src}->{dst} has an unknown endpoint")
            if not isinstance(weight, Weight):
                raise TypeError(f"Edge {src}->{dst} weight is not a Weight: {weight!r}")


def parse_graph(text: str) -> WGraph:
    """
    One edge `<src> <dst> <weight>` per line; a line with a single id declares
    an isolated object. Objects are listed in order of first appearance.
    """
    objects: Dict[str, None] = {}
    edges = []
    for number, line in enumerate(text.splitlines(), start=1):
        content = line.split("#", 1)[0].strip()
        if not content:
            continue
        fields = content.split()
        if len(fields) == 1:
            objects.setdefault(fields[0])
            continue
        if len(fields) != 3:
            raise GraphFormatError(number, f"expected '<src> <dst> <weight>', got {content!r}")
        src, dst, literal = fields
        try:
            weight = wc.parse_weight(literal)
        except wc.WeightParseError as e:
            raise GraphFormatError(number, str(e)) from e
        objects.setdefault(src)
        objects.setdefault(dst)
        edges.append((src, dst, weight))
    return WGraph(tuple(objects), tuple(edges))


@dataclass(frozen=True)
class CostMatrix:
    """
    Cheapest composite between every pair of objects.

    `attained[i][j]` is False where the value is an infimum no single path
    reaches: multiplicative closure through cycles of weight strictly between
    0 and 1. Going around a cycle of weight exactly 0 attains 0, so entries
    reachable through one stay attained.
    """
    objects: Tuple[Hashable, ...]
    kind: str
    values: Tuple[Tuple[Weight, ...], ...]
    attained: Tuple[Tuple[bool, ...], ...]

    def index(self, x: Hashable) -> int:
        return self.objects.index(x)

    def value(self, x: Hashable, y: Hashable) -> Weight:
        return self.values[self.index(x)][self.index(y)]

    def format_tsv(self) -> str:
        if not self.objects:
            return ""
        lines = ["\t" + "\t".join(str(x) for x in self.objects)]
        for x, row in zip(self.objects, self.values):
            lines.append("\t".join([str(x)] + [str(w) for w in row]))
        return "\n".join(lines) + "\n"


def best_cost(graph: WGraph, kind: str, workers: Optional[int] = None) -> CostMatrix:
    """
    Closure of a weighted graph over the kind's quantale.

    Each elimination round relaxes every row against a snapshot of the
    previous round, so rows can be computed by parallel workers and the
    result does not depend on scheduling.
    """
    start = time.time()
    op = wc.monoidal_op(kind)
    unit = wc.monoidal_unit(kind)
    objects = graph.objects
    n = len(objects)
    index = {x: i for i, x in enumerate(objects)}

    d = [[INF] * n for _ in range(n)]
    for i in range(n):
        d[i][i] = unit
    for src, dst, weight in graph.edges:
        i, j = index[src], index[dst]
        d[i][j] = min(d[i][j], weight)

    workers = CLOSURE_WORKERS if workers is None else workers
    pool = ThreadPoolExecutor(max_workers=workers) if workers > 1 and n >= CLOSURE_PARALLEL_MIN_OBJECTS else None
    try:
        for k in range(n):
            row_k = list(d[k])
            col_k = [d[i][k] for i in range(n)]
            previous = d

            def relax(i: int) -> List[Weight]:
                through = col_k[i]
                row = previous[i]
                if through.is_infinite:
                    return row
                return [min(dij, op(through, dkj)) for dij, dkj in zip(row, row_k)]

            if pool is not None:
                d = list(pool.map(relax, range(n)))
            else:
                d = [relax(i) for i in range(n)]
    finally:
        if pool is not None:
            pool.shutdown()

    attained = [[True] * n for _ in range(n)]
    if kind == MULTIPLICATIVE:
        sub_unit = [k for k in range(n) if d[k][k] < ONE]
        if sub_unit:
            logger.info(f"{len(sub_unit)} objects lie on cycles of weight below 1")
        for i, j in product(range(n), repeat=2):
            if d[i][j] == ZERO:
                continue
            through = [k for k in sub_unit if d[i][k].is_finite and d[k][j].is_finite]
            if through:
                d[i][j] = ZERO
                # a cycle of weight exactly 0 reaches the infimum
                attained[i][j] = any(d[k][k] == ZERO for k in through)

    logger.info(f"{kind} closure over {n} objects finished in {time.time() - start:.3f}s")
    return CostMatrix(objects, kind, tuple(tuple(row) for row in d), tuple(tuple(row) for row in attained))


# Category presentations

@dataclass(frozen=True)
class Morphism:
    src: Hashable
    dst: Hashable
    weight: Weight


class WCatPresentation:
    """
    Finite category with weighted arrows.

    `composition[(b, a)]` is the arrow b after a, for every pair with
    dst(a) == src(b). The category laws are checked on construction.
    """

    def __init__(self, objects: Sequence[Hashable], morphisms: Mapping[Hashable, Morphism],
                 identities: Mapping[Hashable, Hashable], composition: Mapping[Tuple[Hashable, Hashable], Hashable]):
        self.objects = tuple(objects)
        self.morphisms = dict(morphisms)
        self.identities = dict(identities)
        self.composition = dict(composition)
        self._validate()

    def __repr__(self) -> str:
        return f"<WCatPresentation(objects={len(self.objects)}, morphisms={len(self.morphisms)})>"

    def weight(self, a: Hashable) -> Weight:
        return self.morphisms[a].weight

    def compose(self, b: Hashable, a: Hashable) -> Hashable:
        return self.composition[(b, a)]

    def outgoing(self, x: Hashable) -> List[Hashable]:
        return [a for a, m in self.morphisms.items() if m.src == x]

    def composable_pairs(self) -> List[Tuple[Hashable, Hashable]]:
        leaving = {x: self.outgoing(x) for x in self.objects}
        return [(b, a) for a, m in self.morphisms.items() for b in leaving[m.dst]]

    def _validate(self) -> None:
        known = set(self.objects)
        for name, m in self.morphisms.items():
            if m.src not in known or m.dst not in known:
                raise InvalidCategoryError(f"Arrow {name!r} has an unknown endpoint")
        for x in self.objects:
            ident = self.identities.get(x)
            if ident not in self.morphisms:
                raise InvalidCategoryError(f"Object {x!r} has no identity")
            if (self.morphisms[ident].src, self.morphisms[ident].dst) != (x, x):
                raise InvalidCategoryError(f"Identity of {x!r} is not an endomorphism of it")

        for b, a in self.composable_pairs():
            ba = self.composition.get((b, a))
            if ba not in self.morphisms:
                raise InvalidCategoryError(f"Composite {b!r} after {a!r} is missing")
            if (self.morphisms[ba].src, self.morphisms[ba].dst) != (self.morphisms[a].src, self.morphisms[b].dst):
                raise InvalidCategoryError(f"Composite {b!r} after {a!r} has the wrong endpoints")

        for a, m in self.morphisms.items():
            if self.compose(self.identities[m.dst], a) != a or self.compose(a, self.identities[m.src]) != a:
                raise InvalidCategoryError(f"Identity law fails at {a!r}")

        leaving = {x: self.outgoing(x) for x in self.objects}
        for b, a in self.composable_pairs():
            for c in leaving[self.morphisms[b].dst]:
                if self.compose(c, self.compose(b, a)) != self.compose(self.compose(c, b), a):
                    raise InvalidCategoryError(f"Composition is not associative at {(c, b, a)!r}")


def check_wcat(category: WCatPresentation, kind: str) -> AxiomReport:
    """Every identity and composable pair violating the kind's weight axioms"""
    op = wc.monoidal_op(kind)
    unit = wc.monoidal_unit(kind)
    report = AxiomReport(kind)
    for x in category.objects:
        ident = category.identities[x]
        report.record(f"|1_x| <= {unit}", (x,), category.weight(ident), unit)
    for b, a in category.composable_pairs():
        bound = op(category.weight(a), category.weight(b))
        report.record("|ba| <= |a| (+) |b|", (b, a), category.weight(category.compose(b, a)), bound)
    return report


def cost_category(costs: CostMatrix) -> WCatPresentation:
    """The weighted category with one arrow (x, y) of weight d(x, y) per pair"""
    objects = costs.objects
    morphisms = {(x, y): Morphism(x, y, costs.value(x, y)) for x, y in product(objects, repeat=2)}
    identities = {x: (x, x) for x in objects}
    composition = {((y, z), (x, y)): (x, z) for x, y, z in product(objects, repeat=3)}
    return WCatPresentation(objects, morphisms, identities, composition)


# Weighted additive categories

@dataclass(frozen=True)
class AdditiveCategorySample:
    """
    Finite piece of a category whose hom sets are weighted abelian groups.

    `homs[(x, y)]` lists sample arrows x -> y. Sums and composites may
    leave the sample; they are weighed with `weight` all the same.
    """
    objects: Sequence[Hashable]
    homs: Mapping[Tuple[Hashable, Hashable], Sequence[Any]]
    weight: Callable[[Any], Weight]
    add: Callable[[Any, Any], Any]
    compose: Callable[[Any, Any], Any]
    zero: Callable[[Hashable, Hashable], Any]
    identity: Callable[[Hashable], Any]

    def arrows(self, x: Hashable, y: Hashable) -> Sequence[Any]:
        return self.homs.get((x, y), ())


def check_weighted_additive(sample: AdditiveCategorySample) -> AxiomReport:
    """
    |0| = 0, |f + g| <= |f| + |g|, |1_x| <= 1 and |gf| <= |f| |g|.

    Instances name arrows by object pair and position in the sample.
    """
    report = AxiomReport("weighted additive")
    for x, y in product(sample.objects, repeat=2):
        report.record("|0| = 0", (x, y), sample.weight(sample.zero(x, y)), ZERO)
        arrows = sample.arrows(x, y)
        for i, j in combinations_with_replacement(range(len(arrows)), 2):
            f, g = arrows[i], arrows[j]
            report.record("|f+g| <= |f|+|g|", (x, y, i, j), sample.weight(sample.add(f, g)),
                          wc.w_add(sample.weight(f), sample.weight(g)))
    for x in sample.objects:
        report.record("|1_x| <= 1", (x,), sample.weight(sample.identity(x)), ONE)
    for x, y, z in product(sample.objects, repeat=3):
        for (i, f), (j, g) in product(enumerate(sample.arrows(x, y)), enumerate(sample.arrows(y, z))):
            report.record("|gf| <= |f||g|", (x, y, z, i, j), sample.weight(sample.compose(g, f)),
                          wc.w_mul(sample.weight(f), sample.weight(g)))
    logger.debug(f"Weighted additive check: {report.checked} instances, {len(report.violations)} violations")
    return report


def matrix_category(groups: Mapping[Hashable, wab.FreeWAb], max_coefficient: int = 1,
                    weight: Optional[Callable[[wab.HomMatrix], Weight]] = None) -> AdditiveCategorySample:
    """
    Free weighted groups with every homomorphism whose matrix entries are
    bounded by `max_coefficient`, weighed by `weight` (Lipschitz by default).
    """
    objects = list(groups)
    homs = {
        (x, y): list(wab.hom_matrices(groups[x], groups[y], max_coefficient))
        for x, y in product(objects, repeat=2)
    }
    return AdditiveCategorySample(
        objects=objects,
        homs=homs,
        weight=weight or wab.hom_weight,
        add=wab.add_homs,
        compose=wab.compose_homs,
        zero=lambda x, y: wab.zero_hom(groups[x], groups[y]),
        identity=lambda x: wab.identity_hom(groups[x]),
    )


# Functors

@dataclass(frozen=True)
class Functor:
    objects: Mapping[Hashable, Hashable]
    morphisms: Mapping[Hashable, Hashable]


def _verify_functor(functor: Functor, source: WCatPresentation, target: WCatPresentation) -> None:
    for x in source.objects:
        if functor.objects.get(x) not in target.objects:
            raise NotAFunctorError(f"Object {x!r} is not sent into the target")
    for a, m in source.morphisms.items():
        fa = functor.morphisms.get(a)
        if fa not in target.morphisms:
            raise NotAFunctorError(f"Arrow {a!r} is not sent into the target")
        image = target.morphisms[fa]
        if (image.src, image.dst) != (functor.objects[m.src], functor.objects[m.dst]):
            raise NotAFunctorError(f"Endpoints of {a!r} are not preserved")
    for x in source.objects:
        if functor.morphisms[source.identities[x]] != target.identities[functor.objects[x]]:
            raise NotAFunctorError(f"Identity of {x!r} is not preserved")
    for b, a in source.composable_pairs():
        lhs = functor.morphisms[source.compose(b, a)]
        rhs = target.compose(functor.morphisms[b], functor.morphisms[a])
        if lhs != rhs:
            raise NotAFunctorError(f"Composite {b!r} after {a!r} is not preserved", (b, a))


def check_wfunctor(functor: Functor, source: WCatPresentation, target: WCatPresentation, kind: str) -> AxiomReport:
    """Arrows whose image is heavier than the arrow itself"""
    _verify_functor(functor, source, target)
    report = AxiomReport(kind)
    for a in source.morphisms:
        report.record("|F(a)| <= |a|", (a,), target.weight(functor.morphisms[a]), source.weight(a))
    return report


def compose_functors(g: Functor, f: Functor) -> Functor:
    """g after f"""
    return Functor(
        {x: g.objects[y] for x, y in f.objects.items()},
        {a: g.morphisms[b] for a, b in f.morphisms.items()},
    )


def check_wtransformation(f: Functor, g: Functor, components: Mapping[Hashable, Hashable],
                          source: WCatPresentation, target: WCatPresentation) -> List[Hashable]:
    """Arrows a: x -> y of the source where G(a) . phi_x != phi_y . F(a)"""
    _verify_functor(f, source, target)
    _verify_functor(g, source, target)
    for x in source.objects:
        component = target.morphisms.get(components.get(x))
        if component is None or (component.src, component.dst) != (f.objects[x], g.objects[x]):
            raise WeightError(f"Component at {x!r} does not go from F{x!r} to G{x!r}")
    failures = []
    for a, m in source.morphisms.items():
        left = target.compose(g.morphisms[a], components[m.src])
        right = target.compose(components[m.dst], f.morphisms[a])
        if left != right:
            failures.append(a)
    return failures


# Monoidal endofunctors of the additive weights

def _fraction(value) -> Fraction:
    if isinstance(value, Weight):
        return value.value
    return Fraction(value)


@dataclass(frozen=True)
class PLFunction:
    """
    Piecewise-linear map [0, inf] -> [0, inf].

    `points` are (x, y) breakpoints with x increasing from 0; between them the
    function interpolates linearly. After the last breakpoint it grows with
    `tail_slope`, which may be inf (the value is then inf right after the
    last breakpoint). The value at inf is stored separately.
    """
    points: Tuple[Tuple[Fraction, Fraction], ...]
    tail_slope: Weight
    at_infinity: Weight

    def __post_init__(self):
        points = tuple((_fraction(x), _fraction(y)) for x, y in self.points)
        if not points or points[0][0] != 0:
            raise PLFunctionError("The first breakpoint must be at 0")
        for (x0, _), (x1, _) in zip(points, points[1:]):
            if x1 <= x0:
                raise PLFunctionError("Breakpoints must be strictly increasing")
        if any(y < 0 for _, y in points):
            raise PLFunctionError("Values must be nonnegative")
        object.__setattr__(self, "points", points)

    @classmethod
    def linear(cls, c: Weight, at_infinity: Optional[Weight] = None) -> "PLFunction":
        """s -> c * s"""
        if at_infinity is None:
            at_infinity = INF if c > ZERO else ZERO
        return cls(((Fraction(0), Fraction(0)),), c, at_infinity)

    @classmethod
    def zero_hat(cls, at_infinity: Weight) -> "PLFunction":
        """The constant 0 on finite arguments, with either value at inf"""
        return cls.linear(ZERO, at_infinity)

    @classmethod
    def from_points(cls, points, tail_slope=ZERO, at_infinity: Optional[Weight] = None) -> "PLFunction":
        if not isinstance(tail_slope, Weight):
            tail_slope = Weight(_fraction(tail_slope))
        if at_infinity is None:
            at_infinity = INF if tail_slope > ZERO else Weight(max(_fraction(y) for _, y in points))
        return cls(tuple(points), tail_slope, at_infinity)

    @property
    def slopes(self) -> List[Fraction]:
        """Slopes of the bounded segments"""
        return [(y1 - y0) / (x1 - x0) for (x0, y0), (x1, y1) in zip(self.points, self.points[1:])]

    @property
    def last(self) -> Tuple[Fraction, Fraction]:
        return self.points[-1]

    def at(self, s: Fraction) -> Weight:
        """Value at a finite argument"""
        x_last, y_last = self.last
        if s >= x_last:
            if s == x_last:
                return Weight(y_last)
            if self.tail_slope.is_infinite:
                return INF
            return Weight(y_last + self.tail_slope.value * (s - x_last))
        for (x0, y0), (x1, y1) in zip(self.points, self.points[1:]):
            if x0 <= s <= x1:
                return Weight(y0 + (y1 - y0) * (s - x0) / (x1 - x0))
        raise PLFunctionError(f"Argument out of range: {s}")

    def __call__(self, s: Weight) -> Weight:
        if s.is_infinite:
            return self.at_infinity
        return self.at(s.value)

    def slope_after(self, s: Fraction) -> Weight:
        """Slope on a right neighbourhood of s (assumes a monotone function)"""
        for (x0, y0), (x1, y1) in zip(self.points, self.points[1:]):
            if x0 <= s < x1:
                return Weight((y1 - y0) / (x1 - x0))
        return self.tail_slope

    def is_monotone(self) -> bool:
        if any(slope < 0 for slope in self.slopes):
            return False
        supremum = INF if self.tail_slope > ZERO else Weight(max(y for _, y in self.points))
        return self.at_infinity >= supremum

    def is_concave(self) -> bool:
        slopes = [Weight(s) for s in self.slopes if s >= 0] + [self.tail_slope]
        if len(slopes) != len(self.slopes) + 1:
            return False
        return all(a >= b for a, b in zip(slopes, slopes[1:]))


@dataclass
class EndofunctorReport:
    monotone: bool
    unit: bool
    subadditive: bool
    method: str  # analytic or sampled
    violations: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.monotone and self.unit and self.subadditive


def _sample_grid(lam: PLFunction) -> List[Fraction]:
    """
    Arguments at which lam(s) + lam(t) - lam(s + t) can reach its minimum.

    The defect is linear on the cells cut out by s = b, t = b and s + t = b
    over breakpoints b, and constant along the unbounded directions past the
    last breakpoint, so it is enough to test the vertices: pairs drawn from
    the breakpoints and their nonnegative differences.
    """
    breaks = [x for x, _ in lam.points]
    grid = set(breaks)
    grid.update(b - a for a, b in product(breaks, repeat=2) if b > a)
    grid.update(b / 2 for b in breaks)
    grid.add(lam.last[0] + 1)
    grid.update(g.value for g in TEST_GRID if g.is_finite)
    return sorted(grid)


def endofunctor_check(lam: PLFunction) -> EndofunctorReport:
    """
    Monotone, lam(0) <= 0 and lam(s) + lam(t) >= lam(s + t).

    Subadditivity is certified for concave functions with lam(0) = 0;
    otherwise it is checked on the breakpoints and their differences, which
    covers every vertex of the defect's linear pieces, and reported as sampled.
    """
    violations = []
    monotone = lam.is_monotone()
    if not monotone:
        violations.append("not monotone")
    unit = lam.at(Fraction(0)) == ZERO
    if not unit:
        violations.append(f"lam(0) = {lam.at(Fraction(0))} > 0")

    if unit and monotone and lam.is_concave():
        return EndofunctorReport(monotone, unit, True, "analytic", violations)

    subadditive = True
    grid = _sample_grid(lam)
    for s, t in product(grid, repeat=2):
        if wc.w_add(lam.at(s), lam.at(t)) < lam.at(s + t):
            subadditive = False
            violations.append(f"lam({s}) + lam({t}) < lam({s + t})")
            break
    return EndofunctorReport(monotone, unit, subadditive, "sampled", violations)


def compose(mu: PLFunction, lam: PLFunction) -> PLFunction:
    """mu after lam, for monotone PL functions"""
    if not (mu.is_monotone() and lam.is_monotone()):
        raise PLFunctionError("Composition needs monotone functions")

    xs = {x for x, _ in lam.points}
    mu_breaks = [x for x, _ in mu.points]
    for (x0, y0), (x1, y1) in zip(lam.points, lam.points[1:]):
        for m in mu_breaks:
            if y0 < m < y1:
                xs.add(x0 + (m - y0) * (x1 - x0) / (y1 - y0))
    x_last, y_last = lam.last
    if lam.tail_slope.is_finite and lam.tail_slope > ZERO:
        for m in mu_breaks:
            if m > y_last:
                xs.add(x_last + (m - y_last) / lam.tail_slope.value)

    # Beyond mu's last breakpoint with an infinite tail, the composite is inf.
    if mu.tail_slope.is_infinite:
        cut = _last_at_or_below(lam, mu.last[0])
        if cut is not None:
            xs = {x for x in xs if x < cut} | {cut}

    ordered = sorted(xs)
    points = []
    for x in ordered:
        value = mu(lam.at(x))
        if value.is_infinite:
            raise PLFunctionError(f"Composite is infinite at {x}")
        points.append((x, value.value))

    end = ordered[-1]
    at_end = Weight(points[-1][1])
    if end >= x_last and lam.tail_slope.is_infinite:
        beyond = mu.at_infinity
        if beyond.is_infinite:
            tail = INF
        elif beyond == at_end:
            tail = ZERO
        else:
            raise PLFunctionError("Composite jumps after its last breakpoint")
    else:
        sigma = lam.slope_after(end)
        tail = ZERO if sigma == ZERO else wc.w_mul(sigma, mu.slope_after(lam.at(end).value))

    return PLFunction(tuple(points), tail, mu(lam.at_infinity))


def _last_at_or_below(lam: PLFunction, level: Fraction) -> Optional[Fraction]:
    """Largest s with lam(s) <= level, or None when lam never exceeds it"""
    if lam.points[0][1] > level:
        return Fraction(0)
    for (x0, y0), (x1, y1) in zip(lam.points, lam.points[1:]):
        if y1 > level:
            return x0 + (level - y0) * (x1 - x0) / (y1 - y0)
    x_last, y_last = lam.last
    if lam.tail_slope == ZERO:
        return None
    if lam.tail_slope.is_infinite:
        return x_last
    return x_last + (level - y_last) / lam.tail_slope.value


# Fibered morphisms of metric spaces

@dataclass(frozen=True)
class FiberedMorphism:
    """A map with a monoidal endofunctor bounding how it stretches distances"""
    mapping: Mapping[Hashable, Hashable]
    scale: PLFunction

    def compose(self, other: "FiberedMorphism") -> "FiberedMorphism":
        """(g, mu) after (f, lam) is (gf, mu lam)"""
        return FiberedMorphism(
            {x: self.mapping[y] for x, y in other.mapping.items()},
            compose(self.scale, other.scale),
        )


def fibered_check(f, lam: PLFunction, dx: CostMatrix, dy: CostMatrix) -> AxiomReport:
    """Pairs (x, x') with lam(d_X(x, x')) < d_Y(f x, f x')"""
    mapping = f.mapping if isinstance(f, FiberedMorphism) else f
    report = AxiomReport(ADDITIVE)
    for x, x2 in product(dx.objects, repeat=2):
        report.record("d_Y(fx, fx') <= lam(d_X(x, x'))", (x, x2),
                      dy.value(mapping[x], mapping[x2]), lam(dx.value(x, x2)))
    return report
