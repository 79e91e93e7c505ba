"""
Finite weighted sets.

A weighted set is a carrier with a weight |x| in [0, inf] for every element.
Maps between weighted sets are arbitrary; their additive weight is the
least lam with |h(y)| <= lam + |y| and their multiplicative (Lipschitz)
weight the least lam with |h(y)| <= lam * |y|. Contractions are the maps of
weight 0 (additive) or at most 1 (multiplicative).
"""

import logging
import re
from dataclasses import dataclass
from itertools import product as cartesian
from typing import Dict, Hashable, Iterable, Iterator, List, Mapping, Sequence, Tuple, Union

import weight_core as wc
from weight_core import ADDITIVE, MULTIPLICATIVE, Weight, WeightError

logger = logging.getLogger(__name__)

HOM_OBJECT_LIMIT = 10_000  # largest number of maps materialised as a hom object


class WSetFormatError(WeightError):
    """Raised for malformed weighted-set or map files"""

    def __init__(self, line_number: int, message: str):
        self.line_number = line_number
        super().__init__(f"line {line_number}: {message}")


class PartitionError(WeightError):
    """Raised when quotient classes do not partition the carrier"""
    pass


class HomSizeError(WeightError):
    """Raised when a hom object would have too many elements to materialise"""
    pass


class WSet:
    """Ordered carrier with a weight for every element"""

    __slots__ = ("_elements", "_weights")

    def __init__(self, items: Union[Mapping[Hashable, Weight], Iterable[Tuple[Hashable, Weight]]] = ()):
        pairs = list(items.items()) if isinstance(items, Mapping) else list(items)
        weights: Dict[Hashable, Weight] = {}
        for element, weight in pairs:
            if element in weights:
                raise WeightError(f"Duplicate element: {element!r}")
            if not isinstance(weight, Weight):
                raise TypeError(f"Weight of {element!r} is not a Weight: {weight!r}")
            weights[element] = weight
        self._elements = tuple(weights)
        self._weights = weights

    @property
    def elements(self) -> Tuple[Hashable, ...]:
        return self._elements

    def weight(self, element: Hashable) -> Weight:
        try:
            return self._weights[element]
        except KeyError:
            raise WeightError(f"Not an element: {element!r}") from None

    def items(self) -> List[Tuple[Hashable, Weight]]:
        return [(x, self._weights[x]) for x in self._elements]

    def __iter__(self) -> Iterator[Hashable]:
        return iter(self._elements)

    def __len__(self) -> int:
        return len(self._elements)

    def __contains__(self, element) -> bool:
        return element in self._weights

    def __eq__(self, other) -> bool:
        if not isinstance(other, WSet):
            return NotImplemented
        return self.items() == other.items()

    def __hash__(self) -> int:
        return hash(tuple(self.items()))

    def __repr__(self) -> str:
        body = ", ".join(f"{x!r}: {w}" for x, w in self.items())
        return f"<WSet({{{body}}})>"


@dataclass(frozen=True)
class WMap:
    """Total map between weighted sets; not necessarily a contraction"""
    source: WSet
    target: WSet
    assignment: Mapping[Hashable, Hashable]

    def __post_init__(self):
        for x in self.source:
            if x not in self.assignment:
                raise WeightError(f"Map is not defined on {x!r}")
            if self.assignment[x] not in self.target:
                raise WeightError(f"Image of {x!r} is not in the target: {self.assignment[x]!r}")
        object.__setattr__(self, "assignment", {x: self.assignment[x] for x in self.source})

    def __call__(self, x: Hashable) -> Hashable:
        return self.assignment[x]

    def __hash__(self) -> int:
        return hash((self.source, self.target, tuple(self.assignment.items())))


# Limits and colimits

def product(xs: Sequence[WSet]) -> WSet:
    """Cartesian product weighted by the sup of the components"""
    return WSet(
        (combo, wc.w_lattice([x.weight(c) for x, c in zip(xs, combo)], "sup"))
        for combo in cartesian(*[x.elements for x in xs])
    )


def coproduct(xs: Sequence[WSet]) -> WSet:
    return WSet(((element, i), weight) for i, x in enumerate(xs) for element, weight in x.items())


def quotient(x: WSet, classes: Iterable[Iterable[Hashable]]) -> WSet:
    """One element per class (the tuple of its members), weighted by the inf"""
    classes = [tuple(c) for c in classes]
    seen = set()
    for cls in classes:
        if not cls:
            raise PartitionError("Empty class")
        for element in cls:
            if element not in x:
                raise PartitionError(f"Not an element: {element!r}")
            if element in seen:
                raise PartitionError(f"Element in two classes: {element!r}")
            seen.add(element)
    if len(seen) != len(x):
        missing = [e for e in x if e not in seen]
        raise PartitionError(f"Elements not covered: {missing!r}")

    order = {element: i for i, element in enumerate(x)}
    return WSet(
        (tuple(sorted(cls, key=order.__getitem__)), wc.w_lattice([x.weight(e) for e in cls], "inf"))
        for cls in classes
    )


def subset(x: WSet, elements: Iterable[Hashable]) -> WSet:
    """Restriction of the weight to a subset"""
    keep = set(elements)
    for element in keep:
        x.weight(element)
    return WSet((e, w) for e, w in x.items() if e in keep)


def constant_weight(elements: Iterable[Hashable], lam: Weight) -> WSet:
    """A plain set with every element weighted lam (inf: discrete, 0: codiscrete)"""
    return WSet((e, lam) for e in elements)


# Tensors and hom weights

def tensor(x: WSet, y: WSet, kind: str) -> WSet:
    op = _tensor_op(kind)
    return WSet(((a, b), op(wa, wb)) for a, wa in x.items() for b, wb in y.items())


def _tensor_op(kind: str):
    if kind == ADDITIVE:
        return wc.w_add
    if kind == MULTIPLICATIVE:
        return wc.w_mul
    raise ValueError(f"Unknown tensor kind: {kind}")


def map_weight(h: WMap, kind: str) -> Weight:
    """sup over the source of hom(|y|, |h(y)|); the empty map weighs 0"""
    hom = wc.internal_hom(kind)
    return wc.w_lattice(
        [hom(h.source.weight(y), h.target.weight(h(y))) for y in h.source], "sup"
    )


def ball(x: WSet, lam: Weight) -> List[Hashable]:
    return [e for e, w in x.items() if w <= lam]


def is_contraction(h: WMap) -> bool:
    return all(h.target.weight(h(y)) <= h.source.weight(y) for y in h.source)


def compose(g: WMap, f: WMap) -> WMap:
    """g after f"""
    if f.target != g.source:
        raise WeightError("Maps are not composable")
    return WMap(f.source, g.target, {x: g(f(x)) for x in f.source})


def identity(x: WSet) -> WMap:
    return WMap(x, x, {e: e for e in x})


def all_maps(y: WSet, z: WSet) -> Iterator[WMap]:
    for images in cartesian(z.elements, repeat=len(y)):
        yield WMap(y, z, dict(zip(y.elements, images)))


def contractions(y: WSet, z: WSet) -> List[WMap]:
    return [h for h in all_maps(y, z) if is_contraction(h)]


def hom_object(y: WSet, z: WSet, kind: str, limit: int = HOM_OBJECT_LIMIT) -> WSet:
    """
    All maps Y -> Z as a weighted set.

    An element is the tuple of images of Y's carrier in order; its weight is
    the map weight of the given kind.
    """
    count = len(z) ** len(y)
    if count > limit:
        raise HomSizeError(f"Hom object would have {count} elements (limit {limit})")
    logger.debug(f"Materialising {kind} hom object with {count} maps")
    return WSet((tuple(h(e) for e in y), map_weight(h, kind)) for h in all_maps(y, z))


def map_of_element(y: WSet, z: WSet, element: Tuple[Hashable, ...]) -> WMap:
    return WMap(y, z, dict(zip(y.elements, element)))


def curry(f: WMap, x: WSet, y: WSet, kind: str, limit: int = HOM_OBJECT_LIMIT) -> WMap:
    """Transpose of f: X (x) Y -> Z as a map X -> Hom(Y, Z)"""
    expected = tensor(x, y, kind)
    if f.source != expected:
        raise WeightError("Map source is not the tensor of the given sets")
    hom = hom_object(y, f.target, kind, limit)
    return WMap(x, hom, {a: tuple(f((a, b)) for b in y) for a in x})


# Text formats

_COMMENT_RE = re.compile(r"\s*(#.*)?$")


def _content_lines(text: str) -> Iterator[Tuple[int, str]]:
    for number, line in enumerate(text.splitlines(), start=1):
        if _COMMENT_RE.match(line):
            continue
        yield number, line.strip()


def parse_wset(text: str) -> WSet:
    """One `<id> <weight-literal>` per line"""
    pairs = []
    seen = set()
    for number, line in _content_lines(text):
        fields = line.split()
        if len(fields) != 2:
            raise WSetFormatError(number, f"expected '<id> <weight>', got {line!r}")
        element, literal = fields
        if element in seen:
            raise WSetFormatError(number, f"duplicate element {element!r}")
        seen.add(element)
        try:
            pairs.append((element, wc.parse_weight(literal)))
        except wc.WeightParseError as e:
            raise WSetFormatError(number, str(e)) from e
    return WSet(pairs)


def format_wset(x: WSet) -> str:
    return "".join(f"{_format_id(e)}\t{w}\n" for e, w in x.items())


def _format_id(element: Hashable) -> str:
    if isinstance(element, tuple):
        return "(" + ",".join(_format_id(e) for e in element) + ")"
    return str(element)


def parse_wmap(text: str, source: WSet, target: WSet) -> WMap:
    """One `<src-id> -> <dst-id>` per line"""
    assignment = {}
    for number, line in _content_lines(text):
        parts = [p.strip() for p in line.split("->")]
        if len(parts) != 2 or not all(parts):
            raise WSetFormatError(number, f"expected '<src> -> <dst>', got {line!r}")
        src, dst = parts
        if src not in source:
            raise WSetFormatError(number, f"unknown source element {src!r}")
        if dst not in target:
            raise WSetFormatError(number, f"unknown target element {dst!r}")
        if src in assignment:
            raise WSetFormatError(number, f"{src!r} mapped twice")
        assignment[src] = dst
    missing = [x for x in source if x not in assignment]
    if missing:
        raise WeightError(f"Map is not total, missing {missing!r}")
    return WMap(source, target, assignment)
