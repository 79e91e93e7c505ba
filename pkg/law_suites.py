"""
Executable law suites.

Each suite checks a family of algebraic laws on exhaustive grids or on
samples drawn from random.Random(seed), and returns one LawResult per law
with its pass/fail counts and the first failing instance. Operations are
looked up through their modules at call time, so a patched implementation
is what gets checked.
"""

import logging
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Callable, Dict, List, Optional

import impedance as imp
import linlog
import wab
import wcat
import weight_core as wc
import wset as ws
from weight_core import ADDITIVE, INF, KINDS, MULTIPLICATIVE, ONE, TEST_GRID, ZERO, Weight, WeightError

logger = logging.getLogger(__name__)

DEFAULT_SAMPLES = 500
DEFAULT_SEED = 0

FINITE_GRID = [g for g in TEST_GRID if g.is_finite]


class UnknownSuiteError(WeightError):
    """Raised for a suite name that is not registered"""

    def __init__(self, name: str):
        self.name = name
        super().__init__(f"Unknown law suite: {name} (known: {', '.join(SUITES)})")


@dataclass
class LawResult:
    name: str
    passed: int = 0
    failed: int = 0
    first_failure: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.failed == 0


class SuiteRun:
    """Collects law results in the order laws are first mentioned"""

    def __init__(self, suite: str):
        self.suite = suite
        self._results: Dict[str, LawResult] = {}

    def law(self, name: str) -> LawResult:
        key = f"{self.suite}/{name}"
        if key not in self._results:
            self._results[key] = LawResult(key)
        return self._results[key]

    def check(self, name: str, ok: bool, instance) -> None:
        result = self.law(name)
        if ok:
            result.passed += 1
            return
        result.failed += 1
        if result.first_failure is None:
            result.first_failure = str(instance)

    def absorb(self, name: str, report: wc.AxiomReport) -> None:
        result = self.law(name)
        result.failed += len(report.violations)
        result.passed += report.checked - len(report.violations)
        if report.violations and result.first_failure is None:
            result.first_failure = str(report.violations[0])

    @property
    def results(self) -> List[LawResult]:
        return list(self._results.values())


def _fmt(*values) -> str:
    return "(" + ", ".join(str(v) for v in values) + ")"


# Weights

def residuation(rng: random.Random, samples: int) -> SuiteRun:
    run = SuiteRun("residuation")
    for lam, mu, nu in product(TEST_GRID, repeat=3):
        instance = f"lam={lam} mu={mu} nu={nu}"
        run.check("additive", (wc.w_add(lam, mu) >= nu) == (lam >= wc.hom_plus(mu, nu)), instance)
        run.check("multiplicative", (wc.w_mul(lam, mu) >= nu) == (lam >= wc.hom_dot(mu, nu)), instance)
    return run


def _random_formula(rng: random.Random, depth: int) -> linlog.Formula:
    if depth == 0 or rng.random() < 0.3:
        if rng.random() < 0.2:
            return linlog.Constant(rng.choice(sorted(linlog.CONSTANT_VALUES)))
        return linlog.Atom(rng.choice("xy"))
    if rng.random() < 0.2:
        return linlog.Dual(_random_formula(rng, depth - 1))
    node = rng.choice(sorted(linlog.BINARY_SYMBOLS, key=lambda n: n.__name__))
    return node(_random_formula(rng, depth - 1), _random_formula(rng, depth - 1))


def star_autonomy(rng: random.Random, samples: int) -> SuiteRun:
    run = SuiteRun("star-autonomy")
    for mu, lam in product(TEST_GRID, repeat=2):
        run.check("hom(mu, lam) = (mu . lam*)*",
                  wc.hom_dot(mu, lam) == wc.w_inv(wc.w_mul(mu, wc.w_inv(lam))), _fmt(mu, lam))
    for _ in range(max(1, samples // 5)):
        a, b = _random_formula(rng, 2), _random_formula(rng, 2)
        lollipop, par = linlog.Lollipop(a, b), linlog.Par(linlog.Dual(a), b)
        for env in linlog.grid_environments(lollipop):
            run.check("A -o B = A^ @ B", linlog.evaluate(lollipop, env) == linlog.evaluate(par, env),
                      f"{linlog.format_formula(lollipop)} at {env}")
    return run


def undetermined_forms(rng: random.Random, samples: int) -> SuiteRun:
    run = SuiteRun("undetermined-forms")
    run.check("0.inf = inf", wc.w_mul(ZERO, INF) == INF, "0.inf")
    run.check("0 bullet inf = 0", wc.w_bullet(ZERO, INF) == ZERO, "0 bullet inf")
    run.check("inf - inf = 0", wc.hom_plus(INF, INF) == ZERO, "inf - inf")
    run.check("0/0 = 0", wc.hom_dot(ZERO, ZERO) == ZERO, "0/0")
    run.check("inf/inf = 0", wc.hom_dot(INF, INF) == ZERO, "inf/inf")
    for nu in TEST_GRID:
        if nu > ZERO:
            run.check("v/0 = inf", wc.hom_dot(ZERO, nu) == INF, f"{nu}/0")
        run.check("v/inf = 0", wc.hom_dot(INF, nu) == ZERO, f"{nu}/inf")
    return run


def semiring(rng: random.Random, samples: int) -> SuiteRun:
    run = SuiteRun("semiring")
    for lam, mu, nu in product(TEST_GRID, repeat=3):
        t = _fmt(lam, mu, nu)
        run.check("+ associative", wc.w_add(lam, wc.w_add(mu, nu)) == wc.w_add(wc.w_add(lam, mu), nu), t)
        run.check(". associative", wc.w_mul(lam, wc.w_mul(mu, nu)) == wc.w_mul(wc.w_mul(lam, mu), nu), t)
        run.check(". distributes over +",
                  wc.w_mul(lam, wc.w_add(mu, nu)) == wc.w_add(wc.w_mul(lam, mu), wc.w_mul(lam, nu)), t)
    for lam, mu in product(TEST_GRID, repeat=2):
        t = _fmt(lam, mu)
        run.check("+ commutative", wc.w_add(lam, mu) == wc.w_add(mu, lam), t)
        run.check(". commutative", wc.w_mul(lam, mu) == wc.w_mul(mu, lam), t)
    for lam in TEST_GRID:
        run.check("units", wc.w_add(ZERO, lam) == lam and wc.w_mul(ONE, lam) == lam, _fmt(lam))
        run.check("involution", wc.w_inv(wc.w_inv(lam)) == lam, _fmt(lam))
    return run


def quantale(rng: random.Random, samples: int) -> SuiteRun:
    run = SuiteRun("quantale")
    for _ in range(samples):
        lam = rng.choice(TEST_GRID)
        family = [rng.choice(TEST_GRID) for _ in range(rng.randint(0, 4))]
        join = wc.w_lattice(family, "inf")
        for name, op in (("+", wc.w_add), (".", wc.w_mul)):
            run.check(f"{name} preserves joins", op(lam, join) == wc.w_lattice([op(lam, s) for s in family], "inf"),
                      f"lam={lam} family={[str(s) for s in family]}")
    return run


def truth(rng: random.Random, samples: int) -> SuiteRun:
    run = SuiteRun("truth")
    for lam in TEST_GRID:
        p, q = wc.truth_classify(lam)
        run.check("Q <= P", q <= p, _fmt(lam))
        for b in (0, 1):
            run.check("P -| M", (p <= b) == (lam >= wc.truth_embed(b)), _fmt(lam, b))
            run.check("M -| Q", (b <= q) == (wc.truth_embed(b) >= lam), _fmt(lam, b))
    return run


def transform(rng: random.Random, samples: int) -> SuiteRun:
    run = SuiteRun("transform")
    for lam in FINITE_GRID:
        for target in (wc.PROBABILISTIC, wc.RELATIVE):
            back = wc.transform_back(wc.transform(lam, target))
            run.check("round trip within 1e-9", abs(back.value - float(lam)) <= 1e-9, f"{lam} via {target}")
    for mu, nu in product(FINITE_GRID, repeat=2):
        p_hom = wc.transform(wc.hom_plus(mu, nu), wc.PROBABILISTIC).value
        expected = wc.prob_hom(wc.transform(mu, wc.PROBABILISTIC).value, wc.transform(nu, wc.PROBABILISTIC).value)
        run.check("p(hom(mu, nu)) = 1 ^ p(nu)/p(mu)", abs(p_hom - expected) <= 1e-12, _fmt(mu, nu))
    return run


def linlog_models(rng: random.Random, samples: int) -> SuiteRun:
    run = SuiteRun("linlog")
    for text in ("x @ x^", "x -o x", "(x * y)^ -o (x^ @ y^)"):
        result = linlog.valid(linlog.parse(text))
        run.check(f"{text} valid", result.valid, result.describe())
    refuted = linlog.valid(linlog.parse("x * x^"))
    run.check("x * x^ refuted at 0 with inf",
              not refuted.valid and refuted.env == {"x": ZERO} and refuted.value == INF, refuted.describe())
    for _ in range(max(1, samples // 5)):
        a, b = _random_formula(rng, 2), _random_formula(rng, 2)
        left, right = linlog.Dual(linlog.Tensor(a, b)), linlog.Par(linlog.Dual(a), linlog.Dual(b))
        for env in linlog.grid_environments(linlog.Tensor(a, b)):
            run.check("(A * B)^ = A^ @ B^", linlog.evaluate(left, env) == linlog.evaluate(right, env),
                      f"{linlog.format_formula(left)} at {env}")
    return run


# Weighted sets

def _random_wset(rng: random.Random, prefix: str, max_size: int = 3, min_size: int = 0) -> ws.WSet:
    return ws.WSet((f"{prefix}{i}", rng.choice(TEST_GRID)) for i in range(rng.randint(min_size, max_size)))


def _random_map(rng: random.Random, source: ws.WSet, target: ws.WSet) -> ws.WMap:
    return ws.WMap(source, target, {x: rng.choice(target.elements) for x in source})


def wset_isometry(rng: random.Random, samples: int) -> SuiteRun:
    run = SuiteRun("wset-isometry")
    for _ in range(samples):
        kind = rng.choice((ADDITIVE, MULTIPLICATIVE))
        x, y = _random_wset(rng, "x"), _random_wset(rng, "y")
        z = _random_wset(rng, "z", min_size=1)
        f = _random_map(rng, ws.tensor(x, y, kind), z)
        g = ws.curry(f, x, y, kind)
        run.check(f"|f| = |curry f| ({kind})", ws.map_weight(f, kind) == ws.map_weight(g, kind),
                  f"X={x!r} Y={y!r} Z={z!r}")
    return run


def wset_balls(rng: random.Random, samples: int) -> SuiteRun:
    run = SuiteRun("wset-balls")
    for _ in range(max(1, samples // 5)):
        y, z = _random_wset(rng, "y"), _random_wset(rng, "z")
        expected = sorted(tuple(h(e) for e in y) for h in ws.contractions(y, z))
        for kind in (ADDITIVE, MULTIPLICATIVE):
            found = sorted(ws.ball(ws.hom_object(y, z, kind), wc.monoidal_unit(kind)))
            run.check("unit ball of hom = contractions", found == expected, f"{kind} Y={y!r} Z={z!r}")
        elements = [f"s{i}" for i in range(rng.randint(0, 3))]
        discrete, codiscrete = ws.constant_weight(elements, INF), ws.constant_weight(elements, ZERO)
        run.check("discrete -| underlying", len(ws.contractions(discrete, z)) == len(z) ** len(elements), repr(z))
        run.check("underlying -| codiscrete", len(ws.contractions(z, codiscrete)) == len(elements) ** len(z), repr(z))
    return run


# Weighted categories

def _random_graph(rng: random.Random) -> wcat.WGraph:
    objects = [f"v{i}" for i in range(rng.randint(1, 6))]
    edges = [(rng.choice(objects), rng.choice(objects), rng.choice(TEST_GRID)) for _ in range(rng.randint(0, 12))]
    return wcat.WGraph(objects, edges)


def _simple_path_costs(graph: wcat.WGraph, kind: str) -> Dict[tuple, Weight]:
    """Cheapest simple path between every pair, simple cycle on the diagonal"""
    op, unit = wc.monoidal_op(kind), wc.monoidal_unit(kind)
    edges: Dict[tuple, Weight] = {}
    for src, dst, w in graph.edges:
        edges[(src, dst)] = min(edges.get((src, dst), INF), w)
    successors: Dict[str, List[str]] = {x: [] for x in graph.objects}
    for src, dst in edges:
        successors[src].append(dst)

    best: Dict[tuple, Weight] = {}
    for origin in graph.objects:
        best[(origin, origin)] = unit

        def walk(node, cost, visited):
            for nxt in successors[node]:
                total = op(cost, edges[(node, nxt)])
                if nxt == origin:
                    best[(origin, origin)] = min(best[(origin, origin)], total)
                elif nxt not in visited:
                    best[(origin, nxt)] = min(best.get((origin, nxt), INF), total)
                    walk(nxt, total, visited | {nxt})

        walk(origin, unit, {origin})
    return best


def closure(rng: random.Random, samples: int) -> SuiteRun:
    run = SuiteRun("closure")
    for _ in range(max(1, samples // 5)):
        graph = _random_graph(rng)
        for kind in KINDS:
            costs = wcat.best_cost(graph, kind)
            oracle = _simple_path_costs(graph, kind)
            op = wc.monoidal_op(kind)
            for x, y in product(graph.objects, repeat=2):
                i, j = costs.index(x), costs.index(y)
                value = costs.values[i][j]
                between = [k for k in graph.objects
                           if oracle.get((x, k), INF).is_finite and oracle.get((k, y), INF).is_finite]
                if kind == MULTIPLICATIVE and any(oracle[(k, k)] < ONE for k in between):
                    attained = oracle.get((x, y), INF) == ZERO or any(oracle[(k, k)] == ZERO for k in between)
                    run.check("collapses below multiplicative sub-unit cycles",
                              value == ZERO and costs.attained[i][j] == attained, f"{kind} d({x},{y})={value}")
                elif costs.attained[i][j]:
                    run.check("equals path enumeration", value == oracle.get((x, y), INF),
                              f"{kind} d({x},{y})={value} edges={[(s, d, str(w)) for s, d, w in graph.edges]}")
                else:
                    run.check("attained away from sub-unit cycles", False, f"{kind} d({x},{y})={value}")
            for x, y, z in product(graph.objects, repeat=3):
                run.check(f"triangle law ({kind})",
                          costs.value(x, z) <= op(costs.value(x, y), costs.value(y, z)), f"{x} {y} {z}")
            run.absorb(f"cost category is weighted ({kind})", wcat.check_wcat(wcat.cost_category(costs), kind))
    return run


def _random_concave(rng: random.Random) -> wcat.PLFunction:
    slopes = sorted((Fraction(rng.randint(0, 8), rng.randint(1, 2)) for _ in range(rng.randint(1, 4))), reverse=True)
    points, x, y = [(Fraction(0), Fraction(0))], Fraction(0), Fraction(0)
    for slope in slopes[:-1]:
        step = Fraction(rng.randint(1, 3))
        x, y = x + step, y + slope * step
        points.append((x, y))
    return wcat.PLFunction.from_points(points, tail_slope=slopes[-1])


def endofunctor(rng: random.Random, samples: int) -> SuiteRun:
    run = SuiteRun("endofunctor")
    run.check("2s is monoidal", wcat.endofunctor_check(wcat.PLFunction.linear(Weight(2))).passed, "2s")
    shift = wcat.PLFunction.from_points([(0, 1)], tail_slope=1)
    run.check("s + 1 is rejected", not wcat.endofunctor_check(shift).passed, "s + 1")
    infinite = wcat.PLFunction.linear(INF)
    for at_infinity in (ZERO, INF):
        zero_hat = wcat.PLFunction.zero_hat(at_infinity)
        composite = wcat.compose(infinite, zero_hat)
        run.check("inf-hat after 0-hat = 0-hat", all(composite(s) == zero_hat(s) for s in TEST_GRID),
                  f"0-hat(inf)={at_infinity}")
    for _ in range(max(1, samples // 5)):
        lam, mu = _random_concave(rng), _random_concave(rng)
        run.check("concave functions are monoidal", wcat.endofunctor_check(lam).passed, repr(lam))
        composite = wcat.compose(mu, lam)
        run.check("composites are monoidal", wcat.endofunctor_check(composite).passed, repr((mu, lam)))
        run.check("composite agrees pointwise", all(composite(s) == mu(lam(s)) for s in TEST_GRID), repr((mu, lam)))
    return run


# Weighted groups and rings

def tensor(rng: random.Random, samples: int) -> SuiteRun:
    run = SuiteRun("tensor")
    z = wab.wz()
    small = wab.SearchBound(max_parts=2, max_coefficient=2)
    factors = list(product(range(-2, 3), repeat=2))
    for k in range(-2, 3):
        best = ZERO if k == 0 else INF
        for count in (1, 2):
            for terms in product(factors, repeat=count):
                if sum(a * b for a, b in terms) == k:
                    cost = wc.w_sum(wc.w_mul(wab.int_weight(a), wab.int_weight(b)) for a, b in terms)
                    best = min(best, cost)
        result = wab.tensor_weight(z, z, {("e", "e"): k}, small)
        run.check("wZ (x) wZ matches brute force", result.exhaustive and result.weight == best, f"k={k}")

    positive = [g for g in TEST_GRID if g != ZERO]
    for _ in range(samples):
        a = wab.FreeWAb(ws.WSet({"a1": rng.choice(positive), "a2": rng.choice(TEST_GRID)}))
        b = wab.FreeWAb(ws.WSet({"b1": rng.choice(TEST_GRID), "b2": rng.choice(positive)}))
        va = wab.GroupElement({x: rng.randint(-2, 2) for x in a.basis})
        vb = wab.GroupElement({y: rng.randint(-2, 2) for y in b.basis})
        xi = {(x, y): va.coefficient(x) * vb.coefficient(y) for x in a.basis for y in b.basis}
        bound = wc.w_lattice([
            wc.w_mul(wab.elem_weight(a, va), wab.elem_weight(b, vb)),
            wc.w_mul(wab.opposite_weight(a, va), wab.opposite_weight(b, vb)),
        ], "inf")
        run.check("|a (x) b| <= min(|a||b|, |-a||-b|)", wab.tensor_weight(a, b, xi, small).weight <= bound,
                  f"a={wab.format_element(va)} b={wab.format_element(vb)}")
    return run


def symmetrization(rng: random.Random, samples: int) -> SuiteRun:
    run = SuiteRun("symmetrization")
    z = wab.wz()
    for k in range(-10, 11):
        result = wab.symmetrized_weight(z, wab.GroupElement({"e": k}))
        run.check("absolute value on wZ", result.weight == Weight(abs(k)), f"k={k} got {result.weight}")
    witness = wab.product_symmetrization_witness()
    run.check("products are not preserved",
              witness.symmetrized_product == Weight(2) and witness.product_of_symmetrized == ONE, str(witness))
    return run


def ring(rng: random.Random, samples: int) -> SuiteRun:
    run = SuiteRun("ring")
    for name, sample in (("wZ", wab.wz_ring_sample()), ("|Z|", wab.abs_ring_sample())):
        run.absorb(f"ring axioms {name}", wab.algebra_weight_check(sample))
        run.absorb(f"tensor chain {name}", wab.tensor_chain_check(sample))
    return run


def _random_free(rng: random.Random, prefix: str, size: int) -> wab.FreeWAb:
    return wab.FreeWAb(ws.WSet({f"{prefix}{i}": rng.choice(TEST_GRID) for i in range(size)}))


def additive_category(rng: random.Random, samples: int) -> SuiteRun:
    run = SuiteRun("additive-category")
    for _ in range(max(1, samples // 100)):
        groups = {"A": _random_free(rng, "a", 1), "B": _random_free(rng, "b", 2)}
        run.absorb("Lipschitz matrices", wcat.check_weighted_additive(wcat.matrix_category(groups)))
    for _ in range(samples):
        b, c = _random_free(rng, "b", 2), _random_free(rng, "c", 1)
        weights = _fmt(*(b.basis.weight(x) for x in b.basis), c.basis.weight("c0"))
        for h in wab.hom_matrices(b, c, 1):
            run.check("contracting iff in the unit ball of Hom",
                      wab.is_contracting(h) == (wab.hom_weight(h) <= ONE), f"weights={weights} h={h.matrix}")
        v = wab.GroupElement({"b0": rng.randint(-2, 2), "b1": rng.randint(-2, 2)})
        run.check("points are the unit ball",
                  wab.is_contracting(wab.point_of(b, v)) == (wab.elem_weight(b, v) <= ONE),
                  f"weights={weights} v={wab.format_element(v)}")
    return run


# Impedances

def _random_gaussian(rng: random.Random) -> imp.ProjValue:
    if rng.random() < 0.1:
        return rng.choice([imp.PC_ZERO, imp.PC_ONE, imp.PC_INF, imp.PC_I])
    return imp.gaussian(Fraction(rng.randint(-6, 6), rng.randint(1, 4)), Fraction(rng.randint(-6, 6), rng.randint(1, 4)))


def impedance(rng: random.Random, samples: int) -> SuiteRun:
    run = SuiteRun("impedance")
    run.absorb("cubical identities on fixed values",
               imp.cubical_check([imp.PC_ZERO, imp.PC_ONE, imp.PC_INF, imp.PC_I, imp.gaussian(1, 1)]))
    for _ in range(samples):
        x, y, z = _random_gaussian(rng), _random_gaussian(rng), _random_gaussian(rng)
        run.absorb("cubical identities on samples", imp.cubical_check([x, y]))
        run.check("distributivity",
                  imp.pc_mul(x, imp.pc_add(y, z)) == imp.pc_add(imp.pc_mul(x, y), imp.pc_mul(x, z)), _fmt(x, y, z))
        rx, ry = (v if imp.is_right_half(v) else imp.pc_neg(v) for v in (x, y))
        run.check("C+ closed under sum, inverse, harmonic sum",
                  all(imp.is_right_half(v) for v in (imp.pc_add(rx, ry), imp.pc_inv(rx), imp.pc_parallel(rx, ry))),
                  _fmt(rx, ry))
    square = imp.pc_mul(imp.PC_I, imp.PC_I)
    run.check("C+ not closed under product", not imp.is_right_half(square), f"i.i = {square}")
    one = Fraction(1)
    resonance = imp.Series((imp.Leaf("L", one), imp.Leaf("C", one)))
    run.check("LC resonance", imp.reduce_network(resonance, one) == imp.PC_ZERO, "L=1 C=1 omega=1")
    halves = imp.Parallel((imp.Leaf("R", Fraction(2)), imp.Leaf("R", Fraction(2))))
    run.check("equal resistors in parallel", imp.reduce_network(halves, one) == imp.PC_ONE, "R=2 || R=2")
    return run


SUITES: Dict[str, Callable[[random.Random, int], SuiteRun]] = {
    "residuation": residuation,
    "star-autonomy": star_autonomy,
    "undetermined-forms": undetermined_forms,
    "semiring": semiring,
    "quantale": quantale,
    "truth": truth,
    "transform": transform,
    "linlog": linlog_models,
    "wset-isometry": wset_isometry,
    "wset-balls": wset_balls,
    "closure": closure,
    "tensor": tensor,
    "symmetrization": symmetrization,
    "ring": ring,
    "additive-category": additive_category,
    "impedance": impedance,
    "endofunctor": endofunctor,
}


def run_suite(name: str, samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED) -> List[LawResult]:
    """Run one suite, or every suite in order for `all`"""
    if name == "all":
        results = []
        for suite in SUITES:
            results.extend(run_suite(suite, samples, seed))
        return results
    if name not in SUITES:
        raise UnknownSuiteError(name)
    start = time.time()
    results = SUITES[name](random.Random(seed), samples).results
    failed = sum(1 for r in results if not r.ok)
    logger.info(f"Suite {name}: {len(results)} laws, {failed} failing, {time.time() - start:.2f}s")
    return results


def format_results(results: List[LawResult]) -> str:
    lines = []
    for r in results:
        lines.append(f"{r.name}\t{r.passed}\t{r.failed}")
        if r.first_failure is not None:
            lines.append(f"  first failure: {r.first_failure}")
    return "\n".join(lines) + "\n" if lines else ""
