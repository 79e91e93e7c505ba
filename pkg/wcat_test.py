import random
from fractions import Fraction
from itertools import product

import networkx as nx
import pytest

import wab
import weight_core as wc
import wcat
from wab import FreeWAb
from wcat import FiberedMorphism, Functor, Morphism, PLFunction, WCatPresentation, WGraph
from weight_core import ADDITIVE, INF, KINDS, MULTIPLICATIVE, ONE, SUP, TEST_GRID, ZERO, Weight
from wset import WSet

CHAIN = "# chain\nx y 2\ny z 3\n"


def thin_category(objects, weights):
    """Category with at most one arrow per ordered pair; `weights` must be transitively closed"""
    morphisms = {pair: Morphism(pair[0], pair[1], w) for pair, w in weights.items()}
    identities = {x: (x, x) for x in objects}
    composition = {
        ((y, z), (x, y2)): (x, z)
        for (x, y2) in weights for (y, z) in weights if y == y2
    }
    return WCatPresentation(objects, morphisms, identities, composition)


def chain_category(composite_weight):
    weights = {
        ("x", "x"): ZERO, ("y", "y"): ZERO, ("z", "z"): ZERO,
        ("x", "y"): Weight(2), ("y", "z"): Weight(3), ("x", "z"): composite_weight,
    }
    return thin_category(["x", "y", "z"], weights)


def random_graph(rng, max_objects=6, max_edges=12):
    objects = [f"v{i}" for i in range(rng.randint(1, max_objects))]
    edges = [
        (rng.choice(objects), rng.choice(objects), rng.choice(TEST_GRID))
        for _ in range(rng.randint(0, max_edges))
    ]
    return WGraph(objects, edges)


def oracle_graph(graph):
    g = nx.DiGraph()
    g.add_nodes_from(graph.objects)
    for src, dst, w in graph.edges:
        if not g.has_edge(src, dst) or w < g[src][dst]["weight"]:
            g.add_edge(src, dst, weight=w)
    return g


def path_cost(g, path, kind):
    op = wc.monoidal_op(kind)
    cost = wc.monoidal_unit(kind)
    for u, v in zip(path, path[1:]):
        cost = op(cost, g[u][v]["weight"])
    return cost


def cheapest_simple(g, x, y, kind):
    """Minimum over simple paths, and over simple cycles for the diagonal"""
    if x == y:
        best = wc.monoidal_unit(kind)
        for cycle in nx.simple_cycles(g):
            if x in cycle:
                start = cycle.index(x)
                loop = cycle[start:] + cycle[:start] + [x]
                best = min(best, path_cost(g, loop, kind))
        return best
    return min((path_cost(g, p, kind) for p in nx.all_simple_paths(g, x, y)), default=INF)


def sub_unit_cycle_through(g, k):
    return any(
        k in cycle and path_cost(g, cycle + [cycle[0]], MULTIPLICATIVE) < ONE
        for cycle in nx.simple_cycles(g)
    )


def zero_cycle_through(g, k):
    return any(
        k in cycle and path_cost(g, cycle + [cycle[0]], MULTIPLICATIVE) == ZERO
        for cycle in nx.simple_cycles(g)
    )


class TestGraphFormat:
    def test_parse(self):
        g = wcat.parse_graph("# comment\nb a 1/2\n\nc\na b inf # trailing\n")
        assert g.objects == ("b", "a", "c")
        assert g.edges == (("b", "a", Weight(1, 2)), ("a", "b", INF))

    @pytest.mark.parametrize("text", ["x y\n", "x y z 1\n", "x y -2\n", "x y abc\n"])
    def test_errors_carry_line(self, text):
        with pytest.raises(wcat.GraphFormatError) as info:
            wcat.parse_graph("x y 1\n" + text)
        assert info.value.line_number == 2

    def test_empty(self):
        costs = wcat.best_cost(wcat.parse_graph(""), ADDITIVE)
        assert costs.objects == ()
        assert costs.format_tsv() == ""


class TestBestCost:
    @pytest.mark.parametrize("kind,expected", [(ADDITIVE, Weight(5)), (MULTIPLICATIVE, Weight(6)), (SUP, Weight(3))])
    def test_chain(self, kind, expected):
        costs = wcat.best_cost(wcat.parse_graph(CHAIN), kind)
        assert costs.value("x", "z") == expected
        assert costs.value("z", "x") == INF

    @pytest.mark.parametrize("kind", KINDS)
    def test_diagonal_is_the_unit(self, kind):
        costs = wcat.best_cost(wcat.parse_graph(CHAIN), kind)
        assert all(costs.value(x, x) == wc.monoidal_unit(kind) for x in costs.objects)

    def test_parallel_edges_take_the_cheapest(self):
        g = WGraph(["a", "b"], [("a", "b", Weight(4)), ("a", "b", ONE)])
        assert wcat.best_cost(g, ADDITIVE).value("a", "b") == ONE

    def test_sub_unit_cycle_collapses_to_zero(self):
        g = WGraph(["a", "b", "c"], [("a", "b", Weight(2)), ("b", "b", Weight(1, 2)), ("b", "c", Weight(3))])
        costs = wcat.best_cost(g, MULTIPLICATIVE)
        assert costs.value("a", "c") == ZERO
        assert not costs.attained[costs.index("a")][costs.index("c")]
        assert costs.value("c", "a") == INF
        assert costs.value("a", "a") == ONE

    def test_zero_cycle_attains_zero(self):
        g = WGraph(["a", "b", "c"], [("a", "b", Weight(2)), ("b", "b", ZERO), ("b", "c", Weight(3))])
        costs = wcat.best_cost(g, MULTIPLICATIVE)
        assert costs.value("a", "c") == ZERO
        assert costs.attained[costs.index("a")][costs.index("c")]
        assert costs.value("b", "b") == ZERO and costs.attained[costs.index("b")][costs.index("b")]

    def test_format_tsv(self):
        costs = wcat.best_cost(wcat.parse_graph(CHAIN), SUP)
        assert costs.format_tsv() == "\tx\ty\tz\nx\t0\t2\t3\ny\tinf\t0\t3\nz\tinf\tinf\t0\n"

    @pytest.mark.parametrize("kind", KINDS)
    def test_matches_path_enumeration(self, kind):
        rng = random.Random(KINDS.index(kind))
        for _ in range(100):
            graph = random_graph(rng)
            oracle = oracle_graph(graph)
            costs = wcat.best_cost(graph, kind)
            for x, y in product(graph.objects, repeat=2):
                i, j = costs.index(x), costs.index(y)
                value, attained = costs.values[i][j], costs.attained[i][j]
                exact = cheapest_simple(oracle, x, y, kind)
                between = [
                    k for k in graph.objects
                    if cheapest_simple(oracle, x, k, kind).is_finite and cheapest_simple(oracle, k, y, kind).is_finite
                ]
                if kind == MULTIPLICATIVE and any(sub_unit_cycle_through(oracle, k) for k in between):
                    assert value == ZERO
                    assert attained == (exact == ZERO or any(zero_cycle_through(oracle, k) for k in between))
                else:
                    assert attained and value == exact

    @pytest.mark.parametrize("kind", KINDS)
    def test_triangle_law(self, kind):
        rng = random.Random(10 + KINDS.index(kind))
        op = wc.monoidal_op(kind)
        for _ in range(100):
            costs = wcat.best_cost(random_graph(rng), kind)
            for x, y, z in product(costs.objects, repeat=3):
                assert costs.value(x, z) <= op(costs.value(x, y), costs.value(y, z))

    def test_parallel_rows_agree_with_inline(self, monkeypatch):
        rng = random.Random(5)
        objects = [f"v{i}" for i in range(8)]
        edges = [(rng.choice(objects), rng.choice(objects), rng.choice(TEST_GRID)) for _ in range(20)]
        graph = WGraph(objects, edges)
        inline = wcat.best_cost(graph, ADDITIVE, workers=1)
        monkeypatch.setattr(wcat, "CLOSURE_PARALLEL_MIN_OBJECTS", 1)
        assert wcat.best_cost(graph, ADDITIVE, workers=4) == inline


class TestCategories:
    def test_single_identity(self):
        c = thin_category(["x"], {("x", "x"): ZERO})
        assert wcat.check_wcat(c, ADDITIVE).passed

    def test_identity_of_weight_one(self):
        c = thin_category(["x"], {("x", "x"): ONE})
        assert wcat.check_wcat(c, MULTIPLICATIVE).passed
        assert not wcat.check_wcat(c, ADDITIVE).passed

    def test_heavy_composite(self):
        report = wcat.check_wcat(chain_category(Weight(6)), ADDITIVE)
        assert [(v.instance, v.lhs, v.rhs) for v in report.violations] == [
            ((("y", "z"), ("x", "y")), Weight(6), Weight(5))
        ]
        assert wcat.check_wcat(chain_category(Weight(5)), ADDITIVE).passed

    def test_invalid_presentations(self):
        with pytest.raises(wcat.InvalidCategoryError):
            WCatPresentation(["x"], {"a": Morphism("x", "x", ZERO)}, {}, {})
        with pytest.raises(wcat.InvalidCategoryError):
            WCatPresentation(["x"], {"1": Morphism("x", "x", ZERO)}, {"x": "1"}, {})
        with pytest.raises(wcat.InvalidCategoryError):
            thin_category(["x", "y"], {("x", "x"): ZERO, ("x", "y"): ONE})

    @pytest.mark.parametrize("kind", KINDS)
    def test_cost_category_is_a_weighted_category(self, kind):
        rng = random.Random(20)
        for _ in range(20):
            costs = wcat.best_cost(random_graph(rng, max_objects=4, max_edges=8), kind)
            assert wcat.check_wcat(wcat.cost_category(costs), kind).passed


class TestWeightedAdditive:
    GROUPS = {
        "Z": wab.wz(),
        "P": FreeWAb(WSet({"a": Weight(2), "b": Weight(1, 2)})),
    }

    def test_lipschitz_matrices_are_weighted_additive(self):
        report = wcat.check_weighted_additive(wcat.matrix_category(self.GROUPS))
        assert report.passed
        assert report.checked > 0

    def test_zero_and_infinite_generators(self):
        groups = {"Z": wab.wz(), "N": FreeWAb(WSet({"n": ZERO, "m": INF}))}
        assert wcat.check_weighted_additive(wcat.matrix_category(groups)).passed

    def test_entry_max_weight_is_not_submultiplicative(self):
        def entry_max(h):
            return Weight(max((abs(k) for row in h.matrix for k in row), default=0))

        report = wcat.check_weighted_additive(wcat.matrix_category({"P": wab.free_on_set(["a", "b"])}, weight=entry_max))
        assert not report.passed
        assert {v.axiom for v in report.violations} == {"|gf| <= |f||g|"}
        assert any(v.lhs == Weight(2) and v.rhs == ONE for v in report.violations)

    def test_heavy_identity(self):
        def doubled(h):
            return wc.w_mul(Weight(2), wab.hom_weight(h))

        report = wcat.check_weighted_additive(wcat.matrix_category({"Z": wab.wz()}, weight=doubled))
        assert [(v.axiom, v.instance) for v in report.violations] == [("|1_x| <= 1", ("Z",))]

    def test_missing_hom_sets_are_empty(self):
        sample = wcat.matrix_category({"Z": wab.wz()})
        assert sample.arrows("Z", "Q") == ()


class TestFunctors:
    def test_identity_functor(self):
        c = chain_category(Weight(5))
        identity = Functor({x: x for x in c.objects}, {a: a for a in c.morphisms})
        assert wcat.check_wfunctor(identity, c, c, ADDITIVE).passed

    def test_doubling_fails_on_positive_arrows(self):
        c = chain_category(Weight(5))
        doubled = thin_category(c.objects, {a: wc.w_mul(Weight(2), c.weight(a)) for a in c.morphisms})
        identity = Functor({x: x for x in c.objects}, {a: a for a in c.morphisms})
        report = wcat.check_wfunctor(identity, c, doubled, ADDITIVE)
        assert sorted(v.instance[0] for v in report.violations) == [("x", "y"), ("x", "z"), ("y", "z")]

    def test_collapse_to_a_point(self):
        c = chain_category(Weight(5))
        point = thin_category(["*"], {("*", "*"): ZERO})
        collapse = Functor({x: "*" for x in c.objects}, {a: ("*", "*") for a in c.morphisms})
        assert wcat.check_wfunctor(collapse, c, point, ADDITIVE).passed

    def test_not_a_functor_names_the_composite(self):
        idempotent = WCatPresentation(
            ["x"], {"1": Morphism("x", "x", ZERO), "e": Morphism("x", "x", ONE)}, {"x": "1"},
            {("1", "1"): "1", ("1", "e"): "e", ("e", "1"): "e", ("e", "e"): "e"},
        )
        flip = WCatPresentation(
            ["y"], {"1": Morphism("y", "y", ZERO), "t": Morphism("y", "y", ONE)}, {"y": "1"},
            {("1", "1"): "1", ("1", "t"): "t", ("t", "1"): "t", ("t", "t"): "1"},
        )
        with pytest.raises(wcat.NotAFunctorError) as info:
            wcat.check_wfunctor(Functor({"x": "y"}, {"1": "1", "e": "t"}), idempotent, flip, ADDITIVE)
        assert info.value.composite == ("e", "e")

    def test_composites_of_weighted_functors(self):
        c = chain_category(Weight(5))
        lighter = thin_category(c.objects, {a: wc.w_mul(Weight(1, 2), c.weight(a)) for a in c.morphisms})
        point = thin_category(["*"], {("*", "*"): ZERO})
        f = Functor({x: x for x in c.objects}, {a: a for a in c.morphisms})
        g = Functor({x: "*" for x in c.objects}, {a: ("*", "*") for a in c.morphisms})
        assert wcat.check_wfunctor(f, c, lighter, ADDITIVE).passed
        assert wcat.check_wfunctor(g, lighter, point, ADDITIVE).passed
        assert wcat.check_wfunctor(wcat.compose_functors(g, f), c, point, ADDITIVE).passed

    def test_naturality(self):
        c = chain_category(Weight(5))
        identity = Functor({x: x for x in c.objects}, {a: a for a in c.morphisms})
        components = {x: (x, x) for x in c.objects}
        assert wcat.check_wtransformation(identity, identity, components, c, c) == []


class TestEndofunctors:
    def test_linear(self):
        report = wcat.endofunctor_check(PLFunction.linear(Weight(2)))
        assert report.passed and report.method == "analytic"

    def test_shift_fails_at_zero(self):
        report = wcat.endofunctor_check(PLFunction.from_points([(0, 1)], tail_slope=1))
        assert not report.unit and not report.passed

    def test_truncation(self):
        lam = PLFunction.from_points([(0, 0), (1, 1)])
        assert lam(Weight(5)) == ONE and lam(INF) == ONE
        report = wcat.endofunctor_check(lam)
        assert report.passed and report.method == "analytic"

    def test_convex_is_sampled(self):
        square_ish = PLFunction.from_points([(0, 0), (1, 1)], tail_slope=3)
        report = wcat.endofunctor_check(square_ish)
        assert report.method == "sampled" and not report.subadditive

    def test_failure_between_breakpoints(self):
        lam = PLFunction.from_points([(0, 0), (50, 50), (Fraction(501, 10), Fraction(503, 10))])
        s = Fraction(626, 25)
        assert wc.w_add(lam.at(s), lam.at(s)) < lam.at(2 * s)
        report = wcat.endofunctor_check(lam)
        assert report.method == "sampled"
        assert not report.subadditive and not report.passed

    def test_staircase_is_subadditive(self):
        lam = PLFunction.from_points([(0, 0), (1, 1), (2, 1), (3, 2)])
        report = wcat.endofunctor_check(lam)
        assert report.method == "sampled" and report.passed

    def test_non_monotone(self):
        bump = PLFunction.from_points([(0, 0), (1, 2), (2, 1)])
        assert not wcat.endofunctor_check(bump).monotone
        with pytest.raises(wcat.PLFunctionError):
            wcat.compose(bump, bump)

    def test_invalid_breakpoints(self):
        with pytest.raises(wcat.PLFunctionError):
            PLFunction.from_points([(1, 0)])
        with pytest.raises(wcat.PLFunctionError):
            PLFunction.from_points([(0, 0), (0, 1)])

    @pytest.mark.parametrize("at_infinity", [ZERO, INF])
    def test_infinite_after_zero_is_zero(self, at_infinity):
        zero_hat = PLFunction.zero_hat(at_infinity)
        composite = wcat.compose(PLFunction.linear(INF), zero_hat)
        assert [composite(s) for s in TEST_GRID] == [zero_hat(s) for s in TEST_GRID]

    def test_infinite_tail_is_cut(self):
        mu = PLFunction.from_points([(0, 0), (1, 1)], tail_slope=INF)
        composite = wcat.compose(mu, PLFunction.linear(ONE))
        assert [composite(s) for s in TEST_GRID] == [mu(s) for s in TEST_GRID]

    def test_composites_stay_monoidal(self):
        functions = [
            PLFunction.linear(Weight(2)),
            PLFunction.from_points([(0, 0), (1, 1)]),
            PLFunction.from_points([(0, 0), (1, 3), (4, 6)], tail_slope=Fraction(1, 2)),
        ]
        for mu, lam in product(functions, repeat=2):
            composite = wcat.compose(mu, lam)
            assert wcat.endofunctor_check(composite).passed
            assert all(composite(s) == mu(lam(s)) for s in TEST_GRID)


class TestFiberedMorphisms:
    def test_identity(self):
        dx = wcat.best_cost(wcat.parse_graph("a b 1\nb a 1\n"), ADDITIVE)
        identity = {"a": "a", "b": "b"}
        assert wcat.fibered_check(identity, PLFunction.linear(ONE), dx, dx).passed

    def test_lipschitz_certificate(self):
        dx = wcat.best_cost(wcat.parse_graph("a b 1\nb a 1\n"), ADDITIVE)
        dy = wcat.best_cost(wcat.parse_graph("p q 2\nq p 2\n"), ADDITIVE)
        f = FiberedMorphism({"a": "p", "b": "q"}, PLFunction.linear(Weight(2)))
        assert wcat.fibered_check(f, f.scale, dx, dy).passed
        report = wcat.fibered_check(f.mapping, PLFunction.linear(ONE), dx, dy)
        assert sorted(v.instance for v in report.violations) == [("a", "b"), ("b", "a")]

    def test_composition(self):
        dx = wcat.best_cost(wcat.parse_graph("a b 1\nb a 1\n"), ADDITIVE)
        dz = wcat.best_cost(wcat.parse_graph("u v 6\nv u 6\n"), ADDITIVE)
        f = FiberedMorphism({"a": "p", "b": "q"}, PLFunction.linear(Weight(2)))
        g = FiberedMorphism({"p": "u", "q": "v"}, PLFunction.linear(Weight(3)))
        gf = g.compose(f)
        assert gf.mapping == {"a": "u", "b": "v"}
        assert wcat.fibered_check(gf, gf.scale, dx, dz).passed
