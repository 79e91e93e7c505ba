import random
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

import impedance as imp
from impedance import PC_I, PC_INF, PC_ONE, PC_ZERO, Leaf, Parallel, Series, gaussian
from weight_core import ADDITIVE, MULTIPLICATIVE

SMALL = [Fraction(n, d) for n in range(-3, 4) for d in (1, 2)]
GRID = [gaussian(a, b) for a, b in product(SMALL, repeat=2)] + [PC_INF]
RIGHT_HALF = [z for z in GRID if imp.is_right_half(z)]

gaussians = st.builds(
    gaussian,
    st.fractions(min_value=-5, max_value=5, max_denominator=6),
    st.fractions(min_value=-5, max_value=5, max_denominator=6),
)
proj_values = st.one_of(gaussians, st.just(PC_INF), st.just(PC_ZERO), st.just(PC_ONE))


def random_gaussian(rng):
    if rng.random() < 0.1:
        return rng.choice([PC_ZERO, PC_ONE, PC_INF])
    return gaussian(Fraction(rng.randint(-6, 6), rng.randint(1, 4)), Fraction(rng.randint(-6, 6), rng.randint(1, 4)))


def random_tree(rng, depth=4, budget=None):
    budget = budget if budget is not None else [10]
    if depth == 0 or budget[0] <= 1 or rng.random() < 0.35:
        budget[0] -= 1
        return Leaf(rng.choice(imp.ELEMENT_KINDS), Fraction(rng.randint(1, 6), rng.randint(1, 3)))
    children = []
    for _ in range(rng.randint(1, 3)):
        if budget[0] <= 0:
            break
        children.append(random_tree(rng, depth - 1, budget))
    if not children:
        budget[0] -= 1
        return Leaf("R", Fraction(1))
    return (Series if rng.random() < 0.5 else Parallel)(tuple(children))


def oracle(net, omega):
    """n-ary reduction on (re, im) pairs, None for the point at infinity"""
    if isinstance(net, Leaf):
        if net.kind == "R":
            return (net.value, Fraction(0))
        if net.kind == "L":
            return (Fraction(0), omega * net.value)
        return (Fraction(0), -1 / (omega * net.value))
    parts = [oracle(child, omega) for child in net.children]
    if isinstance(net, Series):
        if any(p is None for p in parts):
            return None
        return (sum(p[0] for p in parts), sum(p[1] for p in parts))
    if any(p == (0, 0) for p in parts):
        return (Fraction(0), Fraction(0))
    finite = [p for p in parts if p is not None]
    if not finite:
        return None
    re = sum(p[0] / (p[0] ** 2 + p[1] ** 2) for p in finite)
    im = sum(-p[1] / (p[0] ** 2 + p[1] ** 2) for p in finite)
    if re == 0 and im == 0:
        return None
    n = re * re + im * im
    return (re / n, -im / n)


def as_pair(z):
    return None if z.infinite else (z.re, z.im)


class TestArithmetic:
    def test_examples(self):
        assert imp.pc_add(gaussian(1, 1), gaussian(2, -1)) == gaussian(3)
        assert imp.pc_add(gaussian(5, 2), PC_INF) == PC_INF
        assert imp.pc_mul(PC_ZERO, PC_INF) == PC_INF
        assert imp.pc_inv(gaussian(1, 1)) == gaussian("1/2", "-1/2")
        assert imp.pc_inv(PC_ZERO) == PC_INF and imp.pc_inv(PC_INF) == PC_ZERO

    def test_parallel(self):
        z = gaussian(3, -2)
        assert imp.pc_parallel(gaussian(2), gaussian(2)) == PC_ONE
        assert imp.pc_parallel(z, PC_INF) == z
        assert imp.pc_parallel(z, PC_ZERO) == PC_ZERO
        assert imp.pc_parallel(z, imp.pc_neg(z)) == PC_INF

    def test_bullet_keeps_the_real_convention(self):
        assert imp.pc_bullet(PC_ZERO, PC_INF) == PC_ZERO
        assert imp.pc_bullet(gaussian(2), PC_INF) == PC_INF

    def test_parallel_matches_the_involution(self):
        rng = random.Random(0)
        for _ in range(500):
            z, w = random_gaussian(rng), random_gaussian(rng)
            assert imp.pc_parallel(z, w) == imp.pc_inv(imp.pc_add(imp.pc_inv(z), imp.pc_inv(w)))

    @given(proj_values, proj_values, proj_values)
    def test_semiring_laws(self, x, y, z):
        assert imp.pc_add(imp.pc_add(x, y), z) == imp.pc_add(x, imp.pc_add(y, z))
        assert imp.pc_mul(imp.pc_mul(x, y), z) == imp.pc_mul(x, imp.pc_mul(y, z))
        assert imp.pc_mul(x, imp.pc_add(y, z)) == imp.pc_add(imp.pc_mul(x, y), imp.pc_mul(x, z))
        assert imp.pc_add(x, PC_ZERO) == x and imp.pc_mul(x, PC_ONE) == x

    def test_right_half_plane_closure(self):
        for z, w in product(RIGHT_HALF, repeat=2):
            assert imp.is_right_half(imp.pc_add(z, w))
            assert imp.is_right_half(imp.pc_parallel(z, w))
        assert all(imp.is_right_half(imp.pc_inv(z)) for z in RIGHT_HALF)
        assert imp.pc_mul(PC_I, PC_I) == gaussian(-1)
        assert not imp.is_right_half(imp.pc_mul(PC_I, PC_I))


class TestCubicalStructure:
    def test_sample(self):
        samples = [PC_ZERO, PC_ONE, PC_INF, PC_I, gaussian(1, 1)]
        report = imp.cubical_check(samples)
        assert report.passed and report.checked == 2 + 4 * 5 + 2 * 25

    def test_random_samples(self):
        rng = random.Random(1)
        samples = [random_gaussian(rng) for _ in range(500)]
        partners = samples[1:] + samples[:1]
        report = imp.cubical_check(samples, pairs=zip(samples, partners))
        assert report.passed and report.checked == 2 + 4 * 500 + 2 * 500
        assert imp.cubical_check(samples[:40]).passed
        assert all(imp.pc_inv(imp.pc_inv(z)) == z for z in samples)


class TestOrders:
    def test_examples(self):
        assert imp.cplane_leq(gaussian(5, 2), gaussian(3, 2), ADDITIVE)
        assert not imp.cplane_leq(gaussian(5, 2), gaussian(3, 1), ADDITIVE)
        assert imp.cplane_leq(gaussian(2, 2), gaussian(1, 1), MULTIPLICATIVE)
        assert not imp.cplane_leq(gaussian(2, 2), gaussian(1, -1), MULTIPLICATIVE)
        for z in GRID:
            assert imp.cplane_leq(PC_INF, z, ADDITIVE)
            assert imp.cplane_leq(PC_INF, z, MULTIPLICATIVE)
            assert imp.cplane_leq(z, PC_ZERO, MULTIPLICATIVE)

    def test_additive_hom_examples(self):
        assert imp.cplane_hom(gaussian(3, 2), gaussian(5, 2), ADDITIVE) == gaussian(2)
        assert imp.cplane_hom(gaussian(5), gaussian(3), ADDITIVE) == PC_ZERO
        assert imp.cplane_hom(PC_INF, gaussian(1), ADDITIVE) is imp.UNDEFINED
        with pytest.raises(imp.DomainViolationError):
            imp.cplane_hom(gaussian(-1), gaussian(1), ADDITIVE)

    def test_multiplicative_hom_examples(self):
        w = gaussian(2, -3)
        assert imp.cplane_hom(w, w, MULTIPLICATIVE) == PC_ONE
        assert imp.cplane_hom(PC_ZERO, PC_ZERO, MULTIPLICATIVE) == PC_ZERO
        assert imp.cplane_hom(PC_INF, PC_INF, MULTIPLICATIVE) == PC_ZERO
        assert imp.cplane_hom(PC_ZERO, w, MULTIPLICATIVE) == PC_INF

    def test_additive_residuation(self):
        small = [gaussian(a, b) for a in range(0, 3) for b in range(-1, 2)] + [PC_INF]
        for z, w, w2 in product(small, repeat=3):
            hom = imp.cplane_hom(w, w2, ADDITIVE)
            if hom is imp.UNDEFINED:
                continue
            assert imp.cplane_leq(imp.pc_add(z, w), w2, ADDITIVE) == imp.cplane_leq(z, hom, ADDITIVE)

    def test_multiplicative_residuation(self):
        rays = [PC_ONE, gaussian(1, 1), gaussian(0, -1)]
        scales = [Fraction(1, 2), Fraction(1), Fraction(3)]
        for ray in rays:
            same_argument = [imp.pc_mul(gaussian(s), ray) for s in scales]
            candidates = [PC_ZERO, PC_INF] + [gaussian(a, b) for a in range(-2, 3) for b in range(-2, 3)]
            for z, w, w2 in product(candidates, same_argument, same_argument):
                hom = imp.cplane_hom(w, w2, MULTIPLICATIVE)
                assert imp.cplane_leq(imp.pc_mul(z, w), w2, MULTIPLICATIVE) == \
                    imp.cplane_leq(z, hom, MULTIPLICATIVE)


class TestNetworks:
    def test_elements(self):
        assert imp.element_impedance("R", Fraction(5), Fraction(1)) == gaussian(5)
        assert imp.element_impedance("L", Fraction(1), Fraction(2)) == gaussian(0, 2)
        assert imp.element_impedance("C", Fraction(2), Fraction(2)) == gaussian(0, "-1/4")
        with pytest.raises(imp.NetworkError):
            imp.element_impedance("R", Fraction(0), Fraction(1))
        with pytest.raises(imp.NetworkError):
            imp.element_impedance("L", Fraction(1), Fraction(0))

    def test_examples(self):
        one = Fraction(1)
        assert imp.reduce_network(Parallel((Leaf("R", Fraction(2)), Leaf("R", Fraction(2)))), one) == PC_ONE
        assert imp.reduce_network(Series((Leaf("R", one), Leaf("C", one))), one) == gaussian(1, -1)
        assert imp.reduce_network(Series((Leaf("L", one), Leaf("C", one))), one) == PC_ZERO

    def test_matches_direct_oracle(self):
        rng = random.Random(2)
        for _ in range(100):
            net = random_tree(rng)
            omega = Fraction(rng.randint(1, 3), rng.randint(1, 2))
            assert as_pair(imp.reduce_network(net, omega)) == oracle(net, omega)

    def test_flattening(self):
        a, b, c = Leaf("R", Fraction(1)), Leaf("L", Fraction(2)), Leaf("C", Fraction(1, 3))
        omega = Fraction(3, 2)
        for node in (Series, Parallel):
            nested = imp.reduce_network(node((node((a, b)), c)), omega)
            assert nested == imp.reduce_network(node((a, b, c)), omega)
            assert nested == imp.reduce_network(node((a, node((b, c)))), omega)

    def test_parse_network(self):
        net = imp.parse_network_json('{"series": [{"R": "3/2"}, {"parallel": [{"L": 1}, {"C": "0.25"}]}]}')
        assert net == Series((Leaf("R", Fraction(3, 2)), Parallel((Leaf("L", Fraction(1)), Leaf("C", Fraction(1, 4))))))

    @pytest.mark.parametrize("text", [
        '{"R": "1", "L": "1"}',
        '{}',
        '{"series": []}',
        '{"Q": "1"}',
        '{"R": "-2"}',
        '{"R": "x"}',
        'not json',
    ])
    def test_malformed_networks(self, text):
        with pytest.raises(imp.NetworkError):
            imp.parse_network_json(text)

    def test_formatting(self):
        assert imp.format_exact(PC_ONE) == "1 + 0 i"
        assert imp.format_exact(gaussian(1, -1)) == "1 - 1 i"
        assert imp.format_exact(gaussian("1/2", "-3/4")) == "1/2 - 3/4 i"
        assert imp.format_exact(PC_INF) == "inf"
        assert imp.format_approx(gaussian("1/2", "-3/4")) == "0.5 - 0.75 i"
