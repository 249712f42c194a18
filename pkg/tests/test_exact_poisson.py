import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from curvint import exact_poisson as ep
from curvint.errors import IndexOrder
from curvint.generators import PhasePoint, generator_ambient, phase_map
from curvint.geometry import SpaceSpec

P = ep.ParamPoly


def random_poly(rng, n, terms=4, degree=3):
    out = P(n)
    width = 2 + 2 * (n + 1)
    for _ in range(terms):
        e = [0] * width
        for _ in range(rng.randint(1, degree)):
            e[rng.randrange(2, width)] += 1
        out = out + P(n, {tuple(e): Fraction(rng.randint(-5, 5), rng.randint(1, 4))})
    return out


def test_canonical_brackets():
    n = 3
    for i in range(n + 1):
        for j in range(n + 1):
            b = ep.poly_bracket(P.x(n, i), P.p(n, j))
            assert b == (P.constant(n, 1) if i == j else P(n))


@given(st.integers(0, 10_000))
@settings(max_examples=25)
def test_bracket_is_antisymmetric_and_satisfies_jacobi(seed):
    rng = random.Random(seed)
    f, g, h = (random_poly(rng, 2) for _ in range(3))
    assert (ep.poly_bracket(f, g) + ep.poly_bracket(g, f)).is_zero()
    jac = (
        ep.poly_bracket(f, ep.poly_bracket(g, h))
        + ep.poly_bracket(g, ep.poly_bracket(h, f))
        + ep.poly_bracket(h, ep.poly_bracket(f, g))
    )
    assert jac.is_zero()


def test_leibniz_rule():
    rng = random.Random(5)
    f, g, h = (random_poly(rng, 2) for _ in range(3))
    assert (ep.poly_bracket(f * g, h) - f * ep.poly_bracket(g, h) - g * ep.poly_bracket(f, h)).is_zero()


def test_arithmetic_and_substitution():
    n = 2
    k1, x1, p2 = P.k1(n), P.x(n, 1), P.p(n, 2)
    f = (k1 * x1 + 3) ** 2 - 9
    assert f.total_degree() == 2
    assert f.evaluate(2, 0, [0, Fraction(1, 2), 0], [0, 0, 0]) == 1 + 6
    assert f.substitute(0, 5).is_zero()
    assert (x1 * p2).diff(2 + 1) == p2
    assert (3 - x1) + x1 == P.constant(n, 3)


def test_golden_text_is_graded_lex():
    n = 2
    f = P.x(n, 0) * P.p(n, 1) * 2 + P.k2(n) * P.x(n, 2) - Fraction(1, 3)
    lines = f.to_text().splitlines()
    # degree counts k1, k2 too; ties broken by descending exponent vector
    assert lines == ["1 * k1^0 k2^1 * x2^1", "2 * k1^0 k2^0 * x0^1 p1^1", "-1/3 * k1^0 k2^0 * 1"]


@pytest.mark.parametrize("n", [2, 3, 4])
def test_certificates(n):
    assert ep.verify_structure_constants(n).passed
    assert ep.verify_casimir(n).passed
    assert ep.verify_vector_rep(n).passed


def test_generator_polynomials_agree_with_numeric_realization():
    spec = SpaceSpec(3, Fraction(1, 2), -2)
    s = PhasePoint((0.4, 0.3, 1.1), (0.2, -0.5, 0.3))
    a = phase_map(SpaceSpec(3, 0.5, -2.0), s)
    for mu, nu in ep.generator_pairs(3):
        exact = ep.realize_generator(3, mu, nu).evaluate(spec.kappa1, spec.kappa2, a.x, a.p)
        assert float(exact) == pytest.approx(generator_ambient(SpaceSpec(3, 0.5, -2.0), mu, nu)(a), abs=1e-14)


def test_mutated_generator_is_detected():
    n = 3

    def realize(mu, nu):
        J = ep.realize_generator(n, mu, nu)
        return J + P.x(n, 0) * P.p(n, 0) if (mu, nu) == (1, 3) else J

    report = ep.verify_structure_constants(n, realize)
    assert not report.passed
    assert "failures" in report.golden_text().splitlines()[0]


def test_wrong_structure_constant_is_detected():
    n = 2

    # realize J12 with the wrong contraction coefficient k1 instead of k2
    def realize(mu, nu):
        if (mu, nu) == (1, 2):
            return P.x(n, 1) * P.p(n, 2) - P.k1(n) * P.x(n, 2) * P.p(n, 1)
        return ep.realize_generator(n, mu, nu)

    assert not ep.verify_structure_constants(n, realize).passed


def test_vector_rep_mutation_is_detected():
    n = 2
    mats = {pair: ep.rep_matrix_poly(n, *pair) for pair in ep.generator_pairs(n)}
    mats[(0, 1)][0][1] = -mats[(0, 1)][0][1]
    assert not ep.verify_vector_rep(n, mats).passed


def test_expected_bracket_table():
    assert ep.expected_bracket((0, 1), (2, 3)) is None
    assert ep.expected_bracket((0, 1), (0, 2)) == (1, 1, 0, (1, 2))
    assert ep.expected_bracket((0, 2), (0, 1)) == (-1, 1, 0, (1, 2))
    assert ep.expected_bracket((1, 2), (2, 3)) == (-1, 0, 0, (1, 3))
    with pytest.raises(IndexOrder):
        ep.realize_generator(3, 3, 1)
