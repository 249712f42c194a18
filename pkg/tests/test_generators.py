import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from curvint.errors import ChartDegenerate, IndexOrder, SingularEvaluation
from curvint.generators import (
    PhasePoint,
    bracket_from_gradients,
    coordinate,
    generator_ambient,
    generator_pairs,
    generator_polar,
    momentum,
    phase_map,
    poisson_bracket,
)
from curvint.geometry import SIX_SPACES, SpaceSpec, constraint_residual
from curvint.harness import SampleConfig, sample_points
from curvint.observables import kinetic

points = st.tuples(
    st.floats(0.1, 1.4),
    st.floats(0.1, 1.4),
    st.floats(0.2, 2.9),
    st.floats(0.2, 2.9),
    st.lists(st.floats(-1, 1), min_size=4, max_size=4),
)


def test_canonical_brackets():
    s = PhasePoint((0.3, 0.4, 0.5), (0.1, -0.2, 0.7))
    for i in range(3):
        for j in range(3):
            assert poisson_bracket(coordinate(i, 3), momentum(j, 3), s) == (1.0 if i == j else 0.0)
            assert poisson_bracket(coordinate(i, 3), coordinate(j, 3), s) == 0.0


@pytest.mark.parametrize("k", SIX_SPACES)
@pytest.mark.parametrize("n", [2, 3, 4])
def test_polar_generators_match_ambient(k, n):
    spec = SpaceSpec(n, *k)
    for s in sample_points(spec, SampleConfig(15, seed=n)):
        a = phase_map(spec, s)
        for mu, nu in generator_pairs(n):
            polar = generator_polar(spec, mu, nu)(s)
            ambient = generator_ambient(spec, mu, nu)(a)
            assert polar == pytest.approx(ambient, rel=1e-11, abs=1e-11)


@given(points)
@settings(max_examples=30, deadline=None)
def test_jacobi_identity(data):
    r, th, f3, f4, p = data
    spec = SpaceSpec(4, -1.0, 1.0)
    s = PhasePoint((r, th, f3, f4), tuple(p))
    A, B, C = generator_polar(spec, 0, 2), generator_polar(spec, 1, 3), generator_polar(spec, 2, 4)

    # {A, {B, C}} + cyclic, inner brackets differentiated by central differences
    h = 1e-5
    state = s.state

    def bracket_at(f, g, z):
        return poisson_bracket(f, g, PhasePoint.from_state(z))

    def grad_of_bracket(f, g):
        return np.array([(bracket_at(f, g, state + e) - bracket_at(f, g, state - e)) / (2 * h) for e in np.eye(8) * h])

    total = 0.0
    for f, g, k in ((A, B, C), (B, C, A), (C, A, B)):
        total += bracket_from_gradients(k.gradient(s), grad_of_bracket(f, g))
    assert abs(total) < 1e-6


def test_euclidean_plane_oracle():
    # k1 = 0, k2 = 1, N = 2: J01, J02 are Cartesian momenta and J12 the angular momentum
    spec = SpaceSpec(2, 0.0, 1.0)
    r, th, pr, pt = 1.3, 0.6, 0.4, -0.25
    s = PhasePoint((r, th), (pr, pt))
    px = math.cos(th) * pr - math.sin(th) * pt / r
    py = math.sin(th) * pr + math.cos(th) * pt / r
    assert generator_polar(spec, 0, 1)(s) == pytest.approx(px)
    assert generator_polar(spec, 0, 2)(s) == pytest.approx(py)
    assert generator_polar(spec, 1, 2)(s) == pytest.approx(pt)
    assert kinetic(spec)(s) == pytest.approx(0.5 * (px * px + py * py))


@pytest.mark.parametrize("k", SIX_SPACES)
def test_phase_map_lands_on_constraint_and_is_tangent(k):
    spec = SpaceSpec(3, *k)
    for s in sample_points(spec, SampleConfig(10, seed=4)):
        a = phase_map(spec, s)
        assert abs(constraint_residual(spec, a.x)) < 1e-12
        # d/dt of the constraint, divided by k1: sum_mu x_mu p_mu = 0
        x, p = a.x, a.p
        tangency = sum(x[m] * p[m] for m in range(4))
        assert abs(tangency) < 1e-12 * max(1.0, max(map(abs, p)))


def test_phase_map_degenerate_origin():
    with pytest.raises(ChartDegenerate):
        phase_map(SpaceSpec(2, 1.0, 1.0), PhasePoint((0.0, 0.3), (0.1, 0.1)))
    with pytest.raises(ValueError):
        phase_map(SpaceSpec(3, 1.0, 1.0), PhasePoint((0.3, 0.3), (0.1, 0.1)))


def test_singular_generator_evaluation():
    spec = SpaceSpec(3, 1.0, 1.0)
    with pytest.raises(SingularEvaluation):
        generator_polar(spec, 1, 2)(PhasePoint((0.5, 0.0, 1.0), (0.1, 0.1, 0.1)))


def test_generator_index_order():
    with pytest.raises(IndexOrder):
        generator_polar(SpaceSpec(3, 1, 1), 2, 2)


def test_observable_algebra():
    s = PhasePoint((0.5, 0.7), (0.2, -0.3))
    x, p = coordinate(0, 2), momentum(1, 2)
    assert (x * p + 2.0 - x)(s) == pytest.approx(0.5 * -0.3 + 2.0 - 0.5)
    assert poisson_bracket(x * x, p * x, s) == pytest.approx(0.0)
    np.testing.assert_allclose((3.0 * x * p).gradient(s), [3 * -0.3, 0, 0, 3 * 0.5])
