import math
import time

import numpy as np
import pytest

from gradpush.errors import NumericalBreakdownError
from gradpush.graphs.generators import (
    complete_graph,
    directed_cycle,
    directed_cycle_graph,
    generate_alternating_stars,
    generate_cycle_plus_random,
)
from gradpush.graphs.model import build_mixing_matrix
from gradpush.graphs.spectral import SpectralConstants, general_bounds, spectral_constants
from gradpush.protocol.bounds import corollary2_cumulative_bound, disagreement_bound, lemma1_bound
from gradpush.protocol.pushsum import (
    PushSumState,
    consensus_residual,
    l1_norm,
    network_average,
    pushsum_step,
    ratio_bound,
)
from tests.conftest import small_sequences


def run_unperturbed(seq, x0, steps):
    state = PushSumState.initial(x0)
    for t in range(steps):
        state = pushsum_step(state, build_mixing_matrix(seq.graph(t)), np.zeros_like(state.x))
    return state


def test_single_node_is_fixed():
    A = build_mixing_matrix(complete_graph(1))
    state = PushSumState.initial(np.array([2.5]))
    for _ in range(5):
        state = pushsum_step(state, A, np.zeros((1, 1)))
    assert state.z[0, 0] == 2.5


def test_cycle_converges_to_average():
    x0 = np.array([3.0, 0.0, 0.0])
    state = run_unperturbed(directed_cycle(3), x0, 200)
    np.testing.assert_allclose(state.z.ravel(), 1.0, atol=1e-12)

    # oráculo por potencias de la matriz
    A = build_mixing_matrix(directed_cycle_graph(3)).dense()
    A10 = np.linalg.matrix_power(A, 10)
    expected = (A10 @ x0) / (A10 @ np.ones(3))
    np.testing.assert_allclose(run_unperturbed(directed_cycle(3), x0, 10).z.ravel(), expected, rtol=1e-12)


def test_consensus_is_fixed_point():
    seq = generate_cycle_plus_random(7, seed=2)
    state = run_unperturbed(seq, np.full((7, 2), 1.25), 30)
    np.testing.assert_allclose(state.z, 1.25, rtol=0, atol=1e-14)
    assert consensus_residual(state) == pytest.approx(0.0, abs=1e-14)


def test_consensus_residual_after_one_step():
    A = build_mixing_matrix(directed_cycle_graph(3))
    state = pushsum_step(PushSumState.initial(np.array([3.0, 0.0, 0.0])), A, np.zeros((3, 1)))
    # y sigue en 1 (matriz doblemente estocástica): z = A x = (1.5, 1.5, 0)
    np.testing.assert_allclose(state.z.ravel(), [1.5, 1.5, 0.0])
    assert consensus_residual(state) == pytest.approx(1.0)
    np.testing.assert_allclose(network_average(state), [1.0])


def test_underflow_is_reported():
    A = build_mixing_matrix(directed_cycle_graph(2))
    state = PushSumState(x=np.ones((2, 1)), y=np.array([1e-320, 1e-320]), w=np.ones((2, 1)), z=np.ones((2, 1)))
    with pytest.raises(NumericalBreakdownError):
        pushsum_step(state, A, np.zeros((2, 1)))


def test_dimension_mismatch():
    A = build_mixing_matrix(directed_cycle_graph(3))
    with pytest.raises(ValueError):
        pushsum_step(PushSumState.initial(np.zeros(4)), A, np.zeros((4, 1)))


@pytest.mark.parametrize("seq", small_sequences(), ids=lambda s: s.name)
def test_unperturbed_exactness(seq, rng):
    start = time.perf_counter()
    x0 = rng.standard_normal((seq.n, 2))
    state = run_unperturbed(seq, x0, 500)
    assert np.max(np.abs(state.z - x0.mean(axis=0))) < 1e-9
    assert time.perf_counter() - start < 1.0


@pytest.mark.parametrize("seq", small_sequences(), ids=lambda s: s.name)
def test_conservation_suite(seq, rng):
    """Σy = n, y >= δ, masa de x por columnas y combinación convexa de los cocientes."""
    B = seq.declared_B or 1
    delta, _ = general_bounds(seq.n, B)
    state = PushSumState.initial(rng.standard_normal((seq.n, 3)))
    for t in range(2000):
        eps = rng.uniform(-1.0, 1.0, size=state.x.shape)
        previous_mass = state.x.sum(axis=0)
        bound = ratio_bound(state)
        state = pushsum_step(state, build_mixing_matrix(seq.graph(t)), eps)
        assert state.y.sum() == pytest.approx(seq.n, abs=1e-12)
        assert state.y.min() >= delta
        np.testing.assert_allclose(state.x.sum(axis=0), previous_mass + eps.sum(axis=0), rtol=1e-10, atol=1e-10)
        assert np.max(np.linalg.norm(state.z, axis=1)) <= bound * (1 + 1e-12)


def test_geometric_contraction_rate():
    seq = directed_cycle(5)
    constants = spectral_constants(seq, B=1, horizon=10)
    x0 = np.arange(5.0)
    residuals = [consensus_residual(run_unperturbed(seq, x0, t)) for t in (40, 45)]
    assert residuals[1] / residuals[0] <= constants.lam ** 5 * (1 + 1e-3)


# --- cotas -----------------------------------------------------------------------------------

HALF = SpectralConstants(delta=1.0, lam=0.5, method="empirical_sigma2")


def test_lemma1_examples():
    assert lemma1_bound(0.0, [0.0] * 5, HALF, 5) == 0.0
    assert lemma1_bound(1.0, [0.0, 0.0, 0.0], HALF, 3) == pytest.approx(1.0)
    c, x0, t = 0.3, 2.0, 7
    closed = 8.0 * (0.5**t * x0 + c * (1 - 0.5**t) / 0.5)
    assert lemma1_bound(x0, [c] * t, HALF, t) == pytest.approx(closed)
    with pytest.raises(ValueError):
        lemma1_bound(1.0, [0.0], HALF, 0)


def test_disagreement_bound_matches_lemma1(rng):
    history = rng.uniform(0, 2, size=40)
    series = disagreement_bound(1.5, history, HALF)
    for t in (1, 10, 40):
        assert series.values[t - 1] == pytest.approx(lemma1_bound(1.5, history, HALF, t))
    assert series.log_cumulative == pytest.approx(math.log(series.values.sum()))
    assert np.all(series.values >= 0)


def test_corollary2_examples():
    assert corollary2_cumulative_bound(0.0, 0.0, 3, HALF, 10) == 0.0
    # 8·(λ/(1-λ))·1 + 8·1·2/(1-λ)·(1 + ln 1)
    assert corollary2_cumulative_bound(1.0, 1.0, 2, HALF, 1) == pytest.approx(40.0)
    D, n = 1.0, 2
    low = corollary2_cumulative_bound(1.0, D, n, HALF, math.e)
    high = corollary2_cumulative_bound(1.0, D, n, HALF, math.e**2)
    assert high - low == pytest.approx(8 * D * n / (1.0 * 0.5))


def adversarial_trial(seq, constants, steps, rng):
    state = PushSumState.initial(rng.uniform(-5, 5, size=(seq.n, 1)))
    x0_l1 = l1_norm(state.x)
    history = []
    violations = 0
    for t in range(steps):
        # perturbaciones acotadas de signo alterno concentradas en un nodo
        eps = np.zeros_like(state.x)
        eps[rng.integers(seq.n)] = (-1) ** t * rng.uniform(0, 1)
        state = pushsum_step(state, build_mixing_matrix(seq.graph(t)), eps)
        if t >= 1 and consensus_residual(state) > lemma1_bound(x0_l1, history, constants, t) * (1 + 1e-12):
            violations += 1
        history.append(l1_norm(eps))
    return violations


def lemma1_cases():
    return [
        (directed_cycle(3), 1),
        (generate_alternating_stars(5, 1, 4), 1),
        (generate_cycle_plus_random(5, seed=8), 1),
    ]


@pytest.mark.parametrize("case", range(3))
def test_lemma1_soundness_fast(case, rng):
    seq, B = lemma1_cases()[case]
    constants = spectral_constants(seq, B, 200)
    for _ in range(5):
        assert adversarial_trial(seq, constants, 200, rng) == 0


@pytest.mark.slow
@pytest.mark.parametrize("case", range(3))
def test_lemma1_soundness_full(case):
    seq, B = lemma1_cases()[case]
    constants = spectral_constants(seq, B, 1000)
    rng = np.random.default_rng(case)
    assert sum(adversarial_trial(seq, constants, 1000, rng) for _ in range(100)) == 0
