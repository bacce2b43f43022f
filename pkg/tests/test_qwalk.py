import warnings

import numpy as np
import pytest
from scipy.linalg import expm

from graphcontrol.errors import InvalidArgument, NumericError
from graphcontrol.graph import VertexSet, complete, path
from graphcontrol.qwalk import (
    AdjacencyPropagator,
    SynthesisConfig,
    check_unitary,
    evolve_adjacency,
    evolve_projector,
    haar_unitary,
    infidelity,
    infidelity_and_gradient,
    schedule_unitary,
    synthesize,
)

rng = np.random.default_rng(20240607)


def all_ones_entrywise(n, t):
    off = (np.exp(-1j * n * t) - 1) / n
    return np.full((n, n), off) + np.eye(n) * ((n + np.exp(-1j * n * t) - 1) / n - off)


class TestEvolveAdjacency:
    def test_zero_time(self):
        assert np.allclose(evolve_adjacency(path(4), 0.0), np.eye(4))

    def test_p2_quarter_period(self):
        assert np.allclose(evolve_adjacency(path(2), np.pi / 2), [[0, -1j], [-1j, 0]], atol=1e-12)

    @pytest.mark.parametrize("n", [2, 3, 5, 8])
    def test_matches_expm(self, n):
        s = rng.uniform(-5, 5)
        A = np.array(path(n).adjacency(), dtype=float)
        assert np.linalg.norm(evolve_adjacency(path(n), s) - expm(-1j * A * s)) < 1e-10

    def test_semigroup(self):
        X = complete(4)
        for _ in range(10):
            s1, s2 = rng.uniform(-3, 3, 2)
            lhs = evolve_adjacency(X, s1) @ evolve_adjacency(X, s2)
            assert np.linalg.norm(lhs - evolve_adjacency(X, s1 + s2)) <= 1e-9

    def test_norm_preserved(self):
        psi = rng.normal(size=6) + 1j * rng.normal(size=6)
        out = evolve_adjacency(path(6), 2.7) @ psi
        assert abs(np.linalg.norm(out) - np.linalg.norm(psi)) <= 1e-10

    def test_non_finite(self):
        with pytest.raises(InvalidArgument):
            evolve_adjacency(path(2), np.inf)


class TestEvolveProjector:
    @pytest.mark.parametrize("n", [2, 3, 6])
    def test_all_ones_closed_form(self, n):
        t = rng.uniform(0, 7)
        U = evolve_projector(np.ones(n), t)
        assert np.linalg.norm(U - all_ones_entrywise(n, t)) <= 1e-10
        assert np.linalg.norm(U - expm(-1j * np.ones((n, n)) * t)) <= 1e-10

    def test_single_vertex_is_diagonal_phase(self):
        t = 0.83
        z = np.array([1, 0, 0, 0])
        assert np.allclose(evolve_projector(z, t), np.diag([np.exp(-1j * t), 1, 1, 1]))

    def test_zero_time(self):
        assert np.allclose(evolve_projector([1, 1, 0], 0.0), np.eye(3))

    def test_zero_vector(self):
        with pytest.raises(InvalidArgument):
            evolve_projector([0, 0], 1.0)


class TestInfidelity:
    def test_self(self):
        U = haar_unitary(3, rng)
        assert infidelity(U, U) == pytest.approx(0, abs=1e-14)

    def test_phase_invariant(self):
        U = haar_unitary(4, rng)
        assert infidelity(U, np.exp(0.7j) * U) == pytest.approx(0, abs=1e-14)

    def test_traceless_difference(self):
        assert infidelity(np.eye(2), np.diag([1, -1])) == 1.0

    def test_symmetric(self):
        U, V = haar_unitary(3, rng), haar_unitary(3, rng)
        assert infidelity(U, V) == pytest.approx(infidelity(V, U))

    def test_dimension_mismatch(self):
        with pytest.raises(InvalidArgument):
            infidelity(np.eye(2), np.eye(3))


def test_check_unitary_rejects():
    with pytest.raises(NumericError):
        check_unitary(np.array([[1, 1], [0, 1]]))


class TestSchedule:
    def test_empty_is_identity(self):
        assert np.allclose(schedule_unitary(path(3), [1, 0, 0], []), np.eye(3))

    def test_single_segment_without_projector(self):
        X = path(4)
        assert np.allclose(schedule_unitary(X, [1, 0, 0, 0], [0.9, 0.0]), evolve_adjacency(X, 0.9))

    def test_order_first_applied_rightmost(self):
        X, z = path(3), np.array([1.0, 0, 0])
        s1, t1, s2, t2 = 0.3, 0.5, 1.1, 0.2
        expected = evolve_projector(z, t2) @ evolve_adjacency(X, s2) @ evolve_projector(z, t1) @ evolve_adjacency(X, s1)
        assert np.allclose(schedule_unitary(X, z, [s1, t1, s2, t2]), expected)

    def test_random_schedule_unitary(self):
        U = schedule_unitary(path(5), [1, 1, 0, 0, 0], rng.uniform(-4, 4, 12))
        check_unitary(U)

    def test_odd_length_rejected(self):
        with pytest.raises(InvalidArgument):
            schedule_unitary(path(3), [1, 0, 0], [1.0])


def finite_difference_gradient(prop, z, target, x, h=1e-6):
    g = np.zeros_like(x)
    for k in range(len(x)):
        e = np.zeros_like(x)
        e[k] = h
        g[k] = (infidelity_and_gradient(prop, z, target, x + e)[0] - infidelity_and_gradient(prop, z, target, x - e)[0]) / (2 * h)
    return g


@pytest.mark.parametrize("n, K", [(2, 1), (2, 5), (3, 3), (4, 5), (4, 2)])
def test_gradient_matches_finite_differences(n, K):
    X = path(n)
    prop = AdjacencyPropagator(X.adjacency())
    z = np.array(VertexSet.of(n, [0]).indicator(), dtype=float)
    target = haar_unitary(n, rng)
    x = rng.uniform(0, 2 * np.pi, 2 * K)
    _, analytic = infidelity_and_gradient(prop, z, target, x)
    numeric = finite_difference_gradient(prop, z, target, x)
    assert np.linalg.norm(analytic - numeric) <= 1e-5 * np.linalg.norm(numeric)


def test_objective_matches_infidelity():
    X = path(3)
    z = np.array([1.0, 0, 0])
    x = rng.uniform(0, 3, 6)
    T = haar_unitary(3, rng)
    f, _ = infidelity_and_gradient(AdjacencyPropagator(X.adjacency()), z, T, x)
    assert f == pytest.approx(infidelity(T, schedule_unitary(X, z, x)), abs=1e-12)


class TestSynthesize:
    def test_identity_gives_zero_schedule(self):
        res = synthesize(path(3), VertexSet.of(3, [0]), np.eye(3), SynthesisConfig(K=2))
        assert np.all(res.times == 0) and res.infidelity == pytest.approx(0, abs=1e-12)

    @pytest.mark.parametrize("K", [1, 3])
    def test_generating_element_is_reached(self, K):
        X = path(3)
        cfg = SynthesisConfig(K=K, restarts=5, target_infidelity=1e-12)
        res = synthesize(X, VertexSet.of(3, [0]), evolve_adjacency(X, 1.3), cfg)
        assert res.infidelity <= 1e-10

    def test_haar_target_p2(self):
        T = haar_unitary(2, np.random.default_rng(5))
        res = synthesize(path(2), VertexSet.of(2, [0]), T, SynthesisConfig(K=6, restarts=20, target_infidelity=1e-3))
        assert res.infidelity <= 1e-3 and res.reached_target

    def test_deterministic_given_seed(self):
        T = haar_unitary(3, np.random.default_rng(9))
        cfg = SynthesisConfig(K=4, restarts=3, target_infidelity=1e-9, rng_seed=11)
        a = synthesize(path(3), VertexSet.of(3, [0]), T, cfg)
        b = synthesize(path(3), VertexSet.of(3, [0]), T, cfg)
        assert np.array_equal(a.times, b.times)

    def test_monotone_in_K_with_embedding(self):
        T = haar_unitary(3, np.random.default_rng(3))
        S = VertexSet.of(3, [0])
        prev = None
        last = 1.0
        for K in range(1, 6):
            cfg = SynthesisConfig(K=K, restarts=2, target_infidelity=1e-14, rng_seed=1)
            res = synthesize(path(3), S, T, cfg, warm_start=prev)
            assert res.infidelity <= last + 1e-12
            last, prev = res.infidelity, res.times

    def test_uncontrollable_pair_warns(self):
        T = haar_unitary(3, np.random.default_rng(1))
        with pytest.warns(UserWarning):
            res = synthesize(path(3), VertexSet.of(3, [1]), T, SynthesisConfig(K=3, restarts=2))
        assert not res.pair_controllable

    def test_config_validation(self):
        with pytest.raises(InvalidArgument):
            SynthesisConfig(K=0)
        with pytest.raises(InvalidArgument):
            SynthesisConfig(target_infidelity=1.5)

    def test_result_json(self):
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            res = synthesize(path(2), VertexSet.of(2, [0]), np.eye(2), SynthesisConfig(K=2))
        doc = res.to_json()
        assert doc["K"] == 2 and len(doc["schedule"]) == 2 and doc["negative_durations"] is False
