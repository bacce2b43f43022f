"""Quantum-walk unitaries and bang-bang schedule synthesis.

The two Hamiltonians are the adjacency matrix A of a graph and the projector
L = zz^T of a vertex subset. A schedule (s_1, t_1, ..., s_K, t_K) produces

    U = U_L(t_K) U_A(s_K) ... U_L(t_1) U_A(s_1)

and synthesis minimises the phase-insensitive infidelity 1 - |tr(T^dag U)| / n
against a target T over the 2K durations.
"""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .controllability import controllable
from .errors import InvalidArgument, NumericError
from .graph import Graph, VertexSet

log = logging.getLogger(__name__)


def check_unitary(U, atol_per_dim: float = 1e-10) -> np.ndarray:
    U = np.asarray(U, dtype=complex)
    if U.ndim != 2 or U.shape[0] != U.shape[1]:
        raise InvalidArgument("unitary must be a square matrix")
    n = U.shape[0]
    err = np.linalg.norm(U.conj().T @ U - np.eye(n))
    if err > atol_per_dim * n:
        raise NumericError(f"matrix is not unitary: ||U^dag U - I||_F = {err:.3e}")
    return U


class AdjacencyPropagator:
    """e^{-iAs} for a fixed real symmetric A, from one eigendecomposition."""

    def __init__(self, A):
        A = np.asarray(A, dtype=float)
        if not np.allclose(A, A.T):
            raise InvalidArgument("Hamiltonian must be symmetric")
        try:
            self.eigvals, self.eigvecs = np.linalg.eigh(A)
        except np.linalg.LinAlgError as exc:
            raise NumericError(f"eigensolver failed: {exc}") from exc
        self.H = A

    def __call__(self, s: float) -> np.ndarray:
        Q = self.eigvecs
        return (Q * np.exp(-1j * self.eigvals * s)) @ Q.T


def evolve_adjacency(X: Graph, s: float) -> np.ndarray:
    if not np.isfinite(s):
        raise InvalidArgument("duration must be finite")
    return AdjacencyPropagator(X.adjacency())(s)


def evolve_projector(z, t: float) -> np.ndarray:
    """e^{-i zz^T t} = I + ((e^{-i c t} - 1) / c) zz^T with c = z^T z."""
    z = np.asarray(z, dtype=float)
    c0 = float(z @ z)
    if c0 == 0:
        raise InvalidArgument("projector vector must be nonzero")
    return np.eye(len(z), dtype=complex) + ((np.exp(-1j * c0 * t) - 1) / c0) * np.outer(z, z)


def infidelity(U, V) -> float:
    U, V = np.asarray(U), np.asarray(V)
    if U.shape != V.shape:
        raise InvalidArgument(f"dimension mismatch: {U.shape} vs {V.shape}")
    n = U.shape[0]
    value = 1.0 - abs(np.trace(U.conj().T @ V)) / n
    return float(min(1.0, max(0.0, value)))


def _factors(prop: AdjacencyPropagator, z, times):
    out = []
    for k in range(0, len(times), 2):
        out.append(prop(times[k]))
        out.append(evolve_projector(z, times[k + 1]))
    return out


def schedule_unitary(X: Graph, z, times) -> np.ndarray:
    """Ordered product of the schedule's factors, first-applied rightmost."""
    times = np.asarray(times, dtype=float).ravel()
    if len(times) % 2:
        raise InvalidArgument("schedule needs an even number of durations (s, t pairs)")
    if len(z) != X.n:
        raise InvalidArgument("indicator length does not match graph size")
    U = np.eye(X.n, dtype=complex)
    for F in _factors(AdjacencyPropagator(X.adjacency()), z, times):
        U = F @ U
    return U


def infidelity_and_gradient(prop: AdjacencyPropagator, z, target, times) -> tuple[float, np.ndarray]:
    """Objective 1 - |g|/n with g = tr(T^dag U), and its exact gradient.

    d/dtheta_j of factor F_j is -i H_j F_j, so with prefix R_j = F_j ... F_1 and
    suffix S_j = T^dag F_2K ... F_{j+1}, dg/dtheta_j = tr(S_j (-i H_j) R_j).
    """
    n = target.shape[0]
    z = np.asarray(z, dtype=float)
    L = np.outer(z, z)
    factors = _factors(prop, z, times)
    m = len(factors)
    prefix = [np.eye(n, dtype=complex)]
    for F in factors:
        prefix.append(F @ prefix[-1])
    g = np.trace(target.conj().T @ prefix[-1])
    absg = abs(g)
    value = 1.0 - absg / n
    grad = np.zeros(m)
    suffix = target.conj().T
    for j in range(m - 1, -1, -1):
        H = prop.H if j % 2 == 0 else L
        dg = np.trace(suffix @ (-1j * H) @ prefix[j + 1])
        # d|g| = Re(conj(g) dg) / |g|
        grad[j] = -np.real(np.conj(g) * dg) / (absg * n) if absg > 0 else 0.0
        suffix = suffix @ factors[j]
    if not np.isfinite(value) or not np.all(np.isfinite(grad)):
        raise NumericError("non-finite objective during synthesis")
    return value, grad


@dataclass
class SynthesisConfig:
    K: int = 6
    restarts: int = 20
    max_iterations: int = 2000
    target_infidelity: float = 1e-6
    rng_seed: int = 0

    def __post_init__(self):
        if self.K < 1 or self.restarts < 1 or self.max_iterations < 1:
            raise InvalidArgument("K, restarts and max_iterations must be positive")
        if not 0 < self.target_infidelity < 1:
            raise InvalidArgument("target_infidelity must lie in (0, 1)")


@dataclass
class SynthesisResult:
    times: np.ndarray  # (s_1, t_1, ..., s_K, t_K)
    infidelity: float
    reached_target: bool
    restarts_used: int
    pair_controllable: bool

    @property
    def K(self) -> int:
        return len(self.times) // 2

    @property
    def has_negative_durations(self) -> bool:
        return bool(np.any(self.times < 0))

    def segments(self) -> list[tuple[int, float, float]]:
        return [(k + 1, float(self.times[2 * k]), float(self.times[2 * k + 1])) for k in range(self.K)]

    def to_json(self) -> dict:
        return {
            "K": self.K,
            "infidelity": self.infidelity,
            "reached_target": self.reached_target,
            "restarts_used": self.restarts_used,
            "pair_controllable": self.pair_controllable,
            "negative_durations": self.has_negative_durations,
            "schedule": [{"segment": k, "s": s, "t": t} for k, s, t in self.segments()],
        }


def synthesize(X: Graph, S: VertexSet, target, cfg: SynthesisConfig | None = None, warm_start=None) -> SynthesisResult:
    """Best alternating schedule found over seeded random restarts.

    The all-zero schedule and ``warm_start`` (zero-padded to 2K entries if
    shorter) are tried before the random restarts. The best result is
    returned even when it misses ``cfg.target_infidelity``.
    """
    cfg = cfg or SynthesisConfig()
    target = check_unitary(target)
    if target.shape[0] != X.n or S.n != X.n:
        raise InvalidArgument("target, graph and subset dimensions must agree")
    if len(S) == 0:
        raise InvalidArgument("subset must be nonempty (zero projector)")
    is_ctrl = controllable(X, S)
    if not is_ctrl:
        warnings.warn("pair is not controllable; synthesis may not converge", stacklevel=2)
    prop = AdjacencyPropagator(X.adjacency())
    z = np.array(S.indicator(), dtype=float)
    dim = 2 * cfg.K

    def objective(x):
        return infidelity_and_gradient(prop, z, target, x)

    starts = [np.zeros(dim)]
    if warm_start is not None:
        w = np.zeros(dim)
        w[: len(warm_start)] = warm_start
        starts.append(w)
    seeds = np.random.SeedSequence(cfg.rng_seed).spawn(cfg.restarts)
    starts += [np.random.default_rng(s).uniform(0.0, 2 * np.pi, dim) for s in seeds]

    best_x, best_f, used = None, np.inf, 0
    for x0 in starts:
        used += 1
        f0, _ = objective(x0)
        if f0 <= cfg.target_infidelity:
            x, f = x0, f0
        else:
            res = minimize(
                objective,
                x0,
                jac=True,
                method="L-BFGS-B",
                options={"maxiter": cfg.max_iterations, "ftol": 1e-16, "gtol": 1e-12},
            )
            x, f = res.x, float(res.fun)
            if f > f0:  # never worse than the start point
                x, f = x0, f0
        if f < best_f:
            best_x, best_f = np.array(x), f
        if best_f <= cfg.target_infidelity:
            break
    best_f = float(infidelity(target, schedule_unitary(X, z, best_x)))
    return SynthesisResult(best_x, best_f, bool(best_f <= cfg.target_infidelity), used, is_ctrl)


def haar_unitary(n: int, rng) -> np.ndarray:
    from scipy.stats import unitary_group

    return unitary_group.rvs(n, random_state=rng)
