"""
Objetivo de red F = Σ f_i, su minimizador global z* y los presets.

Para familias cuadráticas todo se evalúa en bloque (gradientes de los n nodos con un einsum)
y el gap F(z) - F(z*) se calcula como ½(z - z*)ᵀ(ΣQ_i)(z - z*), sin cancelación.
"""
import logging
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy import optimize

from gradpush.errors import ObjectiveError
from gradpush.objectives.functions import NoiseLaw, ObjectiveSpec, general_quadratic
from gradpush.objectives.oracle import GradientSample, sample_noise
from gradpush.utils.rng import STREAM_OBJECTIVE, substream

logger = logging.getLogger(__name__)

P_FLOOR = 1e-6


@dataclass(frozen=True)
class GradientBatch:
    """Muestras de gradiente de todos los nodos; fila i = nodo i."""

    value: np.ndarray
    true_grad: np.ndarray
    noise: np.ndarray

    def node(self, i: int) -> GradientSample:
        return GradientSample(value=self.value[i], true_grad=self.true_grad[i], noise=self.noise[i])


@dataclass(frozen=True)
class NetworkObjective:
    specs: tuple[ObjectiveSpec, ...]
    z_star: np.ndarray
    name: str = "network"
    params: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return len(self.specs)

    @property
    def d(self) -> int:
        return self.specs[0].dim

    @cached_property
    def mus(self) -> np.ndarray:
        return np.array([s.mu for s in self.specs])

    @cached_property
    def noise_bounds(self) -> np.ndarray:
        return np.array([s.noise_bound for s in self.specs])

    @property
    def noise_law(self) -> NoiseLaw:
        return self.specs[0].noise_law

    @cached_property
    def is_quadratic(self) -> bool:
        return all(s.quadratic is not None for s in self.specs)

    @cached_property
    def _stacked(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        Q = np.stack([s.quadratic.Q for s in self.specs])
        b = np.stack([s.quadratic.b for s in self.specs])
        c = np.array([s.quadratic.c for s in self.specs])
        return Q, b, c

    @cached_property
    def hessian(self) -> np.ndarray:
        """ΣQ_i (solo familias cuadráticas)."""
        return self._stacked[0].sum(axis=0)

    @cached_property
    def F_star(self) -> float:
        return self.evaluate(self.z_star)

    def evaluate(self, z: np.ndarray) -> float:
        """F(z) = Σ_i f_i(z)."""
        z = np.atleast_1d(np.asarray(z, dtype=float))
        if self.is_quadratic:
            Q, b, c = self._stacked
            return float(0.5 * np.einsum("j,ijk,k->", z, Q, z) - (b @ z).sum() + c.sum())
        return float(sum(s.evaluate(z) for s in self.specs))

    def total_gradient(self, z: np.ndarray) -> np.ndarray:
        z = np.atleast_1d(np.asarray(z, dtype=float))
        return self.gradients(np.broadcast_to(z, (self.n, self.d))).sum(axis=0)

    def gap(self, z: np.ndarray) -> float:
        """F(z) - F(z*) >= 0."""
        z = np.atleast_1d(np.asarray(z, dtype=float))
        if self.is_quadratic:
            e = z - self.z_star
            return float(0.5 * e @ self.hessian @ e)
        return self.evaluate(z) - self.F_star

    def gaps(self, points: np.ndarray) -> np.ndarray:
        """Gap de cada fila de `points` (m×d)."""
        if self.is_quadratic:
            e = points - self.z_star
            return 0.5 * np.einsum("ij,jk,ik->i", e, self.hessian, e)
        return np.array([self.gap(p) for p in points])

    def gradients(self, points: np.ndarray) -> np.ndarray:
        """∇f_i(points[i]) para cada nodo, sin ruido."""
        if self.is_quadratic:
            Q, b, _ = self._stacked
            return np.einsum("ijk,ik->ij", Q, points) - b
        return np.stack([s.gradient(points[i]) for i, s in enumerate(self.specs)])

    def sample_gradients(self, points: np.ndarray, rng: np.random.Generator | None) -> GradientBatch:
        """Una llamada al oráculo por nodo, con el ruido de todos en una única extracción."""
        true_grad = self.gradients(points)
        noise = sample_noise(self.noise_bounds, self.d, self.noise_law, rng)
        return GradientBatch(value=true_grad + noise, true_grad=true_grad, noise=noise)


def _refine_minimizer(specs: tuple[ObjectiveSpec, ...]) -> np.ndarray:
    d = specs[0].dim
    starts = [s.minimizer for s in specs if s.minimizer is not None]
    x0 = np.mean(starts, axis=0) if starts else np.zeros(d)
    result = optimize.minimize(
        lambda z: sum(s.evaluate(z) for s in specs),
        x0,
        jac=lambda z: np.sum([s.gradient(z) for s in specs], axis=0),
        method="BFGS",
        options={"gtol": 1e-12, "maxiter": 10_000},
    )
    if not result.success:
        logger.warning("Minimizer refinement did not fully converge: %s", result.message)
    return np.atleast_1d(result.x)


def network_objective(specs: list[ObjectiveSpec], name: str = "network", **params) -> NetworkObjective:
    """Calcula z* exacto para cuadráticas ((ΣQ_i)⁻¹Σb_i) o refinado numéricamente en otro caso."""
    if not specs:
        raise ObjectiveError("Se necesita al menos un nodo")
    dims = {s.dim for s in specs}
    if len(dims) != 1:
        raise ObjectiveError(f"Todos los f_i deben tener la misma dimensión (hay {sorted(dims)})")
    if len({s.noise_law for s in specs}) != 1:
        raise ObjectiveError("Todos los nodos deben usar la misma ley de ruido")
    specs = tuple(specs)
    if all(s.quadratic is not None for s in specs):
        H = sum(s.quadratic.Q for s in specs)
        z_star = np.linalg.solve(H, sum(s.quadratic.b for s in specs))
    else:
        z_star = _refine_minimizer(specs)
    return NetworkObjective(specs=specs, z_star=z_star, name=name, params=params)


def estimation_objective(
    p: np.ndarray,
    u: np.ndarray,
    noise_bound: float = 0.0,
    noise_law: NoiseLaw = "uniform_ball",
) -> NetworkObjective:
    """f_i(θ) = p_i(θ - u_i)², es decir Q = 2p_i, b = 2p_i u_i, c = p_i u_i²."""
    p = np.asarray(p, dtype=float)
    u = np.asarray(u, dtype=float)
    if p.shape != u.shape or p.ndim != 1:
        raise ObjectiveError("p y u deben ser vectores de la misma longitud")
    if np.any(p <= 0):
        raise ObjectiveError("Todos los p_i deben ser > 0 para que cada f_i sea fuertemente convexa")
    specs = [
        general_quadratic([[2.0 * pi]], [2.0 * pi * ui], pi * ui * ui, noise_bound, noise_law)
        for pi, ui in zip(p, u)
    ]
    objective = network_objective(specs, name="quadratic_estimation", p=p, u=u)
    # z* = Σp_i u_i / Σp_i, la media ponderada de las medidas
    return NetworkObjective(
        specs=objective.specs,
        z_star=np.array([float(p @ u / p.sum())]),
        name=objective.name,
        params=objective.params,
    )


def quadratic_estimation_preset(
    n: int,
    seed: int,
    theta_hat: float = 0.0,
    noise_bound: float = 0.0,
    noise_law: NoiseLaw = "uniform_ball",
) -> NetworkObjective:
    """
    Estimación distribuida: p_i ~ U(0, 1) (re-muestreado por debajo de 1e-6) y
    u_i = θ̂ + w_i con w_i ~ N(0, 1/p_i). μ_i = M_i = 2p_i.
    """
    if n < 1:
        raise ObjectiveError("n debe ser >= 1")
    rng = substream(seed, STREAM_OBJECTIVE)
    p = rng.uniform(0.0, 1.0, size=n)
    while np.any(small := p < P_FLOOR):
        p[small] = rng.uniform(0.0, 1.0, size=int(small.sum()))
    u = theta_hat + rng.standard_normal(n) / np.sqrt(p)
    return estimation_objective(p, u, noise_bound, noise_law)


def random_quadratic_preset(
    n: int,
    d: int,
    seed: int,
    condition: float = 10.0,
    noise_bound: float = 0.0,
    noise_law: NoiseLaw = "uniform_ball",
) -> NetworkObjective:
    """Cuadráticas generales en R^d: Q_i = R_i diag(λ) R_iᵀ con λ en [1, condition], b_i ~ N(0, I)."""
    if condition < 1.0:
        raise ObjectiveError("condition debe ser >= 1")
    rng = substream(seed, STREAM_OBJECTIVE)
    specs = []
    for _ in range(n):
        R, _ = np.linalg.qr(rng.standard_normal((d, d)))
        eigs = rng.uniform(1.0, condition, size=d)
        Q = (R * eigs) @ R.T
        specs.append(general_quadratic(Q, rng.standard_normal(d), 0.0, noise_bound, noise_law))
    return network_objective(specs, name="random_quadratic")
