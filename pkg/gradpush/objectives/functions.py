"""
Funciones objetivo por nodo: descriptor ObjectiveSpec y constructores.
"""
from dataclasses import dataclass, field
from typing import Callable, Literal

import numpy as np

from gradpush.errors import ObjectiveError

NoiseLaw = Literal["uniform_ball", "gaussian_ball"]

SPD_TOL = 1e-10


@dataclass(frozen=True)
class QuadraticForm:
    """f(z) = ½ zᵀQz - bᵀz + c."""

    Q: np.ndarray
    b: np.ndarray
    c: float = 0.0


@dataclass(frozen=True)
class ObjectiveSpec:
    """
    Descriptor de f_i.

    mu: módulo de convexidad fuerte (> 0). M: constante de Lipschitz del gradiente, solo
    necesaria para los presets con gradiente Lipschitz. noise_bound: c_i, cota casi segura
    de ‖N_i(u)‖. gradient_bound: D -> cota de ‖∇f(z)‖ en la bola de radio D, si se conoce
    una mejor que M·D + ‖∇f(0)‖.
    """

    dim: int
    evaluate: Callable[[np.ndarray], float]
    gradient: Callable[[np.ndarray], np.ndarray]
    mu: float
    M: float | None = None
    noise_bound: float = 0.0
    noise_law: NoiseLaw = "uniform_ball"
    minimizer: np.ndarray | None = None
    quadratic: QuadraticForm | None = None
    gradient_bound: Callable[[float], float] | None = field(default=None, repr=False)
    name: str = "objective"

    def __post_init__(self):
        if not self.mu > 0:
            raise ObjectiveError(f"mu debe ser > 0 (recibido {self.mu})")
        if self.M is not None and self.M < self.mu:
            raise ObjectiveError(f"M={self.M} no puede ser menor que mu={self.mu}")
        if self.noise_bound < 0:
            raise ObjectiveError("noise_bound debe ser >= 0")


def general_quadratic(
    Q: np.ndarray,
    b: np.ndarray,
    c: float = 0.0,
    noise_bound: float = 0.0,
    noise_law: NoiseLaw = "uniform_ball",
) -> ObjectiveSpec:
    """f(z) = ½zᵀQz - bᵀz + c con μ = λ_min(Q), M = λ_max(Q) y minimizador Q⁻¹b."""
    Q = np.atleast_2d(np.asarray(Q, dtype=float))
    b = np.atleast_1d(np.asarray(b, dtype=float))
    d = Q.shape[0]
    if Q.shape != (d, d) or b.shape != (d,):
        raise ObjectiveError(f"Dimensiones incompatibles: Q {Q.shape}, b {b.shape}")
    if not np.allclose(Q, Q.T, rtol=0.0, atol=SPD_TOL):
        raise ObjectiveError("Q debe ser simétrica")
    eigs = np.linalg.eigvalsh(Q)
    if eigs[0] <= SPD_TOL:
        raise ObjectiveError(f"Q no es definida positiva (autovalor mínimo {eigs[0]:.3e})")

    Q = (Q + Q.T) / 2.0
    form = QuadraticForm(Q=Q, b=b, c=float(c))

    def evaluate(z: np.ndarray) -> float:
        z = np.atleast_1d(z)
        return float(0.5 * z @ Q @ z - b @ z + form.c)

    def gradient(z: np.ndarray) -> np.ndarray:
        return Q @ np.atleast_1d(z) - b

    return ObjectiveSpec(
        dim=d,
        evaluate=evaluate,
        gradient=gradient,
        mu=float(eigs[0]),
        M=float(eigs[-1]),
        noise_bound=noise_bound,
        noise_law=noise_law,
        minimizer=np.linalg.solve(Q, b),
        quadratic=form,
        name="quadratic",
    )


def quadratic_plus_l1(mu: float, dim: int = 1, noise_bound: float = 0.0) -> ObjectiveSpec:
    """
    Fixture no diferenciable f(z) = μ/2‖z‖² + |z₁|.

    Subgradiente μz + sign(z₁)e₁, con sign(0) = 0 como desempate (0 pertenece al
    subdiferencial en z₁ = 0). Minimizador 0. Sin M: el gradiente no es Lipschitz.
    """

    def evaluate(z: np.ndarray) -> float:
        z = np.atleast_1d(z)
        return float(0.5 * mu * z @ z + abs(z[0]))

    def gradient(z: np.ndarray) -> np.ndarray:
        z = np.atleast_1d(np.asarray(z, dtype=float))
        g = mu * z
        g[0] += np.sign(z[0])
        return g

    return ObjectiveSpec(
        dim=dim,
        evaluate=evaluate,
        gradient=gradient,
        mu=mu,
        M=None,
        noise_bound=noise_bound,
        minimizer=np.zeros(dim),
        gradient_bound=lambda D: mu * D + 1.0,
        name="quadratic_plus_l1",
    )


def gradient_norm_bound(spec: ObjectiveSpec, D: float) -> float:
    """
    L_i: cota del mayor ‖∇f_i(z)‖ con ‖z‖ <= D.

    Con gradiente M-Lipschitz, ‖∇f(z)‖ <= ‖∇f(0)‖ + M‖z‖ <= M·D + ‖∇f(0)‖.
    """
    if D < 0:
        raise ValueError("D debe ser >= 0")
    if spec.gradient_bound is not None:
        return float(spec.gradient_bound(D))
    if spec.M is None:
        raise ObjectiveError(f"'{spec.name}' no tiene M ni gradient_bound: no se puede acotar L_i")
    return float(spec.M * D + np.linalg.norm(spec.gradient(np.zeros(spec.dim))))
