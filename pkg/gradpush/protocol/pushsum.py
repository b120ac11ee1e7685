"""
Push-sum perturbado, escalar y vectorial con una sola implementación (el caso escalar es d=1).

Paso t -> t+1:
    w <- A x,  y <- A y,  z_i <- w_i / y_i,  x <- w + ε
"""
from dataclasses import dataclass

import numpy as np

from gradpush.errors import NumericalBreakdownError
from gradpush.graphs.model import MixingMatrix

Y_UNDERFLOW = 1e-300


@dataclass(frozen=True)
class PushSumState:
    """Estado completo del protocolo. x, w, z son n×d; y tiene longitud n."""

    x: np.ndarray
    y: np.ndarray
    w: np.ndarray
    z: np.ndarray
    t: int = 0

    @classmethod
    def initial(cls, x0: np.ndarray) -> "PushSumState":
        """y(0) = 1, así que z(0) = w(0) = x(0)."""
        x0 = np.asarray(x0, dtype=float)
        if x0.ndim == 1:
            x0 = x0[:, None]
        return cls(x=x0.copy(), y=np.ones(x0.shape[0]), w=x0.copy(), z=x0.copy(), t=0)

    @property
    def n(self) -> int:
        return self.x.shape[0]

    @property
    def d(self) -> int:
        return self.x.shape[1]


def mix(state: PushSumState, A: MixingMatrix) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Parte de comunicación del paso: devuelve (w, y, z) en t+1."""
    if A.n != state.n:
        raise ValueError(f"A es {A.n}×{A.n} pero el estado tiene n={state.n}")
    w = A @ state.x
    y = A @ state.y
    if np.min(y) < Y_UNDERFLOW:
        raise NumericalBreakdownError(
            f"y_{int(np.argmin(y))}({state.t + 1}) = {np.min(y):.3e} por debajo de {Y_UNDERFLOW}"
        )
    z = w / y[:, None]
    return w, y, z


def pushsum_step(state: PushSumState, A: MixingMatrix, perturbation: np.ndarray) -> PushSumState:
    perturbation = np.asarray(perturbation, dtype=float).reshape(state.x.shape)
    w, y, z = mix(state, A)
    return PushSumState(x=w + perturbation, y=y, w=w, z=z, t=state.t + 1)


def network_average(state: PushSumState) -> np.ndarray:
    """
    1ᵀx(t)/n, el promedio que siguen los cocientes z_i(t+1).

    Se lee de w(t+1): por columna-estocasticidad Σ_i w_i(t+1) = Σ_j x_j(t), antes de la
    perturbación ε(t+1).
    """
    return state.w.mean(axis=0)


def consensus_residual(state: PushSumState) -> float:
    """max_i ‖z_i - 1ᵀx/n‖ (norma euclídea por nodo)."""
    deviation = state.z - network_average(state)
    return float(np.max(np.linalg.norm(deviation, axis=1)))


def ratio_bound(state: PushSumState) -> float:
    """max_j ‖x_j / y_j‖: cota de la combinación convexa que produce el siguiente z."""
    return float(np.max(np.linalg.norm(state.x / state.y[:, None], axis=1)))


def l1_norm(perturbation: np.ndarray) -> float:
    """Σ_j ‖ε_j‖₁ con la norma 1 entrada a entrada."""
    return float(np.abs(perturbation).sum())
