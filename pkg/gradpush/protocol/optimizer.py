"""
Subgradient-push estocástico: push-sum perturbado con ε_i(t+1) = -α(t+1)·g_i(t+1) y promedio
ponderado de iterados ẑ_i(t) = Σ_{s<=t}(s-1)z_i(s) / S(t), S(t) = t(t-1)/2.
"""
import logging
import os
from dataclasses import dataclass
from typing import Protocol

import numpy as np

from gradpush.errors import DivergenceError
from gradpush.graphs.model import MixingMatrix
from gradpush.objectives.network import GradientBatch
from gradpush.protocol.pushsum import PushSumState, mix
from gradpush.protocol.schedule import StepSchedule

logger = logging.getLogger(__name__)

DIVERGENCE_LIMIT = float(os.getenv("GRADPUSH_DIVERGENCE_LIMIT", "1e12"))


class GradientOracle(Protocol):
    def sample_gradients(self, points: np.ndarray, rng: np.random.Generator | None) -> GradientBatch: ...


def running_weight(t: int) -> float:
    """S(t) = t(t-1)/2."""
    return t * (t - 1) / 2.0


@dataclass(frozen=True)
class OptimizerState:
    pushsum: PushSumState
    zhat: np.ndarray
    t: int = 0
    gradients: GradientBatch | None = None
    perturbation: np.ndarray | None = None

    @classmethod
    def initial(cls, x0: np.ndarray) -> "OptimizerState":
        """ẑ_i(1) = z_i(0) = x_i(0)."""
        ps = PushSumState.initial(x0)
        return cls(pushsum=ps, zhat=ps.z.copy(), t=0)

    @property
    def S(self) -> float:
        return running_weight(self.t)

    @property
    def z(self) -> np.ndarray:
        return self.pushsum.z


def update_weighted_average(zhat: np.ndarray, z_new: np.ndarray, t: int) -> np.ndarray:
    """ẑ(t+1) = (t·z(t+1) + S(t)·ẑ(t)) / S(t+1)."""
    if t < 1:
        raise ValueError(f"update_weighted_average requiere t >= 1 (recibido {t})")
    return (t * np.asarray(z_new) + running_weight(t) * np.asarray(zhat)) / running_weight(t + 1)


def sgp_step(
    state: OptimizerState,
    A: MixingMatrix,
    oracle: GradientOracle,
    schedule: StepSchedule,
    rng: np.random.Generator | None = None,
) -> OptimizerState:
    """
    Un paso t -> t+1. El oráculo se evalúa en z_i(t+1), tras la mezcla, una vez por nodo.

    Lanza DivergenceError si x(t+1) tiene valores no finitos o por encima de
    GRADPUSH_DIVERGENCE_LIMIT en valor absoluto.
    """
    ps = state.pushsum
    t_next = ps.t + 1
    w, y, z = mix(ps, A)
    batch = oracle.sample_gradients(z, rng)
    perturbation = -schedule.alpha(t_next) * batch.value
    x = w + perturbation

    if not np.all(np.isfinite(x)) or np.max(np.abs(x)) > DIVERGENCE_LIMIT:
        raise DivergenceError(
            f"Iterados no finitos o por encima de {DIVERGENCE_LIMIT:.0e} en t={t_next}", t=t_next
        )

    zhat = state.zhat if t_next < 2 else update_weighted_average(state.zhat, z, t_next - 1)
    return OptimizerState(
        pushsum=PushSumState(x=x, y=y, w=w, z=z, t=t_next),
        zhat=zhat,
        t=t_next,
        gradients=batch,
        perturbation=perturbation,
    )
