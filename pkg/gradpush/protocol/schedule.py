"""
Paso α(t) = p/t y las dos maneras de elegir p:

- theorem1_schedule: p = 4n/Σμ_i, el menor p con p·(Σμ_i)/n >= 4.
- conservative_p_from_min: p·(min_i μ_i)/n > 4 a partir de la salida de min_consensus, que
  los nodos pueden calcular de forma distribuida.
"""
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from gradpush.errors import ConfigError
from gradpush.graphs.model import GraphSequence

CONSERVATIVE_SLACK = 1e-9


@dataclass(frozen=True)
class StepSchedule:
    p: float

    def __post_init__(self):
        if not self.p > 0:
            raise ConfigError(f"p debe ser positivo (recibido {self.p})", field="schedule.p")

    def alpha(self, t: int) -> float:
        if t < 1:
            raise ValueError(f"α(t) solo está definido para t >= 1 (recibido {t})")
        return self.p / t

    def __call__(self, t: int) -> float:
        return self.alpha(t)


def theorem1_schedule(mus: Sequence[float]) -> StepSchedule:
    mus = np.asarray(mus, dtype=float)
    if mus.size == 0 or np.any(mus <= 0):
        raise ConfigError("Todos los μ_i deben ser > 0", field="objective")
    return StepSchedule(p=4.0 * mus.size / float(mus.sum()))


def min_consensus(
    values: Sequence[float],
    seq: GraphSequence,
    steps: int | None = None,
) -> np.ndarray:
    """
    Cada nodo reemplaza su valor por el mínimo de sus in-vecinos (incluido él mismo), ronda a
    ronda sobre G(0), G(1), ... Por defecto se hacen n·B rondas.
    """
    current = np.asarray(values, dtype=float).copy()
    if current.shape != (seq.n,):
        raise ValueError(f"Se esperaban {seq.n} valores, hay {current.shape}")
    if steps is None:
        steps = seq.n * (seq.declared_B or 1)
    if steps < 1:
        raise ValueError("min_consensus necesita steps >= 1")
    for t in range(steps):
        src, dst = seq.graph(t).edge_arrays
        nxt = current.copy()
        np.minimum.at(nxt, dst, current[src])
        current = nxt
    return current


def conservative_p_from_min(mu_min_consensus_output: Sequence[float], n: int) -> StepSchedule:
    values = np.asarray(mu_min_consensus_output, dtype=float)
    if values.size == 0 or np.any(values != values[0]):
        raise ConfigError(
            "min_consensus no ha convergido: los nodos tienen valores distintos",
            field="schedule.consensus_rounds",
        )
    mu_min = float(values[0])
    if mu_min <= 0:
        raise ConfigError("min μ_i debe ser > 0", field="objective")
    return StepSchedule(p=4.0 * n / mu_min * (1.0 + CONSERVATIVE_SLACK))
