"""
Evaluadores de las cotas de desacuerdo del push-sum perturbado.

- lemma1_bound: cota puntual a partir de la historia medida de ‖ε(s)‖₁.
- disagreement_bound: la misma cota para todos los t de una vez (recursión geométrica).
- corollary2_cumulative_bound: cota acumulada bajo el modelo E‖e_j(t)‖₁ <= D/t.
"""
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from gradpush.graphs.spectral import SpectralConstants


@dataclass(frozen=True)
class DisagreementBound:
    """values[t-1] es la cota para t = 1..T; log_cumulative = ln Σ_t values."""

    values: np.ndarray
    log_cumulative: float


def lemma1_bound(
    x0_l1: float,
    perturb_l1_history: Sequence[float],
    constants: SpectralConstants,
    t: int,
) -> float:
    """(8/δ)(λ^t ‖x(0)‖₁ + Σ_{s=1..t} λ^{t-s} ‖ε(s)‖₁); history[s-1] = ‖ε(s)‖₁."""
    if t < 1:
        raise ValueError("lemma1_bound requiere t >= 1")
    if len(perturb_l1_history) < t:
        raise ValueError(f"Se necesitan {t} normas de perturbación, hay {len(perturb_l1_history)}")
    lam = constants.lam
    history = np.asarray(perturb_l1_history[:t], dtype=float)
    weights = lam ** np.arange(t - 1, -1, -1, dtype=float)
    return 8.0 / constants.delta * (lam**t * x0_l1 + float(weights @ history))


def disagreement_bound(
    x0_l1: float,
    perturb_l1_history: Sequence[float],
    constants: SpectralConstants,
) -> DisagreementBound:
    lam = constants.lam
    acc = 0.0
    lam_t = 1.0
    values = np.empty(len(perturb_l1_history))
    for idx, eps in enumerate(perturb_l1_history):
        acc = lam * acc + eps
        lam_t *= lam
        values[idx] = 8.0 / constants.delta * (lam_t * x0_l1 + acc)
    total = float(values.sum())
    return DisagreementBound(
        values=values,
        log_cumulative=math.log(total) if total > 0 else -math.inf,
    )


def corollary2_cumulative_bound(
    x0_l1_sum: float,
    D: float,
    n: int,
    constants: SpectralConstants,
    tau: int,
) -> float:
    """(8/δ)·λ/(1-λ)·Σ‖x_j(0)‖₁ + (8/δ)·D·n/(1-λ)·(1 + ln τ)."""
    if tau < 1:
        raise ValueError("corollary2_cumulative_bound requiere tau >= 1")
    delta, lam = constants.delta, constants.lam
    initial = 8.0 / delta * lam / (1.0 - lam) * x0_l1_sum
    forced = 8.0 / delta * D * n / (1.0 - lam) * (1.0 + math.log(tau))
    return initial + forced
