"""
Constantes espectrales δ y λ de una secuencia de grafos.

Caso general: cotas de peor caso δ = n^(-nB), λ = (1 - n^(-nB))^(1/(nB)).
Caso regular (todos los in/out-grados iguales a d(t) en cada G(t)): δ = 1 y
λ = min{(1 - 1/(4n^3))^(1/B), max_t σ2(A(t))}, con σ2 calculado numéricamente.
"""
import logging
import math
import os
from dataclasses import dataclass
from typing import Literal

import numpy as np

from gradpush.errors import ConnectivityError, SpectralError
from gradpush.graphs.connectivity import verify_B_strong_connectivity
from gradpush.graphs.model import DirectedGraph, GraphSequence, MixingMatrix, build_mixing_matrix

logger = logging.getLogger(__name__)

SVD_MAX_N = int(os.getenv("GRADPUSH_SVD_MAX_N", "512"))
POWER_TOL = float(os.getenv("GRADPUSH_POWER_TOL", "1e-10"))
POWER_MAX_ITER = int(os.getenv("GRADPUSH_POWER_MAX_ITER", "10000"))

SpectralMethod = Literal["general_bound", "regular_bound", "empirical_sigma2"]


@dataclass(frozen=True)
class SpectralConstants:
    delta: float
    lam: float
    method: SpectralMethod

    def __post_init__(self):
        if not 0.0 < self.delta <= 1.0:
            raise SpectralError(f"delta={self.delta} fuera de (0, 1]")
        if not 0.0 <= self.lam < 1.0:
            raise SpectralError(f"lambda={self.lam} fuera de [0, 1)")


def _sigma2_power(A: MixingMatrix) -> float:
    """σ2 por iteración de potencia sobre M = A - (1/n)11ᵀ (válido cuando A es doblemente estocástica)."""
    n = A.n
    entries = A.entries
    entries_t = entries.T.tocsr()

    def apply_m(v: np.ndarray) -> np.ndarray:
        return entries @ v - v.mean()

    def apply_mt(u: np.ndarray) -> np.ndarray:
        return entries_t @ u - u.mean()

    v = np.random.default_rng(0).standard_normal(n)
    v -= v.mean()
    v /= np.linalg.norm(v)
    sigma = 0.0
    for _ in range(POWER_MAX_ITER):
        mv = apply_m(v)
        new_sigma = float(np.linalg.norm(mv))
        if new_sigma == 0.0:
            return 0.0
        w = apply_mt(mv)
        norm_w = np.linalg.norm(w)
        if norm_w == 0.0:
            return new_sigma
        v = w / norm_w
        if abs(new_sigma - sigma) <= POWER_TOL:
            return new_sigma
        sigma = new_sigma
    raise SpectralError(
        f"La iteración de potencia no convergió en {POWER_MAX_ITER} iteraciones (n={n})"
    )


def sigma2(A: MixingMatrix) -> float:
    """Segundo mayor valor singular de A (SVD completa hasta SVD_MAX_N nodos)."""
    if A.n == 1:
        return 0.0
    if A.n <= SVD_MAX_N:
        try:
            values = np.linalg.svd(A.dense(), compute_uv=False)
        except np.linalg.LinAlgError as e:
            raise SpectralError(f"La SVD no convergió: {e}") from e
        return float(values[1])
    logger.warning("n=%d > %d: computing sigma2 by power iteration", A.n, SVD_MAX_N)
    return _sigma2_power(A)


def general_bounds(n: int, B: int) -> tuple[float, float]:
    """(δ, λ) de peor caso; SpectralError si n^(-nB) no es representable en float64."""
    log_eps = -n * B * math.log(n)
    eps = math.exp(log_eps)
    if eps == 0.0 and n > 1:
        raise SpectralError(
            f"n^(-nB) con n={n}, B={B} no es representable en doble precisión"
        )
    lam = math.exp(math.log1p(-eps) / (n * B)) if eps < 1.0 else 0.0
    if lam >= 1.0:
        raise SpectralError(
            f"lambda de peor caso con n={n}, B={B} se redondea a 1 en doble precisión"
        )
    return eps, lam


def spectral_constants(seq: GraphSequence, B: int, horizon: int) -> SpectralConstants:
    report = verify_B_strong_connectivity(seq, B, horizon)
    if not report:
        raise ConnectivityError(
            f"La secuencia '{seq.name}' no es {B}-fuertemente conexa "
            f"(ventana {report.first_failing_window})",
            window=report.first_failing_window,
        )

    n = seq.n
    graphs: dict[DirectedGraph, None] = {}
    for t in range(horizon):
        graphs.setdefault(seq.graph(t), None)

    if not all(g.is_regular() for g in graphs):
        delta, lam = general_bounds(n, B)
        return SpectralConstants(delta=delta, lam=lam, method="general_bound")

    regular_lam = (1.0 - 1.0 / (4.0 * n**3)) ** (1.0 / B)
    max_sigma2 = max(sigma2(build_mixing_matrix(g)) for g in graphs)
    # σ2 numérico puede quedar en ~1e-17 para la matriz de rango uno del grafo completo
    max_sigma2 = max(max_sigma2, 0.0)
    if regular_lam <= max_sigma2:
        return SpectralConstants(delta=1.0, lam=regular_lam, method="regular_bound")
    return SpectralConstants(delta=1.0, lam=max_sigma2, method="empirical_sigma2")
