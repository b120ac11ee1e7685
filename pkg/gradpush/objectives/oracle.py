"""
Oráculo de gradiente ruidoso: g_i(u) = ∇f_i(u) + N_i(u), con E[N] = 0 y ‖N‖ <= c_i siempre.

Leyes de ruido:
- uniform_ball (por defecto): uniforme en la bola euclídea de radio c (d=1: uniforme en [-c, c]).
- gaussian_ball: gaussiana isotrópica rechazada fuera de la bola; simétrica, luego de media cero.
"""
from dataclasses import dataclass

import numpy as np

from gradpush.objectives.functions import NoiseLaw, ObjectiveSpec

MAX_REJECTION_ROUNDS = 1000


@dataclass(frozen=True)
class GradientSample:
    value: np.ndarray
    true_grad: np.ndarray
    noise: np.ndarray


def _uniform_ball(bounds: np.ndarray, d: int, rng: np.random.Generator) -> np.ndarray:
    n = bounds.shape[0]
    if d == 1:
        return (bounds * rng.uniform(-1.0, 1.0, size=n))[:, None]
    direction = rng.standard_normal((n, d))
    norms = np.linalg.norm(direction, axis=1, keepdims=True)
    norms[norms == 0.0] = 1.0
    radius = bounds[:, None] * rng.uniform(size=(n, 1)) ** (1.0 / d)
    return direction / norms * radius


def _gaussian_ball(bounds: np.ndarray, d: int, rng: np.random.Generator) -> np.ndarray:
    n = bounds.shape[0]
    scale = (bounds / (2.0 * np.sqrt(d)))[:, None]
    noise = rng.standard_normal((n, d)) * scale
    for _ in range(MAX_REJECTION_ROUNDS):
        outside = np.linalg.norm(noise, axis=1) > bounds
        if not outside.any():
            return noise
        noise[outside] = rng.standard_normal((int(outside.sum()), d)) * scale[outside]
    raise RuntimeError("El muestreo por rechazo no terminó")


def sample_noise(
    bounds: np.ndarray,
    d: int,
    law: NoiseLaw,
    rng: np.random.Generator | None,
) -> np.ndarray:
    """
    Una fila de ruido por nodo; fila i con norma <= bounds[i].

    `rng` solo puede ser None si todas las cotas son 0; con algún c_i > 0 lanza ValueError.
    """
    bounds = np.asarray(bounds, dtype=float)
    if not np.any(bounds > 0):
        return np.zeros((bounds.shape[0], d))
    if rng is None:
        raise ValueError("El objetivo tiene ruido (c_i > 0) pero no se pasó ningún generador aleatorio")
    if law == "uniform_ball":
        noise = _uniform_ball(bounds, d, rng)
    elif law == "gaussian_ball":
        noise = _gaussian_ball(bounds, d, rng)
    else:
        raise ValueError(f"Ley de ruido desconocida: {law}")
    # por si el redondeo deja una norma en c·(1 + eps)
    norms = np.linalg.norm(noise, axis=1)
    over = norms > bounds
    if over.any():
        noise[over] *= (bounds[over] / norms[over])[:, None]
    return noise


def noisy_gradient(
    spec: ObjectiveSpec,
    u: np.ndarray,
    rng: np.random.Generator | None,
) -> GradientSample:
    true_grad = np.atleast_1d(spec.gradient(np.atleast_1d(np.asarray(u, dtype=float))))
    noise = sample_noise(np.array([spec.noise_bound]), spec.dim, spec.noise_law, rng)[0]
    return GradientSample(value=true_grad + noise, true_grad=true_grad, noise=noise)
