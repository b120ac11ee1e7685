"""
Certificación empírica de las hipótesis de un ObjectiveSpec sobre pares de puntos aleatorios:
convexidad fuerte con módulo μ, gradiente M-Lipschitz (si M está definido) y gradiente
analítico frente a diferencias finitas centradas.

Nunca lanza por una violación: devuelve un AssumptionReport con los pares que fallan.
"""
import numpy as np

from gradpush.objectives.functions import ObjectiveSpec
from gradpush.schemas import AssumptionReport, AssumptionViolation

FD_STEP = 1e-6
FD_RTOL = 1e-5
SLACK_TOL = 1e-9
ROUNDOFF = 1e-14
MAX_REPORTED_VIOLATIONS = 20


def _sample_ball(rng: np.random.Generator, radius: float, d: int) -> np.ndarray:
    direction = rng.standard_normal(d)
    norm = np.linalg.norm(direction)
    if norm == 0.0:
        return np.zeros(d)
    return direction / norm * radius * rng.uniform() ** (1.0 / d)


def finite_difference_gradient(spec: ObjectiveSpec, z: np.ndarray, h: float = FD_STEP) -> np.ndarray:
    grad = np.empty(spec.dim)
    for k in range(spec.dim):
        e = np.zeros(spec.dim)
        e[k] = h
        grad[k] = (spec.evaluate(z + e) - spec.evaluate(z - e)) / (2.0 * h)
    return grad


def certify_assumptions(
    spec: ObjectiveSpec,
    trials: int,
    radius: float,
    rng: np.random.Generator,
) -> AssumptionReport:
    if trials < 1:
        raise ValueError("certify_assumptions necesita trials >= 1")

    sc_slacks = []
    lip_slacks = []
    fd_errors = []
    violations: list[AssumptionViolation] = []

    def flag(kind: str, x: np.ndarray, y: np.ndarray, slack: float) -> None:
        if len(violations) < MAX_REPORTED_VIOLATIONS:
            violations.append(
                AssumptionViolation(kind=kind, x=x.tolist(), y=y.tolist(), slack=slack)
            )

    violation_count = 0
    for _ in range(trials):
        x = _sample_ball(rng, radius, spec.dim)
        y = _sample_ball(rng, radius, spec.dim)
        diff = x - y
        dist2 = float(diff @ diff)
        if dist2 == 0.0:
            continue
        gx, gy = spec.gradient(x), spec.gradient(y)

        fx, fy = spec.evaluate(x), spec.evaluate(y)
        # f(x) - f(y) - ∇f(y)ᵀ(x - y) - μ/2‖x - y‖², normalizado por ‖x - y‖²
        sc = (fx - fy - gy @ diff) / dist2 - spec.mu / 2.0
        sc_slacks.append(sc)
        # el error de redondeo de f(x) - f(y) crece al dividir por ‖x - y‖²
        sc_tol = SLACK_TOL + ROUNDOFF * max(1.0, abs(fx), abs(fy)) / dist2
        if sc < -sc_tol:
            violation_count += 1
            flag("strong_convexity", x, y, sc)

        if spec.M is not None:
            lip = spec.M - float(np.linalg.norm(gx - gy)) / np.sqrt(dist2)
            lip_slacks.append(lip)
            if lip < -SLACK_TOL:
                violation_count += 1
                flag("lipschitz", x, y, lip)

        fd = finite_difference_gradient(spec, x)
        err = float(np.linalg.norm(fd - gx)) / max(1.0, float(np.linalg.norm(gx)))
        fd_errors.append(err)
        if err > FD_RTOL:
            violation_count += 1
            flag("finite_difference", x, x, -err)

    return AssumptionReport(
        objective=spec.name,
        trials=trials,
        radius=radius,
        mu=spec.mu,
        M=spec.M,
        strong_convexity_min_slack=min(sc_slacks) if sc_slacks else 0.0,
        lipschitz_min_slack=min(lip_slacks) if lip_slacks else None,
        finite_difference_max_error=max(fd_errors) if fd_errors else 0.0,
        violation_count=violation_count,
        violations=violations,
    )
