"""
Evaluación de la cota de convergencia de ẑ y comparación con el lado izquierdo medido.

    RHS(τ) = (80L/(τδ))·λ/(1-λ)·Σ‖x_j(0)‖₁
           + (80pLn·max_j B_j / (τδ(1-λ)))·(1 + ln(τ-1))
           + (p/τ)·Σ(L_j + c_j)²

con L = ΣL_j y B_j = √d(L_j + c_j). L_j es la cota de ‖∇f_j‖ en la bola de radio D, así que la
cota solo es válida si D acota de verdad los iterados: se rechaza D < max‖z_i(t)‖ medido.
"""
import logging
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
import pandas as pd

from gradpush.errors import ConfigError, UnsoundInputsError
from gradpush.graphs.spectral import SpectralConstants
from gradpush.harness.metrics import aggregate_metric, select_metric
from gradpush.objectives.functions import gradient_norm_bound
from gradpush.objectives.network import NetworkObjective
from gradpush.schemas import BoundInputs, BoundReport, BoundRow

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Theorem1Terms:
    initial: float
    disagreement: float
    noise: float

    @property
    def total(self) -> float:
        return self.initial + self.disagreement + self.noise


def theorem1_rhs(
    tau: int,
    *,
    L_j: Sequence[float],
    c_j: Sequence[float],
    p: float,
    d: int,
    constants: SpectralConstants,
    x0_l1: float,
) -> Theorem1Terms:
    if tau < 2:
        raise ValueError(f"La cota necesita tau >= 2 (recibido {tau})")
    L_j = np.asarray(L_j, dtype=float)
    c_j = np.asarray(c_j, dtype=float)
    n = L_j.size
    delta, lam = constants.delta, constants.lam
    L = float(L_j.sum())
    B_max = float(np.max(math.sqrt(d) * (L_j + c_j)))
    q2 = float(np.sum((L_j + c_j) ** 2))

    initial = 80.0 * L / (tau * delta) * lam / (1.0 - lam) * x0_l1
    disagreement = 80.0 * p * L * n * B_max / (tau * delta * (1.0 - lam)) * (1.0 + math.log(tau - 1))
    noise = p / tau * q2
    return Theorem1Terms(initial=initial, disagreement=disagreement, noise=noise)


def corollary2_D(p: float, L_j: Sequence[float], c_j: Sequence[float], d: int) -> float:
    """D del modelo E‖e_j(t)‖₁ <= D/t: p·max_j √d(L_j + c_j)."""
    L_j = np.asarray(L_j, dtype=float)
    c_j = np.asarray(c_j, dtype=float)
    return float(p * math.sqrt(d) * np.max(L_j + c_j))


def theorem1_bound_report(
    traces: pd.DataFrame,
    objective: NetworkObjective,
    p: float,
    constants: SpectralConstants,
    D: float,
    tau_list: Sequence[int],
    L_j: Sequence[float] | None = None,
) -> BoundReport:
    """
    LHS por τ: media Monte Carlo de F(ẑ_i(τ)) - F* + Σμ_j‖ẑ_j(τ) - z*‖² para cada nodo seguido;
    se compara el peor nodo según media + 2·SE.
    """
    if "max_iterate_norm" not in set(traces["metric"]):
        raise UnsoundInputsError("La traza no registra max_iterate_norm: no se puede validar D")
    measured = float(select_metric(traces, "max_iterate_norm")["value"].max())
    if D < measured:
        raise UnsoundInputsError(f"D={D} es menor que la norma máxima medida {measured:.6g}")

    if L_j is None:
        L_j = [gradient_norm_bound(spec, D) for spec in objective.specs]
    L_j = np.asarray(L_j, dtype=float)
    if L_j.size != objective.n:
        raise ConfigError(f"se esperaban {objective.n} valores de L_j", field="L_j")
    c_j = objective.noise_bounds
    x0_l1 = float(select_metric(traces, "x0_l1")["value"].max())

    lhs = aggregate_metric(traces, "theorem1_lhs")
    available = set(lhs["t"])
    rows = []
    for tau in sorted(set(tau_list)):
        if tau not in available:
            raise ConfigError(f"τ={tau} no está en la traza", field="tau")
        at_tau = lhs[lhs["t"] == tau]
        conservative = at_tau["mean"] + 2.0 * at_tau["se"]
        worst = at_tau.loc[conservative.idxmax()]
        terms = theorem1_rhs(tau, L_j=L_j, c_j=c_j, p=p, d=objective.d, constants=constants, x0_l1=x0_l1)
        lhs_conservative = float(worst["mean"] + 2.0 * worst["se"])
        rows.append(
            BoundRow(
                tau=tau,
                lhs_mean=float(worst["mean"]),
                lhs_se=float(worst["se"]),
                lhs_conservative=lhs_conservative,
                rhs_initial=terms.initial,
                rhs_disagreement=terms.disagreement,
                rhs_noise=terms.noise,
                rhs_total=terms.total,
                holds=lhs_conservative <= terms.total,
            )
        )

    inputs = BoundInputs(
        D=D,
        L=float(L_j.sum()),
        L_j=L_j.tolist(),
        c_j=c_j.tolist(),
        mu_j=objective.mus.tolist(),
        B_j=(math.sqrt(objective.d) * (L_j + c_j)).tolist(),
        p=p,
        delta=constants.delta,
        lam=constants.lam,
        q2=float(np.sum((L_j + c_j) ** 2)),
        x0_l1=x0_l1,
        n=objective.n,
        d=objective.d,
        measured_max_norm=measured,
    )
    report = BoundReport(
        inputs=inputs,
        rows=rows,
        runs=int(traces["run"].nunique()),
        holds=all(r.holds for r in rows),
    )
    if not report.holds:
        logger.warning("Convergence bound violated at tau=%s", [r.tau for r in rows if not r.holds])
    return report
