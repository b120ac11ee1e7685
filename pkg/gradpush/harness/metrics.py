"""
Métricas por paso y agregación Monte Carlo.

Por nodo seguido: ln‖ẑ_i - z*‖, ln‖z_i - z*‖, ‖z_i - z*‖, ‖ẑ_i - z*‖, F(ẑ_i) - F*, el lado
izquierdo de la cota de convergencia y las coordenadas de ẑ_i (zhat_k). A nivel de red (node = -1): residuo de
consenso, max_i ‖z_i‖ y Σ_j ‖ε_j‖₁.
"""
import numpy as np
import pandas as pd

from gradpush.errors import ConfigError
from gradpush.harness.traces import NETWORK_NODE
from gradpush.objectives.network import NetworkObjective
from gradpush.protocol.optimizer import OptimizerState
from gradpush.protocol.pushsum import consensus_residual, l1_norm

# ln de un error exactamente 0
LN_FLOOR = float(np.log(np.finfo(float).tiny))

NODE_METRICS = ("ln_error_zhat", "ln_error_z", "dist_z", "dist_zhat", "gap_zhat", "theorem1_lhs", "zhat")
NETWORK_METRICS = ("consensus_residual", "max_iterate_norm", "perturbation_l1")


def _safe_log(values: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore"):
        return np.maximum(np.log(values), LN_FLOOR)


def step_records(
    state: OptimizerState,
    objective: NetworkObjective,
    tracked: np.ndarray,
    metrics: frozenset[str],
) -> list[tuple[int, str, float]]:
    """(node, metric, value) del estado en su t actual."""
    rows: list[tuple[int, str, float]] = []
    z = state.z
    zhat = state.zhat

    dist_zhat_all = None
    if metrics & {"ln_error_zhat", "dist_zhat", "theorem1_lhs"}:
        dist_zhat_all = np.linalg.norm(zhat - objective.z_star, axis=1)
    dist_z = np.linalg.norm(z[tracked] - objective.z_star, axis=1)

    columns: dict[str, np.ndarray] = {}
    if "ln_error_zhat" in metrics:
        columns["ln_error_zhat"] = _safe_log(dist_zhat_all[tracked])
    if "ln_error_z" in metrics:
        columns["ln_error_z"] = _safe_log(dist_z)
    if "dist_z" in metrics:
        columns["dist_z"] = dist_z
    if "dist_zhat" in metrics:
        columns["dist_zhat"] = dist_zhat_all[tracked]
    if metrics & {"gap_zhat", "theorem1_lhs"}:
        gaps = objective.gaps(zhat[tracked])
        if "gap_zhat" in metrics:
            columns["gap_zhat"] = gaps
        if "theorem1_lhs" in metrics:
            # F(ẑ_i) - F* + Σ_j μ_j ‖ẑ_j - z*‖²
            columns["theorem1_lhs"] = gaps + float(objective.mus @ dist_zhat_all**2)

    for pos, node in enumerate(tracked):
        node = int(node)
        for name, values in columns.items():
            rows.append((node, name, float(values[pos])))
        if "zhat" in metrics:
            rows.extend((node, f"zhat_{k}", float(v)) for k, v in enumerate(zhat[node]))

    if "consensus_residual" in metrics:
        rows.append((NETWORK_NODE, "consensus_residual", consensus_residual(state.pushsum)))
    if "max_iterate_norm" in metrics:
        rows.append((NETWORK_NODE, "max_iterate_norm", float(np.max(np.linalg.norm(z, axis=1)))))
    if "perturbation_l1" in metrics and state.perturbation is not None:
        rows.append((NETWORK_NODE, "perturbation_l1", l1_norm(state.perturbation)))
    return rows


def select_metric(frame: pd.DataFrame, metric: str) -> pd.DataFrame:
    selected = frame[frame["metric"] == metric]
    if selected.empty:
        raise ConfigError(f"la traza no contiene la métrica '{metric}'", field="metric")
    return selected


def aggregate_metric(frame: pd.DataFrame, metric: str) -> pd.DataFrame:
    """
    Media Monte Carlo por (t, node) con su error estándar.

    Columnas: t, node, mean, se, count. Con un solo run se = 0.
    """
    grouped = select_metric(frame, metric).groupby(["t", "node"], sort=True)["value"]
    out = grouped.agg(mean="mean", std="std", count="count").reset_index()
    out["se"] = (out["std"] / np.sqrt(out["count"])).fillna(0.0)
    return out[["t", "node", "mean", "se", "count"]]


def block_means(series: pd.Series, window: int) -> pd.Series:
    """
    Media de `series` (indexada por t >= 1) en bloques disjuntos t ∈ [1 + k·window, (k+1)·window].

    Devuelve una entrada por bloque, indexada por k; el último bloque puede quedar incompleto.
    """
    if window < 1:
        raise ValueError("window debe ser >= 1")
    series = series[series.index >= 1]
    return series.groupby((series.index - 1) // window).mean()
