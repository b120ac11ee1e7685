"""Ajuste log-log de la velocidad de convergencia: ln(métrica) = a + b·ln t."""
import numpy as np
import pandas as pd
from scipy import stats

from gradpush.errors import ConfigError, NonPositiveMetricError
from gradpush.harness.metrics import aggregate_metric
from gradpush.schemas import RateFitResponse


def fit_power_law(t: np.ndarray, values: np.ndarray, metric: str = "metric") -> RateFitResponse:
    t = np.asarray(t, dtype=float)
    values = np.asarray(values, dtype=float)
    if t.size < 3:
        raise ConfigError(f"se necesitan al menos 3 puntos para ajustar (hay {t.size})", field="window")
    if np.any(values <= 0) or not np.all(np.isfinite(values)):
        bad = t[(values <= 0) | ~np.isfinite(values)]
        raise NonPositiveMetricError(f"'{metric}' no es positiva en t={int(bad[0])}")
    fit = stats.linregress(np.log(t), np.log(values))
    return RateFitResponse(
        metric=metric,
        from_t=int(t.min()),
        to_t=int(t.max()),
        points=int(t.size),
        slope=float(fit.slope),
        slope_stderr=float(fit.stderr),
        intercept=float(fit.intercept),
        intercept_stderr=float(fit.intercept_stderr),
        r_squared=float(fit.rvalue**2),
    )


def rate_fit(
    traces: pd.DataFrame,
    metric: str,
    window: tuple[int, int],
    node: int | None = None,
    conservative: bool = False,
) -> RateFitResponse:
    """
    Ajusta la media Monte Carlo de `metric` por t dentro de window = (desde, hasta), ambos incluidos.

    Sin `node` se promedian todos los nodos registrados. Con conservative=True se ajusta
    media + 2·SE en lugar de la media.
    """
    lo, hi = window
    if lo < 1 or hi <= lo:
        raise ConfigError(f"ventana inválida [{lo}, {hi}]", field="window")
    agg = aggregate_metric(traces, metric)
    if node is not None:
        agg = agg[agg["node"] == node]
    agg = agg[(agg["t"] >= lo) & (agg["t"] <= hi)]
    per_t = agg.groupby("t", sort=True).agg(mean=("mean", "mean"), se=("se", "max"))
    values = per_t["mean"] + 2.0 * per_t["se"] if conservative else per_t["mean"]
    return fit_power_law(per_t.index.to_numpy(), values.to_numpy(), metric=metric)
