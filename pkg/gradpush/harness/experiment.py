"""
Ejecución Monte Carlo de un ExperimentConfig.

Cada run se construye completo dentro del worker a partir de la config y de su índice (grafo,
objetivo, paso, x(0)), así que el resultado depende solo de (config, semilla maestra) y no del
reparto de runs entre procesos.
"""
import logging
import os
import time
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from joblib import Parallel, delayed

from gradpush.dependencies import build_graph_sequence, build_objective, build_schedule
from gradpush.errors import DivergenceError, NumericalBreakdownError
from gradpush.graphs.model import build_mixing_matrix
from gradpush.harness.metrics import step_records
from gradpush.harness.monitors import BoundednessMonitor
from gradpush.harness.traces import NETWORK_NODE, RunTrace
from gradpush.objectives.network import NetworkObjective
from gradpush.protocol.optimizer import OptimizerState, sgp_step
from gradpush.protocol.pushsum import l1_norm
from gradpush.protocol.schedule import StepSchedule
from gradpush.schemas import ExperimentConfig
from gradpush.utils.rng import STREAM_INIT, STREAM_ORACLE, STREAM_RUN, STREAM_SAMPLE, derive_seed, substream

logger = logging.getLogger(__name__)

DEFAULT_N_JOBS = int(os.getenv("GRADPUSH_N_JOBS", "1"))


@dataclass(frozen=True)
class ExperimentResult:
    traces: list[RunTrace]
    tracked_nodes: list[int]
    objective: NetworkObjective
    schedule: StepSchedule
    elapsed_seconds: float

    @property
    def diverged_runs(self) -> list[int]:
        return [tr.run for tr in self.traces if tr.diverged]

    def header_comment(self) -> str:
        tracked = ",".join(str(i) for i in self.tracked_nodes)
        diverged = ",".join(str(r) for r in self.diverged_runs)
        return f"tracked_nodes={tracked} diverged_runs={diverged} p={self.schedule.p!r}"


def select_tracked_nodes(cfg: ExperimentConfig) -> list[int]:
    """Lista explícita, todos los nodos si n <= k, o k nodos elegidos con la semilla maestra."""
    if isinstance(cfg.tracked_nodes, list):
        return sorted(set(cfg.tracked_nodes))
    if cfg.n <= cfg.tracked_nodes:
        return list(range(cfg.n))
    rng = substream(cfg.seed, STREAM_SAMPLE)
    return sorted(int(i) for i in rng.choice(cfg.n, size=cfg.tracked_nodes, replace=False))


def run_seed(cfg: ExperimentConfig, run: int) -> int:
    return derive_seed(cfg.seed, STREAM_RUN, run)


def initial_point(cfg: ExperimentConfig, seed: int) -> np.ndarray:
    if cfg.init == "zeros":
        return np.zeros((cfg.n, cfg.d))
    return substream(seed, STREAM_INIT).standard_normal((cfg.n, cfg.d))


def run_single(cfg: ExperimentConfig, run: int, monitor: BoundednessMonitor | None = None) -> RunTrace:
    """Un run de T pasos. La divergencia marca el run y conserva lo registrado hasta entonces."""
    seed = run_seed(cfg, run)
    objective = build_objective(cfg)
    seq = build_graph_sequence(cfg, run_seed=seed)
    schedule = build_schedule(cfg, objective, seq)
    tracked = np.array(select_tracked_nodes(cfg))
    metrics = frozenset(cfg.metrics)
    noisy = bool(np.any(objective.noise_bounds > 0))
    mixing = lru_cache(maxsize=8)(build_mixing_matrix)

    x0 = initial_point(cfg, seed)
    state = OptimizerState.initial(x0)
    rows: list[tuple[int, int, str, float]] = [(0, NETWORK_NODE, "x0_l1", l1_norm(x0))]
    if "max_iterate_norm" in metrics:
        # z(0) = x(0): la cota D también debe cubrir t = 0
        rows.append((0, NETWORK_NODE, "max_iterate_norm", float(np.max(np.linalg.norm(state.z, axis=1)))))
    diverged_at = None
    try:
        for t in range(cfg.horizon):
            rng = substream(seed, STREAM_ORACLE, t + 1) if noisy else None
            state = sgp_step(state, mixing(seq.graph(t)), objective, schedule, rng)
            rows.extend((state.t, node, name, value) for node, name, value in step_records(state, objective, tracked, metrics))
            if monitor is not None:
                monitor.observe(state)
    except (DivergenceError, NumericalBreakdownError) as e:
        diverged_at = getattr(e, "t", state.t + 1)
        logger.warning("Run %d diverged at t=%d: %s", run, diverged_at, e)

    return RunTrace.from_rows(run, rows, diverged=diverged_at is not None, diverged_at=diverged_at)


def run_experiment(cfg: ExperimentConfig, n_jobs: int | None = None) -> ExperimentResult:
    """R runs independientes en paralelo (joblib, procesos); trazas en orden de run."""
    n_jobs = n_jobs or cfg.n_jobs or DEFAULT_N_JOBS
    start = time.perf_counter()
    logger.info("Starting experiment: n=%d, T=%d, R=%d, n_jobs=%d", cfg.n, cfg.horizon, cfg.runs, n_jobs)

    objective = build_objective(cfg)
    schedule = build_schedule(cfg, objective, build_graph_sequence(cfg))
    traces = Parallel(n_jobs=n_jobs, prefer="processes")(
        delayed(run_single)(cfg, run) for run in range(cfg.runs)
    )
    traces = sorted(traces, key=lambda tr: tr.run)
    elapsed = time.perf_counter() - start

    result = ExperimentResult(
        traces=traces,
        tracked_nodes=select_tracked_nodes(cfg),
        objective=objective,
        schedule=schedule,
        elapsed_seconds=elapsed,
    )
    if result.diverged_runs:
        logger.warning("%d of %d runs diverged: %s", len(result.diverged_runs), cfg.runs, result.diverged_runs)
    logger.info("Experiment finished in %.2fs", elapsed)
    return result
