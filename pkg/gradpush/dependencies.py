"""Carga y validación del YAML de experimento y construcción de grafo, objetivo y paso."""
import dataclasses
import logging
from pathlib import Path

import yaml
from pydantic import ValidationError

from gradpush.errors import ConfigError, TraceIOError
from gradpush.graphs.generators import (
    alternating_one_way,
    complete,
    directed_cycle,
    generate_alternating_stars,
    generate_cycle_plus_random,
    load_edge_list,
)
from gradpush.graphs.model import GraphSequence
from gradpush.objectives.network import (
    NetworkObjective,
    quadratic_estimation_preset,
    random_quadratic_preset,
)
from gradpush.protocol.schedule import (
    StepSchedule,
    conservative_p_from_min,
    min_consensus,
    theorem1_schedule,
)
from gradpush.schemas import ExperimentConfig
from gradpush.utils.rng import STREAM_GRAPH, derive_seed

logger = logging.getLogger(__name__)


def _field_path(loc: tuple) -> str:
    return ".".join(str(part) for part in loc) or "config"


def validate_config(raw: dict) -> ExperimentConfig:
    """Valida un dict ya parseado; el primer error se reporta como ConfigError con su campo."""
    try:
        return ExperimentConfig.model_validate(raw)
    except ValidationError as e:
        first = e.errors()[0]
        raise ConfigError(first["msg"], field=_field_path(first["loc"])) from e


def load_config(path: str | Path, **overrides) -> ExperimentConfig:
    """
    Lee el YAML y aplica los overrides del CLI (seed, runs, horizon, output) que no sean None.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise TraceIOError(path, e) from e
    try:
        raw = yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise ConfigError(f"YAML inválido: {e}", field=str(path)) from e
    if not isinstance(raw, dict):
        raise ConfigError("el documento debe ser un mapeo", field=str(path))

    raw.update({k: v for k, v in overrides.items() if v is not None})
    cfg = validate_config(raw)
    logger.info("Loaded config %s (n=%d, T=%d, R=%d, seed=%d)", path, cfg.n, cfg.horizon, cfg.runs, cfg.seed)
    return cfg


def build_graph_sequence(cfg: ExperimentConfig, run_seed: int | None = None) -> GraphSequence:
    """
    Secuencia de grafos de un run. cycle_plus_random usa graph.seed si está fijado; si no,
    una semilla derivada de la del run (o de la maestra si no hay run).
    """
    g = cfg.graph
    match g.generator:
        case "cycle_plus_random":
            seed = g.seed if g.seed is not None else derive_seed(
                cfg.seed if run_seed is None else run_seed, STREAM_GRAPH
            )
            return generate_cycle_plus_random(cfg.n, seed)
        case "alternating_stars":
            return generate_alternating_stars(cfg.n, g.hub_a, g.hub_b)
        case "complete":
            return complete(cfg.n)
        case "directed_cycle":
            return directed_cycle(cfg.n)
        case "alternating_one_way":
            a = 0 if g.hub_a is None else g.hub_a
            b = 1 if g.hub_b is None else g.hub_b
            return dataclasses.replace(alternating_one_way(a, b, cfg.n), declared_B=2)
        case "edge_list":
            seq = load_edge_list(g.path, cfg.n)
            return dataclasses.replace(seq, declared_B=g.B) if g.B is not None else seq
    raise ConfigError(f"generador desconocido {g.generator!r}", field="graph.generator")


def build_objective(cfg: ExperimentConfig) -> NetworkObjective:
    """El objetivo es el mismo en todos los runs: semilla objective.seed o, si falta, la maestra."""
    o = cfg.objective
    seed = cfg.seed if o.seed is None else o.seed
    if o.preset == "quadratic_estimation":
        return quadratic_estimation_preset(
            cfg.n, seed, theta_hat=o.theta_hat, noise_bound=o.noise_bound, noise_law=o.noise_law
        )
    return random_quadratic_preset(
        cfg.n, cfg.d, seed, condition=o.condition, noise_bound=o.noise_bound, noise_law=o.noise_law
    )


def build_schedule(cfg: ExperimentConfig, objective: NetworkObjective, seq: GraphSequence) -> StepSchedule:
    s = cfg.schedule
    if s.rule == "explicit":
        return StepSchedule(p=s.p)
    if s.rule == "theorem1":
        return theorem1_schedule(objective.mus)
    mins = min_consensus(objective.mus, seq, steps=s.consensus_rounds)
    return conservative_p_from_min(mins, cfg.n)
