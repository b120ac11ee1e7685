from pathlib import Path

import numpy as np
import pytest
import yaml

from gradpush.graphs.generators import (
    alternating_one_way,
    complete,
    directed_cycle,
    generate_alternating_stars,
    generate_cycle_plus_random,
)


def small_sequences() -> list:
    """Presets con n <= 10 usados en las suites de conservación y exactitud."""
    return [
        complete(4),
        directed_cycle(3),
        directed_cycle(7),
        generate_cycle_plus_random(6, seed=3),
        generate_cycle_plus_random(10, seed=11),
        generate_alternating_stars(5, 0, 3),
    ]


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)


@pytest.fixture
def one_way():
    return alternating_one_way(0, 1, n=2)


@pytest.fixture
def write_config(tmp_path):
    """Escribe un dict como YAML en tmp_path y devuelve la ruta."""

    def _write(data: dict, name: str = "experiment.yaml") -> Path:
        path = tmp_path / name
        path.write_text(yaml.safe_dump(data, sort_keys=False), encoding="utf-8")
        return path

    return _write


@pytest.fixture
def small_config(tmp_path) -> dict:
    return {
        "n": 6,
        "horizon": 30,
        "runs": 2,
        "seed": 42,
        "output": str(tmp_path / "traces.csv"),
        "graph": {"generator": "cycle_plus_random"},
        "objective": {"preset": "quadratic_estimation", "noise_bound": 0.3},
    }
