"""
Persistencia de trazas en CSV largo: `run,t,node,metric,value`.

Floats con 17 cifras significativas ('%.17g'), fin de línea LF, UTF-8, filas ordenadas por
(run, t, node, metric). Una línea opcional `# ...` al principio guarda metadatos del experimento
(nodos seguidos, runs divergidos) y se conserva en `frame.attrs["comment"]` al releer.
"""
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

import numpy as np
import pandas as pd

from gradpush.errors import TraceIOError

logger = logging.getLogger(__name__)

COLUMNS = ["run", "t", "node", "metric", "value"]
SORT_KEYS = ["run", "t", "node", "metric"]
FLOAT_FORMAT = "%.17g"
NETWORK_NODE = -1


@dataclass(frozen=True)
class RunTrace:
    """Registros de un run. `records` tiene las columnas de COLUMNS."""

    run: int
    records: pd.DataFrame
    diverged: bool = False
    diverged_at: int | None = None

    @classmethod
    def from_rows(
        cls,
        run: int,
        rows: list[tuple[int, int, str, float]],
        diverged: bool = False,
        diverged_at: int | None = None,
    ) -> "RunTrace":
        frame = pd.DataFrame(rows, columns=["t", "node", "metric", "value"])
        frame.insert(0, "run", run)
        return cls(run=run, records=_typed(frame), diverged=diverged, diverged_at=diverged_at)


def _typed(frame: pd.DataFrame) -> pd.DataFrame:
    return frame.astype({"run": np.int64, "t": np.int64, "node": np.int64, "metric": str, "value": np.float64})


def to_frame(traces: Iterable[RunTrace] | pd.DataFrame) -> pd.DataFrame:
    """Une las trazas en un único DataFrame ordenado por (run, t, node, metric)."""
    if isinstance(traces, pd.DataFrame):
        frame = traces
    else:
        frames = [tr.records for tr in traces]
        frame = pd.concat(frames, ignore_index=True) if frames else pd.DataFrame(columns=COLUMNS)
    frame = _typed(frame[COLUMNS])
    return frame.sort_values(SORT_KEYS, kind="mergesort").reset_index(drop=True)


def emit_csv(
    traces: Iterable[RunTrace] | pd.DataFrame,
    path: str | Path,
    comment: str | None = None,
) -> None:
    frame = to_frame(traces)
    if comment is None and isinstance(traces, pd.DataFrame):
        comment = traces.attrs.get("comment")
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as fh:
            if comment:
                fh.write(f"# {comment}\n")
            frame.to_csv(fh, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    except OSError as e:
        raise TraceIOError(path, e) from e
    logger.info("Wrote %d trace records to %s", len(frame), path)


def read_csv(path: str | Path) -> pd.DataFrame:
    """Inversa de emit_csv; el comentario de cabecera queda en `attrs["comment"]`."""
    path = Path(path)
    try:
        with open(path, encoding="utf-8", newline="") as fh:
            first = fh.readline()
            comment = first[2:].rstrip("\n") if first.startswith("# ") else None
            if comment is None:
                fh.seek(0)
            frame = pd.read_csv(
                fh,
                dtype={"run": np.int64, "t": np.int64, "node": np.int64, "metric": str},
                float_precision="round_trip",
            )
    except OSError as e:
        raise TraceIOError(path, e) from e
    except (ValueError, pd.errors.ParserError) as e:
        raise TraceIOError(path, ValueError(f"CSV de trazas inválido: {e}")) from e
    if list(frame.columns) != COLUMNS:
        raise TraceIOError(path, ValueError(f"cabecera inesperada {list(frame.columns)}"))
    frame = _typed(frame)
    frame.attrs["comment"] = comment
    return frame


def parse_comment(comment: str | None) -> dict[str, str]:
    """`clave=valor` separados por espacios, como los escribe el comando run."""
    if not comment:
        return {}
    return dict(part.split("=", 1) for part in comment.split() if "=" in part)
