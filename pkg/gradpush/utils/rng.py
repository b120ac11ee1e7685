"""
Subflujos aleatorios basados en contador.

Cada subflujo es un Philox inicializado con un SeedSequence sobre una tupla de claves enteras
(semilla maestra, índice de run, nombre del flujo, t, ...). Misma tupla => mismos números, sin
guardar historial y sin depender del orden en que se consuman otros flujos.
"""
import zlib

import numpy as np

# Nombres de flujo -> entero estable (crc32), para poder mezclarlos en SeedSequence.
STREAM_GRAPH = "graph"
STREAM_INIT = "init"
STREAM_ORACLE = "oracle"
STREAM_OBJECTIVE = "objective"
STREAM_RUN = "run"
STREAM_SAMPLE = "sample"


def _key(part: int | str) -> int:
    if isinstance(part, str):
        return zlib.crc32(part.encode("utf-8"))
    if part < 0:
        raise ValueError(f"Las claves de semilla deben ser >= 0 (recibido {part})")
    return int(part)


def substream(*keys: int | str) -> np.random.Generator:
    """Generador Philox determinista para la tupla de claves dada."""
    seq = np.random.SeedSequence([_key(k) for k in keys])
    return np.random.Generator(np.random.Philox(seq))


def derive_seed(*keys: int | str) -> int:
    """Entero de 63 bits derivado de las claves (para semillas de runs y de grafos)."""
    seq = np.random.SeedSequence([_key(k) for k in keys])
    return int(seq.generate_state(1, np.uint64)[0] >> np.uint64(1))
