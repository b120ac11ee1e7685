"""
Conectividad fuerte y B-conectividad fuerte de secuencias de grafos.
"""
import logging
from dataclasses import dataclass

import networkx as nx

from gradpush.errors import ConnectivityError
from gradpush.graphs.model import DirectedGraph, GraphSequence

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ConnectivityReport:
    """Resultado de la verificación; es truthy si y solo si todas las ventanas pasan."""

    ok: bool
    B: int
    horizon: int
    windows_checked: int
    first_failing_window: int | None = None

    def __bool__(self) -> bool:
        return self.ok

    def raise_for_failure(self) -> None:
        if not self.ok:
            raise ConnectivityError(
                f"La ventana {self.first_failing_window} (B={self.B}) no es fuertemente conexa",
                window=self.first_failing_window,
            )


def is_strongly_connected(g: DirectedGraph) -> bool:
    if g.n == 1:
        return True
    return nx.is_strongly_connected(g.to_networkx())


def window_union(seq: GraphSequence, start: int, length: int) -> nx.DiGraph:
    """Grafo con la unión de aristas E(start) ... E(start + length - 1)."""
    union = nx.DiGraph()
    union.add_nodes_from(range(seq.n))
    for t in range(start, start + length):
        union.add_edges_from(seq.graph(t).edges())
    return union


def verify_B_strong_connectivity(seq: GraphSequence, B: int, horizon: int) -> ConnectivityReport:
    """
    Comprueba que E_B(k) = E(kB) ∪ ... ∪ E((k+1)B - 1) sea fuertemente conexo para cada
    ventana completa dentro de [0, horizon). Se detiene en la primera ventana que falla.
    """
    if B < 1:
        raise ValueError("B debe ser un entero positivo")
    if horizon < B:
        raise ValueError(f"horizon ({horizon}) debe ser >= B ({B})")

    windows = horizon // B
    for k in range(windows):
        union = window_union(seq, k * B, B)
        if seq.n > 1 and not nx.is_strongly_connected(union):
            logger.info("Window %d of %s is not strongly connected (B=%d)", k, seq.name, B)
            return ConnectivityReport(
                ok=False, B=B, horizon=horizon, windows_checked=k + 1, first_failing_window=k
            )
    return ConnectivityReport(ok=True, B=B, horizon=horizon, windows_checked=windows)
