"""
Tipos básicos del modelo de grafos: DirectedGraph, GraphSequence y MixingMatrix.

Convención: cada nodo es siempre in- y out-vecino de sí mismo, así que los self-loops se
guardan explícitamente y d_i(t) los cuenta. Con eso la matriz A(t) se construye literalmente:
A_ij = 1/d_j(t) si j es in-vecino de i, 0 en otro caso.
"""
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Iterator

import networkx as nx
import numpy as np
from scipy import sparse

from gradpush.errors import GraphError

COLUMN_SUM_TOL = 1e-12


@dataclass(frozen=True)
class DirectedGraph:
    """Grafo dirigido con self-loops. `out_neighbors[i]` lista ordenada, sin duplicados."""

    n: int
    out_neighbors: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 1:
            raise GraphError("El grafo necesita al menos un nodo")
        if len(self.out_neighbors) != self.n:
            raise GraphError(
                f"out_neighbors tiene {len(self.out_neighbors)} entradas para n={self.n}"
            )
        for i, outs in enumerate(self.out_neighbors):
            if i not in outs:
                raise GraphError(f"El nodo {i} no figura como out-vecino de sí mismo")
            if len(set(outs)) != len(outs):
                raise GraphError(f"Out-vecinos duplicados en el nodo {i}")
            if any(j < 0 or j >= self.n for j in outs):
                raise GraphError(f"Índice de vecino fuera de rango en el nodo {i}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "DirectedGraph":
        """Construye el grafo desde aristas (src, dst); añade los self-loops que falten."""
        outs: list[list[int]] = [[i] for i in range(n)]
        for src, dst in edges:
            if not (0 <= src < n and 0 <= dst < n):
                raise GraphError(f"Arista ({src}, {dst}) fuera de rango para n={n}")
            if dst not in outs[src]:
                outs[src].append(dst)
        return cls(n=n, out_neighbors=tuple(tuple(o) for o in outs))

    @cached_property
    def out_degrees(self) -> np.ndarray:
        return np.array([len(o) for o in self.out_neighbors], dtype=np.int64)

    @cached_property
    def in_neighbors(self) -> tuple[tuple[int, ...], ...]:
        ins: list[list[int]] = [[] for _ in range(self.n)]
        for j, outs in enumerate(self.out_neighbors):
            for i in outs:
                ins[i].append(j)
        return tuple(tuple(sorted(x)) for x in ins)

    @cached_property
    def in_degrees(self) -> np.ndarray:
        return np.array([len(x) for x in self.in_neighbors], dtype=np.int64)

    @cached_property
    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """(src, dst) como arrays, self-loops incluidos."""
        src = np.repeat(np.arange(self.n), self.out_degrees)
        dst = np.fromiter(
            (j for outs in self.out_neighbors for j in outs), dtype=np.int64, count=len(src)
        )
        return src, dst

    def edges(self) -> Iterator[tuple[int, int]]:
        for i, outs in enumerate(self.out_neighbors):
            for j in outs:
                yield i, j

    def is_regular(self) -> bool:
        """Regular: todos los in- y out-grados (self-loop incluido) iguales a un mismo d."""
        d = self.out_degrees[0]
        return bool(np.all(self.out_degrees == d) and np.all(self.in_degrees == d))

    def to_networkx(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges())
        return g


@dataclass(frozen=True)
class GraphSequence:
    """
    Secuencia indexada t -> G(t).

    `supplier` debe ser determinista (las familias aleatorias usan un RNG por (seed, t)).
    `connected_by_construction` marca generadores cuya B-conectividad está garantizada por
    construcción (p. ej. el ciclo fijo de cycle_plus_random), ya que no se puede verificar
    un horizonte infinito.
    """

    supplier: Callable[[int], DirectedGraph]
    n: int
    declared_B: int | None = None
    name: str = "custom"
    connected_by_construction: bool = False

    def __post_init__(self):
        if self.declared_B is not None and self.declared_B < 1:
            raise GraphError("declared_B debe ser un entero positivo")

    def graph(self, t: int) -> DirectedGraph:
        if t < 0:
            raise GraphError(f"t debe ser >= 0 (recibido {t})")
        g = self.supplier(t)
        if g.n != self.n:
            raise GraphError(f"G({t}) tiene {g.n} nodos; la secuencia declara {self.n}")
        return g

    def __call__(self, t: int) -> DirectedGraph:
        return self.graph(t)


@dataclass(frozen=True)
class MixingMatrix:
    """Matriz column-estocástica A(t) en formato CSR, junto con el grafo de origen."""

    entries: sparse.csr_array
    source_graph: DirectedGraph

    @property
    def n(self) -> int:
        return self.source_graph.n

    def dense(self) -> np.ndarray:
        return self.entries.toarray()

    def column_sums(self) -> np.ndarray:
        return np.asarray(self.entries.sum(axis=0)).ravel()

    def diagonal(self) -> np.ndarray:
        return self.entries.diagonal()

    def __matmul__(self, other: np.ndarray) -> np.ndarray:
        return self.entries @ other


def build_mixing_matrix(g: DirectedGraph) -> MixingMatrix:
    """A_ij = 1/d_j(t) para j in N_i^in(t), 0 en otro caso."""
    degrees = g.out_degrees
    if np.any(degrees < 1):
        bad = int(np.argmin(degrees))
        raise GraphError(f"El nodo {bad} tiene out-grado 0: grafo corrupto")
    src, dst = g.edge_arrays
    data = 1.0 / degrees[src]
    entries = sparse.csr_array((data, (dst, src)), shape=(g.n, g.n))
    return MixingMatrix(entries=entries, source_graph=g)
