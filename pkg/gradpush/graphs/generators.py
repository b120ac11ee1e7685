"""
Familias de secuencias de grafos.

- cycle_plus_random: cada nodo empuja a sí mismo, al siguiente del ciclo fijo y a un nodo
  uniforme re-muestreado en cada paso.
- alternating_stars: estrella no dirigida centrada en hub_a (t par) / hub_b (t impar).
- complete, directed_cycle, alternating_one_way, static, from_graphs, edge_list: fixtures y
  secuencias explícitas.
"""
import logging
from functools import lru_cache
from pathlib import Path

import numpy as np

from gradpush.errors import GraphError, TraceIOError
from gradpush.graphs.model import DirectedGraph, GraphSequence
from gradpush.utils.rng import STREAM_GRAPH, substream

logger = logging.getLogger(__name__)


def static(g: DirectedGraph, name: str = "static", declared_B: int | None = None) -> GraphSequence:
    """Secuencia constante G(t) = g."""
    return GraphSequence(
        supplier=lambda t: g,
        n=g.n,
        declared_B=declared_B,
        name=name,
    )


def from_graphs(graphs: list[DirectedGraph], name: str = "periodic") -> GraphSequence:
    """Secuencia periódica G(t) = graphs[t mod len(graphs)]."""
    if not graphs:
        raise GraphError("from_graphs necesita al menos un grafo")
    n = graphs[0].n
    if any(g.n != n for g in graphs):
        raise GraphError("Todos los grafos de la secuencia deben tener el mismo n")
    frozen = tuple(graphs)
    return GraphSequence(
        supplier=lambda t: frozen[t % len(frozen)],
        n=n,
        name=name,
    )


def complete_graph(n: int) -> DirectedGraph:
    everyone = tuple(range(n))
    # self primero, como en el resto de generadores
    return DirectedGraph(
        n=n,
        out_neighbors=tuple((i,) + tuple(j for j in everyone if j != i) for i in range(n)),
    )


def directed_cycle_graph(n: int) -> DirectedGraph:
    if n == 1:
        return DirectedGraph(n=1, out_neighbors=((0,),))
    return DirectedGraph(n=n, out_neighbors=tuple((i, (i + 1) % n) for i in range(n)))


def star_graph(n: int, hub: int) -> DirectedGraph:
    """Estrella no dirigida: hub <-> hojas en ambos sentidos, más self-loops."""
    if not 0 <= hub < n:
        raise GraphError(f"hub {hub} fuera de rango para n={n}")
    outs = []
    for i in range(n):
        if i == hub:
            outs.append((i,) + tuple(j for j in range(n) if j != hub))
        else:
            outs.append((i, hub))
    return DirectedGraph(n=n, out_neighbors=tuple(outs))


def complete(n: int) -> GraphSequence:
    return static(complete_graph(n), name="complete", declared_B=1)


def directed_cycle(n: int) -> GraphSequence:
    return static(directed_cycle_graph(n), name="directed_cycle", declared_B=1)


def generate_cycle_plus_random(n: int, seed: int) -> GraphSequence:
    """
    En cada t, out(i) = {i, i+1 mod n, r_i(t)} con r_i(t) uniforme en [0, n), re-muestreado
    con un RNG indexado por (seed, t). Si r_i coincide con i o con el vecino del ciclo se
    fusiona (out-grado 2 en vez de 3).
    """
    if n < 2:
        raise GraphError("cycle_plus_random necesita n >= 2")
    nodes = np.arange(n)
    nxt = (nodes + 1) % n

    @lru_cache(maxsize=256)
    def supplier(t: int) -> DirectedGraph:
        rnd = substream(seed, STREAM_GRAPH, t).integers(0, n, size=n)
        merged = (rnd == nodes) | (rnd == nxt)
        outs = tuple(
            (i, int(nxt[i])) if merged[i] else (i, int(nxt[i]), int(rnd[i])) for i in range(n)
        )
        return DirectedGraph(n=n, out_neighbors=outs)

    return GraphSequence(
        supplier=supplier,
        n=n,
        declared_B=1,
        name="cycle_plus_random",
        connected_by_construction=True,
    )


def generate_alternating_stars(n: int, hub_a: int, hub_b: int) -> GraphSequence:
    """t par -> estrella en hub_a; t impar -> estrella en hub_b."""
    if hub_a == hub_b:
        raise GraphError("hub_a y hub_b deben ser distintos")
    if not (0 <= hub_a < n and 0 <= hub_b < n):
        raise GraphError(f"Los hubs deben ser < n={n}")
    stars = (star_graph(n, hub_a), star_graph(n, hub_b))
    return GraphSequence(
        supplier=lambda t: stars[t % 2],
        n=n,
        declared_B=1,
        name="alternating_stars",
    )


def alternating_one_way(a: int = 0, b: int = 1, n: int = 2) -> GraphSequence:
    """Alterna {a->b} (t par) y {b->a} (t impar), más self-loops. B=2 conecta; B=1 no."""
    first = DirectedGraph.from_edges(n, [(a, b)])
    second = DirectedGraph.from_edges(n, [(b, a)])
    return from_graphs([first, second], name="alternating_one_way")


def load_edge_list(path: str | Path, n: int) -> GraphSequence:
    """
    Lee un fichero de aristas `t src dst` (ASCII, índices desde 0, una arista por línea).

    Las líneas vacías y las que empiezan por '#' se ignoran. Los self-loops se añaden si faltan.
    La secuencia resultante es periódica con periodo max(t) + 1; los t sin aristas son grafos
    solo con self-loops.
    """
    path = Path(path)
    try:
        lines = path.read_text(encoding="ascii").splitlines()
    except (OSError, UnicodeDecodeError) as e:
        raise TraceIOError(path, e) from e

    edges_by_t: dict[int, list[tuple[int, int]]] = {}
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 3:
            raise GraphError(f"{path}:{lineno}: se esperaban 3 campos 't src dst'")
        try:
            t, src, dst = (int(p) for p in parts)
        except ValueError as e:
            raise GraphError(f"{path}:{lineno}: campos no enteros") from e
        if t < 0:
            raise GraphError(f"{path}:{lineno}: t negativo")
        edges_by_t.setdefault(t, []).append((src, dst))

    if not edges_by_t:
        raise GraphError(f"{path}: el fichero no contiene aristas")
    period = max(edges_by_t) + 1
    graphs = [DirectedGraph.from_edges(n, edges_by_t.get(t, [])) for t in range(period)]
    logger.info("Loaded edge list %s: n=%d, period=%d", path, n, period)
    return from_graphs(graphs, name="edge_list")
