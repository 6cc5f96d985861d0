"""Weighted undirected graphs, parsing, and single-source shortest paths."""

import hashlib
import math
import struct
from collections.abc import Collection, Iterable
from dataclasses import dataclass, field
from heapq import heappop, heappush
from pathlib import Path
from typing import TYPE_CHECKING, Final, NamedTuple, TextIO

import numpy as np

from ssdo.exceptions import GraphParseError, GraphValidationError

if TYPE_CHECKING:
    from ssdo.core.spt import Spt

UNREACHABLE: Final = math.inf
NO_EDGE: Final = -1


class Edge(NamedTuple):
    u: int
    v: int
    w: float


def pair_key(u: int, v: int) -> tuple[int, int]:
    """Normalize an unordered vertex pair."""
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple weighted undirected graph with a distinguished source.

    Use ``Graph.build`` to get a validated instance.
    """

    n: int
    source: int
    edges: tuple[Edge, ...]
    adjacency: tuple[tuple[tuple[int, int], ...], ...] = field(init=False, repr=False, compare=False)
    edge_index: dict[tuple[int, int], int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        adjacency: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        index: dict[tuple[int, int], int] = {}
        for i, (u, v, _) in enumerate(self.edges):
            adjacency[u].append((v, i))
            adjacency[v].append((u, i))
            index[pair_key(u, v)] = i
        object.__setattr__(self, "adjacency", tuple(tuple(a) for a in adjacency))
        object.__setattr__(self, "edge_index", index)

    @property
    def m(self) -> int:
        return len(self.edges)

    @classmethod
    def build(cls, n: int, source: int, edges: Iterable[tuple[int, int, float]]) -> "Graph":
        """Validate and construct a graph.

        Raises:
            GraphValidationError: On out-of-range ids, self-loops, duplicate edges,
                or weights that are negative or not finite.
        """
        if n < 1:
            raise GraphValidationError(f"vertex count must be positive, got {n}")
        if not 0 <= source < n:
            raise GraphValidationError(f"source {source} out of range [0,{n})")
        seen: set[tuple[int, int]] = set()
        checked: list[Edge] = []
        for u, v, w in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphValidationError(f"edge ({u},{v}) has a vertex id out of range [0,{n})")
            if u == v:
                raise GraphValidationError(f"self-loop at vertex {u}")
            key = pair_key(u, v)
            if key in seen:
                raise GraphValidationError(f"duplicate edge ({key[0]},{key[1]})")
            w = float(w)
            if not math.isfinite(w):
                raise GraphValidationError(f"edge ({u},{v}) has non-finite weight {w}")
            if w < 0:
                raise GraphValidationError(f"edge ({u},{v}) has negative weight {w}")
            seen.add(key)
            checked.append(Edge(u, v, w))
        return cls(n, source, tuple(checked))

    def find_edge(self, u: int, v: int) -> int | None:
        """Return the index of edge {u,v}, or None if absent."""
        return self.edge_index.get(pair_key(u, v))

    def edge_keys(self) -> np.ndarray:
        """Sorted int64 keys u*n+v (u<v) of all edges, for compact membership tests."""
        keys = np.fromiter((min(e.u, e.v) * self.n + max(e.u, e.v) for e in self.edges), dtype=np.int64, count=self.m)
        keys.sort()
        return keys

    def fingerprint(self) -> tuple[int, int, int, int]:
        """(n, m, source, 64-bit checksum over sorted edge triples)."""
        digest = hashlib.blake2b(digest_size=8)
        for u, v, w in sorted((pair_key(e.u, e.v) + (e.w,) for e in self.edges)):
            digest.update(struct.pack("<qqd", u, v, w))
        return (self.n, self.m, self.source, int.from_bytes(digest.digest(), "little"))


@dataclass(frozen=True)
class SsspResult:
    """Distances and parents of a single-source shortest path run.

    ``parent[x]`` is ``(vertex, edge index)`` or None for the root and unreachable vertices.
    """

    dist: list[float]
    parent: list[tuple[int, int] | None]


def _excluded_set(excluded: int | Collection[int] | None) -> frozenset[int]:
    if excluded is None:
        return frozenset()
    if isinstance(excluded, int):
        return frozenset() if excluded == NO_EDGE else frozenset((excluded,))
    return frozenset(e for e in excluded if e != NO_EDGE)


def sssp(g: Graph, root: int, excluded: int | Collection[int] | None = None) -> SsspResult:
    """Dijkstra from ``root`` in ``g`` minus the excluded edge(s).

    Heap pops break distance ties by smaller vertex id, and among equal-distance
    relaxations the parent with the smaller vertex id wins.
    """
    if not 0 <= root < g.n:
        raise GraphValidationError(f"root {root} out of range [0,{g.n})")
    skip = _excluded_set(excluded)
    for ei in skip:
        if not 0 <= ei < g.m:
            raise GraphValidationError(f"excluded edge index {ei} out of range [0,{g.m})")

    dist = [UNREACHABLE] * g.n
    parent: list[tuple[int, int] | None] = [None] * g.n
    done = [False] * g.n
    edges = g.edges
    adjacency = g.adjacency
    dist[root] = 0.0
    heap: list[tuple[float, int]] = [(0.0, root)]
    while heap:
        d, x = heappop(heap)
        if done[x]:
            continue
        done[x] = True
        for y, ei in adjacency[x]:
            if done[y] or ei in skip:
                continue
            nd = d + edges[ei].w
            dy = dist[y]
            if nd < dy:
                dist[y] = nd
                parent[y] = (x, ei)
                heappush(heap, (nd, y))
            elif nd == dy:
                current = parent[y]
                if current is not None and x < current[0]:
                    parent[y] = (x, ei)
    return SsspResult(dist, parent)


def validate_fault_coverage(g: Graph, spt: "Spt") -> list[tuple[int, int]]:
    """Tree edges (parent, child) whose single failure disconnects a vertex from the source.

    A tree edge (p, v) is a bridge iff every edge leaving a vertex of T_v, other than
    (p, v) itself, ends inside the preorder interval of T_v.
    """
    n = g.n
    pre_in = spt.pre_in
    pre_out = spt.pre_out
    lo = list(pre_in)
    hi = list(pre_in)
    for x in range(n):
        own = spt.parent_edge[x]
        for y, ei in g.adjacency[x]:
            if ei == own:
                continue
            py = pre_in[y]
            if py < lo[x]:
                lo[x] = py
            if py > hi[x]:
                hi[x] = py
    # fold subtree extremes upward in reverse preorder
    for x in reversed(spt.order):
        p = spt.parent[x]
        if p >= 0:
            if lo[x] < lo[p]:
                lo[p] = lo[x]
            if hi[x] > hi[p]:
                hi[p] = hi[x]
    bridges = []
    for v in spt.order[1:]:
        if lo[v] >= pre_in[v] and hi[v] <= pre_out[v]:
            bridges.append((spt.parent[v], v))
    return bridges


def _parse_int(token: str, line: int, column: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise GraphParseError(f"expected integer {what}, got {token!r}", line, column) from None


def _tokens(raw: str) -> list[tuple[str, int]]:
    """Whitespace-separated tokens with their 1-based columns."""
    out = []
    i = 0
    while i < len(raw):
        if raw[i].isspace():
            i += 1
            continue
        start = i
        while i < len(raw) and not raw[i].isspace():
            i += 1
        out.append((raw[start:i], start + 1))
    return out


def parse_graph(text: str | TextIO) -> Graph:
    """Parse the graph text format.

    Line 1 is ``n m s``; then ``m`` lines ``u v w``. Blank lines and lines starting
    with '#' are ignored.

    Raises:
        GraphParseError: On malformed input, with line and column.
        GraphValidationError: On a well-formed but invalid graph.
    """
    lines = text.splitlines() if isinstance(text, str) else text.read().splitlines()
    header: tuple[int, int, int] | None = None
    edges: list[tuple[int, int, float]] = []
    last_line = 0
    for number, raw in enumerate(lines, start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        last_line = number
        tokens = _tokens(raw)
        if len(tokens) != 3:
            column = tokens[3][1] if len(tokens) > 3 else len(raw) + 1
            raise GraphParseError(f"expected 3 fields, got {len(tokens)}", number, column)
        if header is None:
            n, m, s = (_parse_int(tok, number, col, name) for (tok, col), name in zip(tokens, ("n", "m", "s")))
            if n < 0 or m < 0:
                raise GraphParseError("counts must be non-negative", number, tokens[0][1])
            header = (n, m, s)
            continue
        if len(edges) == header[1]:
            raise GraphParseError(f"more than the declared {header[1]} edges", number, tokens[0][1])
        u = _parse_int(tokens[0][0], number, tokens[0][1], "vertex id")
        v = _parse_int(tokens[1][0], number, tokens[1][1], "vertex id")
        try:
            w = float(tokens[2][0])
        except ValueError:
            raise GraphParseError(f"expected decimal weight, got {tokens[2][0]!r}", number, tokens[2][1]) from None
        edges.append((u, v, w))
    if header is None:
        raise GraphParseError("missing header 'n m s'", 1, 1)
    if len(edges) != header[1]:
        raise GraphParseError(f"declared {header[1]} edges, found {len(edges)}", last_line + 1, 1)
    return Graph.build(header[0], header[2], edges)


def load_graph(path: Path) -> Graph:
    """Read and parse a graph file."""
    with open(path) as f:
        return parse_graph(f)


def format_graph(g: Graph, comment: str | None = None) -> str:
    """Render a graph in the text format; weights use repr for exact round trips."""
    lines = [f"# {comment}"] if comment else []
    lines.append(f"{g.n} {g.m} {g.source}")
    for u, v, w in g.edges:
        lines.append(f"{u} {v} {int(w) if w.is_integer() else repr(w)}")
    return "\n".join(lines) + "\n"
