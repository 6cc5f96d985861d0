"""Replacement distances after a single tree-edge failure.

When the tree edge e = (u, v) fails, vertices outside T_v keep their distance from
the source, so only T_v needs a new Dijkstra. It is seeded by every edge crossing
into T_v other than e itself.
"""

from heapq import heapify, heappop, heappush

from ssdo.core.graph import UNREACHABLE, Graph
from ssdo.core.spt import Spt


def subtree_replacement_distances(g: Graph, spt: Spt, v: int) -> list[float]:
    """d_{G-e}(s, .) on T_v for e the parent edge of v.

    Returns a list aligned with ``spt.subtree(v)``: entry k is the distance of the
    vertex with preorder number ``pre_in[v] + k``.
    """
    lo = spt.pre_in[v]
    hi = spt.pre_out[v]
    size = hi - lo + 1
    pre_in = spt.pre_in
    order = spt.order
    dist = spt.dist
    edges = g.edges
    adjacency = g.adjacency
    failed = spt.parent_edge[v]

    best = [UNREACHABLE] * size
    for k in range(size):
        x = order[lo + k]
        for y, ei in adjacency[x]:
            if ei == failed:
                continue
            py = pre_in[y]
            if py < lo or py > hi:
                c = dist[y] + edges[ei].w
                if c < best[k]:
                    best[k] = c

    heap = [(d, k) for k, d in enumerate(best) if d < UNREACHABLE]
    heapify(heap)
    done = [False] * size
    while heap:
        d, k = heappop(heap)
        if done[k]:
            continue
        done[k] = True
        for y, ei in adjacency[order[lo + k]]:
            ky = pre_in[y] - lo
            if ky < 0 or ky >= size or done[ky]:
                continue
            nd = d + edges[ei].w
            if nd < best[ky]:
                best[ky] = nd
                heappush(heap, (nd, ky))
    return best
