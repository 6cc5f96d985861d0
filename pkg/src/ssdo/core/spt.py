"""The fixed shortest-path tree T rooted at the source, with preorder edge ranks."""

from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Final, NewType

import numpy as np

from ssdo.core.graph import Graph, pair_key, sssp
from ssdo.exceptions import ContractError, SptBuildError

EdgeRank = NewType("EdgeRank", int)

# Every finite rank precedes it.
INFINITY_RANK: Final = EdgeRank(2**62)


@dataclass(frozen=True)
class Spt:
    """Shortest-path tree with preorder numbering.

    The tree edge (parent[v], v) has rank ``pre_in[v]``, so ranks run over 1..n-1 and
    realize the preorder edge order. ``order[r]`` is the vertex with preorder number r.
    The root has parent -1 and parent_edge -1.
    """

    source: int
    parent: list[int]
    parent_edge: list[int]
    dist: list[float]
    order: list[int]
    depth_hops: list[int] = field(init=False, repr=False, compare=False)
    pre_in: list[int] = field(init=False, repr=False, compare=False)
    pre_out: list[int] = field(init=False, repr=False, compare=False)
    edge_of: dict[tuple[int, int], EdgeRank] = field(init=False, repr=False, compare=False)
    _jump: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        n = len(self.parent)
        if len(self.order) != n or (n and self.order[0] != self.source):
            raise ContractError("preorder must list every vertex, starting at the source")
        pre_in = [0] * n
        for r, x in enumerate(self.order):
            pre_in[x] = r
        depth = [0] * n
        size = [1] * n
        for x in self.order[1:]:
            p = self.parent[x]
            if pre_in[p] >= pre_in[x]:
                raise ContractError(f"parent {p} of {x} does not precede it in preorder")
            depth[x] = depth[p] + 1
        for x in reversed(self.order[1:]):
            size[self.parent[x]] += size[x]
        pre_out = [pre_in[x] + size[x] - 1 for x in range(n)]
        edge_of = {pair_key(self.parent[x], x): EdgeRank(pre_in[x]) for x in self.order[1:]}

        # jump[j][x] is the 2^j-th ancestor of x, the root maps to itself
        up = np.array([p if p >= 0 else x for x, p in enumerate(self.parent)], dtype=np.int32)
        levels = max(1, max(depth, default=0).bit_length())
        jump = np.empty((levels, n), dtype=np.int32)
        jump[0] = up
        for j in range(1, levels):
            jump[j] = jump[j - 1][jump[j - 1]]

        object.__setattr__(self, "depth_hops", depth)
        object.__setattr__(self, "pre_in", pre_in)
        object.__setattr__(self, "pre_out", pre_out)
        object.__setattr__(self, "edge_of", edge_of)
        object.__setattr__(self, "_jump", jump)

    @property
    def n(self) -> int:
        return len(self.parent)

    def is_descendant(self, x: int, v: int) -> bool:
        """True iff x lies in the subtree T_v (x = v included)."""
        return self.pre_in[v] <= self.pre_in[x] <= self.pre_out[v]

    def tree_distance(self, z: int, t: int) -> float:
        """d_T(z, t) for z an ancestor of t (or z = t)."""
        if not self.is_descendant(t, z):
            raise ContractError(f"{z} is not an ancestor of {t}")
        return self.dist[t] - self.dist[z]

    def level_ancestor(self, x: int, h: int) -> int:
        """The ancestor of x exactly h hops above it."""
        if h < 0 or h > self.depth_hops[x]:
            raise ContractError(f"cannot go {h} hops above vertex {x} at depth {self.depth_hops[x]}")
        j = 0
        while h:
            if h & 1:
                x = int(self._jump[j][x])
            h >>= 1
            j += 1
        return x

    def ancestor_at_depth(self, x: int, depth: int) -> int:
        return self.level_ancestor(x, self.depth_hops[x] - depth)

    def edge_rank(self, u: int, v: int) -> EdgeRank | None:
        """Rank of the tree edge {u,v}, or None if it is not a tree edge."""
        return self.edge_of.get(pair_key(u, v))

    def child_of(self, rank: int) -> int:
        """Lower endpoint v of the tree edge with the given rank."""
        if not 1 <= rank < self.n:
            raise ContractError(f"no tree edge has rank {rank}")
        return self.order[rank]

    def tree_edge(self, rank: int) -> tuple[int, int]:
        """(u, v) endpoints of the tree edge with the given rank, u the parent."""
        v = self.child_of(rank)
        return (self.parent[v], v)

    def subtree(self, v: int) -> Sequence[int]:
        """Vertices of T_v in preorder."""
        return self.order[self.pre_in[v] : self.pre_out[v] + 1]

    @classmethod
    def from_arrays(
        cls,
        source: int,
        parent: Sequence[int],
        parent_edge: Sequence[int],
        dist: Sequence[float],
        m: int | None = None,
    ) -> "Spt":
        """Rebuild a tree from its parent arrays; children are visited in ascending id.

        Raises:
            ContractError: If an id is out of range or the arrays do not form one tree.
        """
        n = len(parent)
        if len(parent_edge) != n or len(dist) != n:
            raise ContractError("parent, parent_edge and dist must have one entry per vertex")
        if not 0 <= source < n:
            raise ContractError(f"source {source} out of range [0,{n})")
        for x in range(n):
            p, ei = parent[x], parent_edge[x]
            if x == source:
                if p != -1 or ei != -1:
                    raise ContractError("the source must have no parent")
                continue
            if not 0 <= p < n:
                raise ContractError(f"parent {p} of vertex {x} out of range [0,{n})")
            if ei < 0 or (m is not None and ei >= m):
                raise ContractError(f"parent edge {ei} of vertex {x} out of range")
        children: list[list[int]] = [[] for _ in range(n)]
        for x in range(n):
            p = parent[x]
            if p >= 0:
                children[p].append(x)
        order: list[int] = []
        stack = [source]
        while stack:
            x = stack.pop()
            order.append(x)
            stack.extend(reversed(children[x]))
        if len(order) != n:
            raise ContractError("parent arrays do not form a single tree rooted at the source")
        return cls(source, list(parent), list(parent_edge), list(dist), order)


def build_spt(g: Graph) -> Spt:
    """Shortest-path tree of g rooted at g.source.

    Raises:
        SptBuildError: If some vertex is unreachable from the source.
    """
    result = sssp(g, g.source)
    unreachable = [x for x in range(g.n) if result.parent[x] is None and x != g.source]
    if unreachable:
        raise SptBuildError(unreachable)
    parent = [-1] * g.n
    parent_edge = [-1] * g.n
    for x, link in enumerate(result.parent):
        if link is not None:
            parent[x], parent_edge[x] = link
    return Spt.from_arrays(g.source, parent, parent_edge, result.dist)
