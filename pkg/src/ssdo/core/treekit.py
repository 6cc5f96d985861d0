"""Bottleneck vertex queries: the minimum-label vertex on a tree path.

Heavy-path decomposition lays every heavy chain out contiguously, shallow end
first, so any tree path splits into O(log n) position ranges. Two sparse tables
of argmin positions answer each range in O(1): one keeps the leftmost minimum,
the other the rightmost, which lets ties resolve toward the query's first endpoint.
"""

from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from ssdo.core.spt import EdgeRank, Spt


def _sparse_argmin(keys: np.ndarray, prefer_left: bool) -> list[np.ndarray]:
    """Level j holds the argmin position of keys[i : i + 2**j]."""
    n = len(keys)
    levels = [np.arange(n, dtype=np.int32)]
    j = 1
    while (1 << j) <= n:
        half = 1 << (j - 1)
        prev = levels[-1]
        width = n - (1 << j) + 1
        a = prev[:width]
        b = prev[half : half + width]
        if prefer_left:
            levels.append(np.where(keys[b] < keys[a], b, a))
        else:
            levels.append(np.where(keys[a] < keys[b], a, b))
        j += 1
    return levels


@dataclass(frozen=True)
class BottleneckIndex:
    """Min-label-on-path index over a vertex-labeled copy of T."""

    spt: Spt
    labels: list[EdgeRank]
    _head: list[int] = field(init=False, repr=False, compare=False)
    _pos: list[int] = field(init=False, repr=False, compare=False)
    _vertex_at: list[int] = field(init=False, repr=False, compare=False)
    _keys: np.ndarray = field(init=False, repr=False, compare=False)
    _left: list[np.ndarray] = field(init=False, repr=False, compare=False)
    _right: list[np.ndarray] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        spt = self.spt
        n = spt.n
        size = [1] * n
        for x in reversed(spt.order[1:]):
            size[spt.parent[x]] += size[x]
        heavy = [-1] * n
        for x in spt.order[1:]:
            p = spt.parent[x]
            if heavy[p] < 0 or size[x] > size[heavy[p]]:
                heavy[p] = x

        children: list[list[int]] = [[] for _ in range(n)]
        for x in spt.order[1:]:
            children[spt.parent[x]].append(x)

        head = [0] * n
        pos = [0] * n
        vertex_at = [0] * n
        nxt = 0
        stack = [spt.source]
        head[spt.source] = spt.source
        while stack:
            top = stack.pop()
            # walk the heavy chain starting at top
            x = top
            while x >= 0:
                head[x] = top
                pos[x] = nxt
                vertex_at[nxt] = x
                nxt += 1
                for c in children[x]:
                    if c != heavy[x]:
                        stack.append(c)
                x = heavy[x]

        # INFINITY_RANK compacts to n so keys fit int64 comfortably
        keys = np.fromiter((min(self.labels[vertex_at[i]], n) for i in range(n)), dtype=np.int64, count=n)
        object.__setattr__(self, "_head", head)
        object.__setattr__(self, "_pos", pos)
        object.__setattr__(self, "_vertex_at", vertex_at)
        object.__setattr__(self, "_keys", keys)
        object.__setattr__(self, "_left", _sparse_argmin(keys, prefer_left=True))
        object.__setattr__(self, "_right", _sparse_argmin(keys, prefer_left=False))

    def _range_min(self, lo: int, hi: int, prefer_left: bool) -> int:
        """Position of the minimum key in [lo, hi]."""
        j = (hi - lo + 1).bit_length() - 1
        table = self._left[j] if prefer_left else self._right[j]
        a = int(table[lo])
        b = int(table[hi - (1 << j) + 1])
        keys = self._keys
        if prefer_left:
            return b if keys[b] < keys[a] else a
        return a if keys[a] < keys[b] else b

    def _segments(self, x: int, y: int) -> list[tuple[int, int, bool]]:
        """Position ranges covering the path x..y, in order from x.

        Each entry is (lo, hi, prefer_left): ranges climbed from the x side prefer
        the deeper (right) end on ties, ranges descended toward y prefer the left.
        """
        head = self._head
        pos = self._pos
        parent = self.spt.parent
        depth = self.spt.depth_hops
        up: list[tuple[int, int, bool]] = []
        down: list[tuple[int, int, bool]] = []
        while head[x] != head[y]:
            if depth[head[x]] >= depth[head[y]]:
                up.append((pos[head[x]], pos[x], False))
                x = parent[head[x]]
            else:
                down.append((pos[head[y]], pos[y], True))
                y = parent[head[y]]
        if depth[x] >= depth[y]:
            up.append((pos[y], pos[x], False))
        else:
            down.append((pos[x], pos[y], True))
        down.reverse()
        return up + down

    def query(self, x: int, y: int) -> tuple[int, EdgeRank]:
        """Minimum-label vertex on the path x..y and its label, ties toward x."""
        best = -1
        best_key = 0
        keys = self._keys
        for lo, hi, prefer_left in self._segments(x, y):
            p = self._range_min(lo, hi, prefer_left)
            if best < 0 or keys[p] < best_key:
                best = p
                best_key = int(keys[p])
        vertex = self._vertex_at[best]
        return vertex, self.labels[vertex]


def build_bvq(spt: Spt, labels: Sequence[EdgeRank]) -> BottleneckIndex:
    """Index answering min-label-on-path queries; O(n log n) build."""
    return BottleneckIndex(spt, list(labels))


def bvq_min(ix: BottleneckIndex, x: int, y: int) -> tuple[int, EdgeRank]:
    """Minimum-label vertex on pi_T(x, y), ties broken toward x."""
    return ix.query(x, y)


def path_vertices(spt: Spt, x: int, y: int) -> list[int]:
    """Vertices of pi_T(x, y) in order from x, by walking parents."""
    left = [x]
    right = [y]
    a, b = x, y
    depth = spt.depth_hops
    while a != b:
        if depth[a] >= depth[b]:
            a = spt.parent[a]
            left.append(a)
        else:
            b = spt.parent[b]
            right.append(b)
    # a == b is the meeting vertex, already at the end of both lists
    right.pop()
    return left + right[::-1]
