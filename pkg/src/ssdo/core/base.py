"""Pieces shared by both distance oracles."""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from ssdo.core.graph import Graph, validate_fault_coverage
from ssdo.core.spt import EdgeRank, Spt
from ssdo.exceptions import BridgeError, QueryError


class AnswerCase(str, Enum):
    NO_FAULT_EFFECT = "NO_FAULT_EFFECT"
    DETOUR_PATH = "DETOUR_PATH"
    DOUBLED_BASE = "DOUBLED_BASE"
    S_PRIME_CANDIDATE = "S_PRIME_CANDIDATE"
    BUCKET_CANDIDATE = "BUCKET_CANDIDATE"


@dataclass(frozen=True)
class Answer:
    """An oracle answer; ``bucket`` is set only for BUCKET_CANDIDATE."""

    value: float
    case: AnswerCase
    bucket: int | None = None

    @property
    def tag(self) -> str:
        if self.case is AnswerCase.BUCKET_CANDIDATE:
            return f"{self.case.value}({self.bucket})"
        return self.case.value


@dataclass(frozen=True)
class FaultSite:
    """A tree-edge failure that affects the queried vertex."""

    rank: EdgeRank
    v: int


@dataclass(frozen=True)
class OracleBase:
    """Tree, per-tree-edge detours and the edge set of G.

    ``detour[r-1]`` is d_{G-e}(s, v) for the tree edge e = (u, v) of rank r.
    ``edge_keys`` holds sorted keys u*n+v (u<v) of every edge of G.
    """

    spt: Spt
    detour: list[float]
    edge_keys: np.ndarray

    def has_edge(self, u: int, v: int) -> bool:
        n = self.spt.n
        if not (0 <= u < n and 0 <= v < n) or u == v:
            return False
        key = min(u, v) * n + max(u, v)
        i = int(np.searchsorted(self.edge_keys, key))
        return i < len(self.edge_keys) and int(self.edge_keys[i]) == key

    def locate(self, u: int, v: int, t: int) -> FaultSite | None:
        """The failing tree edge if it can affect t, None if d_G(s, t) is still exact.

        Raises:
            QueryError: If {u, v} is not an edge of G or t is not a vertex.
        """
        if not 0 <= t < self.spt.n:
            raise QueryError(f"target {t} is not a vertex")
        if not self.has_edge(u, v):
            raise QueryError(f"({u},{v}) is not an edge of the graph")
        rank = self.spt.edge_rank(u, v)
        if rank is None:
            return None
        child = self.spt.child_of(rank)
        if not self.spt.is_descendant(t, child):
            return None
        return FaultSite(rank, child)

    def unaffected(self, t: int) -> Answer:
        return Answer(self.spt.dist[t], AnswerCase.NO_FAULT_EFFECT)


def check_coverage(g: Graph, spt: Spt, strict: bool) -> list[tuple[int, int]]:
    """Bridges among the tree edges; raises in strict mode if there are any."""
    bridges = validate_fault_coverage(g, spt)
    if bridges and strict:
        raise BridgeError(bridges)
    return bridges
