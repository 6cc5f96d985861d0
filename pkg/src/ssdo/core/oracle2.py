"""Linear-size 2-stretch single-source distance oracle.

Tree edges are visited in preorder. For each failing edge e = (u, v) every t in T_v
gets two tests. The distance test asks whether the detour candidate
P_e(t) = d_{G-e}(s, v) + d_T(v, t) is within twice d_{G-e}(s, t). The ancestor test
asks whether some vertex of pi_T(v, t) is already marked. A vertex failing both is
marked with e. At query time a marked vertex with label at or before e on
pi_T(v, t) means 2 d_G(s, t) is a valid answer; otherwise the detour candidate is.
"""

import logging
import time
from dataclasses import dataclass

import numpy as np

from ssdo.core.base import Answer, AnswerCase, OracleBase, check_coverage
from ssdo.core.fenwick import RangeAddFenwick
from ssdo.core.graph import UNREACHABLE, Graph
from ssdo.core.replacement import subtree_replacement_distances
from ssdo.core.spt import INFINITY_RANK, EdgeRank, Spt
from ssdo.core.treekit import BottleneckIndex, build_bvq

logger = logging.getLogger(__name__)

Answer2 = Answer


@dataclass(frozen=True)
class Oracle2Stats:
    stored_detours: int
    stored_labels: int
    marked: int
    bridges: int
    build_seconds: float


@dataclass(frozen=True)
class Oracle2(OracleBase):
    labels: list[EdgeRank]
    bvq: BottleneckIndex

    @classmethod
    def assemble(cls, spt: Spt, detour: list[float], edge_keys: np.ndarray, labels: list[EdgeRank]) -> "Oracle2":
        return cls(spt, detour, edge_keys, labels, build_bvq(spt, labels))

    def query(self, u: int, v: int, t: int) -> Answer2:
        site = self.locate(u, v, t)
        if site is None:
            return self.unaffected(t)
        detour = self.detour[site.rank - 1]
        if detour == UNREACHABLE:
            return Answer(UNREACHABLE, AnswerCase.DETOUR_PATH)
        _, label = self.bvq.query(site.v, t)
        if label <= site.rank:
            return Answer(2 * self.spt.dist[t], AnswerCase.DOUBLED_BASE)
        return Answer(detour + self.spt.tree_distance(site.v, t), AnswerCase.DETOUR_PATH)


def build_oracle2(g: Graph, spt: Spt, strict: bool = True) -> tuple[Oracle2, Oracle2Stats]:
    """Run the mark-up pass and assemble the oracle.

    Raises:
        BridgeError: In strict mode, if some tree edge is a bridge.
    """
    started = time.perf_counter()
    bridges = check_coverage(g, spt, strict)
    n = spt.n
    order = spt.order
    pre_in = spt.pre_in
    pre_out = spt.pre_out
    dist = spt.dist
    labels = [INFINITY_RANK] * n
    detour = [UNREACHABLE] * (n - 1)
    # nu[x] = number of marked vertices among the ancestors of x, x included
    nu = RangeAddFenwick(n)
    marked = 0

    for rank in range(1, n):
        v = order[rank]
        row = subtree_replacement_distances(g, spt, v)
        dv = row[0]
        detour[rank - 1] = dv
        lo = pre_in[v]
        nu_u = nu.point(pre_in[spt.parent[v]])
        base_v = dist[v]
        for k, d in enumerate(row):
            t = order[lo + k]
            # distance test; inf <= inf passes when T_v is cut off
            if dv + (dist[t] - base_v) <= 2 * d:
                continue
            # ancestor test
            if nu.point(lo + k) - nu_u > 0:
                continue
            labels[t] = EdgeRank(rank)
            nu.add_range(lo + k, pre_out[t])
            marked += 1
        if rank % 1024 == 0:
            logger.debug("mark-up pass: %d/%d tree edges", rank, n - 1)

    oracle = Oracle2.assemble(spt, detour, g.edge_keys(), labels)
    stats = Oracle2Stats(
        stored_detours=len(detour),
        stored_labels=len(labels),
        marked=marked,
        bridges=len(bridges),
        build_seconds=time.perf_counter() - started,
    )
    logger.info("2-oracle built: %d marked vertices in %.3fs", marked, stats.build_seconds)
    return oracle, stats


def query2(o: Oracle2, fail: tuple[int, int], t: int) -> Answer2:
    """2-approximate d_{G-fail}(s, t).

    Raises:
        QueryError: If ``fail`` is not an edge of G.
    """
    return o.query(fail[0], fail[1], t)
