"""Exact post-failure distances for every tree edge: the verification oracle."""

import logging
import math
from collections.abc import Callable
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ssdo.core.graph import Graph, sssp
from ssdo.core.spt import Spt
from ssdo.exceptions import ContractError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ExactTable:
    """Row r-1 holds d_{G-e}(s, .) for the tree edge e of rank r."""

    spt: Spt
    rows: list[list[float]]

    def row(self, u: int, v: int) -> list[float]:
        rank = self.spt.edge_rank(u, v)
        if rank is None:
            raise ContractError(f"({u},{v}) is not a tree edge")
        return self.rows[rank - 1]

    def query(self, u: int, v: int, t: int) -> float:
        """d_{G-e}(s, t) for the tree edge e = {u, v}."""
        return self.row(u, v)[t]


def _row(g: Graph, source: int, edge_index: int) -> list[float]:
    return sssp(g, source, excluded=edge_index).dist


def build_exact(g: Graph, spt: Spt, workers: int = 1) -> ExactTable:
    """One exclusion Dijkstra per tree edge, in rank order.

    Rows share nothing, so with ``workers > 1`` they run in a process pool.
    """
    edge_ids = [spt.parent_edge[spt.child_of(r)] for r in range(1, spt.n)]
    logger.debug("building exact table: %d rows, %d workers", len(edge_ids), workers)
    if workers > 1 and len(edge_ids) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_row, [g] * len(edge_ids), [g.source] * len(edge_ids), edge_ids, chunksize=16))
    else:
        rows = [_row(g, g.source, ei) for ei in edge_ids]
    return ExactTable(spt, rows)


def exact_query(tbl: ExactTable, e: tuple[int, int], t: int) -> float:
    """d_{G-e}(s, t); UNREACHABLE if the failure separates t from s."""
    return tbl.query(e[0], e[1], t)


QueryFn = Callable[[int, int, int], float]


@dataclass(frozen=True)
class StretchViolation:
    u: int
    v: int
    t: int
    value: float
    exact: float

    def describe(self) -> str:
        return f"fail ({self.u},{self.v}) target {self.t}: oracle {self.value!r}, exact {self.exact!r}"


@dataclass
class StretchReport:
    """Outcome of comparing oracle answers with exact post-failure distances."""

    bound: float
    tolerance: float
    checked: int = 0
    max_stretch: float = 1.0
    violations: list[StretchViolation] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def record(self, u: int, v: int, t: int, value: float, exact: float) -> None:
        """Check exact <= value <= bound * exact, both sides with relative tolerance."""
        self.checked += 1
        if math.isinf(exact) or math.isinf(value):
            ok = math.isinf(exact) and math.isinf(value)
        else:
            ok = exact * (1 - self.tolerance) <= value <= self.bound * exact * (1 + self.tolerance)
            if exact > 0:
                self.max_stretch = max(self.max_stretch, value / exact)
        if not ok:
            self.violations.append(StretchViolation(u, v, t, value, exact))


def verify_exhaustive(query: QueryFn, tbl: ExactTable, bound: float, tolerance: float = 1e-9) -> StretchReport:
    """Check every tree edge e = (u, v) against every t in T_v."""
    spt = tbl.spt
    report = StretchReport(bound, tolerance)
    for rank in range(1, spt.n):
        u, v = spt.tree_edge(rank)
        row = tbl.rows[rank - 1]
        for t in spt.subtree(v):
            report.record(u, v, t, query(u, v, t), row[t])
    return report


def sample_pairs(spt: Spt, samples: int, seed: int, edge_pool: int = 64) -> list[tuple[int, int]]:
    """Seeded (rank, target) pairs with target in T_v.

    Ranks come from a pool of at most ``edge_pool`` distinct tree edges so that
    checking needs one exclusion Dijkstra per pooled edge, not per sample.
    """
    n = spt.n
    if n < 2 or samples <= 0:
        return []
    rng = np.random.default_rng(seed)
    pool = rng.choice(np.arange(1, n), size=min(edge_pool, n - 1), replace=False)
    pairs = []
    for rank in rng.choice(pool, size=samples).tolist():
        v = spt.child_of(rank)
        size = spt.pre_out[v] - spt.pre_in[v] + 1
        t = spt.order[spt.pre_in[v] + int(rng.integers(size))]
        pairs.append((rank, t))
    return pairs


def verify_sampled(
    query: QueryFn, g: Graph, spt: Spt, bound: float, samples: int, seed: int = 0, tolerance: float = 1e-9
) -> StretchReport:
    """Check seeded sample pairs, computing each failed edge's exact row on demand."""
    report = StretchReport(bound, tolerance)
    pairs = sample_pairs(spt, samples, seed)
    by_rank: dict[int, list[int]] = {}
    for rank, t in pairs:
        by_rank.setdefault(rank, []).append(t)
    for rank in sorted(by_rank):
        u, v = spt.tree_edge(rank)
        row = sssp(g, g.source, excluded=spt.parent_edge[v]).dist
        for t in by_rank[rank]:
            report.record(u, v, t, query(u, v, t), row[t])
    logger.debug("sampled verification: %d pairs over %d edges", len(pairs), len(by_rank))
    return report
