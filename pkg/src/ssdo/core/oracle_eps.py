"""Near-linear-size (1+eps)-stretch single-source distance oracle.

The builder walks tree edges in preorder and keeps, per vertex, ``last``: the most
recent exactly stored post-failure distance. For e = (u, v) the candidate for each
t in T_v is the streaming minimum ``min(last[t], cand[parent(t)] + w(parent(t), t))``.
Whenever it exceeds sqrt(1+eps) times the true distance, the true distance is
stored instead (a landmark). Landmarks are split into k+1 buckets by their ratio to
d_G(s, t); each bucket is a labeled copy of T searched with bottleneck queries.
"""

import logging
import math
import time
from dataclasses import dataclass, field

import numpy as np

from ssdo.core.base import Answer, AnswerCase, OracleBase, check_coverage
from ssdo.core.graph import UNREACHABLE, Graph
from ssdo.core.replacement import subtree_replacement_distances
from ssdo.core.spt import INFINITY_RANK, EdgeRank, Spt
from ssdo.core.treekit import BottleneckIndex, build_bvq
from ssdo.exceptions import ContractError, ParameterError

logger = logging.getLogger(__name__)

AnswerEps = Answer

TOLERANCE = 1e-9


def check_epsilon(epsilon: float) -> float:
    """Raises ParameterError unless 0 < epsilon < 1."""
    if not (isinstance(epsilon, (int, float)) and 0.0 < epsilon < 1.0):
        raise ParameterError(f"epsilon must be in (0,1), got {epsilon}")
    return float(epsilon)


def bucket_count_bound(epsilon: float) -> int:
    """k = floor(2 log(2 / (sqrt(1+eps) - 1)) / log(1+eps)); buckets are 0..k."""
    epsilon = check_epsilon(epsilon)
    return math.floor(2 * math.log(2 / (math.sqrt(1 + epsilon) - 1)) / math.log(1 + epsilon))


def bucket_ratio(epsilon: float, i: int) -> float:
    """a_i = 2 / ((sqrt(1+eps) - 1) (1+eps)^(i/2))."""
    return 2 / ((math.sqrt(1 + epsilon) - 1) * (1 + epsilon) ** (i / 2))


def in_bucket(epsilon: float, i: int, d: float, base: float) -> bool:
    """a_{i+1} base <= d < a_i base."""
    return bucket_ratio(epsilon, i + 1) * base <= d < bucket_ratio(epsilon, i) * base


def bucket_index(epsilon: float, k: int, d: float, base: float) -> int | None:
    """Bucket holding the landmark distance d of a vertex at distance ``base``.

    The closed form is only a starting guess; the membership predicate decides,
    scanning one bucket on either side. None if no bucket in 0..k admits d.
    """
    r = 2 * math.log(bucket_ratio(epsilon, 0) * base / d) / math.log(1 + epsilon)
    guess = min(max(math.ceil(r) - 1, 0), k)
    for i in (guess, guess - 1, guess + 1):
        if 0 <= i <= k and in_bucket(epsilon, i, d, base):
            return i
    return None


@dataclass(frozen=True)
class Landmark:
    vertex: int
    rank: EdgeRank
    dist: float


@dataclass(frozen=True)
class LandmarkBucket:
    """Labeled copy of T for one bucket: at most one landmark per vertex."""

    index: int
    entries: dict[int, tuple[EdgeRank, float]]
    bvq: BottleneckIndex | None = field(default=None, compare=False)

    @classmethod
    def assemble(cls, spt: Spt, index: int, entries: dict[int, tuple[EdgeRank, float]]) -> "LandmarkBucket":
        if not entries:
            return cls(index, entries, None)
        labels = [INFINITY_RANK] * spt.n
        for z, (rank, _) in entries.items():
            labels[z] = rank
        return cls(index, entries, build_bvq(spt, labels))

    def label(self, z: int) -> EdgeRank:
        entry = self.entries.get(z)
        return entry[0] if entry else INFINITY_RANK


@dataclass
class EpsBuildReport:
    """Counters and invariant checks gathered while building."""

    epsilon: float
    k: int
    s_size: int = 0
    s_prime_size: int = 0
    bucket_sizes: list[int] = field(default_factory=list)
    skipped_degenerate: int = 0
    build_seconds: float = 0.0
    bridges: int = 0
    sandwich_violations: list[tuple[int, int, float, float]] = field(default_factory=list)
    decay_violations: list[tuple[int, float, float]] = field(default_factory=list)
    monotonicity_violations: list[tuple[int, int, float, float]] = field(default_factory=list)
    magnitude_violations: list[tuple[int, int, float]] = field(default_factory=list)
    uniqueness_violations: list[tuple[int, int]] = field(default_factory=list)
    count_violations: list[tuple[int, int]] = field(default_factory=list)

    @property
    def stored_reals(self) -> int:
        return self.s_prime_size + self.s_size

    @property
    def storage_budget(self) -> int:
        return self.s_prime_size + (self.s_prime_size + 1) * (self.k + 1)

    @property
    def clean(self) -> bool:
        return not (
            self.sandwich_violations
            or self.decay_violations
            or self.monotonicity_violations
            or self.magnitude_violations
            or self.uniqueness_violations
            or self.count_violations
        )


@dataclass(frozen=True)
class OracleEps(OracleBase):
    epsilon: float
    k: int
    buckets: list[LandmarkBucket]

    def query(self, u: int, v: int, t: int) -> AnswerEps:
        site = self.locate(u, v, t)
        if site is None:
            return self.unaffected(t)
        detour = self.detour[site.rank - 1]
        if detour == UNREACHABLE:
            return Answer(UNREACHABLE, AnswerCase.S_PRIME_CANDIDATE)
        best = Answer(detour + self.spt.tree_distance(site.v, t), AnswerCase.S_PRIME_CANDIDATE)
        for bucket in self.buckets:
            found = search_bucket(self, bucket.index, site.v, t, site.rank)
            if found is None:
                continue
            z, stored = found
            cand = stored + self.spt.tree_distance(z, t)
            if cand < best.value:
                best = Answer(cand, AnswerCase.BUCKET_CANDIDATE, bucket.index)
        return best


def _place_landmarks(
    spt: Spt, epsilon: float, k: int, landmarks: list[Landmark], report: EpsBuildReport
) -> list[dict[int, tuple[EdgeRank, float]]]:
    per_bucket: list[dict[int, tuple[EdgeRank, float]]] = [{} for _ in range(k + 1)]
    seen_at: dict[int, int] = {}
    for mark in landmarks:
        z = mark.vertex
        base = spt.dist[z]
        j = seen_at.get(z, 0)
        seen_at[z] = j + 1
        if j > k:
            report.count_violations.append((z, j + 1))
        if not mark.dist < bucket_ratio(epsilon, j) * base:
            report.magnitude_violations.append((z, j, mark.dist))
        i = bucket_index(epsilon, k, mark.dist, base)
        if i is None:
            report.magnitude_violations.append((z, -1, mark.dist))
            i = 0 if mark.dist >= bucket_ratio(epsilon, 0) * base else k
        if z in per_bucket[i]:
            report.uniqueness_violations.append((z, i))
            continue
        per_bucket[i][z] = (mark.rank, mark.dist)
    return per_bucket


def _lower_last(last: list[float], z: int, d: float, rank: int, report: EpsBuildReport) -> None:
    # last(z) only ever decreases as edges are visited in rank order
    if d > last[z] * (1 + TOLERANCE):
        report.monotonicity_violations.append((z, rank, last[z], d))
    last[z] = d


def build_oracle_eps(
    g: Graph, spt: Spt, epsilon: float, strict: bool = True
) -> tuple[OracleEps, EpsBuildReport]:
    """Select landmarks in preorder edge order, bucket them and index each bucket.

    Raises:
        ParameterError: If epsilon is not in (0, 1).
        BridgeError: In strict mode, if some tree edge is a bridge.
    """
    started = time.perf_counter()
    epsilon = check_epsilon(epsilon)
    k = bucket_count_bound(epsilon)
    report = EpsBuildReport(epsilon=epsilon, k=k)
    report.bridges = len(check_coverage(g, spt, strict))
    threshold = math.sqrt(1 + epsilon)
    slack = threshold * (1 + TOLERANCE)

    n = spt.n
    order = spt.order
    parent = spt.parent
    pre_in = spt.pre_in
    edges = g.edges
    parent_edge = spt.parent_edge
    last = [UNREACHABLE] * n
    cand = [UNREACHABLE] * n
    detour = [UNREACHABLE] * (n - 1)
    landmarks: list[Landmark] = []

    for rank in range(1, n):
        v = order[rank]
        row = subtree_replacement_distances(g, spt, v)
        lo = pre_in[v]
        dv = row[0]
        detour[rank - 1] = dv
        cand[v] = dv
        if dv < UNREACHABLE:
            _lower_last(last, v, dv, rank, report)
        for k_off in range(1, len(row)):
            t = order[lo + k_off]
            d = row[k_off]
            c = min(last[t], cand[parent[t]] + edges[parent_edge[t]].w)
            if d == UNREACHABLE:
                cand[t] = c
                continue
            if c > threshold * d:
                if spt.dist[t] == 0.0:
                    report.skipped_degenerate += 1
                    logger.warning("skipping zero-length landmark at vertex %d for edge rank %d", t, rank)
                    cand[t] = d
                    continue
                prev = last[t]
                if prev < UNREACHABLE and not threshold * d < prev:
                    report.decay_violations.append((t, prev, d))
                _lower_last(last, t, d, rank, report)
                c = d
                landmarks.append(Landmark(t, EdgeRank(rank), d))
            cand[t] = c
            if not (d * (1 - TOLERANCE) <= c <= slack * d):
                report.sandwich_violations.append((rank, t, c, d))
        if rank % 1024 == 0:
            logger.debug("landmark pass: %d/%d tree edges, %d landmarks", rank, n - 1, len(landmarks))

    per_bucket = _place_landmarks(spt, epsilon, k, landmarks, report)
    buckets = [LandmarkBucket.assemble(spt, i, entries) for i, entries in enumerate(per_bucket)]
    report.s_size = len(landmarks)
    report.s_prime_size = len(detour)
    report.bucket_sizes = [len(b.entries) for b in buckets]
    report.build_seconds = time.perf_counter() - started
    logger.info("eps-oracle built: |S|=%d, k=%d in %.3fs", report.s_size, k, report.build_seconds)
    oracle = OracleEps(spt, detour, g.edge_keys(), epsilon, k, buckets)
    return oracle, report


def search_bucket(o: OracleEps, i: int, v: int, t: int, e_rank: int) -> tuple[int, float] | None:
    """Vertex of pi_T(v, t) closest to v whose bucket-i label is at or before e_rank.

    Binary search over hop depth: the upper half is tried first, the lower half
    only if the upper holds no qualifying label. Returns (vertex, stored distance).

    Raises:
        ContractError: If v is not an ancestor of t.
    """
    bucket = o.buckets[i]
    if bucket.bvq is None:
        return None
    spt = o.spt
    if not spt.is_descendant(t, v):
        raise ContractError(f"{v} is not an ancestor of {t}")
    lo = spt.depth_hops[v]
    hi = spt.depth_hops[t]
    best = -1
    while lo < hi:
        mid = (lo + hi + 1) // 2
        x = spt.ancestor_at_depth(t, mid)
        top = spt.ancestor_at_depth(t, lo)
        y_up, label_up = bucket.bvq.query(top, spt.parent[x])
        if label_up <= e_rank:
            best = y_up
            hi = mid - 1
            continue
        bottom = spt.ancestor_at_depth(t, hi)
        y_low, label_low = bucket.bvq.query(x, bottom)
        if label_low <= e_rank:
            best = y_low
            lo = mid
            continue
        break
    else:
        z = spt.ancestor_at_depth(t, lo)
        if bucket.label(z) <= e_rank:
            best = z
    if best < 0:
        return None
    return best, bucket.entries[best][1]


def query_eps(o: OracleEps, fail: tuple[int, int], t: int) -> AnswerEps:
    """(1+eps)-approximate d_{G-fail}(s, t).

    Raises:
        QueryError: If ``fail`` is not an edge of G.
    """
    return o.query(fail[0], fail[1], t)


def bucket_arrays(bucket: LandmarkBucket) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(vertices, ranks, distances) of a bucket, sorted by vertex."""
    items = sorted(bucket.entries.items())
    vertices = np.array([z for z, _ in items], dtype=np.int64)
    ranks = np.array([r for _, (r, _) in items], dtype=np.int64)
    dists = np.array([d for _, (_, d) in items], dtype=np.float64)
    return vertices, ranks, dists
