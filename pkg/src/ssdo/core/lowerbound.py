"""Lower-bound family for edge-fault-tolerant additive-stretch distance structures.

The graph is a zero-weight path u_eta .. u_0 (u_eta is the source), a star from u_0
to t_1..t_eta, a complete bipartite graph between the t's and v_1..v_eta, and
spokes (u_i, v_i) of growing weight x_i. When the path edge e_i = (u_i, u_{i-1})
fails, t_h is best reached through v_i, and every bipartite edge (v_i, t_h) is the
only way to stay within beta(d) of the true distance.

Vertex ids: u_i is eta - i, t_h is eta + h, v_i is 2 eta + i.
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ssdo.core.exact import ExactTable
from ssdo.core.graph import Graph, format_graph, sssp
from ssdo.exceptions import InfeasibleParamsError

logger = logging.getLogger(__name__)

# Weights must stay exact integers in float64.
MAX_WEIGHT = 2.0**53
WARN_WEIGHT = 2.0**40
MAX_ENUMERATE_ETA = 3


@dataclass(frozen=True)
class LowerBoundParams:
    eta: int
    k: float = 1.0
    delta: float = 1.0
    gamma: float = 1.0
    y: float | None = None

    def beta(self, d: float) -> float:
        """Additive slack k * d^(1 - delta)."""
        return self.k * d ** (1 - self.delta)

    def validate(self) -> None:
        """Raises InfeasibleParamsError on out-of-range parameters."""
        if self.k < 1:
            raise InfeasibleParamsError(f"k must be >= 1, got {self.k}")
        if not 0 < self.delta <= 1:
            raise InfeasibleParamsError(f"delta must be in (0,1], got {self.delta}")
        if not 0 < self.gamma <= 1:
            raise InfeasibleParamsError(f"gamma must be in (0,1], got {self.gamma}")
        if self.eta < self.k + 1:
            raise InfeasibleParamsError(f"eta must be >= k+1, got eta={self.eta}, k={self.k}")
        if self.y is not None and not 0 < self.y < MAX_WEIGHT:
            raise InfeasibleParamsError(f"y must be in (0, 2^53), got {self.y}")


@dataclass(frozen=True)
class LowerBoundInstance:
    params: LowerBoundParams
    graph: Graph
    y: float
    x: list[float]
    z: list[float]
    path_edges: list[int]
    bipartite_edges: dict[tuple[int, int], int] = field(repr=False)

    @property
    def eta(self) -> int:
        return self.params.eta

    def u(self, i: int) -> int:
        return self.eta - i

    def t(self, h: int) -> int:
        return self.eta + h

    def v(self, i: int) -> int:
        return 2 * self.eta + i

    def roles(self) -> dict[int, str]:
        out = {self.u(i): f"u{i}" for i in range(self.eta + 1)}
        out.update({self.t(h): f"t{h}" for h in range(1, self.eta + 1)})
        out.update({self.v(i): f"v{i}" for i in range(1, self.eta + 1)})
        return out


def feasible_y(p: LowerBoundParams) -> float:
    """Smallest power of two above (k/2)^(1/delta) * (4 (2n)^(k+2+2/delta))^(1/delta-1)."""
    n = 3 * p.eta + 1
    exponent = 1 / p.delta - 1
    try:
        bound = (p.k / 2) ** (1 / p.delta) * (4 * (2 * n) ** (p.k + 2 + 2 / p.delta)) ** exponent
    except OverflowError:
        raise InfeasibleParamsError("feasibility bound on y overflows; use delta closer to 1") from None
    y = 1.0
    while y <= bound:
        y *= 2
        if y >= MAX_WEIGHT:
            raise InfeasibleParamsError(f"feasible y exceeds 2^53 (bound {bound:.3g})")
    return y


def gen_lower_bound(p: LowerBoundParams) -> LowerBoundInstance:
    """Build the instance for the given parameters.

    Raises:
        InfeasibleParamsError: If the parameters are out of range, 2y <= beta(z_eta),
            or some weight reaches 2^53.
    """
    p.validate()
    y = float(p.y) if p.y is not None else feasible_y(p)
    eta = p.eta
    n = 3 * eta + 1

    x = [2 * y + p.gamma]
    for _ in range(eta - 1):
        x.append(x[-1] + p.beta(x[-1] + y) + p.gamma)
    z = [xi + y for xi in x]
    if not 2 * y > p.beta(z[-1]):
        raise InfeasibleParamsError(f"2y = {2 * y:g} does not exceed beta(z_eta) = {p.beta(z[-1]):g}")
    # log space: (2n)^(k+2+2/delta) overflows for small delta
    if math.log(z[-1]) > math.log(4 * y) + (p.k + 2 + 2 / p.delta) * math.log(2 * n):
        raise InfeasibleParamsError(f"z_eta = {z[-1]:g} exceeds 4y(2n)^(k+2+2/delta)")

    def u(i: int) -> int:
        return eta - i

    def t(h: int) -> int:
        return eta + h

    def v(i: int) -> int:
        return 2 * eta + i

    edges: list[tuple[int, int, float]] = []
    path_edges = []
    for i in range(1, eta + 1):
        path_edges.append(len(edges))
        edges.append((u(i), u(i - 1), 0.0))
    for h in range(1, eta + 1):
        edges.append((u(0), t(h), y))
    bipartite: dict[tuple[int, int], int] = {}
    for i in range(1, eta + 1):
        for h in range(1, eta + 1):
            bipartite[(i, h)] = len(edges)
            edges.append((v(i), t(h), y))
    for i in range(1, eta + 1):
        edges.append((u(i), v(i), x[i - 1]))

    graph = Graph.build(n, u(eta), edges)
    inst = LowerBoundInstance(p, graph, y, x, z, path_edges, bipartite)
    heaviest = max_weight(inst)
    if heaviest >= MAX_WEIGHT:
        raise InfeasibleParamsError(f"edge weight {heaviest:g} reaches 2^53; lower eta")
    if heaviest >= WARN_WEIGHT:
        logger.warning("edge weight %g is within 2^13 of float64 integer precision", heaviest)
    logger.debug("lower-bound instance: eta=%d n=%d y=%g x_eta=%g", eta, n, y, x[-1])
    return inst


@dataclass(frozen=True)
class SeparationCheck:
    i: int
    h: int
    replacement: float
    alternative: float
    ok: bool


@dataclass
class SeparationReport:
    checks: list[SeparationCheck] = field(default_factory=list)
    base_failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.base_failures and all(c.ok for c in self.checks)

    @property
    def failures(self) -> list[SeparationCheck]:
        return [c for c in self.checks if not c.ok]


def check_separation(inst: LowerBoundInstance, tbl: ExactTable) -> SeparationReport:
    """Check that every bipartite edge is needed for a beta-additive answer.

    For every i and h: d_{G-e_i}(s, t_h) must be x_i + y, and without (v_i, t_h) as
    well it must exceed x_i + y + beta(x_i + y).
    """
    g = inst.graph
    p = inst.params
    report = SeparationReport()
    base = sssp(g, g.source).dist
    for h in range(1, inst.eta + 1):
        if base[inst.t(h)] != inst.y:
            report.base_failures.append(f"d_G(s, t{h}) = {base[inst.t(h)]:g}, expected {inst.y:g}")
    for i in range(1, inst.eta + 1):
        if base[inst.v(i)] != 2 * inst.y:
            report.base_failures.append(f"d_G(s, v{i}) = {base[inst.v(i)]:g}, expected {2 * inst.y:g}")

    for i in range(1, inst.eta + 1):
        ui, prev = inst.u(i), inst.u(i - 1)
        row = tbl.row(ui, prev)
        want = inst.x[i - 1] + inst.y
        for h in range(1, inst.eta + 1):
            excluded = (inst.path_edges[i - 1], inst.bipartite_edges[(i, h)])
            alternative = sssp(g, g.source, excluded=excluded).dist[inst.t(h)]
            replacement = row[inst.t(h)]
            ok = replacement == want and alternative > want + p.beta(want)
            report.checks.append(SeparationCheck(i, h, replacement, alternative, ok))
    return report


@dataclass
class FamilyReport:
    subsets: int
    pairs: int
    undistinguished: list[tuple[int, int]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.undistinguished


def enumerate_subgraph_family(inst: LowerBoundInstance) -> FamilyReport:
    """Exact answers for every bipartite-edge subset, checked pairwise distinguishable.

    Subset masks index bits over ``bipartite_edges`` in (i, h) order. Two subsets
    are distinguished if some (e_i, t_h) distance differs by more than beta of the
    smaller value; an infinite value against a finite one counts.

    Raises:
        InfeasibleParamsError: If eta exceeds the enumeration limit.
    """
    if inst.eta > MAX_ENUMERATE_ETA:
        raise InfeasibleParamsError(f"enumeration needs eta <= {MAX_ENUMERATE_ETA}, got {inst.eta}")
    g = inst.graph
    keys = sorted(inst.bipartite_edges)
    count = 1 << len(keys)
    targets = [inst.t(h) for h in range(1, inst.eta + 1)]
    table = np.empty((count, inst.eta * inst.eta), dtype=np.float64)
    for mask in range(count):
        missing = [inst.bipartite_edges[key] for b, key in enumerate(keys) if not mask >> b & 1]
        values = []
        for i in range(1, inst.eta + 1):
            dist = sssp(g, g.source, excluded=[inst.path_edges[i - 1], *missing]).dist
            values.extend(dist[t] for t in targets)
        table[mask] = values

    k, delta = inst.params.k, inst.params.delta
    report = FamilyReport(subsets=count, pairs=count * (count - 1) // 2)
    with np.errstate(invalid="ignore"):
        for a, b in itertools.combinations(range(count), 2):
            lo = np.minimum(table[a], table[b])
            hi = np.maximum(table[a], table[b])
            if not np.any(hi - lo > k * lo ** (1 - delta)):
                report.undistinguished.append((a, b))
    return report


def write_instance(inst: LowerBoundInstance, path: Path) -> Path:
    """Write the graph file and a ``<path>.meta`` file of key=value lines."""
    p = inst.params
    path = Path(path)
    path.write_text(format_graph(inst.graph, comment=f"lower-bound instance eta={p.eta}"))
    roles = inst.roles()
    meta = [
        f"eta={p.eta}",
        f"k={p.k:g}",
        f"delta={p.delta:g}",
        f"gamma={p.gamma:g}",
        f"y={inst.y:g}",
        f"n={inst.graph.n}",
        f"source={inst.graph.source}",
        "x=" + ",".join(f"{xi:g}" for xi in inst.x),
        "roles=" + ",".join(roles[vertex] for vertex in range(inst.graph.n)),
    ]
    meta_path = path.with_name(path.name + ".meta")
    meta_path.write_text("\n".join(meta) + "\n")
    return meta_path


def max_weight(inst: LowerBoundInstance) -> float:
    """Heaviest edge of the instance; it must stay an exact float64 integer."""
    return max((e.w for e in inst.graph.edges), default=0.0)

