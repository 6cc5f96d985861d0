"""Seeded random 2-edge-connected graphs for tests and benchmarks."""

import numpy as np

from ssdo.core.graph import Graph
from ssdo.exceptions import ParameterError


def random_two_edge_connected_graph(n: int, m: int, seed: int = 0, max_weight: int = 100) -> Graph:
    """Hamiltonian cycle over a random permutation plus m - n distinct random chords.

    Weights are integers drawn uniformly from [0, max_weight]; the source is vertex 0.
    The same arguments always give the same graph.

    Raises:
        ParameterError: If no simple 2-edge-connected graph has n vertices and m edges.
    """
    if n < 1 or n == 2:
        raise ParameterError(f"no simple 2-edge-connected graph has {n} vertices")
    if max_weight < 0:
        raise ParameterError(f"max_weight must be non-negative, got {max_weight}")
    if n == 1:
        if m != 0:
            raise ParameterError("a single vertex has no edges")
        return Graph.build(1, 0, [])
    if not n <= m <= n * (n - 1) // 2:
        raise ParameterError(f"m must be in [{n}, {n * (n - 1) // 2}] for n={n}, got {m}")

    rng = np.random.default_rng(seed)
    perm = rng.permutation(n).tolist()
    pairs = [(perm[i], perm[(i + 1) % n]) for i in range(n)]
    seen = {(min(u, v), max(u, v)) for u, v in pairs}
    if m > n * (n - 1) // 4:
        # dense: sample the chords from the explicit complement
        rest = [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in seen]
        picked = rng.choice(len(rest), size=m - n, replace=False)
        pairs.extend(rest[i] for i in sorted(picked.tolist()))
    else:
        while len(pairs) < m:
            batch = rng.integers(0, n, size=(2 * (m - len(pairs)) + 8, 2))
            for u, v in batch.tolist():
                if u == v:
                    continue
                key = (min(u, v), max(u, v))
                if key in seen:
                    continue
                seen.add(key)
                pairs.append(key)
                if len(pairs) == m:
                    break
    weights = rng.integers(0, max_weight + 1, size=m).tolist()
    return Graph.build(n, 0, ((u, v, w) for (u, v), w in zip(pairs, weights)))
