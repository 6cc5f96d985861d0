"""Binary oracle container: magic, version byte, then a msgpack map of sections.

Numeric arrays travel as little-endian byte blobs (float64 for distances, int64
for ids and ranks), so every stored float round-trips bit for bit. Bottleneck and
level-ancestor tables are not stored; they are rebuilt from the arrays on load.
"""

from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Any

import msgpack
import numpy as np

from ssdo.core.graph import Graph
from ssdo.core.oracle2 import Oracle2
from ssdo.core.oracle_eps import LandmarkBucket, OracleEps, bucket_arrays, bucket_count_bound
from ssdo.core.spt import EdgeRank, Spt
from ssdo.exceptions import ContainerFormatError, FingerprintMismatchError, SsdoError

MAGIC = b"SSDO"
VERSION = 1


class OracleKind(str, Enum):
    TWO = "TWO"
    EPS = "EPS"


@dataclass(frozen=True)
class OracleContainer:
    oracle: Oracle2 | OracleEps
    fingerprint: tuple[int, int, int, int]

    @property
    def kind(self) -> OracleKind:
        return OracleKind.TWO if isinstance(self.oracle, Oracle2) else OracleKind.EPS

    def check_graph(self, g: Graph) -> None:
        """Raises FingerprintMismatchError unless the oracle was built on g."""
        actual = g.fingerprint()
        if actual != self.fingerprint:
            raise FingerprintMismatchError(
                f"oracle was built on a different graph: expected (n, m, s, checksum) = "
                f"{self.fingerprint}, got {actual}"
            )


def _floats(values: Any) -> bytes:
    return np.asarray(values, dtype="<f8").tobytes()


def _ints(values: Any) -> bytes:
    return np.asarray(values, dtype="<i8").tobytes()


def _read_floats(blob: bytes, count: int, what: str) -> list[float]:
    if len(blob) != 8 * count:
        raise ContainerFormatError(f"section {what!r} holds {len(blob)} bytes, expected {8 * count}")
    return np.frombuffer(blob, dtype="<f8").tolist()


def _read_ints(blob: bytes, count: int, what: str) -> list[int]:
    if len(blob) != 8 * count:
        raise ContainerFormatError(f"section {what!r} holds {len(blob)} bytes, expected {8 * count}")
    return np.frombuffer(blob, dtype="<i8").tolist()


def serialize(container: OracleContainer) -> bytes:
    o = container.oracle
    spt = o.spt
    body: dict[str, Any] = {
        "kind": container.kind.value,
        "fingerprint": list(container.fingerprint),
        "n": spt.n,
        "source": spt.source,
        "parent": _ints(spt.parent),
        "parent_edge": _ints(spt.parent_edge),
        "dist": _floats(spt.dist),
        "detour": _floats(o.detour),
        "edge_keys": _ints(o.edge_keys),
    }
    if isinstance(o, Oracle2):
        body["labels"] = _ints(o.labels)
    else:
        body["epsilon"] = o.epsilon
        body["k"] = o.k
        sections = []
        for bucket in o.buckets:
            vertices, ranks, dists = bucket_arrays(bucket)
            sections.append(
                {
                    "index": bucket.index,
                    "count": len(vertices),
                    "vertices": _ints(vertices),
                    "ranks": _ints(ranks),
                    "dists": _floats(dists),
                }
            )
        body["buckets"] = sections
    return MAGIC + bytes([VERSION]) + msgpack.packb(body, use_bin_type=True)


def _decode(body: dict[str, Any]) -> OracleContainer:
    n = int(body["n"])
    raw = [int(x) for x in body["fingerprint"]]
    if len(raw) != 4 or raw[0] != n:
        raise ContainerFormatError("fingerprint does not match the stored vertex count")
    fingerprint = (raw[0], raw[1], raw[2], raw[3])
    m = fingerprint[1]
    spt = Spt.from_arrays(
        int(body["source"]),
        _read_ints(body["parent"], n, "parent"),
        _read_ints(body["parent_edge"], n, "parent_edge"),
        _read_floats(body["dist"], n, "dist"),
        m=m,
    )
    detour = _read_floats(body["detour"], n - 1, "detour")
    edge_keys = np.frombuffer(body["edge_keys"], dtype="<i8").astype(np.int64)
    if len(edge_keys) != m:
        raise ContainerFormatError(f"edge set holds {len(edge_keys)} keys, fingerprint says {m}")

    kind = OracleKind(body["kind"])
    if kind is OracleKind.TWO:
        labels = [EdgeRank(r) for r in _read_ints(body["labels"], n, "labels")]
        return OracleContainer(Oracle2.assemble(spt, detour, edge_keys, labels), fingerprint)

    epsilon = float(body["epsilon"])
    k = int(body["k"])
    if k != bucket_count_bound(epsilon):
        raise ContainerFormatError(f"bucket count {k} does not match epsilon {epsilon}")
    buckets = []
    for i, section in enumerate(body["buckets"]):
        if int(section["index"]) != i:
            raise ContainerFormatError(f"bucket sections out of order at {i}")
        count = int(section["count"])
        vertices = _read_ints(section["vertices"], count, "vertices")
        ranks = _read_ints(section["ranks"], count, "ranks")
        dists = _read_floats(section["dists"], count, "dists")
        entries = {z: (EdgeRank(r), d) for z, r, d in zip(vertices, ranks, dists)}
        buckets.append(LandmarkBucket.assemble(spt, i, entries))
    if len(buckets) != k + 1:
        raise ContainerFormatError(f"expected {k + 1} bucket sections, found {len(buckets)}")
    oracle = OracleEps(spt, detour, edge_keys, epsilon, k, buckets)
    return OracleContainer(oracle, fingerprint)


def deserialize(data: bytes) -> OracleContainer:
    """Decode a container.

    Raises:
        ContainerFormatError: On a bad header, unknown version, or malformed sections.
    """
    if data[: len(MAGIC)] != MAGIC:
        raise ContainerFormatError("not an oracle container (bad magic)")
    if len(data) <= len(MAGIC):
        raise ContainerFormatError("container truncated after the header")
    version = data[len(MAGIC)]
    if version != VERSION:
        raise ContainerFormatError(f"unsupported container version {version}, expected {VERSION}")
    try:
        body = msgpack.unpackb(data[len(MAGIC) + 1 :], raw=False)
    except (ValueError, msgpack.UnpackException) as e:
        raise ContainerFormatError(f"corrupt container body: {e}") from e
    if not isinstance(body, dict):
        raise ContainerFormatError("container body is not a map")
    try:
        return _decode(body)
    except ContainerFormatError:
        raise
    except (KeyError, IndexError, TypeError, ValueError, SsdoError) as e:
        raise ContainerFormatError(f"malformed container section: {e}") from e


def save_oracle(path: Path, oracle: Oracle2 | OracleEps, g: Graph) -> int:
    """Write the oracle built on g; returns the byte size."""
    data = serialize(OracleContainer(oracle, g.fingerprint()))
    Path(path).write_bytes(data)
    return len(data)


def load_oracle(path: Path) -> OracleContainer:
    """Read a container file.

    Raises:
        ContainerFormatError: If the file is not a valid container.
    """
    return deserialize(Path(path).read_bytes())
