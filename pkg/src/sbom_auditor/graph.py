"""Dependency-graph snapshots and SBOM weaving.

Snapshot files are line-delimited JSON, one record per line::

    {"kind": "artifact", "id": "g:a"}
    {"kind": "release", "id": "g:a:1.0", "timestamp": 1722258240000, "sbom": [...]}
    {"kind": "dependency", "from": "g:a:1.0", "to_artifact": "g:b",
     "target_version": "2.0", "scope": "compile"}

A release's ``sbom`` list holds either structured objects
(``{"url", "standard", "signed", "checksums"}``) or, in Goblin-compatible
exports, one-entry maps from the SBOM url to the rendered added-value string.
Both forms load back to the same snapshot.
"""

from __future__ import annotations

import json
import re
import threading
from dataclasses import dataclass, field
from typing import Iterable

from .errors import (DanglingEdgeError, InvalidTimestamp, MalformedCoordinate,
                     SnapshotParseError, UnknownRelease)
from .model import ChecksumAlgo, Gav, ReleaseRecord, SbomStandard, ordered_algos, parse_gav

DEFAULT_SCOPE = "compile"


@dataclass(frozen=True)
class SbomAddedValue:
    url: str
    standard: SbomStandard
    is_signed: bool = False
    hash_algos: tuple[ChecksumAlgo, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "standard", SbomStandard(self.standard))
        object.__setattr__(self, "hash_algos", ordered_algos(self.hash_algos))

    @classmethod
    def from_ref(cls, ref) -> "SbomAddedValue":
        return cls(ref.url, ref.standard, ref.is_signed, ref.checksums_available)


@dataclass(frozen=True)
class DependencyEdge:
    from_release: str
    to_artifact: str
    target_version: str
    scope: str = DEFAULT_SCOPE


@dataclass
class GraphSnapshot:
    artifact_nodes: set[str] = field(default_factory=set)
    release_nodes: dict[str, ReleaseRecord] = field(default_factory=dict)
    dependency_edges: list[DependencyEdge] = field(default_factory=list)
    added_values: dict[str, list[SbomAddedValue]] = field(default_factory=dict)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)

    def releases(self) -> list[ReleaseRecord]:
        return list(self.release_nodes.values())

    def edges_from(self, release_id: str) -> list[DependencyEdge]:
        index = self.__dict__.get("_edge_index")
        if index is None or self.__dict__.get("_edge_count") != len(self.dependency_edges):
            index = {}
            for e in self.dependency_edges:
                index.setdefault(e.from_release, []).append(e)
            self.__dict__["_edge_index"] = index
            self.__dict__["_edge_count"] = len(self.dependency_edges)
        return index.get(release_id, [])


def render_goblin_added_value(value: SbomAddedValue) -> str:
    algos = ", ".join(a.value for a in value.hash_algos)
    signed = "true" if value.is_signed else "false"
    return f"{{standard={value.standard.value}, isSigned={signed}, isHashAvailable={algos}}}"


_GOBLIN_VALUE = re.compile(
    r"^\{standard=(?P<standard>\w+), isSigned=(?P<signed>true|false), "
    r"isHashAvailable=(?P<algos>[\w, ]*)\}$")


def parse_goblin_added_value(url: str, text: str) -> SbomAddedValue:
    m = _GOBLIN_VALUE.match(" ".join(text.split()))
    if not m:
        raise ValueError(f"not a Goblin sbom added value: {text!r}")
    algos = [a.strip() for a in m["algos"].split(",") if a.strip()]
    return SbomAddedValue(url, SbomStandard(m["standard"]), m["signed"] == "true",
                          tuple(ChecksumAlgo(a) for a in algos))


def direct_dependencies(snapshot: GraphSnapshot, release_id: str) -> list[tuple[Gav, str]]:
    if release_id not in snapshot.release_nodes:
        raise UnknownRelease(release_id)
    out = []
    for e in snapshot.edges_from(release_id):
        group, _, artifact = e.to_artifact.partition(":")
        out.append((Gav(group, artifact, e.target_version), e.scope))
    return out


def weave_sbom(snapshot: GraphSnapshot, release_id: str, value: SbomAddedValue) -> GraphSnapshot:
    """Attach ``value`` to a release. Weaving the same url twice replaces the earlier value."""
    with snapshot._lock:
        if release_id not in snapshot.release_nodes:
            raise UnknownRelease(release_id)
        values = snapshot.added_values.setdefault(release_id, [])
        for i, existing in enumerate(values):
            if existing.url == value.url:
                values[i] = value
                break
        else:
            values.append(value)
    return snapshot


# -- file format -------------------------------------------------------------

def _value_records(values: Iterable[SbomAddedValue], goblin_compat: bool) -> list:
    if goblin_compat:
        return [{v.url: render_goblin_added_value(v)} for v in values]
    return [{"url": v.url, "standard": v.standard.value, "signed": v.is_signed,
             "checksums": [a.value for a in v.hash_algos]} for v in values]


def _parse_value_record(item) -> SbomAddedValue:
    if not isinstance(item, dict):
        raise ValueError("sbom entries must be objects")
    if "standard" in item:
        return SbomAddedValue(item["url"], SbomStandard(item["standard"]),
                              bool(item.get("signed", False)),
                              tuple(ChecksumAlgo(a) for a in item.get("checksums", ())))
    if len(item) != 1:
        raise ValueError("Goblin-style sbom entries map exactly one url")
    (url, text), = item.items()
    return parse_goblin_added_value(url, text)


def snapshot_records(snapshot: GraphSnapshot, goblin_compat: bool = False) -> list[dict]:
    records = [{"kind": "artifact", "id": a} for a in sorted(snapshot.artifact_nodes)]
    for rid in sorted(snapshot.release_nodes):
        rel = snapshot.release_nodes[rid]
        rec = {"kind": "release", "id": rid, "timestamp": rel.timestamp}
        if goblin_compat:
            rec["nodeType"] = "RELEASE"
            rec["version"] = rel.gav.version
        values = snapshot.added_values.get(rid)
        if values:
            rec["sbom"] = _value_records(values, goblin_compat)
        records.append(rec)
    for e in snapshot.dependency_edges:
        records.append({"kind": "dependency", "from": e.from_release, "to_artifact": e.to_artifact,
                        "target_version": e.target_version, "scope": e.scope})
    return records


def export_snapshot(snapshot: GraphSnapshot, path, goblin_compat: bool = False) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for rec in snapshot_records(snapshot, goblin_compat):
            fh.write(json.dumps(rec, sort_keys=True) + "\n")


def load_snapshot(path) -> GraphSnapshot:
    snap = GraphSnapshot()
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
                _load_record(snap, rec)
            except (ValueError, KeyError, TypeError) as exc:
                if isinstance(exc, (SnapshotParseError, UnknownRelease)):
                    raise
                raise SnapshotParseError(path, lineno, str(exc) or type(exc).__name__) from exc

    dangling = [e for e in snap.dependency_edges if e.from_release not in snap.release_nodes]
    if dangling:
        raise DanglingEdgeError(dangling)
    return snap


def _load_record(snap, rec):
    if not isinstance(rec, dict):
        raise ValueError("record is not an object")
    kind = rec.get("kind")
    if kind == "artifact":
        aid = rec["id"]
        group, sep, artifact = aid.partition(":")
        if not (group and sep and artifact) or ":" in artifact:
            raise ValueError(f"artifact id {aid!r} is not group:artifact")
        if aid in snap.artifact_nodes:
            raise ValueError(f"duplicate artifact {aid!r}")
        snap.artifact_nodes.add(aid)
    elif kind == "release":
        rid = rec["id"]
        if rid in snap.release_nodes:
            raise ValueError(f"duplicate release {rid!r}")
        try:
            record = ReleaseRecord(parse_gav(rid), int(rec["timestamp"]))
        except (MalformedCoordinate, InvalidTimestamp) as exc:
            raise ValueError(str(exc)) from exc
        snap.release_nodes[rid] = record
        values = [_parse_value_record(v) for v in rec.get("sbom") or ()]
        if values:
            snap.added_values[rid] = []
            for v in values:
                weave_sbom(snap, rid, v)
    elif kind == "dependency":
        to = rec["to_artifact"]
        if to.count(":") != 1:
            raise ValueError(f"to_artifact {to!r} is not group:artifact")
        snap.dependency_edges.append(DependencyEdge(
            rec["from"], to, str(rec["target_version"]), rec.get("scope") or DEFAULT_SCOPE))
    else:
        raise ValueError(f"unknown record kind {kind!r}")
