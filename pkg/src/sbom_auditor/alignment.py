"""Compare SBOM-declared direct dependencies with graph-recorded ones."""

from __future__ import annotations

import dataclasses
import logging
from dataclasses import dataclass
from typing import Optional

from .model import Gav, parse_gav

logger = logging.getLogger(__name__)

MATCH = "match"
VERSION_MISMATCH = "version_mismatch"
SBOM_EXTRA = "sbom_extra"
GRAPH_EXTRA = "graph_extra"
MIXED = "mixed"
STATUSES = (MATCH, VERSION_MISMATCH, SBOM_EXTRA, GRAPH_EXTRA, MIXED)

TEST_SCOPE = "test"


@dataclass(frozen=True)
class VersionMismatch:
    key: str
    sbom_version: str
    graph_version: str


@dataclass(frozen=True)
class SbomOnly:
    gav: Gav
    submodule_flag: bool = False


@dataclass(frozen=True)
class AlignmentVerdict:
    release: Gav
    status: str
    matched: tuple[Gav, ...] = ()
    version_mismatches: tuple[VersionMismatch, ...] = ()
    sbom_only: tuple[SbomOnly, ...] = ()
    graph_only: tuple[tuple[Gav, str], ...] = ()
    ignored_test_deps: tuple[Gav, ...] = ()
    sbom_count: int = 0
    graph_count: int = 0
    url: Optional[str] = None
    graph_source: str = "graph"

    @property
    def count_match(self) -> bool:
        """Same number of direct dependencies on both sides, test-scoped absences exempt."""
        return self.sbom_count == self.graph_count - len(self.ignored_test_deps)

    @property
    def flagged_submodules(self) -> int:
        return sum(1 for s in self.sbom_only if s.submodule_flag)

    def to_record(self) -> dict:
        return {
            "release": str(self.release),
            "url": self.url,
            "graph_source": self.graph_source,
            "status": self.status,
            "count_match": self.count_match,
            "sbom_count": self.sbom_count,
            "graph_count": self.graph_count,
            "matched": [str(g) for g in self.matched],
            "version_mismatches": [dataclasses.asdict(m) for m in self.version_mismatches],
            "sbom_only": [{"gav": str(s.gav), "submodule": s.submodule_flag}
                          for s in self.sbom_only],
            "graph_only": [{"gav": str(g), "scope": scope} for g, scope in self.graph_only],
            "ignored_test_deps": [str(g) for g in self.ignored_test_deps],
        }

    @classmethod
    def from_record(cls, rec: dict) -> "AlignmentVerdict":
        return cls(
            release=parse_gav(rec["release"]),
            status=rec["status"],
            matched=tuple(parse_gav(g) for g in rec.get("matched", ())),
            version_mismatches=tuple(VersionMismatch(**m) for m in rec.get("version_mismatches", ())),
            sbom_only=tuple(SbomOnly(parse_gav(s["gav"]), bool(s.get("submodule")))
                            for s in rec.get("sbom_only", ())),
            graph_only=tuple((parse_gav(g["gav"]), g["scope"]) for g in rec.get("graph_only", ())),
            ignored_test_deps=tuple(parse_gav(g) for g in rec.get("ignored_test_deps", ())),
            sbom_count=rec.get("sbom_count", 0),
            graph_count=rec.get("graph_count", 0),
            url=rec.get("url"),
            graph_source=rec.get("graph_source", "graph"),
        )


def _first_by_key(items, key_of, side, release):
    out = {}
    for item in items:
        key = key_of(item)
        if key in out:
            logger.warning("%s: duplicate %s dependency %s; keeping the first", release, side, key)
            continue
        out[key] = item
    return out


def derive_status(version_mismatches, sbom_only, graph_only) -> str:
    kinds = [kind for kind, items in ((VERSION_MISMATCH, version_mismatches),
                                      (SBOM_EXTRA, sbom_only),
                                      (GRAPH_EXTRA, graph_only)) if items]
    if not kinds:
        return MATCH
    return kinds[0] if len(kinds) == 1 else MIXED


def align(release: Gav, sbom_deps: list[Gav], graph_deps: list[tuple[Gav, str]],
          url: Optional[str] = None, graph_source: str = "graph") -> AlignmentVerdict:
    """Classify every ``group:artifact`` seen on either side.

    Keys present on both sides are matched or version mismatches; graph-only
    test-scoped keys are ignored rather than reported, since SBOM generators
    usually leave test dependencies out. Scope is not otherwise compared.
    """
    sbom = _first_by_key(sbom_deps, lambda g: g.key, "sbom", release)
    graph = _first_by_key(graph_deps, lambda p: p[0].key, "graph", release)

    matched, mismatches, sbom_only, graph_only, ignored = [], [], [], [], []
    for key in sorted(sbom.keys() | graph.keys()):
        s = sbom.get(key)
        g = graph.get(key)
        if s is not None and g is not None:
            if s.version == g[0].version:
                matched.append(s)
            else:
                mismatches.append(VersionMismatch(key, s.version, g[0].version))
        elif s is not None:
            sbom_only.append(SbomOnly(s))
        elif g[1] == TEST_SCOPE:
            ignored.append(g[0])
        else:
            graph_only.append(g)

    return AlignmentVerdict(
        release=release,
        status=derive_status(mismatches, sbom_only, graph_only),
        matched=tuple(matched),
        version_mismatches=tuple(mismatches),
        sbom_only=tuple(sbom_only),
        graph_only=tuple(graph_only),
        ignored_test_deps=tuple(ignored),
        sbom_count=len(sbom),
        graph_count=len(graph),
        url=url,
        graph_source=graph_source,
    )


def flag_submodules(verdict: AlignmentVerdict, subject: Gav) -> AlignmentVerdict:
    """Mark SBOM-only entries sharing the subject's group and version as likely submodules.

    Flags are informational; status and list membership stay as they are.
    """
    if not verdict.sbom_only:
        return verdict
    flagged = tuple(dataclasses.replace(s, submodule_flag=(
        s.submodule_flag or (s.gav.group == subject.group and s.gav.version == subject.version)))
        for s in verdict.sbom_only)
    return dataclasses.replace(verdict, sbom_only=flagged)
