"""Format-neutral representation shared by the CycloneDX and SPDX readers."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Mapping, Optional

from ..model import Gav, SbomStandard, Serialization, parse_gav

HIGH_CONFIDENCE = "high"
LOW_CONFIDENCE = "low"


@dataclass(frozen=True)
class ToolInfo:
    name: str
    version: Optional[str] = None


@dataclass(frozen=True)
class Component:
    ref_id: str
    name: str
    group: Optional[str] = None
    version: Optional[str] = None
    purl: Optional[str] = None
    hashes: Mapping[str, str] = field(default_factory=dict)
    licenses: tuple[str, ...] = ()
    publisher: Optional[str] = None

    def to_dict(self) -> dict:
        return {
            "ref": self.ref_id, "name": self.name, "group": self.group,
            "version": self.version, "purl": self.purl, "hashes": dict(self.hashes),
            "licenses": list(self.licenses), "publisher": self.publisher,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Component":
        return cls(ref_id=d["ref"], name=d["name"], group=d.get("group"),
                   version=d.get("version"), purl=d.get("purl"),
                   hashes=dict(d.get("hashes") or {}),
                   licenses=tuple(d.get("licenses") or ()), publisher=d.get("publisher"))


@dataclass(frozen=True)
class SbomDocument:
    """One parsed SBOM.

    ``dependency_graph`` maps a ref to the refs it directly depends on, in
    document order. ``direct_dependencies`` and ``unresolved_dependency_refs``
    are derived from it for ``root_ref``. ``warnings`` and ``extras`` do not
    take part in equality since they legitimately differ between the JSON and
    XML renderings of the same content.
    """

    standard: SbomStandard
    spec_version: str
    serialization: Serialization
    created_at: Optional[datetime] = None
    tools: tuple[ToolInfo, ...] = ()
    root_ref: Optional[str] = None
    subject: Optional[Component] = None
    components: tuple[Component, ...] = ()
    dependency_graph: Mapping[str, tuple[str, ...]] = field(default_factory=dict)
    direct_dependencies: tuple[Gav, ...] = ()
    unresolved_dependency_refs: tuple[str, ...] = ()
    dependency_confidence: str = HIGH_CONFIDENCE
    warnings: tuple[str, ...] = field(default=(), compare=False)
    extras: Mapping[str, object] = field(default_factory=dict, compare=False)

    def component(self, ref: str) -> Optional[Component]:
        if self.subject is not None and self.subject.ref_id == ref:
            return self.subject
        for c in self.components:
            if c.ref_id == ref:
                return c
        return None

    def to_dict(self) -> dict:
        return {
            "standard": self.standard.value,
            "spec_version": self.spec_version,
            "serialization": self.serialization.value,
            "created_at": format_timestamp(self.created_at),
            "tools": [{"name": t.name, "version": t.version} for t in self.tools],
            "root_ref": self.root_ref,
            "subject": self.subject.to_dict() if self.subject else None,
            "components": [c.to_dict() for c in self.components],
            "dependency_graph": {k: list(v) for k, v in self.dependency_graph.items()},
            "direct_dependencies": [str(g) for g in self.direct_dependencies],
            "unresolved_dependency_refs": list(self.unresolved_dependency_refs),
            "dependency_confidence": self.dependency_confidence,
            "warnings": list(self.warnings),
            "extras": dict(self.extras),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SbomDocument":
        subject = d.get("subject")
        return cls(
            standard=SbomStandard(d["standard"]),
            spec_version=d.get("spec_version", ""),
            serialization=Serialization(d["serialization"]),
            created_at=parse_timestamp(d.get("created_at")),
            tools=tuple(ToolInfo(t["name"], t.get("version")) for t in d.get("tools", ())),
            root_ref=d.get("root_ref"),
            subject=Component.from_dict(subject) if subject else None,
            components=tuple(Component.from_dict(c) for c in d.get("components", ())),
            dependency_graph={k: tuple(v) for k, v in d.get("dependency_graph", {}).items()},
            direct_dependencies=tuple(parse_gav(g) for g in d.get("direct_dependencies", ())),
            unresolved_dependency_refs=tuple(d.get("unresolved_dependency_refs", ())),
            dependency_confidence=d.get("dependency_confidence", HIGH_CONFIDENCE),
            warnings=tuple(d.get("warnings", ())),
            extras=dict(d.get("extras") or {}),
        )


_FRACTION = re.compile(r"\.(\d+)")


def parse_timestamp(value) -> Optional[datetime]:
    """Parse an ISO-8601 timestamp; naive values are taken as UTC. None if unparseable."""
    if not value or not isinstance(value, str):
        return None
    text = value.strip()
    if text.endswith(("Z", "z")):
        text = text[:-1] + "+00:00"
    # fromisoformat on 3.10 only takes 3 or 6 fractional digits
    m = _FRACTION.search(text)
    if m:
        digits = (m.group(1) + "000000")[:6]
        text = text[:m.start()] + "." + digits + text[m.end():]
    try:
        parsed = datetime.fromisoformat(text)
    except ValueError:
        return None
    if parsed.tzinfo is None:
        parsed = parsed.replace(tzinfo=timezone.utc)
    return parsed


def format_timestamp(value: Optional[datetime]) -> Optional[str]:
    return value.isoformat() if value is not None else None


@dataclass(frozen=True)
class ParsedSbom:
    """Outcome of parsing one fetched SBOM file: a document or an error message."""

    release: Gav
    url: str
    document: Optional[SbomDocument] = None
    error: Optional[str] = None

    def to_record(self) -> dict:
        rec = {"release": str(self.release), "url": self.url}
        if self.document is not None:
            rec["document"] = self.document.to_dict()
        if self.error is not None:
            rec["error"] = self.error
        return rec

    @classmethod
    def from_record(cls, rec: dict) -> "ParsedSbom":
        doc = rec.get("document")
        return cls(parse_gav(rec["release"]), rec["url"],
                   SbomDocument.from_dict(doc) if doc else None, rec.get("error"))
