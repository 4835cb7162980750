"""Parse CycloneDX and SPDX documents into one :class:`SbomDocument` model."""

from __future__ import annotations

import dataclasses
import logging
from typing import Optional

from ..errors import MalformedCoordinate, MalformedPurl
from ..model import Gav, SbomStandard, Serialization
from . import cyclonedx, spdx
from .model import (HIGH_CONFIDENCE, LOW_CONFIDENCE, Component, ParsedSbom, SbomDocument, ToolInfo,
                    parse_timestamp)
from .purl import parse_maven_purl, render_maven_purl

logger = logging.getLogger(__name__)

__all__ = [
    "Component", "ParsedSbom", "SbomDocument", "ToolInfo", "HIGH_CONFIDENCE", "LOW_CONFIDENCE",
    "parse_sbom", "extract_direct_dependencies", "component_gav",
    "parse_maven_purl", "render_maven_purl", "parse_timestamp",
]

_READERS = {
    (SbomStandard.CYCLONEDX, Serialization.JSON): (cyclonedx.load_json, cyclonedx.build),
    (SbomStandard.CYCLONEDX, Serialization.XML): (cyclonedx.load_xml, cyclonedx.build),
    (SbomStandard.SPDX, Serialization.JSON): (spdx.load_json, spdx.build),
    (SbomStandard.SPDX, Serialization.XML): (spdx.load_xml, spdx.build),
}


def parse_sbom(data: bytes, standard: SbomStandard, serialization: Serialization) -> SbomDocument:
    """Parse ``data`` as the claimed standard and serialization.

    Raises SbomSyntaxError for unreadable input and StandardMismatch when the
    document declares the other standard. Everything softer (unknown spec
    version, missing timestamp, dangling refs) ends up in ``doc.warnings``.
    """
    load, build = _READERS[(SbomStandard(standard), Serialization(serialization))]
    doc = build(load(data), Serialization(serialization))
    deps, unresolved, notes = _extract(doc)
    warnings = doc.warnings + tuple(notes)
    for w in warnings:
        logger.debug("%s/%s: %s", doc.standard, doc.serialization, w)
    return dataclasses.replace(doc, direct_dependencies=tuple(deps),
                               unresolved_dependency_refs=tuple(unresolved),
                               warnings=warnings)


def component_gav(component: Component, warnings: Optional[list] = None) -> Optional[Gav]:
    """Coordinate of a component: maven purl first, then group/name/version."""
    notes = warnings if warnings is not None else []
    from_purl = None
    if component.purl:
        try:
            from_purl = parse_maven_purl(component.purl)
        except MalformedPurl as exc:
            notes.append(str(exc))
    from_fields = None
    if component.group and component.name and component.version:
        try:
            from_fields = Gav(component.group, component.name, component.version)
        except MalformedCoordinate:
            pass
    if from_purl and from_fields and from_purl != from_fields:
        notes.append(f"{component.ref_id}: purl says {from_purl}, fields say {from_fields}; "
                     "using the purl")
    return from_purl or from_fields


def _extract(doc: SbomDocument):
    notes = []
    graph = doc.dependency_graph
    if doc.standard is SbomStandard.CYCLONEDX:
        if not graph:
            return [], [], notes
        if doc.root_ref is not None and doc.root_ref in graph:
            refs = graph[doc.root_ref]
        else:
            first = next(iter(graph))
            notes.append(f"missing-root: no dependency entry for root {doc.root_ref!r}; "
                         f"falling back to the first entry {first!r}")
            refs = graph[first]
    else:
        refs = graph.get(doc.root_ref, ()) if doc.root_ref else ()

    deps, unresolved = [], []
    for ref in refs:
        component = doc.component(ref)
        gav = component_gav(component, notes) if component is not None else None
        if gav is None:
            if ref not in unresolved:
                unresolved.append(ref)
        elif gav not in deps:
            deps.append(gav)
    return deps, unresolved, notes


def extract_direct_dependencies(doc: SbomDocument) -> tuple[list[Gav], list[str]]:
    """Direct dependencies of the document's root, plus the refs that did not map to a GAV."""
    deps, unresolved, notes = _extract(doc)
    for note in notes:
        logger.warning("%s", note)
    return deps, unresolved
