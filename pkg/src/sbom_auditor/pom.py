"""Direct dependencies declared in a single POM file.

Only the POM itself is consulted: properties and the project version are
interpolated, but parent POMs are never fetched, so anything inherited stays
as an unresolved ``${...}`` placeholder.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass

from .errors import MalformedCoordinate, PomSyntaxError
from .model import Gav
from .sbom import _xml

logger = logging.getLogger(__name__)

SCOPES = ("compile", "provided", "runtime", "test", "system", "import", "unspecified")
# stands in for a version inherited from a parent or a dependencyManagement section
MANAGED_VERSION = "${managed}"

_PLACEHOLDER = re.compile(r"\$\{([^}]+)\}")
_MAX_DEPTH = 10


@dataclass(frozen=True)
class PomDependency:
    gav: Gav
    scope: str = "unspecified"
    optional_flag: bool = False

    @property
    def resolved(self) -> bool:
        return "${" not in self.gav.version

    @property
    def effective_scope(self) -> str:
        return "compile" if self.scope == "unspecified" else self.scope


def _properties(project):
    props = {}
    block = _xml.child(project, "properties")
    if block is not None:
        for p in _xml.children(block):
            props[_xml.local(p.tag)] = (p.text or "").strip()
    parent = _xml.child(project, "parent")
    for key in ("groupId", "version"):
        own = _xml.text(project, key)
        inherited = _xml.text(parent, key) if parent is not None else None
        value = own or inherited
        if value:
            props[f"project.{key}"] = value
            props[f"pom.{key}"] = value
        if inherited:
            props[f"project.parent.{key}"] = inherited
    artifact = _xml.text(project, "artifactId")
    if artifact:
        props["project.artifactId"] = artifact
    if "project.version" in props:
        props.setdefault("version", props["project.version"])
    return props


def _interpolate(value, props):
    for _ in range(_MAX_DEPTH):
        replaced = _PLACEHOLDER.sub(lambda m: props.get(m.group(1).strip(), m.group(0)), value)
        if replaced == value:
            break
        value = replaced
    return value


def parse_pom_dependencies(pom_bytes: bytes) -> list[PomDependency]:
    try:
        project = _xml.fromstring(pom_bytes)
    except _xml.ParseError as exc:
        raise PomSyntaxError(f"invalid POM XML: {exc}") from exc
    if _xml.local(project.tag) != "project":
        raise PomSyntaxError(f"root element is {_xml.local(project.tag)!r}, not project")
    props = _properties(project)
    block = _xml.child(project, "dependencies")
    if block is None:
        return []

    deps = []
    for dep in _xml.children(block, "dependency"):
        group = _interpolate(_xml.text(dep, "groupId") or "", props)
        artifact = _interpolate(_xml.text(dep, "artifactId") or "", props)
        version = _interpolate(_xml.text(dep, "version") or MANAGED_VERSION, props)
        scope = (_interpolate(_xml.text(dep, "scope") or "", props) or "unspecified").lower()
        if scope not in SCOPES:
            logger.warning("unknown scope %r for %s:%s; treating as unspecified",
                           scope, group, artifact)
            scope = "unspecified"
        try:
            gav = Gav(group, artifact, version)
        except MalformedCoordinate as exc:
            logger.warning("skipping POM dependency: %s", exc)
            continue
        optional = (_xml.text(dep, "optional") or "").lower() == "true"
        deps.append(PomDependency(gav, scope, optional))
    return deps


def pom_direct_dependencies(deps: list[PomDependency]) -> list[tuple[Gav, str]]:
    """``(gav, scope)`` pairs usable as the graph side of an alignment. Drops import-scoped BOMs."""
    return [(d.gav, d.effective_scope) for d in deps if d.scope != "import"]


def pom_url(directory_url: str, gav: Gav) -> str:
    return f"{directory_url}{gav.artifact}-{gav.version}.pom"
