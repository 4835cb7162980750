"""Maven package URLs (``pkg:maven/<group>/<artifact>@<version>``)."""

from __future__ import annotations

from typing import Optional
from urllib.parse import quote, unquote

from ..errors import MalformedCoordinate, MalformedPurl
from ..model import Gav

_SAFE = ".-_~+!$&'()*,;="


def parse_maven_purl(purl: str) -> Optional[Gav]:
    """Return the coordinate of a maven purl; None for any other purl type.

    Qualifiers (``?...``) and subpath (``#...``) are ignored.
    """
    text = purl.strip()
    scheme, sep, rest = text.partition(":")
    if not sep or scheme.lower() != "pkg":
        return None
    rest = rest.lstrip("/")
    rest = rest.split("#", 1)[0].split("?", 1)[0]
    ptype, sep, path = rest.partition("/")
    if ptype.lower() != "maven":
        return None
    segments = [s for s in path.split("/") if s]
    if len(segments) != 2:
        raise MalformedPurl(f"expected pkg:maven/<group>/<artifact>@<version>: {purl!r}")
    namespace, name_version = segments
    name, at, version = name_version.rpartition("@")
    if not at or not name or not version:
        raise MalformedPurl(f"maven purl without artifact or version: {purl!r}")
    try:
        return Gav(unquote(namespace), unquote(name), unquote(version))
    except MalformedCoordinate as exc:
        raise MalformedPurl(f"{purl!r}: {exc}") from exc


def render_maven_purl(gav: Gav) -> str:
    return "pkg:maven/{}/{}@{}".format(*(quote(part, safe=_SAFE)
                                        for part in (gav.group, gav.artifact, gav.version)))
