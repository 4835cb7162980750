"""SPDX 2.x reader for JSON, element-style XML and RDF/XML documents.

All three inputs are normalised to the JSON dict shape before building the
document. Dependency extraction follows DEPENDS_ON (and its inverse,
DEPENDENCY_OF) from the package the document DESCRIBES; it is best-effort
and marked low-confidence.
"""

from __future__ import annotations

import json
import re

from ..errors import MalformedPurl, SbomSyntaxError, StandardMismatch
from ..model import SbomStandard, Serialization
from . import _xml
from .model import LOW_CONFIDENCE, Component, SbomDocument, ToolInfo, parse_timestamp
from .purl import parse_maven_purl

SUPPORTED_VERSIONS = ("2.0", "2.1", "2.2", "2.3")
_NO_VALUE = {"NOASSERTION", "NONE"}

# keys that hold arrays in the JSON serialization, with the element name used
# when the XML form wraps each item
_LIST_KEYS = {
    "packages": "package", "relationships": "relationship", "creators": "creator",
    "documentDescribes": None, "externalRefs": "externalRef", "checksums": "checksum",
    "files": "file", "hasFiles": None, "annotations": "annotation", "snippets": "snippet",
    "extractedLicensingInfos": "extractedLicensingInfo", "seeAlsos": "seeAlso",
    "licenseInfoFromFiles": None, "licenseInfoInFiles": None, "attributionTexts": None,
    "externalDocumentRefs": "externalDocumentRef", "fileTypes": None,
}


def load_json(data: bytes) -> dict:
    try:
        obj = json.loads(data.decode("utf-8-sig"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise SbomSyntaxError(f"invalid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise SbomSyntaxError("top-level JSON value is not an object")
    _check_declared(obj)
    return obj


def _check_declared(obj):
    version = obj.get("spdxVersion")
    if not isinstance(version, str) or not version.upper().startswith("SPDX-"):
        declared = "CycloneDX" if obj.get("bomFormat") else "nothing"
        raise StandardMismatch(f"expected an spdxVersion field, document declares {declared}")


def load_xml(data: bytes) -> dict:
    try:
        root = _xml.fromstring(data)
    except _xml.ParseError as exc:
        raise SbomSyntaxError(f"invalid XML: {exc}") from exc
    if _xml.local(root.tag) == "RDF":
        obj = _rdf_to_dict(root)
    else:
        obj = _element_value(root)
        if not isinstance(obj, dict):
            obj = {}
    _check_declared(obj)
    return obj


# -- element-style XML (one element per JSON key) ----------------------------

def _element_value(el):
    kids = _xml.children(el)
    if not kids:
        return (el.text or "").strip()
    out = {}
    for k in kids:
        key = _xml.local(k.tag)
        if key in _LIST_KEYS:
            out.setdefault(key, []).extend(_list_items(k, _LIST_KEYS[key]))
        elif key not in out:
            out[key] = _element_value(k)
    return out


def _list_items(el, singular):
    kids = _xml.children(el)
    if kids and singular and all(_xml.local(c.tag) == singular for c in kids):
        return [_element_value(c) for c in kids]
    return [_element_value(el)]


# -- RDF/XML -----------------------------------------------------------------

def _fragment(uri):
    if not uri:
        return None
    return uri.rsplit("#", 1)[-1]


def _rdf_enum(uri, prefix):
    """``...#relationshipType_dependsOn`` -> ``DEPENDS_ON``."""
    name = _fragment(uri) or ""
    if name.startswith(prefix):
        name = name[len(prefix):]
    return re.sub(r"(?<=[a-z0-9])(?=[A-Z])", "_", name).upper()


def _rdf_ref(el):
    """Target of an RDF property: rdf:resource, or the rdf:about of a nested node."""
    if el is None:
        return None
    ref = _xml.attr(el, "resource")
    if ref:
        return ref
    for c in _xml.children(el):
        about = _xml.attr(c, "about")
        if about:
            return about
    return None


def _unwrap(el, node_name):
    # Element truthiness reflects child count, so compare against None explicitly
    inner = _xml.child(el, node_name)
    return el if inner is None else inner


def _rdf_license(el):
    ref = _rdf_ref(el)
    if ref:
        tail = ref.rsplit("/", 1)[-1]
        return _rdf_enum(tail, "") if "#" in tail else tail
    return _xml.text(el) if el is not None else None


def _rdf_to_dict(root):
    doc = next((e for e in root.iter() if isinstance(e.tag, str)
                and _xml.local(e.tag) == "SpdxDocument"), None)
    if doc is None:
        raise StandardMismatch("RDF document without an SpdxDocument node")
    out = {
        "spdxVersion": _xml.text(doc, "specVersion"),
        "SPDXID": _fragment(_xml.attr(doc, "about")) or "SPDXRef-DOCUMENT",
        "name": _xml.text(doc, "name"),
    }
    ci = _xml.child(doc, "creationInfo")
    if ci is not None:
        ci = _unwrap(ci, "CreationInfo")
        out["creationInfo"] = {
            "created": _xml.text(ci, "created"),
            "creators": [_xml.text(c) for c in _xml.children(ci, "creator") if _xml.text(c)],
        }

    packages, seen = [], set()
    for pkg in root.iter():
        if not isinstance(pkg.tag, str) or _xml.local(pkg.tag) != "Package":
            continue
        about = _xml.attr(pkg, "about")
        if not about or about in seen:
            continue
        seen.add(about)
        entry = {"SPDXID": _fragment(about)}
        for key in ("name", "versionInfo", "supplier", "originator"):
            if _xml.text(pkg, key):
                entry[key] = _xml.text(pkg, key)
        checksums = []
        for wrap in _xml.children(pkg, "checksum"):
            ck = _unwrap(wrap, "Checksum")
            checksums.append({
                "algorithm": _rdf_enum(_rdf_ref(_xml.child(ck, "algorithm")), "checksumAlgorithm_"),
                "checksumValue": _xml.text(ck, "checksumValue"),
            })
        if checksums:
            entry["checksums"] = checksums
        refs = []
        for wrap in _xml.children(pkg, "externalRef"):
            ref = _unwrap(wrap, "ExternalRef")
            rtype = _rdf_ref(_xml.child(ref, "referenceType")) or ""
            refs.append({
                "referenceCategory": _rdf_enum(_rdf_ref(_xml.child(ref, "referenceCategory")),
                                               "referenceCategory_"),
                "referenceType": rtype.rstrip("/").rsplit("/", 1)[-1].rsplit("#", 1)[-1],
                "referenceLocator": _xml.text(ref, "referenceLocator"),
            })
        if refs:
            entry["externalRefs"] = refs
        for key in ("licenseDeclared", "licenseConcluded"):
            value = _rdf_license(_xml.child(pkg, key))
            if value:
                entry[key] = value
        packages.append(entry)
    out["packages"] = packages

    describes = [_fragment(_rdf_ref(d)) for d in _xml.children(doc, "describesPackage")]
    out["documentDescribes"] = [d for d in describes if d]

    relationships, seen_rel = [], set()
    for holder in root.iter():
        if not isinstance(holder.tag, str):
            continue
        about = _xml.attr(holder, "about")
        if not about:
            continue
        for wrap in _xml.children(holder, "relationship"):
            rel = _unwrap(wrap, "Relationship")
            item = (_fragment(about),
                    _rdf_enum(_rdf_ref(_xml.child(rel, "relationshipType")), "relationshipType_"),
                    _fragment(_rdf_ref(_xml.child(rel, "relatedSpdxElement"))))
            if all(item) and item not in seen_rel:
                seen_rel.add(item)
                relationships.append(dict(zip(
                    ("spdxElementId", "relationshipType", "relatedSpdxElement"), item)))
    out["relationships"] = relationships
    return out


# -- building ----------------------------------------------------------------

def _s(value):
    if isinstance(value, str):
        value = value.strip()
        return value or None
    return None


def _party(value):
    """``Organization: Foo`` -> ``Foo``."""
    value = _s(value)
    if not value or value.upper() in _NO_VALUE:
        return None
    kind, sep, rest = value.partition(":")
    if sep and kind.strip() in ("Organization", "Person", "Tool"):
        return rest.strip() or None
    return value


def _package(d: dict, warnings) -> Component:
    purl = None
    for ref in d.get("externalRefs") or ():
        if isinstance(ref, dict) and (_s(ref.get("referenceType")) or "").lower() == "purl":
            purl = _s(ref.get("referenceLocator"))
            if purl:
                break
    group = None
    if purl:
        try:
            gav = parse_maven_purl(purl)
        except MalformedPurl as exc:
            warnings.append(str(exc))
            gav = None
        if gav is not None:
            group = gav.group
    hashes = {}
    for ck in d.get("checksums") or ():
        if isinstance(ck, dict) and _s(ck.get("checksumValue")):
            alg = (_s(ck.get("algorithm")) or "").lower().replace("-", "").replace("_", "")
            hashes[alg] = _s(ck["checksumValue"]).lower()
    licenses = []
    for key in ("licenseDeclared", "licenseConcluded"):
        value = _s(d.get(key))
        if value and value.upper() not in _NO_VALUE and value not in licenses:
            licenses.append(value)
    return Component(
        ref_id=_s(d.get("SPDXID")) or "",
        name=_s(d.get("name")) or "",
        group=group,
        version=_s(d.get("versionInfo")),
        purl=purl,
        hashes=hashes,
        licenses=tuple(licenses),
        publisher=_party(d.get("supplier")) or _party(d.get("originator")),
    )


def build(data: dict, serialization: Serialization) -> SbomDocument:
    warnings = []
    raw_version = _s(data.get("spdxVersion")) or ""
    spec_version = raw_version[5:] if raw_version.upper().startswith("SPDX-") else raw_version
    if spec_version not in SUPPORTED_VERSIONS:
        warnings.append(f"unsupported SPDX version {raw_version or '(missing)'}; parsed best-effort")

    ci = data.get("creationInfo") or {}
    created_at = parse_timestamp(ci.get("created"))
    if created_at is None:
        warnings.append("creationInfo.created missing or unparseable")
    tools = []
    for creator in ci.get("creators") or ():
        creator = _s(creator)
        if creator and creator.lower().startswith("tool:"):
            name = creator.split(":", 1)[1].strip()
            if name:
                tools.append(ToolInfo(name, None))

    packages, seen = [], set()
    for d in data.get("packages") or ():
        if not isinstance(d, dict):
            continue
        c = _package(d, warnings)
        if not c.ref_id:
            warnings.append(f"package {c.name!r} without SPDXID")
            continue
        if c.ref_id in seen:
            warnings.append(f"duplicate SPDXID {c.ref_id!r}; keeping the first")
            continue
        seen.add(c.ref_id)
        packages.append(c)

    doc_id = _s(data.get("SPDXID")) or "SPDXRef-DOCUMENT"
    described = [_s(x) for x in data.get("documentDescribes") or () if _s(x)]
    graph: dict[str, list[str]] = {}
    other_relationships = []
    for rel in data.get("relationships") or ():
        if not isinstance(rel, dict):
            continue
        src, kind, dst = (_s(rel.get(k)) for k in
                          ("spdxElementId", "relationshipType", "relatedSpdxElement"))
        if not (src and kind and dst):
            continue
        kind = kind.upper()
        if kind == "DESCRIBES" and src == doc_id:
            if dst not in described:
                described.append(dst)
        elif kind == "DEPENDS_ON":
            _add_edge(graph, src, dst)
        elif kind == "DEPENDENCY_OF":
            _add_edge(graph, dst, src)
        else:
            other_relationships.append({"from": src, "type": kind, "to": dst})

    root_ref = described[0] if described else None
    if len(described) > 1:
        warnings.append(f"document describes {len(described)} elements; using {root_ref!r}")
    subject = next((c for c in packages if c.ref_id == root_ref), None)

    extras = {}
    if other_relationships:
        extras["relationships"] = other_relationships
    return SbomDocument(
        standard=SbomStandard.SPDX,
        spec_version=spec_version,
        serialization=serialization,
        created_at=created_at,
        tools=tuple(tools),
        root_ref=root_ref,
        subject=subject,
        components=tuple(packages),
        dependency_graph={k: tuple(v) for k, v in graph.items()},
        dependency_confidence=LOW_CONFIDENCE,
        warnings=tuple(warnings),
        extras=extras,
    )


def _add_edge(graph, src, dst):
    targets = graph.setdefault(src, [])
    if dst not in targets:
        targets.append(dst)
