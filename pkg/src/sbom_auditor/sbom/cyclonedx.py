"""CycloneDX reader.

XML input is first converted to the same dict shape as the JSON
serialization, so a single builder produces the document for both.
"""

from __future__ import annotations

import json

from ..errors import SbomSyntaxError, StandardMismatch
from ..model import SbomStandard, Serialization
from . import _xml
from .model import Component, SbomDocument, ToolInfo, parse_timestamp

SUPPORTED_VERSIONS = ("1.2", "1.3", "1.4", "1.5", "1.6")
XML_NAMESPACE_PREFIX = "http://cyclonedx.org/schema/bom/"
_EXTRA_KEYS = ("services", "compositions", "externalReferences", "vulnerabilities",
               "annotations", "formulation", "properties")


def load_json(data: bytes) -> dict:
    try:
        obj = json.loads(data.decode("utf-8-sig"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise SbomSyntaxError(f"invalid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise SbomSyntaxError("top-level JSON value is not an object")
    fmt = obj.get("bomFormat")
    if fmt != "CycloneDX":
        declared = fmt or ("SPDX" if "spdxVersion" in obj else "nothing")
        raise StandardMismatch(f"expected bomFormat CycloneDX, document declares {declared}")
    return obj


def load_xml(data: bytes) -> dict:
    try:
        root = _xml.fromstring(data)
    except _xml.ParseError as exc:
        raise SbomSyntaxError(f"invalid XML: {exc}") from exc
    ns = _xml.namespace(root.tag)
    if _xml.local(root.tag) != "bom" or (ns and not ns.startswith(XML_NAMESPACE_PREFIX)):
        raise StandardMismatch(f"root element {root.tag!r} is not a CycloneDX bom")
    out = {"bomFormat": "CycloneDX", "specVersion": ns[len(XML_NAMESPACE_PREFIX):] if ns else ""}

    md = _xml.child(root, "metadata")
    if md is not None:
        metadata = {}
        if _xml.text(md, "timestamp"):
            metadata["timestamp"] = _xml.text(md, "timestamp")
        tools = _xml.child(md, "tools")
        if tools is not None:
            metadata["tools"] = _xml_tools(tools)
        comp = _xml.child(md, "component")
        if comp is not None:
            metadata["component"] = _xml_component(comp)
        out["metadata"] = metadata

    comps = _xml.child(root, "components")
    if comps is not None:
        out["components"] = [_xml_component(c) for c in _xml.children(comps, "component")]

    deps = _xml.child(root, "dependencies")
    if deps is not None:
        out["dependencies"] = [
            {"ref": _xml.attr(d, "ref"),
             "dependsOn": [_xml.attr(c, "ref") for c in _xml.children(d, "dependency")]}
            for d in _xml.children(deps, "dependency")
        ]

    others = [_xml.local(c.tag) for c in _xml.children(root)
              if _xml.local(c.tag) not in ("metadata", "components", "dependencies")]
    if others:
        out["xmlElements"] = others
    return out


def _xml_tools(el):
    if _xml.child(el, "components") is not None or _xml.child(el, "services") is not None:
        result = {}
        for kind, tag in (("components", "component"), ("services", "service")):
            wrapper = _xml.child(el, kind)
            if wrapper is not None:
                result[kind] = [_xml_component(c) for c in _xml.children(wrapper, tag)]
        return result
    return [{k: _xml.text(t, k) for k in ("vendor", "name", "version") if _xml.text(t, k)}
            for t in _xml.children(el, "tool")]


def _xml_component(el):
    d = {}
    for key in ("bom-ref", "type"):
        value = _xml.attr(el, key)
        if value:
            d[key] = value
    for key in ("group", "name", "version", "purl", "publisher"):
        value = _xml.text(el, key)
        if value:
            d[key] = value
    hashes = _xml.child(el, "hashes")
    if hashes is not None:
        d["hashes"] = [{"alg": _xml.attr(h, "alg"), "content": _xml.text(h)}
                       for h in _xml.children(hashes, "hash")]
    licenses = _xml.child(el, "licenses")
    if licenses is not None:
        entries = []
        for lic in _xml.children(licenses):
            tag = _xml.local(lic.tag)
            if tag == "license":
                entries.append({"license": {k: _xml.text(lic, k) for k in ("id", "name")
                                            if _xml.text(lic, k)}})
            elif tag == "expression" and _xml.text(lic):
                entries.append({"expression": _xml.text(lic)})
        d["licenses"] = entries
    nested = _xml.child(el, "components")
    if nested is not None:
        d["components"] = [_xml_component(c) for c in _xml.children(nested, "component")]
    return d


def _s(value):
    if isinstance(value, str):
        value = value.strip()
        return value or None
    return None


def _hash_key(alg):
    return (alg or "").lower().replace("-", "").replace("_", "")


def _component(d: dict) -> Component:
    group, name, version, purl = (_s(d.get(k)) for k in ("group", "name", "version", "purl"))
    ref = _s(d.get("bom-ref")) or purl or ":".join(p for p in (group, name, version) if p)
    licenses = []
    for entry in d.get("licenses") or ():
        if not isinstance(entry, dict):
            continue
        lic = entry.get("license")
        if isinstance(lic, dict):
            value = _s(lic.get("id")) or _s(lic.get("name"))
        else:
            value = _s(entry.get("expression"))
        if value:
            licenses.append(value)
    hashes = {}
    for h in d.get("hashes") or ():
        if isinstance(h, dict) and _s(h.get("content")):
            hashes[_hash_key(h.get("alg"))] = _s(h["content"]).lower()
    return Component(ref_id=ref, name=name or "", group=group, version=version, purl=purl,
                     hashes=hashes, licenses=tuple(licenses), publisher=_s(d.get("publisher")))


def _flatten(items, out):
    for d in items or ():
        if isinstance(d, dict):
            out.append(_component(d))
            _flatten(d.get("components"), out)
    return out


def _tools(raw, warnings):
    if isinstance(raw, dict):  # 1.5+: {"components": [...], "services": [...]}
        entries = list(raw.get("components") or ()) + list(raw.get("services") or ())
    else:
        entries = list(raw or ())
    tools = []
    for t in entries:
        name = _s(t.get("name")) if isinstance(t, dict) else None
        if not name:
            warnings.append("tool entry without a name")
            continue
        tools.append(ToolInfo(name, _s(t.get("version"))))
    return tuple(tools)


def build(data: dict, serialization: Serialization) -> SbomDocument:
    """Document from a JSON-shaped dict; dependency fields are not yet derived."""
    warnings = []
    spec_version = str(data.get("specVersion") or "").strip()
    if spec_version not in SUPPORTED_VERSIONS:
        warnings.append(f"unsupported CycloneDX spec version {spec_version or '(missing)'}; "
                        "parsed best-effort")

    metadata = data.get("metadata") or {}
    raw_ts = metadata.get("timestamp")
    created_at = parse_timestamp(raw_ts)
    if created_at is None:
        warnings.append("metadata timestamp missing" if not raw_ts
                        else f"unparseable metadata timestamp {raw_ts!r}")

    tools = _tools(metadata.get("tools"), warnings)
    subject, root_ref = None, None
    if isinstance(metadata.get("component"), dict):
        subject = _component(metadata["component"])
        root_ref = _s(metadata["component"].get("bom-ref"))

    components, seen = [], set()
    for c in _flatten(data.get("components"), []):
        if c.ref_id in seen:
            warnings.append(f"duplicate component ref {c.ref_id!r}; keeping the first")
            continue
        seen.add(c.ref_id)
        components.append(c)

    graph = {}
    for entry in data.get("dependencies") or ():
        ref = _s(entry.get("ref")) if isinstance(entry, dict) else None
        if not ref:
            warnings.append("dependency entry without a ref")
            continue
        if ref in graph:
            warnings.append(f"repeated dependency entry for {ref!r}; keeping the first")
            continue
        targets = []
        for t in entry.get("dependsOn") or ():
            t = _s(t)
            if t and t not in targets:
                targets.append(t)
        graph[ref] = tuple(targets)

    extras = {k: data[k] for k in _EXTRA_KEYS if k in data}
    if "xmlElements" in data:
        extras["xmlElements"] = data["xmlElements"]

    return SbomDocument(
        standard=SbomStandard.CYCLONEDX,
        spec_version=spec_version,
        serialization=serialization,
        created_at=created_at,
        tools=tools,
        root_ref=root_ref,
        subject=subject,
        components=tuple(components),
        dependency_graph=graph,
        warnings=tuple(warnings),
        extras=extras,
    )
