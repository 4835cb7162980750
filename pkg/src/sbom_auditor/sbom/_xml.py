"""Namespace-agnostic ElementTree helpers."""

from __future__ import annotations

import xml.etree.ElementTree as ET


def local(tag: str) -> str:
    return tag.rsplit("}", 1)[-1] if tag.startswith("{") else tag


def namespace(tag: str) -> str:
    return tag[1:].split("}", 1)[0] if tag.startswith("{") else ""


def children(elem, name=None):
    return [c for c in elem if isinstance(c.tag, str) and (name is None or local(c.tag) == name)]


def child(elem, name):
    for c in elem:
        if isinstance(c.tag, str) and local(c.tag) == name:
            return c
    return None


def text(elem, name=None):
    """Stripped text of ``elem`` (or of its first ``name`` child); None when empty."""
    node = elem if name is None else child(elem, name)
    if node is None or node.text is None:
        return None
    value = node.text.strip()
    return value or None


def attr(elem, name):
    """Attribute lookup ignoring namespace prefixes."""
    if name in elem.attrib:
        return elem.attrib[name]
    for key, value in elem.attrib.items():
        if local(key) == name:
            return value
    return None


def fromstring(data: bytes):
    return ET.fromstring(data)


ParseError = ET.ParseError
