"""Digest computation and verification of registry checksum sidecars."""

from __future__ import annotations

import hashlib
import string
from dataclasses import dataclass

from .errors import MalformedSidecar
from .model import ChecksumAlgo

_HEXDIGITS = frozenset(string.hexdigits)
_KNOWN_LENGTHS = frozenset(a.hex_length for a in ChecksumAlgo)

OK = "ok"
MISMATCH = "mismatch"


@dataclass(frozen=True)
class VerificationResult:
    algo: ChecksumAlgo
    expected_hex: str
    actual_hex: str
    status: str

    @property
    def ok(self) -> bool:
        return self.status == OK


def compute_digest(data: bytes, algo: ChecksumAlgo) -> str:
    return hashlib.new(ChecksumAlgo(algo).value, data).hexdigest()


def parse_sidecar(text: str) -> str:
    """Extract the digest from a sidecar file body.

    Accepts a bare digest or the ``<digest>  <filename>`` form written by
    ``md5sum`` and friends.
    """
    tokens = text.split()
    if not tokens:
        raise MalformedSidecar("empty sidecar")
    token = tokens[0].lower()
    if len(token) not in _KNOWN_LENGTHS or not _HEXDIGITS.issuperset(token):
        raise MalformedSidecar(f"not a hex digest: {tokens[0][:40]!r}")
    return token


def verify(data: bytes, sidecar_text: str, algo: ChecksumAlgo) -> VerificationResult:
    algo = ChecksumAlgo(algo)
    expected = parse_sidecar(sidecar_text)
    if len(expected) != algo.hex_length:
        raise MalformedSidecar(
            f"{algo.value} sidecar holds a {len(expected)}-char digest, expected {algo.hex_length}")
    actual = compute_digest(data, algo)
    return VerificationResult(algo, expected, actual, OK if expected == actual else MISMATCH)
