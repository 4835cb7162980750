"""Recognise SBOM files and their sidecars inside a release directory listing."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import AmbiguousClassification
from .model import ChecksumAlgo, Gav, SbomStandard, Serialization, ordered_algos, parse_gav
from .registry import FileListing

logger = logging.getLogger(__name__)

_EXTENSIONS = {".json": Serialization.JSON, ".xml": Serialization.XML}
_TOKENS = {"cyclonedx": SbomStandard.CYCLONEDX, "spdx": SbomStandard.SPDX}
SIGNATURE_EXTENSION = ".asc"


@dataclass(frozen=True)
class SbomArtifactRef:
    release: Gav
    url: str
    filename: str
    standard: SbomStandard
    serialization: Serialization
    checksums_available: tuple[ChecksumAlgo, ...] = ()
    is_signed: bool = False

    def __post_init__(self):
        if not self.url.endswith(self.filename):
            raise ValueError(f"url {self.url!r} does not end with {self.filename!r}")
        object.__setattr__(self, "checksums_available", ordered_algos(self.checksums_available))

    def sidecar_url(self, algo: ChecksumAlgo) -> str:
        return self.url + algo.extension

    def to_record(self) -> dict:
        return {
            "release": str(self.release),
            "url": self.url,
            "standard": self.standard.value,
            "serialization": self.serialization.value,
            "checksums": [a.value for a in self.checksums_available],
            "signed": self.is_signed,
        }

    @classmethod
    def from_record(cls, rec: dict) -> "SbomArtifactRef":
        url = rec["url"]
        return cls(
            release=parse_gav(rec["release"]),
            url=url,
            filename=url.rsplit("/", 1)[-1],
            standard=SbomStandard(rec["standard"]),
            serialization=Serialization(rec["serialization"]),
            checksums_available=tuple(ChecksumAlgo(a) for a in rec.get("checksums", ())),
            is_signed=bool(rec.get("signed", False)),
        )


def classify_filename(filename: str) -> Optional[tuple[SbomStandard, Serialization]]:
    """Return ``(standard, serialization)`` for an SBOM filename, else None.

    The stem must contain ``cyclonedx`` or ``spdx`` (case-insensitive substring)
    and the extension must be ``.json`` or ``.xml``. A name containing both
    tokens raises :class:`AmbiguousClassification`.
    """
    lowered = filename.lower()
    serialization = None
    for ext, ser in _EXTENSIONS.items():
        if lowered.endswith(ext):
            serialization = ser
            stem = lowered[: -len(ext)]
            break
    if serialization is None:
        return None
    found = [std for token, std in _TOKENS.items() if token in stem]
    if len(found) > 1:
        raise AmbiguousClassification(filename)
    if not found:
        return None
    return found[0], serialization


def discover_sboms(listing: FileListing, release: Gav) -> list[SbomArtifactRef]:
    names = set(listing.filenames)
    refs = []
    for filename in sorted(names):
        try:
            kind = classify_filename(filename)
        except AmbiguousClassification as exc:
            logger.warning("%s: skipping %s", release, exc)
            continue
        if kind is None:
            continue
        standard, serialization = kind
        refs.append(SbomArtifactRef(
            release=release,
            url=listing.directory_url + filename,
            filename=filename,
            standard=standard,
            serialization=serialization,
            checksums_available=tuple(a for a in ChecksumAlgo if filename + a.extension in names),
            is_signed=filename + SIGNATURE_EXTENSION in names,
        ))
    return refs


def write_inventory(refs: Iterable[SbomArtifactRef], path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for ref in refs:
            fh.write(json.dumps(ref.to_record(), sort_keys=True) + "\n")


def read_inventory(path) -> list[SbomArtifactRef]:
    with open(path, encoding="utf-8") as fh:
        return [SbomArtifactRef.from_record(json.loads(line)) for line in fh if line.strip()]
