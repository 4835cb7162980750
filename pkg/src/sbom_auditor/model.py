"""Coordinates, release records and the small enumerations used everywhere."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from datetime import datetime, timedelta, timezone

from .errors import InvalidTimestamp, MalformedCoordinate

DEFAULT_REGISTRY_ROOT = "https://repo1.maven.org/maven2"
REGISTRY_ROOT_ENV = "SBOM_AUDITOR_REGISTRY_ROOT"


class SbomStandard(str, enum.Enum):
    CYCLONEDX = "cyclonedx"
    SPDX = "spdx"

    def __str__(self):
        return self.value


class Serialization(str, enum.Enum):
    JSON = "json"
    XML = "xml"

    def __str__(self):
        return self.value


class ChecksumAlgo(str, enum.Enum):
    # declaration order is the canonical rendering order
    MD5 = "md5"
    SHA1 = "sha1"
    SHA256 = "sha256"
    SHA512 = "sha512"

    def __str__(self):
        return self.value

    @property
    def extension(self) -> str:
        return "." + self.value

    @property
    def hex_length(self) -> int:
        return _HEX_LENGTHS[self]


_HEX_LENGTHS = {
    ChecksumAlgo.MD5: 32,
    ChecksumAlgo.SHA1: 40,
    ChecksumAlgo.SHA256: 64,
    ChecksumAlgo.SHA512: 128,
}

CANONICAL_ALGO_ORDER = tuple(ChecksumAlgo)

_EPOCH = datetime(1970, 1, 1, tzinfo=timezone.utc)


def ordered_algos(algos) -> tuple[ChecksumAlgo, ...]:
    """Deduplicate ``algos`` and return them in md5, sha1, sha256, sha512 order."""
    present = {ChecksumAlgo(a) for a in algos}
    return tuple(a for a in CANONICAL_ALGO_ORDER if a in present)


@dataclass(frozen=True, order=True)
class Gav:
    """A Maven release coordinate."""

    group: str
    artifact: str
    version: str

    def __post_init__(self):
        for name in ("group", "artifact", "version"):
            value = getattr(self, name)
            if not isinstance(value, str) or not value:
                raise MalformedCoordinate(f"{self.group}:{self.artifact}:{self.version}",
                                          f"empty {name}")
            if ":" in value:
                raise MalformedCoordinate(f"{self.group}:{self.artifact}:{self.version}",
                                          f"':' inside {name}")

    def __str__(self):
        return f"{self.group}:{self.artifact}:{self.version}"

    @property
    def key(self) -> str:
        """``group:artifact``, the identity of the artifact node."""
        return f"{self.group}:{self.artifact}"


def parse_gav(text: str) -> Gav:
    parts = text.split(":")
    if len(parts) != 3 or not all(parts):
        raise MalformedCoordinate(text)
    return Gav(*parts)


def year_of(timestamp_ms: int) -> int:
    """UTC calendar year of a millisecond epoch timestamp."""
    if timestamp_ms <= 0:
        raise InvalidTimestamp(f"timestamp must be positive, got {timestamp_ms}")
    return (_EPOCH + timedelta(milliseconds=timestamp_ms)).year


@dataclass(frozen=True)
class ReleaseRecord:
    gav: Gav
    timestamp: int
    year: int = field(init=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "year", year_of(self.timestamp))

    @property
    def id(self) -> str:
        return str(self.gav)


def registry_directory_url(root: str, gav: Gav) -> str:
    """URL of the directory holding every file of ``gav`` in a Maven layout."""
    base = root.rstrip("/")
    return f"{base}/{gav.group.replace('.', '/')}/{gav.artifact}/{gav.version}/"
