"""Exception hierarchy shared across the auditor."""


class AuditorError(Exception):
    """Base class for every error raised by this package."""


class MalformedCoordinate(AuditorError, ValueError):
    def __init__(self, text, reason="expected group:artifact:version"):
        self.text = text
        super().__init__(f"malformed coordinate {text!r}: {reason}")


class InvalidTimestamp(AuditorError, ValueError):
    pass


# registry access

class RegistryError(AuditorError):
    def __init__(self, url, message):
        self.url = url
        super().__init__(f"{message}: {url}")


class NotFound(RegistryError):
    def __init__(self, url):
        super().__init__(url, "not found")


class TransientFailure(RegistryError):
    def __init__(self, url, attempts, last_error):
        self.attempts = attempts
        self.last_error = last_error
        super().__init__(url, f"gave up after {attempts} attempts ({last_error})")


class MalformedIndex(RegistryError):
    def __init__(self, url, reason):
        super().__init__(url, f"not a directory index ({reason})")


class SizeLimitExceeded(RegistryError):
    def __init__(self, url, limit):
        self.limit = limit
        super().__init__(url, f"body exceeds {limit} bytes")


# classification and verification

class AmbiguousClassification(AuditorError, ValueError):
    def __init__(self, filename):
        self.filename = filename
        super().__init__(f"{filename!r} names both cyclonedx and spdx")


class MalformedSidecar(AuditorError, ValueError):
    pass


# document parsing

class SbomSyntaxError(AuditorError, ValueError):
    pass


class StandardMismatch(AuditorError, ValueError):
    pass


class MalformedPurl(AuditorError, ValueError):
    pass


class PomSyntaxError(AuditorError, ValueError):
    pass


# graph snapshots

class SnapshotParseError(AuditorError, ValueError):
    def __init__(self, path, lineno, reason):
        self.path = path
        self.lineno = lineno
        super().__init__(f"{path}:{lineno}: {reason}")


class DanglingEdgeError(AuditorError, ValueError):
    def __init__(self, edges):
        self.edges = list(edges)
        shown = ", ".join(f"{e.from_release}->{e.to_artifact}" for e in self.edges[:10])
        more = "" if len(self.edges) <= 10 else f" (+{len(self.edges) - 10} more)"
        super().__init__(f"dependency edges from unknown releases: {shown}{more}")


class UnknownRelease(AuditorError, KeyError):
    def __init__(self, release_id):
        self.release_id = release_id
        super().__init__(release_id)

    def __str__(self):
        return f"unknown release {self.release_id!r}"


# pipeline

class InconsistentInputs(AuditorError, ValueError):
    pass


class StageError(AuditorError):
    def __init__(self, stage, message, record=None):
        self.stage = stage
        self.record = record
        where = f" [{record}]" if record is not None else ""
        super().__init__(f"{stage} stage failed{where}: {message}")
