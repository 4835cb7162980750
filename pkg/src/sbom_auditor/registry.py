"""HTTP access to a Maven-layout registry: directory listings and file downloads.

:class:`RegistryClient` is safe to share between threads. It enforces the
limits of a :class:`FetchPolicy` on its own: a bounded number of requests in
flight, a minimum spacing between consecutive requests to the same host, and
exponential backoff on 429/5xx answers and network errors.
"""

from __future__ import annotations

import logging
import os
import re
import threading
import time
from dataclasses import dataclass
from html.parser import HTMLParser
from urllib.parse import unquote, urljoin, urlsplit

import requests

from .errors import (MalformedIndex, NotFound, RegistryError,
                     SizeLimitExceeded, TransientFailure)
from .model import DEFAULT_REGISTRY_ROOT, REGISTRY_ROOT_ENV, Gav, registry_directory_url

logger = logging.getLogger(__name__)

MiB = 1024 * 1024
RETRY_STATUSES = frozenset({429, 500, 502, 503, 504}) | frozenset(range(505, 600))
MAX_RETRY_AFTER = 60.0


@dataclass(frozen=True)
class FetchPolicy:
    max_concurrency: int = 8
    max_retries: int = 3
    backoff_base: float = 0.5            # seconds, doubled on every retry
    per_request_timeout: float = 30.0    # seconds
    min_request_interval: float = 0.1    # seconds between requests to one host
    max_bytes: int = 64 * MiB
    max_redirects: int = 5

    def __post_init__(self):
        if self.max_concurrency < 1:
            raise ValueError("max_concurrency must be >= 1")
        if self.max_retries < 0:
            raise ValueError("max_retries must be >= 0")
        for name in ("backoff_base", "per_request_timeout", "min_request_interval"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.max_bytes < 0:
            raise ValueError("max_bytes must be >= 0")

    def backoff(self, retry_number: int) -> float:
        """Delay before the ``retry_number``-th retry (1-based)."""
        return self.backoff_base * 2 ** (retry_number - 1)


@dataclass(frozen=True)
class ListingEntry:
    name: str
    is_directory: bool = False


@dataclass(frozen=True)
class FileListing:
    directory_url: str
    entries: tuple[ListingEntry, ...]

    def __post_init__(self):
        names = [e.name for e in self.entries]
        if len(set(names)) != len(names):
            raise ValueError("duplicate names in listing")
        if any("/" in n for n in names):
            raise ValueError("listing names must not contain '/'")

    @property
    def filenames(self) -> list[str]:
        return [e.name for e in self.entries if not e.is_directory]

    def __contains__(self, name):
        return any(e.name == name for e in self.entries)


# -- directory index parsing -------------------------------------------------

_PLAIN_NAME = re.compile(r"^[^\s/<>\"]+/?$")


class _AnchorCollector(HTMLParser):
    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.hrefs = []
        self.saw_document_tag = False

    def handle_starttag(self, tag, attrs):
        if tag in ("html", "body", "pre", "table"):
            self.saw_document_tag = True
        elif tag == "a":
            href = dict(attrs).get("href")
            if href:
                self.hrefs.append(href)


def parse_directory_index(body: bytes | str, directory_url: str) -> FileListing:
    """Parse an HTML anchor index (Central style) or a one-name-per-line listing."""
    if not directory_url.endswith("/"):
        directory_url += "/"
    if isinstance(body, bytes):
        try:
            text = body.decode("utf-8")
        except UnicodeDecodeError:
            raise MalformedIndex(directory_url, "body is not UTF-8") from None
    else:
        text = body

    if text.lstrip().startswith("<"):
        names = _parse_html_index(text, directory_url)
    else:
        names = []
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            if not _PLAIN_NAME.match(line) or line in ("./", "../"):
                raise MalformedIndex(directory_url, f"unexpected line {line[:60]!r}")
            names.append(line)

    entries, seen = [], set()
    for raw in names:
        is_dir = raw.endswith("/")
        name = raw.rstrip("/")
        if not name or name in seen:
            continue
        seen.add(name)
        entries.append(ListingEntry(name, is_dir))
    return FileListing(directory_url, tuple(entries))


def _parse_html_index(text, directory_url):
    collector = _AnchorCollector()
    try:
        collector.feed(text)
        collector.close()
    except Exception as exc:  # HTMLParser only raises on pathological input
        raise MalformedIndex(directory_url, str(exc)) from exc
    if not collector.hrefs and not collector.saw_document_tag:
        raise MalformedIndex(directory_url, "markup without anchors")
    names = []
    for href in collector.hrefs:
        target = urljoin(directory_url, href)
        target = target.split("#", 1)[0]
        if not target.startswith(directory_url) or "?" in target:
            continue
        rest = target[len(directory_url):]
        if not rest or "/" in rest.rstrip("/"):
            continue
        names.append(unquote(rest))
    return names


# -- client ------------------------------------------------------------------

@dataclass
class FetchStats:
    requests: int = 0
    retries: int = 0
    failures: int = 0


class RegistryClient:
    """Polite, thread-safe GET client for one registry root."""

    def __init__(self, root: str | None = None, policy: FetchPolicy | None = None):
        self.root = (root or os.environ.get(REGISTRY_ROOT_ENV) or DEFAULT_REGISTRY_ROOT).rstrip("/")
        self.policy = policy or FetchPolicy()
        self.stats = FetchStats()
        self._slots = threading.BoundedSemaphore(self.policy.max_concurrency)
        self._host_lock = threading.Lock()
        self._stats_lock = threading.Lock()
        self._next_start: dict[str, float] = {}
        self._local = threading.local()
        self._sessions: list[requests.Session] = []

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()

    def close(self):
        for session in self._sessions:
            session.close()
        self._sessions.clear()

    def _session(self) -> requests.Session:
        session = getattr(self._local, "session", None)
        if session is None:
            session = requests.Session()
            session.max_redirects = self.policy.max_redirects
            session.headers["User-Agent"] = "sbom-auditor/0.1"
            self._local.session = session
            with self._stats_lock:
                self._sessions.append(session)
        return session

    def _count(self, **delta):
        with self._stats_lock:
            for k, v in delta.items():
                setattr(self.stats, k, getattr(self.stats, k) + v)

    def _wait_for_host(self, url):
        host = urlsplit(url).netloc
        interval = self.policy.min_request_interval
        with self._host_lock:
            now = time.monotonic()
            start = max(now, self._next_start.get(host, now))
            self._next_start[host] = start + interval
        if start > now:
            time.sleep(start - now)

    def _get_once(self, url):
        """One request. Returns the body, or a reason string for a retryable failure."""
        with self._slots:
            self._wait_for_host(url)
            self._count(requests=1)
            try:
                resp = self._session().get(url, timeout=self.policy.per_request_timeout,
                                           stream=True)
            except requests.TooManyRedirects as exc:
                raise RegistryError(url, f"too many redirects ({exc})") from exc
            except (requests.ConnectionError, requests.Timeout) as exc:
                return None, type(exc).__name__, None
            with resp:
                status = resp.status_code
                if status in (404, 410):
                    raise NotFound(url)
                if status in RETRY_STATUSES:
                    return None, f"HTTP {status}", _retry_after(resp)
                if status >= 400:
                    raise RegistryError(url, f"HTTP {status}")
                try:
                    return self._read_capped(url, resp), None, None
                except (requests.ConnectionError, requests.Timeout,
                        requests.exceptions.ChunkedEncodingError) as exc:
                    return None, type(exc).__name__, None

    def _read_capped(self, url, resp):
        cap = self.policy.max_bytes
        declared = resp.headers.get("Content-Length")
        if declared and declared.isdigit() and int(declared) > cap:
            raise SizeLimitExceeded(url, cap)
        chunks, size = [], 0
        for chunk in resp.iter_content(64 * 1024):
            size += len(chunk)
            if size > cap:
                raise SizeLimitExceeded(url, cap)
            chunks.append(chunk)
        return b"".join(chunks)

    def get(self, url: str) -> bytes:
        """GET ``url`` with retries; raises NotFound, TransientFailure, SizeLimitExceeded."""
        attempts = self.policy.max_retries + 1
        reason, retry_after = None, None
        for attempt in range(attempts):
            if attempt:
                delay = self.policy.backoff(attempt)
                if retry_after is not None:
                    delay = max(delay, retry_after)
                self._count(retries=1)
                logger.debug("retry %d for %s in %.3fs (%s)", attempt, url, delay, reason)
                time.sleep(delay)
            body, reason, retry_after = self._get_once(url)
            if reason is None:
                return body
        self._count(failures=1)
        raise TransientFailure(url, attempts, reason)

    def fetch_file(self, url: str) -> bytes:
        return self.get(url)

    def directory_url(self, gav: Gav) -> str:
        return registry_directory_url(self.root, gav)

    def list_release_files(self, gav: Gav) -> FileListing:
        url = self.directory_url(gav)
        return parse_directory_index(self.get(url), url)


def _retry_after(resp):
    value = resp.headers.get("Retry-After", "")
    try:
        return min(float(value), MAX_RETRY_AFTER)
    except ValueError:
        return None


def list_release_files(root: str, gav: Gav, policy: FetchPolicy | None = None) -> FileListing:
    with RegistryClient(root, policy) as client:
        return client.list_release_files(gav)


def fetch_file(url: str, policy: FetchPolicy | None = None) -> bytes:
    with RegistryClient(policy=policy) as client:
        return client.fetch_file(url)
