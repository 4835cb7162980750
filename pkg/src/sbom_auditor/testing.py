"""A throwaway Maven-layout registry served from a local directory.

Used by the test suite and the demo scripts::

    with MockRegistry(tree_dir) as reg:
        client = RegistryClient(reg.url)
        ...

Directories are served as an HTML anchor index (like Central) or as the
plain one-name-per-line format. Failures can be scripted per path, and the
server records arrival times and the peak number of requests in flight.
"""

from __future__ import annotations

import os
import threading
import time
from collections import defaultdict
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import quote, unquote, urlsplit

PREFIX = "/repo"


class _Handler(BaseHTTPRequestHandler):
    server_version = "MockRegistry/1"

    def log_message(self, *args):  # keep test output quiet
        pass

    def do_GET(self):
        reg = self.server.registry
        path = unquote(urlsplit(self.path).path)
        reg._enter(path)
        try:
            if reg.latency:
                time.sleep(reg.latency)
            status = reg._scripted_status(path)
            if status is not None:
                self._send(status, b"scripted failure\n")
                return
            if not path.startswith(PREFIX + "/") and path != PREFIX:
                self._send(404, b"not found\n")
                return
            rel = path[len(PREFIX):].lstrip("/")
            full = os.path.normpath(os.path.join(reg.root_dir, rel))
            if not full.startswith(os.path.normpath(reg.root_dir)):
                self._send(404, b"not found\n")
            elif os.path.isdir(full):
                if not path.endswith("/"):
                    self.send_response(301)
                    self.send_header("Location", quote(path) + "/")
                    self.send_header("Content-Length", "0")
                    self.end_headers()
                else:
                    body, ctype = reg._index(full, path)
                    self._send(200, body, ctype)
            elif os.path.isfile(full) and not path.endswith("/"):
                with open(full, "rb") as fh:
                    self._send(200, fh.read(), "application/octet-stream")
            else:
                self._send(404, b"not found\n")
        finally:
            reg._leave()

    def _send(self, status, body, ctype="text/plain; charset=utf-8"):
        self.send_response(status)
        self.send_header("Content-Type", ctype)
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)


class MockRegistry:
    def __init__(self, root_dir, index_style="html", latency=0.0):
        if index_style not in ("html", "plain"):
            raise ValueError("index_style must be 'html' or 'plain'")
        self.root_dir = os.path.abspath(root_dir)
        self.index_style = index_style
        self.latency = latency
        self.hits = defaultdict(int)
        self.arrivals = []
        self.max_in_flight = 0
        self._in_flight = 0
        self._lock = threading.Lock()
        self._scripts = {}
        self._server = None
        self._thread = None

    @property
    def url(self) -> str:
        host, port = self._server.server_address[:2]
        return f"http://{host}:{port}{PREFIX}"

    def fail(self, rel_path: str, statuses) -> None:
        """Answer the next requests for ``rel_path`` (relative to the root) with ``statuses``."""
        path = f"{PREFIX}/{rel_path.lstrip('/')}"
        with self._lock:
            self._scripts[path] = list(statuses)

    def start(self):
        self._server = ThreadingHTTPServer(("127.0.0.1", 0), _Handler)
        self._server.daemon_threads = True
        self._server.registry = self
        self._thread = threading.Thread(target=self._server.serve_forever, daemon=True)
        self._thread.start()
        return self

    def stop(self):
        if self._server is not None:
            self._server.shutdown()
            self._server.server_close()
            self._server = None

    def __enter__(self):
        return self.start()

    def __exit__(self, *exc):
        self.stop()

    def _enter(self, path):
        with self._lock:
            self.hits[path] += 1
            self.arrivals.append(time.monotonic())
            self._in_flight += 1
            self.max_in_flight = max(self.max_in_flight, self._in_flight)

    def _leave(self):
        with self._lock:
            self._in_flight -= 1

    def _scripted_status(self, path):
        with self._lock:
            queue = self._scripts.get(path)
            if queue:
                return queue.pop(0)
        return None

    def _index(self, full, path):
        names = sorted(os.listdir(full))
        entries = [n + "/" if os.path.isdir(os.path.join(full, n)) else n for n in names]
        if self.index_style == "plain":
            return "".join(e + "\n" for e in entries).encode(), "text/plain; charset=utf-8"
        rows = ['<a href="../">../</a>'] + [f'<a href="{quote(e)}" title="{e}">{e}</a>'
                                             for e in entries]
        html = ("<!DOCTYPE html>\n<html>\n<head><title>Index of {0}</title></head>\n<body>\n"
                "<header><h1>{0}</h1></header>\n<hr/>\n<main>\n<pre id=\"contents\">\n{1}\n"
                "</pre>\n</main>\n</body>\n</html>\n").format(path, "\n".join(rows))
        return html.encode(), "text/html; charset=utf-8"
