"""Stage-by-stage audit pipeline.

Every stage reads its inputs from, and writes its outputs to, files in the
output directory, so any stage can be re-run on its own::

    sample   -> sample.jsonl
    scan     -> scanned.jsonl, inventory.jsonl
    fetch    -> fetched.jsonl, sboms/...
    verify   -> verified.jsonl
    parse    -> parsed.jsonl
    weave    -> snapshot.woven.jsonl        (only with a graph snapshot)
    align    -> alignment.jsonl
    report   -> report.json, *.csv
"""

from __future__ import annotations

import json
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from . import checksum
from .alignment import AlignmentVerdict, align, flag_submodules
from .discovery import SbomArtifactRef, discover_sboms, read_inventory, write_inventory
from .errors import (AuditorError, MalformedSidecar, NotFound, PomSyntaxError, RegistryError,
                     SbomSyntaxError, StageError, StandardMismatch)
from .graph import (GraphSnapshot, SbomAddedValue, direct_dependencies, export_snapshot,
                    load_snapshot, weave_sbom)
from .model import (DEFAULT_REGISTRY_ROOT, REGISTRY_ROOT_ENV, ChecksumAlgo, Gav, SbomStandard,
                    parse_gav)
from .pom import parse_pom_dependencies, pom_direct_dependencies, pom_url
from .registry import FetchPolicy, RegistryClient
from .report import AuditReport, build_report, write_report
from .sampler import stratified_sample
from .sbom import ParsedSbom, parse_sbom

logger = logging.getLogger(__name__)

SAMPLE = "sample.jsonl"
SCANNED = "scanned.jsonl"
INVENTORY = "inventory.jsonl"
FETCHED = "fetched.jsonl"
VERIFIED = "verified.jsonl"
PARSED = "parsed.jsonl"
WOVEN = "snapshot.woven.jsonl"
ALIGNMENT = "alignment.jsonl"
REPORT = "report.json"

STAGES = ("sample", "scan", "fetch", "verify", "parse", "weave", "align", "report")


def default_registry_root() -> str:
    return os.environ.get(REGISTRY_ROOT_ENV) or DEFAULT_REGISTRY_ROOT


@dataclass
class PipelineConfig:
    out_dir: str
    registry_root: str = field(default_factory=default_registry_root)
    snapshot: Optional[str] = None
    coordinates: Optional[str] = None
    rate: float = 0.10
    seed: int = 0
    limit: Optional[int] = None
    policy: FetchPolicy = field(default_factory=FetchPolicy)
    goblin_compat: bool = False
    align_spdx: bool = False
    keep_going: bool = False

    def path(self, name: str) -> str:
        return os.path.join(self.out_dir, name)

    def client(self) -> RegistryClient:
        return RegistryClient(self.registry_root, self.policy)


# -- file helpers ------------------------------------------------------------

def write_jsonl(path, records) -> None:
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(json.dumps(rec, sort_keys=True) + "\n")
    os.replace(tmp, path)


def read_jsonl(path) -> list[dict]:
    with open(path, encoding="utf-8") as fh:
        return [json.loads(line) for line in fh if line.strip()]


def _require(cfg, name, stage):
    path = cfg.path(name)
    if not os.path.exists(path):
        raise StageError(stage, f"missing input {name}; run the earlier stages first")
    return path


def read_coordinates(path) -> list[Gav]:
    gavs = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if line:
                gavs.append(parse_gav(line))
    return gavs


def _load_graph(cfg) -> Optional[GraphSnapshot]:
    return load_snapshot(cfg.snapshot) if cfg.snapshot else None


def _fan_out(cfg, fn, items):
    with ThreadPoolExecutor(max_workers=cfg.policy.max_concurrency) as pool:
        return list(pool.map(fn, items))


# -- stages ------------------------------------------------------------------

def stage_sample(cfg: PipelineConfig, out_path: Optional[str] = None) -> list[dict]:
    if cfg.snapshot:
        try:
            snapshot = load_snapshot(cfg.snapshot)
        except (OSError, AuditorError) as exc:
            raise StageError("sample", str(exc), cfg.snapshot) from exc
        picked = stratified_sample(snapshot.releases(), cfg.rate, cfg.seed)
        records = [{"id": r.id, "timestamp": r.timestamp} for r in picked]
    elif cfg.coordinates:
        try:
            gavs = read_coordinates(cfg.coordinates)
        except (OSError, AuditorError) as exc:
            raise StageError("sample", str(exc), cfg.coordinates) from exc
        records = [{"id": str(g), "timestamp": None} for g in gavs]
    else:
        raise StageError("sample", "need a graph snapshot or a coordinate list")
    write_jsonl(out_path or cfg.path(SAMPLE), records)
    logger.info("sample: %d releases", len(records))
    return records


def stage_scan(cfg: PipelineConfig, client: Optional[RegistryClient] = None):
    sample = read_jsonl(_require(cfg, SAMPLE, "scan"))
    if cfg.limit is not None:
        sample = sample[: cfg.limit]
    gavs = [parse_gav(rec["id"]) for rec in sample]
    own = client is None
    client = client or cfg.client()

    def scan_one(gav):
        try:
            listing = client.list_release_files(gav)
        except NotFound:
            return {"release": str(gav), "status": "absent", "sboms": 0}, []
        except RegistryError as exc:
            return {"release": str(gav), "status": "failed", "sboms": 0, "error": str(exc)}, []
        refs = discover_sboms(listing, gav)
        return {"release": str(gav), "status": "found", "sboms": len(refs)}, refs

    try:
        results = _fan_out(cfg, scan_one, gavs)
    finally:
        if own:
            client.close()
    scanned = [r for r, _ in results]
    refs = [ref for _, found in results for ref in found]
    write_jsonl(cfg.path(SCANNED), scanned)
    write_inventory(refs, cfg.path(INVENTORY))
    failed = [r for r in scanned if r["status"] == "failed"]
    logger.info("scan: %d releases, %d SBOM files, %d failures", len(scanned), len(refs), len(failed))
    if failed and not cfg.keep_going:
        raise StageError("scan", f"{len(failed)} of {len(scanned)} releases could not be listed "
                         f"({failed[0]['error']})", failed[0]["release"])
    return scanned, refs


def local_sbom_path(ref: SbomArtifactRef) -> str:
    g = ref.release
    parts = [*g.group.split("."), g.artifact, g.version, ref.filename]
    if any(p in ("", ".", "..") or "/" in p or "\\" in p for p in parts):
        raise StageError("fetch", "coordinate does not map to a safe local path", ref.url)
    return "/".join(["sboms", *parts])


def stage_fetch(cfg: PipelineConfig, client: Optional[RegistryClient] = None) -> list[dict]:
    refs = read_inventory(_require(cfg, INVENTORY, "fetch"))
    own = client is None
    client = client or cfg.client()

    def save(rel_path, data):
        full = cfg.path(rel_path)
        os.makedirs(os.path.dirname(full), exist_ok=True)
        with open(full, "wb") as fh:
            fh.write(data)

    def fetch_one(ref):
        rec = {"release": str(ref.release), "url": ref.url, "sidecars": {}}
        try:
            data = client.fetch_file(ref.url)
        except RegistryError as exc:
            rec["error"] = str(exc)
            return rec
        rel = local_sbom_path(ref)
        save(rel, data)
        rec["path"], rec["size"] = rel, len(data)
        for algo in ref.checksums_available:
            try:
                side = client.fetch_file(ref.sidecar_url(algo))
            except RegistryError as exc:
                logger.warning("sidecar %s unavailable: %s", ref.sidecar_url(algo), exc)
                rec["sidecars"][algo.value] = None
                continue
            save(rel + algo.extension, side)
            rec["sidecars"][algo.value] = rel + algo.extension
        return rec

    try:
        fetched = _fan_out(cfg, fetch_one, refs)
    finally:
        if own:
            client.close()
    write_jsonl(cfg.path(FETCHED), fetched)
    failed = [r for r in fetched if "error" in r]
    logger.info("fetch: %d files, %d failures", len(fetched), len(failed))
    if failed and not cfg.keep_going:
        raise StageError("fetch", f"{len(failed)} SBOM downloads failed ({failed[0]['error']})",
                         failed[0]["url"])
    return fetched


def stage_verify(cfg: PipelineConfig) -> list[dict]:
    fetched = read_jsonl(_require(cfg, FETCHED, "verify"))
    results = []
    for rec in fetched:
        if "path" not in rec:
            continue
        with open(cfg.path(rec["path"]), "rb") as fh:
            data = fh.read()
        for algo in ChecksumAlgo:
            if algo.value not in rec["sidecars"]:
                continue
            out = {"release": rec["release"], "url": rec["url"], "algo": algo.value}
            side_path = rec["sidecars"][algo.value]
            if side_path is None:
                out["status"] = "missing"
            else:
                with open(cfg.path(side_path), "rb") as fh:
                    text = fh.read().decode("utf-8", errors="replace")
                try:
                    result = checksum.verify(data, text, algo)
                except MalformedSidecar as exc:
                    out.update(status="malformed", error=str(exc))
                else:
                    out.update(status=result.status, expected=result.expected_hex,
                               actual=result.actual_hex)
            results.append(out)
    write_jsonl(cfg.path(VERIFIED), results)
    bad = sum(1 for r in results if r["status"] != checksum.OK)
    logger.info("verify: %d sidecars checked, %d not ok", len(results), bad)
    return results


def stage_parse(cfg: PipelineConfig) -> list[ParsedSbom]:
    refs = {r.url: r for r in read_inventory(_require(cfg, INVENTORY, "parse"))}
    fetched = read_jsonl(_require(cfg, FETCHED, "parse"))
    parsed = []
    for rec in fetched:
        if "path" not in rec:
            continue
        ref = refs.get(rec["url"])
        if ref is None:
            raise StageError("parse", "fetched file missing from inventory", rec["url"])
        with open(cfg.path(rec["path"]), "rb") as fh:
            data = fh.read()
        try:
            doc = parse_sbom(data, ref.standard, ref.serialization)
        except (SbomSyntaxError, StandardMismatch) as exc:
            parsed.append(ParsedSbom(ref.release, ref.url, error=f"{type(exc).__name__}: {exc}"))
        else:
            parsed.append(ParsedSbom(ref.release, ref.url, doc))
    write_jsonl(cfg.path(PARSED), [p.to_record() for p in parsed])
    logger.info("parse: %d documents, %d failures", len(parsed),
                sum(1 for p in parsed if p.document is None))
    return parsed


def stage_weave(cfg: PipelineConfig) -> Optional[GraphSnapshot]:
    refs = read_inventory(_require(cfg, INVENTORY, "weave"))
    if not cfg.snapshot:
        logger.info("weave: no graph snapshot configured; skipping")
        return None
    try:
        snapshot = load_snapshot(cfg.snapshot)
    except (OSError, AuditorError) as exc:
        raise StageError("weave", str(exc), cfg.snapshot) from exc
    for ref in refs:
        rid = str(ref.release)
        if rid not in snapshot.release_nodes:
            logger.warning("weave: %s is not in the snapshot; skipping %s", rid, ref.url)
            continue
        weave_sbom(snapshot, rid, SbomAddedValue.from_ref(ref))
    export_snapshot(snapshot, cfg.path(WOVEN), goblin_compat=cfg.goblin_compat)
    logger.info("weave: %d releases carry SBOM data", len(snapshot.added_values))
    return snapshot


def stage_align(cfg: PipelineConfig, client: Optional[RegistryClient] = None):
    parsed = [ParsedSbom.from_record(r) for r in read_jsonl(_require(cfg, PARSED, "align"))]
    snapshot = _load_graph(cfg)
    own = client is None
    client = client or cfg.client()
    pom_cache: dict[str, Optional[list]] = {}

    def graph_side(gav):
        rid = str(gav)
        if snapshot is not None and rid in snapshot.release_nodes:
            return direct_dependencies(snapshot, rid), "graph"
        if rid not in pom_cache:
            try:
                body = client.fetch_file(pom_url(client.directory_url(gav), gav))
                pom_cache[rid] = pom_direct_dependencies(parse_pom_dependencies(body))
            except (RegistryError, PomSyntaxError) as exc:
                logger.warning("align: no dependency source for %s (%s)", rid, exc)
                pom_cache[rid] = None
        return pom_cache[rid], "pom"

    verdicts = []
    try:
        for p in parsed:
            doc = p.document
            if doc is None:
                continue
            if doc.standard is not SbomStandard.CYCLONEDX and not cfg.align_spdx:
                continue
            graph_deps, source = graph_side(p.release)
            if graph_deps is None:
                continue
            verdict = align(p.release, list(doc.direct_dependencies), graph_deps,
                            url=p.url, graph_source=source)
            verdicts.append(flag_submodules(verdict, p.release))
    finally:
        if own:
            client.close()
    write_jsonl(cfg.path(ALIGNMENT), [v.to_record() for v in verdicts])
    logger.info("align: %d verdicts", len(verdicts))
    return verdicts


def stage_report(cfg: PipelineConfig) -> AuditReport:
    inventory = read_inventory(_require(cfg, INVENTORY, "report"))

    def optional(name):
        path = cfg.path(name)
        return read_jsonl(path) if os.path.exists(path) else []

    timestamps = {rec["id"]: rec.get("timestamp") for rec in optional(SAMPLE)}
    if cfg.snapshot:
        for rid, rel in _load_graph(cfg).release_nodes.items():
            if timestamps.get(rid) is None:
                timestamps[rid] = rel.timestamp
    scanned_path = cfg.path(SCANNED)
    scanned = [r["release"] for r in read_jsonl(scanned_path)] if os.path.exists(scanned_path) else None
    try:
        report = build_report(
            inventory,
            [ParsedSbom.from_record(r) for r in optional(PARSED)],
            [AlignmentVerdict.from_record(r) for r in optional(ALIGNMENT)],
            timestamps=timestamps,
            scanned=scanned,
            verifications=optional(VERIFIED),
        )
    except AuditorError as exc:
        raise StageError("report", str(exc)) from exc
    write_report(report, cfg.out_dir)
    logger.info("report: %s", report.totals)
    return report


def run_stage(name: str, cfg: PipelineConfig):
    try:
        fn = _STAGE_FUNCS[name]
    except KeyError:
        raise ValueError(f"unknown stage {name!r}") from None
    try:
        return fn(cfg)
    except StageError:
        raise
    except (OSError, AuditorError) as exc:
        raise StageError(name, str(exc)) from exc


def run_pipeline(cfg: PipelineConfig) -> AuditReport:
    """Run every stage in order; the first hard failure raises StageError."""
    os.makedirs(cfg.out_dir, exist_ok=True)
    result = None
    for name in STAGES:
        result = run_stage(name, cfg)
    return result


_STAGE_FUNCS = {
    "sample": stage_sample,
    "scan": stage_scan,
    "fetch": stage_fetch,
    "verify": stage_verify,
    "parse": stage_parse,
    "weave": stage_weave,
    "align": stage_align,
    "report": stage_report,
}
