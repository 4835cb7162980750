"""Aggregate statistics over an audit run, as JSON and flat CSV tables."""

from __future__ import annotations

import csv
import json
import os
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional

from .alignment import STATUSES, AlignmentVerdict
from .discovery import SbomArtifactRef
from .errors import InconsistentInputs
from .model import ChecksumAlgo, SbomStandard, Serialization, year_of
from .sbom import ParsedSbom

UNKNOWN_YEAR = "unknown"


@dataclass
class AuditReport:
    releases_scanned: int = 0
    releases_with_sbom: int = 0
    sbom_files: int = 0
    per_year: dict = field(default_factory=dict)            # year | None -> SBOM files
    per_year_releases: dict = field(default_factory=dict)   # year | None -> releases with an SBOM
    per_format: dict = field(default_factory=dict)          # (standard, serialization) -> files
    checksum_coverage: dict = field(default_factory=dict)   # algo -> fraction of files
    signed_fraction: float = 0.0
    tools: dict = field(default_factory=dict)               # (name, version | None) -> documents
    documents_parsed: int = 0
    documents_without_tools: int = 0
    parse_failures: int = 0
    alignment_summary: dict = field(default_factory=dict)   # status -> verdicts
    count_match: int = 0
    submodule_flagged_documents: int = 0
    multi_standard_releases: int = 0
    checksum_verification: dict = field(default_factory=dict)  # status -> sidecars

    @property
    def totals(self) -> tuple[int, int, int]:
        return (self.releases_scanned, self.releases_with_sbom, self.sbom_files)

    @property
    def exact_match(self) -> int:
        return self.alignment_summary.get("match", 0)

    def to_dict(self) -> dict:
        return {
            "totals": {"releases_scanned": self.releases_scanned,
                       "releases_with_sbom": self.releases_with_sbom,
                       "sbom_files": self.sbom_files},
            "per_year": {_year_key(y): n for y, n in _sorted_years(self.per_year)},
            "per_year_releases": {_year_key(y): n for y, n in _sorted_years(self.per_year_releases)},
            "per_format": {f"{s.value}/{z.value}": n for (s, z), n in sorted(self.per_format.items())},
            "checksum_coverage": {a.value: f for a, f in self.checksum_coverage.items()},
            "signed_fraction": self.signed_fraction,
            "tools": [{"name": name, "version": version, "count": n}
                      for (name, version), n in _sorted_tools(self.tools)],
            "documents_parsed": self.documents_parsed,
            "documents_without_tools": self.documents_without_tools,
            "parse_failures": self.parse_failures,
            "alignment": {"by_status": dict(self.alignment_summary),
                          "count_match": self.count_match,
                          "exact_match": self.exact_match,
                          "submodule_flagged_documents": self.submodule_flagged_documents},
            "multi_standard_releases": self.multi_standard_releases,
            "checksum_verification": dict(sorted(self.checksum_verification.items())),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "AuditReport":
        totals = d["totals"]
        alignment = d.get("alignment", {})

        def years(m):
            return {None if k == UNKNOWN_YEAR else int(k): v for k, v in m.items()}

        per_format = {}
        for key, n in d.get("per_format", {}).items():
            s, _, z = key.partition("/")
            per_format[(SbomStandard(s), Serialization(z))] = n
        return cls(
            releases_scanned=totals["releases_scanned"],
            releases_with_sbom=totals["releases_with_sbom"],
            sbom_files=totals["sbom_files"],
            per_year=years(d.get("per_year", {})),
            per_year_releases=years(d.get("per_year_releases", {})),
            per_format=per_format,
            checksum_coverage={ChecksumAlgo(a): f for a, f in d.get("checksum_coverage", {}).items()},
            signed_fraction=d.get("signed_fraction", 0.0),
            tools={(t["name"], t["version"]): t["count"] for t in d.get("tools", ())},
            documents_parsed=d.get("documents_parsed", 0),
            documents_without_tools=d.get("documents_without_tools", 0),
            parse_failures=d.get("parse_failures", 0),
            alignment_summary=dict(alignment.get("by_status", {})),
            count_match=alignment.get("count_match", 0),
            submodule_flagged_documents=alignment.get("submodule_flagged_documents", 0),
            multi_standard_releases=d.get("multi_standard_releases", 0),
            checksum_verification=dict(d.get("checksum_verification", {})),
        )


def _year_key(year):
    return UNKNOWN_YEAR if year is None else str(year)


def _sorted_years(m):
    return sorted(m.items(), key=lambda kv: (kv[0] is None, kv[0] or 0))


def _sorted_tools(m):
    return sorted(m.items(), key=lambda kv: (-kv[1], kv[0][0], kv[0][1] or ""))


def build_report(inventory: Iterable[SbomArtifactRef],
                 parsed_docs: Iterable[ParsedSbom] = (),
                 verdicts: Iterable[AlignmentVerdict] = (),
                 timestamps: Optional[Mapping[str, Optional[int]]] = None,
                 scanned: Optional[Iterable[str]] = None,
                 verifications: Iterable[Mapping] = ()) -> AuditReport:
    """Aggregate the outputs of the earlier stages.

    ``timestamps`` maps release ids to graph timestamps (milliseconds) and
    drives the per-year tables; releases without one land in the
    ``unknown`` bucket. ``scanned`` lists every release id that was looked
    up, with or without an SBOM; it defaults to the releases in the inventory.
    """
    inventory = list(inventory)
    parsed_docs = list(parsed_docs)
    verdicts = list(verdicts)
    timestamps = timestamps or {}

    urls = {ref.url for ref in inventory}
    releases = {str(ref.release) for ref in inventory}
    for p in parsed_docs:
        if p.url not in urls or str(p.release) not in releases:
            raise InconsistentInputs(f"parsed document {p.url} ({p.release}) is not in the inventory")
    for v in verdicts:
        if str(v.release) not in releases:
            raise InconsistentInputs(f"alignment verdict for {v.release} has no inventory entry")

    scanned_ids = set(scanned) if scanned is not None else set(releases)
    scanned_ids |= releases
    report = AuditReport(releases_scanned=len(scanned_ids), releases_with_sbom=len(releases),
                         sbom_files=len(inventory))

    def year(release_id):
        ts = timestamps.get(release_id)
        return year_of(ts) if ts else None

    report.per_year = dict(Counter(year(str(ref.release)) for ref in inventory))
    report.per_year_releases = dict(Counter(year(r) for r in releases))
    report.per_format = dict(Counter((ref.standard, ref.serialization) for ref in inventory))

    n = len(inventory)
    report.checksum_coverage = {
        algo: (sum(1 for ref in inventory if algo in ref.checksums_available) / n if n else 0.0)
        for algo in ChecksumAlgo
    }
    report.signed_fraction = sum(1 for ref in inventory if ref.is_signed) / n if n else 0.0

    standards = {}
    for ref in inventory:
        standards.setdefault(str(ref.release), set()).add(ref.standard)
    report.multi_standard_releases = sum(1 for s in standards.values() if len(s) > 1)

    tools = Counter()
    for p in parsed_docs:
        if p.document is None:
            report.parse_failures += 1
            continue
        report.documents_parsed += 1
        if not p.document.tools:
            report.documents_without_tools += 1
        for t in p.document.tools:
            tools[(t.name, t.version)] += 1
    report.tools = dict(tools)

    statuses = Counter(v.status for v in verdicts)
    report.alignment_summary = {s: statuses.get(s, 0) for s in STATUSES}
    report.count_match = sum(1 for v in verdicts if v.count_match)
    report.submodule_flagged_documents = sum(1 for v in verdicts if v.flagged_submodules)

    report.checksum_verification = dict(Counter(v["status"] for v in verifications))
    return report


def write_report(report: AuditReport, out_dir) -> None:
    """Write report.json plus per_year.csv, per_format.csv, tools.csv, alignment.csv, checksums.csv."""
    os.makedirs(out_dir, exist_ok=True)
    with open(os.path.join(out_dir, "report.json"), "w", encoding="utf-8") as fh:
        json.dump(report.to_dict(), fh, indent=2, sort_keys=True)
        fh.write("\n")

    def table(name, header, rows):
        with open(os.path.join(out_dir, name), "w", encoding="utf-8", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(header)
            w.writerows(rows)

    years = sorted(set(report.per_year) | set(report.per_year_releases),
                   key=lambda y: (y is None, y or 0))
    table("per_year.csv", ["year", "sbom_files", "releases"],
          [[_year_key(y), report.per_year.get(y, 0), report.per_year_releases.get(y, 0)]
           for y in years])
    table("per_format.csv", ["standard", "serialization", "count"],
          [[s.value, z.value, c] for (s, z), c in sorted(report.per_format.items())])
    table("tools.csv", ["tool", "version", "count"],
          [[name, version or "", c] for (name, version), c in _sorted_tools(report.tools)])
    table("alignment.csv", ["status", "count"],
          [[s, c] for s, c in report.alignment_summary.items()]
          + [["count_match", report.count_match]])
    table("checksums.csv", ["algorithm", "coverage"],
          [[a.value, f"{f:.6f}"] for a, f in report.checksum_coverage.items()])


def load_report(path) -> AuditReport:
    with open(path, encoding="utf-8") as fh:
        return AuditReport.from_dict(json.load(fh))
