"""Run the whole audit against a throwaway local registry.

The registry is the fixture tree under tests/fixtures/e2e: five releases, two
of which publish SBOMs. Output goes to a temporary directory that is printed
at the end so the stage files can be inspected.

    python3 demos/audit_mock_registry.py
"""

import json
import tempfile
from pathlib import Path

from sbom_auditor.pipeline import PipelineConfig, read_jsonl, run_pipeline
from sbom_auditor.registry import FetchPolicy
from sbom_auditor.testing import MockRegistry

E2E = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "e2e"


def main():
    out_dir = tempfile.mkdtemp(prefix="sbom-audit-")
    with MockRegistry(E2E / "registry") as registry:
        cfg = PipelineConfig(out_dir=out_dir, registry_root=registry.url,
                             snapshot=str(E2E / "snapshot.jsonl"), rate=1.0,
                             policy=FetchPolicy(min_request_interval=0.01))
        report = run_pipeline(cfg)

    print("totals (scanned, with SBOM, files):", report.totals)
    for (standard, serialization), n in sorted(report.per_format.items()):
        print(f"  {standard.value:9} {serialization.value:4} {n}")
    print("checksum coverage:", report.to_dict()["checksum_coverage"])
    for verdict in read_jsonl(cfg.path("alignment.jsonl")):
        print(f"{verdict['url'].rsplit('/', 1)[-1]}: {verdict['status']}, "
              f"ignored test deps {verdict['ignored_test_deps']}")
    print(json.dumps(report.to_dict()["tools"], indent=2))
    print("stage files in", out_dir)


if __name__ == "__main__":
    main()
