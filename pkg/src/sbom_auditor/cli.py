"""Command-line entry point: ``sbom-auditor <stage|run> [options]``."""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import pipeline
from .errors import StageError
from .registry import FetchPolicy

logger = logging.getLogger("sbom_auditor")

# flag -> (argparse kwargs, default); accepted before or after the sub-command
_GLOBAL_FLAGS = {
    "--registry-root": (dict(metavar="URL", help="registry root (env SBOM_AUDITOR_REGISTRY_ROOT)"), None),
    "--out-dir": (dict(metavar="DIR", help="directory for all stage files"), "audit-out"),
    "--graph": (dict(metavar="SNAPSHOT", help="dependency-graph snapshot (line-delimited JSON)"), None),
    "--coordinates": (dict(metavar="FILE", help="file with one group:artifact:version per line"), None),
    "--concurrency": (dict(type=int, metavar="N", help="parallel requests (default 8)"), 8),
    "--retries": (dict(type=int, metavar="N", help="retries per request (default 3)"), 3),
    "--timeout-ms": (dict(type=int, metavar="MS", help="per-request timeout (default 30000)"), 30000),
    "--seed": (dict(type=int, help="sampling seed (default 0)"), 0),
    "--rate": (dict(type=float, help="per-year sampling rate in (0, 1] (default 0.10)"), 0.10),
    "--limit": (dict(type=int, metavar="N", help="scan at most N sampled releases"), None),
    "--goblin-compat": (dict(action="store_true", help="write sbom values in Goblin string form"), False),
    "--align-spdx": (dict(action="store_true", help="also align SPDX documents (best-effort)"), False),
    "--keep-going": (dict(action="store_true", help="do not fail a stage on per-release errors"), False),
    "--verbose": (dict(action="store_true", help="debug logging"), False),
}

_COMMANDS = {
    "sample": "draw a year-stratified sample of releases",
    "scan": "list release directories and discover SBOM files",
    "fetch": "download SBOM files and their checksum sidecars",
    "verify": "check downloaded SBOMs against their sidecars",
    "parse": "parse downloaded SBOMs",
    "weave": "attach discovered SBOMs to the graph snapshot",
    "align": "compare SBOM and graph direct dependencies",
    "report": "aggregate everything into report.json and CSV tables",
    "run": "run all stages in order",
}


def _global_parent() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    for flag, (kwargs, _) in _GLOBAL_FLAGS.items():
        parent.add_argument(flag, default=argparse.SUPPRESS, **kwargs)
    return parent


def build_parser() -> argparse.ArgumentParser:
    common = _global_parent()
    parser = argparse.ArgumentParser(prog="sbom-auditor", parents=[common],
                                     description="Audit SBOMs published in a Maven-layout registry.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)
    for name, help_text in _COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
        if name == "sample":
            p.add_argument("--out", metavar="FILE", help="sample file (default OUT_DIR/sample.jsonl)")
    return parser


def _option(args, flag):
    return getattr(args, flag.lstrip("-").replace("-", "_"), _GLOBAL_FLAGS[flag][1])


def config_from_args(args) -> pipeline.PipelineConfig:
    policy = FetchPolicy(max_concurrency=_option(args, "--concurrency"),
                         max_retries=_option(args, "--retries"),
                         per_request_timeout=_option(args, "--timeout-ms") / 1000)
    cfg = pipeline.PipelineConfig(
        out_dir=_option(args, "--out-dir"),
        snapshot=_option(args, "--graph"),
        coordinates=_option(args, "--coordinates"),
        rate=_option(args, "--rate"),
        seed=_option(args, "--seed"),
        limit=_option(args, "--limit"),
        policy=policy,
        goblin_compat=_option(args, "--goblin-compat"),
        align_spdx=_option(args, "--align-spdx"),
        keep_going=_option(args, "--keep-going"),
    )
    root = _option(args, "--registry-root")
    if root:
        cfg.registry_root = root
    return cfg


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if _option(args, "--verbose") else logging.INFO,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = config_from_args(args)
    except ValueError as exc:
        parser.error(str(exc))
    if not 0 < cfg.rate <= 1:
        parser.error("--rate must be in (0, 1]")

    try:
        if args.command == "run":
            report = pipeline.run_pipeline(cfg)
        elif args.command == "sample":
            pipeline.stage_sample(cfg, out_path=getattr(args, "out", None))
            return 0
        else:
            report = pipeline.run_stage(args.command, cfg)
    except StageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.command in ("run", "report"):
        json.dump(report.to_dict()["totals"], sys.stdout, sort_keys=True)
        sys.stdout.write("\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
