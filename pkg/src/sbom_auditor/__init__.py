"""Mine, verify and parse SBOMs published alongside Maven releases.

Typical use goes through :mod:`sbom_auditor.pipeline` or the ``sbom-auditor``
command; the building blocks are importable on their own.
"""

from .alignment import AlignmentVerdict, align, flag_submodules
from .checksum import VerificationResult, compute_digest, parse_sidecar, verify
from .discovery import SbomArtifactRef, classify_filename, discover_sboms
from .graph import (GraphSnapshot, SbomAddedValue, direct_dependencies, export_snapshot,
                    load_snapshot, render_goblin_added_value, weave_sbom)
from .model import (ChecksumAlgo, Gav, ReleaseRecord, SbomStandard, Serialization, parse_gav,
                    registry_directory_url, year_of)
from .pom import PomDependency, parse_pom_dependencies
from .registry import FetchPolicy, FileListing, RegistryClient, fetch_file, list_release_files
from .report import AuditReport, build_report
from .sampler import SamplePlan, plan_sample, stratified_sample
from .sbom import (SbomDocument, ToolInfo, extract_direct_dependencies, parse_maven_purl,
                   parse_sbom)

__version__ = "0.1.0"
