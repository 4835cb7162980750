"""Hand-written expected documents for the fixtures in fixtures/sboms.

Each value is transcribed from the fixture text, not produced by the parser.
"""

from datetime import datetime, timezone

from sbom_auditor.model import Gav, SbomStandard, Serialization
from sbom_auditor.sbom import Component, SbomDocument, ToolInfo

CDX, SPDX = SbomStandard.CYCLONEDX, SbomStandard.SPDX
JSON, XML = Serialization.JSON, Serialization.XML
UTC = timezone.utc


def _mvn(group, name, version, **kw):
    purl = f"pkg:maven/{group}/{name}@{version}?type=jar"
    return Component(ref_id=purl, name=name, group=group, version=version, purl=purl, **kw)


_PAIR_ROOT = _mvn("com.example", "pair-app", "1.0")
_DATABIND = _mvn("com.fasterxml.jackson.core", "jackson-databind", "2.15.0",
                 hashes={"md5": "1b8c6b8e3d6234e5d3baae7b6a0a2c11",
                         "sha1": "0aa3ba2e76b365bcc0e0ea7d81086ba18522215f"},
                 licenses=("Apache-2.0",), publisher="FasterXML")
_CORE = _mvn("com.fasterxml.jackson.core", "jackson-core", "2.15.0", licenses=("Apache-2.0",))
_SLF4J = _mvn("org.slf4j", "slf4j-api", "2.0.7", licenses=("MIT",))
_SHADED = Component(ref_id="slf4j-api-shaded", name="slf4j-shaded-bits", version="2.0.7")

PAIR_CYCLONEDX = SbomDocument(
    standard=CDX, spec_version="1.4", serialization=JSON,
    created_at=datetime(2023, 5, 17, 9, 12, 44, tzinfo=UTC),
    tools=(ToolInfo("cyclonedx-maven-plugin", "2.7.9"),),
    root_ref=_PAIR_ROOT.ref_id, subject=_PAIR_ROOT,
    components=(_DATABIND, _CORE, _SLF4J, _SHADED),
    dependency_graph={
        _PAIR_ROOT.ref_id: (_DATABIND.ref_id, _SLF4J.ref_id),
        _DATABIND.ref_id: (_CORE.ref_id,),
        _CORE.ref_id: (),
        _SLF4J.ref_id: (),
    },
    direct_dependencies=(Gav("com.fasterxml.jackson.core", "jackson-databind", "2.15.0"),
                         Gav("org.slf4j", "slf4j-api", "2.0.7")),
)


def _spdx_pkg(spdx_id, group, name, version, **kw):
    return Component(ref_id=spdx_id, name=name, group=group, version=version,
                     purl=f"pkg:maven/{group}/{name}@{version}", **kw)


_SERVICE = _spdx_pkg("SPDXRef-root", "org.example", "pair-service", "2.4.0",
                     licenses=("Apache-2.0",), publisher="Example Org")
_LANG3 = _spdx_pkg("SPDXRef-commons-lang3", "org.apache.commons", "commons-lang3", "3.13.0",
                   hashes={"sha1": "b7263237aa89c1f99b327197d41d0669707a462e"},
                   licenses=("Apache-2.0",))
_GSON = _spdx_pkg("SPDXRef-gson", "com.google.code.gson", "gson", "2.10.1")

PAIR_SPDX = SbomDocument(
    standard=SPDX, spec_version="2.3", serialization=JSON,
    created_at=datetime(2023, 10, 2, 12, 30, tzinfo=UTC),
    # SPDX creators carry no separate version field; the name is kept whole
    tools=(ToolInfo("spdx-maven-plugin-0.7.0", None),),
    root_ref="SPDXRef-root", subject=_SERVICE,
    components=(_SERVICE, _LANG3, _GSON),
    dependency_graph={"SPDXRef-root": ("SPDXRef-commons-lang3", "SPDXRef-gson")},
    direct_dependencies=(Gav("org.apache.commons", "commons-lang3", "3.13.0"),
                         Gav("com.google.code.gson", "gson", "2.10.1")),
    dependency_confidence="low",
)

_EARLY = _mvn("io.example", "early-adopter", "0.3.1")
_CIO = _mvn("commons-io", "commons-io", "2.8.0")
NO_TOOLS = SbomDocument(
    standard=CDX, spec_version="1.2", serialization=JSON,
    created_at=datetime(2020, 9, 3, 14, 1, 9, 512000, tzinfo=UTC),
    tools=(), root_ref=_EARLY.ref_id, subject=_EARLY, components=(_CIO,),
    dependency_graph={_EARLY.ref_id: (_CIO.ref_id,)},
    direct_dependencies=(Gav("commons-io", "commons-io", "2.8.0"),),
)

_FRESH = _mvn("org.example.tools", "fresh-lib", "3.2.0")
TOOL_VERSION = SbomDocument(
    standard=CDX, spec_version="1.5", serialization=JSON,
    created_at=datetime(2024, 8, 12, 17, 40, 2, tzinfo=UTC),
    tools=(ToolInfo("cyclonedx-maven-plugin", "2.8.1"),),
    root_ref=_FRESH.ref_id, subject=_FRESH, components=(),
    dependency_graph={_FRESH.ref_id: ()},
)

_GRADLE_ROOT = _spdx_pkg("SPDXRef-gradle-built-lib", "dev.example", "gradle-built-lib", "1.0.0")
_KOTLIN = _spdx_pkg("SPDXRef-kotlin-stdlib", "org.jetbrains.kotlin", "kotlin-stdlib", "1.9.22")
GRADLE_SPDX = SbomDocument(
    standard=SPDX, spec_version="2.3", serialization=JSON,
    created_at=datetime(2024, 2, 14, 8, tzinfo=UTC),
    tools=(ToolInfo("spdx-gradle-plugin", None),),
    root_ref="SPDXRef-gradle-built-lib", subject=_GRADLE_ROOT,
    components=(_GRADLE_ROOT, _KOTLIN),
    dependency_graph={"SPDXRef-gradle-built-lib": ("SPDXRef-kotlin-stdlib",)},
    direct_dependencies=(Gav("org.jetbrains.kotlin", "kotlin-stdlib", "1.9.22"),),
    dependency_confidence="low",
)

_DANGLER = Component(ref_id="root-ref", name="dangler", group="net.example", version="1.1")
DANGLING = SbomDocument(
    standard=CDX, spec_version="1.4", serialization=JSON,
    created_at=datetime(2022, 11, 30, 8, tzinfo=UTC),
    tools=(ToolInfo("cyclonedx-maven-plugin", "2.7.3"),),
    root_ref="root-ref", subject=_DANGLER,
    components=(Component(ref_id="guava-ref", name="guava", group="com.google.guava",
                          version="31.1-jre"),
                Component(ref_id="no-version-ref", name="unversioned", group="com.example")),
    dependency_graph={"root-ref": ("guava-ref", "ghost-ref", "no-version-ref"), "guava-ref": ()},
    direct_dependencies=(Gav("com.google.guava", "guava", "31.1-jre"),),
    unresolved_dependency_refs=("ghost-ref", "no-version-ref"),
)

_ORC = _mvn("org.apache.orc", "orc-examples", "1.7.8")
_ORC_CORE = _mvn("org.apache.orc", "orc-core", "1.7.8")
_HDFS = _mvn("org.apache.hadoop", "hadoop-hdfs", "2.2.0")
ORC_EXAMPLES = SbomDocument(
    standard=CDX, spec_version="1.4", serialization=JSON,
    created_at=datetime(2023, 1, 20, 10, tzinfo=UTC),
    tools=(ToolInfo("cyclonedx-maven-plugin", "2.7.4"),),
    root_ref=_ORC.ref_id, subject=_ORC, components=(_ORC_CORE, _HDFS),
    dependency_graph={_ORC.ref_id: (_ORC_CORE.ref_id, _HDFS.ref_id)},
    direct_dependencies=(Gav("org.apache.orc", "orc-core", "1.7.8"),
                         Gav("org.apache.hadoop", "hadoop-hdfs", "2.2.0")),
)

_RDF_ROOT = _spdx_pkg("SPDXRef-rdf-lib", "org.example.rdf", "rdf-lib", "0.9",
                      hashes={"sha1": "2fd4e1c67a2d28fced849ee1bb76e7391b93eb12"},
                      licenses=("MIT",))
_JODA = _spdx_pkg("SPDXRef-joda-time", "joda-time", "joda-time", "2.10.14")
RDF_SPDX = SbomDocument(
    standard=SPDX, spec_version="2.2", serialization=XML,
    created_at=datetime(2021, 6, 1, tzinfo=UTC),
    tools=(ToolInfo("spdx-maven-plugin", None),),
    root_ref="SPDXRef-rdf-lib", subject=_RDF_ROOT, components=(_RDF_ROOT, _JODA),
    dependency_graph={"SPDXRef-rdf-lib": ("SPDXRef-joda-time",)},
    direct_dependencies=(Gav("joda-time", "joda-time", "2.10.14"),),
    dependency_confidence="low",
)

# fixture file -> expected document
GOLDEN = {
    "pair-cyclonedx.json": PAIR_CYCLONEDX,
    "pair-spdx.json": PAIR_SPDX,
    "no-tools-cyclonedx.json": NO_TOOLS,
    "tool-version-cyclonedx.json": TOOL_VERSION,
    "gradle-spdx.json": GRADLE_SPDX,
    "dangling-cyclonedx.json": DANGLING,
    "orc-examples-cyclonedx.json": ORC_EXAMPLES,
    "rdf-spdx.xml": RDF_SPDX,
}

# (json file, xml file) pairs holding the same content
PAIRS = [("pair-cyclonedx.json", "pair-cyclonedx.xml"), ("pair-spdx.json", "pair-spdx.xml")]
