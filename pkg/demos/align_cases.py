"""Three alignment outcomes built from well-known releases.

A version disagreement, an SBOM that lists many dependencies the graph does
not know about, and an SBOM that counts the project's own submodules as
dependencies (flagged, but still not a match).

    python3 demos/align_cases.py
"""

from sbom_auditor.alignment import align, flag_submodules
from sbom_auditor.model import Gav, parse_gav


def show(title, verdict):
    print(f"{title}: {verdict.status}")
    for m in verdict.version_mismatches:
        print(f"  {m.key}: sbom {m.sbom_version}, graph {m.graph_version}")
    if verdict.sbom_only:
        print(f"  {len(verdict.sbom_only)} only in the SBOM, "
              f"{verdict.flagged_submodules} flagged as submodules")


def main():
    orc = parse_gav("org.apache.orc:orc-examples:1.7.8")
    show("orc-examples", align(
        orc, [Gav("org.apache.hadoop", "hadoop-hdfs", "2.2.0")],
        [(Gav("org.apache.hadoop", "hadoop-hdfs", "3.3.4"), "compile"),
         (Gav("junit", "junit", "4.13.2"), "test")]))

    glassfish = parse_gav("org.glassfish.main.extras:glassfish-embedded-web:8.0.0-M2")
    show("glassfish-embedded-web",
         align(glassfish, [Gav("org.example", f"lib{i}", "1.0") for i in range(231)], []))

    janus = parse_gav("org.janusgraph:janusgraph:1.1.0-20240801-124342.ff323da")
    deps = [Gav("org.janusgraph", f"janusgraph-mod{i}", janus.version) for i in range(20)]
    deps += [Gav("org.apache.tinkerpop", "gremlin-core", "3.7.2"),
             Gav("org.slf4j", "slf4j-api", "1.7.36"),
             Gav("com.google.guava", "guava", "32.1.2-jre"),
             Gav("commons-io", "commons-io", "2.16.1")]
    show("janusgraph", flag_submodules(align(janus, deps, []), janus))


if __name__ == "__main__":
    main()
