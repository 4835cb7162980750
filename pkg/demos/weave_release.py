"""Attach one SBOM record to a release node and print the exported line.

The Goblin-compatible form renders the SBOM record as a single string keyed
by the SBOM url; the structured form keeps it as JSON fields. Both load back
to the same snapshot.

    python3 demos/weave_release.py
"""

import json

from sbom_auditor.graph import GraphSnapshot, SbomAddedValue, snapshot_records, weave_sbom
from sbom_auditor.model import ChecksumAlgo, ReleaseRecord, SbomStandard, parse_gav

RELEASE = "org.glassfish.jersey.examples:https-clientserver-grizzly:2.44"
URL = ("https://repo1.maven.org/maven2/org/glassfish/jersey/examples/"
       "https-clientserver-grizzly/2.44/https-clientserver-grizzly-2.44-cyclonedx.xml")


def main():
    gav = parse_gav(RELEASE)
    snapshot = GraphSnapshot(artifact_nodes={gav.key},
                             release_nodes={RELEASE: ReleaseRecord(gav, 1722258240000)})
    value = SbomAddedValue(URL, SbomStandard.CYCLONEDX, is_signed=True,
                           hash_algos=(ChecksumAlgo.MD5, ChecksumAlgo.SHA1))
    weave_sbom(snapshot, RELEASE, value)

    for compat in (True, False):
        release = next(r for r in snapshot_records(snapshot, goblin_compat=compat)
                       if r["kind"] == "release")
        print("goblin-compat" if compat else "structured")
        print(json.dumps(release, indent=2))


if __name__ == "__main__":
    main()
