import csv
import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sbom_auditor.alignment import align
from sbom_auditor.discovery import SbomArtifactRef
from sbom_auditor.errors import InconsistentInputs
from sbom_auditor.model import ChecksumAlgo, Gav, SbomStandard, Serialization, parse_gav
from sbom_auditor.report import AuditReport, build_report, load_report, write_report
from sbom_auditor.sbom import ParsedSbom, SbomDocument, ToolInfo

CDX, SPDX = SbomStandard.CYCLONEDX, SbomStandard.SPDX
JSON, XML = Serialization.JSON, Serialization.XML
MD5, SHA1 = ChecksumAlgo.MD5, ChecksumAlgo.SHA1

MS_2019 = 1561939200000   # 2019-07-01
MS_2023 = 1688169600000   # 2023-07-01


def ref(release, name, std, ser, algos=(MD5,), signed=False):
    gav = parse_gav(release)
    return SbomArtifactRef(gav, f"http://r/{gav.artifact}/{name}", name, std, ser, algos, signed)


# 6 SBOMs over 4 releases: 3 cyclonedx/json, 2 cyclonedx/xml, 1 spdx/json, all with md5
CORPUS = [
    ref("g:a:1", "a-1-cyclonedx.json", CDX, JSON, (MD5, SHA1), True),
    ref("g:a:1", "a-1-cyclonedx.xml", CDX, XML),
    ref("g:b:1", "b-1-cyclonedx.json", CDX, JSON),
    ref("g:b:1", "b-1-spdx.json", SPDX, JSON),
    ref("g:c:2", "c-2-cyclonedx.json", CDX, JSON, (MD5, SHA1)),
    ref("g:d:3", "d-3-cyclonedx.xml", CDX, XML),
]
TIMESTAMPS = {"g:a:1": MS_2019, "g:b:1": MS_2023, "g:c:2": MS_2023}   # g:d:3 unknown


def doc(tools=()):
    return SbomDocument(standard=CDX, spec_version="1.4", serialization=JSON, tools=tuple(tools))


def test_fixture_corpus():
    parsed = [ParsedSbom(CORPUS[0].release, CORPUS[0].url, doc([ToolInfo("cyclonedx-maven-plugin", "2.7.9")])),
              ParsedSbom(CORPUS[2].release, CORPUS[2].url, doc()),
              ParsedSbom(CORPUS[3].release, CORPUS[3].url, error="SbomSyntaxError: x")]
    verdicts = [align(CORPUS[0].release, [Gav("x", "y", "1")], [(Gav("x", "y", "2"), "compile")])]
    r = build_report(CORPUS, parsed, verdicts, timestamps=TIMESTAMPS,
                     scanned=["g:a:1", "g:b:1", "g:c:2", "g:d:3", "g:e:4"])
    assert r.totals == (5, 4, 6)
    assert r.per_format == {(CDX, JSON): 3, (CDX, XML): 2, (SPDX, JSON): 1}
    assert r.checksum_coverage[MD5] == 1.0
    assert r.checksum_coverage[SHA1] == pytest.approx(2 / 6)
    assert r.checksum_coverage[ChecksumAlgo.SHA512] == 0.0
    assert r.signed_fraction == pytest.approx(1 / 6)
    assert r.per_year == {2019: 2, 2023: 3, None: 1}
    assert r.per_year_releases == {2019: 1, 2023: 2, None: 1}
    assert r.multi_standard_releases == 1
    assert r.tools == {("cyclonedx-maven-plugin", "2.7.9"): 1}
    assert (r.documents_parsed, r.documents_without_tools, r.parse_failures) == (2, 1, 1)
    assert r.alignment_summary["version_mismatch"] == 1 and r.count_match == 1
    assert r.exact_match == 0


def test_empty_report():
    r = build_report([])
    assert r.totals == (0, 0, 0)
    assert r.per_year == {} and r.per_format == {}
    assert all(v == 0.0 for v in r.checksum_coverage.values())
    assert set(r.alignment_summary.values()) == {0}


def test_inconsistent_inputs():
    stray = ParsedSbom(parse_gav("z:z:9"), "http://r/z.json", doc())
    with pytest.raises(InconsistentInputs):
        build_report(CORPUS, [stray])
    with pytest.raises(InconsistentInputs):
        build_report(CORPUS, verdicts=[align(parse_gav("z:z:9"), [], [])])


def test_write_and_load(tmp_path):
    r = build_report(CORPUS, timestamps=TIMESTAMPS)
    write_report(r, tmp_path)
    first = (tmp_path / "report.json").read_bytes()
    assert load_report(tmp_path / "report.json") == r
    write_report(load_report(tmp_path / "report.json"), tmp_path)
    assert (tmp_path / "report.json").read_bytes() == first
    rows = list(csv.reader(open(tmp_path / "per_year.csv")))
    assert rows == [["year", "sbom_files", "releases"], ["2019", "2", "1"], ["2023", "3", "2"],
                    ["unknown", "1", "1"]]
    fmt = list(csv.reader(open(tmp_path / "per_format.csv")))
    assert fmt[1:] == [["cyclonedx", "json", "3"], ["cyclonedx", "xml", "2"], ["spdx", "json", "1"]]
    for name in ("tools.csv", "alignment.csv", "checksums.csv"):
        assert (tmp_path / name).exists()
    assert "timestamp" not in json.loads(first)


names = st.sampled_from(["g:a:1", "g:b:1", "g:c:1", "h:a:2"])
refs_st = st.lists(st.tuples(names, st.sampled_from(list(SbomStandard)),
                             st.sampled_from(list(Serialization)),
                             st.sets(st.sampled_from(list(ChecksumAlgo))), st.booleans()),
                   max_size=15)


@given(refs_st, st.dictionaries(names, st.sampled_from([MS_2019, MS_2023])))
def test_report_invariants(specs, timestamps):
    inventory = []
    for i, (rid, std, ser, algos, signed) in enumerate(specs):
        inventory.append(ref(rid, f"f{i}-{std.value}.{ser.value}", std, ser, tuple(algos), signed))
    r = build_report(inventory, timestamps=timestamps)
    assert sum(r.per_year.values()) == r.sbom_files
    assert sum(r.per_format.values()) == r.sbom_files
    assert all(0 <= f <= 1 for f in r.checksum_coverage.values())
    assert r.releases_with_sbom <= r.releases_scanned
    assert r.sbom_files >= r.releases_with_sbom
    assert AuditReport.from_dict(json.loads(json.dumps(r.to_dict()))) == r
