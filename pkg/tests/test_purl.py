import pytest
from hypothesis import given
from hypothesis import strategies as st

from sbom_auditor.errors import MalformedPurl
from sbom_auditor.model import Gav
from sbom_auditor.sbom.purl import parse_maven_purl, render_maven_purl


@pytest.mark.parametrize("purl,expected", [
    ("pkg:maven/org.apache.hadoop/hadoop-hdfs@2.2.0", Gav("org.apache.hadoop", "hadoop-hdfs", "2.2.0")),
    ("pkg:maven/com.example/pair-app@1.0?type=jar", Gav("com.example", "pair-app", "1.0")),
    ("pkg:maven/a.b/c@1.0#sub/path", Gav("a.b", "c", "1.0")),
    ("pkg:/maven/a/b@1", Gav("a", "b", "1")),
    ("pkg:maven/org.ow2/asm@9.0%2Bfix", Gav("org.ow2", "asm", "9.0+fix")),
])
def test_parse(purl, expected):
    assert parse_maven_purl(purl) == expected


@pytest.mark.parametrize("purl", ["pkg:npm/left-pad@1.3.0", "pkg:pypi/requests@2.0", "not a purl"])
def test_other_types_are_none(purl):
    assert parse_maven_purl(purl) is None


@pytest.mark.parametrize("purl", ["pkg:maven/only-name@1.0", "pkg:maven/g/a", "pkg:maven/g/a@",
                                  "pkg:maven/a/b/c@1", "pkg:maven/g/@1"])
def test_malformed(purl):
    with pytest.raises(MalformedPurl):
        parse_maven_purl(purl)


part = st.text(st.characters(blacklist_characters=":", blacklist_categories=("Cs",)),
               min_size=1, max_size=15)


@given(part, part, part)
def test_round_trip(g, a, v):
    gav = Gav(g, a, v)
    assert parse_maven_purl(render_maven_purl(gav)) == gav
