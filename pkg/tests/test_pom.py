import pytest

from sbom_auditor.errors import PomSyntaxError
from sbom_auditor.model import Gav
from sbom_auditor.pom import (MANAGED_VERSION, PomDependency, parse_pom_dependencies,
                              pom_direct_dependencies, pom_url)

from conftest import FIXTURES

POMS = FIXTURES / "poms"


def test_properties_and_scopes():
    deps = parse_pom_dependencies((POMS / "pair-app-1.0.pom").read_bytes())
    assert deps == [
        PomDependency(Gav("com.fasterxml.jackson.core", "jackson-databind", "2.15.0")),
        PomDependency(Gav("org.slf4j", "slf4j-api", "2.0.7"), "runtime"),
        PomDependency(Gav("junit", "junit", "4.13.2"), "test"),
    ]
    # dependencyManagement and plugin dependencies are not project dependencies
    assert all(d.gav.group not in ("org.managed", "plugin.only") for d in deps)


def test_parent_values_and_unresolved_placeholders():
    deps = {d.gav.artifact: d for d in
            parse_pom_dependencies((POMS / "child-with-parent.pom").read_bytes())}
    assert deps["family-api"].gav == Gav("org.example.family", "family-api", "5.1.0")
    assert deps["netty-handler"].gav.version == "4.1.100.Final"
    assert deps["netty-handler"].optional_flag
    assert deps["guava"].gav.version == MANAGED_VERSION and not deps["guava"].resolved
    assert deps["mockito-core"].gav.version == "${undefined.property}"
    assert deps["platform-bom"].scope == "import"
    assert deps["servlet-api"].scope == "provided"


def test_direct_dependencies_drop_imports():
    deps = parse_pom_dependencies((POMS / "child-with-parent.pom").read_bytes())
    pairs = pom_direct_dependencies(deps)
    assert ("platform-bom" not in {g.artifact for g, _ in pairs})
    assert dict((g.artifact, s) for g, s in pairs)["family-api"] == "compile"


def test_unknown_scope_becomes_unspecified():
    pom = b"""<project><dependencies><dependency><groupId>g</groupId><artifactId>a</artifactId>
      <version>1</version><scope>weird</scope></dependency></dependencies></project>"""
    assert parse_pom_dependencies(pom)[0].scope == "unspecified"


def test_self_referencing_property_terminates():
    pom = b"""<project><properties><a>${a}x</a></properties><dependencies><dependency>
      <groupId>g</groupId><artifactId>a</artifactId><version>${a}</version></dependency>
      </dependencies></project>"""
    assert parse_pom_dependencies(pom)[0].gav.version.endswith("x")


def test_no_dependencies():
    assert parse_pom_dependencies(b"<project/>") == []


@pytest.mark.parametrize("data", [b"<project>", b"<notaproject/>"])
def test_syntax_errors(data):
    with pytest.raises(PomSyntaxError):
        parse_pom_dependencies(data)


def test_pom_url():
    assert pom_url("https://r/g/a/1.0/", Gav("g", "a", "1.0")) == "https://r/g/a/1.0/a-1.0.pom"


def test_project_version_and_test_scope():
    pom = b"""<project><groupId>org.glassfish</groupId><artifactId>x</artifactId><version>2.44</version>
      <dependencies>
        <dependency><groupId>g</groupId><artifactId>a</artifactId><version>1.0</version>
          <scope>test</scope></dependency>
        <dependency><groupId>g</groupId><artifactId>self</artifactId>
          <version>${project.version}</version></dependency>
        <dependency><groupId>g</groupId><artifactId>u</artifactId>
          <version>${undefined.prop}</version></dependency>
      </dependencies></project>"""
    a, self_dep, undefined = parse_pom_dependencies(pom)
    assert a == PomDependency(Gav("g", "a", "1.0"), "test") and a.resolved
    assert self_dep.gav.version == "2.44" and self_dep.resolved
    assert not undefined.resolved
