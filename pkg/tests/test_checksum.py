import hashlib

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sbom_auditor.checksum import MISMATCH, OK, compute_digest, parse_sidecar, verify
from sbom_auditor.errors import MalformedSidecar
from sbom_auditor.model import ChecksumAlgo

# Reference digests, confirmed against coreutils md5sum/sha1sum/sha256sum/sha512sum.
VECTORS = {
    (ChecksumAlgo.MD5, b""): "d41d8cd98f00b204e9800998ecf8427e",
    (ChecksumAlgo.MD5, b"abc"): "900150983cd24fb0d6963f7d28e17f72",
    (ChecksumAlgo.SHA1, b""): "da39a3ee5e6b4b0d3255bfef95601890afd80709",
    (ChecksumAlgo.SHA1, b"abc"): "a9993e364706816aba3e25717850c26c9cd0d89d",
    (ChecksumAlgo.SHA256, b""): "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855",
    (ChecksumAlgo.SHA256, b"abc"): "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad",
    (ChecksumAlgo.SHA512, b""): (
        "cf83e1357eefb8bdf1542850d66d8007d620e4050b5715dc83f4a921d36ce9ce"
        "47d0d13c5d85f2b0ff8318d2877eec2f63b931bd47417a81a538327af927da3e"),
    (ChecksumAlgo.SHA512, b"abc"): (
        "ddaf35a193617abacc417349ae20413112e6fa4e89a97ea20a9eeee64b55d39a"
        "2192992a274fc1a836ba3c23a3feebbd454d4423643ce80e2a9ac94fa54ca49f"),
}


@pytest.mark.parametrize("algo,data", list(VECTORS))
def test_reference_vectors(algo, data):
    assert compute_digest(data, algo) == VECTORS[(algo, data)]


def test_sidecar_forms():
    digest = VECTORS[(ChecksumAlgo.MD5, b"abc")]
    assert parse_sidecar(digest) == digest
    assert parse_sidecar(digest.upper() + "\n") == digest
    assert parse_sidecar(f"{digest}  abc.txt\n") == digest


@pytest.mark.parametrize("text", ["", "   \n", "xyz", "d41d8cd98f00b204e9800998ecf8427", "g" * 32])
def test_malformed_sidecar(text):
    with pytest.raises(MalformedSidecar):
        parse_sidecar(text)


def test_wrong_length_for_algo():
    with pytest.raises(MalformedSidecar):
        verify(b"abc", VECTORS[(ChecksumAlgo.MD5, b"abc")], ChecksumAlgo.SHA1)


def test_mismatch():
    r = verify(b"abd", VECTORS[(ChecksumAlgo.MD5, b"abc")], ChecksumAlgo.MD5)
    assert r.status == MISMATCH and not r.ok


@settings(max_examples=1000, deadline=None)
@given(st.binary(max_size=512), st.sampled_from(list(ChecksumAlgo)),
       st.booleans(), st.sampled_from(["", "\n", "  file.jar\n"]))
def test_round_trip(data, algo, upper, suffix):
    expected = hashlib.new(algo.value, data).hexdigest()
    sidecar = (expected.upper() if upper else expected) + suffix
    result = verify(data, sidecar, algo)
    assert result.status == OK
    assert result.actual_hex == expected


@settings(max_examples=200, deadline=None)
@given(st.binary(min_size=1, max_size=64), st.sampled_from(list(ChecksumAlgo)))
def test_single_byte_flip_is_detected(data, algo):
    sidecar = compute_digest(data, algo)
    flipped = bytes([data[0] ^ 1]) + data[1:]
    assert verify(flipped, sidecar, algo).status == MISMATCH


def test_spec_examples():
    assert parse_sidecar("a9993e364706816aba3e25717850c26c9cd0d89d  foo-cyclonedx.json") == (
        "a9993e364706816aba3e25717850c26c9cd0d89d")
    with pytest.raises(MalformedSidecar):
        parse_sidecar("not-a-digest")
    assert verify(b"", "d41d8cd98f00b204e9800998ecf8427e", ChecksumAlgo.MD5).ok


@given(st.binary(max_size=256))
def test_sha256_length(data):
    assert len(compute_digest(data, ChecksumAlgo.SHA256)) == 64
