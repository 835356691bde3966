"""
Tests for the certificate format, the golden corpus and per-kind verification
"""
import os

import pytest

import catalog
from certificates import (
    basecycles_certificate, halfset_certificate, netseed_certificate, parse_certificate, read_certificate,
    serialize_certificate, space_certificate, system_certificate, verify_certificate, write_certificate
)
from corpus_scan import list_certificates
from errors import CertificateParseError

GOLDEN = ["z41_space.cert", "f71_space.cert", "f71_extended.cert", "f151_packing.cert",
          "ruler67.cert", "ruler211.cert", "net163_seed.cert"]


@pytest.mark.parametrize("name", GOLDEN)
def test_golden_round_trip_is_byte_identical(golden_path, name):
    with open(golden_path(name), encoding="utf-8", newline="") as f:
        text = f.read()
    assert serialize_certificate(parse_certificate(text)) == text


@pytest.mark.parametrize("name", GOLDEN)
def test_golden_certificates_verify(golden_path, name):
    report = verify_certificate(read_certificate(golden_path(name)))
    assert report.valid, report.violations


def test_golden_corpus_is_complete(golden_path):
    names = [os.path.basename(p) for p in list_certificates(os.path.dirname(golden_path("x")))]
    assert sorted(names) == sorted(GOLDEN)


def test_constructed_f71_matches_golden(golden_path, z71, f71_space):
    cert = space_certificate(z71, f71_space, ["(35,5;5) configuration developed from one Heffter ruler"],
                             {'rho': str(catalog.F71_RHO)})
    with open(golden_path("f71_space.cert"), encoding="utf-8") as f:
        assert serialize_certificate(cert) == f.read()


def test_write_and_read_back(tmp_path, z41, z41_systems):
    path = tmp_path / "sub" / "p1.cert"
    cert = system_certificate(z41, z41_systems[0], ["first system"])
    write_certificate(cert, str(path))
    again = read_certificate(str(path))
    assert again == cert
    assert verify_certificate(again).valid


def test_write_to_stdout(capsys, z41):
    write_certificate(halfset_certificate(z41, catalog.Z41_HALFSET))
    out = capsys.readouterr().out
    assert out.startswith("HEFFTER-CERT 1\nfield p=41 n=1 q=41 modulus=35,1 generator=6\nkind halfset\n")
    assert out.endswith("\n") and not out.endswith("\n\n")


def test_halfset_certificate_detects_bad_set(z41):
    cert = halfset_certificate(z41, (1, 40) + catalog.Z41_HALFSET[1:])
    assert not verify_certificate(cert).valid


def test_netseed_failure_names_invariant():
    generator, x, Y = catalog.net_seed_data(163)
    from field_core import field_from_order
    ctx = field_from_order(163, generator=generator)
    report = verify_certificate(netseed_certificate(ctx, x, Y[:-1] + (Y[0],)))
    assert not report.valid
    assert report.params['failed'] == "coset-coverage"


def test_basecycles_certificate(z71, f71_space):
    from cycles import space_cycle_systems
    cert = basecycles_certificate(z71, space_cycle_systems(z71, f71_space))
    assert [name for name, _ in cert.classes] == ["P1", "P2", "P3", "P4", "P5"]
    report = verify_certificate(parse_certificate(serialize_certificate(cert)))
    assert report.valid, report.violations


def _golden_text(golden_path, name="ruler67.cert"):
    with open(golden_path(name), encoding="utf-8", newline="") as f:
        return f.read()


@pytest.mark.parametrize("mutate, line", [
    (lambda t: t[:-1], None),
    (lambda t: t + "\n", None),
    (lambda t: t.replace("HEFFTER-CERT 1", "HEFFTER-CERT 2"), 1),
    (lambda t: t.replace("kind ruler", "kind lattice"), 3),
    (lambda t: t.replace("block 1 10 56", "block 1 10 67"), 6),
    (lambda t: t.replace("block 1 10 56", "block 1 ten 56"), 6),
    (lambda t: t.replace("# Heffter", " # Heffter"), 4),
    (lambda t: t + "param rho=4\n", 7),
    (lambda t: t.replace("\n", "\r\n"), 1),
])
def test_strict_parsing(golden_path, mutate, line):
    with pytest.raises(CertificateParseError) as info:
        parse_certificate(mutate(_golden_text(golden_path)))
    if line is not None:
        assert info.value.line_number == line


def test_shape_errors(golden_path):
    text = _golden_text(golden_path)
    with pytest.raises(CertificateParseError):
        parse_certificate(text + "block 4 5 6\n")
    with pytest.raises(CertificateParseError):
        parse_certificate(text.replace("class R", "class Q"))
    seed = _golden_text(golden_path, "net163_seed.cert")
    with pytest.raises(CertificateParseError):
        parse_certificate(seed.replace("param x=40\n", ""))


def test_inconsistent_field_header_is_a_parse_error(golden_path):
    text = _golden_text(golden_path).replace("generator=2", "generator=3")
    with pytest.raises(CertificateParseError):
        verify_certificate(parse_certificate(text))


@pytest.mark.parametrize("name, old, new, line", [
    ("z41_space.cert", "block 1 3 4 33", "block 01 3 4 33", 6),
    ("z41_space.cert", "block 1 3 4 33", "block +1 3 4 33", 6),
    ("z41_space.cert", "block 11 19 25 27", "block 1_1 19 25 27", 10),
    ("z41_space.cert", "block 1 3 4 33", "block 1  3 4 33", 6),
    ("z41_space.cert", "# three", "#three", 4),
    ("z41_space.cert", "modulus=35,1", "modulus=035,1", 2),
    ("z41_space.cert", "p=41", "p=+41", 2),
    ("net163_seed.cert", "param x=40", "param x=040", 5),
    ("net163_seed.cert", "param x=40", "param x=4_0", 5),
])
def test_non_canonical_numbers_and_comments_rejected(golden_path, name, old, new, line):
    text = _golden_text(golden_path, name)
    assert old in text
    with pytest.raises(CertificateParseError) as info:
        parse_certificate(text.replace(old, new, 1))
    if line is not None:
        assert info.value.line_number == line


def test_empty_comment_round_trips(golden_path):
    text = _golden_text(golden_path).replace("# Heffter", "#\n# Heffter")
    assert serialize_certificate(parse_certificate(text)) == text
