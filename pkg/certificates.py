"""
Certificate files: a line-oriented text format that pins a design to an exact field

    HEFFTER-CERT 1
    field p=71 n=1 q=71 modulus=64,1 generator=7
    kind space
    # comment lines
    param rho=49
    class P1
    block 1 24 25 43 49
    ...

Serialization is canonical, so parse -> serialize reproduces a canonical file byte for byte.
"""
import logging
import os
import re
import sys
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from config import CERT_KINDS, CERT_MAGIC, CERT_VERSION
from designs import (
    DesignReport, HeffterSpace, HeffterSystem, OrderedBlock, verify_heffter_space, verify_heffter_system
)
from errors import CertificateParseError, HeffterError, SeedInvariantViolated, WrongForm
from field_core import FieldCtx, FieldSpec, field_from_spec, half_set
from utils import ensure_dir_exists

# kind -> (required class names or None for any, exactly one block per class)
_SHAPES = {
    'halfset': (("V",), True),
    'ruler': (("R",), True),
    'packing': (("F",), False),
    'netseed': (("Y",), True),
}

_INT = r"(?:0|[1-9][0-9]*)"
_FIELD_RE = re.compile(rf"^field p=({_INT}) n=({_INT}) q=({_INT}) modulus=({_INT}(?:,{_INT})*) generator=({_INT})$")
_INT_RE = re.compile(rf"^{_INT}$")
_NUMERIC_RE = re.compile(r"^[+-]?[0-9][0-9_]*$")
_NAME_RE = re.compile(r"^[A-Za-z0-9_.:+-]+$")


@dataclass
class Certificate:
    spec: FieldSpec
    kind: str
    comments: List[str] = field(default_factory=list)
    params: Dict[str, str] = field(default_factory=dict)
    classes: List[Tuple[str, List[OrderedBlock]]] = field(default_factory=list)

    def blocks(self, name: str) -> List[OrderedBlock]:
        for cls_name, blocks in self.classes:
            if cls_name == name:
                return blocks
        raise KeyError(name)


def serialize_certificate(cert: Certificate) -> str:
    lines = [f"{CERT_MAGIC} {CERT_VERSION}", cert.spec.header(), f"kind {cert.kind}"]
    lines.extend(f"# {c}".rstrip() for c in cert.comments)
    lines.extend(f"param {k}={v}" for k, v in cert.params.items())
    for name, blocks in cert.classes:
        lines.append(f"class {name}")
        lines.extend("block " + " ".join(str(x) for x in block) for block in blocks)
    return "\n".join(lines) + "\n"


def parse_certificate(text: str) -> Certificate:
    """
    Parse a certificate, rejecting anything that is not in canonical form

    Raises:
        CertificateParseError with the offending line number
    """
    if not text.endswith("\n") or text.endswith("\n\n"):
        raise CertificateParseError("file must end with exactly one newline (truncated?)")
    lines = text[:-1].split("\n")
    if len(lines) < 3:
        raise CertificateParseError("missing header lines (truncated?)", len(lines))
    for n, line in enumerate(lines, start=1):
        if line != line.rstrip() or "\r" in line:
            raise CertificateParseError("trailing whitespace or CR", n)

    if lines[0] != f"{CERT_MAGIC} {CERT_VERSION}":
        raise CertificateParseError(f"expected '{CERT_MAGIC} {CERT_VERSION}'", 1)
    m = _FIELD_RE.match(lines[1])
    if not m:
        raise CertificateParseError("malformed field header", 2)
    p, n, q = int(m.group(1)), int(m.group(2)), int(m.group(3))
    modulus = tuple(int(c) for c in m.group(4).split(","))
    spec = FieldSpec(p=p, n=n, q=q, modulus=modulus, generator=int(m.group(5)))
    if not lines[2].startswith("kind ") or lines[2][5:] not in CERT_KINDS:
        raise CertificateParseError(f"kind must be one of {', '.join(CERT_KINDS)}", 3)
    cert = Certificate(spec=spec, kind=lines[2][5:])

    stage = 0  # 0 comments, 1 params, 2 classes
    for n, line in enumerate(lines[3:], start=4):
        if line.startswith("#"):
            if stage > 0:
                raise CertificateParseError("comments must precede params and classes", n)
            if line != "#" and not line.startswith("# "):
                raise CertificateParseError("comment marker must be followed by a space", n)
            cert.comments.append(line[2:])
        elif line.startswith("param "):
            if stage > 1:
                raise CertificateParseError("params must precede classes", n)
            stage = 1
            key, sep, value = line[6:].partition("=")
            if not sep or not key or key in cert.params:
                raise CertificateParseError(f"bad or repeated param {line[6:]!r}", n)
            if _NUMERIC_RE.match(value) and not _INT_RE.match(value):
                raise CertificateParseError(f"non-canonical integer in param {key!r}", n)
            cert.params[key] = value
        elif line.startswith("class "):
            stage = 2
            name = line[6:]
            if not _NAME_RE.match(name):
                raise CertificateParseError(f"bad class name {name!r}", n)
            cert.classes.append((name, []))
        elif line.startswith("block "):
            if not cert.classes:
                raise CertificateParseError("block before any class", n)
            tokens = line[6:].split(" ")
            if not all(_INT_RE.match(tok) for tok in tokens):
                raise CertificateParseError(f"non-canonical element code in {line!r}", n)
            block = tuple(int(tok) for tok in tokens)
            if any(x < 0 or x >= spec.q for x in block):
                raise CertificateParseError(f"element code out of range [0, {spec.q})", n)
            cert.classes[-1][1].append(block)
        else:
            raise CertificateParseError(f"unrecognized line {line!r}", n)

    _check_shape(cert)
    return cert


def _check_shape(cert: Certificate):
    if cert.kind in _SHAPES:
        names, single = _SHAPES[cert.kind]
        if [name for name, _ in cert.classes] != list(names):
            raise CertificateParseError(f"a {cert.kind} certificate holds exactly the class {names[0]}")
        if single and len(cert.classes[0][1]) != 1:
            raise CertificateParseError(f"class {names[0]} of a {cert.kind} certificate holds one block")
    if cert.kind == 'system' and len(cert.classes) != 1:
        raise CertificateParseError("a system certificate holds exactly one class")
    if cert.kind == 'netseed' and 'x' not in cert.params:
        raise CertificateParseError("netseed certificate lacks 'param x='")
    names = [name for name, _ in cert.classes]
    if len(set(names)) != len(names):
        raise CertificateParseError("class names repeat")


def read_certificate(path: str) -> Certificate:
    with open(path, "r", encoding="utf-8", newline="") as f:
        return parse_certificate(f.read())


def write_certificate(cert: Certificate, path: Optional[str] = None):
    """Write to path, or to stdout when path is None or '-'"""
    text = serialize_certificate(cert)
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    ensure_dir_exists(os.path.dirname(path))
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(text)
    logging.info(f"💾 Wrote {cert.kind} certificate to {path}")


# -- builders --------------------------------------------------------------------

def space_certificate(ctx: FieldCtx, space: HeffterSpace, comments: Sequence[str] = (),
                      params: Optional[Dict[str, str]] = None) -> Certificate:
    return Certificate(spec=ctx.spec, kind="space", comments=list(comments), params=dict(params or {}),
                       classes=[(cls.name or f"P{i + 1}", list(cls.blocks)) for i, cls in enumerate(space.classes)])


def system_certificate(ctx: FieldCtx, system: HeffterSystem, comments: Sequence[str] = ()) -> Certificate:
    return Certificate(spec=ctx.spec, kind="system", comments=list(comments),
                       classes=[(system.name or "P1", list(system.blocks))])


def halfset_certificate(ctx: FieldCtx, V: Sequence[int], comments: Sequence[str] = ()) -> Certificate:
    return Certificate(spec=ctx.spec, kind="halfset", comments=list(comments), classes=[("V", [tuple(sorted(V))])])


def ruler_certificate(ctx: FieldCtx, ruler: Sequence[int], rho: Optional[int] = None,
                      comments: Sequence[str] = ()) -> Certificate:
    params = {'rho': str(rho)} if rho is not None else {}
    return Certificate(spec=ctx.spec, kind="ruler", comments=list(comments), params=params,
                       classes=[("R", [tuple(ruler)])])


def packing_certificate(ctx: FieldCtx, rulers: Sequence[Sequence[int]], rho: Optional[int] = None,
                        comments: Sequence[str] = ()) -> Certificate:
    params = {'rho': str(rho)} if rho is not None else {}
    return Certificate(spec=ctx.spec, kind="packing", comments=list(comments), params=params,
                       classes=[("F", [tuple(r) for r in rulers])])


def netseed_certificate(ctx: FieldCtx, x: int, Y: Sequence[int], comments: Sequence[str] = ()) -> Certificate:
    return Certificate(spec=ctx.spec, kind="netseed", comments=list(comments), params={'x': str(x)},
                       classes=[("Y", [tuple(Y)])])


def basecycles_certificate(ctx: FieldCtx, systems, comments: Sequence[str] = ()) -> Certificate:
    """systems: CycleSystem objects, one class each"""
    return Certificate(spec=ctx.spec, kind="basecycles", comments=list(comments),
                       classes=[(s.name or f"F{i + 1}", [c.vertices for c in s.base]) for i, s in enumerate(systems)])


# -- loading and verification ----------------------------------------------------

def certificate_field(cert: Certificate) -> FieldCtx:
    """Rebuild the declared field; an inconsistent header is a parse error"""
    try:
        return field_from_spec(cert.spec)
    except HeffterError as e:
        raise CertificateParseError(f"field header is inconsistent: {e}", 2)


def certificate_space(ctx: FieldCtx, cert: Certificate) -> HeffterSpace:
    """Space (or one-class space for a system certificate) on the points the first class covers"""
    if not cert.classes:
        raise CertificateParseError("no classes to build a space from")
    V = frozenset(x for block in cert.classes[0][1] for x in block)
    classes = tuple(HeffterSystem(halfset=V, blocks=tuple(blocks), name=name) for name, blocks in cert.classes)
    return HeffterSpace(halfset=V, classes=classes)


def _rho(cert: Certificate) -> Optional[int]:
    return int(cert.params['rho']) if 'rho' in cert.params else None


def verify_certificate(cert: Certificate) -> DesignReport:
    """
    Run the verifier matching the certificate kind

    Returns:
        DesignReport; defects of the object are violations, never exceptions
    """
    ctx = certificate_field(cert)
    kind = cert.kind

    if kind == "halfset":
        V = cert.classes[0][1][0]
        report = DesignReport(kind="halfset", v=len(V))
        if len(set(V)) != len(V):
            report.add("repeated elements")
        try:
            half_set(ctx, V)
        except HeffterError as e:
            report.add(str(e))
        return report

    if kind == "system":
        name, blocks = cert.classes[0]
        V = [x for block in blocks for x in block]
        return verify_heffter_system(ctx, V, blocks, name)

    if kind == "space":
        report = verify_heffter_space(ctx, certificate_space(ctx, cert))
        if 'rho' in cert.params:
            report.params['rho'] = cert.params['rho']
        return report

    from search import verify_packing, verify_ruler
    if kind == "ruler":
        B = cert.classes[0][1][0]
        try:
            return verify_ruler(ctx, len(B), B, _rho(cert))
        except HeffterError as e:
            report = DesignReport(kind="ruler", sizes=(len(B),))
            report.add(str(e))
            return report

    if kind == "packing":
        try:
            return verify_packing(ctx, cert.classes[0][1], _rho(cert))
        except HeffterError as e:
            report = DesignReport(kind="packing")
            report.add(str(e))
            return report

    if kind == "netseed":
        from construct import verify_net_seed
        Y = cert.classes[0][1][0]
        report = DesignReport(kind="netseed", v=len(Y) ** 2, sizes=(len(Y),), r=4)
        try:
            x = int(cert.params['x'])
        except ValueError:
            raise CertificateParseError(f"param x={cert.params['x']} is not an integer")
        try:
            verify_net_seed(ctx, x, Y)
        except SeedInvariantViolated as e:
            report.add(str(e))
            report.params['failed'] = e.which
        except WrongForm as e:
            report.add(str(e))
        return report

    if kind == "basecycles":
        from cycles import Cycle, CycleSystem, base_systems_orthogonal, verify_base_cycles
        report = DesignReport(kind="basecycles", v=(ctx.q - 1) // 2, r=len(cert.classes))
        systems = []
        for name, blocks in cert.classes:
            cycles = tuple(Cycle(tuple(b)) for b in blocks)
            report.absorb(verify_base_cycles(ctx, cycles), prefix=f"{name}: ")
            systems.append(CycleSystem(group=ctx, base=cycles, name=name))
        report.sizes = tuple(sorted({c.k for s in systems for c in s.base}))
        if report.valid:
            for A, B in combinations(systems, 2):
                ok, witness = base_systems_orthogonal(A, B)
                if not ok:
                    report.add(f"{A.name} and {B.name} are not orthogonal: {witness[0]} and {witness[1]} share two edges")
            report.params['orthogonal_pairs'] = str(len(systems) * (len(systems) - 1) // 2) if report.valid else "no"
        return report

    raise CertificateParseError(f"unknown kind {kind}")
