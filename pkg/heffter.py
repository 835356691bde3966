#!/usr/bin/env python3
"""
Heffter designs toolkit - command line

Usage: python heffter.py verify golden/f71_space.cert
       python heffter.py construct partial-partition --q 211 --sizes 3,5,7
       python heffter.py search packing --q 151 --k 5 --n 2 --mode exhaustive
       python heffter.py cycles derive golden/f71_space.cert -o f71_cycles.cert

Exit codes: 0 ok, 1 invalid, 2 parse error or bad parameters, 3 nothing found.
"""
import os
import sys
import logging
import argparse
from typing import List, Optional

from config import (
    CHECKPOINT_FILE, CORPUS_SCAN_CACHE, EXIT_INTERRUPTED, EXIT_INVALID, EXIT_NOT_FOUND, EXIT_OK,
    EXIT_PARSE, GOLDEN_FOLDER, INEQUIVALENT_QMAX, LOG_LEVEL, REPORT_TABLE_CSV, REPORT_TABLE_TXT, SEARCH_SETTINGS
)
from errors import (
    CertificateParseError, HeffterError, NoDivisibility, NotADivisor, NotCoprime, NotIrreducible,
    NotPrime, NotPrimitiveElement, NotPrimitivePolynomial, WrongCongruence, WrongForm, WrongProduct
)
from utils import format_duration, parse_int_list, set_progress_enabled, setup_logging

PARAMETER_ERRORS = (
    WrongForm, WrongCongruence, NoDivisibility, NotCoprime, WrongProduct, NotPrime, NotIrreducible,
    NotPrimitivePolynomial, NotPrimitiveElement, NotADivisor, ValueError
)

BUILTIN_OBJECTS = ("z41", "f71", "f71-extended", "f151", "net163", "net883", "net1459", "ag211")


# -- verify ------------------------------------------------------------------------

def _print_report(report, structured: bool):
    lines = report.structured_lines() if structured else report.summary_lines()
    print("\n".join(lines))


def cmd_verify(args) -> int:
    from certificates import read_certificate, verify_certificate

    if args.corpus is not None:
        return _verify_corpus(args.corpus, args.changed_only, args.structured)
    if not args.path:
        raise ValueError("verify needs a certificate path or --corpus")

    cert = read_certificate(args.path)
    if args.kind and args.kind != cert.kind:
        raise ValueError(f"{args.path} holds a {cert.kind} certificate, not {args.kind}")
    report = verify_certificate(cert)
    _print_report(report, args.structured)
    return EXIT_OK if report.valid else EXIT_INVALID


def _verify_corpus(folder: str, changed_only: bool, structured: bool) -> int:
    from certificates import read_certificate, verify_certificate
    from corpus_scan import incremental_corpus_scan, list_certificates, record_scan

    if changed_only:
        all_files, to_verify = incremental_corpus_scan(folder, CORPUS_SCAN_CACHE)
        paths = [p for p in all_files if p in to_verify]
        logging.info(f"🔄 {len(paths)} of {len(all_files)} certificate(s) new or changed")
    else:
        paths = list_certificates(folder)

    ok, invalid, broken = set(), [], []
    for path in paths:
        name = os.path.basename(path)
        try:
            report = verify_certificate(read_certificate(path))
        except CertificateParseError as e:
            broken.append(name)
            print(f"❌ {name}: parse error: {e}")
            continue
        if report.valid:
            ok.add(path)
            print(f"✓ {name}: {report.kind} v={report.v} sizes={report.sizes_text()} r={report.r}")
        else:
            invalid.append(name)
            print(f"❌ {name}: {report.kind} has {len(report.violations)} violation(s)")
            if structured:
                print("\n".join(report.structured_lines()))
    if changed_only:
        previously_ok = {p for p in all_files if p not in to_verify}
        record_scan(folder, CORPUS_SCAN_CACHE, ok | previously_ok)

    print("=" * 60)
    print(f"{len(ok)} valid, {len(invalid)} invalid, {len(broken)} unreadable")
    if broken:
        return EXIT_PARSE
    return EXIT_INVALID if invalid else EXIT_OK


# -- construct ---------------------------------------------------------------------

def _write_matrix(ctx, matrix, path: Optional[str], coefficients: bool):
    from construct import format_matrix
    text = format_matrix(ctx, matrix, coefficients)
    if path in (None, ""):
        return
    if path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as f:
        f.write(text)
    logging.info(f"💾 Wrote labeling matrix to {path}")


def builtin_construction(name: str, check: bool = True):
    """
    Build one of the catalogued objects

    Returns:
        (ctx, space, comments, params, matrix or None)
    """
    import catalog
    from construct import (
        NetSeed, ag211_labeling, develop_packing, extend_with_cosets, labeling_matrix, net_ag2_11,
        net_via_roots
    )
    from designs import assemble_space, make_system
    from field_core import build_field, field_from_order

    if name == "z41":
        ctx = build_field(catalog.Z41_ORDER)
        systems = [make_system(ctx, catalog.Z41_HALFSET, blocks, label) for label, blocks in catalog.Z41_SYSTEMS.items()]
        return ctx, assemble_space(systems), ["three mutually orthogonal (20,4) Heffter systems over Z_41"], {}, None
    if name in ("f71", "f71-extended"):
        ctx = field_from_order(catalog.F71_Q)
        space = develop_packing(ctx, [catalog.F71_BASE_BLOCK], rho=catalog.F71_RHO, check=check)
        comments = ["(35,5;5) configuration developed from one Heffter ruler"]
        if name == "f71-extended":
            space = extend_with_cosets(ctx, space, rho=catalog.F71_RHO, check=check)
            comments = ["(35,{5^5,7}) space: the (35,5;5) configuration plus the coset class C"]
        return ctx, space, comments, {'rho': str(catalog.F71_RHO)}, None
    if name == "f151":
        ctx = field_from_order(catalog.F151_Q)
        space = develop_packing(ctx, catalog.F151_PACKING, check=check)
        return ctx, space, ["(75,5;10) configuration from a two-ruler Heffter difference packing"], {}, None
    if name.startswith("net") and name[3:].isdigit():
        q = int(name[3:])
        generator, x, Y = catalog.net_seed_data(q)
        ctx = field_from_order(q, generator=generator)
        seed = NetSeed(q=q, n=0, x=x, Y=Y)
        space, matrix = net_via_roots(ctx, seed, check=check)
        m = len(Y)
        return ctx, space, [f"({m * m},{m};4) Heffter net from roots of unity"], {'x': str(x)}, matrix
    if name == "ag211":
        labeling = ag211_labeling()
        space = net_ag2_11(labeling, check=check)
        matrix = labeling_matrix(labeling.ctx, labeling.x, labeling.Y)
        return labeling.ctx, space, ["(121,11;9) Heffter net over GF(3^5) from nine slope classes of AG(2,11)"], {}, matrix
    raise ValueError(f"unknown built-in object {name!r}; choose from {', '.join(BUILTIN_OBJECTS)}")


def _parse_rulers(text: str) -> List[List[int]]:
    return [parse_int_list(part) for part in text.split(";") if part.strip()]


def cmd_construct(args) -> int:
    from certificates import space_certificate, write_certificate
    from construct import (
        NetSeed, develop_packing, extend_with_cosets, net_via_roots, partial_partition_space
    )
    from designs import verify_heffter_space
    from field_core import field_from_order

    check = not args.no_check
    matrix = None
    params = {}
    if args.target == "partial-partition":
        ctx = field_from_order(args.q)
        sizes = parse_int_list(args.sizes)
        space = partial_partition_space(ctx, sizes, check=check)
        comments = [f"partial partition space from the roots of unity of orders {','.join(map(str, sizes))}"]
    elif args.target == "develop":
        ctx = field_from_order(args.q)
        space = develop_packing(ctx, _parse_rulers(args.rulers), rho=args.rho, check=check)
        if args.extend:
            space = extend_with_cosets(ctx, space, rho=args.rho, check=check)
        comments = ["developed Heffter difference packing" + (" with coset class" if args.extend else "")]
        if args.rho is not None:
            params['rho'] = str(args.rho)
    elif args.target == "net":
        ctx = field_from_order(args.q)
        seed = NetSeed(q=args.q, n=0, x=args.x, Y=tuple(parse_int_list(args.y)))
        space, matrix = net_via_roots(ctx, seed, check=check)
        comments = ["Heffter net from roots of unity"]
        params['x'] = str(args.x)
    else:
        ctx, space, comments, params, matrix = builtin_construction(args.target, check)

    if check:
        report = verify_heffter_space(ctx, space)
        logging.info(f"✓ {report.kind} v={report.v} sizes={report.sizes_text()} r={report.r}"
                     + (f" density={report.density}" if report.density is not None else ""))
    write_certificate(space_certificate(ctx, space, comments, params), args.output)
    if matrix is not None:
        _write_matrix(ctx, matrix, args.matrix, coefficients=ctx.n > 1)
    return EXIT_OK


# -- search ------------------------------------------------------------------------

def cmd_search(args) -> int:
    from certificates import netseed_certificate, packing_certificate, ruler_certificate, write_certificate
    from field_core import field_from_order
    import search

    threads = args.threads
    if args.target == "ruler":
        ctx = field_from_order(args.q)
        if args.all:
            count, reps = search.enumerate_inequivalent_rulers(ctx, args.k, args.rho, threads)
            # every orbit holds exactly k normalized rulers
            print(f"normalized rulers: {args.k * count}")
            print(f"equivalence classes: {count}")
            for i, rep in enumerate(reps, start=1):
                print(f"class {i}: {' '.join(str(b) for b in rep.elements)}")
            return EXIT_OK if count else EXIT_NOT_FOUND
        rulers = search.search_rulers(ctx, args.k, "first", args.rho)
        if not rulers:
            logging.info(f"❌ No Heffter ruler of size {args.k} over F_{args.q}")
            return EXIT_NOT_FOUND
        write_certificate(ruler_certificate(ctx, rulers[0].elements, args.rho,
                                            [f"Heffter ruler of size {args.k}"]), args.output)
        return EXIT_OK

    if args.target == "packing":
        ctx = field_from_order(args.q)
        packing = search.search_packing(ctx, args.k, args.n, args.mode, args.seed, args.rho, threads)
        if packing is None:
            logging.info(f"❌ No ({args.k};{args.n}) Heffter difference packing found ({args.mode})")
            return EXIT_NOT_FOUND
        comments = [f"Heffter difference packing of {args.n} ruler(s) of size {args.k}, {args.mode} search"]
        if args.seed is not None:
            comments.append(f"seed {args.seed}")
        write_certificate(packing_certificate(ctx, [r.elements for r in packing.rulers], args.rho, comments),
                          args.output)
        return EXIT_OK

    if args.target == "inequivalent":
        return _search_inequivalent(args)

    if args.target == "netseed":
        ctx = field_from_order(args.q)
        limit = args.limit if args.limit is not None else (
            SEARCH_SETTINGS['netseed_limit'] if args.strategy == "backtrack" else SEARCH_SETTINGS['netseed_random_trials'])
        seed = search.search_net_seed(ctx, args.strategy, args.seed, limit)
        if seed is None:
            logging.info(f"❌ No net seed found within {limit} trials")
            return EXIT_NOT_FOUND
        write_certificate(netseed_certificate(ctx, seed.x, seed.Y, [f"net seed, {args.strategy} search"]),
                          args.output)
        return EXIT_OK

    if args.target == "bound":
        bound = search.weil_threshold(args.k, args.n)
        print(f"Q(2k, k^2(k-1)n) in [{float(bound.q_low):.6f}, {float(bound.q_high):.6f}]")
        print(f"8k^5n = {bound.simple_bound}")
        print(f"below: {'yes' if bound.below else 'no'}")
        print(f"least prime power q = 2k+1 (mod 4k) above 8k^5n: {search.min_guaranteed_prime_power(args.k, args.n)}")
        return EXIT_OK

    if args.target == "ruler-table":
        from reports import generate_ruler_table_report, ruler_table_rows
        rows = ruler_table_rows(check_qmin=args.check_qmin)
        print(generate_ruler_table_report(rows), end="")
        bad = [r for r in rows if not r['valid'] or r['qmin_confirmed'] is False or any(
            not r[f'{key}_match'] and not r[f'{key}_misprint'] for key in ('density', 'extended'))]
        return EXIT_INVALID if bad else EXIT_OK

    raise ValueError(f"unknown search target {args.target}")


def _search_inequivalent(args) -> int:
    from checkpoint import CheckpointManager
    from reports import (
        generate_inequivalent_csv, generate_inequivalent_report, reference_mismatches, save_csv_report,
        save_text_report
    )
    from search import inequivalent_table

    checkpoint = None
    if args.checkpoint:
        checkpoint = CheckpointManager(args.checkpoint, job=f"inequivalent k={args.k} qmin={args.qmin} qmax={args.qmax}")
        if args.fresh:
            checkpoint.clear()
        elif checkpoint.should_resume():
            logging.info(f"🔄 Resuming: {checkpoint.get_progress_summary()}")

    try:
        rows = inequivalent_table(args.k, args.qmax, checkpoint, args.threads, args.qmin)
    except KeyboardInterrupt:
        logging.warning("⚠️  Search interrupted by user")
        if checkpoint is not None:
            checkpoint.save()
            logging.info("💾 Checkpoint saved - run again to resume from where you left off")
        return EXIT_INTERRUPTED

    report = generate_inequivalent_report(rows, args.k)
    print(report, end="")
    if args.csv:
        save_csv_report(generate_inequivalent_csv(rows, args.k), args.csv)
    if args.report:
        save_text_report(report, args.report)
    mismatches = reference_mismatches(rows, args.k)
    return EXIT_INVALID if mismatches else EXIT_OK


# -- cycles ------------------------------------------------------------------------

def _cycle_systems_from(path: str):
    from certificates import certificate_field, certificate_space, read_certificate
    from cycles import Cycle, CycleSystem, space_cycle_systems

    cert = read_certificate(path)
    ctx = certificate_field(cert)
    if cert.kind == "basecycles":
        return ctx, [CycleSystem(group=ctx, base=tuple(Cycle(b) for b in blocks), name=name)
                     for name, blocks in cert.classes]
    if cert.kind in ("space", "system"):
        return ctx, space_cycle_systems(ctx, certificate_space(ctx, cert))
    raise ValueError(f"cannot derive cycle systems from a {cert.kind} certificate")


def cmd_cycles(args) -> int:
    import cycles

    if args.target == "derive":
        from certificates import basecycles_certificate, write_certificate
        ctx, systems = _cycle_systems_from(args.path)
        valid = True
        for system in systems:
            report = cycles.verify_base_cycles(ctx, system.base)
            valid = valid and report.valid
            logging.info(f"{'✓' if report.valid else '❌'} {system.name}: {len(system.base)} base cycles")
        write_certificate(basecycles_certificate(ctx, systems, ["partial-sum base cycles, one class per parallel class"]),
                          args.output)
        if args.materialize:
            root, ext = os.path.splitext(args.materialize)
            for system in systems:
                target = args.materialize if len(systems) == 1 else f"{root}.{system.name}{ext}"
                cycles.materialize_cycles(system, target)
        return EXIT_OK if valid else EXIT_INVALID

    if args.target == "orthogonal":
        from itertools import combinations
        ctx, systems = _cycle_systems_from(args.path)
        check = cycles.base_systems_orthogonal if args.compact else cycles.cycle_systems_orthogonal
        failures = 0
        for A, B in combinations(systems, 2):
            ok, witness = check(A, B)
            if ok:
                print(f"✓ {A.name} and {B.name} are orthogonal")
            else:
                failures += 1
                print(f"❌ {A.name} and {B.name}: {witness[0]} and {witness[1]} share more than one edge")
        pairs = len(systems) * (len(systems) - 1) // 2
        print(f"{pairs - failures} of {pairs} pairs orthogonal")
        return EXIT_INVALID if failures else EXIT_OK

    if args.target == "sts-check":
        if args.v != 9:
            raise ValueError("exhaustive super-orthogonality check is available for v = 9 only")
        checkpoint = None
        if args.full and args.checkpoint:
            from checkpoint import CheckpointManager
            checkpoint = CheckpointManager(args.checkpoint, job="sts9 full")
            if args.fresh:
                checkpoint.clear()
        try:
            checked, found = cycles.sts9_super_orthogonal_pairs(full=args.full, checkpoint=checkpoint)
        except KeyboardInterrupt:
            if checkpoint is not None:
                checkpoint.save()
            return EXIT_INTERRUPTED
        print(f"disjoint STS(9) pairs checked: {checked}")
        print(f"super-orthogonal pairs: {found}")
        return EXIT_OK if found == 0 else EXIT_INVALID

    if args.target == "sts-search":
        pair = cycles.search_super_orthogonal(args.v, args.seed, args.limit, args.attempts)
        if pair is None:
            logging.info(f"❌ No super-orthogonal STS({args.v}) pair found")
            return EXIT_NOT_FOUND
        for label, sts in zip(("S", "S'"), pair):
            print(f"system {label}")
            for triple in sorted(sts):
                print(" ".join(str(x) for x in triple))
        return EXIT_OK

    raise ValueError(f"unknown cycles target {args.target}")


# -- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    # shared flags live on the leaf commands only, so they always follow the last subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--threads', type=int, default=SEARCH_SETTINGS['threads'],
                        help='Worker processes for searches (output does not depend on it)')
    common.add_argument('-o', '--output', default=None, help='Certificate destination (stdout by default)')
    common.add_argument('--no-check', action='store_true', help='Skip re-verification before writing')
    common.add_argument('--quiet', action='store_true', help='No progress bars or info logging')
    common.add_argument('--log-level', default=None, help=f'Logging level (default {LOG_LEVEL})')

    parser = argparse.ArgumentParser(
        description='Heffter systems, spaces, rulers and cycle systems',
        epilog='Example: python heffter.py construct f71 -o f71.cert'
    )
    commands = parser.add_subparsers(dest='command', required=True)

    verify = commands.add_parser('verify', parents=[common], help='Verify a certificate or a corpus')
    verify.add_argument('path', nargs='?')
    verify.add_argument('--kind', default=None, help='Expected certificate kind')
    verify.add_argument('--structured', action='store_true', help='key=value report')
    verify.add_argument('--corpus', nargs='?', const=GOLDEN_FOLDER, default=None,
                        help='Verify every certificate in a directory (HEFFTER_DATA by default)')
    verify.add_argument('--changed-only', action='store_true', help='Only new or changed certificates')
    verify.set_defaults(handler=cmd_verify)

    construct = commands.add_parser('construct', help='Build a Heffter space')
    targets = construct.add_subparsers(dest='target', required=True)
    pp = targets.add_parser('partial-partition', parents=[common])
    pp.add_argument('--q', type=int, required=True)
    pp.add_argument('--sizes', required=True, help='Pairwise coprime odd sizes, e.g. 3,5,7')
    dev = targets.add_parser('develop', parents=[common])
    dev.add_argument('--q', type=int, required=True)
    dev.add_argument('--rulers', required=True, help='Rulers as "b0,b1,...;b0,b1,..."')
    dev.add_argument('--rho', type=int, default=None, help='Generator of the squares')
    dev.add_argument('--extend', action='store_true', help='Append the coset class')
    net = targets.add_parser('net', parents=[common])
    net.add_argument('--q', type=int, required=True)
    net.add_argument('--x', type=int, required=True)
    net.add_argument('--y', required=True, help='Comma-separated Y')
    net.add_argument('--matrix', default=None, help='Write the labeling matrix here ("-" for stdout)')
    for name in BUILTIN_OBJECTS:
        builtin = targets.add_parser(name, parents=[common])
        builtin.add_argument('--matrix', default=None, help='Write the labeling matrix here (nets only)')
    construct.set_defaults(handler=cmd_construct)

    search = commands.add_parser('search', help='Search rulers, packings and seeds')
    targets = search.add_subparsers(dest='target', required=True)
    ruler = targets.add_parser('ruler', parents=[common])
    ruler.add_argument('--q', type=int, required=True)
    ruler.add_argument('--k', type=int, required=True)
    ruler.add_argument('--all', action='store_true', help='All normalized rulers, grouped into classes')
    ruler.add_argument('--rho', type=int, default=None)
    packing = targets.add_parser('packing', parents=[common])
    packing.add_argument('--q', type=int, required=True)
    packing.add_argument('--k', type=int, required=True)
    packing.add_argument('--n', type=int, required=True)
    packing.add_argument('--mode', choices=('exhaustive', 'greedy'), default='exhaustive')
    packing.add_argument('--seed', type=int, default=None)
    packing.add_argument('--rho', type=int, default=None)
    ineq = targets.add_parser('inequivalent', parents=[common])
    ineq.add_argument('--k', type=int, default=3)
    ineq.add_argument('--qmax', type=int, default=INEQUIVALENT_QMAX)
    ineq.add_argument('--qmin', type=int, default=2)
    ineq.add_argument('--csv', nargs='?', const=REPORT_TABLE_CSV, default=None, help='Also save the table as CSV')
    ineq.add_argument('--report', nargs='?', const=REPORT_TABLE_TXT, default=None, help='Also save the text table')
    ineq.add_argument('--checkpoint', nargs='?', const=CHECKPOINT_FILE, default=None,
                      help='Resume from / record progress in a checkpoint file')
    ineq.add_argument('--fresh', action='store_true', help='Discard an existing checkpoint')
    seed = targets.add_parser('netseed', parents=[common])
    seed.add_argument('--q', type=int, required=True)
    seed.add_argument('--strategy', choices=('backtrack', 'randomized'), default='backtrack')
    seed.add_argument('--seed', type=int, default=None, help='Random seed (required with --strategy randomized)')
    seed.add_argument('--limit', type=int, default=None)
    bound = targets.add_parser('bound', parents=[common])
    bound.add_argument('--k', type=int, required=True)
    bound.add_argument('--n', type=int, default=1)
    table = targets.add_parser('ruler-table', parents=[common])
    table.add_argument('--check-qmin', action='store_true', help='Also confirm no smaller q works (slow)')
    search.set_defaults(handler=cmd_search)

    cyc = commands.add_parser('cycles', help='Cycle systems and Steiner triple systems')
    targets = cyc.add_subparsers(dest='target', required=True)
    derive = targets.add_parser('derive', parents=[common])
    derive.add_argument('path')
    derive.add_argument('--materialize', default=None, help='Write every developed cycle to this file')
    orth = targets.add_parser('orthogonal', parents=[common])
    orth.add_argument('path')
    orth.add_argument('--compact', action='store_true', help='Check base cycles against translates only')
    sts_check = targets.add_parser('sts-check', parents=[common])
    sts_check.add_argument('--v', type=int, default=9)
    sts_check.add_argument('--full', action='store_true', help='Check every disjoint pair, not just one orbit')
    sts_check.add_argument('--checkpoint', nargs='?', const=CHECKPOINT_FILE, default=None)
    sts_check.add_argument('--fresh', action='store_true')
    sts_search = targets.add_parser('sts-search', parents=[common])
    sts_search.add_argument('--v', type=int, default=19)
    sts_search.add_argument('--seed', type=int, default=None, help='Random seed (required)')
    sts_search.add_argument('--limit', type=int, default=None, help='Backtracking nodes per attempt')
    sts_search.add_argument('--attempts', type=int, default=None)
    cyc.set_defaults(handler=cmd_cycles)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    level = args.log_level or ("WARNING" if args.quiet else LOG_LEVEL)
    setup_logging(level)
    set_progress_enabled(not args.quiet)

    import time
    start = time.time()
    try:
        code = args.handler(args)
    except CertificateParseError as e:
        logging.error(f"❌ Parse error: {e}")
        return EXIT_PARSE
    except FileNotFoundError as e:
        logging.error(f"❌ {e}")
        return EXIT_PARSE
    except PARAMETER_ERRORS as e:
        logging.error(f"❌ Bad parameters: {e}")
        return EXIT_PARSE
    except HeffterError as e:
        logging.error(f"❌ {type(e).__name__}: {e}")
        return EXIT_INVALID
    logging.debug(f"Finished in {format_duration(time.time() - start)}")
    return code


if __name__ == "__main__":
    sys.exit(main())
