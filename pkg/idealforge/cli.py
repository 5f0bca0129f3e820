#!/usr/bin/env python3
"""
Command Line Interface for idealforge

Data goes to stdout (ideal files, tables, JSON); diagnostics go to stderr.
Exit codes: 0 success, 1 a check failed (or a polynomial is not a member),
2 invalid input.
"""
import argparse
import sys
from typing import Any, List, Optional

import orjson
from tabulate import tabulate

from .checks.check_manager import check_manager
from .config import config
from .errors import BudgetExceeded, IdealForgeError, UnknownCheckError
from .family.displays import emit_named, list_names
from .family.generators import FamilyParams
from .family.primes import count_primes_formula, count_primes_listed, enumerate_primes
from .groebner import budget, member_certificate
from .ideals import (Ideal, eliminate, ideal_intersect, ideal_quotient, min_degree_certificate,
                     read_ideal_file, write_ideal_text)
from .monitoring import monitoring
from .orchestrator import run_suite_sync, suite_succeeded
from .poly import MonomialOrder, format_poly, parse_poly
from .scalars import field_from_name

logger = monitoring.get_logger(__name__)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def _emit_json(data: Any):
    sys.stdout.write(orjson.dumps(data, option=orjson.OPT_SORT_KEYS | orjson.OPT_INDENT_2).decode() + "\n")


def _emit_ideal(I: Ideal, comment: Optional[str] = None):
    sys.stdout.write(write_ideal_text(I, comment))


def _read(path: str, field_name: str) -> Ideal:
    return read_ideal_file(path, field_from_name(field_name))


def _params(args) -> FamilyParams:
    return FamilyParams(args.n, args.d)


def _refused(args) -> bool:
    if config.is_enabled(args.n, args.d, args.force):
        return False
    print(f"Refused: (n, d) = ({args.n}, {args.d}) is outside the enabled budget; use --force",
          file=sys.stderr)
    return True


# Family

def cmd_family_emit(args) -> int:
    params = _params(args)
    field = field_from_name(args.field, args.n, args.d)
    I = emit_named(args.name, params, field, args.literal)
    if args.format == 'json':
        _emit_json({
            'name': args.name,
            'params': params.to_dict(),
            'field': field.name,
            'ring': list(I.ring.variables),
            'generators': [format_poly(g) for g in I.generators],
        })
    else:
        _emit_ideal(I, f"{args.name} of K({args.n},{args.d}), {len(I)} generators")
    return EXIT_OK


def cmd_family_list(args) -> int:
    names = list_names(_params(args))
    if args.format == 'json':
        _emit_json(names)
    else:
        print("\n".join(names))
    return EXIT_OK


# Ideal algebra on files

def cmd_gb(args) -> int:
    I = _read(args.file, args.field)
    order = MonomialOrder.parse(args.order)
    gb = I.groebner_basis(order)
    _emit_ideal(Ideal(I.ring, gb.basis), f"reduced Gröbner basis, order {order}")
    return EXIT_OK


def cmd_member(args) -> int:
    I = _read(args.file, args.field)
    f = parse_poly(I.ring, args.poly)
    certificate = member_certificate(I, f)
    if certificate is None:
        print(tabulate([['member', 'no'], ['normal form', format_poly(I.reduce(f))]], tablefmt="plain"))
        return EXIT_FAIL
    rows = [['member', 'yes'], ['certificate degree (Gröbner)', certificate.max_coeff_degree]]
    if args.min_degree:
        found = min_degree_certificate(I, f, certificate.max_coeff_degree, args.max_unknowns)
        rows.append(['certificate degree (minimal)', found[0] if found else 'not found'])
    print(tabulate(rows, tablefmt="plain"))
    return EXIT_OK


def cmd_colon(args) -> int:
    I = _read(args.file, args.field)
    if args.divisor_file:
        J = _read(args.divisor_file, args.field).embed(I.ring)
        result = ideal_quotient(I, J)
        label = J.name
    else:
        result = ideal_quotient(I, parse_poly(I.ring, args.divisor))
        label = args.divisor
    _emit_ideal(result, f"{I.name} : {label}")
    return EXIT_OK


def cmd_intersect(args) -> int:
    I = _read(args.a, args.field)
    J = _read(args.b, args.field).embed(I.ring)
    _emit_ideal(ideal_intersect(I, J), f"{I.name} ∩ {J.name}")
    return EXIT_OK


def cmd_eliminate(args) -> int:
    I = _read(args.file, args.field)
    names = [v for v in args.vars.replace(',', ' ').split() if v]
    _emit_ideal(eliminate(I, names), f"{I.name} without {', '.join(names)}")
    return EXIT_OK


# Verification

def cmd_verify(args) -> int:
    if args.list:
        rows = [[check_id, info['kind'], ', '.join(info['depends_on']), info['description']]
                for check_id, info in check_manager.list_checks().items()]
        print(tabulate(rows, headers=['check', 'kind', 'depends on', 'description'], tablefmt="simple"))
        return EXIT_OK
    overrides = {
        'checks': [args.check] if args.check else None,
        'params': [(args.n or 2, args.d or 2)] if (args.n or args.d) else None,
        'field': args.field,
        'workers': args.workers,
        'seed': args.seed,
        'force': True if args.force else None,
        'literal': True if args.literal else None,
    }
    if not args.config and overrides['checks'] is None:
        overrides['checks'] = ['all']
    suite = config.load_suite(args.config, overrides)
    reports = run_suite_sync(suite, check_manager)
    if args.format == 'json':
        _emit_json([r.to_dict(timings=not args.no_timings) for r in reports])
    else:
        rows = []
        for r in reports:
            detail = r.witness.get('step', '') if r.witness else (r.notes[-1] if r.notes else '')
            rows.append([r.check_id, r.params.n, r.params.d, r.status.value,
                         '' if r.max_coeff_degree is None else r.max_coeff_degree,
                         f"{r.elapsed_ms:.0f}", detail])
        print(tabulate(rows, headers=['check', 'n', 'd', 'status', 'cert deg', 'ms', 'detail'],
                       tablefmt="simple"))
    return EXIT_OK if suite_succeeded(reports) else EXIT_FAIL


def cmd_primes(args) -> int:
    if _refused(args):
        return EXIT_OK
    field = field_from_name(args.field, args.n, args.d)
    enumeration = enumerate_primes(_params(args), field, dedup=not args.no_dedup)
    for notice in enumeration.notices:
        print(notice, file=sys.stderr)
    if args.format == 'json':
        _emit_json(enumeration.to_dict())
        return EXIT_OK
    rows = [[c.label, c.family_id, c.depth, len(c.ideal)] for c in enumeration.candidates]
    print(tabulate(rows, headers=['candidate', 'family', 'depth', 'generators'], tablefmt="simple"))
    return EXIT_OK


def cmd_count(args) -> int:
    params = _params(args)
    formula = count_primes_formula(params)
    listed = count_primes_listed(params)
    enumerated: Any = 'refused'
    kept: Any = 'refused'
    if not _refused(args):
        enumeration = enumerate_primes(params, field_from_name(args.field, args.n, args.d))
        enumerated, kept = enumeration.raw_count, len(enumeration)
    if args.format == 'json':
        _emit_json({'params': params.to_dict(), 'formula': formula, 'listed': listed,
                    'enumerated': enumerated, 'distinct': kept})
    else:
        print(tabulate([[args.n, args.d, formula, listed, enumerated, kept]],
                       headers=['n', 'd', 'formula', 'listed', 'enumerated', 'distinct'], tablefmt="simple"))
    return EXIT_OK


# Parser

def _family_args(parser: argparse.ArgumentParser, field_default: str = 'default'):
    parser.add_argument('--n', type=int, default=2, help='Number of levels (n >= 2)')
    parser.add_argument('--d', type=int, default=2, help='Degree parameter (d >= 2)')
    parser.add_argument('--field', default=field_default, help="QQ, default, or a prime")
    parser.add_argument('--format', choices=['text', 'json'], default='text')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='idealforge',
                                     description='Ideal algebra and verification for the K(n, d) family')
    sub = parser.add_subparsers(dest='command', required=True)

    family = sub.add_parser('family', help='Construct family ideals')
    family_sub = family.add_subparsers(dest='family_command', required=True)
    emit = family_sub.add_parser('emit', help='Print a named ideal as an ideal file')
    emit.add_argument('name')
    _family_args(emit)
    emit.add_argument('--literal', action='store_true', help='Build displays as printed')
    emit.set_defaults(handler=cmd_family_emit)
    names = family_sub.add_parser('list', help='List emit-able ideal names')
    _family_args(names)
    names.set_defaults(handler=cmd_family_list)

    gb = sub.add_parser('gb', help='Reduced Gröbner basis of an ideal file')
    gb.add_argument('file')
    gb.add_argument('--order', default='grevlex', help='grevlex, lex or block:<k>')
    gb.add_argument('--field', default='QQ')
    gb.set_defaults(handler=cmd_gb)

    member = sub.add_parser('member', help='Membership with certificate degrees')
    member.add_argument('file')
    member.add_argument('poly')
    member.add_argument('--field', default='QQ')
    member.add_argument('--min-degree', action='store_true',
                        help='Also search the minimal certificate degree by linear algebra')
    member.add_argument('--max-unknowns', type=int, default=None)
    member.set_defaults(handler=cmd_member)

    colon = sub.add_parser('colon', help='Colon ideal by a polynomial or an ideal file')
    colon.add_argument('file')
    divisor = colon.add_mutually_exclusive_group(required=True)
    divisor.add_argument('divisor', nargs='?', help='Polynomial to divide by')
    divisor.add_argument('--divisor-file', help='Ideal file to divide by')
    colon.add_argument('--field', default='QQ')
    colon.set_defaults(handler=cmd_colon)

    intersect = sub.add_parser('intersect', help='Intersection of two ideal files')
    intersect.add_argument('a')
    intersect.add_argument('b')
    intersect.add_argument('--field', default='QQ')
    intersect.set_defaults(handler=cmd_intersect)

    elim = sub.add_parser('eliminate', help='Eliminate variables')
    elim.add_argument('file')
    elim.add_argument('--vars', required=True, help='Comma separated variable names')
    elim.add_argument('--field', default='QQ')
    elim.set_defaults(handler=cmd_eliminate)

    verify = sub.add_parser('verify', help='Run registered checks')
    verify.add_argument('check', nargs='?', help="Check id or 'all'")
    verify.add_argument('--n', type=int, default=None)
    verify.add_argument('--d', type=int, default=None)
    verify.add_argument('--field', default=None, help="QQ, default, or a prime")
    verify.add_argument('--config', default=None, help='TOML suite file with a [suite] table')
    verify.add_argument('--workers', type=int, default=None)
    verify.add_argument('--seed', type=int, default=None)
    verify.add_argument('--literal', action='store_true', help='Check the displays as printed')
    verify.add_argument('--force', action='store_true', help='Run outside the enabled budget')
    verify.add_argument('--format', choices=['text', 'json'], default='text')
    verify.add_argument('--no-timings', action='store_true', help='Omit elapsed_ms from JSON')
    verify.add_argument('--list', action='store_true', help='List registered checks')
    verify.set_defaults(handler=cmd_verify)

    primes = sub.add_parser('primes', help='Enumerate candidate associated primes')
    _family_args(primes)
    primes.add_argument('--force', action='store_true')
    primes.add_argument('--no-dedup', action='store_true', help='Keep duplicate candidates')
    primes.set_defaults(handler=cmd_primes)

    count = sub.add_parser('count', help='Prime count formula against the enumeration')
    _family_args(count)
    count.add_argument('--force', action='store_true')
    count.set_defaults(handler=cmd_count)
    return parser


def run(argv: Optional[List[str]] = None) -> int:
    """Parse argv and dispatch; returns the exit code"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    logger.debug("Dispatching command", context={"command": args.command})
    try:
        config.validate()
        with budget(config.budget_seconds):
            return args.handler(args)
    except BudgetExceeded as e:
        print(f"Refused: {e}", file=sys.stderr)
        return EXIT_USAGE
    except UnknownCheckError as e:
        print(f"Error: {e.args[0]}", file=sys.stderr)
        return EXIT_USAGE
    except (IdealForgeError, ValueError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE


def main():
    """Main entry point"""
    sys.exit(run())


if __name__ == "__main__":
    main()
