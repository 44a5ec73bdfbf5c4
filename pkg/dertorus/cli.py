# vim: fileencoding=utf-8

#
# dertorus - exact computations with vector fields on the d-torus
#
# This program is free software; you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation; either version 2 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#

import argparse
import logging
import sys

from dertorus import config as dconfig
from dertorus import fields, glrep, sampling, verify
from dertorus.exact import DimensionError, LatticeError, lattice, zero
from dertorus.report import FAIL, dumps
from dertorus.witt import AlgebraSpecError

log = logging.getLogger('dertorus')

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_CONFIG = 2


def _list_of(convert):
    return lambda value: dconfig.parse_list(value, convert)


def get_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', metavar='FILE',
                        help='read key = value settings from FILE')
    common.add_argument('--verbose', '-v', action='store_true',
                        help='log debug messages to standard error')
    common.add_argument('--d', type=dconfig.parse_int,
                        help='number of torus variables (>= 2)')
    common.add_argument('--seed', type=dconfig.parse_int,
                        help='64-bit seed of all random streams')

    parser = argparse.ArgumentParser(
        prog='dertorus',
        description='Exact computations with vector fields on the d-torus')
    subparsers = parser.add_subparsers(dest='command')
    subparsers.required = True

    verify_parser = subparsers.add_parser(
        'verify', parents=[common],
        help='run the verification suites and print a JSON report')
    verify_parser.add_argument('--trials', type=dconfig.parse_int)
    verify_parser.add_argument('--k-max', dest='k_max',
                               type=dconfig.parse_int)
    verify_parser.add_argument('--box', type=dconfig.parse_int,
                               help='radius of the exponent box')
    verify_parser.add_argument('--jobs', '-j', type=dconfig.parse_int,
                               help='run suites in N worker processes')
    verify_parser.add_argument('--algebra', metavar='FILE',
                               help='simple Lie algebra data file')
    verify_parser.add_argument('--fault-inject', dest='fault_inject',
                               action='store_true', default=None,
                               help='perturb one structure constant and one '
                                    'matrix entry; the run must fail')
    verify_parser.add_argument('--suite', action='append', dest='suites',
                               choices=sorted(verify.SUITES),
                               help='run only this suite (repeatable)')

    module_args = argparse.ArgumentParser(add_help=False)
    module_args.add_argument('--weights', type=_list_of(dconfig.parse_int),
                             help='fundamental weight coefficients a1,...')
    module_args.add_argument('--b', type=dconfig.parse_rational,
                             help='scalar of the identity matrix, p/q')

    subparsers.add_parser(
        'rep', parents=[common, module_args],
        help='build V(psi, b) and dump its matrices')

    scan_parser = subparsers.add_parser(
        'scan', parents=[common, module_args],
        help='scan F^alpha(psi, b) for proper submodules')
    scan_parser.add_argument('--alpha', type=_list_of(dconfig.parse_rational),
                             help='alpha as p/q,...')
    scan_parser.add_argument('--mode', choices=dconfig.MODES)
    scan_parser.add_argument('--word-length', dest='word_length',
                             type=dconfig.parse_int)
    scan_parser.add_argument('--window', type=dconfig.parse_int)
    scan_parser.add_argument('--start-weight', type=_list_of(
        dconfig.parse_int), help='weight m of the start vector v(m)')
    scan_parser.add_argument('--random-start', action='store_true',
                             help='seeded random start vector instead of '
                                  'the first basis vector')
    return parser


def setup_logging(verbose):
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter('%(name)s: %(message)s'))
    log.addHandler(handler)
    log.setLevel(logging.DEBUG if verbose else logging.INFO)
    return handler


def build_config(args):
    overrides = {}
    if args.config:
        overrides = dconfig.load_config(args.config)
    cli_values = dict((name, getattr(args, name, None))
                      for name in dconfig.RunConfig._fields)
    return dconfig.make_config(overrides, cli_values)


def cmd_verify(config, args):
    entries = verify.run_suites(config, args.suites)
    print(dumps(entries))
    failed = [entry['identity'] for entry in entries
              if entry['status'] == FAIL]
    if failed:
        log.error('%d identities failed: %s', len(failed),
                  ', '.join(failed))
        return EXIT_FAILED
    log.info('all %d identities passed', len(entries))
    return EXIT_OK


def cmd_rep(config, args):
    psi = glrep.DominantWeight(config.weights, config.b)
    rep = glrep.build_irrep(psi, config.d)
    print(glrep.dump_rep(rep))
    report = glrep.check_rep(rep)
    expected = glrep.weyl_dim(psi, config.d)
    if rep.dim != expected:
        log.error('constructed dimension %d, Weyl formula %d',
                  rep.dim, expected)
        return EXIT_FAILED
    if not report.passed:
        log.error('relations fail: %r', report.witness)
        return EXIT_FAILED
    return EXIT_OK


def cmd_scan(config, args):
    p = verify.module_params(config)
    weight = zero(config.d)
    if args.start_weight:
        weight = lattice(args.start_weight)
        if len(weight) != config.d:
            raise DimensionError('start weight has {} coordinates for '
                                 'd={}'.format(len(weight), config.d))
    if args.random_start:
        rng = sampling.suite_rng(config.seed, 'scan')
        vector = tuple(sampling.random_rational(rng, nonzero=True)
                       for _ in range(p.dim))
    else:
        vector = tuple(1 if i == 0 else 0 for i in range(p.dim))
    start = fields.TensorFieldVector.single(weight, vector)
    result = fields.submodule_scan(p, start, config.word_length,
                                   config.window, config.mode)
    if args.random_start:
        result['seed'] = config.seed
    print(dumps(result))
    log.info(result['message'])
    return EXIT_OK


COMMANDS = {
    'verify': cmd_verify,
    'rep': cmd_rep,
    'scan': cmd_scan,
}


def main(argv=sys.argv):
    args = get_parser().parse_args(argv[1:])
    handler = setup_logging(args.verbose)
    try:
        try:
            config = build_config(args)
        except dconfig.ConfigError as e:
            print('Configuration error: {}'.format(e), file=sys.stderr)
            return EXIT_CONFIG
        try:
            return COMMANDS[args.command](config, args)
        except (DimensionError, LatticeError, AlgebraSpecError,
                fields.ScanError) as e:
            print('Error: {}'.format(e), file=sys.stderr)
            return EXIT_CONFIG
    finally:
        log.removeHandler(handler)


if __name__ == '__main__':
    sys.exit(main())
