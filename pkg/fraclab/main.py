# Copyright 2024-2026 The fraclab developers
#
# This file is part of fraclab.
#
# fraclab is free software: you can redistribute it and/or modify it under the
# terms of the GNU General Public License as published by the Free Software
# Foundation, either version 3 of the License, or (at your option) any later
# version.
#
# fraclab is distributed in the hope that it will be useful, but WITHOUT ANY
# WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS FOR
# A PARTICULAR PURPOSE.  See the GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License along with
# fraclab.  If not, see <https://www.gnu.org/licenses/>.
#
# vim: set fileencoding=utf-8 :
'''The ``fraclab`` command line.

Every subcommand validates its arguments into a
:class:`~.RunConfig` before computing anything. Validation errors exit
with status 2, numerical failures with status 1; both print a single line
``fraclab: <ErrorClass>: <message>`` on standard error.
'''

import sys
import argparse
from contextlib import contextmanager
from datetime import datetime
from pathlib import Path

import numpy as np

from . import __version__
from .Kernel.Exceptions import FraclabError, ValidationError
from .Kernel.Acceptance.AcceptanceSuite import (run_acceptance_suite,
                                                shipped_fixtures)
from .Kernel.Configuration.RunConfig import (RunConfig, BadArguments,
                                             parse_height)
from .Kernel.Configuration.Threads import worker_count
from .Kernel.Configuration.Tolerances import TIERS
from .Kernel.Dirichlet.Spectral import spectral_decompose
from .Kernel.Extension.ExtensionField import ExtensionField, PDE_SOLVE
from .Kernel.Extension.ExtensionSolver import (solve_extension_pde,
                                               neumann_trace)
from .Kernel.Extension.YMesh import YMesh, auto_height, build_graded_mesh
from .Kernel.FileHandlers.FileError import FunctionFormatError
from .Kernel.FileHandlers.Parser.ParseFunction import (load_function,
                                                       load_field)
from .Kernel.FileHandlers.Parser.ParseGraph import load_space
from .Kernel.FileHandlers.Writer.WriteReport import write_json, write_report
from .Kernel.FileHandlers.Writer.WriteTables import (write_table,
                                                     write_function,
                                                     write_field)
from .Kernel.Fractional.Poisson import poisson_extend
from .Kernel.Fractional.Routes import (ALL_ROUTES, ROUTES, apply_route,
                                       route_errors)
from .Kernel.Harnack.Domains import SELECTORS, parse_geometry
from .Kernel.Harnack.Geometry import (BallFamily, doubling_constant,
                                      poincare_constant)
from .Kernel.Harnack.HarnackExperiments import (harnack_constant,
                                                boundary_harnack_study)
from .Kernel.Harnack.ProductSpace import build_product_space
from .Kernel.Krein.KreinString import parse_string
from .Kernel.Krein.StringSolver import bernstein_from_string
from .Kernel.Krein.WeightChange import parse_weight, string_from_weight

#: exit status of validation errors
EXIT_INVALID = 2

#: exit status of numerical failures and failed acceptance runs
EXIT_FAILURE = 1


class ArgumentParser(argparse.ArgumentParser):
    '''An argument parser that raises :class:`~.BadArguments` instead of
    printing the usage and exiting.'''

    def error(self, message):
        raise BadArguments(f'{self.prog}: {message}')


@contextmanager
def output_stream(path):
    '''Open `path` for writing, or yield the standard output if `path` is
    `None`.'''
    if path is None:
        yield sys.stdout
        return
    try:
        ofile = Path(path).open('w', encoding='utf-8')
    except OSError as err:
        raise BadArguments(f'cannot write {path}: {err.strerror}') from None
    with ofile:
        yield ofile


def _lam_grid(config):
    return np.geomspace(config.lmin, config.lmax, config.lam_grid_size)


def _height(config, decomp):
    if config.height is not None:
        return config.height
    return auto_height(decomp.lambda_min_positive)


def cmd_space(config):
    '''Summarize a graph file.'''
    space = load_space(config.space)
    decomp = spectral_decompose(space)
    summary = {'format_version': 1, 'run': config.echo(),
               'n_vertices': len(space),
               'n_edges': len(space.edge_weights),
               'n_components': space.n_components,
               'total_measure': space.total_measure,
               'lambda_min_positive': decomp.lambda_min_positive,
               'lambda_max': decomp.lambda_max}
    with output_stream(config.out) as ofile:
        write_json(ofile, summary)


def cmd_frac_apply(config):
    '''Apply :math:`(-L)^s` by one route.'''
    space = load_space(config.space)
    f = load_function(config.f, space)
    decomp = spectral_decompose(space)
    result = apply_route(decomp, config.method, config.s, f, config.n_cells)
    with output_stream(config.out) as ofile:
        write_function(ofile, space, result, config.echo())


def cmd_frac_compare(config):
    '''Tabulate the pairwise errors of the four routes.'''
    space = load_space(config.space)
    f = load_function(config.f, space)
    decomp = spectral_decompose(space)
    errors = route_errors(decomp, config.s, f, ROUTES, config.n_cells)
    with output_stream(config.out) as ofile:
        write_table(ofile, list(errors), [list(errors.values())],
                    config.echo())


def cmd_extend_solve(config):
    '''Compute the extension field of a boundary datum.'''
    space = load_space(config.space)
    f = load_function(config.f, space)
    decomp = spectral_decompose(space)
    mesh = build_graded_mesh(_height(config, decomp), config.n_cells,
                             config.gamma, 1.0 - 2.0 * config.s)
    if config.method == 'semi-analytic':
        field = poisson_extend(decomp, config.s, f, mesh.nodes)
    else:
        field = solve_extension_pde(decomp, f, config.s, mesh=mesh,
                                    top_bc=config.top_bc, coarse=False)
    echo = dict(config.echo(), provenance=field.provenance)
    with output_stream(config.out) as ofile:
        write_field(ofile, field, echo)


def cmd_extend_dtn(config):
    '''Recover :math:`(-L)^s f` from a stored extension field.'''
    space = load_space(config.space)
    echo, labels, heights, values = load_field(config.field)
    s = config.s if config.s is not None else echo.get('s')
    if s is None:
        raise BadArguments(f'{config.field} does not record s: pass --s')
    order = [space.position(label) for label in labels]
    if sorted(order) != list(range(len(space))):
        raise FunctionFormatError(f'{config.field}: the field does not cover '
                                  f'the {len(space)} vertices of the space '
                                  'exactly once')
    ordered = np.empty_like(values)
    ordered[order] = values
    mesh = YMesh.from_nodes(heights, 1.0 - 2.0 * s)
    field = ExtensionField(space, mesh, ordered, s,
                           echo.get('provenance', PDE_SOLVE))
    trace = neumann_trace(field, s,
                          extrapolate=field.coarse_field() is not None)
    with output_stream(config.out) as ofile:
        write_function(ofile, space, trace, config.echo())


def _write_bernstein(config, string):
    table = bernstein_from_string(string, _lam_grid(config),
                                  worker_count(config.workers))
    with output_stream(config.out) as ofile:
        write_table(ofile, ('lambda', 'psi'), table.rows(), config.echo())


def cmd_krein_psi(config):
    '''Tabulate the spectral function of a string.'''
    _write_bernstein(config, parse_string(config.string))


def cmd_krein_from_weight(config):
    '''Tabulate the spectral function of the string of a weight.'''
    weight = parse_weight(config.weight)
    _write_bernstein(config, string_from_weight(weight, config.y_max))


def cmd_harnack_run(config):
    '''Run the interior Harnack experiment.'''
    if len(config.balls) != 1:
        raise BadArguments('harnack run needs exactly one --ball')
    (center, radius), = config.balls
    space = load_space(config.space)
    report = harnack_constant(spectral_decompose(space), config.s, center,
                              radius, config.delta, config.trials,
                              config.seed, config.workers,
                              verbose=config.verbosity > 0)
    with output_stream(config.out) as ofile:
        write_report(ofile, report, config.echo())


def cmd_bharnack_run(config):
    '''Run the boundary Harnack experiment on a shipped domain.'''
    domain = parse_geometry(config.geometry)
    report = boundary_harnack_study(domain, config.s, config.xi, config.r,
                                    config.trials, config.seed,
                                    refine=config.refine,
                                    workers=config.workers,
                                    verbose=config.verbosity > 0)
    with output_stream(config.out) as ofile:
        write_report(ofile, report, config.echo())


def _geometry_family(config):
    if not config.balls:
        raise BadArguments(f'{config.command} needs at least one --ball')
    space = load_space(config.space)
    if config.s is None:
        return space, BallFamily(space, config.balls)
    decomp = spectral_decompose(space)
    product = build_product_space(space, config.s, _height(config, decomp),
                                  config.n_cells, config.gamma)
    pairs = [(product.space.vertex_ids[product.position(center, 0)], radius)
             for center, radius in config.balls]
    return product, BallFamily(product, pairs)


def cmd_geometry_doubling(config):
    '''Estimate the doubling constant of a space or of its product.'''
    source, family = _geometry_family(config)
    with output_stream(config.out) as ofile:
        write_report(ofile, doubling_constant(source, family), config.echo())


def cmd_geometry_poincare(config):
    '''Estimate the Poincaré constant of a space or of its product.'''
    source, family = _geometry_family(config)
    report = poincare_constant(source, family, config.dilation,
                               seed=config.seed)
    with output_stream(config.out) as ofile:
        write_report(ofile, report, config.echo())


def cmd_accept(config):
    '''Run the acceptance suite.

    :returns: the exit status, :data:`EXIT_FAILURE` if a criterion failed
    '''
    fixtures = config.fixtures or shipped_fixtures()
    summary = run_acceptance_suite(fixtures, config.out or '.',
                                   tier=config.tolerance_tier,
                                   stress=config.stress,
                                   verbose=config.verbosity > 0,
                                   run_config=config.echo())
    for criterion in summary.criteria:
        status = 'pass' if criterion.passed else 'FAIL'
        print(f'{status}  {criterion.number:2d}  {criterion.title}',
              flush=True)
    return 0 if summary.passed else EXIT_FAILURE


COMMANDS = {'space': cmd_space,
            'frac apply': cmd_frac_apply,
            'frac compare': cmd_frac_compare,
            'extend solve': cmd_extend_solve,
            'extend dtn': cmd_extend_dtn,
            'krein psi': cmd_krein_psi,
            'krein from-weight': cmd_krein_from_weight,
            'harnack run': cmd_harnack_run,
            'bharnack run': cmd_bharnack_run,
            'geometry doubling': cmd_geometry_doubling,
            'geometry poincare': cmd_geometry_poincare,
            'accept': cmd_accept}


def _add_common(parser, space=True, out=True):
    if space:
        parser.add_argument('--space', metavar='GRAPH_JSON', required=True,
                            help='graph file')
    if out:
        parser.add_argument('--out', metavar='PATH', default=None,
                            help='output file (standard output by default)')


def _add_order(parser, required=True):
    parser.add_argument('--s', type=float, required=required,
                        help='fractional order, 0 < s < 1')


def _add_mesh(parser, n_default=256):
    parser.add_argument('--N', dest='n_cells', type=int, default=n_default,
                        help=f'number of mesh cells (default: {n_default})')
    parser.add_argument('--Y', dest='height', type=parse_height,
                        default=None, help='truncation height, or "auto" '
                        '(default)')
    parser.add_argument('--gamma', type=float, default=None,
                        help='mesh grading exponent, at least 1')


def _add_trials(parser, trials):
    parser.add_argument('--trials', type=int, default=trials,
                        help=f'number of random trials (default: {trials})')
    parser.add_argument('--seed', type=int, default=None,
                        help='seed of the random data (required)')
    parser.add_argument('--workers', type=int, default=None,
                        help='number of threads, capped by FRACLAB_THREADS')


def _add_lam_grid(parser):
    parser.add_argument('--lmin', type=float, default=0.01,
                        help='smallest spectral parameter (default: 0.01)')
    parser.add_argument('--lmax', type=float, default=100.0,
                        help='largest spectral parameter (default: 100)')
    parser.add_argument('--points', type=int, default=41,
                        help='number of geometrically spaced parameters '
                        '(default: 41)')
    parser.add_argument('--workers', type=int, default=None,
                        help='number of threads, capped by FRACLAB_THREADS')


def build_parser():
    '''Build the argument parser of the command line.'''
    parser = ArgumentParser(
        prog='fraclab', description='Numerical laboratory for fractional '
        'powers of Dirichlet-form generators on graphs.', allow_abbrev=False)
    parser.add_argument('-v', '--verbose', dest='verbosity',
                        help='increase verbosity', action='count', default=0)
    parser.add_argument('-V', '--version', action='version',
                        version=__version__)
    commands = parser.add_subparsers(dest='group', metavar='COMMAND',
                                     required=True)

    space = commands.add_parser('space', help='summarize a graph file',
                                allow_abbrev=False)
    _add_common(space)

    frac = commands.add_parser('frac', help='fractional powers',
                               allow_abbrev=False)
    frac_cmds = frac.add_subparsers(dest='action', required=True)
    apply = frac_cmds.add_parser('apply', help='apply (-L)^s by one route',
                                 allow_abbrev=False)
    _add_common(apply)
    _add_order(apply)
    apply.add_argument('--method', choices=ALL_ROUTES, default='spectral',
                       help='evaluation route (default: spectral)')
    apply.add_argument('--f', required=True, metavar='FUNCTION_TSV',
                       help='function table')
    apply.add_argument('--N', dest='n_cells', type=int, default=256,
                       help='mesh cells of the extension route '
                       '(default: 256)')
    compare = frac_cmds.add_parser('compare', help='compare the four routes',
                                   allow_abbrev=False)
    _add_common(compare)
    _add_order(compare)
    compare.add_argument('--f', required=True, metavar='FUNCTION_TSV',
                         help='function table')
    compare.add_argument('--N', dest='n_cells', type=int, default=256,
                         help='mesh cells of the extension route '
                         '(default: 256)')

    extend = commands.add_parser('extend', help='extension problem',
                                 allow_abbrev=False)
    extend_cmds = extend.add_subparsers(dest='action', required=True)
    solve = extend_cmds.add_parser('solve', help='solve the extension '
                                   'equation', allow_abbrev=False)
    _add_common(solve)
    _add_order(solve)
    solve.add_argument('--f', required=True, metavar='FUNCTION_TSV',
                       help='boundary datum')
    _add_mesh(solve)
    solve.add_argument('--top-bc', choices=('neumann', 'dirichlet-modal'),
                       default='neumann', help='top boundary condition')
    solve.add_argument('--method', choices=('pde', 'semi-analytic'),
                       default='pde', help='finite volumes or the closed '
                       'form (default: pde)')
    dtn = extend_cmds.add_parser('dtn', help='Neumann trace of a stored '
                                 'field', allow_abbrev=False)
    _add_common(dtn)
    _add_order(dtn, required=False)
    dtn.add_argument('--field', required=True, metavar='FIELD_TSV',
                     help='field table written by "extend solve"')

    krein = commands.add_parser('krein', help='Krein strings',
                                allow_abbrev=False)
    krein_cmds = krein.add_subparsers(dest='action', required=True)
    psi = krein_cmds.add_parser('psi', help='spectral function of a string',
                                allow_abbrev=False)
    _add_common(psi, space=False)
    psi.add_argument('--string', required=True,
                     help='"constant" or a JSON string description')
    _add_lam_grid(psi)
    from_weight = krein_cmds.add_parser('from-weight', help='spectral '
                                        'function of an extension weight',
                                        allow_abbrev=False)
    _add_common(from_weight, space=False)
    from_weight.add_argument('--weight', required=True,
                             help='"constant" or a JSON weight description')
    from_weight.add_argument('--ymax', dest='y_max', type=float,
                             default=1000.0, help='top of the sampled '
                             'interval (default: 1000)')
    _add_lam_grid(from_weight)

    harnack = commands.add_parser('harnack', help='interior Harnack '
                                  'experiment', allow_abbrev=False)
    harnack_cmds = harnack.add_subparsers(dest='action', required=True)
    run = harnack_cmds.add_parser('run', allow_abbrev=False)
    _add_common(run)
    _add_order(run)
    run.add_argument('--ball', dest='balls', action='append', default=[],
                     metavar='CENTER:R', required=True, help='the ball')
    run.add_argument('--delta', type=float, default=0.5,
                     help='probe fraction (default: 0.5)')
    _add_trials(run, 200)

    bharnack = commands.add_parser('bharnack', help='boundary Harnack '
                                   'experiment', allow_abbrev=False)
    bharnack_cmds = bharnack.add_subparsers(dest='action', required=True)
    brun = bharnack_cmds.add_parser('run', allow_abbrev=False)
    _add_common(brun, space=False)
    _add_order(brun)
    brun.add_argument('--geometry', required=True,
                      help='gridN-squareM or gridN-lM')
    brun.add_argument('--xi', choices=SELECTORS, default='corner',
                      help='boundary vertex (default: corner)')
    brun.add_argument('--r', type=float, required=True, help='probe radius')
    brun.add_argument('--no-refine', dest='refine', action='store_false',
                      help='skip the refined domain')
    _add_trials(brun, 50)

    geometry = commands.add_parser('geometry', help='doubling and Poincaré '
                                   'constants', allow_abbrev=False)
    geometry_cmds = geometry.add_subparsers(dest='action', required=True)
    for name in ('doubling', 'poincare'):
        sub = geometry_cmds.add_parser(name, allow_abbrev=False)
        _add_common(sub)
        sub.add_argument('--ball', dest='balls', action='append', default=[],
                         metavar='CENTER:R', help='a ball (repeatable)')
        _add_order(sub, required=False)
        sub.add_argument('--N', dest='n_cells', type=int, default=16,
                         help='cells of the half mesh of the product space '
                         '(default: 16)')
        sub.add_argument('--Y', dest='height', type=parse_height,
                         default=None, help='half height of the product '
                         'space, or "auto" (default)')
        sub.add_argument('--gamma', type=float, default=None,
                         help='grading of the half mesh')
        if name == 'poincare':
            sub.add_argument('--dilation', type=float, default=2.0,
                             help='ball dilation (default: 2)')
            sub.add_argument('--seed', type=int, default=None,
                             help='seed of the random candidates '
                             '(required)')

    accept = commands.add_parser('accept', help='run the acceptance suite',
                                 allow_abbrev=False)
    accept.add_argument('--fixtures', metavar='DIR', default=None,
                        help='fixture directory (default: the shipped '
                        'fixtures)')
    accept.add_argument('--out', metavar='DIR', default=None,
                        help='directory of acceptance.json and '
                        'acceptance.tsv (default: current directory)')
    accept.add_argument('--tolerance-tier', choices=TIERS, default='strict',
                        help='tolerance tier (default: strict)')
    accept.add_argument('--stress', action='store_true',
                        help='add the s = 0.05 stress run')
    return parser


def parse_args(argv):
    '''Parse and validate the command-line arguments.

    :returns: the :class:`~.RunConfig`
    :raises BadArguments: if an argument is missing or out of range
    '''
    args = build_parser().parse_args(argv)
    command = ' '.join(filter(None, (args.group,
                                     getattr(args, 'action', None))))
    args.command = command
    return RunConfig.from_namespace(args)


def main(argv=None):
    '''Main entry point for the CLI tool.

    :returns: the exit status
    '''
    argv = sys.argv[1:] if argv is None else argv
    try:
        config = parse_args(argv)
        verbose = config.verbosity > 0
        start = datetime.now()
        if verbose:
            print(f'started at: {start.isoformat()}', flush=True)
        status = COMMANDS[config.command](config) or 0
        if verbose:
            end = datetime.now()
            print(f'finished at: {end.isoformat()}')
            print(f'elapsed time: {(end - start).total_seconds()} s',
                  flush=True)
        return status
    except ValidationError as err:
        print(f'fraclab: {type(err).__name__}: {err}', file=sys.stderr)
        return EXIT_INVALID
    except FraclabError as err:
        print(f'fraclab: {type(err).__name__}: {err}', file=sys.stderr)
        return EXIT_FAILURE


if __name__ == '__main__':
    sys.exit(main())
