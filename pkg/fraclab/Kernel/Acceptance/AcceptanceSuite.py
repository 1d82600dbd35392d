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
'''The acceptance suite.

The suite runs ten criteria on the shipped fixtures and on generated
spaces. Each criterion is a list of :class:`Check` objects comparing a
measured value with a threshold of the selected :class:`~.Tolerances` tier.
The outcome is written to ``acceptance.json`` (machine-readable) and
``acceptance.tsv`` (one line per check). Neither file records timings, so
that two runs with the same configuration produce identical files.
'''

from math import isfinite
from pathlib import Path
import warnings

import numpy as np

from ..Configuration.Tolerances import tolerances
from ..Exceptions import NumericalError
from ..Dirichlet.DirichletSpace import is_markovian
from ..Dirichlet.Graphs import cycle_space, grid_space, torus_space
from ..Dirichlet.Spectral import spectral_decompose, heat_apply
from ..FileHandlers.FileError import FixtureMissing
from ..FileHandlers.Parser.ParseGraph import load_space
from ..FileHandlers.Writer.WriteReport import write_json
from ..FileHandlers.Writer.WriteTables import write_table
from ..Fractional.FracConfig import FracConfig
from ..Fractional.FractionalPowers import frac_spectral, extension_constant
from ..Fractional.JumpKernel import kernel_decay_profile
from ..Fractional.Poisson import harmonic_dtn
from ..Fractional.Routes import apply_route, relative_error
from ..Harnack.Domains import parse_geometry
from ..Harnack.EvenExtension import even_extension_study
from ..Harnack.Geometry import (ball_family, doubling_constant,
                                poincare_constant)
from ..Harnack.HarnackExperiments import (harnack_constant,
                                          boundary_harnack_study)
from ..Harnack.IntrinsicMetric import intrinsic_metric_bounds, random_pairs
from ..Harnack.NonlocalDirichlet import nonlocal_dirichlet_solve
from ..Harnack.ProductSpace import build_product_space
from ..Krein.KreinString import (constant_string, power_law_string,
                                 sampled_string)
from ..Krein.StringSolver import bernstein_from_string
from ..Krein.WeightChange import PowerWeight, string_from_weight
from ..Progress import Progress

#: the graph files the suite reads from the fixture directory
FIXTURE_NAMES = ('ring10.json', 'path32.json', 'grid8.json')

#: fractional orders of the four-route criterion
ORDERS = (0.25, 0.5, 0.75)

#: the order of the stress run
STRESS_ORDER = 0.05

#: version of the acceptance layout
FORMAT_VERSION = 1


def shipped_fixtures():
    '''The directory of the fixtures distributed with the package.'''
    return Path(__file__).resolve().parents[2] / 'Fixtures'


class Check:
    '''One measured value against its threshold.

    A check passes when the value is finite and does not exceed the
    threshold. A check without threshold only records the value.

    >>> Check('error', 1e-8, 1e-6).passed
    True
    >>> Check('error', float('nan'), 1e-6).passed
    False
    '''

    def __init__(self, label, value, threshold=None):
        self.label = label
        self.value = float(value)
        self.threshold = None if threshold is None else float(threshold)

    def __repr__(self):
        return (f'Check({self.label!r}, {self.value!r}, '
                f'{self.threshold!r})')

    @property
    def passed(self):
        '''Whether the value is finite and within the threshold.'''
        if not isfinite(self.value):
            return False
        return self.threshold is None or self.value <= self.threshold

    def as_dict(self):
        '''The JSON layout of the check.'''
        return {'label': self.label, 'value': self.value,
                'threshold': self.threshold, 'passed': self.passed}


class Criterion:
    '''The checks of one acceptance criterion, with the warnings they
    raised.'''

    def __init__(self, number, title, checks, warned=()):
        self.number = number
        self.title = title
        self.checks = list(checks)
        self.warnings = sorted(set(warned))

    def __repr__(self):
        return (f'Criterion({self.number}, {self.title!r}, '
                f'passed={self.passed})')

    @property
    def passed(self):
        '''Whether every check passed.'''
        return all(check.passed for check in self.checks)

    def as_dict(self):
        '''The JSON layout of the criterion.'''
        return {'number': self.number, 'title': self.title,
                'passed': self.passed, 'warnings': self.warnings,
                'checks': [check.as_dict() for check in self.checks]}


class AcceptanceSummary:
    '''The outcome of an acceptance run.'''

    def __init__(self, criteria, tier, run_config=None):
        self.criteria = list(criteria)
        self.tier = tier
        self.run_config = dict(run_config or {})

    def __repr__(self):
        return (f'AcceptanceSummary(n_criteria={len(self.criteria)}, '
                f'passed={self.passed})')

    @property
    def passed(self):
        '''Whether every criterion passed.'''
        return all(criterion.passed for criterion in self.criteria)

    def as_dict(self):
        '''The JSON layout of ``acceptance.json``.'''
        return {'format_version': FORMAT_VERSION, 'tier': self.tier,
                'passed': self.passed, 'run': self.run_config,
                'criteria': [criterion.as_dict()
                             for criterion in self.criteria]}

    def rows(self):
        '''The lines of ``acceptance.tsv``.'''
        for criterion in self.criteria:
            for check in criterion.checks:
                yield (criterion.number, check.label, check.value,
                       '' if check.threshold is None else check.threshold,
                       'pass' if check.passed else 'FAIL')


def load_fixtures(directory):
    '''Load the fixture spaces, keyed by file stem.

    :raises FixtureMissing: if a fixture file does not exist
    '''
    directory = Path(directory)
    spaces = {}
    for name in FIXTURE_NAMES:
        path = directory / name
        if not path.is_file():
            raise FixtureMissing(f'fixture {path} not found')
        spaces[path.stem] = load_space(path)
    return spaces


def _random_data(space, n_functions, seed):
    rng = np.random.default_rng(seed)
    return rng.standard_normal((len(space), n_functions))


def four_route_checks(decomps, tol, orders=ORDERS, n_functions=20,
                      routes=('subord', 'kernel', 'extension',
                              'semi-analytic')):
    '''The routes against the spectral reference on every fixture.'''
    thresholds = {'subord': tol.subordination, 'kernel': tol.kernel,
                  'extension': tol.extension,
                  'semi-analytic': tol.semi_analytic}
    checks = []
    for seed, (name, decomp) in enumerate(decomps.items()):
        f = _random_data(decomp.space, n_functions, seed)
        for s in orders:
            exact = frac_spectral(decomp, s, f)
            for method in routes:
                approx = apply_route(decomp, method, s, f)
                error = max(relative_error(approx[:, k], exact[:, k])
                            for k in range(n_functions))
                checks.append(Check(f'{name} s={s} {method}', error,
                                    thresholds[method]))
    return checks


def harmonic_checks(decomps, tol, n_functions=20):
    '''The unweighted normal derivative at order 1/2.'''
    checks = []
    for seed, (name, decomp) in enumerate(decomps.items()):
        f = _random_data(decomp.space, n_functions, 100 + seed)
        exact = frac_spectral(decomp, 0.5, f)
        error = max(relative_error(harmonic_dtn(decomp, f[:, k]),
                                   exact[:, k])
                    for k in range(n_functions))
        checks.append(Check(f'{name} harmonic dtn', error, tol.harmonic_dtn))
    return checks


def krein_checks(tol, n_random=5):
    '''The unit string and the Bernstein properties of several strings.'''
    lams = np.geomspace(1e-2, 1e2, 41)
    unit = bernstein_from_string(constant_string(), lams)
    checks = [Check('unit string max |psi - sqrt(lambda)|',
                    np.max(np.abs(unit.psi - np.sqrt(lams))), tol.krein)]
    strings = {'constant': constant_string(),
               'power-law': power_law_string(1.0, -0.5)}
    for seed in range(n_random):
        rng = np.random.default_rng(seed)
        strings[f'random-{seed}'] = sampled_string(
            np.linspace(0.0, 400.0, 41), rng.uniform(0.5, 2.0, 41))
    for name, string in strings.items():
        flags = bernstein_from_string(string, np.geomspace(1e-2, 1e2, 25)
                                      ).flags()
        failed = sum(not flag for flag in flags.values())
        checks.append(Check(f'{name} bernstein flags failed', failed, 0))
    return checks


def weight_loop_checks(tol, orders=(0.3, 0.5, 0.7)):
    '''The power weight through its string back to a power law.'''
    lams = np.geomspace(0.1, 10.0, 11)
    checks = []
    for s in orders:
        string = string_from_weight(PowerWeight(1.0 - 2.0 * s), 1000.0)
        table = bernstein_from_string(string, lams)
        constant = float(np.mean(table.psi / lams**s))
        checks.append(Check(f's={s} exponent error',
                            abs(table.loglog_slope() - s), tol.weight_loop))
        checks.append(Check(f's={s} constant error',
                            abs(constant / extension_constant(s) - 1.0),
                            tol.weight_loop))
    return checks


def decay_checks(tol, orders=(0.25, 0.5)):
    '''Power-law decay of the jump kernel on the ring and the torus.'''
    checks = []
    lattices = (('ring512', cycle_space(512), tol.ring_slope),
                ('torus64x64', torus_space((64, 64)), tol.torus_slope))
    for name, space, window in lattices:
        for s in orders:
            profile = kernel_decay_profile(space, FracConfig(s))
            checks.append(Check(f'{name} s={s} slope error',
                                abs(profile.slope - profile.target), window))
    return checks


def _factor(first, second):
    return max(first / second, second / first)


def geometry_checks(tol, sizes=(16, 32, 64), exponents=(-0.5, 0.0, 0.5),
                    n_functions=100):
    '''Doubling and Poincaré constants of the product against the base,
    and the splitting of the product energy.'''
    checks = []
    radii = [1, 2]
    for size in sizes:
        base = cycle_space(size)
        centers = [0, size // 3]
        base_family = ball_family(base, centers, radii)
        base_doubling = doubling_constant(base, base_family).constant
        base_poincare = poincare_constant(base, base_family,
                                          sensitivity_dilation=None).constant
        for a in exponents:
            s = 0.5 * (1.0 - a)
            product = build_product_space(base, s, 8.0, 8, gamma=1.0)
            family = ball_family(product, [(c, 0) for c in centers], radii)
            doubling = doubling_constant(product, family).constant
            poincare = poincare_constant(product, family,
                                         sensitivity_dilation=None).constant
            checks.append(Check(f'ring{size} a={a} doubling factor',
                                _factor(doubling, base_doubling),
                                tol.geometry_factor))
            checks.append(Check(f'ring{size} a={a} poincare factor',
                                _factor(poincare, base_poincare),
                                tol.geometry_factor))
    rng = np.random.default_rng(13)
    for a in exponents:
        product = build_product_space(cycle_space(16), 0.5 * (1.0 - a), 8.0,
                                      8, gamma=1.0)
        worst = 0.0
        for _ in range(n_functions):
            u = rng.standard_normal(len(product))
            v = rng.standard_normal(len(product))
            total = product.energy(u, v)
            base_part, vertical = product.energy_parts(u, v)
            scale = max(1.0, abs(total))
            worst = max(worst, abs(total - base_part - vertical) / scale)
        checks.append(Check(f'a={a} energy identity', worst,
                            tol.energy_identity))
    return checks


def even_extension_checks(tol):
    '''The even reflection of the extension of an s-harmonic datum.'''
    decomp = spectral_decompose(cycle_space(16))
    inside = [0, 1, 2, 3, 13, 14, 15]
    exterior = np.exp(np.random.default_rng(8).standard_normal(16))
    datum = nonlocal_dirichlet_solve(decomp, 0.5, inside, exterior)
    report = even_extension_study(decomp, 0.5, inside, datum)
    checks = [Check(f'ratio {k + 1}', ratio, tol.even_ratio)
              for k, ratio in enumerate(report.extra['ratios'])]
    checks += [Check('scaled residual at N=256', report.constant),
               Check('extrapolated scaled residual at N=256',
                     report.extra['extrapolated'], tol.even_extension)]
    return checks


def harnack_checks(tol, trials=200, verbose=False):
    '''Interior Harnack constants on the ring and the grid.'''
    setups = (('ring64', cycle_space(64), 0, 8, cycle_space(128), 0, 16),
              ('grid16', grid_space((16, 16)), (8, 8), 4,
               grid_space((32, 32)), (16, 16), 8))
    checks = []
    violations = 0
    for name, space, center, radius, fine, fine_center, fine_radius \
            in setups:
        decomp = spectral_decompose(space)
        report = harnack_constant(decomp, 0.5, center, radius, 0.5, trials,
                                  seed=1, verbose=verbose)
        violations += report.extra['principle_violations']
        checks.append(Check(f'{name} constant', report.constant))
        scaled = harnack_constant(decomp, 0.5, center, radius, 0.5, trials,
                                  seed=1, scale=1e3)
        checks.append(Check(f'{name} scaling change',
                            relative_error(scaled.values(), report.values()),
                            tol.scaling))
        smaller = harnack_constant(decomp, 0.5, center, radius, 0.25, trials,
                                   seed=1)
        checks.append(Check(f'{name} delta monotonicity failures',
                            int(np.sum(smaller.values() > report.values())),
                            0))
        refined = harnack_constant(fine, 0.5, fine_center, fine_radius, 0.5,
                                   trials // 4, seed=1)
        coarse = harnack_constant(decomp, 0.5, center, radius, 0.5,
                                  trials // 4, seed=1)
        checks.append(Check(f'{name} refinement factor',
                            coarse.attach_refinement([refined])
                            .stability_factor, tol.stability))
    checks.append(Check('maximum principle violations', violations, 0))
    return checks


def boundary_checks(tol, trials=20, verbose=False):
    '''The boundary Harnack constant and the intrinsic metric sandwich.'''
    report = boundary_harnack_study(parse_geometry('grid24-square16'), 0.5,
                                    'corner', 3, trials, seed=2,
                                    verbose=verbose, max_vertices=2500)
    checks = [Check('grid24-square16 constant', report.constant),
              Check('grid24-square16 refinement factor',
                    report.stability_factor, tol.stability)]
    product = build_product_space(grid_space((8, 8)), 0.5, 8.0, 8, gamma=1.0)
    sandwich = intrinsic_metric_bounds(product, random_pairs(product, 20,
                                                             seed=3))
    checks.append(Check('grid8 intrinsic sandwich ratio', sandwich.constant,
                        tol.sandwich))
    return checks


def semigroup_checks(decomps, tol, n_functions=100):
    '''Conservation, contraction, positivity and composition of the heat
    semigroup, and the Markov property of the form.'''
    checks = []
    for seed, (name, decomp) in enumerate(decomps.items()):
        space = decomp.space
        ones = np.ones(len(space))
        rng = np.random.default_rng(200 + seed)
        conservation = 0.0
        composition = 0.0
        contraction_failures = 0
        positivity_failures = 0
        for time in (0.1, 1.0, 10.0):
            conservation = max(conservation, float(np.max(np.abs(
                heat_apply(decomp, time, ones) - 1.0))))
        for _ in range(n_functions):
            f = rng.standard_normal(len(space))
            first, second = rng.uniform(0.05, 5.0, size=2)
            smoothed = heat_apply(decomp, first, f)
            if space.norm(smoothed) > space.norm(f) * (1.0 + 1e-12):
                contraction_failures += 1
            positive = heat_apply(decomp, first, np.abs(f))
            if np.min(positive) < -1e-12 * np.max(np.abs(f)):
                positivity_failures += 1
            twice = heat_apply(decomp, second, smoothed)
            once = heat_apply(decomp, first + second, f)
            composition = max(composition,
                              relative_error(twice, once))
        checks += [Check(f'{name} conservation', conservation,
                         tol.conservation),
                   Check(f'{name} contraction failures',
                         contraction_failures, 0),
                   Check(f'{name} positivity failures', positivity_failures,
                         0),
                   Check(f'{name} composition', composition, tol.semigroup),
                   Check(f'{name} markov violations',
                         is_markovian(space, n_functions, seed=seed), 0)]
    return checks


def stress_checks(decomps, tol):
    '''The four routes at a small order, against relaxed tolerances.'''
    return four_route_checks({'ring10': decomps['ring10']}, tol.relaxed(),
                             orders=(STRESS_ORDER,))


def _criterion(number, title, function, *args, **kwargs):
    '''Run one criterion, recording its warnings. A numerical failure
    becomes a failed check.'''
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter('always')
        try:
            checks = function(*args, **kwargs)
        except NumericalError as err:
            checks = [Check(f'{type(err).__name__}: {err}', float('nan'))]
    warned = [f'{warning.category.__name__}: {warning.message}'
              for warning in caught]
    return Criterion(number, title, checks, warned)


def run_acceptance_suite(fixtures, out_dir=None, tier='strict', stress=False,
                         verbose=False, run_config=None):
    '''Run the acceptance criteria.

    :param fixtures: the directory of the fixture graph files
    :param out_dir: the directory where ``acceptance.json`` and
        ``acceptance.tsv`` are written, or `None` to write nothing
    :param str tier: the tolerance tier
    :param bool stress: add the run at :data:`STRESS_ORDER`
    :param bool verbose: show a progress meter
    :param dict run_config: the configuration echo embedded in the outputs
    :rtype: AcceptanceSummary
    :raises FixtureMissing: if a fixture file is missing
    '''
    tol = tolerances(tier)
    spaces = load_fixtures(fixtures)
    decomps = {name: spectral_decompose(space)
               for name, space in spaces.items()}
    plan = [('four-route agreement', four_route_checks, (decomps, tol), {}),
            ('harmonic Dirichlet-to-Neumann map', harmonic_checks,
             (decomps, tol), {}),
            ('Krein strings', krein_checks, (tol,), {}),
            ('weight-string loop', weight_loop_checks, (tol,), {}),
            ('kernel decay', decay_checks, (tol,), {}),
            ('product-space geometry', geometry_checks, (tol,), {}),
            ('even extension', even_extension_checks, (tol,), {}),
            ('interior Harnack', harnack_checks, (tol,), {}),
            ('boundary Harnack and intrinsic metric', boundary_checks,
             (tol,), {}),
            ('semigroup and form axioms', semigroup_checks, (decomps, tol),
             {})]
    if stress:
        plan.append((f'stress run at s = {STRESS_ORDER}', stress_checks,
                     (decomps, tol), {}))
    criteria = []
    with Progress('acceptance criterion', len(plan),
                  enabled=verbose) as progress:
        for number, (title, function, args, kwargs) in enumerate(plan,
                                                                 start=1):
            progress.update(number - 1, number)
            criteria.append(_criterion(number, title, function, *args,
                                       **kwargs))
    summary = AcceptanceSummary(criteria, tol.tier, run_config)
    if out_dir is not None:
        write_summary(summary, out_dir)
    return summary


def write_summary(summary, out_dir):
    '''Write ``acceptance.json`` and ``acceptance.tsv`` in `out_dir`.'''
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    with (out_dir / 'acceptance.json').open('w', encoding='utf-8') as ofile:
        write_json(ofile, summary.as_dict())
    config = dict(summary.run_config, tier=summary.tier)
    with (out_dir / 'acceptance.tsv').open('w', encoding='utf-8') as ofile:
        write_table(ofile, ('criterion', 'check', 'value', 'threshold',
                            'status'), summary.rows(), config)
