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
r'''Empirical interior and boundary Harnack constants of :math:`(-L)^s`.

Both experiments draw random nonnegative exterior data, solve the nonlocal
Dirichlet problem and record ratios on a probe ball:

* the interior experiment records :math:`\sup f / \inf f` on
  :math:`B(x, \delta R)` for solutions on :math:`B(x, R)`;
* the boundary experiment records the double ratio
  :math:`\max_{x, x'} u(x) v(x') / (u(x') v(x))` on
  :math:`B_\Omega(\xi, r)` for pairs of solutions on :math:`\Omega` vanishing
  outside :math:`\Omega` near :math:`\xi`.

Exterior data are componentwise :math:`\exp(N(0, 1))`. Trial `k` draws from
its own generator, derived from the report seed and `k`, so that reports do
not depend on the number of workers.
'''

from concurrent.futures import ThreadPoolExecutor

import numpy as np

from ..Configuration.Threads import worker_count
from ..Dirichlet.Spectral import spectral_decompose
from ..Fractional.FracConfig import check_s
from ..Fractional.JumpKernel import spectral_jump_kernel
from ..Progress import Progress
from ..Utils import trial_generators
from .ExperimentReport import ExperimentReport
from .Geometry import ball
from .HarnackError import (BadExperiment, BadRegion, DegenerateProbe)
from .NonlocalDirichlet import NonlocalDirichletProblem

#: maximum principle excess, relative to the data, counted as a violation
PRINCIPLE_SLACK = 1e-12


def _decomposition(source):
    if hasattr(source, 'eigenvalues'):
        return source
    return spectral_decompose(source)


def _check_trials(trials):
    if int(trials) != trials or trials < 1:
        raise BadExperiment(f'the number of trials must be a positive '
                            f'integer, got {trials!r}')
    return int(trials)


def _run(trial, n_trials, workers, message, verbose):
    '''Run `trial` for every index, in a thread pool, and return the rows in
    index order.'''
    rows = []
    with ThreadPoolExecutor(max_workers=worker_count(workers)) as pool, \
            Progress(message, n_trials, enabled=verbose) as progress:
        for index, row in enumerate(pool.map(trial, range(n_trials))):
            progress.update(index, index)
            rows.append(row)
    return rows


def double_ratio(u, v):
    '''The double ratio :math:`\\max_{x, x'} u(x) v(x') / (u(x') v(x))` of
    two positive functions.

    >>> double_ratio([1.0, 2.0], [1.0, 1.0])
    2.0
    '''
    quotient = np.asarray(u, dtype=float) / np.asarray(v, dtype=float)
    return float(np.max(quotient) / np.min(quotient))


def harnack_constant(source, s, center, radius, delta, trials=200, seed=0,
                     workers=None, scale=1.0, verbose=False):
    '''Estimate the interior Harnack constant on :math:`B(x, R)`.

    :param source: a :class:`~.DirichletSpace` or its
        :class:`~.SpectralDecomposition`
    :param float s: the fractional order
    :param center: the label of the center :math:`x`
    :param float radius: the radius :math:`R`
    :param float delta: the probe fraction, ``0 < delta < 1``
    :param int trials: the number of random exterior data
    :param int seed: the report seed
    :param workers: the number of threads (capped by ``FRACLAB_THREADS``)
    :param float scale: a positive factor applied to every exterior datum
    :param bool verbose: show a progress meter
    :raises BadExperiment: for out-of-range parameters
    :raises BadRegion: if the ball or its complement is empty
    :rtype: ExperimentReport
    '''
    s = check_s(s)
    trials = _check_trials(trials)
    if not 0.0 < delta < 1.0:
        raise BadExperiment(f'delta must satisfy 0 < delta < 1, got {delta}')
    if not scale > 0.0:
        raise BadExperiment(f'the data scale must be positive, got {scale}')
    decomp = _decomposition(source)
    space = decomp.space
    position = space.position(center)
    inside = ball(space, position, radius)
    probe = ball(space, position, delta * radius)
    if len(inside) == len(space):
        raise BadRegion(f'the ball B({center!r}, {radius}) covers the whole '
                        'space')
    problem = NonlocalDirichletProblem(spectral_jump_kernel(decomp, s),
                                       inside)
    generators = trial_generators(seed, trials)

    def trial(index):
        data = scale * np.exp(generators[index].standard_normal(len(space)))
        data[inside] = 0.0
        solution = problem.solve(data)
        values = solution[probe]
        excess = problem.principle_excess(solution)
        return {'trial': index, 'sup': float(np.max(values)),
                'inf': float(np.min(values)),
                'ratio': float(np.max(values) / np.min(values)),
                'violation': int(excess > PRINCIPLE_SLACK
                                 * np.max(np.abs(data)))}

    rows = _run(trial, trials, workers, 'Harnack trial', verbose)
    config = {'s': s, 'center': center, 'radius': radius, 'delta': delta,
              'trials': trials, 'seed': seed, 'scale': scale,
              'n_vertices': len(space)}
    extra = {'n_inside': int(len(inside)), 'n_probe': int(len(probe)),
             'principle_violations': sum(row['violation'] for row in rows)}
    return ExperimentReport('harnack', config, rows, extra=extra)


def _is_boundary_vertex(space, inside, position):
    neighbours = space.conductance[position].indices
    return bool(np.any(~np.isin(neighbours, inside)))


def boundary_harnack_experiment(source, s, inside, xi, r, trials=50, seed=0,
                                collar=2.0, workers=None, verbose=False):
    '''Estimate the boundary Harnack constant near a boundary vertex.

    Both solutions vanish on the exterior vertices of the collar
    :math:`B(\\xi, \\mathrm{collar} \\cdot r)` and take random positive values
    on the other exterior vertices.

    :param source: a :class:`~.DirichletSpace` or its
        :class:`~.SpectralDecomposition`
    :param float s: the fractional order
    :param inside: the positions of the domain :math:`\\Omega`
    :param int xi: the position of a boundary vertex of :math:`\\Omega`
    :param float r: the probe radius
    :param int trials: the number of solution pairs
    :param int seed: the report seed
    :param float collar: the collar radius in units of `r`, at least 1
    :raises BadRegion: if `xi` is not a boundary vertex of the domain
    :raises DegenerateProbe: if a solution is not positive on the probe
    :rtype: ExperimentReport
    '''
    s = check_s(s)
    trials = _check_trials(trials)
    if not collar >= 1.0:
        raise BadExperiment(f'the collar factor must be at least 1, got '
                            f'{collar}')
    decomp = _decomposition(source)
    space = decomp.space
    inside = np.unique(np.asarray(inside, dtype=int))
    if xi not in inside or not _is_boundary_vertex(space, inside, xi):
        raise BadRegion(f'vertex {space.vertex_ids[xi]!r} is not a boundary '
                        'vertex of the domain')
    probe = np.intersect1d(ball(space, xi, r), inside)
    zero_zone = np.setdiff1d(ball(space, xi, collar * r), inside)
    problem = NonlocalDirichletProblem(spectral_jump_kernel(decomp, s),
                                       inside)
    generators = trial_generators(seed, trials)

    def trial(index):
        data = np.exp(generators[index].standard_normal((len(space), 2)))
        data[inside] = 0.0
        data[zero_zone] = 0.0
        solution = problem.solve(data)[probe]
        if not np.all(solution > 0.0):
            raise DegenerateProbe(f'a solution of trial {index} is not '
                                  'positive on the probe ball')
        return {'trial': index, 'u_min': float(np.min(solution[:, 0])),
                'v_min': float(np.min(solution[:, 1])),
                'ratio': double_ratio(solution[:, 0], solution[:, 1])}

    rows = _run(trial, trials, workers, 'boundary Harnack trial', verbose)
    config = {'s': s, 'xi': space.vertex_ids[xi], 'r': r, 'collar': collar,
              'trials': trials, 'seed': seed, 'n_vertices': len(space),
              'n_inside': int(len(inside))}
    extra = {'n_probe': int(len(probe)), 'n_zero': int(len(zero_zone))}
    return ExperimentReport('boundary-harnack', config, rows, extra=extra)


def boundary_harnack_study(domain, s, selector, r, trials=50, seed=0,
                           refine=True, workers=None, verbose=False,
                           max_vertices=None):
    '''Run :func:`boundary_harnack_experiment` on a shipped domain and, with
    `refine`, once more on the refined domain with twice the radius.

    :param domain: a :class:`~.GridDomain`
    :param str selector: the boundary vertex selector
    :returns: the report of the coarse level, with the refinement trace
    '''
    levels = [domain, domain.refined()] if refine else [domain]
    reports = []
    for level, grid in enumerate(levels):
        kwargs = {} if max_vertices is None else {'max_vertices':
                                                  max_vertices}
        decomp = spectral_decompose(grid.space, **kwargs)
        report = boundary_harnack_experiment(
            decomp, s, grid.inside, grid.boundary_vertex(selector),
            r * 2**level, trials, seed, workers=workers, verbose=verbose)
        report.config['geometry'] = grid.name
        report.config['selector'] = selector
        reports.append(report)
    return reports[0].attach_refinement(reports[1:])
