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
r'''Empirical volume doubling and Poincaré constants.

Balls are closed, :math:`B(x, r) = \{y : d(x, y) \le r\}`. The doubling
estimate is the largest ratio :math:`\mu(B(x, 2r))/\mu(B(x, r))` over a ball
family. The Poincaré estimate is the largest ratio

.. math::

    \frac{\mu(B)^{-1} \int_B |u - u_B|\, d\mu}
    {r \left(\mu(\Lambda B)^{-1} \mathcal{E}_{\Lambda B}(u, u)\right)^{1/2}}

over the balls of the family and a set of candidate functions: the lowest
Neumann eigenfunctions of the form :math:`\mathcal{E}_{\Lambda B}` restricted
to the edges inside :math:`\Lambda B`, and random smooth combinations of all
of them.
'''

import warnings

import numpy as np
from scipy import linalg

from .ExperimentReport import ExperimentReport
from .HarnackError import (EmptyBall, DilationExceedsSpace, BadExperiment,
                           DilationSaturationWarning)
from .ProductSpace import ProductSpace

#: relative slack of the ball membership test
BALL_SLACK = 1e-12


def _as_space(source):
    '''Return the graph of `source` and its truncation positions, if any.'''
    if isinstance(source, ProductSpace):
        return source.space, source.top_positions
    return source, None


def ball(space, center, radius):
    '''The positions of the closed ball :math:`B(x, r)`.

    :param space: a :class:`~.DirichletSpace`
    :param int center: the position of the center
    :param float radius: a positive radius
    :raises EmptyBall: if the radius is not positive

    >>> from fraclab.Kernel.Dirichlet.Graphs import cycle_space
    >>> ball(cycle_space(10), 0, 2).tolist()
    [0, 1, 2, 8, 9]
    '''
    if not radius > 0:
        raise EmptyBall(f'ball radii must be positive, got {radius}')
    distances = space.metric[center]
    return np.flatnonzero(distances <= radius * (1.0 + BALL_SLACK))


class BallFamily:
    '''A nonempty family of balls of a metric space.

    :param source: a :class:`~.DirichletSpace` or a :class:`~.ProductSpace`
    :param pairs: ``(center label, radius)`` pairs
    :raises EmptyBall: if the family is empty or a radius is not positive
    '''

    def __init__(self, source, pairs):
        space, _ = _as_space(source)
        pairs = list(pairs)
        if not pairs:
            raise EmptyBall('the ball family is empty')
        self.source = source
        self.pairs = [(label, float(radius)) for label, radius in pairs]
        self.centers = [space.position(label) for label, _ in self.pairs]
        self.members = [ball(space, center, radius)
                        for center, (_, radius) in zip(self.centers,
                                                       self.pairs)]

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        for (label, radius), center, members in zip(self.pairs, self.centers,
                                                    self.members):
            yield label, center, radius, members

    def __repr__(self):
        return f'BallFamily(n_balls={len(self)})'

    def extended(self, pairs):
        '''The family with further balls appended.'''
        return BallFamily(self.source, self.pairs + list(pairs))


def ball_family(source, centers, radii):
    '''The family of all balls with the given centers and radii.'''
    return BallFamily(source, [(center, radius) for center in centers
                               for radius in radii])


def doubling_constant(source, family):
    '''Estimate the volume doubling constant on a ball family.

    :param source: a :class:`~.DirichletSpace` or a :class:`~.ProductSpace`
    :param BallFamily family: the balls
    :rtype: ExperimentReport

    >>> from fraclab.Kernel.Dirichlet.Graphs import cycle_space
    >>> ring = cycle_space(40)
    >>> report = doubling_constant(ring, ball_family(ring, [0], [1, 2]))
    >>> report.constant
    1.8
    '''
    space, _ = _as_space(source)
    measure = space.measure
    trials = []
    for label, center, radius, members in family:
        doubled = ball(space, center, 2.0 * radius)
        mass = float(np.sum(measure[members]))
        doubled_mass = float(np.sum(measure[doubled]))
        trials.append({'center': label, 'radius': radius, 'mass': mass,
                       'doubled_mass': doubled_mass,
                       'ratio': doubled_mass / mass})
    config = {'n_vertices': len(space), 'n_balls': len(family)}
    return ExperimentReport('doubling', config, trials)


def neumann_modes(space, positions):
    '''The Neumann eigenpairs of the form restricted to the edges inside a
    vertex set.

    :returns: the eigenvalues in increasing order and the
        :math:`\\mu`-orthonormal eigenvectors as columns
    '''
    positions = np.asarray(positions, dtype=int)
    weights = space.conductance[positions][:, positions].toarray()
    laplacian = np.diag(weights.sum(axis=1)) - weights
    return linalg.eigh(laplacian, np.diag(space.measure[positions]))


def poincare_ratio(space, members, dilated, radius, u):
    '''The Poincaré ratio of one candidate.

    :param members: the positions of :math:`B`
    :param dilated: the positions of :math:`\\Lambda B`, a superset of
        `members`
    :param float radius: the radius of :math:`B`
    :param u: the candidate, on the positions of `dilated`
    '''
    weights = space.conductance[dilated][:, dilated]
    energy = float(u @ (np.asarray(weights.sum(axis=1)).ravel() * u)
                   - u @ (weights @ u))
    inner = np.searchsorted(dilated, members)
    mass = space.measure[members]
    values = u[inner]
    mean = np.dot(values, mass) / np.sum(mass)
    oscillation = np.dot(np.abs(values - mean), mass) / np.sum(mass)
    if energy <= 0.0:
        return 0.0 if oscillation <= 1e-14 * np.max(np.abs(u)) else np.inf
    dilated_mass = float(np.sum(space.measure[dilated]))
    return float(oscillation / (radius * np.sqrt(energy / dilated_mass)))


def poincare_constant(source, family, dilation=2.0, n_modes=10, n_random=50,
                      seed=0, sensitivity_dilation=4.0):
    '''Estimate the 2-Poincaré constant on a ball family.

    :param source: a :class:`~.DirichletSpace` or a :class:`~.ProductSpace`
    :param BallFamily family: the balls
    :param float dilation: the dilation :math:`\\Lambda > 1`
    :param int n_modes: number of Neumann eigenfunctions per ball
    :param int n_random: number of random smooth candidates per ball
    :param int seed: seed of the random candidates; ball `k` uses a stream
        derived from the seed and the ball only
    :param sensitivity_dilation: a second dilation whose estimate is
        reported in ``extra['sensitivity']``, or `None`
    :raises BadExperiment: if :math:`\\Lambda \\le 1`
    :raises DilationExceedsSpace: if a dilated ball of a product space
        reaches the truncation layers
    :rtype: ExperimentReport
    '''
    if not dilation > 1.0:
        raise BadExperiment(f'the dilation must exceed 1, got {dilation}')
    space, truncation = _as_space(source)
    trials = []
    for label, center, radius, members in family:
        dilated = ball(space, center, dilation * radius)
        if truncation is not None and np.intersect1d(dilated, truncation).size:
            raise DilationExceedsSpace(f'the ball B({label!r}, '
                                       f'{dilation * radius}) reaches the '
                                       'truncation layers')
        if len(dilated) == len(space) > len(members):
            warnings.warn(f'the ball B({label!r}, {dilation * radius}) covers '
                          'the whole space', DilationSaturationWarning,
                          stacklevel=2)
        eigenvalues, modes = neumann_modes(space, dilated)
        candidates = [modes[:, k] for k in range(min(n_modes, len(dilated)))]
        rng = np.random.default_rng([seed, center,
                                     int(round(1000 * radius))])
        damping = 1.0 / (1.0 + np.maximum(eigenvalues, 0.0))
        for _ in range(n_random):
            coeffs = rng.standard_normal(len(eigenvalues)) * damping
            candidates.append(modes @ coeffs)
        ratios = [poincare_ratio(space, members, dilated, radius, u)
                  for u in candidates]
        first_mode = ratios[1] if len(dilated) > 1 and n_modes > 1 else 0.0
        trials.append({'center': label, 'radius': radius,
                       'n_dilated': len(dilated), 'first_mode': first_mode,
                       'ratio': max(ratios)})
    config = {'n_vertices': len(space), 'n_balls': len(family),
              'dilation': dilation, 'n_modes': n_modes,
              'n_random': n_random, 'seed': seed}
    extra = {}
    if sensitivity_dilation is not None:
        try:
            other = poincare_constant(source, family, sensitivity_dilation,
                                      n_modes, n_random, seed, None)
            extra['sensitivity'] = {'dilation': sensitivity_dilation,
                                    'constant': other.constant}
        except DilationExceedsSpace:
            extra['sensitivity'] = {'dilation': sensitivity_dilation,
                                    'constant': None}
    return ExperimentReport('poincare', config, trials, extra=extra)
