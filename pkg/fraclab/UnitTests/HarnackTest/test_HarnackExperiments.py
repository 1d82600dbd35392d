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
'''Tests for the :mod:`~.HarnackExperiments` module.'''
# pylint: disable=no-value-for-parameter

from math import isfinite

import numpy as np
import pytest

from fraclab.Kernel.Dirichlet.Graphs import cycle_space, grid_space
from fraclab.Kernel.Dirichlet.Spectral import spectral_decompose
from fraclab.Kernel.Harnack.Domains import parse_geometry
from fraclab.Kernel.Harnack.HarnackError import BadExperiment, BadRegion
from fraclab.Kernel.Harnack.HarnackExperiments import (
    double_ratio, harnack_constant, boundary_harnack_experiment,
    boundary_harnack_study)


@pytest.fixture(scope='module')
def ring64_decomp():
    '''Spectral decomposition of the 64-cycle.'''
    return spectral_decompose(cycle_space(64))


def test_double_ratio():
    '''Proportional functions have double ratio one.'''
    u = np.array([0.5, 2.0, 3.0])
    assert double_ratio(u, u) == 1.0
    assert double_ratio(2.0 * u, u) == 1.0
    assert double_ratio([1.0, 4.0], [2.0, 2.0]) == 4.0


def test_ring_harnack(ring64_decomp):
    '''The ring estimate is finite and the maximum principle holds.'''
    report = harnack_constant(ring64_decomp, 0.5, 0, 8, 0.5, trials=200)
    assert isfinite(report.constant)
    assert report.constant >= 1.0
    assert report.extra['principle_violations'] == 0
    assert report.extra['n_inside'] == 17
    assert report.extra['n_probe'] == 9
    assert len(report.trials) == 200


def test_scale_invariance(ring64_decomp):
    '''Scaling the data leaves every ratio unchanged.'''
    first = harnack_constant(ring64_decomp, 0.5, 0, 8, 0.5, trials=20)
    second = harnack_constant(ring64_decomp, 0.5, 0, 8, 0.5, trials=20,
                              scale=1e3)
    assert np.allclose(first.values(), second.values(), rtol=1e-12)


def test_delta_monotone(ring64_decomp):
    '''Larger probes give larger ratios, trial by trial.'''
    constants = []
    for delta in (0.25, 0.5, 0.75):
        report = harnack_constant(ring64_decomp, 0.5, 0, 8, delta, trials=20)
        constants.append(report.values())
    assert np.all(constants[0] <= constants[1])
    assert np.all(constants[1] <= constants[2])


def test_workers_deterministic(ring64_decomp):
    '''Reports do not depend on the number of threads.'''
    one = harnack_constant(ring64_decomp, 0.25, 0, 8, 0.5, trials=30,
                           seed=4, workers=1)
    three = harnack_constant(ring64_decomp, 0.25, 0, 8, 0.5, trials=30,
                             seed=4, workers=3)
    assert one.table_tsv() == three.table_tsv()


def test_ring_refinement(ring64_decomp):
    '''Doubling the ring and the radius keeps the estimate stable.'''
    coarse = harnack_constant(ring64_decomp, 0.5, 0, 8, 0.5, trials=50)
    fine = harnack_constant(cycle_space(128), 0.5, 0, 16, 0.5, trials=50)
    coarse.attach_refinement([fine])
    assert coarse.stability_factor <= 2.0


def test_grid_harnack():
    '''On the grid the estimate is finite and stable under refinement.'''
    coarse = harnack_constant(grid_space((16, 16)), 0.5, (8, 8), 4, 0.5,
                              trials=50)
    fine = harnack_constant(grid_space((32, 32)), 0.5, (16, 16), 8, 0.5,
                            trials=50)
    assert isfinite(coarse.constant)
    assert coarse.attach_refinement([fine]).stability_factor <= 2.0


@pytest.mark.parametrize('delta', [0.0, 1.0, -0.5])
def test_bad_delta(ring64_decomp, delta):
    '''The probe fraction lies strictly between 0 and 1.'''
    with pytest.raises(BadExperiment):
        harnack_constant(ring64_decomp, 0.5, 0, 8, delta, trials=5)


def test_bad_parameters(ring64_decomp):
    '''Trials and scales must be positive; the ball cannot be the whole
    space.'''
    with pytest.raises(BadExperiment):
        harnack_constant(ring64_decomp, 0.5, 0, 8, 0.5, trials=0)
    with pytest.raises(BadExperiment):
        harnack_constant(ring64_decomp, 0.5, 0, 8, 0.5, trials=5, scale=0.0)
    with pytest.raises(BadRegion):
        harnack_constant(ring64_decomp, 0.5, 0, 40, 0.5, trials=5)


@pytest.mark.parametrize('geometry', ['grid12-square8', 'grid12-l8'])
def test_boundary_experiment(geometry):
    '''The boundary estimate is finite at a corner.'''
    domain = parse_geometry(geometry)
    report = boundary_harnack_experiment(
        domain.space, 0.5, domain.inside, domain.boundary_vertex('corner'),
        2, trials=20)
    assert isfinite(report.constant)
    assert report.constant >= 1.0
    assert np.all(report.values('u_min') > 0.0)
    assert report.extra['n_zero'] > 0


def test_boundary_study():
    '''The boundary estimate is stable under refinement.'''
    report = boundary_harnack_study(parse_geometry('grid12-square8'), 0.5,
                                    'edge', 2, trials=20)
    assert [row['level'] for row in report.refinement] == [0, 1]
    assert report.config['geometry'] == 'grid12-square8'
    assert report.stability_factor <= 2.0


def test_boundary_vertex_required():
    '''The probe center must be a boundary vertex of the domain.'''
    domain = parse_geometry('grid12-square8')
    interior = domain.space.position((5, 5))
    with pytest.raises(BadRegion):
        boundary_harnack_experiment(domain.space, 0.5, domain.inside,
                                    interior, 2, trials=5)
    with pytest.raises(BadRegion):
        boundary_harnack_experiment(domain.space, 0.5, domain.inside,
                                    domain.space.position((0, 0)), 2,
                                    trials=5)
