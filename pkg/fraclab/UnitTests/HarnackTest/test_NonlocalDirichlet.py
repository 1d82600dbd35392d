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
'''Tests for the :mod:`~.NonlocalDirichlet` module.'''
# pylint: disable=no-value-for-parameter

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis.extra.numpy import arrays
from hypothesis.strategies import floats

from fraclab.Kernel.Dirichlet.Graphs import cycle_space
from fraclab.Kernel.Dirichlet.Spectral import spectral_decompose
from fraclab.Kernel.Fractional.FractionalPowers import (frac_power_matrix,
                                                        frac_spectral)
from fraclab.Kernel.Fractional.JumpKernel import (spectral_jump_kernel,
                                                  frac_kernel_apply)
from fraclab.Kernel.Harnack.HarnackError import BadRegion
from fraclab.Kernel.Harnack.NonlocalDirichlet import (
    NonlocalDirichletProblem, nonlocal_dirichlet_solve)

ARC = np.arange(10, 18)


@pytest.fixture(scope='module')
def ring32_decomp():
    '''Spectral decomposition of the 32-cycle.'''
    return spectral_decompose(cycle_space(32))


@pytest.fixture(scope='module')
def arc_problem(ring32_decomp):
    '''The nonlocal Dirichlet problem of an arc of 8 vertices, s = 0.5.'''
    return NonlocalDirichletProblem(spectral_jump_kernel(ring32_decomp, 0.5),
                                    ARC)


def test_spectral_kernel_applies_power(cycle10_decomp):
    '''The assembled kernel reproduces the spectral power.'''
    f = np.random.default_rng(2).standard_normal(10)
    kernel = spectral_jump_kernel(cycle10_decomp, 0.3)
    assert np.allclose(frac_kernel_apply(kernel, f),
                       frac_spectral(cycle10_decomp, 0.3, f),
                       rtol=1e-10, atol=1e-12)
    assert np.all(kernel.matrix >= -1e-14)


def test_constant_data(arc_problem):
    '''Constant exterior data give constant solutions.'''
    solution = arc_problem.solve(np.full(32, 2.5))
    assert np.allclose(solution, 2.5, rtol=1e-12)


def test_equation_inside(ring32_decomp, arc_problem):
    '''(-L)^s f vanishes in the region.'''
    data = np.exp(np.random.default_rng(4).standard_normal(32))
    solution = arc_problem.solve(data)
    residual = frac_spectral(ring32_decomp, 0.5, solution)
    assert np.max(np.abs(residual[ARC])) <= 1e-10 * np.max(data)
    outside = np.setdiff1d(np.arange(32), ARC)
    assert np.array_equal(solution[outside], data[outside])


def test_dense_reference(ring32_decomp, arc_problem):
    '''The solution matches a dense solve of the operator matrix.'''
    data = np.zeros(32)
    data[0] = 1.0
    solution = arc_problem.solve(data)
    matrix = frac_power_matrix(ring32_decomp, 0.5)
    outside = np.setdiff1d(np.arange(32), ARC)
    expected = np.linalg.solve(matrix[np.ix_(ARC, ARC)],
                               -matrix[np.ix_(ARC, outside)] @ data[outside])
    assert np.allclose(solution[ARC], expected, rtol=0.0, atol=1e-10)
    assert np.all(solution[ARC] > 0.0)


@settings(max_examples=30, deadline=None)
@given(arrays(float, 32, elements=floats(-5.0, 5.0)))
def test_maximum_principle(arc_problem, data):
    '''Solutions stay within the range of their exterior data.'''
    solution = arc_problem.solve(data)
    scale = max(np.max(np.abs(data)), 1.0)
    assert arc_problem.principle_excess(solution) <= 1e-12 * scale


def test_columns(arc_problem):
    '''Several data are solved column by column.'''
    data = np.random.default_rng(6).standard_normal((32, 3))
    solution = arc_problem.solve(data)
    for k in range(3):
        assert np.allclose(solution[:, k], arc_problem.solve(data[:, k]),
                           rtol=1e-12, atol=1e-14)


def test_convenience_solver(cycle10):
    '''The one-shot solver decomposes the space itself.'''
    data = np.arange(10.0)
    solution = nonlocal_dirichlet_solve(cycle10, 0.5, [3, 4], data)
    assert data[2] < solution[3] < data[5]
    assert data[2] < solution[4] < data[5]


@pytest.mark.parametrize('inside', [[], list(range(10)), [3, 12]])
def test_bad_region(cycle10_decomp, inside):
    '''Regions must be strict nonempty subsets of the vertices.'''
    kernel = spectral_jump_kernel(cycle10_decomp, 0.5)
    with pytest.raises(BadRegion):
        NonlocalDirichletProblem(kernel, inside)


def test_bad_data(arc_problem):
    '''Data must cover every vertex.'''
    with pytest.raises(BadRegion):
        arc_problem.solve(np.ones(31))
