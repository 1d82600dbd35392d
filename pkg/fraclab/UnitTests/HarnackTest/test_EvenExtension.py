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
'''Tests for the :mod:`~.EvenExtension` module.'''
# pylint: disable=no-value-for-parameter

import numpy as np
import pytest

from fraclab.Kernel.Dirichlet.Graphs import cycle_space
from fraclab.Kernel.Dirichlet.Spectral import spectral_decompose
from fraclab.Kernel.Extension.ExtensionError import BadMeshParams
from fraclab.Kernel.Extension.ExtensionSolver import solve_extension_pde
from fraclab.Kernel.Harnack.EvenExtension import (bottom_residual,
                                                  even_extension,
                                                  even_extension_check,
                                                  even_extension_study,
                                                  romberg_extrapolate)
from fraclab.Kernel.Harnack.HarnackError import SupportViolation
from fraclab.Kernel.Harnack.NonlocalDirichlet import nonlocal_dirichlet_solve
from fraclab.Kernel.Harnack.ProductSpace import (ProductSpace,
                                                 build_product_space)

INSIDE = np.array([0, 1, 2, 3, 13, 14, 15])


@pytest.fixture(scope='module')
def ring16_decomp():
    '''Spectral decomposition of the 16-cycle.'''
    return spectral_decompose(cycle_space(16))


@pytest.fixture(scope='module')
def harmonic_datum(ring16_decomp):
    '''A positive datum with (-L)^(1/2) f = 0 on the arc around 0.'''
    data = np.exp(np.random.default_rng(8).standard_normal(16))
    return nonlocal_dirichlet_solve(ring16_decomp, 0.5, INSIDE, data)


@pytest.fixture(scope='module')
def field_and_product(ring16_decomp, harmonic_datum):
    '''The extension of the datum on 64 uniform cells and its product.'''
    field = solve_extension_pde(ring16_decomp, harmonic_datum, 0.5,
                                n_cells=64, gamma=1.0, coarse=False)
    return field, ProductSpace(ring16_decomp.space, 0.5, field.mesh)


def test_even_reflection(field_and_product):
    '''The reflection is even in y and matches the field for y >= 0.'''
    field, product = field_and_product
    extended = even_extension(field, product)
    assert extended.shape == (16, product.n_layers)
    assert np.array_equal(extended, extended[:, ::-1])
    assert np.array_equal(extended[:, product.layer(0):], field.values)


def test_interior_residual(field_and_product):
    '''Off the boundary layer the reflection solves the product equation.'''
    field, product = field_and_product
    report = even_extension_check(field, product, INSIDE, 'interior')
    assert report.constant <= 1e-9
    assert len(report.trials) == len(INSIDE)


def test_bottom_residual_dominates(field_and_product):
    '''With all hats, the residual concentrates on y = 0.'''
    field, product = field_and_product
    report = even_extension_check(field, product, INSIDE)
    assert np.allclose(report.values(), report.values('bottom'),
                       rtol=0.0, atol=1e-9)
    assert 0.0 < report.constant < 1.0
    assert report.extra['scale'] > 0.0


def test_antisymmetric_tests(field_and_product):
    '''Test functions odd in y see no residual.'''
    field, product = field_and_product
    n_half = product.mesh.n_cells
    tests = []
    for position in INSIDE[:3]:
        for j in range(1, n_half):
            test = np.zeros((16, product.n_layers))
            test[position, product.layer(j)] = 1.0
            test[position, product.layer(-j)] = -1.0
            tests.append(test)
    report = even_extension_check(field, product, INSIDE, np.array(tests))
    assert report.constant <= 1e-9


def test_zero_test(field_and_product):
    '''The zero test function has zero residual.'''
    field, product = field_and_product
    report = even_extension_check(field, product, INSIDE,
                                  np.zeros((16, product.n_layers)))
    assert report.constant == 0.0


def test_support_violation(field_and_product):
    '''Test functions must vanish off the region and on the truncation.'''
    field, product = field_and_product
    outside = np.zeros((16, product.n_layers))
    outside[8, product.layer(0)] = 1.0
    with pytest.raises(SupportViolation):
        even_extension_check(field, product, INSIDE, outside)
    top = np.zeros((16, product.n_layers))
    top[0, product.n_layers - 1] = 1.0
    with pytest.raises(SupportViolation):
        even_extension_check(field, product, INSIDE, top)
    with pytest.raises(SupportViolation):
        even_extension_check(field, product, INSIDE, 'everything')


def test_mesh_mismatch(field_and_product, ring16_decomp):
    '''The product must share the mesh of the field.'''
    field, _ = field_and_product
    other = build_product_space(ring16_decomp.space, 0.5, 10.0, 64,
                                gamma=1.0)
    with pytest.raises(BadMeshParams):
        even_extension_check(field, other, INSIDE)


def test_refinement(ring16_decomp, harmonic_datum):
    '''The scaled residual decreases at second order under refinement and
    its extrapolation vanishes to 1e-6.'''
    report = even_extension_study(ring16_decomp, 0.5, INSIDE,
                                  harmonic_datum)
    assert report.extra['levels'] == [64, 128, 256]
    assert all(0.2 <= ratio <= 0.3 for ratio in report.extra['ratios'])
    assert report.constant <= 1e-3
    assert report.extra['extrapolated'] <= 1e-6
    assert len(report.refinement) == 3
    assert report.config['top_bc'] == 'dirichlet-modal'


def test_bottom_residual(field_and_product):
    '''The signed bottom residuals carry the trace seen by the report.'''
    field, product = field_and_product
    bottom = bottom_residual(field, product)
    report = even_extension_check(field, product, INSIDE)
    assert bottom.shape == (16,)
    assert np.allclose(np.abs(bottom[INSIDE]) / report.extra['scale'],
                       report.values('bottom'), rtol=1e-12, atol=0.0)


def test_romberg_extrapolate():
    '''Romberg extrapolation removes the h^2 and h^4 terms.'''
    def series(cells):
        step = 1.0 / cells
        return np.array([1.0, -2.0]) * (1.0 + step**2 + 3.0 * step**4)

    extrapolated = romberg_extrapolate([series(8), series(16), series(32)])
    assert np.allclose(extrapolated, [1.0, -2.0], rtol=1e-12, atol=0.0)
    assert float(romberg_extrapolate([2.5])) == 2.5


def test_levels_must_double(ring16_decomp, harmonic_datum):
    '''The refinement levels are successive doublings.'''
    with pytest.raises(BadMeshParams):
        even_extension_study(ring16_decomp, 0.5, INSIDE, harmonic_datum,
                             levels=(64, 96))
