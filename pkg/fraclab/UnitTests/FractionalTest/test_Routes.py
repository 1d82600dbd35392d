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
'''Tests for the :mod:`~.Routes` module.'''
# pylint: disable=no-value-for-parameter

import numpy as np
import pytest

from fraclab.Kernel.Fractional.Routes import (apply_route, extension_route,
                                              relative_error, route_errors,
                                              route_gamma, ROUTES)
from fraclab.Kernel.Fractional.FractionalPowers import frac_spectral
from fraclab.Kernel.Fractional.FractionalError import (UnknownMethod,
                                                       SOutOfRange)


def test_gamma():
    '''The grading grows as the order gets small.'''
    assert route_gamma(0.75) == 2.0
    assert route_gamma(0.05) == pytest.approx(10.0)
    with pytest.raises(SOutOfRange):
        route_gamma(0.0)


def test_relative_error_of_zero():
    '''A vanishing reference gives the absolute error.'''
    assert relative_error([0.5, -1.0], [0.0, 0.0]) == 1.0
    assert relative_error([2.0], [2.0]) == 0.0


def test_unknown_method(cycle10_decomp):
    '''Only the listed routes exist.'''
    with pytest.raises(UnknownMethod, match='fourier'):
        apply_route(cycle10_decomp, 'fourier', 0.5, np.ones(10))


@pytest.mark.parametrize('s', [0.3, 0.5])
def test_routes_agree(cycle10_decomp, s):
    '''The four routes agree pairwise on a random datum.'''
    f = np.random.default_rng(5).standard_normal(10)
    errors = route_errors(cycle10_decomp, s, f)
    assert len(errors) == 6
    assert set(errors) >= {'spectral-subord', 'kernel-extension'}
    assert max(errors.values()) <= 1e-3


def test_semi_analytic(cycle10_decomp):
    '''The closed-form extension gives the spectral power.'''
    f = np.random.default_rng(6).standard_normal(10)
    out = apply_route(cycle10_decomp, 'semi-analytic', 0.5, f)
    exact = frac_spectral(cycle10_decomp, 0.5, f)
    assert relative_error(out, exact) <= 1e-4


def test_columns(cycle10_decomp):
    '''Several data are handled column by column.'''
    data = np.random.default_rng(7).standard_normal((10, 2))
    both = extension_route(cycle10_decomp, 0.4, data, n_cells=64)
    assert both.shape == (10, 2)
    for k in range(2):
        single = extension_route(cycle10_decomp, 0.4, data[:, k], n_cells=64)
        assert np.allclose(both[:, k], single, rtol=1e-10, atol=1e-12)
    for method in ROUTES[:3] + ('semi-analytic',):
        out = apply_route(cycle10_decomp, method, 0.4, data)
        assert out.shape == (10, 2)
