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
'''Tests for the :mod:`~.Subordination` module.'''
# pylint: disable=no-value-for-parameter

from math import isclose, sqrt

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis.strategies import floats

from fraclab.Kernel.Fractional.FracConfig import FracConfig
from fraclab.Kernel.Fractional.FractionalPowers import frac_spectral
from fraclab.Kernel.Fractional.Subordination import (frac_subordination,
                                                     scalar_subordination,
                                                     subordinated_multiplier,
                                                     LogTimeGrid)
from fraclab.Kernel.Fractional.FractionalError import (QuadratureNotConverged,
                                                       SlowConvergenceWarning)
from .test_FractionalPowers import relative_error


def test_single_mode():
    '''The Balakrishnan integral of a single mode with eigenvalue 2 at
    s = 1/2.'''
    assert isclose(scalar_subordination(2.0, 0.5), sqrt(2.0), rel_tol=1e-10)


@settings(max_examples=200)
@given(lam=floats(1e-3, 1e3), s=floats(0.11, 0.95))
def test_scalar_accuracy(lam, s):
    '''The quadrature reproduces the power of a single eigenvalue.'''
    assert isclose(scalar_subordination(lam, s), lam**s, rel_tol=1e-9)


def test_constant(cycle10_decomp):
    '''Constants are annihilated.'''
    out = frac_subordination(cycle10_decomp, FracConfig(0.3), np.ones(10))
    assert np.allclose(out, 0.0, atol=1e-12)


def test_zero_mode():
    '''The zero eigenvalue contributes nothing.'''
    mult = subordinated_multiplier(np.array([0.0, 1.0]), FracConfig(0.4))
    assert mult[0] == 0.0
    assert isclose(mult[1], 1.0, rel_tol=1e-10)


def test_cycle_against_spectral(cycle10_decomp):
    '''Agreement with the spectral route on a random function.'''
    f = np.random.default_rng(11).normal(size=10)
    out = frac_subordination(cycle10_decomp, FracConfig(0.3), f)
    assert relative_error(out, frac_spectral(cycle10_decomp, 0.3, f)) <= 1e-6


@pytest.mark.parametrize('s', [0.15, 0.5, 0.85])
def test_wide_spectrum(s):
    '''Agreement on a spectrum spanning four decades.'''
    lams = np.geomspace(1e-2, 1e2, 30)
    mult = subordinated_multiplier(lams, FracConfig(s))
    assert np.allclose(mult, lams**s, rtol=1e-8, atol=0.0)


def test_several_functions(path32_decomp):
    '''Several functions at once, one per column.'''
    funcs = np.random.default_rng(12).normal(size=(32, 3))
    cfg = FracConfig(0.6)
    out = frac_subordination(path32_decomp, cfg, funcs)
    for k in range(3):
        exact = frac_spectral(path32_decomp, 0.6, funcs[:, k])
        assert relative_error(out[:, k], exact) <= 1e-6


def test_right_tail_too_short(cycle10_decomp):
    '''A quadrature window ending too early is detected.'''
    f = np.random.default_rng(13).normal(size=10)
    with pytest.raises(QuadratureNotConverged):
        frac_subordination(cycle10_decomp, FracConfig(0.5, large_time=2.0), f)


def test_first_order_surrogate():
    '''The first-order surrogate is too crude for the default tolerance at
    large s, but accurate to a relaxed one.'''
    lams = np.array([0.5, 4.0])
    with pytest.raises(QuadratureNotConverged):
        subordinated_multiplier(lams, FracConfig(0.9, small_time_order=1))
    mult = subordinated_multiplier(lams, FracConfig(0.9, small_time_order=1,
                                                    tolerance=1e-6))
    assert np.allclose(mult, lams**0.9, rtol=1e-6)


def test_slow_convergence_warning(two_point_decomp):
    '''Small orders trigger a warning.'''
    with pytest.warns(SlowConvergenceWarning):
        out = frac_subordination(two_point_decomp, FracConfig(0.05),
                                 [1.0, -1.0])
    assert np.allclose(out, [2.0**0.05, -2.0**0.05], rtol=1e-8)


def test_grid():
    '''The grid spans the window given by the spectrum.'''
    grid = LogTimeGrid.for_spectrum(np.array([0.0, 0.5, 8.0]),
                                    FracConfig(0.5, nodes=64))
    assert len(grid.times) == 64
    assert isclose(grid.times[0], 1e-6 / 8.0)
    assert isclose(grid.times[-1], 40.0 / 0.5)
