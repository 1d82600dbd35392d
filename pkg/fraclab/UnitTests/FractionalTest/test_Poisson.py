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
'''Tests for the :mod:`~.PoissonMultiplier` and :mod:`~.Poisson`
modules.'''
# pylint: disable=no-value-for-parameter

from math import isclose, exp, sqrt

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis.strategies import floats

from fraclab.Kernel.Fractional.FracConfig import FracConfig
from fraclab.Kernel.Fractional.FractionalPowers import frac_spectral
from fraclab.Kernel.Fractional.PoissonMultiplier import poisson_multiplier
from fraclab.Kernel.Fractional.Poisson import (poisson_extend,
                                               poisson_kernel_extend,
                                               poisson_formula_multiplier,
                                               poisson_dtn, harmonic_dtn)
from fraclab.Kernel.Fractional.FractionalError import UnknownMethod
from fraclab.Kernel.Extension.ExtensionError import BadMeshParams
from .test_FractionalPowers import relative_error


@given(s=floats(0.01, 0.99), lam=floats(0.0, 1e3))
def test_multiplier_boundary(s, lam):
    '''The multiplier is 1 at height 0 and on the zero eigenvalue.'''
    assert poisson_multiplier(s, lam, 0.0) == 1.0
    assert poisson_multiplier(s, 0.0, lam) == 1.0


def test_multiplier_half():
    '''At s = 1/2 the multiplier is exp(-y sqrt(lambda)).'''
    assert isclose(poisson_multiplier(0.5, 4.0, 1.0), exp(-2.0),
                   rel_tol=1e-8)
    assert isclose(poisson_formula_multiplier(0.5, 4.0, 1.0), exp(-2.0),
                   rel_tol=1e-8)


def test_multiplier_monotone():
    '''The multiplier decreases in y.'''
    heights = np.arange(0.0, 4.01, 0.5)
    values = poisson_multiplier(0.3, 1.0, heights)
    assert values[0] == 1.0
    assert np.all(np.diff(values) < 0.0)
    assert np.all(values > 0.0)


@settings(max_examples=100)
@given(s=floats(0.05, 0.95), lam=floats(1e-3, 1e2), y=floats(1e-3, 5.0))
def test_multiplier_range(s, lam, y):
    '''The multiplier lies in (0, 1] and decreases in lambda.'''
    value = poisson_multiplier(s, lam, y)
    assert 0.0 < value <= 1.0
    assert poisson_multiplier(s, 2.0 * lam, y) <= value


@pytest.mark.parametrize('s', [0.2, 0.5, 0.8])
@pytest.mark.parametrize('quarter', [1.0, 2.0, 4.0])
def test_laguerre_against_bessel(s, quarter):
    '''The Gauss-Laguerre quadrature agrees with the closed form.'''
    lam, y = 4.0 * quarter, 1.0
    closed = poisson_multiplier(s, lam, y)
    laguerre = poisson_multiplier(s, lam, y, method='laguerre')
    assert isclose(laguerre, closed, rel_tol=1e-3)


@settings(max_examples=100)
@given(s=floats(0.05, 0.95), lam=floats(1e-3, 1e2), y=floats(1e-4, 5.0))
def test_poisson_formula_against_bessel(s, lam, y):
    '''The Poisson-formula quadrature agrees with the closed form.'''
    closed = poisson_multiplier(s, lam, y)
    formula = poisson_formula_multiplier(s, lam, y)
    assert isclose(formula, closed, rel_tol=1e-8, abs_tol=1e-300)


def test_unknown_method():
    '''Unknown evaluators are rejected.'''
    with pytest.raises(UnknownMethod):
        poisson_multiplier(0.5, 1.0, 1.0, method='simpson')


def test_extend_boundary(cycle10_decomp):
    '''The extension reproduces the boundary datum exactly.'''
    f = np.random.default_rng(31).normal(size=10)
    field = poisson_extend(cycle10_decomp, FracConfig(0.3), f,
                           [0.0, 0.1, 0.5, 2.0])
    assert np.array_equal(field.values[:, 0], f)
    assert field.provenance == 'semi-analytic'
    assert field.mesh.a == pytest.approx(0.4)


def test_extend_constant(cycle10_decomp):
    '''Constants extend to constants.'''
    field = poisson_extend(cycle10_decomp, FracConfig(0.6), np.full(10, 3.0),
                           np.linspace(0.0, 5.0, 11))
    assert np.allclose(field.values, 3.0, atol=1e-12)


def test_extend_bad_heights(cycle10_decomp):
    '''Heights must start at 0 and increase.'''
    with pytest.raises(BadMeshParams):
        poisson_extend(cycle10_decomp, 0.5, np.ones(10), [0.5, 1.0])
    with pytest.raises(BadMeshParams):
        poisson_extend(cycle10_decomp, 0.5, np.ones(10), [0.0, 1.0, 1.0])


def test_extend_half(cycle10_decomp):
    '''At s = 1/2 the extension of a mode is exp(-y sqrt(lambda)).'''
    mode = cycle10_decomp.eigenvectors[:, 3]
    lam = cycle10_decomp.eigenvalues[3]
    field = poisson_extend(cycle10_decomp, 0.5, mode, [0.0, 0.7, 1.3])
    for j, height in enumerate([0.0, 0.7, 1.3]):
        assert np.allclose(field.values[:, j], exp(-height * sqrt(lam)) * mode,
                           atol=1e-12)


def test_kernel_extend_agrees(path32_decomp):
    '''The Poisson formula and the multiplier give the same extension.'''
    f = np.random.default_rng(32).normal(size=32)
    heights = [0.0, 0.01, 0.3, 1.0, 4.0]
    direct = poisson_extend(path32_decomp, FracConfig(0.35), f, heights)
    formula = poisson_kernel_extend(path32_decomp, FracConfig(0.35), f,
                                    heights)
    assert np.allclose(formula.values, direct.values, atol=1e-9)


def test_harmonic_dtn(cycle10_decomp):
    '''The s = 1/2 Dirichlet-to-Neumann map by finite differences.'''
    f = np.random.default_rng(33).normal(size=10)
    out = harmonic_dtn(cycle10_decomp, f)
    assert relative_error(out, frac_spectral(cycle10_decomp, 0.5, f)) <= 1e-6


@pytest.mark.parametrize('s', [0.3, 0.5, 0.8])
def test_semi_analytic_dtn(cycle10_decomp, s):
    '''The extrapolated Dirichlet-to-Neumann quotient recovers the
    fractional power.'''
    f = np.random.default_rng(34).normal(size=10)
    out = poisson_dtn(cycle10_decomp, FracConfig(s), f)
    assert relative_error(out, frac_spectral(cycle10_decomp, s, f)) <= 1e-4
