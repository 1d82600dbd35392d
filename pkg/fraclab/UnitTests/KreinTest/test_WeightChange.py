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
'''Tests for the :mod:`~.WeightChange` module.'''
# pylint: disable=no-value-for-parameter

from math import isclose

import numpy as np
import pytest

from fraclab.Kernel.Krein.WeightChange import (PowerWeight, parse_weight,
                                               string_from_weight,
                                               weight_from_string)
from fraclab.Kernel.Krein.KreinString import constant_string
from fraclab.Kernel.Krein.StringSolver import (bernstein_from_string,
                                               power_law_psi)
from fraclab.Kernel.Krein.KreinError import WeightNotIntegrable
from fraclab.Kernel.Fractional.FractionalPowers import extension_constant


def test_unit_weight():
    '''w = 1 is the identity change of variables and A = 1.'''
    string = string_from_weight(PowerWeight(0.0), 5.0, n_points=64)
    assert np.allclose(string.nodes, np.geomspace(5e-8, 5.0, 64),
                       rtol=1e-14)
    assert np.all(string.values == 1.0)


def test_half_collapse():
    '''The weight of s = 1/2 is constant.'''
    s = 0.5
    weight = PowerWeight(1.0 - 2.0 * s)
    assert weight.exponent == 0.0
    string = weight.krein_string()
    assert string.is_constant
    assert string.c == 1.0


@pytest.mark.parametrize('exponent', [-0.5, 0.0, 0.4, 0.8])
def test_power_round_trip(exponent):
    '''Power weights survive the round trip through the string.'''
    weight = PowerWeight(exponent, scale=1.5)
    string = string_from_weight(weight, 10.0)
    heights = np.geomspace(1e-7, 10.0, 256)
    back_heights, back_weight = weight_from_string(string)
    assert np.allclose(back_heights, heights, rtol=1e-8, atol=0.0)
    assert np.allclose(back_weight, weight(heights), rtol=1e-8, atol=0.0)


def test_power_closed_form():
    '''The sampled string of a power weight is the closed-form power law.'''
    weight = PowerWeight(0.4)
    closed = weight.krein_string()
    assert isclose(closed.beta, 4.0 / 3.0)
    assert isclose(closed.c, 0.6**(4.0 / 3.0))
    string = string_from_weight(weight, 10.0)
    assert np.allclose(string.values, closed(string.nodes), rtol=1e-10)


def test_general_round_trip():
    '''Smooth weights are integrated by quadrature.'''
    def weight(y):
        return 1.0 + y

    string = string_from_weight(weight, 10.0)
    heights = np.geomspace(1e-7, 10.0, 256)
    assert np.allclose(string.nodes, np.log1p(heights), rtol=1e-9)
    back_heights, back_weight = weight_from_string(string)
    assert np.allclose(back_weight, 1.0 + heights, rtol=1e-12)
    assert np.allclose(back_heights, heights, rtol=1e-3)


@pytest.mark.parametrize('s', [0.3, 0.7])
def test_fractional_weight(s):
    '''The weight y^(1-2s) yields psi = c_s lambda^s.'''
    string = string_from_weight(PowerWeight(1.0 - 2.0 * s), 1000.0)
    lams = np.geomspace(0.1, 10.0, 11)
    table = bernstein_from_string(string, lams)
    flat = table.psi / lams**s
    assert np.ptp(flat) <= 0.01 * np.mean(flat)
    assert isclose(np.mean(flat), extension_constant(s), rel_tol=1e-3)
    assert isclose(table.loglog_slope(), s, abs_tol=1e-3)


def test_fractional_closed_form():
    '''The closed-form Bessel psi of the fractional string is
    c_s lambda^s.'''
    s = 0.3
    closed = PowerWeight(1.0 - 2.0 * s).krein_string()
    assert isclose(power_law_psi(closed.c, closed.beta, 2.0),
                   extension_constant(s) * 2.0**s, rel_tol=1e-12)


def test_constant_weight_string():
    '''A constant weight v gives the constant string v^2.'''
    assert parse_weight('{"kind": "constant", "value": 3.0}') \
        .krein_string().c == 9.0
    assert weight_from_string(constant_string(4.0), [0.0, 1.0])[1][1] == 2.0


@pytest.mark.parametrize('weight', [
    lambda y: y,
    lambda y: y**1.5,
    lambda y: -np.ones_like(y),
    ])
def test_not_integrable(weight):
    '''Weights whose reciprocal is not integrable at 0 are rejected.'''
    with pytest.raises(WeightNotIntegrable):
        string_from_weight(weight, 1.0)


def test_bad_weights():
    '''Bad power weights and descriptions.'''
    with pytest.raises(WeightNotIntegrable):
        PowerWeight(1.0)
    with pytest.raises(WeightNotIntegrable):
        PowerWeight(0.5, scale=0.0)
    with pytest.raises(WeightNotIntegrable):
        parse_weight('{"kind": "exp"}')
    with pytest.raises(WeightNotIntegrable):
        string_from_weight(PowerWeight(0.2), -1.0)
    with pytest.raises(WeightNotIntegrable):
        weight_from_string(constant_string())
    assert parse_weight('constant').exponent == 0.0
