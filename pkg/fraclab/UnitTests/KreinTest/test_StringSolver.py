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
'''Tests for the :mod:`~.StringSolver` module.'''
# pylint: disable=no-value-for-parameter

from math import isclose, sqrt

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis.strategies import floats

from fraclab.Kernel.Krein.KreinString import (constant_string,
                                              power_law_string,
                                              sampled_string)
from fraclab.Kernel.Krein.StringSolver import (solve_string,
                                               bernstein_from_string,
                                               power_law_psi,
                                               truncation_length,
                                               BernsteinTable,
                                               SENSITIVITY_TOLERANCE)
from fraclab.Kernel.Krein.KreinError import BadString, TruncationTooShort

LAMBDAS = np.geomspace(1e-2, 1e2, 41)


def random_piecewise(seed, n_nodes=41, length=400.0):
    '''A reproducible random piecewise string bounded away from 0.'''
    rng = np.random.default_rng(seed)
    return sampled_string(np.linspace(0.0, length, n_nodes),
                          rng.uniform(0.5, 2.0, n_nodes))


def test_zero_lambda():
    '''At lambda = 0 the solution is identically 1.'''
    sol = solve_string(power_law_string(1.0, 0.5), 0.0, [0.0, 1.0, 5.0])
    assert sol.psi == 0.0
    assert np.array_equal(sol.values, [1.0, 1.0, 1.0])


def test_unit_string():
    '''A = 1 gives R = exp(-z sqrt(lambda)) and psi(4) = 2.'''
    z_grid = np.linspace(0.0, 3.0, 31)
    sol = solve_string(constant_string(), 4.0, z_grid)
    assert isclose(sol.psi, 2.0, abs_tol=1e-8)
    assert sol.derivative_at_zero == -sol.psi
    assert np.allclose(sol.values, np.exp(-2.0 * z_grid), rtol=1e-9,
                       atol=1e-14)
    assert sol.values[0] == 1.0
    assert sol.sensitivity <= SENSITIVITY_TOLERANCE


@settings(max_examples=30, deadline=None)
@given(c=floats(0.1, 10.0), lam=floats(1e-2, 1e2))
def test_constant_string(c, lam):
    '''A = c gives psi = sqrt(c lambda).'''
    psi = solve_string(constant_string(c), lam).psi
    assert isclose(psi, sqrt(c * lam), rel_tol=1e-9)


@pytest.mark.parametrize('beta', [-0.5, 0.5, 4.0 / 3.0])
@pytest.mark.parametrize('lam', [1e-2, 1.0, 1e2])
def test_power_law_closed_form(beta, lam):
    '''The Riccati route reproduces the Bessel closed form of power-law
    strings.'''
    psi = solve_string(power_law_string(1.5, beta), lam).psi
    assert isclose(psi, power_law_psi(1.5, beta, lam), rel_tol=1e-7)


@pytest.mark.parametrize('string', [power_law_string(1.0, -0.5),
                                    power_law_string(2.0, 1.0),
                                    random_piecewise(0)])
def test_solution_shape(string):
    '''R starts at 1, decreases, is convex and stays in [0, 1].'''
    z_grid = np.linspace(0.0, 20.0, 201)
    sol = solve_string(string, 0.7, z_grid)
    values = sol.values
    assert values[0] == 1.0
    assert np.all(values >= 0.0)
    assert np.all(values <= 1.0)
    assert np.all(np.diff(values) <= 1e-10)
    assert np.all(np.diff(values, 2) >= -1e-10)


def test_repeated_points():
    '''Repeated evaluation points get equal values.'''
    sol = solve_string(constant_string(), 1.0, [0.0, 0.5, 0.5, 1.0])
    assert sol.values[1] == sol.values[2]


def test_unit_table():
    '''A = 1 tabulates psi = sqrt(lambda).'''
    table = bernstein_from_string(constant_string(), LAMBDAS)
    assert np.allclose(table.psi, np.sqrt(LAMBDAS), rtol=0.0, atol=1e-7)
    assert all(table.flags().values())
    assert len(list(table.rows())) == len(LAMBDAS)


@pytest.mark.parametrize('beta', [-0.5, 0.5, 4.0 / 3.0])
def test_power_law_table(beta):
    '''Power-law strings pass the Bernstein checks and give power laws.'''
    table = bernstein_from_string(power_law_string(1.0, beta), LAMBDAS)
    assert table.flags() == {'nonnegative': True, 'nondecreasing': True,
                             'concave': True}
    assert isclose(table.loglog_slope(), 1.0 / (beta + 2.0), abs_tol=1e-6)


@pytest.mark.parametrize('seed', range(5))
def test_piecewise_tables(seed):
    '''Random piecewise strings pass the Bernstein checks.'''
    table = bernstein_from_string(random_piecewise(seed),
                                  np.geomspace(1e-2, 1e2, 25))
    assert all(table.flags().values())


def test_sublinear_growth():
    '''psi(lambda)/lambda decreases to 0 when A(0+) is finite.'''
    table = bernstein_from_string(random_piecewise(7), LAMBDAS)
    ratio = table.psi / table.lams
    assert np.all(np.diff(ratio) < 0.0)
    assert ratio[-1] < 0.1 * ratio[0]


def test_comparison():
    '''A larger string has a larger psi.'''
    lams = np.geomspace(5e-2, 10.0, 7)
    lower = random_piecewise(3)
    upper = sampled_string(lower.nodes, lower.values
                           + np.linspace(0.0, 1.0, len(lower.nodes)))
    assert np.all(bernstein_from_string(lower, lams).psi
                  <= bernstein_from_string(upper, lams).psi)
    assert np.all(bernstein_from_string(constant_string(1.0), lams).psi
                  <= bernstein_from_string(constant_string(2.0), lams).psi)


def test_constant_scaling():
    '''For constant strings, psi_{cA} = sqrt(c) psi_A.'''
    base = bernstein_from_string(constant_string(1.0), LAMBDAS)
    scaled = bernstein_from_string(constant_string(9.0), LAMBDAS)
    assert np.allclose(scaled.psi, 3.0 * base.psi, rtol=1e-9)


def test_threads():
    '''Threaded tabulation gives the same values.'''
    string = power_law_string(1.0, 0.5)
    serial = bernstein_from_string(string, LAMBDAS[::4])
    threaded = bernstein_from_string(string, LAMBDAS[::4], workers=3)
    assert np.array_equal(serial.psi, threaded.psi)


def test_truncation():
    '''The truncation carries a WKB phase of 20.'''
    string = power_law_string(2.0, 1.0)
    big_z = truncation_length(string, 0.3)
    assert isclose(string.phase(0.3, big_z), 20.0, rel_tol=1e-12)
    short = sampled_string([0.0, 1.0], [1.0, 1.0])
    with pytest.raises(TruncationTooShort):
        solve_string(short, 1.0)
    long_enough = sampled_string([0.0, 30.0], [1.0, 1.0])
    assert isclose(solve_string(long_enough, 1.0).psi, 1.0, rel_tol=1e-9)


def test_bad_input():
    '''Negative parameters and unsorted grids are rejected.'''
    with pytest.raises(BadString):
        solve_string(constant_string(), -1.0)
    with pytest.raises(BadString):
        solve_string(constant_string(), 1.0, [1.0, 0.5])
    with pytest.raises(BadString):
        bernstein_from_string(constant_string(), [1.0, 0.5])
    with pytest.raises(BadString):
        bernstein_from_string(constant_string(), [0.0, 1.0])


def test_table_flags():
    '''The shape checks catch non-Bernstein tables.'''
    lams = np.array([1.0, 2.0, 3.0, 4.0])
    assert not BernsteinTable(lams, [0.0, 1.0, 3.0, 6.0]).is_concave()
    assert not BernsteinTable(lams, [1.0, 2.0, 1.5, 2.5]).is_nondecreasing()
    assert not BernsteinTable(lams, [-1.0, 0.0, 0.5, 0.7]).is_nonnegative()
    assert all(BernsteinTable(lams, np.sqrt(lams)).flags().values())
