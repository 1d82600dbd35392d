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
r'''Solution of the string equation by the Riccati method.

For :math:`\lambda > 0` the decaying solution of :math:`R_{zz} = \lambda A R`,
:math:`R(0) = 1`, is written :math:`R(z) = \exp(-\int_0^z W)` with
:math:`W = -R_z/R`, which satisfies

.. math::

    W' = W^2 - \lambda A.

Backward integration from a truncation point :math:`Z` is stable for the
decaying branch: perturbations of :math:`W(Z)` are damped by
:math:`\exp(-2\int_z^Z W)`. The terminal value is the WKB value
:math:`W(Z) = \sqrt{\lambda A(Z)} + A'(Z)/(4A(Z))` and
:math:`\psi(\lambda) = W(0) = -R_z(0, \lambda)`.
'''

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import sqrt
import warnings

import numpy as np
from scipy import integrate, special

from .KreinString import SAMPLES
from .KreinError import (BadString, RiccatiBlowup, TruncationTooShort,
                         TruncationSensitivityWarning)

#: WKB phase at the truncation point
TRUNCATION_PHASE = 20.0

#: largest accepted relative shift of psi when the truncation is doubled
SENSITIVITY_TOLERANCE = 1e-6

#: the integration stops at this fraction of the truncation length; the last
#: step to 0 uses the local closed form
STOP_FRACTION = 1e-9

RTOL = 1e-12
ATOL = 1e-14


def truncation_length(string, lam, phase=TRUNCATION_PHASE):
    '''The length :math:`Z` at which the WKB phase reaches `phase`.

    For sampled strings this is the last node, which must carry enough
    phase.

    :raises TruncationTooShort: if a sampled string is too short for `lam`
    '''
    if string.kind == SAMPLES:
        z_max = string.z_max
        reached = string.phase(lam, z_max)
        if reached < phase:
            raise TruncationTooShort(f'the string carries a WKB phase of '
                                     f'{reached:.3g} < {phase} at '
                                     f'lambda = {lam:.6g}; extend it beyond '
                                     f'Z_max = {z_max:.6g}')
        return z_max
    exponent = 1.0 + 0.5 * string.beta
    return (phase * exponent / sqrt(lam * string.c))**(1.0 / exponent)


def power_law_psi(c, beta, lam):
    r''':math:`\psi` of the power-law string :math:`A(z) = cz^\beta` in closed
    form,

    .. math::

        \psi(\lambda) = \frac{\Gamma(1-\nu)}{\nu\Gamma(\nu)}
        \left(\frac{\sqrt{c\lambda}}{\beta + 2}\right)^{2\nu},
        \qquad \nu = \frac{1}{\beta + 2}.

    >>> float(power_law_psi(1.0, 0.0, 4.0))
    2.0
    '''
    nu = 1.0 / (beta + 2.0)
    base = np.sqrt(c * np.asarray(lam, dtype=float)) / (beta + 2.0)
    return special.gamma(1.0 - nu) / (nu * special.gamma(nu)) * base**(2.0 * nu)


@dataclass(frozen=True)
class StringSolution:
    '''The decaying solution :math:`R(\\cdot, \\lambda)` on a grid.

    :ivar float lam: the spectral parameter
    :ivar z: the grid
    :ivar values: :math:`R(z, \\lambda)` on the grid
    :ivar float psi: :math:`\\psi(\\lambda) = -R_z(0, \\lambda)`
    :ivar float truncation: the truncation length used
    :ivar float sensitivity: relative shift of :math:`\\psi` when the
        truncation is doubled
    '''
    lam: float
    z: np.ndarray
    values: np.ndarray
    psi: float
    truncation: float
    sensitivity: float

    @property
    def derivative_at_zero(self):
        ''':math:`R_z(0, \\lambda)`.'''
        return -self.psi


def _riccati(string, lam, big_z, points):
    '''Integrate backward from `big_z` and return :math:`W(0)` and
    :math:`\\int_0^z W` at the increasing positive `points`.'''
    a_top = string(big_z)
    terminal = sqrt(lam * a_top) + 0.25 * string.log_derivative(big_z)
    terminal = max(terminal, 0.5 * sqrt(lam * a_top))
    z_stop = big_z * STOP_FRACTION
    if len(points):
        z_stop = min(z_stop, points[0])
    t_eval = points[::-1]
    if len(t_eval) == 0 or t_eval[-1] > z_stop:
        t_eval = np.append(t_eval, z_stop)

    def rhs(z, state):
        return [state[0]**2 - lam * string(z), state[0]]

    sol = integrate.solve_ivp(rhs, (big_z, z_stop), [terminal, 0.0],
                              method='DOP853', t_eval=t_eval, rtol=RTOL,
                              atol=ATOL)
    if sol.status != 0 or not np.all(np.isfinite(sol.y)):
        raise RiccatiBlowup(f'backward Riccati integration failed at '
                            f'lambda = {lam:.6g}: {sol.message}')
    if np.any(sol.y[0] < 0):
        raise RiccatiBlowup(f'the Riccati variable changed sign at '
                            f'lambda = {lam:.6g}')
    w_stop, q_stop = sol.y[0, -1], sol.y[1, -1]
    # closed-form step over [0, z_stop]
    psi = w_stop + lam * string.power_integral(z_stop) - w_stop**2 * z_stop
    q_zero = q_stop - w_stop * z_stop
    cumulative = sol.y[1, :len(points)][::-1] - q_zero
    return psi, cumulative


def _solve(string, lam, z_grid, big_z):
    positive = z_grid > 0
    points, inverse = np.unique(z_grid[positive], return_inverse=True)
    psi, cumulative = _riccati(string, lam, big_z, points)
    values = np.ones(len(z_grid))
    values[positive] = np.exp(-cumulative[inverse])
    return psi, values


def solve_string(string, lam, z_grid=None, check=True):
    '''Solve the string equation for one spectral parameter.

    :param string: the :class:`~.KreinString`
    :param float lam: the spectral parameter, :math:`\\lambda \\ge 0`
    :param z_grid: nondecreasing nonnegative points where :math:`R` is
        wanted; by default only :math:`z = 0`
    :param bool check: rerun with a doubled truncation and raise if
        :math:`\\psi` moves by more than :data:`SENSITIVITY_TOLERANCE`
    :rtype: StringSolution
    :raises RiccatiBlowup: if the integration fails
    :raises TruncationTooShort: if the truncation is not long enough

    >>> from fraclab.Kernel.Krein.KreinString import constant_string
    >>> sol = solve_string(constant_string(), 4.0, [0.0, 1.0])
    >>> round(sol.psi, 10)
    2.0
    >>> bool(np.isclose(sol.values[1], np.exp(-2.0), rtol=1e-9))
    True
    '''
    z_grid = np.array([0.0] if z_grid is None else z_grid, dtype=float)
    if z_grid.ndim != 1 or np.any(z_grid < 0) or np.any(np.diff(z_grid) < 0):
        raise BadString('the evaluation grid must be nonnegative and sorted')
    if not (np.isfinite(lam) and lam >= 0):
        raise BadString(f'the spectral parameter must be nonnegative, got '
                        f'{lam}')
    if lam == 0.0:
        return StringSolution(0.0, z_grid, np.ones(len(z_grid)), 0.0, 0.0,
                              0.0)
    big_z = truncation_length(string, lam)
    if len(z_grid):
        big_z = max(big_z, float(z_grid[-1]))
    psi, values = _solve(string, lam, z_grid, big_z)
    sensitivity = 0.0
    if check:
        psi_long, _ = _solve(string, lam, np.empty(0), 2.0 * big_z)
        sensitivity = abs(psi_long - psi) / max(abs(psi_long), 1e-300)
        if sensitivity > SENSITIVITY_TOLERANCE:
            raise TruncationTooShort(f'psi({lam:.6g}) moves by '
                                     f'{sensitivity:.3e} (relative) when the '
                                     f'truncation {big_z:.6g} is doubled')
        if sensitivity > 0.1 * SENSITIVITY_TOLERANCE:
            warnings.warn(f'psi({lam:.6g}) is sensitive to the truncation: '
                          f'{sensitivity:.3e}', TruncationSensitivityWarning,
                          stacklevel=2)
    return StringSolution(float(lam), z_grid, values, float(psi),
                          float(big_z), float(sensitivity))


class BernsteinTable:
    '''Tabulated values of :math:`\\psi` on a grid of spectral parameters.

    :param lams: positive, increasing spectral parameters
    :param psi: the values :math:`\\psi(\\lambda)`
    '''

    #: slack of the shape checks
    SLACK = 1e-8

    def __init__(self, lams, psi):
        self.lams = np.asarray(lams, dtype=float)
        self.psi = np.asarray(psi, dtype=float)

    def __len__(self):
        return len(self.lams)

    def __repr__(self):
        return (f'BernsteinTable({len(self)} values on '
                f'[{self.lams[0]:.3g}, {self.lams[-1]:.3g}])')

    def is_nonnegative(self):
        ''':math:`\\psi \\ge 0`.'''
        return bool(np.all(self.psi >= -self.SLACK))

    def is_nondecreasing(self):
        ''':math:`\\psi` does not decrease along the grid.'''
        scale = max(1.0, float(np.max(np.abs(self.psi), initial=0.0)))
        return bool(np.all(np.diff(self.psi) >= -self.SLACK * scale))

    def is_concave(self):
        '''The difference quotients of :math:`\\psi` do not increase.'''
        if len(self) < 3:
            return True
        slopes = np.diff(self.psi) / np.diff(self.lams)
        scale = np.maximum(1.0, np.abs(slopes[:-1]))
        return bool(np.all(np.diff(slopes) <= self.SLACK * scale))

    def flags(self):
        '''The necessary conditions for a Bernstein function, by name.'''
        return {'nonnegative': self.is_nonnegative(),
                'nondecreasing': self.is_nondecreasing(),
                'concave': self.is_concave()}

    def loglog_slope(self):
        '''The exponent of the least-squares power law through the table.'''
        slope, _ = np.polyfit(np.log(self.lams), np.log(self.psi), 1)
        return float(slope)

    def rows(self):
        '''Iterate over ``(lambda, psi)`` pairs.'''
        return zip(self.lams.tolist(), self.psi.tolist())


def bernstein_from_string(string, lam_grid, workers=1):
    '''Tabulate :math:`\\psi` for a string.

    :param lam_grid: positive increasing spectral parameters
    :param int workers: number of threads; the parameters are independent
    :rtype: BernsteinTable
    :raises BadString: if the grid is not positive and increasing
    '''
    lams = np.asarray(lam_grid, dtype=float)
    if lams.ndim != 1 or len(lams) == 0 or np.any(lams <= 0) \
            or np.any(np.diff(lams) <= 0):
        raise BadString('the spectral grid must be positive and increasing')

    def psi_at(lam):
        return solve_string(string, lam).psi

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            psi = list(pool.map(psi_at, lams))
    else:
        psi = [psi_at(lam) for lam in lams]
    return BernsteinTable(lams, psi)
