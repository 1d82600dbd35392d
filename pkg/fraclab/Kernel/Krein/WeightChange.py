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
r'''Change of variables between extension weights and Krein strings.

The weighted equation :math:`\partial_y(w(y)\partial_y U) = w(y)\lambda U` with
:math:`w > 0` becomes the string equation :math:`R_{zz} = \lambda A R` under

.. math::

    z = \sigma(y) = \int_0^y \frac{dr}{w(r)}, \qquad A(\sigma(y)) = w(y)^2,

and conversely :math:`y(z) = \int_0^z \sqrt{A}`. The weight
:math:`w(y) = y^{1-2s}` of the fractional extension gives a power-law string.
'''

import json
from math import isfinite, log

import numpy as np
from scipy import integrate

from .KreinString import power_law_string, sampled_string
from .KreinError import WeightNotIntegrable

#: the geometric sample grid starts at this fraction of the top height
BOTTOM_FRACTION = 1e-8


class PowerWeight:
    '''The weight :math:`w(y) = v y^p`.

    :param float exponent: the exponent :math:`p < 1`
    :param float scale: the factor :math:`v > 0`
    :raises WeightNotIntegrable: if :math:`1/w` is not integrable at 0

    >>> round(PowerWeight(0.4).krein_string().beta, 6)
    1.333333
    '''

    def __init__(self, exponent, scale=1.0):
        self.exponent = float(exponent)
        self.scale = float(scale)
        if not (isfinite(self.exponent) and self.exponent < 1.0):
            raise WeightNotIntegrable(f'1/y^p is not integrable at 0 for '
                                      f'p = {exponent}')
        if not (isfinite(self.scale) and self.scale > 0):
            raise WeightNotIntegrable(f'the weight must be positive, got '
                                      f'scale {scale}')

    def __repr__(self):
        return f'PowerWeight({self.exponent!r}, scale={self.scale!r})'

    def __call__(self, y):
        return self.scale * np.asarray(y, dtype=float)**self.exponent

    def sigma(self, y):
        ''':math:`\\sigma(y) = y^{1-p}/((1-p)v)`, exactly.'''
        power = 1.0 - self.exponent
        return np.asarray(y, dtype=float)**power / (power * self.scale)

    def krein_string(self):
        '''The closed-form string
        :math:`A(z) = v^2((1-p)vz)^{2p/(1-p)}`.'''
        power = 1.0 - self.exponent
        beta = 2.0 * self.exponent / power
        return power_law_string(self.scale**2 * (power * self.scale)**beta,
                                beta)


def parse_weight(text):
    '''Build a weight from its command-line description: ``constant`` or a
    JSON object ``{"kind": "power", "exponent": p}`` (optionally with a
    ``"scale"``), or ``{"kind": "constant", "value": v}``.

    >>> parse_weight('{"kind": "power", "exponent": 0.4}')
    PowerWeight(0.4, scale=1.0)
    '''
    if isinstance(text, dict):
        desc = text
    elif text.strip() == 'constant':
        desc = {'kind': 'constant'}
    else:
        try:
            desc = json.loads(text)
        except json.JSONDecodeError as err:
            raise WeightNotIntegrable(f'cannot parse weight description '
                                      f'{text!r}: {err}') from None
    kind = desc.get('kind') if isinstance(desc, dict) else None
    if kind == 'constant':
        return PowerWeight(0.0, desc.get('value', 1.0))
    if kind == 'power' and 'exponent' in desc:
        return PowerWeight(desc['exponent'], desc.get('scale', 1.0))
    raise WeightNotIntegrable(f'unsupported weight description {desc!r}')


def _weight_values(weight, y_grid):
    values = np.asarray(weight(y_grid), dtype=float)
    if values.shape != y_grid.shape or not np.all(np.isfinite(values)) \
            or np.any(values <= 0):
        raise WeightNotIntegrable('the weight must be positive and finite on '
                                  '(0, y_max]')
    return values


def _quad_reciprocal(weight, lower, upper):
    result = integrate.quad(lambda y: 1.0 / float(weight(y)), lower, upper,
                            epsabs=0.0, epsrel=1e-12, limit=200,
                            full_output=1)
    value, error = result[:2]
    if len(result) > 3 or not isfinite(value) \
            or error > 1e-6 * max(abs(value), 1e-300):
        raise WeightNotIntegrable(f'1/w could not be integrated on '
                                  f'[{lower:.3g}, {upper:.3g}]')
    return value


def _sigma(weight, y_grid, values):
    if isinstance(weight, PowerWeight):
        return weight.sigma(y_grid)
    first, second = y_grid[0], y_grid[1]
    local = log(values[1] / values[0]) / log(second / first)
    if local >= 1.0:
        raise WeightNotIntegrable(f'the weight behaves like y^{local:.3g} '
                                  f'near 0, so 1/w is not integrable')
    steps = [_quad_reciprocal(weight, 0.0, first)]
    steps.extend(_quad_reciprocal(weight, lower, upper)
                 for lower, upper in zip(y_grid[:-1], y_grid[1:]))
    return np.cumsum(steps)


def string_from_weight(weight, y_max, n_points=256):
    '''Turn an extension weight into a sampled Krein string.

    :param weight: a :class:`PowerWeight` (integrated exactly) or any
        positive callable (integrated by adaptive quadrature)
    :param float y_max: the top of the sampled interval
    :param int n_points: number of geometrically spaced samples in
        :math:`[10^{-8} y_{max}, y_{max}]`
    :rtype: KreinString
    :raises WeightNotIntegrable: if :math:`1/w` is not integrable at 0 or
        `w` is not positive
    '''
    if not (isfinite(y_max) and y_max > 0):
        raise WeightNotIntegrable(f'y_max must be positive, got {y_max}')
    y_grid = np.geomspace(BOTTOM_FRACTION * y_max, y_max, n_points)
    values = _weight_values(weight, y_grid)
    return sampled_string(_sigma(weight, y_grid, values), values**2)


def weight_from_string(string, z_grid=None):
    '''Recover the weight samples :math:`(y(z_k), \\sqrt{A(z_k)})` with
    :math:`y(z) = \\int_0^z \\sqrt A`.

    :param KreinString string: the string
    :param z_grid: where to sample; by default the nodes of a sampled string
    :returns: the pair ``(y, w)``
    '''
    if z_grid is None:
        if string.nodes is None:
            raise WeightNotIntegrable('closed-form strings need an explicit '
                                      'grid')
        z_grid = string.nodes
    z_grid = np.asarray(z_grid, dtype=float)
    heights = np.array([string.power_integral(z, 0.5) for z in z_grid])
    return heights, np.sqrt(string(z_grid))
