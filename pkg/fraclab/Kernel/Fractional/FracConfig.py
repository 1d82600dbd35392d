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
'''Configuration of the fractional powers and of their time quadrature.'''

from dataclasses import dataclass
from math import isfinite

from .FractionalError import SOutOfRange, BadQuadrature


def check_s(s):
    '''Check that `s` lies strictly between 0 and 1 and return it as a float.

    >>> check_s(0.5)
    0.5
    >>> check_s(1)
    Traceback (most recent call last):
        ...
    fraclab.Kernel.Fractional.FractionalError.SOutOfRange: the fractional \
order must satisfy 0 < s < 1, got s = 1
    '''
    try:
        value = float(s)
    except (TypeError, ValueError):
        raise SOutOfRange(f'the fractional order must be a number, got '
                          f'{s!r}') from None
    if not (isfinite(value) and 0.0 < value < 1.0):
        raise SOutOfRange(f'the fractional order must satisfy 0 < s < 1, got '
                          f's = {s}')
    return value


@dataclass(frozen=True)
class FracConfig:
    '''The fractional order together with the parameters of the log-time
    trapezoid used by the subordination and kernel routes.

    :param float s: the fractional order, ``0 < s < 1``
    :param int nodes: number of trapezoid nodes in the resolved window
    :param float small_time: lower end of the window, in units of
        :math:`1/\\lambda_{max}`
    :param float large_time: upper end of the window, in units of
        :math:`1/\\lambda_{min}^+`
    :param int small_time_order: Taylor order of the small-time surrogate
        below the window (1 is :math:`P_tf - f \\approx tLf`)
    :param float tolerance: relative threshold on the estimated neglected
        tails

    >>> FracConfig(0.25).a
    0.5
    '''
    s: float
    nodes: int = 256
    small_time: float = 1e-6
    large_time: float = 40.0
    small_time_order: int = 3
    tolerance: float = 1e-10

    def __post_init__(self):
        object.__setattr__(self, 's', check_s(self.s))
        if int(self.nodes) != self.nodes or self.nodes < 8:
            raise BadQuadrature(f'at least 8 quadrature nodes are needed, got '
                                f'{self.nodes}')
        if int(self.small_time_order) != self.small_time_order \
                or self.small_time_order < 1:
            raise BadQuadrature(f'small_time_order must be a positive '
                                f'integer, got {self.small_time_order}')
        for name in ('small_time', 'large_time', 'tolerance'):
            value = getattr(self, name)
            if not (isfinite(value) and value > 0):
                raise BadQuadrature(f'{name} must be positive, got {value}')
        if self.small_time >= self.large_time:
            raise BadQuadrature('the quadrature window is empty: small_time '
                                f'{self.small_time} >= large_time '
                                f'{self.large_time}')

    @property
    def a(self):
        '''The weight exponent :math:`a = 1 - 2s` of the extension.'''
        return 1.0 - 2.0 * self.s
