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
'''Tolerance tiers of the acceptance checks.

The ``strict`` tier holds the default thresholds; the ``relaxed`` tier
multiplies every threshold by ten, for orders close to 0 or 1.
'''

from dataclasses import dataclass, fields, replace

from ..Exceptions import ValidationError

#: factor between the strict and relaxed tiers
RELAXED_FACTOR = 10.0

TIERS = ('strict', 'relaxed')


@dataclass(frozen=True)
class Tolerances:
    '''Thresholds of the acceptance criteria.

    :param float subordination: four-route agreement of the subordination
        route
    :param float kernel: four-route agreement of the jump-kernel route
    :param float extension: four-route agreement of the extension PDE
    :param float semi_analytic: four-route agreement of the semi-analytic
        Dirichlet-to-Neumann map
    :param float harmonic_dtn: unweighted normal derivative at order 1/2
    :param float krein: closed form of the unit string
    :param float weight_loop: exponent and constant of the weight loop
    :param float ring_slope: kernel decay slope on the ring
    :param float torus_slope: kernel decay slope on the torus
    :param float energy_identity: product energy decomposition
    :param float scaling: Harnack ratios under data scaling
    :param float semigroup: semigroup composition
    :param float conservation: conservation of the unit function
    :param float even_extension: extrapolated even-extension residual
    :param float even_ratio: largest accepted residual ratio per mesh
        doubling
    :param float stability: largest accepted change of an empirical constant
        under refinement (a factor)
    :param float geometry_factor: largest accepted factor between product
        and base geometry constants
    :param float sandwich: largest accepted intrinsic metric sandwich ratio
    '''
    subordination: float = 1e-6
    kernel: float = 1e-6
    extension: float = 1e-3
    semi_analytic: float = 1e-4
    harmonic_dtn: float = 1e-6
    krein: float = 1e-7
    weight_loop: float = 1e-3
    ring_slope: float = 0.3
    torus_slope: float = 0.45
    energy_identity: float = 1e-12
    scaling: float = 1e-12
    semigroup: float = 1e-10
    conservation: float = 1e-12
    even_extension: float = 1e-6
    even_ratio: float = 0.6
    stability: float = 2.0
    geometry_factor: float = 4.0
    sandwich: float = 4.0
    tier: str = 'strict'

    def relaxed(self):
        '''Return the relaxed tier: every tolerance times ten. Ratio and
        factor thresholds and the decay slope windows are kept.'''
        if self.tier == 'relaxed':
            return self
        fixed = {'ring_slope', 'torus_slope', 'even_ratio', 'stability',
                 'geometry_factor', 'sandwich', 'tier'}
        changes = {field.name: getattr(self, field.name) * RELAXED_FACTOR
                   for field in fields(self) if field.name not in fixed}
        return replace(self, tier='relaxed', **changes)


def tolerances(tier='strict'):
    '''Return the tolerances of the given tier.

    >>> tolerances('relaxed').tier
    'relaxed'
    >>> tolerances('relaxed').stability
    2.0
    >>> tolerances('loose')
    Traceback (most recent call last):
        ...
    fraclab.Kernel.Exceptions.ValidationError: unknown tolerance tier \
'loose', expected one of ('strict', 'relaxed')
    '''
    if tier not in TIERS:
        raise ValidationError(f'unknown tolerance tier {tier!r}, expected one '
                              f'of {TIERS}')
    strict = Tolerances()
    return strict if tier == 'strict' else strict.relaxed()
