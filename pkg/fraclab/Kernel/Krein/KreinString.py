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
r'''Krein strings: nonnegative coefficients :math:`A(z)` of the string
equation :math:`R_{zz} = \lambda A(z) R` on the half-line.

Three representations are supported:

* ``constant``: :math:`A \equiv c`;
* ``powerlaw``: :math:`A(z) = c z^\beta` with :math:`\beta > -1`;
* ``samples``: values on a grid :math:`z_0 < \dots < z_K = Z_{max}`,
  interpolated log-linearly (each cell carries the power law through its two
  end values; cells with a vanishing end value are interpolated linearly).
  Below :math:`z_0 > 0` the power law of the first cell is continued to 0;
  beyond :math:`Z_{max}` the string is continued by its last value.

The power-law interpolation makes the integrals :math:`\int A^p` exact
cell by cell.
'''

import json
from math import isfinite, log, sqrt

import numpy as np
from scipy import special

from .KreinError import BadString

#: string kinds
CONSTANT = 'constant'
POWER_LAW = 'powerlaw'
SAMPLES = 'samples'
KINDS = (CONSTANT, POWER_LAW, SAMPLES)


def _cell_power_integral(left, a_left, ratio_log, exponent, power):
    '''Integral of :math:`(a_l (z/z_l)^b)^p` over :math:`[z_l, z_l e^L]`.'''
    scaled = (power * exponent + 1.0) * ratio_log
    return a_left**power * left * ratio_log * special.exprel(scaled)


def _linear_power_integral(width, a_left, a_right, power):
    '''Integral of the p-th power of a linear function over one cell.'''
    diff = a_right - a_left
    if abs(diff) <= 1e-14 * max(a_left, a_right):
        return width * a_left**power
    return (width * (a_right**(power + 1.0) - a_left**(power + 1.0))
            / ((power + 1.0) * diff))


class KreinString:
    '''A string coefficient :math:`A \\ge 0`.

    Use :func:`constant_string`, :func:`power_law_string` or
    :func:`sampled_string` to build one.

    :ivar str kind: one of :data:`KINDS`
    :ivar float c: the constant of the closed forms
    :ivar float beta: the exponent of the power law
    :ivar nodes: the sample grid (``samples`` only)
    :ivar values: the samples of :math:`A` (``samples`` only)
    '''

    def __init__(self, kind, c=1.0, beta=0.0, nodes=None, values=None):
        if kind not in KINDS:
            raise BadString(f'unknown string kind {kind!r}, expected one of '
                            f'{KINDS}')
        self.kind = kind
        self.c = float(c)
        self.beta = float(beta)
        self.nodes = None
        self.values = None
        if kind == SAMPLES:
            self._init_samples(nodes, values)
        else:
            if not (isfinite(self.c) and self.c > 0):
                raise BadString(f'the string constant must be positive, got '
                                f'c = {c}')
            if not (isfinite(self.beta) and self.beta > -1.0):
                raise BadString(f'the power-law exponent must satisfy '
                                f'beta > -1, got beta = {beta}')

    def _init_samples(self, nodes, values):
        nodes = np.array(nodes, dtype=float)
        values = np.array(values, dtype=float)
        if nodes.ndim != 1 or len(nodes) < 2 or values.shape != nodes.shape:
            raise BadString(f'a sampled string needs at least two nodes and '
                            f'one value per node, got {nodes.shape} nodes and '
                            f'{values.shape} values')
        if not (np.all(np.isfinite(nodes)) and np.all(np.isfinite(values))):
            raise BadString('string samples must be finite')
        if nodes[0] < 0 or np.any(np.diff(nodes) <= 0):
            raise BadString('string nodes must be nonnegative and strictly '
                            'increasing')
        if np.any(values < 0):
            raise BadString(f'string values must be nonnegative, got '
                            f'{values.min()}')
        nodes.setflags(write=False)
        values.setflags(write=False)
        self.nodes = nodes
        self.values = values
        left, right = values[:-1], values[1:]
        self._loglog = (nodes[:-1] > 0) & (left > 0) & (right > 0)
        ratio_log = np.zeros(len(left))
        exponent = np.zeros(len(left))
        mask = self._loglog
        ratio_log[mask] = np.log(nodes[1:][mask] / nodes[:-1][mask])
        exponent[mask] = np.log(right[mask] / left[mask]) / ratio_log[mask]
        self._ratio_log = ratio_log
        self._exponent = exponent
        if nodes[0] > 0:
            if not mask[0]:
                raise BadString('a sampled string starting away from 0 needs '
                                'positive values on its first cell')
            if exponent[0] <= -1.0:
                raise BadString(f'the first cell continues to 0 as z^'
                                f'{exponent[0]:.3g}, which is not integrable')

    def __repr__(self):
        if self.kind == CONSTANT:
            return f'KreinString(constant, c={self.c!r})'
        if self.kind == POWER_LAW:
            return f'KreinString(powerlaw, c={self.c!r}, beta={self.beta!r})'
        return (f'KreinString(samples, K={len(self.nodes) - 1}, '
                f'Z_max={self.z_max!r})')

    @property
    def z_max(self):
        '''The last sample node, or `None` for the closed forms.'''
        if self.kind != SAMPLES:
            return None
        return float(self.nodes[-1])

    @property
    def is_constant(self):
        '''Whether :math:`A` is constant.'''
        if self.kind == CONSTANT:
            return True
        if self.kind == POWER_LAW:
            return self.beta == 0.0
        return bool(np.all(self.values == self.values[0])
                    and self.nodes[0] == 0.0)

    @property
    def constant_value(self):
        '''The value of a constant string.'''
        return self.c if self.kind != SAMPLES else float(self.values[0])

    def __call__(self, z):
        '''Evaluate :math:`A(z)` for :math:`z \\ge 0`.'''
        z = np.asarray(z, dtype=float)
        if self.kind == CONSTANT:
            out = np.full(z.shape, self.c)
        elif self.kind == POWER_LAW:
            with np.errstate(divide='ignore'):
                out = self.c * z**self.beta
        else:
            out = self._sampled(z)
        return out if out.ndim else float(out)

    def _sampled(self, z):
        nodes, values = self.nodes, self.values
        cell = np.clip(np.searchsorted(nodes, z, side='right') - 1, 0,
                       len(nodes) - 2)
        left, right = nodes[cell], nodes[cell + 1]
        a_left, a_right = values[cell], values[cell + 1]
        with np.errstate(divide='ignore', invalid='ignore'):
            loglog = a_left * (z / left)**self._exponent[cell]
            linear = a_left + (a_right - a_left) * (z - left) / (right - left)
        out = np.where(self._loglog[cell], loglog, linear)
        return np.where(z >= nodes[-1], values[-1], out)

    def log_derivative(self, z):
        ''':math:`A'(z)/A(z)`, the WKB correction of the terminal condition.
        The continuation beyond :math:`Z_{max}` is flat.'''
        if self.kind == CONSTANT:
            return 0.0
        if self.kind == POWER_LAW:
            return self.beta / z
        if z >= self.nodes[-1]:
            return 0.0
        cell = min(max(int(np.searchsorted(self.nodes, z, side='right')) - 1,
                       0), len(self.nodes) - 2)
        if self._loglog[cell]:
            return self._exponent[cell] / z
        slope = ((self.values[cell + 1] - self.values[cell])
                 / (self.nodes[cell + 1] - self.nodes[cell]))
        value = self(z)
        return slope / value if value > 0 else 0.0

    def power_integral(self, z, power=1.0):
        '''Evaluate :math:`\\int_0^z A(\\zeta)^p d\\zeta` exactly for the
        interpolated string.

        >>> string = power_law_string(1.0, 2.0)
        >>> string.power_integral(3.0, 0.5)
        4.5
        '''
        if z <= 0:
            return 0.0
        if self.kind == CONSTANT:
            return self.c**power * z
        if self.kind == POWER_LAW:
            exponent = power * self.beta + 1.0
            if exponent <= 0:
                raise BadString(f'A^{power} is not integrable at 0 for '
                                f'beta = {self.beta}')
            return self.c**power * z**exponent / exponent
        return self._sampled_power_integral(z, power)

    def _sampled_power_integral(self, z, power):
        nodes, values = self.nodes, self.values
        total = 0.0
        if nodes[0] > 0:
            first = min(z, nodes[0])
            exponent = power * self._exponent[0] + 1.0
            if exponent <= 0:
                raise BadString(f'A^{power} is not integrable at 0')
            total += values[0]**power * nodes[0] * (first / nodes[0])**exponent \
                / exponent
            if z <= nodes[0]:
                return total
        for k in range(len(nodes) - 1):
            left, right = nodes[k], nodes[k + 1]
            if z <= left:
                break
            top = min(z, right)
            if self._loglog[k]:
                ratio_log = log(top / left)
                total += _cell_power_integral(left, values[k], ratio_log,
                                              self._exponent[k], power)
            else:
                a_top = float(self._sampled(np.asarray(top)))
                total += _linear_power_integral(top - left, values[k], a_top,
                                                power)
        if z > nodes[-1]:
            total += values[-1]**power * (z - nodes[-1])
        return float(total)

    def phase(self, lam, z):
        ''':math:`\\sqrt\\lambda \\int_0^z \\sqrt{A}`, the WKB phase of the
        decaying solution.'''
        return sqrt(lam) * self.power_integral(z, 0.5)

    def as_dict(self):
        '''A JSON-friendly description, inverse of :func:`parse_string`.'''
        if self.kind == CONSTANT:
            return {'kind': CONSTANT, 'c': self.c}
        if self.kind == POWER_LAW:
            return {'kind': POWER_LAW, 'c': self.c, 'beta': self.beta}
        return {'kind': SAMPLES, 'z': self.nodes.tolist(),
                'A': self.values.tolist()}


def constant_string(c=1.0):
    '''The constant string :math:`A \\equiv c`.'''
    return KreinString(CONSTANT, c=c)


def power_law_string(c, beta):
    '''The power-law string :math:`A(z) = c z^\\beta`, :math:`\\beta > -1`.

    >>> power_law_string(2.0, 0.5)(4.0)
    4.0
    '''
    return KreinString(POWER_LAW, c=c, beta=beta)


def sampled_string(nodes, values):
    '''A string given by samples, interpolated log-linearly.

    :raises BadString: for negative or non-finite samples, or unsorted nodes
    '''
    return KreinString(SAMPLES, nodes=nodes, values=values)


def parse_string(text):
    '''Build a string from its command-line description: ``constant``, or a
    JSON object such as ``{"kind": "powerlaw", "c": 1.0, "beta": -0.5}``,
    ``{"kind": "constant", "c": 2.0}`` or
    ``{"kind": "samples", "z": [...], "A": [...]}``.

    >>> parse_string('{"kind": "powerlaw", "c": 1.0, "beta": -0.5}')
    KreinString(powerlaw, c=1.0, beta=-0.5)
    >>> parse_string('constant')
    KreinString(constant, c=1.0)
    '''
    if isinstance(text, dict):
        desc = text
    elif text.strip() in (CONSTANT, POWER_LAW):
        desc = {'kind': text.strip()}
    else:
        try:
            desc = json.loads(text)
        except json.JSONDecodeError as err:
            raise BadString(f'cannot parse string description {text!r}: '
                            f'{err}') from None
    if not isinstance(desc, dict) or 'kind' not in desc:
        raise BadString(f'a string description needs a "kind", got {desc!r}')
    kind = desc['kind']
    try:
        if kind == CONSTANT:
            return constant_string(desc.get('c', 1.0))
        if kind == POWER_LAW:
            return power_law_string(desc.get('c', 1.0), desc['beta'])
        if kind == SAMPLES:
            return sampled_string(desc['z'], desc['A'])
    except (KeyError, TypeError) as err:
        raise BadString(f'incomplete {kind} string description: missing or '
                        f'invalid {err}') from None
    raise BadString(f'unknown string kind {kind!r}, expected one of {KINDS}')
