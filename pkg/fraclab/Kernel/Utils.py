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
'''Small helpers shared by the kernel modules and the command line.'''

import numpy as np

from .Exceptions import ValidationError


def format_float(number):
    '''Format a float for the TSV and JSON outputs.

    The shortest representation that round-trips is used, so that identical
    numbers always produce identical text. Negative zero is normalized.

    :rtype: str

    >>> format_float(0.1)
    '0.1'
    >>> format_float(-0.0)
    '0.0'
    >>> format_float(1e-20)
    '1e-20'
    >>> format_float(np.float64(2.5))
    '2.5'
    >>> format_float(float('inf'))
    'inf'
    '''
    number = float(number)
    if number == 0.0:
        number = 0.0
    return repr(number)


def trial_generators(seed, n_trials):
    '''Return one independent random generator per trial.

    The generators are spawned from a single :class:`numpy.random.SeedSequence`,
    so that the stream of trial `k` depends on `seed` and `k` only, whatever
    the order in which trials are run.

    >>> first = [rng.random() for rng in trial_generators(7, 3)]
    >>> again = [rng.random() for rng in trial_generators(7, 3)]
    >>> first == again
    True
    '''
    if int(n_trials) != n_trials or n_trials < 1:
        raise ValidationError(f'the number of trials must be a positive '
                              f'integer, got {n_trials!r}')
    children = np.random.SeedSequence(seed).spawn(int(n_trials))
    return [np.random.default_rng(child) for child in children]


def split_pair(text, name='option'):
    '''Parse a ``key:value`` pair of the command line, such as the
    ``center:radius`` argument of ``--ball``.

    :returns: the pair of strings
    :raises ValidationError: if `text` does not contain exactly one colon

    >>> split_pair('3:2.5')
    ('3', '2.5')
    >>> split_pair('3')
    Traceback (most recent call last):
        ...
    fraclab.Kernel.Exceptions.ValidationError: expected KEY:VALUE in option '3'
    '''
    parts = text.rsplit(':', 1)
    if len(parts) != 2 or not parts[0] or not parts[1]:
        raise ValidationError(f'expected KEY:VALUE in {name} {text!r}')
    return parts[0], parts[1]


def format_cell(value):
    '''Format one cell of a TSV table: floats with :func:`format_float`,
    tuples and lists comma-joined.

    >>> format_cell((3, 4))
    '3,4'
    >>> format_cell(np.float64(0.25))
    '0.25'
    '''
    if isinstance(value, (float, np.floating)):
        return format_float(value)
    if isinstance(value, (tuple, list)):
        return ','.join(str(item) for item in value)
    return str(value)
