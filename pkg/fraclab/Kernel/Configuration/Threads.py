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
'''Worker count of the trial pools.

The ``FRACLAB_THREADS`` environment variable caps the number of workers. When
it is unset, at most four workers are used.
'''

import os

from ..Exceptions import ValidationError

#: name of the environment variable capping the worker count
THREADS_VARIABLE = 'FRACLAB_THREADS'

#: default cap when the environment variable is unset
DEFAULT_THREADS = 4


def worker_count(requested=None, environ=None):
    '''Return the number of workers for a trial pool.

    :param requested: an explicit request, or `None` for the default
    :param environ: the environment mapping (by default :data:`os.environ`)
    :raises ValidationError: if the environment variable or the request is
        not a positive integer

    >>> worker_count(environ={'FRACLAB_THREADS': '2'})
    2
    >>> worker_count(8, environ={'FRACLAB_THREADS': '3'})
    3
    >>> worker_count(environ={'FRACLAB_THREADS': 'many'})
    Traceback (most recent call last):
        ...
    fraclab.Kernel.Exceptions.ValidationError: FRACLAB_THREADS must be a \
positive integer, got 'many'
    '''
    if environ is None:
        environ = os.environ
    cap = environ.get(THREADS_VARIABLE)
    if cap is None:
        cap = min(DEFAULT_THREADS, os.cpu_count() or 1)
    else:
        try:
            cap = int(cap)
        except ValueError:
            cap = 0
        if cap < 1:
            raise ValidationError(f'{THREADS_VARIABLE} must be a positive '
                                  f'integer, got {environ[THREADS_VARIABLE]!r}')
    if requested is None:
        return cap
    if int(requested) != requested or requested < 1:
        raise ValidationError(f'the worker count must be a positive integer, '
                              f'got {requested!r}')
    return min(int(requested), cap)
