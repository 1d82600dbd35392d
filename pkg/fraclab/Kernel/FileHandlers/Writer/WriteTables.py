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
'''Writing TSV tables.

Every table starts with the format version and a one-line JSON echo of the
configuration that produced it, followed by the line of column names. The
files are read back by :mod:`~.ParseFunction`.
'''

import json

import numpy as np

from ...Utils import format_cell
from ..Parser.ParseFunction import FORMAT_TAG, FORMAT_VERSION, CONFIG_TAG


def to_jsonable(obj):
    '''Convert numpy scalars and arrays, tuples and non-finite floats to
    plain JSON values. Non-finite floats become the strings ``'inf'``,
    ``'-inf'`` and ``'nan'``.

    >>> to_jsonable({'x': np.float64(0.5), 'r': (1, np.int64(2)),
    ...              'c': float('inf')})
    {'x': 0.5, 'r': [1, 2], 'c': 'inf'}
    '''
    if isinstance(obj, dict):
        return {str(key): to_jsonable(value) for key, value in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [to_jsonable(value) for value in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        obj = float(obj)
        return obj if np.isfinite(obj) else repr(obj)
    return obj


def config_line(config):
    '''The compact, key-sorted JSON echo of a configuration.'''
    return json.dumps(to_jsonable(config), sort_keys=True,
                      separators=(',', ':'))


def write_header(ofile, config):
    '''Write the format version and the config echo.'''
    ofile.write(f'# {FORMAT_TAG} {FORMAT_VERSION}\n')
    ofile.write(f'# {CONFIG_TAG} {config_line(config)}\n')


def write_table(ofile, columns, rows, config):
    '''Write a table with a header.

    :param ofile: a text stream
    :param columns: the column names
    :param rows: an iterable of sequences, one entry per column
    :param dict config: the configuration echo
    '''
    write_header(ofile, config)
    ofile.write('\t'.join(columns) + '\n')
    for row in rows:
        ofile.write('\t'.join(format_cell(value) for value in row) + '\n')


def write_function(ofile, space, values, config):
    '''Write a function over the vertices of `space`.'''
    values = space.check_function(values)
    write_table(ofile, ('vertex_id', 'value'),
                zip(space.vertex_ids, values.tolist()), config)


def write_field(ofile, field, config):
    '''Write an :class:`~.ExtensionField` as ``(vertex_id, y, U)`` rows.'''
    write_table(ofile, ('vertex_id', 'y', 'U'), field.rows(), config)
