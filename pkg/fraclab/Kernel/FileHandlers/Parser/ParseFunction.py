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
'''Reading function and field tables.

Tables are tab-separated text. Lines starting with ``#`` are comments,
except for the two header lines written by :mod:`~.WriteTables`::

    # fraclab-format: 1
    # config: {"command": "frac apply", "s": 0.5, ...}

A function table has the columns ``vertex_id`` and ``value``; a field table
has the columns ``vertex_id``, ``y`` and ``U``. The line naming the columns
is optional.
'''

import json
from pathlib import Path

import numpy as np

from ...Dirichlet.DirichletError import UnknownVertex
from ..FileError import FunctionFormatError

#: the version of the table format
FORMAT_VERSION = 1
FORMAT_TAG = 'fraclab-format:'
CONFIG_TAG = 'config:'


def _read_lines(path):
    path = Path(path)
    try:
        return path.read_text(encoding='utf-8').splitlines()
    except OSError as err:
        raise FunctionFormatError(f'{path}: cannot read table: '
                                  f'{err.strerror}') from None
    except UnicodeDecodeError:
        raise FunctionFormatError(f'{path}: not a UTF-8 text file') from None


def parse_table(lines, n_columns, header, source='<table>'):
    '''Split table lines into the config echo and the data rows.

    :param lines: the lines of the file
    :param int n_columns: the expected number of columns
    :param tuple header: the optional column names
    :returns: the pair ``(config, rows)``, where `rows` is a list of
        ``(line_number, fields)``
    :raises FunctionFormatError: for a wrong column count, an unsupported
        format version or an invalid config echo

    >>> parse_table(['# fraclab-format: 1', 'vertex_id\\tvalue', 'a\\t1.5'],
    ...             2, ('vertex_id', 'value'))
    ({}, [(3, ['a', '1.5'])])
    '''
    config = {}
    rows = []
    seen_data = False
    for number, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        if line.startswith('#'):
            comment = line[1:].strip()
            if comment.startswith(FORMAT_TAG):
                version = comment[len(FORMAT_TAG):].strip()
                if version != str(FORMAT_VERSION):
                    raise FunctionFormatError(
                        f'{source}:{number}: unsupported format version '
                        f'{version!r}')
            elif comment.startswith(CONFIG_TAG):
                try:
                    config = json.loads(comment[len(CONFIG_TAG):])
                except json.JSONDecodeError as err:
                    raise FunctionFormatError(f'{source}:{number}: invalid '
                                              f'config echo: {err}') from None
                if not isinstance(config, dict):
                    raise FunctionFormatError(f'{source}:{number}: the config '
                                              'echo must be a JSON object')
            continue
        fields = line.split('\t')
        if len(fields) != n_columns:
            raise FunctionFormatError(f'{source}:{number}: expected '
                                      f'{n_columns} columns, got '
                                      f'{len(fields)}')
        if not seen_data and tuple(fields) == tuple(header):
            seen_data = True
            continue
        seen_data = True
        rows.append((number, fields))
    return config, rows


def _to_float(text, source, number):
    try:
        value = float(text)
    except ValueError:
        raise FunctionFormatError(f'{source}:{number}: {text!r} is not a '
                                  'number') from None
    if not np.isfinite(value):
        raise FunctionFormatError(f'{source}:{number}: non-finite value '
                                  f'{text!r}')
    return value


def parse_function(lines, space, source='<table>'):
    '''Build a vertex array from the lines of a function table.

    :raises FunctionFormatError: for unknown, duplicate or missing vertices
        and for values that are not finite numbers
    '''
    _, rows = parse_table(lines, 2, ('vertex_id', 'value'), source)
    values = np.full(len(space), np.nan)
    for number, (label, text) in rows:
        try:
            pos = space.position(label)
        except UnknownVertex:
            raise FunctionFormatError(f'{source}:{number}: unknown vertex '
                                      f'{label!r}') from None
        if not np.isnan(values[pos]):
            raise FunctionFormatError(f'{source}:{number}: duplicate vertex '
                                      f'{label!r}')
        values[pos] = _to_float(text, source, number)
    if np.any(np.isnan(values)):
        missing = space.vertex_ids[int(np.argmax(np.isnan(values)))]
        raise FunctionFormatError(f'{source}: no value for vertex '
                                  f'{missing!r}')
    return values


def load_function(path, space):
    '''Read a function table over the vertices of `space`.

    :returns: the array of values in the vertex order of `space`
    :raises FunctionFormatError: see :func:`parse_function`
    '''
    return parse_function(_read_lines(path), space, str(path))


def parse_field(lines, source='<table>'):
    '''Parse the lines of a field table.

    :returns: the tuple ``(config, labels, heights, values)``, where `values`
        has one row per label and one column per height
    :raises FunctionFormatError: if the rows do not form a full
        vertex-by-height grid
    '''
    config, rows = parse_table(lines, 3, ('vertex_id', 'y', 'U'), source)
    if not rows:
        raise FunctionFormatError(f'{source}: empty field table')
    labels = {}
    heights = {}
    entries = {}
    for number, (label, y_text, u_text) in rows:
        height = _to_float(y_text, source, number)
        labels.setdefault(label, len(labels))
        heights.setdefault(height, len(heights))
        key = (labels[label], heights[height])
        if key in entries:
            raise FunctionFormatError(f'{source}:{number}: duplicate entry for '
                                      f'({label!r}, {y_text})')
        entries[key] = _to_float(u_text, source, number)
    if len(entries) != len(labels) * len(heights):
        raise FunctionFormatError(f'{source}: expected {len(labels)} x '
                                  f'{len(heights)} entries, got '
                                  f'{len(entries)}')
    order = sorted(heights, key=heights.get)
    if order != sorted(order):
        raise FunctionFormatError(f'{source}: heights must increase within '
                                  'each vertex')
    values = np.empty((len(labels), len(heights)))
    for (row, col), value in entries.items():
        values[row, col] = value
    return config, list(labels), np.array(order), values


def load_field(path):
    '''Read a field table written by ``extend solve``.

    :returns: the tuple ``(config, labels, heights, values)``
    :raises FunctionFormatError: see :func:`parse_field`
    '''
    return parse_field(_read_lines(path), str(path))
