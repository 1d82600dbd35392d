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
'''Reading graph files.

A graph file is a UTF-8 JSON object::

    {"vertices": [{"id": "a", "mu": 1.0}, ...],
     "edges": [{"u": "a", "v": "b", "w": 0.5}, ...],
     "metric": [[0.0, 1.0, ...], ...]}

The ``metric`` matrix is optional and follows the order of ``vertices``.
Vertex ids are kept as strings.
'''

import json
from pathlib import Path

import numpy as np

from ...Dirichlet.DirichletSpace import build_space
from ..FileError import GraphFormatError


def _field(record, key, kind, where):
    try:
        value = record[key]
    except (KeyError, TypeError):
        raise GraphFormatError(f'{where}: missing field {key!r}') from None
    if kind is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise GraphFormatError(f'{where}: field {key!r} must be a number, '
                                   f'got {value!r}')
        return float(value)
    return str(value)


def parse_space(desc, source='<graph>'):
    '''Build a :class:`~.DirichletSpace` from a decoded graph description.

    :param dict desc: the decoded JSON object
    :param str source: a name for the messages
    :raises GraphFormatError: for missing fields, duplicate ids and
        asymmetric metrics

    >>> space = parse_space({'vertices': [{'id': 'a', 'mu': 1.0},
    ...                                   {'id': 'b', 'mu': 2.0}],
    ...                      'edges': [{'u': 'a', 'v': 'b', 'w': 0.5}]})
    >>> space.vertex_ids, space.measure.tolist()
    (('a', 'b'), [1.0, 2.0])
    >>> parse_space({'vertices': [{'id': 'a', 'mu': 1.0},
    ...                           {'id': 'a', 'mu': 1.0}], 'edges': []})
    Traceback (most recent call last):
        ...
    fraclab.Kernel.FileHandlers.FileError.GraphFormatError: <graph>: \
duplicate vertex id 'a'
    '''
    if not isinstance(desc, dict):
        raise GraphFormatError(f'{source}: expected a JSON object')
    vertices = desc.get('vertices')
    edges = desc.get('edges', [])
    if not isinstance(vertices, list) or not vertices:
        raise GraphFormatError(f'{source}: "vertices" must be a nonempty '
                               'list')
    if not isinstance(edges, list):
        raise GraphFormatError(f'{source}: "edges" must be a list')

    labels = []
    masses = {}
    for k, record in enumerate(vertices):
        where = f'{source}: vertex #{k}'
        label = _field(record, 'id', str, where)
        if label in masses:
            raise GraphFormatError(f'{source}: duplicate vertex id {label!r}')
        labels.append(label)
        masses[label] = _field(record, 'mu', float, where)

    conductances = {}
    for k, record in enumerate(edges):
        where = f'{source}: edge #{k}'
        head = _field(record, 'u', str, where)
        tail = _field(record, 'v', str, where)
        weight = _field(record, 'w', float, where)
        if head not in masses or tail not in masses:
            raise GraphFormatError(f'{where}: unknown vertex in '
                                   f'({head!r}, {tail!r})')
        if head == tail:
            raise GraphFormatError(f'{where}: self-loop on {head!r}')
        key = (head, tail) if (tail, head) not in conductances else (tail,
                                                                    head)
        if key in conductances:
            raise GraphFormatError(f'{where}: edge ({head!r}, {tail!r}) '
                                   'given twice')
        conductances[key] = weight

    metric = desc.get('metric')
    if metric is not None:
        try:
            metric = np.array(metric, dtype=float)
        except (TypeError, ValueError):
            raise GraphFormatError(f'{source}: "metric" must be a numeric '
                                   'matrix') from None
        if metric.shape != (len(labels), len(labels)):
            raise GraphFormatError(f'{source}: "metric" has shape '
                                   f'{metric.shape}, expected '
                                   f'{(len(labels), len(labels))}')
        if not np.array_equal(metric, metric.T):
            row, col = np.argwhere(metric != metric.T)[0]
            raise GraphFormatError(f'{source}: asymmetric metric for the pair '
                                   f'({labels[row]!r}, {labels[col]!r})')
    return build_space(labels, masses, conductances, metric_override=metric)


def load_space(path):
    '''Read a graph file.

    :raises GraphFormatError: if the file cannot be read or decoded, or
        describes an invalid graph (see :func:`parse_space`)
    '''
    path = Path(path)
    try:
        text = path.read_text(encoding='utf-8')
    except OSError as err:
        raise GraphFormatError(f'{path}: cannot read graph file: '
                               f'{err.strerror}') from None
    except UnicodeDecodeError:
        raise GraphFormatError(f'{path}: not a UTF-8 text file') from None
    try:
        desc = json.loads(text)
    except json.JSONDecodeError as err:
        raise GraphFormatError(f'{path}: invalid JSON: {err}') from None
    return parse_space(desc, str(path))
