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
'''Generators for the standard Dirichlet spaces used in tests, fixtures and
experiments.

Vertices carry unit measure and edges unit conductance unless stated
otherwise; the metric is the hop-count metric.
'''

from itertools import product

import numpy as np
from scipy import sparse

from .DirichletSpace import DirichletSpace, build_space
from .DirichletError import ShapeMismatch


def single_vertex_space(mass=1.0):
    '''A one-point space with no edges.'''
    return DirichletSpace([0], [mass], sparse.csr_matrix((1, 1)))


def two_point_space(weight=1.0, masses=(1.0, 1.0)):
    '''Two vertices joined by an edge of conductance `weight`.

    >>> two_point_space().laplacian.toarray().tolist()
    [[1.0, -1.0], [-1.0, 1.0]]
    '''
    return build_space([0, 1], list(masses), {(0, 1): weight})


def path_space(n_vertices, weight=1.0, mass=1.0):
    '''The path ``0 - 1 - ... - (n_vertices - 1)``.'''
    if n_vertices < 1:
        raise ShapeMismatch('a path needs at least one vertex')
    if n_vertices == 1:
        return single_vertex_space(mass)
    edges = {(i, i + 1): weight for i in range(n_vertices - 1)}
    return build_space(range(n_vertices), [mass] * n_vertices, edges)


def cycle_space(n_vertices, weight=1.0, mass=1.0):
    '''The cycle (ring) on `n_vertices` vertices.

    >>> cycle_space(4).metric[0].tolist()
    [0.0, 1.0, 2.0, 1.0]
    '''
    if n_vertices < 3:
        raise ShapeMismatch('a cycle needs at least three vertices')
    edges = {(i, (i + 1) % n_vertices): weight for i in range(n_vertices)}
    return build_space(range(n_vertices), [mass] * n_vertices, edges,
                       lattice_shape=(n_vertices,))


def _lattice_edges(shape, periodic):
    edges = {}
    for site in product(*(range(n) for n in shape)):
        for axis, size in enumerate(shape):
            if not periodic and site[axis] + 1 >= size:
                continue
            if periodic and size < 3:
                raise ShapeMismatch('periodic axes need at least three sites')
            neigh = list(site)
            neigh[axis] = (site[axis] + 1) % size
            edges[(site, tuple(neigh))] = 1.0
    return edges


def grid_space(shape):
    '''The rectangular grid graph with vertices labelled by index tuples.

    >>> space = grid_space((2, 3))
    >>> len(space), len(space.edge_weights)
    (6, 7)
    '''
    shape = tuple(int(n) for n in shape)
    vertices = list(product(*(range(n) for n in shape)))
    return build_space(vertices, np.ones(len(vertices)),
                       _lattice_edges(shape, periodic=False))


def torus_space(shape):
    '''The periodic lattice :math:`\\mathbb{Z}^d / (n_1, \\dots, n_d)` with
    nearest-neighbour edges. The shape is recorded so that translation
    invariant kernels can be computed by FFT.'''
    shape = tuple(int(n) for n in shape)
    vertices = list(product(*(range(n) for n in shape)))
    return build_space(vertices, np.ones(len(vertices)),
                       _lattice_edges(shape, periodic=True),
                       lattice_shape=shape)
