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
r'''The product Dirichlet space :math:`X_a = X \times (-Y, Y)`.

The vertical factor is the symmetric mesh obtained by mirroring a
:class:`~.YMesh`, with the measure :math:`d\nu_a = |y|^a dy` and
:math:`a = 1 - 2s`. The product form is

.. math::

    \mathcal{E}_a(u, v) = \sum_j m_j \mathcal{E}(u_j, v_j)
    + \sum_x \mu(x) \sum_j \beta_{j+1/2} (u_{j+1} - u_j)(x)
    (v_{j+1} - v_j)(x),

the graph form of the product graph whose horizontal edges carry
:math:`w_{xx'} m_j` and whose vertical edges carry :math:`\mu(x)
\beta_{j+1/2}`. The product metric is :math:`d_a^2 = d^2 + |\Delta y|^2`.

Functions on the product are arrays with one row per base vertex and one
column per layer; :meth:`ProductSpace.flatten` turns them into vectors on
:attr:`ProductSpace.space`, whose vertices are ordered layer by layer.
'''

from functools import cached_property

import numpy as np
from scipy import sparse

from ..Dirichlet.DirichletSpace import (DirichletSpace, dirichlet_form,
                                        energy_measure)
from ..Extension.ExtensionError import BadMeshParams
from ..Extension.YMesh import build_graded_mesh
from ..Fractional.FracConfig import check_s


class ProductGraph(DirichletSpace):
    '''The graph of a :class:`ProductSpace`. Its metric is the product
    metric :math:`d_a`, computed on first use.'''

    def __init__(self, product, vertex_ids, measure, conductance):
        super().__init__(vertex_ids, measure, conductance)
        self.product = product

    @cached_property
    def metric(self):
        ''':math:`d_a = (d^2 + |\\Delta y|^2)^{1/2}`.'''
        product = self.product
        heights = product.heights
        n_base = len(product.base)
        gaps = heights[:, np.newaxis] - heights[np.newaxis, :]
        metric = np.sqrt(np.kron(gaps**2, np.ones((n_base, n_base)))
                         + np.kron(np.ones((len(heights), len(heights))),
                                   product.base.metric**2))
        metric.setflags(write=False)
        return metric


class ProductSpace:
    '''The product of a Dirichlet space with a symmetric vertical mesh.

    :ivar base: the base :class:`~.DirichletSpace`
    :ivar float s: the fractional order
    :ivar mesh: the half mesh on :math:`[0, Y]`
    :ivar heights: the :math:`2N + 1` layer heights on :math:`[-Y, Y]`
    :ivar masses: the :math:`\\nu_a`-masses of the layers
    :ivar face_coefficients: the :math:`2N` vertical face coefficients
    :ivar space: the product graph as a :class:`~.DirichletSpace`, with
        vertex labels ``(label, j)`` for ``j = -N, ..., N``
    '''

    def __init__(self, base, s, mesh):
        self.s = check_s(s)
        if abs(mesh.a - (1.0 - 2.0 * self.s)) > 1e-12:
            raise BadMeshParams(f'mesh weight exponent {mesh.a} does not match '
                                f'a = 1 - 2s = {1.0 - 2.0 * self.s}')
        self.base = base
        self.mesh = mesh
        n_half = mesh.n_cells
        self.heights = mesh.mirrored()
        half = mesh.cell_masses
        self.masses = np.concatenate((half[:0:-1], [2.0 * half[0]], half[1:]))
        beta = mesh.face_coefficients
        self.face_coefficients = np.concatenate((beta[::-1], beta))

        n_layers = 2 * n_half + 1
        vertex_ids = [(label, j) for j in range(-n_half, n_half + 1)
                      for label in base.vertex_ids]
        measure = np.kron(self.masses, base.measure)
        vertical = sparse.diags([self.face_coefficients,
                                 self.face_coefficients], [-1, 1],
                                shape=(n_layers, n_layers))
        conductance = (sparse.kron(sparse.diags(self.masses), base.conductance)
                       + sparse.kron(vertical, sparse.diags(base.measure)))
        self.space = ProductGraph(self, vertex_ids, measure, conductance)

    def __len__(self):
        return len(self.space)

    def __repr__(self):
        return (f'ProductSpace(n={len(self.base)}, N={self.mesh.n_cells}, '
                f'Y={self.height!r}, s={self.s!r})')

    @property
    def a(self):
        '''The weight exponent :math:`1 - 2s`.'''
        return 1.0 - 2.0 * self.s

    @property
    def height(self):
        '''The half height :math:`Y`.'''
        return self.mesh.height

    @property
    def n_layers(self):
        '''The number :math:`2N + 1` of layers.'''
        return len(self.heights)

    @property
    def total_layer_mass(self):
        ''':math:`\\nu_a([-Y, Y])`.'''
        return 2.0 * self.mesh.total_mass

    def layer(self, j):
        '''The column of the signed layer index `j`.'''
        n_half = self.mesh.n_cells
        if not -n_half <= j <= n_half:
            raise BadMeshParams(f'layer index {j} outside [-{n_half}, '
                                f'{n_half}]')
        return j + n_half

    def position(self, label, j):
        '''The position in :attr:`space` of the vertex ``(label, j)``.'''
        return self.layer(j) * len(self.base) + self.base.position(label)

    def positions(self, base_positions, columns):
        '''The product positions of all pairs of base positions and layer
        columns, layer by layer.'''
        base_positions = np.asarray(base_positions, dtype=int)
        columns = np.asarray(columns, dtype=int)
        return (columns[:, np.newaxis] * len(self.base)
                + base_positions[np.newaxis, :]).ravel()

    @property
    def top_positions(self):
        '''Positions of the vertices on the truncation layers
        :math:`|y| = Y`.'''
        return self.positions(np.arange(len(self.base)),
                              [0, self.n_layers - 1])

    def split(self, position):
        '''Return the base position and the column of a product position.'''
        column, base_position = divmod(int(position), len(self.base))
        return base_position, column

    def flatten(self, values):
        '''Turn an array of shape ``(n, 2N + 1)`` into a vector on
        :attr:`space`. Vectors are returned unchanged.'''
        values = np.asarray(values, dtype=float)
        if values.ndim == 1:
            return self.space.check_function(values)
        if values.shape != (len(self.base), self.n_layers):
            raise BadMeshParams(f'product function has shape {values.shape}, '
                                f'expected {(len(self.base), self.n_layers)}')
        return values.T.ravel()

    def unflatten(self, vector):
        '''The inverse of :meth:`flatten`.'''
        vector = self.space.check_function(vector)
        return vector.reshape(self.n_layers, len(self.base)).T

    def lift(self, f):
        '''The function :math:`u(x, y) = f(x)`.'''
        f = self.base.check_function(f)
        return np.repeat(f[:, np.newaxis], self.n_layers, axis=1)

    def energy(self, u, v):
        ''':math:`\\mathcal{E}_a(u, v)`, computed on the product graph.'''
        return dirichlet_form(self.space, self.flatten(u), self.flatten(v))

    def energy_parts(self, u, v):
        '''The base and transversal parts of :math:`\\mathcal{E}_a(u, v)`,
        assembled separately.

        :returns: the pair ``(sum_j m_j E(u_j, v_j), sum_x mu(x) sum_j
            beta (du)(dv))``
        '''
        u = self.unflatten(self.flatten(u))
        v = self.unflatten(self.flatten(v))
        base_part = sum(mass * dirichlet_form(self.base, u[:, j], v[:, j])
                        for j, mass in enumerate(self.masses))
        vertical = (np.diff(u, axis=1) * np.diff(v, axis=1)
                    @ self.face_coefficients)
        return float(base_part), float(np.dot(self.base.measure, vertical))

    def energy_measure(self, u, v):
        '''The energy measure :math:`\\Gamma_a(u, v)` on the product graph,
        as an :class:`~.EnergyMeasure`.'''
        return energy_measure(self.space, self.flatten(u), self.flatten(v))

    def energy_density_parts(self, u, v):
        r'''The horizontal and vertical parts of the density of
        :math:`\Gamma_a(u, v)` with respect to :math:`\mu \times \nu_a`,

        .. math::

            \Gamma_a(u, v) = \Gamma(u_j, v_j)(x)
            + \frac{1}{2 m_j} \sum_\pm \beta_{j\pm1/2}
            (\Delta_\pm u)(\Delta_\pm v)(x).

        :returns: two arrays of shape ``(n, 2N + 1)``
        '''
        u = self.unflatten(self.flatten(u))
        v = self.unflatten(self.flatten(v))
        horizontal = np.column_stack([
            energy_measure(self.base, u[:, j], v[:, j]).density
            for j in range(self.n_layers)])
        faces = np.diff(u, axis=1) * np.diff(v, axis=1) \
            * self.face_coefficients[np.newaxis, :]
        vertical = np.zeros_like(u)
        vertical[:, 1:] += 0.5 * faces
        vertical[:, :-1] += 0.5 * faces
        return horizontal, vertical / self.masses[np.newaxis, :]


def build_product_space(space, s, height, n_cells, gamma=None, mesh=None):
    '''Build the product space :math:`X_a` over `space`.

    :param space: the base :class:`~.DirichletSpace`
    :param float s: the fractional order, :math:`a = 1 - 2s`
    :param float height: the half height :math:`Y`
    :param int n_cells: the number :math:`N` of cells of the half mesh
    :param float gamma: the grading of the half mesh (see
        :func:`~.build_graded_mesh`)
    :param mesh: an explicit half mesh, overriding the three previous
        arguments
    :raises BadMeshParams: for invalid mesh parameters

    >>> from fraclab.Kernel.Dirichlet.Graphs import single_vertex_space
    >>> product = build_product_space(single_vertex_space(), 0.5, 8.0, 8,
    ...                               gamma=1.0)
    >>> len(product), len(product.space.edge_weights)
    (17, 16)
    >>> product.energy(np.ones(17), np.ones(17))
    0.0
    '''
    s = check_s(s)
    if mesh is None:
        mesh = build_graded_mesh(height, n_cells, gamma, 1.0 - 2.0 * s)
    return ProductSpace(space, s, mesh)
