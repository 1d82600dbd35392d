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
'''The values of an extended function on the product of a Dirichlet space
with a vertical mesh.'''

import numpy as np

from .ExtensionError import BadMeshParams

#: provenance tags
PDE_SOLVE = 'pde-solve'
SEMI_ANALYTIC = 'semi-analytic'


class ExtensionField:
    '''An extension :math:`U(x, y_j)`.

    :ivar space: the :class:`~.DirichletSpace`
    :ivar mesh: the :class:`~.YMesh`
    :ivar values: array with one row per vertex and one column per node
    :ivar float s: the fractional order
    :ivar str provenance: ``'pde-solve'`` or ``'semi-analytic'``
    :ivar coarse: the field computed on :meth:`~.YMesh.coarsened`, if any
    :ivar str top_bc: the top boundary condition of a PDE solve
    '''

    def __init__(self, space, mesh, values, s, provenance, coarse=None,
                 top_bc=None):
        values = np.array(values, dtype=float)
        if values.shape != (len(space), len(mesh)):
            raise BadMeshParams(f'field values have shape {values.shape}, '
                                f'expected {(len(space), len(mesh))}')
        values.setflags(write=False)
        self.space = space
        self.mesh = mesh
        self.values = values
        self.s = s
        self.provenance = provenance
        self.coarse = coarse
        self.top_bc = top_bc

    def __repr__(self):
        return (f'ExtensionField(n={len(self.space)}, N={self.mesh.n_cells}, '
                f's={self.s!r}, provenance={self.provenance!r})')

    @property
    def a(self):
        '''The weight exponent :math:`1 - 2s`.'''
        return 1.0 - 2.0 * self.s

    @property
    def boundary(self):
        '''The boundary datum :math:`U(\\cdot, 0)`.'''
        return self.values[:, 0]

    def subsampled(self):
        '''The same field restricted to every other node. For semi-analytic
        fields this is the field on the coarsened mesh.'''
        mesh = self.mesh.coarsened()
        return ExtensionField(self.space, mesh, self.values[:, ::2], self.s,
                              self.provenance, top_bc=self.top_bc)

    def coarse_field(self):
        '''The field on the coarsened mesh: the attached coarse solve, or the
        subsampled field for semi-analytic fields.

        :returns: the coarse field, or `None` if not available
        '''
        if self.coarse is not None:
            return self.coarse
        if self.provenance == SEMI_ANALYTIC and self.mesh.n_cells % 2 == 0:
            return self.subsampled()
        return None

    def rows(self):
        '''Iterate over ``(vertex_id, y, U)`` triples.'''
        for i, label in enumerate(self.space.vertex_ids):
            for j, height in enumerate(self.mesh.nodes):
                yield label, float(height), float(self.values[i, j])
