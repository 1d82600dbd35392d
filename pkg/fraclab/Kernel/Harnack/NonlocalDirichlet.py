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
r'''The nonlocal Dirichlet problem of :math:`(-L)^s`.

Given a region :math:`D` and exterior data :math:`g`, find :math:`f = g` off
:math:`D` with

.. math::

    \sum_y K(x, y) (f(y) - f(x)) \mu(y) = 0, \qquad x \in D.

The system matrix restricted to :math:`D` is a nonsingular M-matrix on
connected spaces, so that :math:`f` is a convex combination of exterior
values (discrete maximum principle).
'''

import numpy as np
from scipy import linalg

from ..Dirichlet.Spectral import spectral_decompose
from ..Fractional.JumpKernel import spectral_jump_kernel
from .HarnackError import BadRegion, SingularSystem

#: pivots below this fraction of the largest one mean a singular system
PIVOT_FLOOR = 1e-13


class NonlocalDirichletProblem:
    '''The factorized nonlocal Dirichlet system of a region.

    :param kernel: a :class:`~.JumpKernel`
    :param inside: the positions of the region
    :raises BadRegion: if the region is empty, covers the whole space or
        holds invalid positions
    :raises SingularSystem: if the system cannot be factorized
    '''

    def __init__(self, kernel, inside):
        n_vertices = len(kernel.measure)
        inside = np.unique(np.asarray(inside, dtype=int))
        if inside.size == 0 or inside.size >= n_vertices:
            raise BadRegion(f'the region must be a strict nonempty subset of '
                            f'the {n_vertices} vertices, got {inside.size}')
        if inside[0] < 0 or inside[-1] >= n_vertices:
            raise BadRegion('the region holds positions outside the space')
        self.kernel = kernel
        self.inside = inside
        self.outside = np.setdiff1d(np.arange(n_vertices), inside)
        weighted = kernel.matrix * kernel.measure[np.newaxis, :]
        row_mass = weighted.sum(axis=1)
        system = (np.diag(row_mass[inside])
                  - weighted[np.ix_(inside, inside)])
        self.coupling = weighted[np.ix_(inside, self.outside)]
        lu_piv = linalg.lu_factor(system)
        pivots = np.abs(np.diag(lu_piv[0]))
        if not pivots.min() > PIVOT_FLOOR * pivots.max():
            raise SingularSystem(f'the nonlocal Dirichlet system of '
                                 f'{inside.size} unknowns is singular')
        self._lu_piv = lu_piv

    def __repr__(self):
        return (f'NonlocalDirichletProblem(n_inside={self.inside.size}, '
                f'n_outside={self.outside.size})')

    def solve(self, exterior):
        '''Solve for the exterior data `exterior`, given on every vertex
        (values inside the region are ignored); one column per datum if
        two-dimensional.'''
        exterior = np.asarray(exterior, dtype=float)
        if exterior.shape[0] != len(self.kernel.measure):
            raise BadRegion(f'exterior data have shape {exterior.shape}, '
                            f'expected {len(self.kernel.measure)} values')
        rhs = self.coupling @ exterior[self.outside]
        solution = exterior.copy()
        solution[self.inside] = linalg.lu_solve(self._lu_piv, rhs)
        return solution

    def principle_excess(self, solution):
        '''How far `solution` leaves the range of its exterior values inside
        the region (0 when the maximum principle holds).'''
        solution = np.asarray(solution, dtype=float)
        exterior = solution[self.outside]
        values = solution[self.inside]
        return float(max(np.max(values) - np.max(exterior),
                         np.min(exterior) - np.min(values), 0.0))


def nonlocal_dirichlet_solve(source, s, inside, exterior_data):
    '''Solve the nonlocal Dirichlet problem of :math:`(-L)^s` once.

    :param source: a :class:`~.DirichletSpace` or its
        :class:`~.SpectralDecomposition`
    :param float s: the fractional order
    :param inside: the positions of the region
    :param exterior_data: values on every vertex; only the exterior ones are
        used
    :returns: the solution on every vertex

    >>> from fraclab.Kernel.Dirichlet.Graphs import cycle_space
    >>> f = nonlocal_dirichlet_solve(cycle_space(8), 0.5, [2, 3, 4],
    ...                              np.full(8, 3.0))
    >>> bool(np.allclose(f, 3.0))
    True
    '''
    decomp = (source if hasattr(source, 'eigenvalues')
              else spectral_decompose(source))
    kernel = spectral_jump_kernel(decomp, s)
    return NonlocalDirichletProblem(kernel, inside).solve(exterior_data)
