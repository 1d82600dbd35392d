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
r'''Vertical meshes for the extension variable :math:`y`.

A mesh :math:`0 = y_0 < \dots < y_N = Y` carries finite-volume cells around
its nodes: cell :math:`j` is :math:`[y_{j-1/2}, y_{j+1/2}]` with midpoints
:math:`y_{j+1/2} = (y_j + y_{j+1})/2`, the first cell starting at 0 and the last
one ending at :math:`Y`. Cell masses for the measure
:math:`d\nu_a = |y|^a dy` and face coefficients
:math:`\beta_{j+1/2} = (\int_{y_j}^{y_{j+1}} y^{-a} dy)^{-1}` are exact.
'''

from functools import cached_property
from math import isfinite

import numpy as np
from scipy import sparse

from .ExtensionError import BadMeshParams


def _check_a(a):
    if not (isfinite(a) and -1.0 < a < 1.0):
        raise BadMeshParams(f'the weight exponent must satisfy -1 < a < 1, '
                            f'got a = {a}')
    return float(a)


class YMesh:
    '''A vertical finite-volume mesh.

    :param nodes: strictly increasing nodes starting at 0
    :param float a: the weight exponent
    :param gamma: grading exponent, if the mesh is graded
    '''

    def __init__(self, nodes, a, gamma=None):
        nodes = np.array(nodes, dtype=float)
        if nodes.ndim != 1 or len(nodes) < 2:
            raise BadMeshParams('a mesh needs at least two nodes')
        if nodes[0] != 0.0:
            raise BadMeshParams(f'the first node must be 0, got {nodes[0]}')
        if not np.all(np.isfinite(nodes)) or np.any(np.diff(nodes) <= 0):
            raise BadMeshParams('mesh nodes must be finite and strictly '
                                'increasing')
        nodes.setflags(write=False)
        self.nodes = nodes
        self.a = _check_a(a)
        self.gamma = gamma

    @classmethod
    def from_nodes(cls, nodes, a):
        '''Wrap an explicit node list.'''
        return cls(nodes, a)

    def __len__(self):
        return len(self.nodes)

    def __repr__(self):
        return (f'YMesh(N={self.n_cells}, Y={self.height!r}, a={self.a!r}, '
                f'gamma={self.gamma!r})')

    @property
    def n_cells(self):
        '''The index `N` of the top node.'''
        return len(self.nodes) - 1

    @property
    def height(self):
        '''The top of the mesh.'''
        return float(self.nodes[-1])

    @cached_property
    def cell_bounds(self):
        '''Cell boundaries :math:`0, y_{1/2}, \\dots, y_{N-1/2}, Y`.'''
        mids = 0.5 * (self.nodes[1:] + self.nodes[:-1])
        return np.concatenate(([0.0], mids, [self.height]))

    @cached_property
    def cell_masses(self):
        ''':math:`m_j = \\nu_a([y_{j-1/2}, y_{j+1/2}])`.'''
        power = 1.0 + self.a
        return np.diff(self.cell_bounds**power) / power

    @cached_property
    def face_coefficients(self):
        ''':math:`\\beta_{j+1/2}` for ``j = 0, ..., N-1``.'''
        power = 1.0 - self.a
        return power / np.diff(self.nodes**power)

    @property
    def total_mass(self):
        ''':math:`\\nu_a([0, Y]) = Y^{1+a}/(1+a)`.'''
        return self.height**(1.0 + self.a) / (1.0 + self.a)

    def stiffness(self):
        '''The tridiagonal matrix of
        :math:`\\sum_j \\beta_{j+1/2}(u_{j+1} - u_j)^2` over all nodes.'''
        beta = self.face_coefficients
        diag = np.zeros(len(self))
        diag[:-1] += beta
        diag[1:] += beta
        return sparse.diags([-beta, diag, -beta], [-1, 0, 1], format='csr')

    def coarsened(self):
        '''The mesh made of every other node.

        :raises BadMeshParams: if `N` is odd
        '''
        if self.n_cells % 2:
            raise BadMeshParams(f'cannot coarsen a mesh with an odd number of '
                                f'cells ({self.n_cells})')
        return YMesh(self.nodes[::2], self.a, self.gamma)

    def mirrored(self):
        '''The nodes of the symmetric mesh on :math:`[-Y, Y]`.'''
        return np.concatenate((-self.nodes[:0:-1], self.nodes))


def default_gamma(a):
    '''The grading :math:`\\max(1, 1/(2s))` with :math:`2s = 1 - a`.'''
    return max(1.0, 1.0 / (1.0 - a))


def build_graded_mesh(height, n_cells, gamma=None, a=0.0):
    '''Build the graded mesh :math:`y_j = Y (j/N)^\\gamma`.

    :param float height: the top :math:`Y > 0`
    :param int n_cells: the number of cells :math:`N \\ge 8`
    :param float gamma: grading exponent :math:`\\ge 1`; by default
        :func:`default_gamma`
    :param float a: weight exponent in ``(-1, 1)``
    :raises BadMeshParams: if a parameter is out of range

    >>> mesh = build_graded_mesh(1.0, 8, 2.0)
    >>> float(mesh.nodes[4])
    0.25
    >>> build_graded_mesh(1.0, 4)
    Traceback (most recent call last):
        ...
    fraclab.Kernel.Extension.ExtensionError.BadMeshParams: a graded mesh \
needs N >= 8 cells, got N = 4
    '''
    a = _check_a(a)
    if not (isfinite(height) and height > 0):
        raise BadMeshParams(f'the mesh height must be positive, got Y = '
                            f'{height}')
    if int(n_cells) != n_cells or n_cells < 8:
        raise BadMeshParams(f'a graded mesh needs N >= 8 cells, got N = '
                            f'{n_cells}')
    n_cells = int(n_cells)
    if gamma is None:
        gamma = default_gamma(a)
    if not (isfinite(gamma) and gamma >= 1.0):
        raise BadMeshParams(f'the grading exponent must be >= 1, got '
                            f'{gamma}')
    nodes = height * (np.arange(n_cells + 1) / n_cells)**gamma
    nodes[-1] = height
    return YMesh(nodes, a, float(gamma))


def auto_height(lambda_min_positive, factor=12.0):
    '''The default truncation height :math:`Y = 12/\\sqrt{\\lambda_{min}^+}`,
    beyond which every nonconstant mode has decayed by :math:`e^{-12}`.'''
    if lambda_min_positive is None or lambda_min_positive <= 0:
        return factor
    return factor / np.sqrt(lambda_min_positive)
