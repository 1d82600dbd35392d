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
'''Shipped domains of the boundary Harnack experiments.

A geometry string such as ``grid24-square16`` names the 24 by 24 grid with
the centered 16 by 16 square as domain; ``grid24-l16`` takes the same square
without its upper right quadrant, an L-shaped domain. Convex grid subsets
and their L-shaped unions are inner uniform by construction.
'''

import re

import numpy as np

from ..Dirichlet.Graphs import grid_space
from .HarnackError import BadRegion

#: the boundary vertex selectors
SELECTORS = ('corner', 'edge')

GEOMETRY_RE = re.compile(r'^grid(\d+)-(square|l)(\d+)$')


class GridDomain:
    '''A domain of the square grid.

    :ivar str shape: ``'square'`` or ``'l'``
    :ivar int n: the side of the grid
    :ivar int m: the side of the domain's bounding square
    :ivar space: the grid :class:`~.DirichletSpace`
    :ivar inside: the positions of the domain
    '''

    def __init__(self, shape, n, m):
        if shape not in ('square', 'l'):
            raise BadRegion(f'unknown domain shape {shape!r}')
        if not 4 <= m <= n - 2:
            raise BadRegion(f'the domain side must satisfy 4 <= m <= n - 2, '
                            f'got n = {n}, m = {m}')
        if shape == 'l' and m % 2:
            raise BadRegion(f'L-shaped domains need an even side, got {m}')
        self.shape = shape
        self.n = n
        self.m = m
        self.offset = (n - m) // 2
        self.space = grid_space((n, n))
        self.inside = np.array([self.space.position(site)
                                for site in self.sites()], dtype=int)

    def __repr__(self):
        return f'GridDomain({self.name!r})'

    @property
    def name(self):
        '''The geometry string of the domain.'''
        return f'grid{self.n}-{self.shape}{self.m}'

    def sites(self):
        '''The grid sites of the domain, in lexicographic order.'''
        low, high = self.offset, self.offset + self.m
        half = self.offset + self.m // 2
        for i in range(low, high):
            for j in range(low, high):
                if self.shape == 'l' and i >= half and j >= half:
                    continue
                yield (i, j)

    def boundary_vertex(self, which):
        '''The position of a boundary vertex of the domain: the lower left
        ``'corner'`` or the middle of the lower ``'edge'``.

        :raises BadRegion: for an unknown selector
        '''
        if which == 'corner':
            site = (self.offset, self.offset)
        elif which == 'edge':
            site = (self.offset, self.offset + self.m // 2)
        else:
            raise BadRegion(f'unknown boundary selector {which!r}, expected '
                            f'one of {SELECTORS}')
        return self.space.position(site)

    def refined(self):
        '''The same domain on the grid of twice the side.'''
        return GridDomain(self.shape, 2 * self.n, 2 * self.m)


def grid_square_domain(n, m):
    '''The centered :math:`m \\times m` square of the :math:`n \\times n`
    grid.

    >>> len(grid_square_domain(8, 4).inside)
    16
    '''
    return GridDomain('square', n, m)


def grid_l_domain(n, m):
    '''The centered :math:`m \\times m` square without its upper right
    quadrant.

    >>> len(grid_l_domain(8, 4).inside)
    12
    '''
    return GridDomain('l', n, m)


def parse_geometry(text):
    '''Parse a geometry string.

    >>> parse_geometry('grid24-square16')
    GridDomain('grid24-square16')
    >>> parse_geometry('ring16')
    Traceback (most recent call last):
        ...
    fraclab.Kernel.Harnack.HarnackError.BadRegion: unknown geometry \
'ring16', expected gridN-squareM or gridN-lM
    '''
    match = GEOMETRY_RE.match(text)
    if match is None:
        raise BadRegion(f'unknown geometry {text!r}, expected gridN-squareM '
                        'or gridN-lM')
    n, shape, m = match.groups()
    return GridDomain(shape, int(n), int(m))
