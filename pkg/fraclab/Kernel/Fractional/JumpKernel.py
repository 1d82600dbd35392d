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
r'''The jump kernel of :math:`(-L)^s` and its decay on lattices.

The kernel is the time integral of the heat kernel,

.. math::

    K(x, y) = \int_0^\infty p_t(x, y) \frac{dt}{t^{1+s}}, \qquad x \ne y,

and it represents the fractional power as

.. math::

    (-L)^s f(x) = \frac{1}{\Gamma(-s)} \sum_y K(x, y) (f(y) - f(x)) \mu(y).

:class:`JumpKernel` stores :math:`K` without the factor :math:`1/\Gamma(-s)`
and records that choice in :attr:`JumpKernel.normalized`.
'''

import warnings

import numpy as np
from scipy import special

from .FracConfig import check_s
from .FractionalError import (DisconnectedSpace, WindowTooSmall, NotALattice)
from .FractionalPowers import frac_power_matrix
from .Subordination import LogTimeGrid, subordination_integral, \
    subordinated_multiplier


class JumpKernel:
    '''An off-diagonal jump kernel on a Dirichlet space.

    :ivar matrix: the kernel, with zero diagonal
    :ivar float s: the fractional order
    :ivar measure: the vertex measure of the underlying space
    :ivar bool normalized: whether the factor :math:`1/|\\Gamma(-s)|` is
        included in :attr:`matrix`
    '''

    def __init__(self, matrix, s, measure, normalized=False):
        self.matrix = np.array(matrix, dtype=float)
        np.fill_diagonal(self.matrix, 0.0)
        self.matrix.setflags(write=False)
        self.s = s
        self.measure = measure
        self.normalized = normalized

    def __repr__(self):
        return (f'JumpKernel(n={len(self.measure)}, s={self.s}, '
                f'normalized={self.normalized})')

    def normalize(self):
        '''Return a copy with the factor :math:`1/|\\Gamma(-s)|` applied.'''
        if self.normalized:
            return self
        return JumpKernel(self.matrix / abs(special.gamma(-self.s)), self.s,
                          self.measure, normalized=True)

    def operator_factor(self):
        '''The factor multiplying :math:`\\sum_y K(x,y)(f(y)-f(x))\\mu(y)`
        in the operator identity.'''
        if self.normalized:
            return -1.0
        return 1.0 / special.gamma(-self.s)

    def asymmetry(self):
        ''':math:`\\max |K(x,y) - K(y,x)|`.'''
        return float(np.max(np.abs(self.matrix - self.matrix.T)))


def build_jump_kernel(decomp, cfg):
    '''Build the unnormalized :class:`JumpKernel` of :math:`(-L)^s`.

    Off the diagonal the identity :math:`\\sum_i \\varphi_i(x)\\varphi_i(y)
    = 0` turns :math:`p_t` into :math:`p_t - \\delta/\\mu`, so that the time
    integral reduces to :math:`K = \\Phi\\,\\mathrm{diag}(q_s(\\lambda))\\,
    \\Phi^T` with the per-mode subordination integral :math:`q_s`.

    :param decomp: a :class:`~.SpectralDecomposition`
    :param cfg: a :class:`~.FracConfig`
    :raises QuadratureNotConverged: if the quadrature tails are not
        negligible
    '''
    if decomp.n_components > 1:
        warnings.warn(f'the space has {decomp.n_components} connected '
                      'components; the jump kernel vanishes between them',
                      DisconnectedSpace, stacklevel=2)
    # q_s = Gamma(-s) * multiplier
    integral = subordinated_multiplier(decomp.eigenvalues, cfg) \
        * special.gamma(-cfg.s)
    phi = decomp.eigenvectors
    matrix = (phi * integral[np.newaxis, :]) @ phi.T
    matrix = 0.5 * (matrix + matrix.T)
    return JumpKernel(matrix, cfg.s, decomp.space.measure)


def kernel_from_operator(operator, s, measure):
    '''The normalized :class:`JumpKernel` of a dense matrix of
    :math:`(-L)^s`, from its off-diagonal entries
    :math:`-K(x, y)\\mu(y)`.

    >>> from fraclab.Kernel.Dirichlet.Graphs import two_point_space
    >>> from fraclab.Kernel.Dirichlet.Spectral import spectral_decompose
    >>> decomp = spectral_decompose(two_point_space())
    >>> kernel = spectral_jump_kernel(decomp, 0.5)
    >>> bool(np.isclose(kernel.matrix[0, 1], np.sqrt(2.0) / 2.0))
    True
    '''
    operator = np.asarray(operator, dtype=float)
    matrix = -operator / measure[np.newaxis, :]
    matrix = 0.5 * (matrix + matrix.T)
    return JumpKernel(matrix, s, measure, normalized=True)


def spectral_jump_kernel(decomp, s):
    '''The normalized jump kernel assembled from
    :func:`~.frac_power_matrix`, without time quadrature.'''
    return kernel_from_operator(frac_power_matrix(decomp, s), check_s(s),
                                decomp.space.measure)


def frac_kernel_apply(kernel, f):
    '''Apply :math:`(-L)^s` through the jump kernel:
    :math:`\\Gamma(-s)^{-1}\\sum_y K(x,y)(f(y) - f(x))\\mu(y)`.

    >>> from fraclab.Kernel.Dirichlet.Graphs import two_point_space
    >>> from fraclab.Kernel.Dirichlet.Spectral import spectral_decompose
    >>> from fraclab.Kernel.Fractional.FracConfig import FracConfig
    >>> kernel = build_jump_kernel(spectral_decompose(two_point_space()),
    ...                            FracConfig(0.5))
    >>> out = frac_kernel_apply(kernel, [1.0, -1.0])
    >>> bool(np.allclose(out, [np.sqrt(2.0), -np.sqrt(2.0)]))
    True
    '''
    f = np.asarray(f, dtype=float)
    weighted = kernel.matrix * kernel.measure[np.newaxis, :]
    row_mass = weighted.sum(axis=1)
    if f.ndim == 1:
        jumps = weighted @ f - row_mass * f
    else:
        jumps = weighted @ f - row_mass[:, np.newaxis] * f
    return kernel.operator_factor() * jumps


class DecayProfile:
    '''The result of :func:`kernel_decay_profile`.

    :ivar distances: the lattice distances of the fit window
    :ivar values: the kernel values at those distances
    :ivar float slope: the fitted slope of :math:`\\log K` against
        :math:`\\log d`
    :ivar float target: the expected exponent :math:`-(n + 2s)`
    '''

    def __init__(self, distances, values, slope, intercept, target):
        self.distances = distances
        self.values = values
        self.slope = slope
        self.intercept = intercept
        self.target = target

    def __repr__(self):
        return (f'DecayProfile(slope={self.slope:.4f}, '
                f'target={self.target:.4f}, window=[{self.distances[0]}, '
                f'{self.distances[-1]}])')

    def as_dict(self):
        '''A JSON-friendly summary.'''
        return {'slope': self.slope, 'intercept': self.intercept,
                'target': self.target,
                'window': [int(self.distances[0]), int(self.distances[-1])],
                'n_points': len(self.distances)}


def lattice_eigenvalues(shape):
    '''The eigenvalues of the unit nearest-neighbour torus, arranged on the
    Fourier grid.'''
    lam = np.zeros(shape)
    for axis, size in enumerate(shape):
        freq = 2.0 - 2.0 * np.cos(2.0 * np.pi * np.arange(size) / size)
        lam = lam + freq.reshape([-1 if i == axis else 1
                                  for i in range(len(shape))])
    return lam


def lattice_kernel_row(shape, cfg):
    '''The row :math:`K(0, \\cdot)` of the jump kernel on the unit torus of
    the given shape, computed per Fourier mode.'''
    lam = lattice_eigenvalues(shape)
    grid = LogTimeGrid.for_spectrum(lam.ravel(), cfg)
    integral, _ = subordination_integral(lam.ravel(), cfg, grid)
    row = np.real(np.fft.ifftn(integral.reshape(shape)))
    row.flat[0] = 0.0
    return row


def kernel_decay_profile(space, cfg, min_diameter=64, min_points=5):
    '''Fit the power-law decay of the jump kernel on a periodic lattice.

    The kernel row at the origin is evaluated along the first lattice axis
    and :math:`\\log K` is fitted linearly against :math:`\\log d` for
    ``3 <= d <= diameter / 4``.

    :param space: a space built by :func:`~.torus_space` or
        :func:`~.cycle_space`
    :param cfg: a :class:`~.FracConfig`
    :param int min_diameter: smallest acceptable lattice diameter
    :param int min_points: smallest acceptable number of fit distances
    :rtype: DecayProfile
    :raises NotALattice: if the space does not record a lattice shape
    :raises WindowTooSmall: if the lattice is too small for the fit
    '''
    shape = getattr(space, 'lattice_shape', None)
    if shape is None:
        raise NotALattice('the decay profile needs a periodic lattice space')
    diameter = sum(size // 2 for size in shape)
    if diameter < min_diameter:
        raise WindowTooSmall(f'lattice diameter {diameter} below the minimum '
                             f'of {min_diameter}')
    distances = np.arange(3, diameter // 4 + 1)
    distances = distances[distances <= shape[0] // 2]
    if len(distances) < min_points:
        raise WindowTooSmall(f'only {len(distances)} distances in the fit '
                             f'window, need {min_points}')
    row = lattice_kernel_row(shape, cfg)
    index = (distances,) + (0,) * (len(shape) - 1)
    values = row[index] / abs(special.gamma(-cfg.s))
    slope, intercept = np.polyfit(np.log(distances), np.log(values), 1)
    return DecayProfile(distances, values, float(slope), float(intercept),
                        -(len(shape) + 2.0 * cfg.s))
