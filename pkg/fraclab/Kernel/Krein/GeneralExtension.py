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
r'''The extension problem of a general Krein string and the operator
:math:`\psi(-L)`.

For a string :math:`A` with Bernstein function :math:`\psi`, the field
:math:`v(\cdot, z) = R(z, -L) f` solves :math:`A(z) L v + v_{zz} = 0` with
:math:`v(\cdot, 0) = f`, and its Dirichlet-to-Neumann map is
:math:`-\partial_z v|_{z=0} = \psi(-L) f`.
'''

from concurrent.futures import ThreadPoolExecutor
from math import exp, pi, sqrt

import numpy as np
from scipy import integrate

from ..Dirichlet.Spectral import spectral_apply
from .KreinError import BadString, NotConstantString
from .StringSolver import solve_string


def _distinct(eigenvalues, rtol=1e-12):
    '''Group numerically equal eigenvalues; return the representatives and
    the index of each eigenvalue's representative.'''
    reps = []
    index = np.empty(len(eigenvalues), dtype=int)
    for i, lam in enumerate(eigenvalues):
        if reps and abs(lam - reps[-1]) <= rtol * max(1.0, abs(lam)):
            index[i] = len(reps) - 1
        else:
            reps.append(float(max(lam, 0.0)))
            index[i] = len(reps) - 1
    return np.array(reps), index


def _solve_modes(string, lams, z_grid, workers):
    def one(lam):
        return solve_string(string, lam, z_grid)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(one, lams))
    return [one(lam) for lam in lams]


class GeneralExtension:
    '''The field :math:`v(x, z)` of a string extension.

    :ivar decomp: the :class:`~.SpectralDecomposition`
    :ivar string: the :class:`~.KreinString`
    :ivar z: the grid in :math:`z`
    :ivar values: :math:`v` with one row per vertex and one column per
        grid point
    :ivar psi: :math:`\\psi(\\lambda_i)` per eigenvalue
    :ivar dtn: :math:`\\psi(-L) f`
    '''

    def __init__(self, decomp, string, z_grid, f, profiles, psi):
        self.decomp = decomp
        self.string = string
        self.z = z_grid
        self.boundary = f
        self.profiles = profiles
        self.psi = psi
        coeffs = decomp.coefficients(f)
        self.values = decomp.synthesize(profiles * coeffs[:, np.newaxis])
        self.dtn = decomp.synthesize(psi * coeffs)

    def __repr__(self):
        return (f'GeneralExtension(n={len(self.decomp)}, K={len(self.z)}, '
                f'string={self.string!r})')

    def finite_difference_dtn(self):
        ''':math:`-\\partial_z v(\\cdot, 0)` by the three-point one-sided
        difference on the first grid points; the grid must start at 0.'''
        z = self.z
        if len(z) < 3 or z[0] != 0.0:
            raise BadString('the finite-difference trace needs a grid '
                            'starting 0, h1, h2')
        h1, h2 = z[1], z[2]
        v = self.values
        deriv = (-(1.0 / h1 + 1.0 / h2) * v[:, 0]
                 + h2 / (h1 * (h2 - h1)) * v[:, 1]
                 - h1 / (h2 * (h2 - h1)) * v[:, 2])
        return -deriv

    def equation_residual(self):
        '''The largest pointwise value of :math:`A(z) L v + v_{zz}` at the
        interior grid points, with three-point second differences, relative
        to the largest :math:`|A L v|`.'''
        z, v = self.z, self.values
        if len(z) < 3:
            return 0.0
        h_minus = np.diff(z)[:-1]
        h_plus = np.diff(z)[1:]
        second = 2.0 * ((v[:, 2:] - v[:, 1:-1]) / h_plus
                        - (v[:, 1:-1] - v[:, :-2]) / h_minus) \
            / (h_plus + h_minus)
        space = self.decomp.space
        coefficient = np.asarray(self.string(z[1:-1]))
        elliptic = space.apply_generator(v[:, 1:-1]) * coefficient
        scale = np.max(np.abs(elliptic), initial=0.0)
        if scale == 0.0:
            return float(np.max(np.abs(second), initial=0.0))
        return float(np.max(np.abs(elliptic + second)) / scale)


def general_extension(decomp, f, string, z_grid, workers=1):
    '''Extend `f` along a Krein string:
    :math:`v(\\cdot, z) = \\sum_i R(z, \\lambda_i) f_i \\varphi_i`.

    :param decomp: a :class:`~.SpectralDecomposition`
    :param f: the boundary datum
    :param string: the :class:`~.KreinString`
    :param z_grid: nonnegative sorted heights
    :param int workers: threads for the independent eigenvalues
    :rtype: GeneralExtension

    >>> from fraclab.Kernel.Dirichlet.Graphs import two_point_space
    >>> from fraclab.Kernel.Dirichlet.Spectral import spectral_decompose
    >>> from fraclab.Kernel.Krein.KreinString import constant_string
    >>> ext = general_extension(spectral_decompose(two_point_space()),
    ...                         [1.0, -1.0], constant_string(), [0.0, 1.0])
    >>> bool(np.allclose(ext.dtn, [np.sqrt(2.0), -np.sqrt(2.0)]))
    True
    '''
    f = decomp.space.check_function(f, 'boundary datum')
    z_grid = np.asarray(z_grid, dtype=float)
    reps, index = _distinct(decomp.eigenvalues)
    solutions = _solve_modes(string, reps, z_grid, workers)
    profiles = np.array([solutions[k].values for k in index])
    psi = np.array([solutions[k].psi for k in index])
    return GeneralExtension(decomp, string, z_grid, f, profiles, psi)


def psi_apply(decomp, string, f, workers=1):
    ''':math:`\\psi(-L) f` for the Bernstein function of `string`.'''
    reps, index = _distinct(decomp.eigenvalues)
    psi = np.array([sol.psi for sol in _solve_modes(string, reps, None,
                                                    workers)])
    return spectral_apply(decomp, lambda _lams: psi[index], f)


def subordination_density(z, t, c=1.0):
    r'''The density :math:`G(z, t) = e^{-cz^2/(4t)}/\sqrt{\pi c t}` of the
    constant string :math:`A \equiv c`, for which
    :math:`\int_0^\infty e^{-t\lambda} G(z, t) \psi(\lambda) dt =
    e^{-z\sqrt{c\lambda}}` with :math:`\psi(\lambda) = \sqrt{c\lambda}`.'''
    return exp(-c * z * z / (4.0 * t)) / sqrt(pi * c * t)


def g_kernel_sanity(string, z, lam):
    '''Evaluate :math:`\\int_0^\\infty e^{-t\\lambda} G(z, t) \\psi(\\lambda)
    dt` by quadrature for a constant string; the result should be
    :math:`R(z, \\lambda) = e^{-z\\sqrt{c\\lambda}}`.

    The substitution :math:`t = u^2` removes the :math:`t^{-1/2}`
    singularity.

    :raises NotConstantString: if `string` is not constant

    >>> from fraclab.Kernel.Krein.KreinString import constant_string
    >>> value = g_kernel_sanity(constant_string(), 1.0, 1.0)
    >>> bool(abs(value - np.exp(-1.0)) < 1e-6)
    True
    '''
    if not string.is_constant:
        raise NotConstantString(f'the closed-form density needs a constant '
                                f'string, got {string!r}')
    if lam == 0.0:
        return 1.0
    c = string.constant_value
    psi = sqrt(c * lam)

    def integrand(u):
        t = u * u
        if t == 0.0:
            return 0.0 if z > 0 else 2.0 * psi / sqrt(pi * c)
        return 2.0 * u * exp(-t * lam) * subordination_density(z, t, c) * psi

    value, _ = integrate.quad(integrand, 0.0, np.inf, epsabs=1e-13,
                              epsrel=1e-12, limit=200)
    return value
