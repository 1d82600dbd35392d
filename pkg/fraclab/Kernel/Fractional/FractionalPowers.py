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
r'''Spectral fractional powers and the Dirichlet-to-Neumann constant.

:func:`frac_spectral` is the reference route, against which the
subordination, jump-kernel and extension routes are compared.
'''

from math import gamma

import numpy as np

from ..Dirichlet.Spectral import spectral_apply
from .FracConfig import check_s


def frac_spectral(decomp, s, f):
    '''Compute :math:`(-L)^s f = \\sum_i \\lambda_i^s \\langle f,
    \\varphi_i\\rangle_\\mu \\varphi_i`.

    :raises SOutOfRange: unless ``0 < s < 1``

    >>> from fraclab.Kernel.Dirichlet.Graphs import two_point_space
    >>> from fraclab.Kernel.Dirichlet.Spectral import spectral_decompose
    >>> decomp = spectral_decompose(two_point_space())
    >>> out = frac_spectral(decomp, 0.5, [1.0, -1.0])
    >>> bool(np.allclose(out, [np.sqrt(2.0), -np.sqrt(2.0)]))
    True
    '''
    s = check_s(s)
    return spectral_apply(decomp, lambda lam: np.maximum(lam, 0.0)**s, f)


def frac_power_matrix(decomp, s):
    '''The matrix of :math:`(-L)^s` acting on vertex values,
    :math:`\\Phi\\,\\mathrm{diag}(\\lambda^s)\\,\\Phi^T D_\\mu`.'''
    s = check_s(s)
    phi = decomp.eigenvectors
    powers = np.maximum(decomp.eigenvalues, 0.0)**s
    return (phi * powers[np.newaxis, :]) @ (phi.T
                                            * decomp.space.measure[np.newaxis,
                                                                   :])


def dtn_constant(s):
    '''The constant :math:`C_s = 2^{2s-1}\\Gamma(s)/\\Gamma(1-s)` in
    :math:`(-L)^s f = -C_s \\lim_{y \\to 0^+} y^{1-2s}\\partial_y U`.

    >>> dtn_constant(0.5)
    1.0
    '''
    s = check_s(s)
    return 2.0**(2.0 * s - 1.0) * gamma(s) / gamma(1.0 - s)


def extension_constant(s):
    ''':math:`c_s = 1/C_s = 2^{1-2s}\\Gamma(1-s)/\\Gamma(s)`, the factor in
    front of :math:`\\lambda^s` in the Dirichlet-to-Neumann map of the weight
    :math:`y^{1-2s}`.'''
    s = check_s(s)
    return 2.0**(1.0 - 2.0 * s) * gamma(1.0 - s) / gamma(s)
