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
r'''Semi-analytic :math:`s`-harmonic extensions.

The extension of :math:`f` is
:math:`U(\cdot, y) = \sum_i M_s(\lambda_i, y) \langle f, \varphi_i\rangle_\mu
\varphi_i`, and :math:`(-L)^s f` is recovered from the behaviour of
:math:`U` near :math:`y = 0`.
'''

from math import log

import numpy as np
from scipy import special

from ..Dirichlet.DirichletError import ShapeMismatch
from ..Extension.ExtensionField import ExtensionField, SEMI_ANALYTIC
from ..Extension.YMesh import YMesh
from .FracConfig import FracConfig, check_s
from .FractionalPowers import dtn_constant
from .PoissonMultiplier import poisson_multiplier

#: exponent budget of the Poisson-formula window
POISSON_WINDOW = 50.0


def _coefficients(decomp, f):
    coeffs = decomp.coefficients(f)
    if coeffs.ndim != 1:
        raise ShapeMismatch('extensions take a single boundary datum')
    return coeffs


def poisson_extend(decomp, cfg, f, y_list, method='bessel'):
    '''Extend `f` to the heights `y_list` with the Poisson multiplier.

    :param decomp: a :class:`~.SpectralDecomposition`
    :param cfg: a :class:`~.FracConfig` (or the order `s`)
    :param f: the boundary datum
    :param y_list: strictly increasing heights starting at 0
    :param str method: evaluator of the multiplier (see
        :func:`~.poisson_multiplier`)
    :rtype: ExtensionField
    :raises BadMeshParams: if the heights are not strictly increasing from 0

    >>> from fraclab.Kernel.Dirichlet.Graphs import two_point_space
    >>> from fraclab.Kernel.Dirichlet.Spectral import spectral_decompose
    >>> field = poisson_extend(spectral_decompose(two_point_space()), 0.5,
    ...                        [1.0, 3.0], [0.0, 1.0])
    >>> field.values[:, 0].tolist()
    [1.0, 3.0]
    '''
    s = cfg.s if isinstance(cfg, FracConfig) else check_s(cfg)
    mesh = YMesh.from_nodes(y_list, 1.0 - 2.0 * s)
    f = decomp.space.check_function(f, 'boundary datum')
    coeffs = _coefficients(decomp, f)
    mult = poisson_multiplier(s, decomp.eigenvalues[:, np.newaxis],
                              mesh.nodes[np.newaxis, :], method=method)
    values = decomp.eigenvectors @ (mult * coeffs[:, np.newaxis])
    values[:, 0] = f
    return ExtensionField(decomp.space, mesh, values, s, SEMI_ANALYTIC)


def poisson_formula_multiplier(s, lam, y, nodes=256):
    '''Evaluate :math:`M_s(\\lambda, y)` through the Poisson formula

    .. math::

        M_s(\\lambda, y) = \\frac{(y^2/4)^s}{\\Gamma(s)} \\int_0^\\infty
        e^{-t\\lambda} e^{-y^2/(4t)} \\frac{dt}{t^{1+s}},

    by the trapezoid rule in :math:`u = \\log t` on a window centred at the
    saddle :math:`t_* = y/(2\\sqrt\\lambda)`.

    >>> bool(np.isclose(poisson_formula_multiplier(0.5, 4.0, 1.0),
    ...                 np.exp(-2.0)))
    True
    '''
    if y == 0.0 or lam <= 0.0:
        return 1.0
    quarter = 0.25 * y * y
    root = np.sqrt(quarter * lam)
    centre = 0.5 * log(quarter / lam)
    half_width = np.arccosh(1.0 + POISSON_WINDOW / (2.0 * root)) + 1.0
    u = np.linspace(centre - half_width, centre + half_width, nodes)
    step = u[1] - u[0]
    log_integrand = (s * log(quarter) - special.gammaln(s)
                     - lam * np.exp(u) - quarter * np.exp(-u) - s * u)
    with np.errstate(under='ignore'):
        return float(min(step * np.sum(np.exp(log_integrand)), 1.0))


def poisson_kernel_extend(decomp, cfg, f, y_list):
    '''Extend `f` through the Poisson formula
    :math:`U(\\cdot, y) = \\frac{y^{2s}}{4^s\\Gamma(s)} \\int_0^\\infty P_t f
    e^{-y^2/(4t)} \\frac{dt}{t^{1+s}}`, evaluated mode by mode.

    :rtype: ExtensionField
    '''
    s = cfg.s if isinstance(cfg, FracConfig) else check_s(cfg)
    nodes = cfg.nodes if isinstance(cfg, FracConfig) else 256
    mesh = YMesh.from_nodes(y_list, 1.0 - 2.0 * s)
    f = decomp.space.check_function(f, 'boundary datum')
    coeffs = _coefficients(decomp, f)
    mult = np.array([[poisson_formula_multiplier(s, lam, height, nodes)
                      for height in mesh.nodes]
                     for lam in decomp.eigenvalues])
    values = decomp.eigenvectors @ (mult * coeffs[:, np.newaxis])
    values[:, 0] = f
    return ExtensionField(decomp.space, mesh, values, s, SEMI_ANALYTIC)


def poisson_dtn(decomp, cfg, f, first_height=None):
    '''Recover :math:`(-L)^s f` from the semi-analytic extension near
    :math:`y = 0`.

    Since :math:`U(\\cdot, y) - f \\sim -y^{2s}(-L)^s f/(2sC_s)`, the
    quotient :math:`D(y) = 2sC_s(f - U(\\cdot, y))/y^{2s}` tends to
    :math:`(-L)^s f`, with leading correction of order :math:`y^{2-2s}`.
    Two heights :math:`y_1` and :math:`y_1/2` are combined by Richardson
    extrapolation.

    :param first_height: the height :math:`y_1`, by default
        :math:`10^{-3}/\\sqrt{\\lambda_{max}}`
    '''
    s = cfg.s if isinstance(cfg, FracConfig) else check_s(cfg)
    coeffs = _coefficients(decomp, f)
    lam_max = decomp.lambda_max
    if first_height is None:
        first_height = 1e-3 / np.sqrt(lam_max) if lam_max > 0 else 1e-3
    const = dtn_constant(s)

    def quotient(height):
        mult = poisson_multiplier(s, decomp.eigenvalues, height)
        return decomp.synthesize((1.0 - mult) * coeffs) \
            * (2.0 * s * const / height**(2.0 * s))

    order = 2.0 - 2.0 * s
    gain = 2.0**order
    return (gain * quotient(0.5 * first_height) - quotient(first_height)) \
        / (gain - 1.0)


def harmonic_dtn(decomp, f, step=1e-4):
    '''The :math:`s = 1/2` Dirichlet-to-Neumann map
    :math:`-\\partial_y U|_{y=0}` by the second-order one-sided difference
    :math:`(3U_0 - 4U_1 + U_2)/(2h)` of the semi-analytic extension.

    >>> from fraclab.Kernel.Dirichlet.Graphs import two_point_space
    >>> from fraclab.Kernel.Dirichlet.Spectral import spectral_decompose
    >>> out = harmonic_dtn(spectral_decompose(two_point_space()), [1.0, -1.0])
    >>> bool(np.allclose(out, [np.sqrt(2.0), -np.sqrt(2.0)], rtol=1e-6))
    True
    '''
    field = poisson_extend(decomp, 0.5, f, [0.0, step, 2.0 * step])
    values = field.values
    return (3.0 * values[:, 0] - 4.0 * values[:, 1] + values[:, 2]) \
        / (2.0 * step)
