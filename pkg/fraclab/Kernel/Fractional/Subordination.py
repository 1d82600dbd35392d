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
r'''Fractional powers by subordination to the heat semigroup.

The subordination formula

.. math::

    (-L)^s f = \frac{1}{\Gamma(-s)} \int_0^\infty (P_t f - f)
    \frac{dt}{t^{1+s}}

is evaluated mode by mode: on an eigenfunction with eigenvalue
:math:`\lambda` the integral is

.. math::

    q_s(\lambda) = \int_0^\infty (e^{-t\lambda} - 1) \frac{dt}{t^{1+s}}
    = \Gamma(-s)\lambda^s.

With :math:`t = e^u` the integrand becomes smooth and exponentially decaying
in :math:`u`, and the trapezoid rule on a uniform :math:`u` grid converges
geometrically. The grid covers :math:`[\tau, T]` with
:math:`\tau = \text{small\_time}/\lambda_{max}` and
:math:`T = \text{large\_time}/\lambda_{min}^+`; the grid is continued to
infinity on both sides and the continued sums are evaluated in closed form,
using a Taylor surrogate of :math:`e^{-t\lambda} - 1` below :math:`\tau` and
:math:`e^{-t\lambda} \approx 0` above :math:`T`.
'''

from math import exp, factorial, log
import warnings

import numpy as np
from scipy import special

from .FracConfig import FracConfig
from .FractionalError import QuadratureNotConverged, SlowConvergenceWarning


class LogTimeGrid:
    '''The trapezoid grid :math:`u_k = \\log\\tau + kh` of the subordination
    integrals.

    :param float tau: left end of the resolved window
    :param float big_t: right end of the resolved window
    :param int nodes: number of nodes
    '''

    def __init__(self, tau, big_t, nodes):
        self.log_lo = log(tau)
        self.log_hi = log(big_t)
        self.nodes = nodes
        self.step = (self.log_hi - self.log_lo) / (nodes - 1)
        self.times = np.exp(np.linspace(self.log_lo, self.log_hi, nodes))

    @classmethod
    def for_spectrum(cls, eigenvalues, cfg):
        '''Build the grid adapted to the positive part of a spectrum.'''
        positive = np.asarray(eigenvalues)[np.asarray(eigenvalues) > 0]
        if len(positive) == 0:
            return cls(cfg.small_time, cfg.large_time, cfg.nodes)
        return cls(cfg.small_time / np.max(positive),
                   cfg.large_time / np.min(positive), cfg.nodes)

    def left_tail_power(self, power):
        ''':math:`h \\sum_{j \\ge 1} e^{p(u_0 - jh)}`, the continued sum of
        :math:`t^p` below the window, for ``p > 0``.'''
        ratio = exp(-power * self.step)
        return self.step * exp(power * self.log_lo) * ratio / (1.0 - ratio)

    def right_tail_power(self, power):
        ''':math:`h \\sum_{j \\ge 1} e^{-p(u_{N-1} + jh)}`, the continued sum
        of :math:`t^{-p}` above the window, for ``p > 0``.'''
        ratio = exp(-power * self.step)
        return self.step * exp(-power * self.log_hi) * ratio / (1.0 - ratio)


def subordination_integral(eigenvalues, cfg, grid=None):
    '''Approximate :math:`q_s(\\lambda) = \\Gamma(-s)\\lambda^s` for each
    eigenvalue.

    :param eigenvalues: nonnegative eigenvalues
    :param FracConfig cfg: the order and quadrature parameters
    :param LogTimeGrid grid: the grid to use; by default adapted to
        `eigenvalues`
    :returns: the pair ``(values, tail)`` where `tail` is the estimated
        relative size of what the closed-form tails neglect
    :rtype: (numpy.ndarray, float)

    >>> vals, _ = subordination_integral(np.array([0.0, 2.0]), FracConfig(0.5))
    >>> bool(np.allclose(vals / special.gamma(-0.5), [0.0, np.sqrt(2.0)]))
    True
    '''
    lams = np.maximum(np.asarray(eigenvalues, dtype=float), 0.0)
    if grid is None:
        grid = LogTimeGrid.for_spectrum(lams, cfg)
    s, step = cfg.s, grid.step
    times = grid.times
    weights = step * times**(-s)

    out = np.zeros_like(lams)
    tail = 0.0
    for i, lam in np.ndenumerate(lams):
        if lam == 0.0:
            continue
        central = float(np.dot(np.expm1(-lam * times), weights))
        left = 0.0
        for order in range(1, cfg.small_time_order + 1):
            left += (-lam)**order / factorial(order) \
                * grid.left_tail_power(order - s)
        order = cfg.small_time_order + 1
        left_err = lam**order / factorial(order) \
            * grid.left_tail_power(order - s)
        right = -grid.right_tail_power(s)
        right_err = exp(-lam * times[-1]) * grid.right_tail_power(s)
        out[i] = central + left + right
        scale = abs(out[i]) if out[i] != 0.0 else 1.0
        tail = max(tail, (left_err + right_err) / scale)
    return out, tail


def subordinated_multiplier(eigenvalues, cfg, grid=None, check=True):
    ''':math:`q_s(\\lambda)/\\Gamma(-s)`, the quadrature approximation of
    :math:`\\lambda^s`.

    :raises QuadratureNotConverged: if `check` is set and the tail estimate
        exceeds ``cfg.tolerance``
    '''
    values, tail = subordination_integral(eigenvalues, cfg, grid)
    if check and tail > cfg.tolerance:
        raise QuadratureNotConverged(
            f'estimated neglected tail {tail:.3e} above tolerance '
            f'{cfg.tolerance:.1e}; widen the quadrature window')
    return values / special.gamma(-cfg.s)


def frac_subordination(decomp, cfg, f):
    '''Compute :math:`(-L)^s f` by the subordination integral.

    :param decomp: a :class:`~.SpectralDecomposition`
    :param FracConfig cfg: the order and quadrature parameters
    :param f: the function (or one function per column)
    :raises QuadratureNotConverged: if the tails are not negligible

    >>> from fraclab.Kernel.Dirichlet.Graphs import two_point_space
    >>> from fraclab.Kernel.Dirichlet.Spectral import spectral_decompose
    >>> decomp = spectral_decompose(two_point_space())
    >>> out = frac_subordination(decomp, FracConfig(0.5), [1.0, -1.0])
    >>> bool(np.allclose(out, [np.sqrt(2.0), -np.sqrt(2.0)]))
    True
    '''
    if cfg.s <= 0.1:
        warnings.warn(f'subordination integrals converge slowly for s = '
                      f'{cfg.s}', SlowConvergenceWarning, stacklevel=2)
    mult = subordinated_multiplier(decomp.eigenvalues, cfg)
    coeffs = decomp.coefficients(f)
    if coeffs.ndim == 1:
        return decomp.synthesize(mult * coeffs)
    return decomp.synthesize(mult[:, np.newaxis] * coeffs)


def scalar_subordination(lam, s, **kwargs):
    '''The subordination quadrature for a single eigenvalue, returning the
    approximation of :math:`\\lambda^s`.

    >>> round(scalar_subordination(2.0, 0.5), 12)
    1.414213562373
    '''
    cfg = FracConfig(s, **kwargs)
    return float(subordinated_multiplier(np.array([lam]), cfg)[0])

