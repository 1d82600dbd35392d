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
r'''Per-mode multiplier of the :math:`s`-harmonic extension.

For an eigenvalue :math:`\lambda` of :math:`-L`, the extension of an
eigenfunction at height :math:`y` is scaled by

.. math::

    M_s(\lambda, y) = \frac{1}{\Gamma(s)} \int_0^\infty e^{-r} r^{s-1}
    e^{-y^2\lambda/(4r)}\,dr
    = \frac{2^{1-s}}{\Gamma(s)} z^s K_s(z), \qquad z = y\sqrt{\lambda}.

The closed form (``method='bessel'``) is the default; the integral form is
evaluated by generalized Gauss-Laguerre quadrature (``method='laguerre'``).
'''

from functools import lru_cache
from math import log

import numpy as np
from scipy import special

from .FracConfig import check_s
from .FractionalError import UnknownMethod, BadQuadrature

#: default number of generalized Gauss-Laguerre nodes
LAGUERRE_NODES = 256


@lru_cache(maxsize=32)
def _laguerre_rule(n_nodes, s):
    nodes, weights = special.roots_genlaguerre(n_nodes, s - 1.0)
    weights = weights / special.gamma(s)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def _bessel_multiplier(s, lam, y):
    z = y * np.sqrt(lam)
    out = np.ones(np.broadcast(lam, y).shape)
    positive = z > 0
    zpos = z[positive]
    with np.errstate(under='ignore'):
        log_m = ((1.0 - s) * log(2.0) - special.gammaln(s) + s * np.log(zpos)
                 + np.log(special.kve(s, zpos)) - zpos)
        out[positive] = np.exp(log_m)
    return np.minimum(out, 1.0)


def _laguerre_multiplier(s, lam, y, n_nodes):
    if n_nodes < 8:
        raise BadQuadrature(f'at least 8 Laguerre nodes are needed, got '
                            f'{n_nodes}')
    nodes, weights = _laguerre_rule(int(n_nodes), s)
    quarter = 0.25 * y * y * lam
    with np.errstate(under='ignore'):
        vals = np.exp(-quarter[..., np.newaxis] / nodes) @ weights
    return np.where(quarter > 0, np.minimum(vals, 1.0), 1.0)


def poisson_multiplier(s, lam, y, method='bessel', n_nodes=LAGUERRE_NODES):
    '''Evaluate :math:`M_s(\\lambda, y)`.

    `lam` and `y` broadcast against each other. The result lies in
    ``(0, 1]``, equals 1 where ``lam == 0`` or ``y == 0`` and decreases in
    both arguments.

    :param float s: the fractional order
    :param lam: nonnegative eigenvalue(s)
    :param y: nonnegative height(s)
    :param str method: ``'bessel'`` or ``'laguerre'``
    :param int n_nodes: Laguerre node count
    :raises SOutOfRange: if `s` is not in ``(0, 1)``

    >>> float(poisson_multiplier(0.3, 2.0, 0.0))
    1.0
    >>> bool(np.isclose(poisson_multiplier(0.5, 4.0, 1.0), np.exp(-2.0)))
    True
    '''
    s = check_s(s)
    lam = np.maximum(np.asarray(lam, dtype=float), 0.0)
    y = np.abs(np.asarray(y, dtype=float))
    lam, y = np.broadcast_arrays(lam, y)
    if method == 'bessel':
        out = _bessel_multiplier(s, lam, y)
    elif method == 'laguerre':
        out = _laguerre_multiplier(s, lam, y, n_nodes)
    else:
        raise UnknownMethod(f'unknown Poisson multiplier method {method!r}, '
                            "expected 'bessel' or 'laguerre'")
    return out if out.ndim else out[()]
