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
'''The routes to :math:`(-L)^s f` side by side.

Each route computes the same operator in a different way, so that their
mutual agreement checks every one of them:

* ``spectral``: the eigen-expansion;
* ``subord``: the subordinated heat semigroup;
* ``kernel``: the jump kernel;
* ``extension``: the weighted Neumann trace of the finite-volume extension;
* ``semi-analytic``: the Dirichlet-to-Neumann quotient of the closed-form
  extension.
'''

from itertools import combinations

import numpy as np

from ..Extension.ExtensionField import ExtensionField, PDE_SOLVE
from ..Extension.ExtensionSolver import ExtensionProblem, neumann_trace
from ..Extension.YMesh import auto_height, build_graded_mesh
from .FracConfig import FracConfig, check_s
from .FractionalError import UnknownMethod
from .FractionalPowers import frac_spectral
from .JumpKernel import build_jump_kernel, frac_kernel_apply
from .Poisson import poisson_dtn
from .Subordination import frac_subordination

#: the routes compared by ``frac compare``
ROUTES = ('spectral', 'subord', 'kernel', 'extension')

#: every available route
ALL_ROUTES = ROUTES + ('semi-analytic',)


def route_gamma(s):
    '''The mesh grading :math:`\\max(2, 1/(2s))` of the extension route.

    >>> route_gamma(0.5), route_gamma(0.1)
    (2.0, 5.0)
    '''
    return max(2.0, 1.0 / (2.0 * check_s(s)))


def _columns(f):
    return [f] if f.ndim == 1 else list(f.T)


def _stack(outputs, f):
    return outputs[0] if f.ndim == 1 else np.column_stack(outputs)


def extension_route(decomp, s, f, n_cells=256, height=None, gamma=None):
    '''Compute :math:`(-L)^s f` through the extension equation.

    The fine and coarse systems are assembled once for all the columns of
    `f`, and the two Neumann traces are combined by Richardson
    extrapolation.

    :param int n_cells: the number of cells of the fine graded mesh
    :param float height: the truncation height, by default
        :func:`~.auto_height`
    :param float gamma: the grading, by default :func:`route_gamma`
    '''
    s = check_s(s)
    space = decomp.space
    f = space.check_function(f)
    if height is None:
        height = auto_height(decomp.lambda_min_positive)
    if gamma is None:
        gamma = route_gamma(s)
    mesh = build_graded_mesh(height, n_cells, gamma, 1.0 - 2.0 * s)
    fine = ExtensionProblem(space, s, mesh, decomp=decomp)
    coarse = ExtensionProblem(space, s, mesh.coarsened(), decomp=decomp)
    fine_values = fine.solve_values(f)
    coarse_values = coarse.solve_values(f)
    if f.ndim == 1:
        fine_values = fine_values[..., np.newaxis]
        coarse_values = coarse_values[..., np.newaxis]
    traces = []
    for k in range(fine_values.shape[2]):
        coarse_field = ExtensionField(space, coarse.mesh,
                                      coarse_values[:, :, k], s, PDE_SOLVE)
        field = ExtensionField(space, mesh, fine_values[:, :, k], s,
                               PDE_SOLVE, coarse=coarse_field)
        traces.append(neumann_trace(field))
    return _stack(traces, f)


def apply_route(decomp, method, s, f, n_cells=256, cfg=None):
    '''Compute :math:`(-L)^s f` by the route `method`.

    :param decomp: the :class:`~.SpectralDecomposition` of the space
    :param str method: one of :data:`ALL_ROUTES`
    :param float s: the fractional order
    :param f: one datum, or one datum per column
    :param int n_cells: the mesh size of the extension route
    :param cfg: the :class:`~.FracConfig` of the subordination and kernel
        routes; by default ``FracConfig(s)``
    :raises UnknownMethod: for an unknown route

    >>> from fraclab.Kernel.Dirichlet.Graphs import two_point_space
    >>> from fraclab.Kernel.Dirichlet.Spectral import spectral_decompose
    >>> decomp = spectral_decompose(two_point_space())
    >>> out = apply_route(decomp, 'kernel', 0.5, [1.0, -1.0])
    >>> bool(np.allclose(out, [np.sqrt(2.0), -np.sqrt(2.0)]))
    True
    '''
    if method not in ALL_ROUTES:
        raise UnknownMethod(f'unknown method {method!r}, expected one of '
                            f'{ALL_ROUTES}')
    s = check_s(s)
    f = decomp.space.check_function(f)
    if cfg is None:
        cfg = FracConfig(s)
    if method == 'spectral':
        return frac_spectral(decomp, s, f)
    if method == 'subord':
        return frac_subordination(decomp, cfg, f)
    if method == 'kernel':
        return frac_kernel_apply(build_jump_kernel(decomp, cfg), f)
    if method == 'extension':
        return extension_route(decomp, s, f, n_cells)
    return _stack([poisson_dtn(decomp, cfg, col) for col in _columns(f)], f)


def relative_error(approx, exact):
    '''The sup-norm error of `approx` relative to the sup norm of `exact`;
    the absolute error when `exact` vanishes.

    >>> relative_error([1.0, 2.5], [1.0, 2.0])
    0.25
    '''
    approx = np.asarray(approx, dtype=float)
    exact = np.asarray(exact, dtype=float)
    error = float(np.max(np.abs(approx - exact)))
    scale = float(np.max(np.abs(exact)))
    return error / scale if scale > 0.0 else error


def route_errors(decomp, s, f, routes=ROUTES, n_cells=256, cfg=None):
    '''Compare the routes pairwise.

    :returns: a dictionary mapping ``'<first>-<second>'`` to the relative
        error of the second route with respect to the first, for every pair
        of `routes` in order
    '''
    results = {method: apply_route(decomp, method, s, f, n_cells, cfg)
               for method in routes}
    return {f'{first}-{second}': relative_error(results[second],
                                                 results[first])
            for first, second in combinations(routes, 2)}
