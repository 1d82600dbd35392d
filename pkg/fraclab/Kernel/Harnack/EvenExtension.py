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
r'''Harmonicity of the even reflection of an extension.

If :math:`(-L)^s f = 0` on a region :math:`B`, the even reflection
:math:`\tilde U(x, y) = U(x, |y|)` of the extension of :math:`f` is harmonic
for :math:`\mathcal{E}_a` in :math:`B \times (-Y, Y)`. On the product graph
:math:`\mathcal{E}_a(\tilde U, h)` vanishes to solver accuracy for hat
functions away from :math:`y = 0`; at :math:`y = 0` it equals
:math:`-2\mu(x)` times the discrete weighted Neumann trace, which tends to
zero under mesh refinement. On uniform meshes it does so at second order
in the cell size, and :func:`even_extension_study` extrapolates it across
the refinement levels.

Residuals are scaled by the largest bottom residual over the whole base,
which is the size of the trace where the equation does not hold.
'''

import numpy as np

from ..Extension.ExtensionError import BadMeshParams
from ..Extension.ExtensionSolver import solve_extension_pde
from ..Extension.YMesh import auto_height
from ..Fractional.FracConfig import check_s
from .ExperimentReport import ExperimentReport
from .HarnackError import SupportViolation
from .ProductSpace import ProductSpace

#: the named test function families
TEST_SETS = ('hats', 'interior')

#: half height of the refinement study under the modal top condition, in
#: units of 1/sqrt(lambda_min+)
STUDY_HEIGHT = 1.5


def even_extension(field, product):
    '''The even reflection :math:`\\tilde U(x, y) = U(x, |y|)` of an
    extension field, on the layers of `product`.

    :raises BadMeshParams: if the field and the product do not share their
        base and half mesh
    '''
    if (len(field.space) != len(product.base)
            or not np.array_equal(field.mesh.nodes, product.mesh.nodes)):
        raise BadMeshParams('the field and the product space have different '
                            'bases or meshes')
    values = field.values
    return np.concatenate((values[:, :0:-1], values), axis=1)


def product_residual(product, values):
    '''The residuals :math:`\\mathcal{E}_a(u, h_{x, j})` against every nodal
    hat function, shaped ``(n, 2N + 1)``.'''
    flat = product.space.laplacian @ product.flatten(values)
    return product.unflatten(flat)


def even_extension_check(field, product, inside, test_set='hats'):
    '''Evaluate the :math:`\\mathcal{E}_a`-residual of the even reflection of
    `field` on :math:`B \\times (-Y, Y)`.

    :param field: an :class:`~.ExtensionField` of a datum satisfying
        :math:`(-L)^s f = 0` on `inside`
    :param ProductSpace product: the product space over the field's mesh
    :param inside: the base positions of :math:`B`
    :param test_set: ``'hats'`` (all hats over :math:`B` below the
        truncation layers), ``'interior'`` (those off :math:`y = 0`), or an
        array of test functions of shape ``(n, 2N + 1)`` or
        ``(k, n, 2N + 1)``
    :raises SupportViolation: if a test function is not supported in
        :math:`B \\times (-Y, Y)`
    :rtype: ExperimentReport
    '''
    if not isinstance(product, ProductSpace):
        raise BadMeshParams('the even extension check needs a ProductSpace')
    inside = np.unique(np.asarray(inside, dtype=int))
    extended = even_extension(field, product)
    residual = product_residual(product, extended)
    middle = product.layer(0)
    scale = float(np.max(np.abs(residual[:, middle])))
    if scale == 0.0:
        scale = 1.0
    support = np.zeros(residual.shape, dtype=bool)
    support[np.ix_(inside, np.arange(1, product.n_layers - 1))] = True

    trials = []
    if isinstance(test_set, str):
        if test_set not in TEST_SETS:
            raise SupportViolation(f'unknown test function family '
                                   f'{test_set!r}, expected one of '
                                   f'{TEST_SETS}')
        if test_set == 'interior':
            support[:, middle] = False
        for position in inside:
            row = np.abs(residual[position]) * support[position]
            trials.append({'vertex': field.space.vertex_ids[position],
                           'bottom': float(row[middle]) / scale,
                           'ratio': float(np.max(row)) / scale})
    else:
        tests = np.asarray(test_set, dtype=float)
        if tests.ndim == 2:
            tests = tests[np.newaxis]
        if tests.shape[1:] != residual.shape:
            raise SupportViolation(f'test functions have shape '
                                   f'{tests.shape[1:]}, expected '
                                   f'{residual.shape}')
        if np.any(tests[:, ~support]):
            raise SupportViolation('test functions must vanish outside the '
                                   'region and on the truncation layers')
        values = np.einsum('kxj,xj->k', tests, residual)
        trials = [{'test': k, 'ratio': abs(float(value)) / scale}
                  for k, value in enumerate(values)]
    config = {'s': field.s, 'n_cells': product.mesh.n_cells,
              'height': product.height, 'top_bc': field.top_bc,
              'n_inside': int(inside.size),
              'test_set': test_set if isinstance(test_set, str) else 'array'}
    return ExperimentReport('even-extension', config, trials,
                            extra={'scale': scale})


def bottom_residual(field, product):
    '''The signed residuals :math:`\\mathcal{E}_a(\\tilde U, h_{x, 0})`
    against the hats on :math:`y = 0`, one per base vertex.'''
    residual = product_residual(product, even_extension(field, product))
    return residual[:, product.layer(0)]


def romberg_extrapolate(values):
    '''Romberg extrapolation of quantities computed on meshes refined by
    doubling, coarsest first. The error is assumed to expand in even powers
    of the cell size, as it does on uniform meshes.

    >>> float(romberg_extrapolate([3.0, 1.3125, 1.06640625]))
    1.0
    '''
    table = [np.asarray(value, dtype=float) for value in values]
    for order in range(1, len(table)):
        factor = 4.0 ** order - 1.0
        table = [fine + (fine - coarse) / factor
                 for coarse, fine in zip(table[:-1], table[1:])]
    return table[-1]


def even_extension_study(decomp, s, inside, f, levels=(64, 128, 256),
                         height=None, gamma=1.0, top_bc='dirichlet-modal'):
    '''Run :func:`even_extension_check` on a sequence of refined meshes.

    The refinement trace of the returned report (the one of the finest
    mesh) holds the scaled residual of every level, and
    ``extra['ratios']`` the ratios between consecutive levels. The bottom
    residuals of all levels are combined by :func:`romberg_extrapolate`;
    ``extra['extrapolated']`` is the largest extrapolated residual over
    :math:`B`, scaled by the largest one over the whole base.

    :param decomp: the :class:`~.SpectralDecomposition` of the base
    :param float s: the fractional order
    :param inside: the base positions of :math:`B`
    :param f: a datum with :math:`(-L)^s f = 0` on `inside`
    :param levels: increasing cell counts, each the double of the previous
    :param height: the half height; by default
        ``1.5/sqrt(lambda_min+)`` under the modal top condition and
        ``12/sqrt(lambda_min+)`` under the Neumann one
    :param float gamma: the mesh grading
    :param str top_bc: the top condition of the extension solves
    :raises BadMeshParams: if the levels do not double
    '''
    s = check_s(s)
    levels = [int(level) for level in levels]
    if any(fine != 2 * coarse for coarse, fine in zip(levels, levels[1:])):
        raise BadMeshParams(f'refinement levels {levels} do not double')
    if height is None and top_bc == 'dirichlet-modal':
        height = auto_height(decomp.lambda_min_positive, STUDY_HEIGHT)
    inside = np.unique(np.asarray(inside, dtype=int))
    reports = []
    bottoms = []
    for n_cells in levels:
        field = solve_extension_pde(decomp, f, s, top_bc=top_bc,
                                    n_cells=n_cells, height=height,
                                    gamma=gamma, coarse=False)
        product = ProductSpace(decomp.space, s, field.mesh)
        reports.append(even_extension_check(field, product, inside))
        bottoms.append(bottom_residual(field, product))
    finest = reports[-1]
    finest.attach_refinement(reports[:-1][::-1], parameter='coarsening')
    constants = [report.constant for report in reports]
    finest.extra['levels'] = levels
    finest.extra['residuals'] = constants
    finest.extra['ratios'] = [fine / coarse for coarse, fine
                              in zip(constants[:-1], constants[1:])]
    extrapolated = np.abs(romberg_extrapolate(bottoms))
    scale = float(np.max(extrapolated)) or 1.0
    finest.extra['extrapolated'] = float(np.max(extrapolated[inside])) / scale
    return finest
