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
r'''Bounds on the intrinsic metric of the product space.

The intrinsic metric is :math:`d_{\mathcal{E}_a}(z, w) = \sup\{F(z) - F(w) :
\Gamma_a(F, F) \le \mu \times \nu_a\}`. Every feasible :math:`F` gives a
lower bound. The competitors used here are built from graph distances
:math:`f = d(z_x, \cdot)` and the height :math:`y`: :math:`f`, :math:`y` and
:math:`\frac12(f \pm y)`, each rescaled so that its energy density is at most
one. The product metric :math:`d_a(z, w)` is reported as the upper side, and
the sandwich ratio is :math:`d_a / \text{lower}`.
'''

import numpy as np

from ..Dirichlet.DirichletSpace import energy_measure
from .ExperimentReport import ExperimentReport
from .HarnackError import InfeasibleCompetitor, BadExperiment

#: slack of the feasibility check of rescaled competitors
FEASIBILITY_SLACK = 1e-12


def _position(product, vertex):
    if isinstance(vertex, (int, np.integer)):
        return int(vertex)
    return product.space.position(vertex)


def _rescaled(product, values):
    '''Rescale `values` to unit maximal energy density; `None` for constant
    functions.'''
    horizontal, vertical = product.energy_density_parts(values, values)
    peak = float(np.max(horizontal + vertical))
    if peak <= 0.0:
        return None
    values = values / np.sqrt(peak)
    horizontal, vertical = product.energy_density_parts(values, values)
    if np.max(horizontal + vertical) > 1.0 + FEASIBILITY_SLACK:
        raise InfeasibleCompetitor(f'rescaled competitor has energy density '
                                   f'{np.max(horizontal + vertical)!r}')
    return values


def base_competitor(space, position):
    '''The graph distance to `position`, rescaled so that
    :math:`\\Gamma(f, f) \\le \\mu`; `None` on a single vertex.'''
    distances = np.array(space.metric[position], dtype=float)
    distances[~np.isfinite(distances)] = 0.0
    peak = float(np.max(energy_measure(space, distances, distances).density))
    if peak <= 0.0:
        return None
    return distances / np.sqrt(peak)


def competitors(product, base_positions):
    '''The rescaled competitors for the given base positions, as arrays of
    shape ``(n, 2N + 1)``.'''
    heights = np.broadcast_to(product.heights, (len(product.base),
                                                product.n_layers))
    result = []
    height_competitor = _rescaled(product, np.array(heights))
    if height_competitor is not None:
        result.append(height_competitor)
    for position in base_positions:
        f = base_competitor(product.base, position)
        if f is None:
            continue
        lifted = product.lift(f)
        for values in (lifted, 0.5 * (lifted + heights),
                       0.5 * (lifted - heights)):
            rescaled = _rescaled(product, values)
            if rescaled is not None:
                result.append(rescaled)
    return result


def intrinsic_metric_bounds(product, pairs):
    '''Sandwich the intrinsic metric between competitor lower bounds and the
    product metric on pairs of product vertices.

    :param product: a :class:`~.ProductSpace`
    :param pairs: pairs of product vertices, as positions or ``(label, j)``
        labels
    :raises BadExperiment: if a pair repeats a vertex
    :raises InfeasibleCompetitor: if a rescaled competitor is not feasible
    :rtype: ExperimentReport

    >>> from fraclab.Kernel.Dirichlet.Graphs import single_vertex_space
    >>> from fraclab.Kernel.Harnack.ProductSpace import build_product_space
    >>> product = build_product_space(single_vertex_space(), 0.5, 8.0, 8,
    ...                               gamma=1.0)
    >>> report = intrinsic_metric_bounds(product, [((0, -3), (0, 5))])
    >>> report.trials[0]['lower'], report.trials[0]['upper']
    (8.0, 8.0)
    '''
    trials = []
    base = product.base
    for first, second in pairs:
        z_pos, w_pos = _position(product, first), _position(product, second)
        if z_pos == w_pos:
            raise BadExperiment(f'the pair ({first!r}, {second!r}) repeats a '
                                'vertex')
        z_x, z_col = product.split(z_pos)
        w_x, w_col = product.split(w_pos)
        lower = 0.0
        for values in competitors(product, sorted({z_x, w_x})):
            lower = max(lower, abs(values[z_x, z_col] - values[w_x, w_col]))
        gap = product.heights[z_col] - product.heights[w_col]
        upper = float(np.hypot(base.metric[z_x, w_x], gap))
        trials.append({'z': product.space.vertex_ids[z_pos],
                       'w': product.space.vertex_ids[w_pos],
                       'lower': float(lower), 'upper': upper,
                       'ratio': upper / lower if lower > 0 else np.inf})
    if not trials:
        raise BadExperiment('no vertex pairs given')
    config = {'n_pairs': len(trials), 'n_cells': product.mesh.n_cells,
              'height': product.height, 's': product.s}
    extra = {'lower_fraction': min(row['lower'] / row['upper']
                                   for row in trials)}
    return ExperimentReport('intrinsic-metric', config, trials, extra=extra)


def random_pairs(product, n_pairs, seed=0):
    '''Draw `n_pairs` pairs of distinct product positions.'''
    rng = np.random.default_rng(seed)
    pairs = []
    while len(pairs) < n_pairs:
        first, second = rng.integers(0, len(product), size=2)
        if first != second:
            pairs.append((int(first), int(second)))
    return pairs
