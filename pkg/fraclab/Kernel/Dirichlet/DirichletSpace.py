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
r'''Finite Dirichlet spaces: weighted graphs with a vertex measure.

A :class:`DirichletSpace` carries the vertex labels, the measure
:math:`\mu`, the symmetric conductances :math:`w_{xy}` and a metric. Its
generator is

.. math::

    (Lf)(x) = \frac{1}{\mu(x)} \sum_y w_{xy} (f(y) - f(x)),

and its Dirichlet form is
:math:`\mathcal{E}(u, v) = \frac12 \sum_{x,y} w_{xy} (u(x)-u(y))(v(x)-v(y))`.
'''

from functools import cached_property
from collections.abc import Mapping

import numpy as np
from scipy import sparse
from scipy.sparse import csgraph

from .DirichletError import (NonSymmetricConductance, InvalidConductance,
                             NonPositiveMeasure, MetricAxiomViolation,
                             DuplicateVertex, UnknownVertex, ShapeMismatch)
from ..Utils import format_cell


#: vertex count up to which the triangle inequality is checked exhaustively
EXHAUSTIVE_METRIC_CHECK = 500


def _frozen(array):
    array = np.array(array, dtype=float)
    array.setflags(write=False)
    return array


class DirichletSpace:
    '''A finite weighted graph with a vertex measure and a metric.

    Instances are immutable. Use :func:`build_space` to construct them from
    label-keyed data; the constructor expects arrays indexed by vertex
    position.

    :param vertex_ids: the vertex labels
    :param measure: positive masses, one per vertex
    :param conductance: symmetric matrix of nonnegative conductances with zero
        diagonal (dense or :mod:`scipy.sparse`)
    :param metric: optional explicit distance matrix; if `None`, the hop-count
        shortest-path metric is computed on demand
    :param lattice_shape: shape of the periodic lattice this space discretizes,
        if any
    '''

    def __init__(self, vertex_ids, measure, conductance, metric=None,
                 lattice_shape=None):
        self.vertex_ids = tuple(vertex_ids)
        n_vertices = len(self.vertex_ids)
        if n_vertices == 0:
            raise ShapeMismatch('a Dirichlet space needs at least one vertex')
        self.index = {}
        for i, label in enumerate(self.vertex_ids):
            if label in self.index:
                raise DuplicateVertex(f'duplicate vertex id {label!r}')
            self.index[label] = i
        self._str_index = {str(label): i for label, i in self.index.items()}
        self._str_index.update((format_cell(label), i)
                               for label, i in self.index.items())

        self.measure = _frozen(measure)
        if self.measure.shape != (n_vertices,):
            raise ShapeMismatch(f'expected {n_vertices} vertex masses, got '
                                f'shape {self.measure.shape}')
        bad = ~(np.isfinite(self.measure) & (self.measure > 0))
        if np.any(bad):
            label = self.vertex_ids[int(np.argmax(bad))]
            raise NonPositiveMeasure(f'measure of vertex {label!r} must be '
                                     'positive and finite')

        cond = sparse.csr_matrix(conductance, dtype=float)
        if cond.shape != (n_vertices, n_vertices):
            raise ShapeMismatch(f'conductance matrix has shape {cond.shape}, '
                                f'expected {(n_vertices, n_vertices)}')
        cond.eliminate_zeros()
        if cond.nnz and (not np.all(np.isfinite(cond.data))
                         or np.any(cond.data < 0)):
            raise InvalidConductance('conductances must be finite and '
                                     'nonnegative')
        if np.any(cond.diagonal() != 0):
            label = self.vertex_ids[int(np.argmax(cond.diagonal() != 0))]
            raise InvalidConductance(f'self-loop on vertex {label!r}')
        asym = abs(cond - cond.T)
        if asym.nnz and asym.max() > 0:
            row, col = (asym == asym.max()).nonzero()
            raise NonSymmetricConductance(
                'w(x, y) != w(y, x) for the pair '
                f'({self.vertex_ids[row[0]]!r}, {self.vertex_ids[col[0]]!r})')
        cond.sort_indices()
        self.conductance = cond

        upper = sparse.triu(cond, k=1).tocoo()
        self.edge_heads = upper.row.copy()
        self.edge_tails = upper.col.copy()
        self.edge_weights = _frozen(upper.data)
        self.degree = _frozen(np.asarray(cond.sum(axis=1)).ravel())

        self.lattice_shape = (None if lattice_shape is None
                              else tuple(int(n) for n in lattice_shape))
        if metric is not None:
            metric = _frozen(metric)
            check_metric(metric, self.vertex_ids)
            self.__dict__['metric'] = metric

    def __len__(self):
        return len(self.vertex_ids)

    def __iter__(self):
        return iter(self.vertex_ids)

    def __repr__(self):
        return (f'DirichletSpace(n_vertices={len(self)}, '
                f'n_edges={len(self.edge_weights)}, '
                f'total_measure={self.total_measure!r})')

    @property
    def n_vertices(self):
        '''The number of vertices.'''
        return len(self.vertex_ids)

    @property
    def total_measure(self):
        ''':math:`\\mu(X)`.'''
        return float(np.sum(self.measure))

    @cached_property
    def metric(self):
        '''The distance matrix. Defaults to hop-count shortest paths along
        edges with positive conductance; distances between components are
        infinite.'''
        dist = csgraph.shortest_path(self.conductance, directed=False,
                                     unweighted=True)
        dist.setflags(write=False)
        return dist

    @cached_property
    def components(self):
        '''A pair ``(n_components, labels)`` of the connected components.'''
        return csgraph.connected_components(self.conductance, directed=False)

    @property
    def n_components(self):
        '''The number of connected components.'''
        return int(self.components[0])

    @property
    def is_connected(self):
        '''`True` if the graph has a single connected component.'''
        return self.n_components == 1

    @cached_property
    def laplacian(self):
        '''The symmetric positive semidefinite matrix
        :math:`G = \\mathrm{diag}(\\deg) - W`, so that
        :math:`\\mu(x)\\,(Lf)(x) = -(Gf)(x)`.'''
        return (sparse.diags(self.degree) - self.conductance).tocsr()

    def position(self, label):
        '''Return the position of the vertex with the given label. String
        forms of the labels are accepted, too, including the comma-joined
        form of tuple labels used in TSV files.

        >>> from fraclab.Kernel.Dirichlet.Graphs import grid_space
        >>> space = grid_space((2, 3))
        >>> [space.position(label) for label in ((1, 2), '1,2', '(1, 2)')]
        [5, 5, 5]
        '''
        try:
            return self.index[label]
        except (KeyError, TypeError):
            pass
        try:
            return self._str_index[str(label)]
        except KeyError:
            raise UnknownVertex(f'unknown vertex {label!r}') from None

    def check_function(self, values, name='function'):
        '''Convert `values` to a float array with one row per vertex.

        :raises ShapeMismatch: if the leading dimension is not the vertex
            count
        '''
        values = np.asarray(values, dtype=float)
        if values.ndim == 0 or values.shape[0] != len(self):
            raise ShapeMismatch(f'{name} has shape {values.shape}, expected '
                                f'{len(self)} values')
        return values

    def function_from_mapping(self, mapping, default=None):
        '''Build a vertex array from a label-keyed mapping.'''
        values = np.full(len(self), np.nan if default is None else default)
        for label, value in mapping.items():
            values[self.position(label)] = value
        if np.any(np.isnan(values)):
            missing = self.vertex_ids[int(np.argmax(np.isnan(values)))]
            raise ShapeMismatch(f'no value for vertex {missing!r}')
        return values

    def apply_generator(self, f):
        '''Apply the generator :math:`L` to `f` (one column per function if
        `f` is two-dimensional).

        >>> space = build_space(['a', 'b'], [1.0, 1.0], {('a', 'b'): 1.0})
        >>> space.apply_generator([1.0, -1.0]).tolist()
        [-2.0, 2.0]
        '''
        f = self.check_function(f)
        lap = self.laplacian @ f
        if f.ndim == 1:
            return -lap / self.measure
        return -lap / self.measure[:, np.newaxis]

    def inner(self, f, g):
        ''':math:`\\langle f, g\\rangle_\\mu`.'''
        f = self.check_function(f)
        g = self.check_function(g)
        return float(np.sum(f * g * self.measure))

    def norm(self, f):
        ''':math:`\\|f\\|_{L^2(\\mu)}`.'''
        return np.sqrt(self.inner(f, f))

    def generator_matrix(self):
        '''Return :math:`L` as a dense matrix.'''
        return -(self.laplacian.toarray() / self.measure[:, np.newaxis])


def _pair_matrix(n_vertices, position, pairs, name):
    '''Assemble a symmetric matrix from a mapping of unordered pairs.'''
    values = {}
    for (head, tail), value in pairs.items():
        i, j = position(head), position(tail)
        value = float(value)
        key = (min(i, j), max(i, j))
        if key in values and values[key] != value:
            raise NonSymmetricConductance(
                f'{name} of the pair ({head!r}, {tail!r}) given twice with '
                f'different values ({values[key]} and {value})')
        values[key] = value
    rows = [i for i, _ in values]
    cols = [j for _, j in values]
    data = list(values.values())
    mat = sparse.coo_matrix((data + data, (rows + cols, cols + rows)),
                            shape=(n_vertices, n_vertices))
    diag = sparse.coo_matrix((data, (rows, cols)),
                             shape=(n_vertices, n_vertices))
    # diagonal entries were doubled above
    return (mat - sparse.diags(diag.diagonal())).tocsr()


def build_space(vertices, measure, conductances, metric_override=None,
                lattice_shape=None):
    '''Build and validate a :class:`DirichletSpace`.

    :param vertices: a sequence of hashable vertex labels
    :param measure: a mapping label → mass, or a sequence aligned with
        `vertices`
    :param conductances: a mapping ``(label, label) → w`` over unordered pairs
        (both orientations may be given if they agree), or a square matrix
    :param metric_override: optional mapping ``(label, label) → d`` or square
        matrix; pairs not listed are an error
    :param lattice_shape: optional periodic lattice shape (see
        :func:`~.torus_space`)
    :raises NonSymmetricConductance: if ``w(x, y) != w(y, x)``
    :raises NonPositiveMeasure: if some mass is not positive
    :raises MetricAxiomViolation: if the override is not a metric

    >>> space = build_space(['a', 'b', 'c'], {'a': 1, 'b': 2, 'c': 1},
    ...                     {('a', 'b'): 1.0, ('b', 'c'): 0.5})
    >>> space.metric.tolist()
    [[0.0, 1.0, 2.0], [1.0, 0.0, 1.0], [2.0, 1.0, 0.0]]
    >>> build_space(['a', 'b'], [1, 1], [[0, 1], [2, 0]])
    Traceback (most recent call last):
        ...
    fraclab.Kernel.Dirichlet.DirichletError.NonSymmetricConductance: w(x, y) \
!= w(y, x) for the pair ('a', 'b')
    '''
    vertices = list(vertices)
    index = {}
    for i, label in enumerate(vertices):
        if label in index:
            raise DuplicateVertex(f'duplicate vertex id {label!r}')
        index[label] = i

    def position(label):
        try:
            return index[label]
        except KeyError:
            raise UnknownVertex(f'unknown vertex {label!r}') from None

    n_vertices = len(vertices)
    if isinstance(measure, Mapping):
        masses = np.full(n_vertices, np.nan)
        for label, value in measure.items():
            masses[position(label)] = value
        if np.any(np.isnan(masses)):
            missing = vertices[int(np.argmax(np.isnan(masses)))]
            raise NonPositiveMeasure(f'no measure given for vertex '
                                     f'{missing!r}')
    else:
        masses = np.asarray(measure, dtype=float)

    if isinstance(conductances, Mapping):
        cond = _pair_matrix(n_vertices, position, conductances, 'conductance')
    else:
        cond = conductances

    metric = None
    if metric_override is not None:
        if isinstance(metric_override, Mapping):
            metric = np.full((n_vertices, n_vertices), np.nan)
            np.fill_diagonal(metric, 0.0)
            for (head, tail), value in metric_override.items():
                i, j = position(head), position(tail)
                if not np.isnan(metric[i, j]) and metric[i, j] != value \
                        and i != j:
                    raise MetricAxiomViolation(
                        f'distance ({head!r}, {tail!r}) given twice with '
                        'different values')
                metric[i, j] = metric[j, i] = value
            if np.any(np.isnan(metric)):
                raise MetricAxiomViolation('metric override does not cover '
                                           'every vertex pair')
        else:
            metric = metric_override

    return DirichletSpace(vertices, masses, cond, metric=metric,
                          lattice_shape=lattice_shape)


def check_metric(metric, vertex_ids=None, exhaustive_cap=EXHAUSTIVE_METRIC_CHECK,
                 n_samples=20000, seed=0):
    '''Check the metric axioms on a distance matrix.

    Symmetry, zero diagonal and positivity off the diagonal are always
    checked. The triangle inequality is checked on every triple for at most
    `exhaustive_cap` vertices and on `n_samples` random triples above.

    :raises MetricAxiomViolation: on the first violated axiom

    >>> check_metric(np.array([[0., 1.], [1., 0.]]))
    >>> check_metric(np.array([[0., 3., 1.], [3., 0., 1.], [1., 1., 0.]]))
    Traceback (most recent call last):
        ...
    fraclab.Kernel.Dirichlet.DirichletError.MetricAxiomViolation: triangle \
inequality violated for the triple (0, 2, 1)
    '''
    metric = np.asarray(metric, dtype=float)
    n_vertices = metric.shape[0]
    labels = (list(range(n_vertices)) if vertex_ids is None
              else list(vertex_ids))
    if metric.shape != (n_vertices, n_vertices):
        raise MetricAxiomViolation(f'metric must be square, got shape '
                                   f'{metric.shape}')
    if np.any(np.isnan(metric)) or np.any(metric < 0):
        raise MetricAxiomViolation('distances must be nonnegative numbers')
    if np.any(np.diag(metric) != 0):
        raise MetricAxiomViolation('d(x, x) must vanish')
    if np.any(metric != metric.T):
        row, col = np.argwhere(metric != metric.T)[0]
        raise MetricAxiomViolation(f'd(x, y) != d(y, x) for the pair '
                                   f'({labels[row]!r}, {labels[col]!r})')
    off_diag = metric + np.diag(np.full(n_vertices, np.inf))
    if np.any(off_diag <= 0):
        row, col = np.argwhere(off_diag <= 0)[0]
        raise MetricAxiomViolation(f'distinct vertices {labels[row]!r} and '
                                   f'{labels[col]!r} are at distance zero')
    slack = 1e-12 * np.max(metric[np.isfinite(metric)], initial=1.0)
    if n_vertices <= exhaustive_cap:
        for mid in range(n_vertices):
            through = metric[:, mid, np.newaxis] + metric[np.newaxis, mid, :]
            bad = metric > through + slack
            if np.any(bad):
                first, last = np.argwhere(bad)[0]
                raise MetricAxiomViolation(
                    'triangle inequality violated for the triple '
                    f'({labels[first]!r}, {labels[mid]!r}, {labels[last]!r})')
        return
    rng = np.random.default_rng(seed)
    first, mid, last = rng.integers(0, n_vertices, size=(3, n_samples))
    bad = metric[first, last] > metric[first, mid] + metric[mid, last] + slack
    if np.any(bad):
        k = int(np.argmax(bad))
        raise MetricAxiomViolation(
            'triangle inequality violated for the triple '
            f'({labels[first[k]]!r}, {labels[mid[k]]!r}, '
            f'{labels[last[k]]!r})')


def dirichlet_form(space, u, v):
    '''The Dirichlet form
    :math:`\\mathcal{E}(u,v) = \\frac12\\sum_{x,y} w_{xy}(u(x)-u(y))(v(x)-v(y))`.

    >>> space = build_space(['a', 'b'], [1.0, 1.0], {('a', 'b'): 1.0})
    >>> dirichlet_form(space, [1.0, -1.0], [1.0, -1.0])
    4.0
    '''
    u = space.check_function(u, 'u')
    v = space.check_function(v, 'v')
    du = u[space.edge_heads] - u[space.edge_tails]
    dv = v[space.edge_heads] - v[space.edge_tails]
    return float(np.dot(space.edge_weights, du * dv))


class EnergyMeasure:
    '''The energy measure (carré du champ) of a pair of functions, as a
    density with respect to :math:`\\mu`:

    .. math::

        \\Gamma(u,v)(x) = \\frac{1}{2\\mu(x)} \\sum_y w_{xy}
        (u(x)-u(y))(v(x)-v(y)).
    '''

    def __init__(self, space, density):
        self.space = space
        self.density = _frozen(density)

    def __repr__(self):
        return f'EnergyMeasure(total={self.total()!r})'

    def __getitem__(self, label):
        return float(self.density[self.space.position(label)])

    def total(self):
        ''':math:`\\sum_x \\Gamma(u,v)(x)\\mu(x)`, which equals
        :math:`\\mathcal{E}(u,v)`.'''
        return float(np.dot(self.density, self.space.measure))

    def integrate(self, vertices):
        '''Integrate the measure over a set of vertex positions.'''
        vertices = np.asarray(list(vertices), dtype=int)
        return float(np.dot(self.density[vertices],
                            self.space.measure[vertices]))


def energy_measure(space, u, v):
    '''Compute the :class:`EnergyMeasure` of `u` and `v`.

    Each edge contributes half of :math:`w_{xy}\\Delta u\\Delta v` to both of
    its ends, so that the total reorders the sum of :func:`dirichlet_form`.
    '''
    u = space.check_function(u, 'u')
    v = space.check_function(v, 'v')
    heads, tails = space.edge_heads, space.edge_tails
    contrib = space.edge_weights * ((u[heads] - u[tails])
                                    * (v[heads] - v[tails]))
    half = 0.5 * contrib
    density = (np.bincount(heads, weights=half, minlength=len(space))
               + np.bincount(tails, weights=half, minlength=len(space)))
    return EnergyMeasure(space, density / space.measure)


def unit_clamp(u):
    '''The normal contraction :math:`t \\mapsto \\min(\\max(t, 0), 1)`.'''
    return np.clip(u, 0.0, 1.0)


def is_markovian(space, n_samples=100, seed=0, scale=2.0):
    '''Check the Markov property of the form on random functions.

    For each of `n_samples` random functions `u` (uniform in
    ``[-scale, scale]``), check that :math:`\\mathcal{E}(Tu, Tu) \\le
    \\mathcal{E}(u, u)` for the unit clamp and for a random normal contraction
    :math:`T(t) = \\mathrm{sign}(t)\\min(|t|, c)`, the positive part and the
    absolute value.

    :returns: the number of violations (0 for a Dirichlet form)
    '''
    rng = np.random.default_rng(seed)
    violations = 0
    for _ in range(n_samples):
        u = rng.uniform(-scale, scale, size=len(space))
        energy = dirichlet_form(space, u, u)
        cut = rng.uniform(0.0, scale)
        contractions = (unit_clamp(u), np.sign(u) * np.minimum(np.abs(u), cut),
                        np.maximum(u, 0.0), np.abs(u))
        for contracted in contractions:
            if dirichlet_form(space, contracted, contracted) > \
                    energy * (1 + 1e-12) + 1e-300:
                violations += 1
    return violations
