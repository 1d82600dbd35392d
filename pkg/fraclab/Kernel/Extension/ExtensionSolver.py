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
r'''Finite-volume solution of the extension equation.

The extension :math:`U` of a function :math:`f` solves
:math:`(L + \mathcal{B}_a) U = 0` on :math:`X \times (0, \infty)` with
:math:`\mathcal{B}_a = \partial_y^2 + (a/y)\partial_y` and :math:`U(\cdot, 0) =
f`. In divergence form the equation is the Euler-Lagrange equation of

.. math::

    \mathcal{E}_a(U, U) = \sum_j m_j \mathcal{E}(U_j, U_j)
    + \sum_x \mu(x) \sum_j \beta_{j+1/2} (U_{j+1}(x) - U_j(x))^2,

whose matrix is :math:`m \otimes G + T_\beta \otimes \mu`. The bottom nodes
are pinned to :math:`f`; at the top either the natural (Neumann) condition
holds or the nodes are pinned to the exact modal extension.
'''

import numpy as np
from scipy import sparse
from scipy.sparse import linalg as splinalg

from ..Dirichlet.Spectral import spectral_decompose
from ..Fractional.FracConfig import check_s
from ..Fractional.FractionalPowers import dtn_constant
from ..Fractional.PoissonMultiplier import poisson_multiplier
from .ExtensionError import (BadMeshParams, BadTopBC, BadSolver,
                             CGNoConvergence, MeshTooCoarse,
                             TestFunctionSupportViolation)
from .ExtensionField import ExtensionField, PDE_SOLVE
from .YMesh import build_graded_mesh, auto_height

#: top boundary conditions
TOP_BCS = ('neumann', 'dirichlet-modal')

#: the automatic solver choice uses sparse LU up to this many unknowns
DIRECT_SOLVE_LIMIT = 50_000

#: relative residual of the conjugate gradient solves
CG_RTOL = 1e-10

#: traces below this fraction of the boundary datum skip the agreement check
TRACE_FLOOR = 1e-8


class ExtensionProblem:
    '''The assembled finite-volume system of the extension equation on a
    given space and mesh. The system is assembled once and can be solved for
    several boundary data.

    :param space: the :class:`~.DirichletSpace`
    :param float s: the fractional order
    :param mesh: the :class:`~.YMesh`; its weight exponent must be
        :math:`1 - 2s`
    :param str top_bc: ``'neumann'`` or ``'dirichlet-modal'``
    :param decomp: the :class:`~.SpectralDecomposition` of `space`, required
        by the modal top condition
    :param str solver: ``'auto'``, ``'direct'`` or ``'cg'``
    '''

    def __init__(self, space, s, mesh, top_bc='neumann', decomp=None,
                 solver='auto'):
        self.s = check_s(s)
        if abs(mesh.a - (1.0 - 2.0 * self.s)) > 1e-12:
            raise BadMeshParams(f'mesh weight exponent {mesh.a} does not match '
                                f'a = 1 - 2s = {1.0 - 2.0 * self.s}')
        if top_bc not in TOP_BCS:
            raise BadTopBC(f'unknown top boundary condition {top_bc!r}, '
                           f'expected one of {TOP_BCS}')
        if top_bc == 'dirichlet-modal' and decomp is None:
            raise BadTopBC('the modal Dirichlet top condition needs a '
                           'spectral decomposition')
        if solver not in ('auto', 'direct', 'cg'):
            raise BadSolver(f'unknown solver {solver!r}')
        self.space = space
        self.mesh = mesh
        self.top_bc = top_bc
        self.decomp = decomp
        n_cells = mesh.n_cells
        self.last = n_cells if top_bc == 'neumann' else n_cells - 1
        if self.last < 1:
            raise BadMeshParams('the mesh has no interior unknowns')
        if solver == 'auto':
            solver = ('direct' if len(space) * n_cells <= DIRECT_SOLVE_LIMIT
                      else 'cg')
        self.solver = solver

        inner = slice(1, self.last + 1)
        stiff = mesh.stiffness()[inner, inner]
        masses = mesh.cell_masses[inner]
        self.matrix = (sparse.kron(sparse.diags(masses), space.laplacian)
                       + sparse.kron(stiff, sparse.diags(space.measure))
                       ).tocsc()
        self._lu = None

    def __repr__(self):
        return (f'ExtensionProblem(n={len(self.space)}, '
                f'N={self.mesh.n_cells}, s={self.s}, top_bc={self.top_bc!r}, '
                f'solver={self.solver!r})')

    @property
    def n_unknowns(self):
        '''Number of unknowns of the linear system.'''
        return self.matrix.shape[0]

    def top_values(self, f):
        '''The exact modal extension at the top node.'''
        decomp = self.decomp
        mult = poisson_multiplier(self.s, decomp.eigenvalues,
                                  self.mesh.height)
        coeffs = decomp.coefficients(f)
        if coeffs.ndim == 1:
            return decomp.synthesize(mult * coeffs)
        return decomp.synthesize(mult[:, np.newaxis] * coeffs)

    def _rhs(self, f, top):
        n_vertices = len(self.space)
        beta = self.mesh.face_coefficients
        measure = self.space.measure
        shape = (self.last * n_vertices,) + f.shape[1:]
        rhs = np.zeros(shape)
        weights = measure if f.ndim == 1 else measure[:, np.newaxis]
        rhs[:n_vertices] += beta[0] * weights * f
        if top is not None:
            rhs[-n_vertices:] += beta[-1] * weights * top
        return rhs

    def _solve_linear(self, rhs):
        if self.solver == 'direct':
            if self._lu is None:
                self._lu = splinalg.splu(self.matrix)
            return self._lu.solve(rhs)
        if rhs.ndim == 2:
            return np.column_stack([self._solve_linear(col)
                                    for col in rhs.T])
        diag = self.matrix.diagonal()
        precond = splinalg.LinearOperator(self.matrix.shape,
                                          matvec=lambda vec: vec / diag)
        if not np.any(rhs):
            return np.zeros_like(rhs)
        sol, info = splinalg.cg(self.matrix, rhs, rtol=CG_RTOL, atol=0.0,
                                M=precond, maxiter=20 * self.n_unknowns)
        if info != 0:
            raise CGNoConvergence(f'conjugate gradients stopped with info = '
                                  f'{info} on {self.n_unknowns} unknowns')
        return sol

    def solve_values(self, f):
        '''Solve for the boundary datum `f` (one column per datum if `f` is
        two-dimensional).

        :returns: the nodal values, shaped ``(n, N + 1)`` or
            ``(n, N + 1, k)``
        '''
        f = self.space.check_function(f, 'boundary datum')
        top = self.top_values(f) if self.top_bc == 'dirichlet-modal' else None
        sol = self._solve_linear(self._rhs(f, top))
        n_vertices = len(self.space)
        layers = sol.reshape((self.last, n_vertices) + f.shape[1:])
        values = np.empty((n_vertices, len(self.mesh)) + f.shape[1:])
        values[:, 0] = f
        values[:, 1:self.last + 1] = np.moveaxis(layers, 0, 1)
        if top is not None:
            values[:, -1] = top
        return values

    def solve(self, f):
        '''Solve for a single boundary datum.

        :rtype: ExtensionField
        '''
        return ExtensionField(self.space, self.mesh, self.solve_values(f),
                              self.s, PDE_SOLVE, top_bc=self.top_bc)


def _split_source(source):
    if hasattr(source, 'eigenvalues'):
        return source.space, source
    return source, None


def solve_extension_pde(source, f, s, mesh=None, top_bc='neumann',
                        solver='auto', n_cells=256, height=None, gamma=None,
                        coarse=True):
    '''Solve the extension equation for the boundary datum `f`.

    :param source: a :class:`~.DirichletSpace` or its
        :class:`~.SpectralDecomposition`
    :param f: the boundary datum
    :param float s: the fractional order
    :param mesh: the vertical mesh; by default a graded mesh with `n_cells`
        cells, grading `gamma` and top `height` (``12/sqrt(lambda_min+)`` if
        not given)
    :param str top_bc: ``'neumann'`` (natural) or ``'dirichlet-modal'``
    :param str solver: ``'auto'``, ``'direct'`` or ``'cg'``
    :param bool coarse: also solve on the coarsened mesh, for
        :func:`neumann_trace` extrapolation
    :rtype: ExtensionField
    :raises BadTopBC: for an unknown top condition
    :raises CGNoConvergence: if the iterative solver fails

    >>> from fraclab.Kernel.Dirichlet.Graphs import two_point_space
    >>> field = solve_extension_pde(two_point_space(), [1.0, 1.0], 0.5)
    >>> bool(np.allclose(field.values, 1.0))
    True
    '''
    space, decomp = _split_source(source)
    s = check_s(s)
    if mesh is None or top_bc == 'dirichlet-modal':
        if decomp is None:
            decomp = spectral_decompose(space)
    if mesh is None:
        if height is None:
            height = auto_height(decomp.lambda_min_positive)
        mesh = build_graded_mesh(height, n_cells, gamma, 1.0 - 2.0 * s)
    problem = ExtensionProblem(space, s, mesh, top_bc, decomp, solver)
    values = problem.solve_values(f)
    coarse_field = None
    if coarse and mesh.n_cells % 2 == 0 and mesh.n_cells >= 4:
        coarse_problem = ExtensionProblem(space, s, mesh.coarsened(), top_bc,
                                          decomp, solver)
        coarse_field = coarse_problem.solve(f)
    return ExtensionField(space, mesh, values, s, PDE_SOLVE,
                          coarse=coarse_field, top_bc=top_bc)


def apply_extension_operator(space, mesh, values):
    '''Apply the matrix of :math:`\\mathcal{E}_a` over all nodes (bottom and
    top included) to nodal values of shape ``(n, N + 1)``.'''
    values = np.asarray(values, dtype=float)
    lap = space.laplacian @ values * mesh.cell_masses[np.newaxis, :]
    vertical = (mesh.stiffness() @ values.T).T * space.measure[:, np.newaxis]
    return lap + vertical


def first_cell_flux(field):
    '''Estimate :math:`\\lim_{y \\to 0} y^a \\partial_y U` from the first
    cell: :math:`\\beta_{1/2}(U_1 - U_0) + m_0 L U_0`.'''
    values = field.values
    mesh = field.mesh
    return (mesh.face_coefficients[0] * (values[:, 1] - values[:, 0])
            + mesh.cell_masses[0] * field.space.apply_generator(values[:, 0]))


def extension_dtn_weighted(field):
    '''The weighted Dirichlet-to-Neumann map
    :math:`-\\lim_{y \\to 0} y^a \\partial_y U` of an extension field, without
    the constant :math:`C_s`.'''
    return -first_cell_flux(field)


def neumann_trace(field, s=None, extrapolate=True, tolerance=0.1):
    '''Recover :math:`(-L)^s f = -C_s \\lim_{y \\to 0} y^a \\partial_y U` from
    the weighted Neumann trace of an extension field.

    With `extrapolate`, the traces on the field's mesh and on its coarsened
    mesh are combined by Richardson extrapolation for a second-order error.

    :param field: an :class:`~.ExtensionField`
    :param float s: the fractional order (by default the field's)
    :param bool extrapolate: combine with the coarse field
    :param float tolerance: largest accepted relative disagreement between
        the fine and coarse traces
    :raises MeshTooCoarse: if the fine and coarse traces disagree too much
    :raises BadMeshParams: if extrapolation is requested but no coarse field
        is available
    '''
    s = check_s(field.s if s is None else s)
    const = dtn_constant(s)
    fine = const * extension_dtn_weighted(field)
    if not extrapolate:
        return fine
    coarse_field = field.coarse_field()
    if coarse_field is None:
        raise BadMeshParams('the field has no coarse counterpart; solve with '
                            'coarse=True or pass extrapolate=False')
    coarse = const * extension_dtn_weighted(coarse_field)
    scale = np.max(np.abs(fine))
    # traces at round-off level (constant data) carry no information
    if scale > TRACE_FLOOR * max(1.0, np.max(np.abs(field.boundary))):
        disagreement = np.max(np.abs(fine - coarse)) / scale
        if disagreement > tolerance:
            raise MeshTooCoarse(f'fine and coarse traces differ by '
                                f'{disagreement:.3e} (relative), above '
                                f'{tolerance}')
    return fine + (fine - coarse) / 3.0


def weak_residual(field, test_functions='hats'):
    '''Evaluate the weak form :math:`\\mathcal{E}_a(U, h)` of the extension
    equation against test functions.

    :param field: an :class:`~.ExtensionField`
    :param test_functions: ``'hats'`` for the nodal hat functions at every
        vertex and interior node, or an array of shape ``(n, N + 1)`` or
        ``(k, n, N + 1)``
    :returns: :math:`\\max_h |\\mathcal{E}_a(U, h)|`
    :raises TestFunctionSupportViolation: if a test function does not vanish
        at the bottom or top node
    '''
    residual = apply_extension_operator(field.space, field.mesh, field.values)
    if isinstance(test_functions, str):
        if test_functions != 'hats':
            raise TestFunctionSupportViolation(f'unknown test function family '
                                               f'{test_functions!r}')
        return float(np.max(np.abs(residual[:, 1:-1]), initial=0.0))
    tests = np.asarray(test_functions, dtype=float)
    if tests.ndim == 2:
        tests = tests[np.newaxis]
    if tests.shape[1:] != residual.shape:
        raise TestFunctionSupportViolation(f'test functions have shape '
                                           f'{tests.shape[1:]}, expected '
                                           f'{residual.shape}')
    if np.any(tests[:, :, 0]) or np.any(tests[:, :, -1]):
        raise TestFunctionSupportViolation('test functions must vanish at the '
                                           'bottom and top nodes')
    values = np.einsum('kxj,xj->k', tests, residual)
    return float(np.max(np.abs(values), initial=0.0))


def extension_energy(field):
    ''':math:`\\mathcal{E}_a(U, U)` of an extension field.'''
    residual = apply_extension_operator(field.space, field.mesh, field.values)
    return float(np.sum(field.values * residual))
