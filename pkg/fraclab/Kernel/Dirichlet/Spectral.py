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
r'''Spectral calculus of the generator of a finite Dirichlet space.

The generator :math:`L` is self-adjoint in :math:`L^2(\mu)`. It is
diagonalized through the symmetric matrix
:math:`S = D^{-1/2} G D^{-1/2}` (with :math:`D = \mathrm{diag}\,\mu` and
:math:`G` the graph Laplacian), whose eigenvectors :math:`v_i` give the
:math:`\mu`-orthonormal eigenfunctions :math:`\varphi_i = D^{-1/2} v_i` of
:math:`-L`.
'''

from math import sqrt

import numpy as np
from scipy import linalg

from .DirichletError import (EigensolverNoConvergence, NegativeTime,
                             UnknownEigensolver,
                             NonPositiveTime, SpaceTooLarge)


#: default vertex cap for dense decompositions
MAX_DENSE_VERTICES = 2000


class SpectralDecomposition:
    '''The :math:`\\mu`-orthonormal eigenpairs of :math:`-L`.

    :ivar space: the decomposed :class:`~.DirichletSpace`
    :ivar eigenvalues: nondecreasing eigenvalues, the first
        :attr:`n_components` of which are exactly zero
    :ivar eigenvectors: matrix whose columns are the eigenfunctions
    '''

    def __init__(self, space, eigenvalues, eigenvectors, method='lapack'):
        self.space = space
        self.eigenvalues = np.array(eigenvalues, dtype=float)
        self.eigenvalues.setflags(write=False)
        self.eigenvectors = np.array(eigenvectors, dtype=float)
        self.eigenvectors.setflags(write=False)
        self.method = method

    def __len__(self):
        return len(self.eigenvalues)

    def __repr__(self):
        return (f'SpectralDecomposition(n={len(self)}, '
                f'lambda_max={self.lambda_max!r}, method={self.method!r})')

    @property
    def n_components(self):
        '''Multiplicity of the zero eigenvalue.'''
        return int(np.count_nonzero(self.eigenvalues == 0.0))

    @property
    def lambda_max(self):
        '''The largest eigenvalue.'''
        return float(self.eigenvalues[-1])

    @property
    def lambda_min_positive(self):
        '''The smallest positive eigenvalue (the spectral gap), or `None` on
        a single vertex.'''
        positive = self.eigenvalues[self.eigenvalues > 0]
        return float(positive[0]) if len(positive) else None

    @property
    def metadata(self):
        '''A summary dictionary for reports. Finite spaces always have a
        spectral gap; it is recorded here.'''
        return {'n_vertices': len(self),
                'n_components': self.n_components,
                'lambda_max': self.lambda_max,
                'spectral_gap': self.lambda_min_positive,
                'has_spectral_gap': self.lambda_min_positive is not None,
                'eigensolver': self.method}

    def coefficients(self, f):
        ''':math:`\\langle f, \\varphi_i\\rangle_\\mu` for every `i` (one
        column per function if `f` is two-dimensional).'''
        f = self.space.check_function(f)
        weighted = (f * self.space.measure if f.ndim == 1
                    else f * self.space.measure[:, np.newaxis])
        return self.eigenvectors.T @ weighted

    def synthesize(self, coefficients):
        ''':math:`\\sum_i c_i \\varphi_i`.'''
        return self.eigenvectors @ coefficients


def jacobi_eigh(matrix, tol=1e-12, max_sweeps=50):
    '''Diagonalize a real symmetric matrix by cyclic Jacobi rotations.

    Each rotation annihilates one off-diagonal entry; a sweep visits every
    pair ``(p, q)`` once. Iteration stops when the off-diagonal Frobenius norm
    drops below ``tol`` times the norm of the matrix.

    :returns: ``(eigenvalues, eigenvectors)`` in ascending order
    :raises EigensolverNoConvergence: after `max_sweeps` sweeps

    >>> vals, vecs = jacobi_eigh(np.array([[2.0, 1.0], [1.0, 2.0]]))
    >>> bool(np.allclose(vals, [1.0, 3.0]))
    True
    '''
    work = np.array(matrix, dtype=float)
    n_rows = work.shape[0]
    vecs = np.eye(n_rows)
    scale = linalg.norm(work)
    if scale == 0.0:
        return np.zeros(n_rows), vecs
    for _ in range(max_sweeps):
        off = sqrt(max(linalg.norm(work)**2 - np.sum(np.diag(work)**2), 0.0))
        if off <= tol * scale:
            break
        for p in range(n_rows - 1):
            for q in range(p + 1, n_rows):
                apq = work[p, q]
                if abs(apq) <= 1e-300:
                    continue
                tau = (work[q, q] - work[p, p]) / (2.0 * apq)
                tan = (1.0 if tau >= 0 else -1.0) / (abs(tau)
                                                     + sqrt(1.0 + tau * tau))
                cos = 1.0 / sqrt(1.0 + tan * tan)
                sin = tan * cos
                col_p, col_q = work[:, p].copy(), work[:, q].copy()
                work[:, p] = cos * col_p - sin * col_q
                work[:, q] = sin * col_p + cos * col_q
                row_p, row_q = work[p, :].copy(), work[q, :].copy()
                work[p, :] = cos * row_p - sin * row_q
                work[q, :] = sin * row_p + cos * row_q
                vec_p, vec_q = vecs[:, p].copy(), vecs[:, q].copy()
                vecs[:, p] = cos * vec_p - sin * vec_q
                vecs[:, q] = sin * vec_p + cos * vec_q
    else:
        raise EigensolverNoConvergence(f'Jacobi rotations did not converge '
                                       f'in {max_sweeps} sweeps')
    vals = np.diag(work).copy()
    order = np.argsort(vals, kind='stable')
    return vals[order], vecs[:, order]


def _fix_signs(vecs):
    '''Make the first significant entry of each column positive.'''
    for i in range(vecs.shape[1]):
        col = vecs[:, i]
        threshold = 1e-12 * np.max(np.abs(col))
        first = int(np.argmax(np.abs(col) > threshold))
        if col[first] < 0:
            vecs[:, i] = -col
    return vecs


def spectral_decompose(space, method='lapack', max_vertices=MAX_DENSE_VERTICES,
                       check=True):
    '''Compute the :class:`SpectralDecomposition` of a Dirichlet space.

    The null space is replaced by the normalized indicators of the connected
    components, so that constants are reproduced exactly.

    :param space: a :class:`~.DirichletSpace`
    :param str method: ``'lapack'`` (:func:`scipy.linalg.eigh`) or
        ``'jacobi'`` (:func:`jacobi_eigh`)
    :param int max_vertices: cap on the vertex count
    :param bool check: verify orthonormality and residuals
    :raises EigensolverNoConvergence: if the solver fails or the result does
        not pass the checks

    >>> from fraclab.Kernel.Dirichlet.Graphs import two_point_space
    >>> decomp = spectral_decompose(two_point_space())
    >>> bool(np.allclose(decomp.eigenvalues, [0.0, 2.0]))
    True
    >>> bool(np.allclose(np.abs(decomp.eigenvectors[:, 1]), np.sqrt(0.5)))
    True
    '''
    n_vertices = len(space)
    if n_vertices > max_vertices:
        raise SpaceTooLarge(f'{n_vertices} vertices exceed the dense '
                            f'decomposition cap of {max_vertices}')
    inv_sqrt = 1.0 / np.sqrt(space.measure)
    sym = space.laplacian.toarray() * inv_sqrt[:, np.newaxis] \
        * inv_sqrt[np.newaxis, :]
    sym = 0.5 * (sym + sym.T)
    if method == 'lapack':
        try:
            vals, vecs = linalg.eigh(sym)
        except linalg.LinAlgError as err:
            raise EigensolverNoConvergence(str(err)) from None
    elif method == 'jacobi':
        vals, vecs = jacobi_eigh(sym)
    else:
        raise UnknownEigensolver(f'unknown eigensolver {method!r}, expected '
                                 "'lapack' or 'jacobi'")

    n_comp, labels = space.components
    scale = max(float(np.max(np.abs(vals))), 1.0)
    if np.any(np.abs(vals[:n_comp]) > 1e-10 * scale):
        raise EigensolverNoConvergence(
            f'expected {n_comp} zero eigenvalues, got {vals[:n_comp]}')
    if n_comp < n_vertices and vals[n_comp] <= 1e-10 * scale:
        raise EigensolverNoConvergence('more zero eigenvalues than connected '
                                       'components')
    vals = vals.copy()
    vals[:n_comp] = 0.0
    eigfuns = vecs * inv_sqrt[:, np.newaxis]
    sqrt_measure = np.sqrt(space.measure)
    for comp in range(n_comp):
        indicator = (labels == comp).astype(float)
        mass = float(np.dot(indicator, space.measure))
        eigfuns[:, comp] = indicator / np.sqrt(mass)
    if n_comp < n_vertices:
        # project the nonzero modes off the exact null space
        null = eigfuns[:, :n_comp]
        rest = eigfuns[:, n_comp:]
        rest -= null @ (null.T @ (rest * space.measure[:, np.newaxis]))
        norms = np.sqrt(np.sum(rest**2 * space.measure[:, np.newaxis],
                               axis=0))
        eigfuns[:, n_comp:] = rest / norms
    eigfuns = _fix_signs(eigfuns)
    decomp = SpectralDecomposition(space, vals, eigfuns, method=method)
    if check:
        _check_decomposition(decomp, sqrt_measure)
    return decomp


def _check_decomposition(decomp, sqrt_measure):
    space = decomp.space
    phi = decomp.eigenvectors
    gram = (phi * sqrt_measure[:, np.newaxis]).T \
        @ (phi * sqrt_measure[:, np.newaxis])
    defect = np.max(np.abs(gram - np.eye(len(decomp))))
    if defect > 1e-10:
        raise EigensolverNoConvergence(f'eigenvectors are not '
                                       f'mu-orthonormal (defect {defect:.3e})')
    residual = space.laplacian @ phi / space.measure[:, np.newaxis] \
        - phi * decomp.eigenvalues[np.newaxis, :]
    scale = max(decomp.lambda_max, 1.0) * np.max(np.abs(phi))
    rel = np.max(np.abs(residual)) / scale
    if rel > 1e-8:
        raise EigensolverNoConvergence(f'eigenpair residual {rel:.3e} above '
                                       '1e-8')


def spectral_apply(decomp, func, f):
    '''Apply a spectral multiplier:
    :math:`\\varphi(-L)f = \\sum_i \\varphi(\\lambda_i)
    \\langle f,\\varphi_i\\rangle_\\mu \\varphi_i`.

    :param func: a callable mapping the eigenvalue array to the multiplier
        array
    '''
    coeffs = decomp.coefficients(f)
    mult = np.asarray(func(decomp.eigenvalues), dtype=float)
    if coeffs.ndim == 1:
        return decomp.synthesize(mult * coeffs)
    return decomp.synthesize(mult[:, np.newaxis] * coeffs)


def heat_apply(decomp, t, f):
    '''The heat semigroup :math:`P_t f = e^{tL} f`.

    :raises NegativeTime: if ``t < 0``

    >>> from fraclab.Kernel.Dirichlet.Graphs import two_point_space
    >>> decomp = spectral_decompose(two_point_space())
    >>> bool(np.allclose(heat_apply(decomp, 3.0, [1.0, 1.0]), [1.0, 1.0]))
    True
    '''
    if t < 0:
        raise NegativeTime(f'heat semigroup needs t >= 0, got t = {t}')
    if t == 0:
        return np.array(decomp.space.check_function(f), dtype=float)
    return spectral_apply(decomp, lambda lam: np.exp(-t * lam), f)


def heat_kernel(decomp, t):
    '''The heat kernel :math:`p_t(x, y) = \\sum_i e^{-t\\lambda_i}
    \\varphi_i(x)\\varphi_i(y)`, a density with respect to :math:`\\mu`.

    :raises NonPositiveTime: if ``t <= 0``
    '''
    if t <= 0:
        raise NonPositiveTime(f'heat kernel needs t > 0, got t = {t}')
    phi = decomp.eigenvectors
    kernel = (phi * np.exp(-t * decomp.eigenvalues)[np.newaxis, :]) @ phi.T
    return 0.5 * (kernel + kernel.T)
