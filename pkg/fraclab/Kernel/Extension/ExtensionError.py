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
'''Module containing the errors raised by the extension solver.'''

from ..Exceptions import ValidationError, NumericalError


class BadMeshParams(ValidationError):
    '''Raised when a vertical mesh cannot be built from the given
    parameters.'''


class BadTopBC(ValidationError):
    '''Raised when the boundary condition at the top of the mesh is not
    recognized or cannot be applied.'''


class BadSolver(ValidationError):
    '''Raised when the linear solver name is not recognized.'''


class CGNoConvergence(NumericalError):
    '''Raised when conjugate gradients do not reach the requested
    residual.'''


class MeshTooCoarse(NumericalError):
    '''Raised when the fine and coarse Neumann traces disagree by more than
    the extrapolation tolerance.'''


class TestFunctionSupportViolation(ValidationError):
    '''Raised when a test function does not vanish at the bottom or top
    node.'''
    __test__ = False
