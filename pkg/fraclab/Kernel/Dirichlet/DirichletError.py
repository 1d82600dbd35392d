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
'''Module containing the errors raised while building and decomposing
Dirichlet spaces.'''

from ..Exceptions import ValidationError, NumericalError


class NonSymmetricConductance(ValidationError):
    '''Raised when ``w(x, y) != w(y, x)``.'''


class InvalidConductance(ValidationError):
    '''Raised when a conductance is negative, not finite, or sits on a
    self-loop.'''


class NonPositiveMeasure(ValidationError):
    '''Raised when a vertex measure is not strictly positive and finite.'''


class MetricAxiomViolation(ValidationError):
    '''Raised when the vertex metric is not symmetric, not separating or
    violates the triangle inequality.'''


class DuplicateVertex(ValidationError):
    '''Raised when the same vertex label is given twice.'''


class UnknownVertex(ValidationError):
    '''Raised when a vertex label does not belong to the space.'''


class ShapeMismatch(ValidationError):
    '''Raised when a function does not have one value per vertex.'''


class NegativeTime(ValidationError):
    '''Raised when the heat semigroup is evaluated at a negative time.'''


class NonPositiveTime(ValidationError):
    '''Raised when the heat kernel is requested at a non-positive time.'''


class SpaceTooLarge(ValidationError):
    '''Raised when a dense decomposition is requested above the vertex cap.'''


class EigensolverNoConvergence(NumericalError):
    '''Raised when the eigensolver exceeds its iteration cap or returns a
    decomposition that fails the residual checks.'''


class UnknownEigensolver(ValidationError):
    '''Raised when an eigensolver name is not recognized.'''
