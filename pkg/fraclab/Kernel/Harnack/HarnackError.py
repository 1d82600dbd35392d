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
'''Module containing the exceptions and warnings of the Harnack
laboratory.'''

from ..Exceptions import ValidationError, NumericalError


class EmptyBall(ValidationError):
    '''Raised for an empty ball family, a nonpositive radius or an empty
    ball.'''


class DilationExceedsSpace(ValidationError):
    '''Raised when a dilated ball reaches the truncation layer of a product
    space.'''


class SupportViolation(ValidationError):
    '''Raised when a test function is not supported where the checked
    equation holds.'''


class BadRegion(ValidationError):
    '''Raised when a region of a nonlocal Dirichlet problem is empty, covers
    the whole space or names unknown vertices.'''


class BadExperiment(ValidationError):
    '''Raised when an experiment parameter is out of range.'''


class SingularSystem(NumericalError):
    '''Raised when the nonlocal Dirichlet system cannot be factorized.'''


class InfeasibleCompetitor(NumericalError):
    '''Raised when a rescaled competitor of the intrinsic metric still has an
    energy density above one.'''


class DegenerateProbe(NumericalError):
    '''Raised when a solution vanishes on the probe ball of a boundary
    Harnack experiment.'''


class DilationSaturationWarning(UserWarning):
    '''Warning issued when a dilated ball covers the whole space, so that
    larger dilations do not change the estimate.'''
