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
'''Module containing the exceptions and warnings of the Krein string
routines.'''

from ..Exceptions import ValidationError, NumericalError


class BadString(ValidationError):
    '''Raised when a string coefficient is negative, not finite or badly
    sampled.'''


class RiccatiBlowup(NumericalError):
    '''Raised when the backward Riccati integration fails.'''


class TruncationTooShort(NumericalError):
    '''Raised when the truncated string is too short for the requested
    spectral parameter.'''


class WeightNotIntegrable(ValidationError):
    '''Raised when the reciprocal of a weight is not integrable at 0, or the
    weight is not positive.'''


class NotConstantString(ValidationError):
    '''Raised when a closed form valid only for constant strings is applied
    to another string.'''


class TruncationSensitivityWarning(UserWarning):
    '''Warning issued when the dependence of :math:`\\psi` on the truncation
    length comes close to the accepted threshold.'''
