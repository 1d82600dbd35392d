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
'''Module containing the errors and warnings raised by the fractional
calculus routines.'''

from ..Exceptions import ValidationError, NumericalError


class SOutOfRange(ValidationError):
    '''Raised when the fractional order is not strictly between 0 and 1.'''


class BadQuadrature(ValidationError):
    '''Raised when the quadrature parameters are out of range.'''


class UnknownMethod(ValidationError):
    '''Raised when an evaluation route is not recognized.'''


class QuadratureNotConverged(NumericalError):
    '''Raised when the estimated neglected part of a time integral exceeds
    the tolerance.'''


class WindowTooSmall(ValidationError):
    '''Raised when a decay fit has too few distances to work with.'''


class NotALattice(ValidationError):
    '''Raised when a lattice-only computation gets a space without a lattice
    shape.'''


class DisconnectedSpace(UserWarning):
    '''Warning issued when a jump kernel is built on a disconnected space; the
    kernel vanishes between components.'''


class SlowConvergenceWarning(UserWarning):
    '''Warning issued for small fractional orders, where the time integrals
    have heavy tails.'''
