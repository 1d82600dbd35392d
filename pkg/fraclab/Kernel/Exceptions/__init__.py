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
'''Base classes for the errors raised by :mod:`fraclab`.

Every error raised by the kernel derives from :class:`FraclabError`. The
command-line front end maps :class:`ValidationError` to exit code 2 and
:class:`NumericalError` to exit code 1.

>>> issubclass(ValidationError, ValueError)
True
>>> issubclass(NumericalError, FraclabError)
True
'''


class FraclabError(Exception):
    '''A class that models all the errors raised by :mod:`fraclab`.'''


class ValidationError(FraclabError, ValueError):
    '''A class that models invalid input: bad parameters, malformed data,
    violated preconditions.'''


class NumericalError(FraclabError, ArithmeticError):
    '''A class that models numerical failures: non-convergence, inconsistent
    extrapolation, singular systems.'''
