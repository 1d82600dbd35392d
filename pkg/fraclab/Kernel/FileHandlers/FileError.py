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
'''Errors raised while reading and writing fraclab files.'''

from ..Exceptions import ValidationError


class GraphFormatError(ValidationError):
    '''A graph file is malformed: invalid JSON, missing fields, duplicate
    vertex ids or an asymmetric explicit metric.'''


class FunctionFormatError(ValidationError):
    '''A function or field table is malformed.'''


class FixtureMissing(ValidationError):
    '''A fixture file of the acceptance suite cannot be found.'''
