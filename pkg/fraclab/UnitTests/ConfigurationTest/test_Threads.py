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
'''Tests for the :mod:`~.Threads` module.'''
# pylint: disable=no-value-for-parameter

import pytest

from fraclab.Kernel.Configuration.Threads import (worker_count,
                                                  THREADS_VARIABLE,
                                                  DEFAULT_THREADS)
from fraclab.Kernel.Exceptions import ValidationError


def test_default_cap():
    '''Without the variable at most four workers are used.'''
    count = worker_count(environ={})
    assert 1 <= count <= DEFAULT_THREADS


def test_request_capped():
    '''Requests are capped by the environment.'''
    environ = {THREADS_VARIABLE: '2'}
    assert worker_count(1, environ=environ) == 1
    assert worker_count(5, environ=environ) == 2


@pytest.mark.parametrize('value', ['0', '-3', 'many', '1.5'])
def test_bad_variable(value):
    '''The variable must be a positive integer.'''
    with pytest.raises(ValidationError):
        worker_count(environ={THREADS_VARIABLE: value})


@pytest.mark.parametrize('requested', [0, -1, 2.5])
def test_bad_request(requested):
    '''Requests must be positive integers.'''
    with pytest.raises(ValidationError):
        worker_count(requested, environ={THREADS_VARIABLE: '4'})


def test_reads_process_environment(monkeypatch):
    '''The process environment is the default.'''
    monkeypatch.setenv(THREADS_VARIABLE, '3')
    assert worker_count() == 3
