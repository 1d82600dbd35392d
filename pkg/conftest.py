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
'''.. _pytest: https://docs.pytest.org/en/latest

`pytest`_ configuration file.
'''

import pytest


def pytest_addoption(parser):
    '''Add the ``--slow`` option to `pytest`.'''
    parser.addoption('--slow', action='store_true',
                     help='run the acceptance-scale tests marked as slow')


def pytest_collection_modifyitems(config, items):
    '''Handle CLI options to pytest.'''
    if config.getoption('--slow'):
        return
    skip_slow = pytest.mark.skip(reason='needs the --slow option to run')
    for item in items:
        if 'slow' in item.keywords:
            item.add_marker(skip_slow)
