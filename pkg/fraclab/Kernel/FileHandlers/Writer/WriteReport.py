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
'''Writing JSON reports.'''

import json

from .WriteTables import to_jsonable


def write_json(ofile, document):
    '''Write `document` as indented, key-sorted JSON.'''
    json.dump(to_jsonable(document), ofile, indent=2, sort_keys=True)
    ofile.write('\n')


def write_report(ofile, report, run_config):
    '''Write an experiment report, with the command line configuration under
    the ``run`` key.

    :param report: any object with an ``as_dict`` method, such as an
        :class:`~.ExperimentReport`
    :param dict run_config: the configuration echo of the command line
    '''
    document = report.as_dict()
    document['run'] = run_config
    write_json(ofile, document)
