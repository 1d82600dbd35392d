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
'''Reports of the geometry and Harnack experiments.

Every empirical constant is the maximum of a finite candidate set, hence a
lower bound of the supremum it estimates; reports carry that label.
'''

import numpy as np

from ..Utils import format_cell
from .HarnackError import BadExperiment

#: the label attached to every reported constant
LABEL = 'empirical lower bound'

#: version of the report layout
FORMAT_VERSION = 1


class ExperimentReport:
    '''The outcome of an experiment.

    The reported :attr:`constant` is the maximum of the `value_key` column of
    the per-trial table.

    :param str kind: the experiment name
    :param dict config: the configuration echo
    :param trials: the per-trial rows, as dictionaries with the same keys
    :param str value_key: the column the constant is taken from
    :param dict extra: further summary values
    :raises BadExperiment: if there are no trials
    '''

    def __init__(self, kind, config, trials, value_key='ratio', extra=None):
        trials = [dict(row) for row in trials]
        if not trials:
            raise BadExperiment(f'the {kind} experiment has no trials')
        self.kind = kind
        self.config = dict(config)
        self.trials = trials
        self.value_key = value_key
        self.constant = float(max(row[value_key] for row in trials))
        self.extra = dict(extra or {})
        self.refinement = []

    def __repr__(self):
        return (f'ExperimentReport({self.kind!r}, constant={self.constant!r}, '
                f'n_trials={len(self.trials)})')

    @property
    def columns(self):
        '''The column names of the trial table.'''
        return list(self.trials[0])

    def values(self, key=None):
        '''The column `key` (by default the value column) as an array.'''
        key = self.value_key if key is None else key
        return np.array([row[key] for row in self.trials], dtype=float)

    def attach_refinement(self, reports, parameter='level'):
        '''Record the constants of this report and of the refined `reports`
        as a refinement trace.

        :returns: `self`
        '''
        levels = [self] + list(reports)
        self.refinement = [{parameter: level, 'constant': report.constant}
                           for level, report in enumerate(levels)]
        return self

    @property
    def stability_factor(self):
        '''The ratio of the largest to the smallest constant of the
        refinement trace (1 without a trace).'''
        if not self.refinement:
            return 1.0
        constants = [row['constant'] for row in self.refinement]
        return max(constants) / min(constants)

    def table_tsv(self):
        '''The trial table as TSV text, header included.'''
        lines = ['\t'.join(self.columns)]
        for row in self.trials:
            lines.append('\t'.join(format_cell(row[key])
                                    for key in self.columns))
        return '\n'.join(lines) + '\n'

    def as_dict(self):
        '''The JSON layout of the report.'''
        return {'format_version': FORMAT_VERSION,
                'kind': self.kind,
                'label': LABEL,
                'config': self.config,
                'constant': self.constant,
                'extra': self.extra,
                'refinement': self.refinement,
                'stability_factor': self.stability_factor,
                'trials_tsv': self.table_tsv()}
