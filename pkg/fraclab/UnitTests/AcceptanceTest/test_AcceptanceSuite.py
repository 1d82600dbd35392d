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
'''Tests for the :mod:`~.AcceptanceSuite` module.'''
# pylint: disable=no-value-for-parameter

import json
import warnings

import numpy as np
import pytest

from fraclab.Kernel.Acceptance.AcceptanceSuite import (
    Check, Criterion, AcceptanceSummary, load_fixtures, shipped_fixtures,
    semigroup_checks, stress_checks, write_summary, _criterion, FIXTURE_NAMES)
from fraclab.Kernel.Configuration.Tolerances import tolerances
from fraclab.Kernel.Exceptions import NumericalError
from fraclab.Kernel.FileHandlers.FileError import FixtureMissing
from fraclab.Kernel.FileHandlers.Parser.ParseFunction import parse_table


def test_check():
    '''Checks pass on finite values within the threshold.'''
    assert Check('a', 1.0, 1.0).passed
    assert not Check('a', 1.5, 1.0).passed
    assert Check('recorded', 12.0).passed
    assert not Check('recorded', float('inf')).passed
    assert Check('a', np.float64(0.5), 1).as_dict() == {
        'label': 'a', 'value': 0.5, 'threshold': 1.0, 'passed': True}


def test_criterion():
    '''A criterion passes when all its checks do.'''
    good = Criterion(1, 'good', [Check('a', 0.0, 1.0)], ['W: x', 'W: x'])
    bad = Criterion(2, 'bad', [Check('a', 0.0, 1.0), Check('b', 2.0, 1.0)])
    assert good.passed and not bad.passed
    assert good.warnings == ['W: x']
    summary = AcceptanceSummary([good, bad], 'strict', {'command': 'accept'})
    assert not summary.passed
    assert list(summary.rows()) == [(1, 'a', 0.0, 1.0, 'pass'),
                                    (2, 'a', 0.0, 1.0, 'pass'),
                                    (2, 'b', 2.0, 1.0, 'FAIL')]


def test_criterion_failure():
    '''Numerical failures and warnings are recorded, not raised.'''
    def failing():
        raise NumericalError('no convergence')

    def warning():
        warnings.warn('slow', UserWarning)
        return [Check('a', 0.0)]

    failed = _criterion(3, 'failing', failing)
    assert not failed.passed
    assert failed.checks[0].label == 'NumericalError: no convergence'
    warned = _criterion(4, 'warning', warning)
    assert warned.passed
    assert warned.warnings == ['UserWarning: slow']


def test_write_summary(tmp_path):
    '''The summary is written as JSON and as a table.'''
    criterion = Criterion(1, 'first', [Check('x', 0.5, 1.0), Check('y', 3.0)])
    write_summary(AcceptanceSummary([criterion], 'relaxed',
                                    {'command': 'accept'}), tmp_path / 'out')
    document = json.loads((tmp_path / 'out' / 'acceptance.json')
                          .read_text(encoding='utf-8'))
    assert document['passed']
    assert document['tier'] == 'relaxed'
    assert document['criteria'][0]['checks'][1]['threshold'] is None
    lines = (tmp_path / 'out' / 'acceptance.tsv').read_text(
        encoding='utf-8').splitlines()
    config, rows = parse_table(lines, 5, ('criterion', 'check', 'value',
                                             'threshold', 'status'))
    assert config == {'command': 'accept', 'tier': 'relaxed'}
    assert [fields for _, fields in rows] == [['1', 'x', '0.5', '1.0', 'pass'],
                                              ['1', 'y', '3.0', '', 'pass']]


def test_fixtures(tmp_path):
    '''The shipped fixtures load; a missing one is reported.'''
    spaces = load_fixtures(shipped_fixtures())
    assert sorted(spaces) == ['grid8', 'path32', 'ring10']
    assert len(spaces['grid8']) == 64
    for name in FIXTURE_NAMES[:2]:
        (tmp_path / name).write_text(
            (shipped_fixtures() / name).read_text(encoding='utf-8'),
            encoding='utf-8')
    with pytest.raises(FixtureMissing, match='grid8.json'):
        load_fixtures(tmp_path)


def test_semigroup_checks(cycle10_decomp, path32_decomp):
    '''The heat semigroup of the small fixtures passes its checks.'''
    checks = semigroup_checks({'cycle10': cycle10_decomp,
                               'path32': path32_decomp}, tolerances(),
                              n_functions=10)
    assert len(checks) == 10
    assert all(check.passed for check in checks), checks


def test_stress_checks(cycle10_decomp):
    '''The small-order run covers every route, the extension PDE included.'''
    with warnings.catch_warnings():
        warnings.simplefilter('ignore')
        checks = stress_checks({'ring10': cycle10_decomp}, tolerances())
    labels = [check.label for check in checks]
    assert labels == ['ring10 s=0.05 subord', 'ring10 s=0.05 kernel',
                      'ring10 s=0.05 extension',
                      'ring10 s=0.05 semi-analytic']
    extension = checks[2]
    assert extension.threshold == pytest.approx(1e-2)
    assert extension.passed
