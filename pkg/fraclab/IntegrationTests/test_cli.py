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
'''Integration tests for the command line.'''
# pylint: disable=no-value-for-parameter

import json

import numpy as np
import pytest

from fraclab.main import main
from fraclab.Kernel.Acceptance.AcceptanceSuite import shipped_fixtures
from fraclab.Kernel.Dirichlet.Spectral import spectral_decompose
from fraclab.Kernel.FileHandlers.Parser.ParseGraph import load_space
from fraclab.Kernel.FileHandlers.Parser.ParseFunction import (load_function,
                                                              parse_table)
from fraclab.Kernel.FileHandlers.Writer.WriteTables import write_function
from fraclab.Kernel.Fractional.FractionalPowers import frac_spectral
from fraclab.Kernel.Fractional.Routes import relative_error
from ..conftest import foreach_data

RING = str(shipped_fixtures() / 'ring10.json')


def run(argv, capsys):
    '''Run the command line and return the status and the captured
    streams.'''
    status = main([str(arg) for arg in argv])
    captured = capsys.readouterr()
    return status, captured.out, captured.err


@pytest.fixture
def ring_datum(tmp_path):
    '''A random function on the shipped ring, written to a table.'''
    space = load_space(RING)
    values = np.random.default_rng(11).standard_normal(len(space))
    path = tmp_path / 'f.tsv'
    with path.open('w', encoding='utf-8') as ofile:
        write_function(ofile, space, values, {})
    return path, space, values


def read_report(path):
    '''Decode a JSON output.'''
    return json.loads(path.read_text(encoding='utf-8'))


def test_space(datadir, capsys):
    '''The summary of a small graph is printed on the standard output.'''
    status, out, _ = run(['space', '--space', datadir / 'triangle.json'],
                         capsys)
    assert status == 0
    summary = json.loads(out)
    assert summary['n_vertices'] == 3
    assert summary['n_edges'] == 3
    assert summary['n_components'] == 1
    assert summary['total_measure'] == 4.0
    assert summary['run']['command'] == 'space'


@foreach_data(graph=lambda path: path.name.startswith('bad_'))
def test_bad_graph(graph, tmp_path, capsys):
    '''Invalid graph files are rejected with status 2 and one line on
    standard error.'''
    status, out, err = run(['space', '--space', graph, '--out',
                            tmp_path / 'summary.json'], capsys)
    assert status == 2
    assert out == ''
    assert err.startswith('fraclab: ')
    assert err.count('\n') == 1


def test_missing_graph(tmp_path, capsys):
    '''A missing file is an input error.'''
    status, _, err = run(['space', '--space', tmp_path / 'none.json'],
                         capsys)
    assert status == 2
    assert 'GraphFormatError' in err


def test_binary_graph(tmp_path, capsys):
    '''A file that is not text is an input error.'''
    path = tmp_path / 'graph.json'
    path.write_bytes(b'\xff\xfe\x00\x81')
    status, _, err = run(['space', '--space', path], capsys)
    assert status == 2
    assert 'UTF-8' in err


@pytest.mark.parametrize('argv, flag', [
    (['frac', 'apply', '--space', RING, '--f', 'f.tsv'], '--s'),
    (['frac', 'apply', '--space', RING, '--f', 'f.tsv', '--s', '0.5',
      '--method', 'fourier'], '--method'),
    (['frac', 'apply', '--space', RING, '--f', 'f.tsv', '--s', 'half'],
     '--s'),
    (['krein', 'psi', '--string', 'constant', '--lmin', '2', '--lmax', '1'],
     '--lmax'),
    (['harnack', 'run', '--space', RING, '--s', '0.5', '--ball', '0:3'],
     '--seed'),
    (['geometry', 'poincare', '--space', RING, '--ball', '0:2'], '--seed'),
    (['extend', 'solve', '--space', RING, '--f', 'f.tsv', '--s', '0.5',
      '--N', '4'], '--N'),
    (['frac', 'applied'], 'applied'),
])
def test_bad_arguments(argv, flag, capsys):
    '''Missing and out-of-range flags exit with status 2 and name the
    flag.'''
    status, _, err = run(argv, capsys)
    assert status == 2
    assert flag in err


def test_order_out_of_range(ring_datum, capsys):
    '''The fractional order is checked before any computation.'''
    path, _, _ = ring_datum
    status, _, err = run(['frac', 'apply', '--space', RING, '--f', path,
                          '--s', '1.5'], capsys)
    assert status == 2
    assert 'SOutOfRange' in err


def test_unwritable_output(ring_datum, tmp_path, capsys):
    '''An output path in a missing directory is an input error.'''
    path, _, _ = ring_datum
    status, _, err = run(['frac', 'apply', '--space', RING, '--f', path,
                          '--s', '0.5', '--out',
                          tmp_path / 'missing' / 'out.tsv'], capsys)
    assert status == 2
    assert 'cannot write' in err


@pytest.mark.parametrize('method', ['spectral', 'subord', 'kernel'])
def test_frac_apply(method, ring_datum, tmp_path, capsys):
    '''The routes written to a file agree with the spectral power.'''
    path, space, values = ring_datum
    out = tmp_path / 'out.tsv'
    status, _, _ = run(['frac', 'apply', '--space', RING, '--f', path,
                        '--s', '0.3', '--method', method, '--out', out],
                       capsys)
    assert status == 0
    exact = frac_spectral(spectral_decompose(space), 0.3, values)
    assert relative_error(load_function(out, space), exact) <= 1e-5
    config, _ = parse_table(out.read_text(encoding='utf-8').splitlines(), 2,
                            ('vertex_id', 'value'))
    assert config['method'] == method
    assert config['s'] == 0.3


def test_frac_compare(ring_datum, capsys):
    '''The four routes agree pairwise on the ring.'''
    path, _, _ = ring_datum
    status, out, _ = run(['frac', 'compare', '--space', RING, '--f', path,
                          '--s', '0.5'], capsys)
    assert status == 0
    lines = out.splitlines()
    columns = lines[2].split('\t')
    assert len(columns) == 6
    assert 'spectral-extension' in columns
    errors = [float(value) for value in lines[3].split('\t')]
    assert max(errors) <= 1e-3


def test_unknown_vertex_in_function(tmp_path, capsys):
    '''Function tables must name vertices of the graph.'''
    path = tmp_path / 'f.tsv'
    path.write_text('vertex_id\tvalue\n' + ''.join(
        f'{k}\t1.0\n' for k in range(9)) + 'ten\t1.0\n', encoding='utf-8')
    status, _, err = run(['frac', 'apply', '--space', RING, '--f', path,
                          '--s', '0.5'], capsys)
    assert status == 2
    assert 'unknown vertex' in err


@pytest.mark.parametrize('method, tolerance', [('semi-analytic', 1e-2),
                                               ('pde', 5e-2)])
def test_extend_round_trip(method, tolerance, ring_datum, tmp_path, capsys):
    '''A stored field gives back the fractional power through its trace.'''
    path, space, values = ring_datum
    field = tmp_path / 'field.tsv'
    trace = tmp_path / 'trace.tsv'
    status, _, _ = run(['extend', 'solve', '--space', RING, '--f', path,
                        '--s', '0.5', '--method', method, '--out', field],
                       capsys)
    assert status == 0
    config, rows = parse_table(field.read_text(encoding='utf-8')
                               .splitlines(), 3, ('vertex_id', 'y', 'U'))
    assert config['provenance'] == ('semi-analytic' if method
                                    == 'semi-analytic' else 'pde-solve')
    assert len(rows) == 10 * 257
    status, _, _ = run(['extend', 'dtn', '--space', RING, '--field', field,
                        '--out', trace], capsys)
    assert status == 0
    exact = frac_spectral(spectral_decompose(space), 0.5, values)
    assert relative_error(load_function(trace, space), exact) <= tolerance


def test_dtn_wrong_space(ring_datum, datadir, tmp_path, capsys):
    '''A field must cover the vertices of the graph it is read with.'''
    path, _, _ = ring_datum
    field = tmp_path / 'field.tsv'
    run(['extend', 'solve', '--space', RING, '--f', path, '--s', '0.5',
         '--N', '16', '--out', field], capsys)
    status, _, err = run(['extend', 'dtn', '--space',
                          datadir / 'triangle.json', '--field', field],
                         capsys)
    assert status == 2
    assert 'unknown vertex' in err or 'cover' in err


def test_krein_psi(capsys):
    '''The unit string has spectral function sqrt(lambda).'''
    status, out, _ = run(['krein', 'psi', '--string', 'constant', '--lmin',
                          '1', '--lmax', '1'], capsys)
    assert status == 0
    lines = out.splitlines()
    assert lines[2] == 'lambda\tpsi'
    assert len(lines) == 4
    lam, psi = (float(value) for value in lines[3].split('\t'))
    assert lam == 1.0
    assert psi == pytest.approx(1.0, abs=1e-7)


def test_krein_bad_string(capsys):
    '''String descriptions are validated.'''
    status, _, err = run(['krein', 'psi', '--string', '{"kind": "rope"}'],
                         capsys)
    assert status == 2
    assert 'BadString' in err


def test_harnack_run(tmp_path, capsys):
    '''The interior Harnack report records the seed and a constant of at
    least 1.'''
    out = tmp_path / 'harnack.json'
    status, _, _ = run(['harnack', 'run', '--space', RING, '--s', '0.5',
                        '--ball', '0:3', '--trials', '4', '--seed', '1',
                        '--out', out], capsys)
    assert status == 0
    report = read_report(out)
    assert report['kind'] == 'harnack'
    assert report['label'] == 'empirical lower bound'
    assert report['constant'] >= 1.0
    assert report['run']['seed'] == 1
    assert report['run']['balls'] == [['0', 3.0]]


def test_harnack_reproducible(tmp_path, capsys):
    '''The same seed gives identical reports.'''
    outputs = []
    for name in ('first.json', 'second.json'):
        out = tmp_path / name
        run(['harnack', 'run', '--space', RING, '--s', '0.4', '--ball',
             '0:3', '--trials', '3', '--seed', '5', '--out', out], capsys)
        outputs.append(out.read_bytes())
    assert outputs[0] == outputs[1]


def test_bharnack_run(tmp_path, capsys):
    '''The boundary Harnack experiment runs on a shipped domain.'''
    out = tmp_path / 'bharnack.json'
    status, _, _ = run(['bharnack', 'run', '--geometry', 'grid24-square16',
                        '--s', '0.5', '--r', '3', '--trials', '3',
                        '--seed', '2', '--no-refine', '--out', out], capsys)
    assert status == 0
    report = read_report(out)
    assert report['constant'] >= 1.0
    assert report['stability_factor'] == 1.0
    assert report['run']['refine'] is False


def test_bharnack_bad_geometry(capsys):
    '''Only the shipped domain families exist.'''
    status, _, _ = run(['bharnack', 'run', '--geometry', 'disk12', '--s',
                        '0.5', '--r', '3', '--seed', '2'], capsys)
    assert status == 2


def test_doubling(tmp_path, capsys):
    '''Doubling constant of a ball of the ring.'''
    out = tmp_path / 'doubling.json'
    status, _, _ = run(['geometry', 'doubling', '--space', RING, '--ball',
                        '0:2', '--out', out], capsys)
    assert status == 0
    assert read_report(out)['constant'] == 1.8


def test_product_geometry(tmp_path, capsys):
    '''With an order the constants are computed on the product space.'''
    out = tmp_path / 'poincare.json'
    status, _, _ = run(['geometry', 'poincare', '--space', RING, '--ball',
                        '0:2', '--s', '0.5', '--N', '16', '--Y', '16',
                        '--gamma', '1', '--seed', '0', '--out', out], capsys)
    assert status == 0
    report = read_report(out)
    assert report['config']['n_vertices'] > 10
    assert report['constant'] > 0.0


def test_verbose(ring_datum, capsys):
    '''Verbose runs report their duration.'''
    path, _, _ = ring_datum
    status, out, _ = run(['-v', 'frac', 'apply', '--space', RING, '--f',
                          path, '--s', '0.5'], capsys)
    assert status == 0
    assert 'elapsed time' in out
