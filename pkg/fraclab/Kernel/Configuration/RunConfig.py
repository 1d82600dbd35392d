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
'''The validated configuration of a command-line run.

:class:`RunConfig` is built from the parsed arguments. Every numeric
parameter is range-checked here, before any computation starts, and
:meth:`RunConfig.echo` gives the configuration that output files embed.
'''

from dataclasses import dataclass, fields
from math import isfinite

from ..Exceptions import ValidationError
from ..Fractional.FracConfig import check_s
from ..Utils import split_pair

#: commands that draw random data and therefore need ``--seed``
SEEDED_COMMANDS = ('harnack run', 'bharnack run', 'geometry poincare')

#: fields left out of the configuration echo
NOT_ECHOED = ('out', 'verbosity')


class BadArguments(ValidationError):
    '''Raised when the command line is invalid.'''


def _positive(name, value, strict=True):
    if value is None:
        return
    if not (isfinite(value) and (value > 0 if strict else value >= 0)):
        relation = '>' if strict else '>='
        raise BadArguments(f'--{name} must be {relation} 0, got {value}')


def _integer(name, value, least):
    if value is None:
        return
    if int(value) != value or value < least:
        raise BadArguments(f'--{name} must be an integer >= {least}, got '
                           f'{value}')


def parse_height(text):
    '''The argument of ``--Y``: a positive number or ``auto`` (`None`).

    >>> parse_height('auto') is None
    True
    >>> parse_height('2.5')
    2.5
    '''
    if text == 'auto':
        return None
    try:
        return float(text)
    except ValueError:
        raise BadArguments(f'--Y must be a number or "auto", got '
                           f'{text!r}') from None


def parse_ball(text):
    '''The argument of ``--ball``: a ``center:radius`` pair.

    >>> parse_ball('3:2.5')
    ('3', 2.5)
    '''
    try:
        center, radius = split_pair(text, '--ball')
    except ValidationError as err:
        raise BadArguments(str(err)) from None
    try:
        value = float(radius)
    except ValueError:
        raise BadArguments(f'the radius of --ball {text!r} is not a '
                           'number') from None
    if not (isfinite(value) and value >= 0):
        raise BadArguments(f'the radius of --ball {text!r} must be '
                           'nonnegative')
    return center, value


@dataclass(frozen=True)
class RunConfig:
    '''The parameters of a run. Unused parameters are `None`.

    :ivar str command: the subcommand, such as ``'frac apply'``
    :ivar float s: the fractional order
    :ivar int n_cells: the number of mesh cells ``N``
    :ivar height: the truncation height ``Y``, `None` for automatic
    :ivar float dilation: the Poincaré dilation :math:`\\Lambda`
    :ivar float delta: the Harnack probe fraction :math:`\\delta`
    :ivar tuple balls: the ``(center, radius)`` pairs
    '''
    command: str
    space: str = None
    f: str = None
    field: str = None
    out: str = None
    method: str = None
    s: float = None
    n_cells: int = None
    height: float = None
    gamma: float = None
    top_bc: str = None
    string: str = None
    weight: str = None
    y_max: float = None
    lmin: float = None
    lmax: float = None
    points: int = None
    balls: tuple = ()
    delta: float = None
    trials: int = None
    seed: int = None
    workers: int = None
    geometry: str = None
    xi: str = None
    r: float = None
    refine: bool = None
    dilation: float = None
    fixtures: str = None
    tolerance_tier: str = None
    stress: bool = None
    verbosity: int = 0

    def __post_init__(self):
        if self.s is not None:
            object.__setattr__(self, 's', check_s(self.s))
        _integer('N', self.n_cells, 8)
        _positive('Y', self.height)
        if self.gamma is not None and not (isfinite(self.gamma)
                                           and self.gamma >= 1.0):
            raise BadArguments(f'--gamma must be >= 1, got {self.gamma}')
        _positive('ymax', self.y_max)
        _positive('lmin', self.lmin)
        _positive('lmax', self.lmax)
        if self.lmin is not None and self.lmax is not None \
                and self.lmax < self.lmin:
            raise BadArguments(f'--lmax ({self.lmax}) must not be smaller '
                               f'than --lmin ({self.lmin})')
        _integer('points', self.points, 1)
        if self.delta is not None and not 0.0 < self.delta < 1.0:
            raise BadArguments(f'--delta must satisfy 0 < delta < 1, got '
                               f'{self.delta}')
        _integer('trials', self.trials, 1)
        _integer('seed', self.seed, 0)
        _integer('workers', self.workers, 1)
        _positive('r', self.r)
        if self.dilation is not None and not (isfinite(self.dilation)
                                              and self.dilation > 1.0):
            raise BadArguments(f'--dilation must exceed 1, got '
                               f'{self.dilation}')
        if self.command in SEEDED_COMMANDS and self.seed is None:
            raise BadArguments(f'{self.command} draws random data: --seed is '
                               'required')

    @classmethod
    def from_namespace(cls, args):
        '''Build the configuration from an :class:`argparse.Namespace`.
        Attributes that the namespace lacks stay `None`.'''
        values = {}
        for item in fields(cls):
            if hasattr(args, item.name):
                values[item.name] = getattr(args, item.name)
        if 'balls' in values:
            values['balls'] = tuple(parse_ball(text)
                                    for text in values['balls'] or ())
        return cls(**values)

    @property
    def lam_grid_size(self):
        '''The number of spectral parameters of the ``krein`` tables: a
        single one when ``--lmin`` equals ``--lmax``.'''
        if self.lmin == self.lmax:
            return 1
        return self.points

    def echo(self):
        '''The configuration as a dictionary, without the unset fields, the
        output path and the verbosity.

        >>> RunConfig('frac apply', s=0.5, out='x.tsv').echo()
        {'command': 'frac apply', 's': 0.5}
        '''
        echo = {}
        for item in fields(self):
            value = getattr(self, item.name)
            if item.name in NOT_ECHOED or value is None or value == ():
                continue
            echo[item.name] = ([list(pair) for pair in value]
                               if item.name == 'balls' else value)
        return echo
