# relaygate - admission control for relaying at cognitive sensor nodes
# Copyright (C) 2026 The relaygate authors
#
# This library is free software; you can redistribute it and/or
# modify it under the terms of the GNU Library General Public
# License as published by the Free Software Foundation; either
# version 2 of the License, or (at your option) any later version.
#
# This library is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the GNU
# Library General Public License for more details.
#
# You should have received a copy of the GNU Library General Public
# License along with this library; if not, write to the
# Free Software Foundation, Inc., 59 Temple Place - Suite 330,
# Boston, MA 02111-1307, USA.

from functools import partial

import numpy as np

from relaygate.analytics.point import operating_point
from relaygate.commands import Command, register_command
from relaygate.errors import InfeasibleError, InstabilityError, \
    ParameterError, UsageError
from relaygate.optimize.solver import solve
from relaygate.utils import _, N_, ArgparseArgument, run_in_processes
from relaygate.utils import messages as m
from relaygate.utils.table import write_csv, INFEASIBLE


F_HEADERS = ['f', 'd_s', 'gamma', 'mu_p', 'lambda_ps', 'mu_ps', 'mu_s']
SOLVE_HEADERS = ['f_star', 'd_s_star', 'gamma_star', 'converged']
AXES = ['f', 'lambda_p', 'lambda_s', 'gamma_th']


def sweep_values(start, stop, step):
    if step <= 0:
        raise UsageError(_('--step must be positive, got %g') % step)
    if stop < start:
        raise UsageError(_('--to must not be below --from'))
    n = int(round((stop - start) / step))
    return [round(x, 10) for x in np.linspace(start, start + n * step, n + 1)]


def f_row(params, f):
    point = operating_point(params, f)
    if not point.stable:
        return [f] + [INFEASIBLE] * (len(F_HEADERS) - 1)
    rates = point.rates
    return [f, point.d_s, point.gamma, rates.mu_p, rates.lambda_ps,
            rates.mu_ps, rates.mu_s]


def solve_row(config, axis, x):
    params = config.network_params()
    gamma_th = None
    try:
        if axis == 'lambda_p':
            params = params.with_rates(lambda_p=x)
        elif axis == 'lambda_s':
            params = params.with_rates(lambda_s=x)
        else:
            gamma_th = x
        result = solve(params, config.solver_config(gamma_th))
    except (InfeasibleError, InstabilityError, ParameterError):
        return [x] + [INFEASIBLE] * len(SOLVE_HEADERS)
    return [x, result.f_star, result.d_s_star, result.gamma_star,
            result.converged]


class Sweep(Command):
    doc = N_('Sweeps the acceptance factor, or solves along a traffic or '
             'budget axis')
    name = 'sweep'

    def __init__(self):
        Command.__init__(self,
            [ArgparseArgument('--over', choices=AXES, default='f',
                              help=_('swept quantity')),
             ArgparseArgument('--from', dest='start', type=float,
                              default=None, help=_('first value')),
             ArgparseArgument('--to', dest='stop', type=float, default=None,
                              help=_('last value')),
             ArgparseArgument('--step', type=float, default=None,
                              help=_('spacing of the values')),
             ArgparseArgument('--out', type=str, default='-',
                              help=_('CSV destination, - for stdout')),
            ])

    def _defaults(self, axis):
        if axis == 'f':
            return 0.0, 1.0, 0.01
        if axis == 'gamma_th':
            return 0.05, 1.0, 0.05
        return 0.05, 0.5, 0.05

    def run(self, config, args):
        start, stop, step = self._defaults(args.over)
        if args.start is not None:
            start = args.start
        if args.stop is not None:
            stop = args.stop
        if args.step is not None:
            step = args.step
        values = sweep_values(start, stop, step)
        if args.out != '-':
            m.action(_('sweeping %s over %d values') %
                     (args.over, len(values)))
        if args.over == 'f':
            params = config.network_params()
            rows = [f_row(params, f) for f in values]
            headers = F_HEADERS
        else:
            rows = run_in_processes([partial(solve_row, config, args.over, x)
                                     for x in values])
            headers = [args.over] + SOLVE_HEADERS
        write_csv(args.out, headers, rows)


register_command(Sweep)
