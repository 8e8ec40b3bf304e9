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

from relaygate.commands import Command, register_command
from relaygate.errors import ConvergenceError
from relaygate.optimize.solver import solve, brute_force_optimal_f
from relaygate.utils import _, N_, ArgparseArgument
from relaygate.utils import messages as m
from relaygate.utils.table import write_csv, open_output


RESULT_HEADERS = ['quantity', 'value']


def result_rows(result):
    mult = result.multipliers
    kkt_nu1, kkt_nu2, kkt_xi = result.kkt
    return [['f_star', result.f_star],
            ['d_s_star', result.d_s_star],
            ['gamma_star', result.gamma_star],
            ['nu1', mult.nu1],
            ['nu2', mult.nu2],
            ['xi', mult.xi],
            ['kkt_nu1', kkt_nu1],
            ['kkt_nu2', kkt_nu2],
            ['kkt_xi', kkt_xi],
            ['dual_bound', result.dual_bound],
            ['duality_gap', result.duality_gap],
            ['iterations', result.iterations],
            ['converged', result.converged]]


class Solve(Command):
    doc = N_('Finds the acceptance factor minimizing the secondary delay '
             'under the relay power budget')
    name = 'solve'

    def __init__(self):
        Command.__init__(self,
            [ArgparseArgument('--out', type=str, default='-',
                              help=_('CSV destination, - for stdout')),
             ArgparseArgument('--trace', type=str, default=None,
                              help=_('write the iteration trace to this '
                                     'CSV file')),
             ArgparseArgument('--check', action='store_true', default=False,
                              help=_('compare against an exhaustive scan '
                                     'of f')),
            ])

    def run(self, config, args):
        params = config.network_params()
        solver_config = config.solver_config()
        result = solve(params, solver_config)
        rows = result_rows(result)
        if args.check:
            oracle = brute_force_optimal_f(params, solver_config.gamma_th,
                                           solver_config.f_grid_step)
            rows.append(['f_oracle', oracle])
            rows.append(['f_gap', abs(result.f_star - oracle)])
        write_csv(args.out, RESULT_HEADERS, rows)
        if args.trace is not None:
            with open_output(args.trace) as f:
                result.write_trace(f)
            if args.out != '-':
                m.action(_('iteration trace written to %s') % args.trace)
        if not result.converged:
            raise ConvergenceError(solver_config.max_outer)


register_command(Solve)
