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

from relaygate.analytics.buffers import relay_buffer_metrics
from relaygate.analytics.point import operating_point
from relaygate.analytics.queues import secondary_delay_derivative
from relaygate.commands import Command, register_command
from relaygate.enums import Link
from relaygate.utils import _, N_, ArgparseArgument
from relaygate.utils.table import write_csv


EVAL_HEADERS = ['quantity', 'value']


def evaluation_rows(config, f):
    '''
    Every closed-form quantity of the model at acceptance factor C{f}.

    @raises InstabilityError: when a queue is unstable at C{f}
    '''
    params = config.network_params()
    point = operating_point(params, f)
    point.rates.check_stable()
    rates = point.rates
    delays = point.delays
    budget = point.budget
    rows = [['f', f]]
    rows.extend(['p_out_%s' % l, rates.outages[l]] for l in Link.all())
    for name in ['mu_p', 'lambda_ps', 'mu_ps', 'mu_s', 'rho_p', 'rho_ps',
                 'rho_s']:
        rows.append([name, getattr(rates, name)])
    for name in ['d_p', 'd1', 'd2', 'd3', 'd_s']:
        rows.append([name, getattr(delays, name)])
    rows.append(['d_s_slope', secondary_delay_derivative(
        params, f, config.derivative_mode)])
    for name in ['gamma', 'e_psp', 'e_ps', 'eps_sp', 'eps_s']:
        rows.append([name, getattr(budget, name)])
    buffers = relay_buffer_metrics(params, f, config.overflow_k,
                                   config.buffer_mode)
    rows.extend([['buffer_k', buffers.k], ['p_n', buffers.p_n],
                 ['p_ov', buffers.p_ov], ['p_b', buffers.p_b]])
    return rows


class Eval(Command):
    doc = N_('Evaluates the rates, delays and power budget at one '
             'acceptance factor')
    name = 'eval'

    def __init__(self):
        Command.__init__(self,
            [ArgparseArgument('--f', type=float, default=None,
                              help=_('acceptance factor (config key f by '
                                     'default)')),
             ArgparseArgument('--out', type=str, default='-',
                              help=_('CSV destination, - for stdout')),
            ])

    def run(self, config, args):
        f = config.f if args.f is None else args.f
        rows = evaluation_rows(config, f)
        write_csv(args.out, EVAL_HEADERS, rows,
                  [_('derivative mode %s, buffer mode %s') %
                   (config.derivative_mode, config.buffer_mode)])


register_command(Eval)
