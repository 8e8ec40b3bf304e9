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
from relaygate.sim import simulator
from relaygate.utils import _, N_, ArgparseArgument
from relaygate.utils import messages as m
from relaygate.utils.table import write_csv


class Simulate(Command):
    doc = N_('Runs the slotted protocol simulator at one acceptance factor')
    name = 'simulate'

    def __init__(self):
        Command.__init__(self,
            [ArgparseArgument('--f', type=float, default=None,
                              help=_('acceptance factor (config key f by '
                                     'default)')),
             ArgparseArgument('--out', type=str, default='-',
                              help=_('summary CSV destination, - for '
                                     'stdout')),
             ArgparseArgument('--replications-out', type=str, default=None,
                              help=_('write one row per replication to '
                                     'this CSV file')),
             ArgparseArgument('--trace', type=str, default=None,
                              help=_('write the slot-level event log to '
                                     'this CSV file')),
             ArgparseArgument('--compare', type=str, default=None,
                              help=_('write the analytic versus empirical '
                                     'comparison to this CSV file')),
            ])

    def _comments(self, sim_config):
        return [_('rng %s seed %d') % (simulator.RNG_NAME, sim_config.seed),
                _('f %g slots %d warmup %d replications %d') %
                (sim_config.f, sim_config.slots, sim_config.warmup,
                 sim_config.replications)]

    def run(self, config, args):
        sim_config = config.sim_config(args.f, trace=args.trace is not None)
        comments = self._comments(sim_config)
        if args.compare is not None:
            report = simulator.compare_with_analytics(sim_config,
                                                      config.buffer_mode)
            stats = report.stats
            write_csv(args.compare, simulator.COMPARISON_HEADERS,
                      [r.row() for r in report.rows], comments)
        else:
            stats = simulator.run(sim_config)
        write_csv(args.out, simulator.SUMMARY_HEADERS, stats.summary_rows(),
                  comments)
        if args.replications_out is not None:
            write_csv(args.replications_out, simulator.REPLICATION_HEADERS,
                      stats.replication_rows(), comments)
        if args.trace is not None:
            write_csv(args.trace, simulator.TRACE_HEADERS, stats.trace_rows(),
                      comments)
        if not stats.balanced:
            m.warning(_('packet accounting does not balance'))


register_command(Simulate)
