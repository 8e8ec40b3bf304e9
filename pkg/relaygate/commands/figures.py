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
from relaygate.figures import FigureSet, FIGURES
from relaygate.utils import _, N_, ArgparseArgument
from relaygate.utils import messages as m


class Figures(Command):
    doc = N_('Writes the plot-ready CSV tables of every figure')
    name = 'figures'

    def __init__(self):
        Command.__init__(self,
            [ArgparseArgument('--out', type=str, default='figures',
                              help=_('output directory')),
             ArgparseArgument('--only', type=str, default=None,
                              help=_('comma separated subset of %s') %
                              ', '.join(FIGURES)),
            ])

    def run(self, config, args):
        names = None
        if args.only:
            names = [n.strip() for n in args.only.split(',') if n.strip()]
        paths = FigureSet(config, args.out).run(names)
        for name in sorted(paths):
            m.action(_('%s written to %s') % (name, paths[name]))


register_command(Figures)
