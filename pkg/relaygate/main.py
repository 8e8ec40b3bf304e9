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

import argparse
import sys
import errno
import logging
import traceback
import time

from relaygate import config, commands
from relaygate.enums import ExitCode
from relaygate.errors import UsageError, FatalError, ConfigurationError, \
    InfeasibleError, InstabilityError, ConvergenceError, RelayGateException
from relaygate.utils import _, N_
from relaygate.utils import messages as m

description = N_('Admission control for relaying primary packets at a '
                 'cognitive sensor node: closed-form delays and power '
                 'budget, the dual optimizer and a slotted simulator')


class ArgumentParser(argparse.ArgumentParser):

    def error(self, message):
        self.print_usage(sys.stderr)
        m.error(_('%s: error: %s') % (self.prog, message))
        sys.exit(ExitCode.USAGE)


class Main(object):

    def __init__(self, args):
        self.create_parser()
        self.load_commands()
        self.parse_arguments(args)
        self.init_logging()
        self.load_config()
        self.run_command()

    def log_error(self, msg, print_usage=False, command=None,
                  code=ExitCode.USAGE):
        ''' Log an error and exit '''
        if command is not None:
            m.error("***** Error running '%s' command:" % command)
        m.error('%s' % msg)
        if print_usage:
            self.parser.print_usage()
        sys.exit(code)

    def init_logging(self):
        ''' Initialize logging '''
        if self.args.timestamps:
            m.START_TIME = time.monotonic()
        logging.getLogger().setLevel(logging.INFO)
        logging.getLogger().addHandler(logging.StreamHandler())

    def create_parser(self):
        ''' Creates the arguments parser '''
        self.parser = ArgumentParser(description=_(description))
        self.parser.add_argument('-t', '--timestamps', action='store_true',
                default=False,
                help=_('Print timestamps with every message printed'))
        self.parser.add_argument('-c', '--config', type=str, default=None,
                help=_('JSON configuration file'))
        self.parser.add_argument('-s', '--set', action='append',
                dest='overrides', default=[], metavar='KEY=VALUE',
                help=_('Override one configuration key, can be repeated'))
        self.parser.add_argument('--seed', type=int, default=None,
                help=_('Root seed of the simulator'))
        self.parser.add_argument('--grid-step', type=float, default=None,
                help=_('Spacing of the acceptance factor grid'))
        self.parser.add_argument('--mode', type=str, default=None,
                help=_('Buffer model: literal or geometric_matched'))

    def parse_arguments(self, args):
        ''' Parse the command line arguments '''
        # If no commands, make it show the help by default
        if len(args) == 0:
            args = ["-h"]
        self.args = self.parser.parse_args(args)
        if self.args.command is None:
            self.parser.print_usage()
            sys.exit(ExitCode.USAGE)

    def load_commands(self):
        subparsers = self.parser.add_subparsers(help=_('sub-command help'),
                                                dest='command')
        commands.load_commands(subparsers)

    def overrides(self):
        overrides = list(self.args.overrides)
        if self.args.seed is not None:
            overrides.append('seed=%d' % self.args.seed)
        if self.args.grid_step is not None:
            overrides.append('f_grid_step=%r' % self.args.grid_step)
        if self.args.mode is not None:
            overrides.append('buffer_mode=%s' % self.args.mode)
        return overrides

    def load_config(self):
        ''' Load the configuration '''
        try:
            self.config = config.Config()
            self.config.load(self.args.config, self.overrides())
        except ConfigurationError as exc:
            self.log_error(exc, False, code=ExitCode.CONFIG)

    def run_command(self):
        command = self.args.command
        try:
            res = commands.run(command, self.config, self.args)
        except UsageError as exc:
            self.log_error(exc, True, command)
        except ConfigurationError as exc:
            self.log_error(exc, False, command, ExitCode.CONFIG)
        except (InfeasibleError, InstabilityError) as exc:
            self.log_error(exc, False, command, ExitCode.INFEASIBLE)
        except ConvergenceError as exc:
            self.log_error(exc, False, command, ExitCode.NOT_CONVERGED)
        except FatalError as exc:
            traceback.print_exc()
            self.log_error(exc, True, command)
        except RelayGateException as exc:
            self.log_error(exc, False, command)
        except KeyboardInterrupt:
            self.log_error(_('Interrupted'))
        except IOError as e:
            if e.errno != errno.EPIPE:
                raise
            sys.exit(ExitCode.SUCCESS)

        if res:
            sys.exit(res)


def main():
    Main(sys.argv[1:])


if __name__ == "__main__":
    main()
