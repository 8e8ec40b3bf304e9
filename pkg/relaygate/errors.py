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

from gettext import gettext as _


class RelayGateException(Exception):
    header = ''
    msg = ''

    def __init__(self, msg=''):
        self.msg = msg
        Exception.__init__(self, self.header + msg)

    def __reduce__(self):
        return (self.__class__, (self.msg,))


class ConfigurationError(RelayGateException):
    header = 'Configuration Error: '


class UsageError(RelayGateException):
    header = 'Usage Error: '


class FatalError(RelayGateException):
    header = 'Fatal Error: '


class ParameterError(RelayGateException):
    header = 'Parameter Error: '


class InstabilityError(RelayGateException):
    '''
    A queue of the relaying model has no steady state at the requested
    operating point. C{constraint} names the violated stability condition,
    for instance 'lambda_ps < mu_ps'.
    '''
    header = 'Instability Error: '
    constraint = ''

    def __init__(self, constraint, f=None):
        self.constraint = constraint
        self.f = f
        if f is None:
            msg = _("stability constraint '%s' violated") % constraint
        else:
            msg = _("stability constraint '%s' violated at f=%.6g") % \
                (constraint, f)
        RelayGateException.__init__(self, msg)

    def __reduce__(self):
        return (self.__class__, (self.constraint, self.f))


class InfeasibleError(RelayGateException):
    header = 'Infeasible Problem: '


class ConvergenceError(RelayGateException):
    header = 'Convergence Error: '

    def __init__(self, iterations):
        self.iterations = iterations
        RelayGateException.__init__(self,
            _("dual iterations did not converge after %d outer steps") %
            iterations)

    def __reduce__(self):
        return (self.__class__, (self.iterations,))
