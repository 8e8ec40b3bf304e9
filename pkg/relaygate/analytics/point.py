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

from relaygate.analytics.channel import power_budget
from relaygate.analytics.queues import rate_set, delay_breakdown


class OperatingPoint(object):
    '''
    Rates, delays and power budget of the network at one acceptance factor.
    C{delays} and C{budget} are None when the point is unstable.
    '''

    def __init__(self, f, rates, delays=None, budget=None):
        self.f = f
        self.rates = rates
        self.delays = delays
        self.budget = budget

    @property
    def stable(self):
        return self.rates.stable

    @property
    def d_s(self):
        return self.delays.d_s

    @property
    def gamma(self):
        return self.budget.gamma

    def feasible(self, gamma_th):
        ''' Stable and within the relay power budget C{gamma_th} '''
        return self.stable and self.budget.gamma <= gamma_th

    def __repr__(self):
        if not self.stable:
            return 'OperatingPoint(f=%r, unstable=%r)' % \
                (self.f, self.rates.violated)
        return 'OperatingPoint(f=%r, d_s=%r, gamma=%r)' % \
            (self.f, self.d_s, self.gamma)


def operating_point(params, f):
    rates = rate_set(params, f)
    if not rates.stable:
        return OperatingPoint(f, rates)
    return OperatingPoint(f, rates, delay_breakdown(rates),
                          power_budget(params, f, rates.lambda_ps))
