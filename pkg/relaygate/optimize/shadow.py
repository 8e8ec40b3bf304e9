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

import itertools

from relaygate.analytics.point import operating_point
from relaygate.errors import InfeasibleError
from relaygate.optimize.solver import MultiplierState, inner_minimize_f, \
    kkt_residuals, lagrangian_value
from relaygate.utils.table import INFEASIBLE


SHADOW_HEADERS = ['nu1', 'nu2', 'xi', 'f', 'kkt_nu1', 'kkt_nu2', 'kkt_xi',
                  'objective']


class ShadowPriceRow(object):

    def __init__(self, multipliers, f=None, kkt=None, objective=None):
        self.multipliers = multipliers
        self.f = f
        self.kkt = kkt
        self.objective = objective

    @property
    def feasible(self):
        return self.f is not None

    def row(self):
        m = self.multipliers
        if not self.feasible:
            return [m.nu1, m.nu2, m.xi] + [INFEASIBLE] * 5
        return [m.nu1, m.nu2, m.xi, self.f] + list(self.kkt) + \
            [self.objective]


def shadow_price_surface(params, gamma_th, multiplier_ranges, config=None):
    '''
    Evaluates the KKT residuals over a grid of multipliers.

    @param multiplier_ranges: sequences of values keyed by 'nu1', 'nu2' and
                              'xi'; a missing key means [0.0]
    @type multiplier_ranges: dict
    @return: one L{ShadowPriceRow} per multiplier tuple, nu1 varying
             slowest
    @rtype: list
    '''
    axes = [list(multiplier_ranges.get(name, [0.0]))
            for name in ['nu1', 'nu2', 'xi']]
    rows = []
    for nu1, nu2, xi in itertools.product(*axes):
        multipliers = MultiplierState(nu1, nu2, xi)
        try:
            f = inner_minimize_f(params, multipliers, gamma_th, config)
        except InfeasibleError:
            rows.append(ShadowPriceRow(multipliers))
            continue
        point = operating_point(params, f)
        rows.append(ShadowPriceRow(
            multipliers, f, kkt_residuals(point, multipliers, gamma_th),
            lagrangian_value(point, multipliers, gamma_th)))
    return rows
