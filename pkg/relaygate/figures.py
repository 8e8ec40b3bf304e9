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

'''
Plot-ready CSV tables for the delay/power tradeoff, the optimal acceptance
factor sweeps, the shadow prices and the relay buffer overflow.
docs/figures.md describes every column.
'''

import os
from functools import partial

import numpy as np

from relaygate.analytics.buffers import relay_buffer_metrics
from relaygate.analytics.point import operating_point
from relaygate.errors import InfeasibleError, InstabilityError, \
    ParameterError, UsageError
from relaygate.optimize.shadow import shadow_price_surface, SHADOW_HEADERS
from relaygate.optimize.solver import solve
from relaygate.utils import _, run_in_processes
from relaygate.utils import messages as m
from relaygate.utils.table import write_csv, INFEASIBLE


SOLVE_HEADERS = ['f_star', 'd_s_star', 'gamma_star', 'converged']

HEADERS = {
    'fig2': ['f', 'd_s', 'gamma'],
    'fig4a': ['lambda_p'] + SOLVE_HEADERS,
    'fig4b': ['lambda_s'] + SOLVE_HEADERS,
    'fig4c': ['gamma_th'] + SOLVE_HEADERS,
    'fig5a': ['lambda_p'] + SHADOW_HEADERS,
    'fig5b': ['lambda_s'] + SHADOW_HEADERS,
    'fig5c': ['gamma_th'] + SHADOW_HEADERS,
    'fig6': ['sweep', 'x', 'f_star', 'rho', 'p_ov', 'p_b'],
}
FIGURES = ['fig2', 'fig4a', 'fig4b', 'fig4c', 'fig5a', 'fig5b', 'fig5c',
           'fig6']


def _span(start, stop, step):
    n = int(round((stop - start) / step))
    return [round(x, 10) for x in np.linspace(start, stop, n + 1)]


def solve_cell(config, params, gamma_th):
    ''' Solves one sweep point, None when it has no feasible optimum '''
    try:
        return solve(params, config.solver_config(gamma_th))
    except (InfeasibleError, InstabilityError, ParameterError):
        return None


class FigureSet(object):
    '''
    Builds the figure tables from a loaded L{relaygate.config.Config}.
    The sweep grids are attributes so that callers can shrink them.
    '''

    f_step = 0.01
    lambda_p_sweep = _span(0.05, 0.65, 0.05)
    lambda_s_sweep = _span(0.05, 0.5, 0.05)
    gamma_th_sweep = _span(0.05, 1.0, 0.05)
    shadow_ranges = {'nu1': [0.0, 1.0], 'nu2': _span(0.0, 10.0, 1.0),
                     'xi': [0.0, 5.0, 10.0]}
    shadow_lambda_p = [0.1, 0.3, 0.5]
    shadow_lambda_s = [0.1, 0.2, 0.3]
    shadow_gamma_th = [0.2, 0.4, 0.6]

    # fixed settings of the sweeps
    sweep_lambda_s = 0.1
    sweep_lambda_p = 0.3
    light_lambda_p = 0.1
    budget_lambda_p = 0.5
    sweep_gamma_th = 0.2

    def __init__(self, config, out_dir, max_concurrent=None):
        self.config = config
        self.out_dir = out_dir
        self.max_concurrent = max_concurrent
        self.params = config.network_params()
        self._solved = {}

    def run(self, names=None):
        '''
        Writes the requested tables, all of them by default.

        @return: paths of the written files by figure name
        @rtype: dict
        '''
        if names is None:
            names = FIGURES
        unknown = [n for n in names if n not in FIGURES]
        if unknown:
            raise UsageError(_('unknown figures: %s (choose from %s)') %
                             (', '.join(unknown), ', '.join(FIGURES)))
        paths = {}
        for count, name in enumerate(names, 1):
            m.sweep_step(count, len(names), name)
            rows = getattr(self, name)()
            path = os.path.join(self.out_dir, '%s.csv' % name)
            write_csv(path, HEADERS[name], rows)
            paths[name] = path
        return paths

    def _map(self, funcs):
        return run_in_processes(funcs, self.max_concurrent)

    def fig2(self):
        rows = []
        for f in _span(0.0, 1.0, self.f_step):
            point = operating_point(self.params, f)
            if point.stable:
                rows.append([f, point.d_s, point.gamma])
            else:
                rows.append([f, INFEASIBLE, INFEASIBLE])
        return rows

    def _solve_sweep(self, name):
        if name in self._solved:
            return self._solved[name]
        if name == 'lambda_p':
            cells = [(x, self.params.with_rates(x, self.sweep_lambda_s),
                      self.sweep_gamma_th) for x in self.lambda_p_sweep]
        elif name == 'lambda_s':
            cells = [(x, self.params.with_rates(self.sweep_lambda_p, x),
                      self.sweep_gamma_th) for x in self.lambda_s_sweep]
        else:
            params = self.params.with_rates(self.budget_lambda_p,
                                            self.sweep_lambda_s)
            cells = [(x, params, x) for x in self.gamma_th_sweep]
        results = self._map([partial(solve_cell, self.config, params,
                                     gamma_th)
                             for x, params, gamma_th in cells])
        self._solved[name] = [(cell[0], cell[1], result)
                              for cell, result in zip(cells, results)]
        return self._solved[name]

    def _solve_rows(self, name):
        rows = []
        for x, params, result in self._solve_sweep(name):
            if result is None:
                rows.append([x] + [INFEASIBLE] * len(SOLVE_HEADERS))
            else:
                rows.append([x, result.f_star, result.d_s_star,
                             result.gamma_star, result.converged])
        return rows

    def fig4a(self):
        return self._solve_rows('lambda_p')

    def fig4b(self):
        return self._solve_rows('lambda_s')

    def fig4c(self):
        return self._solve_rows('gamma_th')

    def _shadow_rows(self, cells):
        surfaces = self._map([partial(shadow_price_surface, params, gamma_th,
                                      self.shadow_ranges)
                              for x, params, gamma_th in cells])
        rows = []
        for cell, surface in zip(cells, surfaces):
            rows.extend([cell[0]] + r.row() for r in surface)
        return rows

    def fig5a(self):
        return self._shadow_rows(
            [(x, self.params.with_rates(x, self.sweep_lambda_s),
              self.config.gamma_th) for x in self.shadow_lambda_p])

    def fig5b(self):
        return self._shadow_rows(
            [(x, self.params.with_rates(self.light_lambda_p, x),
              self.config.gamma_th) for x in self.shadow_lambda_s])

    def fig5c(self):
        params = self.params.with_rates(self.budget_lambda_p,
                                        self.sweep_lambda_s)
        return self._shadow_rows([(x, params, x)
                                  for x in self.shadow_gamma_th])

    def fig6(self):
        rows = []
        for name in ['lambda_p', 'lambda_s', 'gamma_th']:
            for x, params, result in self._solve_sweep(name):
                if result is None:
                    rows.append([name, x] + [INFEASIBLE] * 4)
                    continue
                metrics = relay_buffer_metrics(params, result.f_star,
                                               self.config.overflow_k,
                                               self.config.buffer_mode)
                rows.append([name, x, result.f_star, metrics.rho,
                             metrics.p_ov, metrics.p_b])
        return rows


def run_figures(config, out_dir, names=None):
    '''
    Writes the figure tables for C{config} into C{out_dir}.

    @return: paths of the written files by figure name
    @rtype: dict
    '''
    return FigureSet(config, out_dir).run(names)
