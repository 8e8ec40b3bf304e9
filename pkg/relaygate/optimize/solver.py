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
Hierarchical dual decomposition for the acceptance factor.

The problem is

    minimize D_s(f) over f in [0, 1]
    subject to lambda_ps < mu_ps, lambda_s < mu_s, Gamma(f) <= gamma_th

and it is solved by three nested projected-subgradient loops: xi (secondary
stability) inside nu1 (relay stability) inside nu2 (power budget). Each dual
step needs the minimizer of the Lagrangian in f, found by a coarse pre-scan
followed by golden-section refinement.
'''

import logging
import math

import numpy as np

from relaygate.analytics.point import operating_point
from relaygate.analytics.queues import rate_set
from relaygate.enums import StepRule, Nu2Update
from relaygate.errors import ParameterError, InfeasibleError
from relaygate.optimize.golden import golden_section
from relaygate.utils import _
from relaygate.utils import messages as m
from relaygate.utils.table import write_rows


TRACE_HEADERS = ['iter_outer', 'iter_mid', 'iter_inner', 'f', 'nu1', 'nu2',
                 'xi', 'objective', 'gamma', 'feasible']
BISECTIONS = 60


class MultiplierState(object):

    def __init__(self, nu1=0.0, nu2=0.0, xi=0.0):
        for name, value in [('nu1', nu1), ('nu2', nu2), ('xi', xi)]:
            if not value >= 0:
                raise ParameterError(_('multiplier %s must be >= 0, got %r') %
                                     (name, value))
        self.nu1 = float(nu1)
        self.nu2 = float(nu2)
        self.xi = float(xi)

    def replace(self, **kwargs):
        values = {'nu1': self.nu1, 'nu2': self.nu2, 'xi': self.xi}
        values.update(kwargs)
        return MultiplierState(**values)

    def __eq__(self, other):
        return isinstance(other, MultiplierState) and \
            (self.nu1, self.nu2, self.xi) == (other.nu1, other.nu2, other.xi)

    def __repr__(self):
        return 'MultiplierState(nu1=%r, nu2=%r, xi=%r)' % \
            (self.nu1, self.nu2, self.xi)


class SolverConfig(object):
    '''
    Settings of the dual decomposition.

    @ivar gamma_th: relay power budget threshold, in (0, 1]
    @ivar step_alpha: subgradient step size
    @ivar eps_conv: stop a loop when its multiplier moves less than this
    @ivar max_outer: cap on the nu2 iterations
    @ivar max_inner: cap on the nu1 and xi iterations
    @ivar f_grid_step: grid of the oracle and of the line search fallback
    @ivar step_rule: constant, diminishing (alpha / sqrt(k)) or polyak
                     ((upper bound - dual value) / g^2) steps
    @ivar nu2_update: dual ascent on the budget or the literal nu1 rule
    @ivar prescan_points: intervals of the coarse pre-scan in f
    @ivar golden_tol: bracket width at which golden-section stops
    '''

    def __init__(self, gamma_th, step_alpha=0.1, eps_conv=1e-5, max_outer=200,
                 max_inner=500, f_grid_step=1e-3, step_rule=StepRule.POLYAK,
                 nu2_update=Nu2Update.DUAL_ASCENT, prescan_points=32,
                 golden_tol=1e-10):
        self.gamma_th = gamma_th
        self.step_alpha = step_alpha
        self.eps_conv = eps_conv
        self.max_outer = max_outer
        self.max_inner = max_inner
        self.f_grid_step = f_grid_step
        self.step_rule = step_rule
        self.nu2_update = nu2_update
        self.prescan_points = prescan_points
        self.golden_tol = golden_tol
        self._validate()

    def _validate(self):
        if not 0 < self.gamma_th <= 1:
            raise ParameterError(_('gamma_th must be in (0, 1], got %r') %
                                 self.gamma_th)
        for name in ['step_alpha', 'eps_conv', 'golden_tol']:
            if not getattr(self, name) > 0:
                raise ParameterError(_('%s must be > 0') % name)
        for name in ['max_outer', 'max_inner', 'prescan_points']:
            if not getattr(self, name) >= 1:
                raise ParameterError(_('%s must be >= 1') % name)
        if not 0 < self.f_grid_step <= 1e-2:
            raise ParameterError(_('f_grid_step must be in (0, 0.01], got %r')
                                 % self.f_grid_step)
        if self.step_rule not in StepRule.all():
            raise ParameterError(_('unknown step rule %r') % self.step_rule)
        if self.nu2_update not in Nu2Update.all():
            raise ParameterError(_('unknown nu2 update %r') % self.nu2_update)

    def step(self, k, subgradient=0.0, gap=0.0):
        '''
        Step length of the k-th update along C{subgradient}. C{gap} is the
        distance between the best primal value found so far and the current
        dual value, used by the polyak rule.
        '''
        if self.step_rule == StepRule.POLYAK:
            if subgradient == 0:
                return 0.0
            return max(gap, 0.0) / (subgradient * subgradient)
        if self.step_rule == StepRule.DIMINISHING:
            return self.step_alpha / math.sqrt(k)
        return self.step_alpha


class IterationRecord(object):

    def __init__(self, iter_outer, iter_mid, iter_inner, f, multipliers,
                 objective, gamma, feasible):
        self.iter_outer = iter_outer
        self.iter_mid = iter_mid
        self.iter_inner = iter_inner
        self.f = f
        self.multipliers = multipliers
        self.objective = objective
        self.gamma = gamma
        self.feasible = feasible

    def row(self):
        return [self.iter_outer, self.iter_mid, self.iter_inner, self.f,
                self.multipliers.nu1, self.multipliers.nu2,
                self.multipliers.xi, self.objective, self.gamma,
                self.feasible]


class SolverResult(object):
    '''
    Outcome of L{solve}.

    @ivar f_star: optimal acceptance factor
    @ivar d_s_star: secondary delay at f_star
    @ivar gamma_star: relay power budget at f_star
    @ivar multipliers: L{MultiplierState} of the best dual iterate
    @ivar kkt: residuals nu1 (lambda_ps - mu_ps), nu2 (Gamma - gamma_th)
               and xi (lambda_s - mu_s) at f_star
    @ivar trace: list of L{IterationRecord}
    @ivar converged: whether the outer loop met its tolerance
    @ivar dual_bound: best dual value, a lower bound on the optimal delay
    '''

    def __init__(self, f_star, d_s_star, gamma_star, multipliers, kkt, trace,
                 converged, dual_bound=-math.inf):
        self.f_star = f_star
        self.d_s_star = d_s_star
        self.gamma_star = gamma_star
        self.multipliers = multipliers
        self.kkt = kkt
        self.trace = trace
        self.converged = converged
        self.dual_bound = dual_bound

    @property
    def iterations(self):
        return len(self.trace)

    @property
    def duality_gap(self):
        return self.d_s_star - self.dual_bound

    def write_trace(self, fileobj):
        write_rows(fileobj, TRACE_HEADERS, [r.row() for r in self.trace])

    def __repr__(self):
        return 'SolverResult(f_star=%r, d_s_star=%r, converged=%r)' % \
            (self.f_star, self.d_s_star, self.converged)


def kkt_residuals(point, multipliers, gamma_th):
    rates = point.rates
    return (multipliers.nu1 * (rates.lambda_ps - rates.mu_ps),
            multipliers.nu2 * (point.gamma - gamma_th),
            multipliers.xi * (rates.lambda_s - rates.mu_s))


def lagrangian_value(point, multipliers, gamma_th):
    if not point.stable:
        return math.inf
    return point.d_s + sum(kkt_residuals(point, multipliers, gamma_th))


def lagrangian_l1(params, f, nu1, nu2, gamma_th):
    '''
    D_s + nu1 (lambda_ps - mu_ps) + nu2 (Gamma - gamma_th), +inf where the
    network is unstable.
    '''
    return lagrangian_value(operating_point(params, f),
                            MultiplierState(nu1, nu2), gamma_th)


def lagrangian_l2(params, f, nu1, nu2, xi, gamma_th):
    ''' L{lagrangian_l1} plus xi (lambda_s - mu_s) '''
    return lagrangian_value(operating_point(params, f),
                            MultiplierState(nu1, nu2, xi), gamma_th)


def _argmin(values):
    # first minimum, so ties go to the smaller f
    best = 0
    for i, value in enumerate(values):
        if value < values[best]:
            best = i
    return best


def _unimodal(values):
    rising = False
    for a, b in zip(values, values[1:]):
        if b > a:
            rising = True
        elif b < a and rising:
            return False
    return True


def _grid(step):
    n = int(round(1.0 / step))
    return np.linspace(0.0, 1.0, n + 1).tolist()


def inner_minimize_f(params, multipliers, gamma_th, config=None):
    '''
    Minimizer in f of the full Lagrangian for fixed multipliers, with
    unstable points valued +inf.

    @raises InfeasibleError: when the primary queue is unstable for every f
    '''
    if config is None:
        config = SolverConfig(gamma_th)
    if not rate_set(params, 1.0).mu_p > params.lambda_p:
        raise InfeasibleError(_('the primary queue is unstable for every f'))

    def objective(f):
        return lagrangian_value(operating_point(params, f), multipliers,
                                gamma_th)

    grid = _grid(1.0 / config.prescan_points)
    values = [objective(f) for f in grid]
    best = _argmin(values)
    if math.isinf(values[best]) or not _unimodal(values):
        logging.debug('coarse Lagrangian scan at %s inconclusive, rescanning '
                      'with step %g', multipliers, config.f_grid_step)
        grid = _grid(config.f_grid_step)
        values = [objective(f) for f in grid]
        best = _argmin(values)
        if math.isinf(values[best]):
            raise InfeasibleError(_('no stable acceptance factor on the '
                                    'grid'))
    lo = grid[max(best - 1, 0)]
    hi = grid[min(best + 1, len(grid) - 1)]
    f, value = golden_section(objective, lo, hi, config.golden_tol)
    if value < values[best]:
        return f
    return grid[best]


def _feasible(params, f, gamma_th):
    return operating_point(params, f).feasible(gamma_th)


def _bisect(predicate, lo, hi):
    # predicate(lo) holds and predicate(hi) does not
    for step in range(BISECTIONS):
        mid = (lo + hi) / 2
        if predicate(mid):
            lo = mid
        else:
            hi = mid
    return lo


def max_stable_f(params):
    '''
    Largest acceptance factor at which all three queues are stable.

    @raises InfeasibleError: when the network is unstable at f=0
    '''
    if rate_set(params, 1.0).stable:
        return 1.0
    if not rate_set(params, 0.0).stable:
        raise InfeasibleError(_('the network is unstable at f=0'))
    return _bisect(lambda f: rate_set(params, f).stable, 0.0, 1.0)


class _PrimalRecovery(object):
    '''
    Primal solution read off the dual iterates. Gamma grows with f and the
    stability region starts at 0, so the feasible set is an interval
    [0, f_end]. Feasible iterates lie below f_end and over-budget iterates
    above it; f=0 minimizes the Lagrangian once nu2 is large enough and
    anchors the bracket from below.
    '''

    def __init__(self, params, gamma_th):
        self.params = params
        self.gamma_th = gamma_th
        self.lo = 0.0
        self.hi = None
        self.feasible_seen = False
        self._best = (operating_point(params, 0.0).d_s, 0.0)
        self._edge = None

    def add(self, point):
        if point.feasible(self.gamma_th):
            self.feasible_seen = True
            if point.f > self.lo:
                self.lo = point.f
                self._edge = None
            self._best = min(self._best, (point.d_s, point.f))
        elif point.f > self.lo and (self.hi is None or point.f < self.hi):
            self.hi = point.f
            self._edge = None

    @property
    def bracketed(self):
        ''' Whether the budget subgradient has taken both signs '''
        return self.feasible_seen and self.hi is not None

    def best(self):
        '''
        Best feasible point found so far, the edge of the bracket included.

        @return: (secondary delay, f)
        @rtype: tuple
        '''
        if self.hi is None:
            return self._best
        if self._edge is None:
            f = _bisect(lambda x: _feasible(self.params, x, self.gamma_th),
                        self.lo, self.hi)
            self._edge = (operating_point(self.params, f).d_s, f)
        return min(self._best, self._edge)


def solve(params, config):
    '''
    Runs the hierarchical decomposition and returns the optimal acceptance
    factor with its multipliers and the iteration trace.

    The outer loop stops when nu2 moves less than C{eps_conv}, or, once the
    budget subgradient has changed sign, when the recovered f and the best
    dual value both move less than C{eps_conv} over one outer step. The
    second rule is the one that fires when the Lagrangian minimizer jumps
    across the budget boundary (duality gap).

    @param params: network parameters
    @type params: L{relaygate.analytics.channel.NetworkParams}
    @param config: solver settings
    @type config: L{SolverConfig}
    @raises InfeasibleError: when the network is unstable at f=0
    @rtype: L{SolverResult}
    '''
    gamma_th = config.gamma_th
    start = rate_set(params, 0.0)
    if not start.stable:
        raise InfeasibleError(_("constraint '%s' is violated at f=0") %
                              start.violated[0])

    recovery = _PrimalRecovery(params, gamma_th)
    multipliers = MultiplierState()
    best_dual, best_multipliers = -math.inf, multipliers
    trace = []
    converged = False
    eps = config.eps_conv
    previous = None

    def gap(objective):
        return recovery.best()[0] - objective

    for k in range(1, config.max_outer + 1):
        for j in range(1, config.max_inner + 1):
            for i in range(1, config.max_inner + 1):
                f = inner_minimize_f(params, multipliers, gamma_th, config)
                point = operating_point(params, f)
                objective = lagrangian_value(point, multipliers, gamma_th)
                trace.append(IterationRecord(k, j, i, f, multipliers,
                                             objective, point.gamma,
                                             point.feasible(gamma_th)))
                recovery.add(point)
                if objective > best_dual:
                    best_dual, best_multipliers = objective, multipliers
                rates = point.rates
                g = rates.lambda_s - rates.mu_s
                xi = max(0.0, multipliers.xi +
                         config.step(i, g, gap(objective)) * g)
                done = abs(xi - multipliers.xi) <= eps
                multipliers = multipliers.replace(xi=xi)
                if done:
                    break
            g = rates.lambda_ps - rates.mu_ps
            nu1 = max(0.0, multipliers.nu1 +
                      config.step(j, g, gap(objective)) * g)
            done = abs(nu1 - multipliers.nu1) <= eps
            multipliers = multipliers.replace(nu1=nu1)
            if done:
                break
        if config.nu2_update == Nu2Update.LITERAL:
            g = multipliers.nu1
            nu2 = multipliers.nu2 + config.step(k, g, gap(objective)) * g
        else:
            g = point.gamma - gamma_th
            nu2 = max(0.0, multipliers.nu2 +
                      config.step(k, g, gap(objective)) * g)
        done = abs(nu2 - multipliers.nu2) <= eps
        multipliers = multipliers.replace(nu2=nu2)
        if not done and recovery.bracketed:
            current = (recovery.best()[1], best_dual)
            done = previous is not None and \
                abs(current[0] - previous[0]) <= eps and \
                current[1] - previous[1] <= eps
            previous = current
        elif not done:
            previous = None
        if done:
            converged = True
            break

    if not converged:
        m.warning(_('dual iterations stopped at the cap of %d outer steps') %
                  config.max_outer)

    f_star = recovery.best()[1]
    best = operating_point(params, f_star)
    return SolverResult(f_star, best.d_s, best.gamma, best_multipliers,
                        kkt_residuals(best, best_multipliers, gamma_th),
                        trace, converged, best_dual)


def brute_force_optimal_f(params, gamma_th, grid_step):
    '''
    Exhaustive scan of f over a regular grid, keeping the points that are
    stable and within the power budget and returning the one with the
    smallest secondary delay. Ties go to the smaller f.

    @raises InfeasibleError: when no grid point is feasible
    '''
    if not 0 < grid_step <= 1:
        raise ParameterError(_('grid_step must be in (0, 1], got %r') %
                             grid_step)
    best = None
    for f in _grid(grid_step):
        point = operating_point(params, f)
        if not point.feasible(gamma_th):
            continue
        if best is None or point.d_s < best.d_s:
            best = point
    if best is None:
        raise InfeasibleError(_('no feasible acceptance factor on a grid of '
                                'step %g') % grid_step)
    return best.f
