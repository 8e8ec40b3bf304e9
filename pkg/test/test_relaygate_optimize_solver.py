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

import io
import math
import unittest

import numpy as np

from relaygate.analytics.point import operating_point
from relaygate.enums import StepRule, Nu2Update
from relaygate.errors import ParameterError, InfeasibleError
from relaygate.optimize import solver
from relaygate.optimize.golden import golden_section
from relaygate.optimize.shadow import shadow_price_surface, SHADOW_HEADERS
from relaygate.optimize.solver import MultiplierState, SolverConfig
from relaygate.utils.table import INFEASIBLE
from test.test_common import default_params


def quick_config(gamma_th, **kwargs):
    kwargs.setdefault('max_outer', 30)
    kwargs.setdefault('eps_conv', 1e-4)
    return SolverConfig(gamma_th, **kwargs)


class GoldenSectionTest(unittest.TestCase):

    def testQuadratic(self):
        x, fx = golden_section(lambda x: (x - 0.3) ** 2 + 1, 0.0, 1.0)
        self.assertAlmostEqual(x, 0.3, places=6)
        self.assertAlmostEqual(fx, 1.0)

    def testSwappedBounds(self):
        x, fx = golden_section(lambda x: abs(x - 0.7), 1.0, 0.0)
        self.assertAlmostEqual(x, 0.7, places=6)


class SolverConfigTest(unittest.TestCase):

    def testBudgetRange(self):
        self.assertRaises(ParameterError, SolverConfig, 0.0)
        self.assertRaises(ParameterError, SolverConfig, 1.5)

    def testInvalid(self):
        self.assertRaises(ParameterError, SolverConfig, 0.2, step_alpha=0)
        self.assertRaises(ParameterError, SolverConfig, 0.2, f_grid_step=0.5)
        self.assertRaises(ParameterError, SolverConfig, 0.2,
                          step_rule='bogus')
        self.assertRaises(ParameterError, SolverConfig, 0.2,
                          nu2_update='bogus')

    def testSteps(self):
        config = SolverConfig(0.2, step_alpha=0.4,
                              step_rule=StepRule.CONSTANT)
        self.assertEqual(config.step(4), 0.4)
        config = SolverConfig(0.2, step_alpha=0.4,
                              step_rule=StepRule.DIMINISHING)
        self.assertAlmostEqual(config.step(4), 0.2)

    def testPolyakStep(self):
        config = SolverConfig(0.2)
        self.assertEqual(config.step_rule, StepRule.POLYAK)
        self.assertEqual(config.step(1, 2.0, 1.0), 0.25)
        self.assertEqual(config.step(1, -2.0, 1.0), 0.25)
        self.assertEqual(config.step(1, 0.0, 1.0), 0.0)
        self.assertEqual(config.step(1, 2.0, -1.0), 0.0)

    def testNegativeMultiplier(self):
        self.assertRaises(ParameterError, MultiplierState, -1.0)


class LagrangianTest(unittest.TestCase):

    def setUp(self):
        self.params = default_params()

    def testZeroMultipliers(self):
        point = operating_point(self.params, 0.5)
        self.assertEqual(solver.lagrangian_l1(self.params, 0.5, 0, 0, 0.2),
                         point.d_s)
        self.assertEqual(solver.lagrangian_l2(self.params, 0.5, 0, 0, 0, 0.2),
                         point.d_s)

    def testResiduals(self):
        point = operating_point(self.params, 0.5)
        rates = point.rates
        kkt = solver.kkt_residuals(point, MultiplierState(1.0, 2.0, 3.0),
                                   0.2)
        self.assertAlmostEqual(kkt[0], rates.lambda_ps - rates.mu_ps)
        self.assertAlmostEqual(kkt[1], 2.0 * (point.gamma - 0.2))
        self.assertAlmostEqual(kkt[2], 3.0 * (rates.lambda_s - rates.mu_s))
        value = solver.lagrangian_l2(self.params, 0.5, 1.0, 2.0, 3.0, 0.2)
        self.assertAlmostEqual(value, point.d_s + sum(kkt))

    def testUnstableIsInfinite(self):
        params = default_params(lambda_p=0.55)
        self.assertEqual(solver.lagrangian_l1(params, 1.0, 0, 0, 0.2),
                         math.inf)


class InnerMinimizationTest(unittest.TestCase):

    def testNoMultipliers(self):
        f = solver.inner_minimize_f(default_params(), MultiplierState(), 0.2)
        self.assertEqual(f, 1.0)

    def testBudgetPrice(self):
        # a large budget price pushes relaying down
        params = default_params()
        free = solver.inner_minimize_f(params, MultiplierState(), 0.2)
        priced = solver.inner_minimize_f(params, MultiplierState(0, 5.0, 0),
                                         0.2)
        self.assertLess(priced, free)

    def testMatchesGrid(self):
        params = default_params()
        multipliers = MultiplierState(0.0, 1.0, 0.0)
        f = solver.inner_minimize_f(params, multipliers, 0.2)

        def objective(x):
            return solver.lagrangian_l2(params, x, 0.0, 1.0, 0.0, 0.2)

        best = min(objective(x) for x in np.linspace(0, 1, 1001))
        self.assertLessEqual(objective(f), best + 1e-12)

    def testPrimaryAlwaysUnstable(self):
        self.assertRaises(InfeasibleError, solver.inner_minimize_f,
                          default_params(lambda_p=0.99), MultiplierState(),
                          0.2)


class MaxStableTest(unittest.TestCase):

    def testStableEverywhere(self):
        self.assertEqual(solver.max_stable_f(default_params()), 1.0)

    def testRelayBoundary(self):
        f = solver.max_stable_f(default_params(lambda_p=0.5))
        self.assertAlmostEqual(f, 0.9088, delta=1e-3)
        self.assertTrue(operating_point(default_params(lambda_p=0.5),
                                        f).stable)

    def testUnstableAtZero(self):
        self.assertRaises(InfeasibleError, solver.max_stable_f,
                          default_params(lambda_p=0.65))


class SolveTest(unittest.TestCase):

    def testLooseBudget(self):
        result = solver.solve(default_params(), quick_config(1.0))
        self.assertEqual(result.f_star, 1.0)
        self.assertAlmostEqual(result.d_s_star, 1.445291, delta=1e-5)
        self.assertTrue(result.converged)

    def testTightBudget(self):
        result = solver.solve(default_params(), quick_config(0.01))
        self.assertLess(result.f_star, 0.01)
        self.assertLessEqual(result.gamma_star, 0.01 + 1e-6)

    def testInfeasible(self):
        self.assertRaises(InfeasibleError, solver.solve,
                          default_params(lambda_p=0.65), quick_config(0.2))

    def testConvergesAtDefaults(self):
        params = default_params()
        result = solver.solve(params, SolverConfig(0.2))
        self.assertTrue(result.converged)
        self.assertLess(result.iterations, 200)
        self.assertAlmostEqual(result.f_star, 0.1147, delta=5e-4)
        self.assertAlmostEqual(result.gamma_star, 0.2, delta=1e-6)
        for residual in result.kkt:
            self.assertLessEqual(abs(residual), 1e-3)
        self.assertGreater(result.multipliers.nu2, 0.0)
        self.assertLessEqual(result.dual_bound, result.d_s_star + 1e-9)
        self.assertGreaterEqual(result.duality_gap, -1e-9)

    def testAgreesWithOracle(self):
        for lambda_p in np.linspace(0.1, 0.5, 5):
            params = default_params(lambda_p=lambda_p)
            for gamma_th in np.linspace(0.05, 0.6, 5):
                result = solver.solve(params, SolverConfig(gamma_th))
                oracle = solver.brute_force_optimal_f(params, gamma_th, 1e-3)
                self.assertLessEqual(abs(result.f_star - oracle), 2e-3,
                                     (lambda_p, gamma_th))
                point = operating_point(params, result.f_star)
                self.assertLessEqual(point.gamma, gamma_th + 1e-6)

    def testComplementarySlackness(self):
        for lambda_p in np.linspace(0.1, 0.5, 5):
            params = default_params(lambda_p=lambda_p)
            for gamma_th in np.linspace(0.05, 0.6, 5):
                result = solver.solve(params, SolverConfig(gamma_th))
                self.assertTrue(result.converged, (lambda_p, gamma_th))
                for residual in result.kkt:
                    self.assertLessEqual(abs(residual), 1e-3,
                                         (lambda_p, gamma_th))

    def testRelayingShrinksWithPrimaryLoad(self):
        previous = math.inf
        for lambda_p in [0.3, 0.4, 0.5, 0.55]:
            result = solver.solve(default_params(lambda_p=lambda_p),
                                  SolverConfig(0.2))
            self.assertTrue(result.converged, lambda_p)
            self.assertLessEqual(result.f_star, previous + 1e-9)
            previous = result.f_star
        self.assertAlmostEqual(previous, 0.0923, delta=1e-3)

    def testWeakDuality(self):
        params = default_params()
        oracle = solver.brute_force_optimal_f(params, 0.2, 1e-3)
        bound = operating_point(params, oracle).d_s
        result = solver.solve(params, SolverConfig(0.2))
        for record in result.trace:
            self.assertLessEqual(record.objective, bound + 1e-9)

    def testMonotoneInBudget(self):
        params = default_params()
        previous = -1.0
        for gamma_th in [0.05, 0.1, 0.2, 0.3, 0.5, 0.8]:
            f_star = solver.solve(params, quick_config(gamma_th)).f_star
            self.assertGreaterEqual(f_star, previous - 1e-9)
            previous = f_star

    def testSaturation(self):
        # with a loose budget the optimum is the unconstrained minimizer of
        # the secondary delay, inside the stability region
        params = default_params(lambda_p=0.5)
        edge = solver.max_stable_f(params)
        values = [solver.solve(params, quick_config(gamma_th)).f_star
                  for gamma_th in [0.75, 0.9, 1.0]]
        for f_star in values:
            self.assertAlmostEqual(f_star, 0.8194, delta=2e-3)
            self.assertLess(f_star, edge)
            self.assertAlmostEqual(f_star, values[0], delta=1e-6)
        tight = solver.solve(params, quick_config(0.1)).f_star
        self.assertLess(tight, 0.1)

    def testLiteralNu2Update(self):
        config = quick_config(0.2, nu2_update=Nu2Update.LITERAL)
        result = solver.solve(default_params(), config)
        oracle = solver.brute_force_optimal_f(default_params(), 0.2, 1e-3)
        self.assertLessEqual(abs(result.f_star - oracle), 2e-3)

    def testTrace(self):
        result = solver.solve(default_params(), quick_config(0.2))
        self.assertEqual(result.iterations, len(result.trace))
        out = io.StringIO()
        result.write_trace(out)
        lines = out.getvalue().splitlines()
        self.assertEqual(lines[0], ','.join(solver.TRACE_HEADERS))
        self.assertEqual(len(lines), result.iterations + 1)


class BruteForceTest(unittest.TestCase):

    def testLooseBudget(self):
        self.assertEqual(solver.brute_force_optimal_f(default_params(), 1.0,
                                                      1e-2), 1.0)

    def testInvalidStep(self):
        self.assertRaises(ParameterError, solver.brute_force_optimal_f,
                          default_params(), 0.2, 0.0)

    def testNothingFeasible(self):
        self.assertRaises(InfeasibleError, solver.brute_force_optimal_f,
                          default_params(lambda_p=0.65), 0.2, 1e-2)


class ShadowPriceTest(unittest.TestCase):

    def testSurface(self):
        ranges = {'nu1': [0.0, 1.0], 'nu2': [0.0, 5.0]}
        rows = shadow_price_surface(default_params(), 0.2, ranges)
        self.assertEqual(len(rows), 4)
        self.assertEqual([(r.multipliers.nu1, r.multipliers.nu2)
                          for r in rows],
                         [(0.0, 0.0), (0.0, 5.0), (1.0, 0.0), (1.0, 5.0)])
        for r in rows:
            self.assertTrue(r.feasible)
            self.assertEqual(len(r.row()), len(SHADOW_HEADERS))
            self.assertLessEqual(r.kkt[0], 0.0)
            self.assertEqual(r.kkt[2], 0.0)
        self.assertEqual(rows[0].f, 1.0)
        self.assertEqual(rows[0].kkt[1], 0.0)

    def testInfeasible(self):
        rows = shadow_price_surface(default_params(lambda_p=0.99), 0.2,
                                    {'nu2': [0.0, 1.0]})
        self.assertEqual(len(rows), 2)
        for r in rows:
            self.assertFalse(r.feasible)
            self.assertEqual(r.row()[3:], [INFEASIBLE] * 5)
