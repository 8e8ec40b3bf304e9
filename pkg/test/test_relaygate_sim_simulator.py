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

from relaygate.analytics.queues import rate_set
from relaygate.enums import Link, EnergyPolicy
from relaygate.errors import ParameterError, InstabilityError
from relaygate.sim import simulator
from relaygate.sim.simulator import SimConfig, Estimate
from relaygate.utils.table import write_rows
from test.test_common import default_params


def sim_config(f=0.5, slots=100000, replications=4, **kwargs):
    params = kwargs.pop('params', default_params())
    kwargs.setdefault('warmup', 1000)
    kwargs.setdefault('seed', 11)
    return SimConfig(params, f, slots, replications=replications, **kwargs)


def summary_text(stats):
    out = io.StringIO()
    write_rows(out, simulator.SUMMARY_HEADERS, stats.summary_rows())
    write_rows(out, simulator.REPLICATION_HEADERS, stats.replication_rows())
    return out.getvalue()


class SimConfigTest(unittest.TestCase):

    def testInvalid(self):
        params = default_params()
        self.assertRaises(ParameterError, SimConfig, params, 1.5, 100)
        self.assertRaises(ParameterError, SimConfig, params, 0.5, 100,
                          warmup=100)
        self.assertRaises(ParameterError, SimConfig, params, 0.5, 100,
                          replications=0)
        self.assertRaises(ParameterError, SimConfig, params, 0.5, 100,
                          buffer_k=-1)
        self.assertRaises(ParameterError, SimConfig, params, 0.5, 100,
                          energy_policy='bogus')

    def testTailLevels(self):
        config = SimConfig(default_params(), 0.5, 100, buffer_k=3)
        self.assertIn(3, config.tail_levels)
        self.assertEqual(config.tail_levels, sorted(config.tail_levels))


class EstimateTest(unittest.TestCase):

    def testBinomial(self):
        e = Estimate.binomial(25, 100)
        self.assertEqual(e.value, 0.25)
        self.assertAlmostEqual(e.stderr, math.sqrt(0.25 * 0.75 / 100))
        self.assertTrue(math.isnan(Estimate.binomial(0, 0).value))

    def testAcross(self):
        e = Estimate.across([1.0, 2.0, 3.0])
        self.assertEqual(e.value, 2.0)
        self.assertAlmostEqual(e.stderr, 1.0 / math.sqrt(3))
        single = Estimate.across([4.0], 0.5)
        self.assertEqual(single, Estimate(4.0, 0.5))


class SimulatorTest(unittest.TestCase):

    def testDeterministic(self):
        config = sim_config(slots=20000)
        first = summary_text(simulator.run(config))
        second = summary_text(simulator.run(config))
        self.assertEqual(first, second)
        other = sim_config(slots=20000, seed=12)
        self.assertNotEqual(first, summary_text(simulator.run(other)))

    def testConservation(self):
        for buffer_k in [None, 2]:
            stats = simulator.run(sim_config(slots=50000, buffer_k=buffer_k))
            self.assertTrue(stats.balanced)
            for replication in stats.replications:
                for ledger in replication.ledgers.values():
                    self.assertEqual(ledger.arrivals, ledger.departures +
                                     ledger.queued + ledger.drops)

    def testNoRelaying(self):
        stats = simulator.run(sim_config(f=0.0, slots=50000))
        self.assertEqual(stats.empirical_rates['lambda_ps'].value, 0.0)
        self.assertEqual(stats.empirical_gamma.value, 0.0)
        self.assertEqual(stats.drop_count, 0)
        self.assertFalse(stats.diverged)

    def testIdlePrimary(self):
        params = default_params(lambda_p=0.0)
        stats = simulator.run(sim_config(f=0.0, params=params))
        expected = rate_set(params, 0.0).mu_s
        estimate = stats.empirical_rates['mu_s']
        self.assertAlmostEqual(expected, 1 - rate_set(params, 0.0)
                               .outages[Link.S])
        self.assertLessEqual(abs(estimate.value - expected),
                             4 * estimate.stderr)

    def testPrimaryService(self):
        report = simulator.compare_with_analytics(
            sim_config(slots=50000, replications=12))
        mu_p = report.get('mu_p')
        self.assertLessEqual(abs(mu_p.empirical.value - mu_p.analytic),
                             3 * mu_p.empirical.stderr)
        d_p = report.get('d_p')
        self.assertLessEqual(abs(d_p.empirical.value - d_p.analytic),
                             3 * d_p.empirical.stderr)
        self.assertFalse(report.diverged)

    def testRelayingHelpsSecondary(self):
        without = simulator.run(sim_config(f=0.0))
        full = simulator.run(sim_config(f=1.0))
        self.assertGreater(without.mean_d_s.value, full.mean_d_s.value)

    def testSecondaryDelayFallsWithRelaying(self):
        delays = [simulator.run(sim_config(f=f, slots=200000))
                  .mean_d_s.value for f in [0.25, 0.5, 0.75]]
        self.assertGreater(delays[0], delays[1])
        self.assertGreater(delays[1], delays[2])

    def testDelaysAtLeastOneSlot(self):
        stats = simulator.run(sim_config(slots=20000))
        for replication in stats.replications:
            self.assertGreaterEqual(replication.delay_p.minimum, 1)
            self.assertGreaterEqual(replication.delay_s.minimum, 1)

    def testNoRoom(self):
        stats = simulator.run(sim_config(slots=20000, buffer_k=0))
        self.assertGreater(stats.drop_count, 0)
        self.assertEqual(stats.blocking.value, 1.0)
        self.assertEqual(stats.empirical_rates['lambda_ps'].value, 0.0)

    def testOccupancyTail(self):
        stats = simulator.run(sim_config(slots=20000))
        tail = [stats.occupancy_tail[k].value
                for k in sorted(stats.occupancy_tail)]
        for a, b in zip(tail, tail[1:]):
            self.assertLessEqual(b, a)

    def testFreeFailures(self):
        charged = simulator.run(sim_config(slots=20000))
        free = simulator.run(sim_config(slots=20000,
                                        energy_policy=EnergyPolicy.FREE))
        self.assertGreaterEqual(free.empirical_gamma.value,
                                charged.empirical_gamma.value)

    def testTrace(self):
        stats = simulator.run(sim_config(slots=500, warmup=0,
                                         replications=2, trace=True))
        rows = stats.trace_rows()
        self.assertEqual(len(rows), 1000)
        self.assertEqual(len(rows[0]), len(simulator.TRACE_HEADERS))
        self.assertEqual([r[0] for r in rows[:500]], [0] * 500)

    def testCompareUnstable(self):
        config = sim_config(params=default_params(lambda_s=0.5), f=1.0,
                            slots=2000)
        self.assertRaises(InstabilityError, simulator.compare_with_analytics,
                          config)

    def testCompareBlocking(self):
        report = simulator.compare_with_analytics(sim_config(slots=20000,
                                                             buffer_k=3))
        p_b = report.get('p_b')
        self.assertGreaterEqual(p_b.analytic, 0.0)
        self.assertLessEqual(p_b.empirical.value, 1.0)
        self.assertRaises(KeyError, report.get, 'bogus')
