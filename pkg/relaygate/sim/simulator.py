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
Slotted Monte-Carlo model of the prioritized cognitive relaying protocol.

Every slot the primary user transmits the head of Q_p if it has one. When
that fails, the secondary user may pick the packet up (it decoded it and
accepts with probability f) and store it in Q_ps; otherwise the primary
retransmits. Slots left idle by the primary serve Q_ps first and Q_s when
Q_ps is empty or its link is in outage. Arrivals land at the end of the
slot, so a packet is never served in the slot it arrives.
'''

import math
from collections import deque
from functools import partial

import numpy as np

from relaygate.analytics.buffers import buffer_metrics
from relaygate.analytics.point import operating_point
from relaygate.analytics.queues import geometric_moments
from relaygate.enums import Link, EnergyPolicy, BufferMode
from relaygate.errors import ParameterError
from relaygate.utils import _, run_in_processes
from relaygate.utils import messages as m


RNG_NAME = 'PCG64'
BLOCK = 1 << 16
DEFAULT_TAIL_LEVELS = (0, 1, 2, 5, 10)
DIVERGENCE_FACTOR = 10

SUMMARY_HEADERS = ['quantity', 'value', 'stderr']
REPLICATION_HEADERS = ['replication', 'd_p', 'd_s', 'gamma', 'mu_p',
                       'lambda_ps', 'mu_ps', 'mu_s', 'drops', 'diverged',
                       'balanced']
TRACE_HEADERS = ['replication', 'slot', 'event', 'q_p', 'q_ps', 'q_s',
                 'energy']
COMPARISON_HEADERS = ['quantity', 'analytic', 'empirical', 'rel_error',
                      'stderr']


class SimConfig(object):
    '''
    Settings of a simulation campaign.

    @ivar params: network parameters
    @ivar f: acceptance factor
    @ivar slots: horizon of every replication, warmup included
    @ivar warmup: leading slots excluded from the statistics
    @ivar seed: root seed, replication seeds are spawned from it
    @ivar buffer_k: room of Q_ps, None for an unbounded queue
    @ivar replications: number of independent runs
    @ivar energy_policy: energy charged to a failed secondary attempt
    @ivar tail_levels: K values at which Pr[N_ps > K] is estimated
    @ivar trace: keep a slot-level event log
    '''

    def __init__(self, params, f, slots, warmup=0, seed=0, buffer_k=None,
                 replications=1, energy_policy=EnergyPolicy.MAX_POWER,
                 tail_levels=None, trace=False):
        self.params = params
        self.f = f
        self.slots = slots
        self.warmup = warmup
        self.seed = seed
        self.buffer_k = buffer_k
        self.replications = replications
        self.energy_policy = energy_policy
        if tail_levels is None:
            tail_levels = list(DEFAULT_TAIL_LEVELS)
            if buffer_k is not None and buffer_k not in tail_levels:
                tail_levels.append(buffer_k)
        self.tail_levels = sorted(tail_levels)
        self.trace = trace
        self._validate()

    def _validate(self):
        if not 0 <= self.f <= 1:
            raise ParameterError(_('f must be in [0, 1], got %r') % self.f)
        if not 0 <= self.warmup < self.slots:
            raise ParameterError(_('need slots > warmup >= 0, got slots=%r '
                                   'warmup=%r') % (self.slots, self.warmup))
        if self.replications < 1:
            raise ParameterError(_('replications must be >= 1'))
        if self.seed < 0:
            raise ParameterError(_('seed must be >= 0'))
        if self.buffer_k is not None and self.buffer_k < 0:
            raise ParameterError(_('buffer_k must be >= 0'))
        if self.energy_policy not in EnergyPolicy.all():
            raise ParameterError(_('unknown energy policy %r') %
                                 self.energy_policy)

    def with_f(self, f):
        return SimConfig(self.params, f, self.slots, self.warmup, self.seed,
                         self.buffer_k, self.replications, self.energy_policy,
                         self.tail_levels, self.trace)


class Estimate(object):

    def __init__(self, value, stderr):
        self.value = value
        self.stderr = stderr

    @classmethod
    def binomial(cls, successes, trials):
        if trials == 0:
            return cls(float('nan'), float('nan'))
        p = successes / trials
        return cls(p, math.sqrt(p * (1 - p) / trials))

    @classmethod
    def across(cls, values, fallback_stderr=float('nan')):
        '''
        Mean of per-replication values with the standard error of that mean
        '''
        values = np.asarray([v for v in values if not math.isnan(v)])
        if len(values) == 0:
            return cls(float('nan'), float('nan'))
        if len(values) == 1:
            return cls(float(values[0]), fallback_stderr)
        return cls(float(values.mean()),
                   float(values.std(ddof=1) / math.sqrt(len(values))))

    def __eq__(self, other):
        return isinstance(other, Estimate) and \
            _same(self.value, other.value) and _same(self.stderr, other.stderr)

    def __repr__(self):
        return 'Estimate(%r +/- %r)' % (self.value, self.stderr)


def _same(a, b):
    return a == b or (math.isnan(a) and math.isnan(b))


class QueueLedger(object):

    def __init__(self):
        self.arrivals = 0
        self.departures = 0
        self.drops = 0
        self.queued = 0

    @property
    def balanced(self):
        return self.arrivals == self.departures + self.queued + self.drops

    def __repr__(self):
        return 'QueueLedger(arrivals=%d, departures=%d, queued=%d, drops=%d)' \
            % (self.arrivals, self.departures, self.queued, self.drops)


class _DelayAccumulator(object):

    def __init__(self):
        self.count = 0
        self.total = 0
        self.total_sq = 0
        self.minimum = None

    def add(self, delay):
        self.count += 1
        self.total += delay
        self.total_sq += delay * delay
        if self.minimum is None or delay < self.minimum:
            self.minimum = delay

    @property
    def mean(self):
        if self.count == 0:
            return float('nan')
        return self.total / self.count

    @property
    def stderr(self):
        if self.count < 2:
            return float('nan')
        var = (self.total_sq - self.total * self.total / self.count) / \
            (self.count - 1)
        return math.sqrt(max(var, 0.0) / self.count)


class ReplicationStats(object):
    ''' Raw counters of one replication '''

    def __init__(self, index, tail_levels):
        self.index = index
        self.measured_slots = 0
        self.busy_p = 0
        self.departed_p = 0
        self.admitted = 0
        self.offered_ps = 0
        self.busy_ps = 0
        self.departed_ps = 0
        self.busy_s = 0
        self.departed_s = 0
        self.delay_p = _DelayAccumulator()
        self.delay_s = _DelayAccumulator()
        self.relay_energy = 0.0
        self.own_energy = 0.0
        self.drops = 0
        self.tail_counts = dict((k, 0) for k in tail_levels)
        self.area_s = 0
        self.ledgers = dict((l, QueueLedger())
                            for l in [Link.P, Link.PS, Link.S])
        self.diverged = False
        self.events = []

    @property
    def gamma(self):
        total = self.relay_energy + self.own_energy
        if total == 0:
            return 0.0
        return self.relay_energy / total

    @property
    def balanced(self):
        return all(l.balanced for l in self.ledgers.values())

    def _ratio(self, num, den):
        return num / den if den else float('nan')

    def row(self):
        return [self.index, self.delay_p.mean, self.delay_s.mean, self.gamma,
                self._ratio(self.departed_p, self.busy_p),
                self._ratio(self.admitted, self.measured_slots),
                self._ratio(self.departed_ps, self.busy_ps),
                self._ratio(self.departed_s, self.busy_s), self.drops,
                self.diverged, self.balanced]


class SlotSimulator(object):
    '''
    One replication of the slotted protocol driven by its own generator
    '''

    def __init__(self, config, seed_seq, index):
        self.config = config
        self.index = index
        self.rng = np.random.Generator(np.random.PCG64(seed_seq))

    def _draw(self, n):
        params = self.config.params
        rng = self.rng
        return (
            (rng.random(n) < params.lambda_p).tolist(),
            (rng.random(n) < params.lambda_s).tolist(),
            rng.exponential(params.link(Link.P).sigma2, n).tolist(),
            rng.exponential(params.link(Link.PS).sigma2, n).tolist(),
            rng.exponential(params.link(Link.SP).sigma2, n).tolist(),
            rng.exponential(params.link(Link.S).sigma2, n).tolist(),
            (rng.random(n) < self.config.f).tolist(),
        )

    def run(self):
        config = self.config
        params = config.params
        links = params.links
        thr_p = links[Link.P].gamma_th / links[Link.P].p_max
        thr_ps = links[Link.PS].gamma_th / links[Link.PS].p_max
        thr_sp = links[Link.SP].gamma_th / links[Link.SP].p_max
        thr_s = links[Link.S].gamma_th / links[Link.S].p_max
        gamma_sp = links[Link.SP].gamma_th
        gamma_s = links[Link.S].gamma_th
        if config.energy_policy == EnergyPolicy.MAX_POWER:
            fail_s = links[Link.S].p_max
        else:
            fail_s = 0.0
        buffer_k = config.buffer_k
        warmup = config.warmup
        tracing = config.trace

        stats = ReplicationStats(self.index, config.tail_levels)
        ledger_p = stats.ledgers[Link.P]
        ledger_ps = stats.ledgers[Link.PS]
        ledger_s = stats.ledgers[Link.S]
        q_p = deque()
        q_ps = deque()
        q_s = deque()

        for start in range(0, config.slots, BLOCK):
            n = min(BLOCK, config.slots - start)
            arr_p, arr_s, g_p, g_ps, g_sp, g_s, admit = self._draw(n)
            for i in range(n):
                t = start + i
                measuring = t >= warmup
                energy = 0.0
                if measuring:
                    stats.measured_slots += 1
                    n_ps = len(q_ps)
                    for k in stats.tail_counts:
                        if n_ps > k:
                            stats.tail_counts[k] += 1
                    stats.area_s += len(q_s)
                    if q_ps:
                        stats.busy_ps += 1
                    if q_s:
                        stats.busy_s += 1

                if q_p:
                    if measuring:
                        stats.busy_p += 1
                    if g_p[i] >= thr_p:
                        event = 'primary_success'
                        moved = True
                    elif g_ps[i] >= thr_ps and admit[i]:
                        ledger_ps.arrivals += 1
                        if measuring:
                            stats.offered_ps += 1
                        if buffer_k is not None and len(q_ps) >= buffer_k:
                            event = 'relay_blocked'
                            ledger_ps.drops += 1
                            if measuring:
                                stats.drops += 1
                            moved = False
                        else:
                            event = 'relay_admit'
                            q_ps.append(t)
                            if measuring:
                                stats.admitted += 1
                            moved = True
                    else:
                        event = 'primary_retx'
                        moved = False
                    if moved:
                        arrival = q_p.popleft()
                        ledger_p.departures += 1
                        if measuring:
                            stats.departed_p += 1
                        if arrival >= warmup:
                            stats.delay_p.add(t - arrival)
                else:
                    event = 'idle'
                    served = False
                    # an outage on the relay link hands the slot to Q_s
                    if q_ps and g_sp[i] >= thr_sp:
                        q_ps.popleft()
                        ledger_ps.departures += 1
                        served = True
                        event = 'relay_tx'
                        if gamma_sp > 0:
                            energy = gamma_sp / g_sp[i]
                        if measuring:
                            stats.departed_ps += 1
                            stats.relay_energy += energy
                    if not served and q_s:
                        if g_s[i] >= thr_s:
                            arrival = q_s.popleft()
                            ledger_s.departures += 1
                            event = 'secondary_tx'
                            if gamma_s > 0:
                                energy = gamma_s / g_s[i]
                            if measuring:
                                stats.departed_s += 1
                            if arrival >= warmup:
                                stats.delay_s.add(t - arrival)
                        else:
                            event = 'secondary_fail'
                            energy = fail_s
                        if measuring:
                            stats.own_energy += energy

                if arr_p[i]:
                    q_p.append(t)
                    ledger_p.arrivals += 1
                if arr_s[i]:
                    q_s.append(t)
                    ledger_s.arrivals += 1
                if tracing:
                    stats.events.append((t, event, len(q_p), len(q_ps),
                                         len(q_s), energy))

        ledger_p.queued = len(q_p)
        ledger_ps.queued = len(q_ps)
        ledger_s.queued = len(q_s)
        average_s = stats.area_s / stats.measured_slots
        stats.diverged = len(q_s) > DIVERGENCE_FACTOR * max(average_s, 1.0)
        return stats


class SimStats(object):
    '''
    Merged statistics of all the replications.

    @ivar mean_d_p: L{Estimate} of the primary delay in slots
    @ivar mean_d_s: L{Estimate} of the secondary delay in slots
    @ivar empirical_gamma: L{Estimate} of the relay energy fraction
    @ivar empirical_rates: L{Estimate} by name: mu_p, lambda_ps, mu_ps, mu_s
    @ivar occupancy_tail: L{Estimate} of Pr[N_ps > K] by K
    @ivar blocking: L{Estimate} of the fraction of admissions blocked
    @ivar drop_count: packets blocked at a finite Q_ps
    @ivar diverged: Q_s kept growing in at least one replication
    @ivar replications: list of L{ReplicationStats}
    '''

    def __init__(self, replications):
        self.replications = replications
        self.rng_name = RNG_NAME

        def pooled(attr):
            return sum(getattr(r, attr) for r in replications)

        self.empirical_rates = {
            'mu_p': Estimate.binomial(pooled('departed_p'), pooled('busy_p')),
            'lambda_ps': Estimate.binomial(pooled('admitted'),
                                           pooled('measured_slots')),
            'mu_ps': Estimate.binomial(pooled('departed_ps'),
                                       pooled('busy_ps')),
            'mu_s': Estimate.binomial(pooled('departed_s'), pooled('busy_s')),
        }
        slots = pooled('measured_slots')
        self.occupancy_tail = dict(
            (k, Estimate.binomial(sum(r.tail_counts[k] for r in replications),
                                  slots))
            for k in replications[0].tail_counts)
        self.drop_count = pooled('drops')
        self.blocking = Estimate.binomial(self.drop_count,
                                          pooled('offered_ps'))
        first = replications[0]
        self.mean_d_p = Estimate.across([r.delay_p.mean for r in replications],
                                        first.delay_p.stderr)
        self.mean_d_s = Estimate.across([r.delay_s.mean for r in replications],
                                        first.delay_s.stderr)
        self.empirical_gamma = Estimate.across([r.gamma for r in replications])
        self.diverged = any(r.diverged for r in replications)

    @property
    def balanced(self):
        return all(r.balanced for r in self.replications)

    def summary_rows(self):
        rows = [['d_p', self.mean_d_p.value, self.mean_d_p.stderr],
                ['d_s', self.mean_d_s.value, self.mean_d_s.stderr],
                ['gamma', self.empirical_gamma.value,
                 self.empirical_gamma.stderr]]
        for name in ['mu_p', 'lambda_ps', 'mu_ps', 'mu_s']:
            e = self.empirical_rates[name]
            rows.append([name, e.value, e.stderr])
        for k in sorted(self.occupancy_tail):
            e = self.occupancy_tail[k]
            rows.append(['tail_%d' % k, e.value, e.stderr])
        rows.append(['blocking', self.blocking.value, self.blocking.stderr])
        rows.append(['drops', self.drop_count, 0])
        rows.append(['diverged', self.diverged, 0])
        return rows

    def replication_rows(self):
        return [r.row() for r in self.replications]

    def trace_rows(self):
        return [[r.index] + list(event) for r in self.replications
                for event in r.events]


def run_replication(config, seed_seq, index):
    return SlotSimulator(config, seed_seq, index).run()


def run(config):
    '''
    Runs C{config.replications} independent replications concurrently and
    merges them in replication order.

    @type config: L{SimConfig}
    @rtype: L{SimStats}
    '''
    seeds = np.random.SeedSequence(config.seed).spawn(config.replications)
    replications = run_in_processes(
        [partial(run_replication, config, seq, i)
         for i, seq in enumerate(seeds)])
    stats = SimStats(replications)
    if stats.diverged:
        m.warning(_('Q_s kept growing at f=%g, the setting is likely '
                    'unstable') % config.f)
    return stats


class ComparisonRow(object):

    def __init__(self, quantity, analytic, empirical):
        self.quantity = quantity
        self.analytic = analytic
        self.empirical = empirical

    @property
    def rel_error(self):
        value = self.empirical.value
        if self.analytic == 0:
            return 0.0 if value == 0 else math.inf
        return abs(value - self.analytic) / abs(self.analytic)

    def row(self):
        return [self.quantity, self.analytic, self.empirical.value,
                self.rel_error, self.empirical.stderr]


class DiscrepancyReport(object):

    def __init__(self, rows, stats):
        self.rows = rows
        self.stats = stats

    @property
    def diverged(self):
        return self.stats.diverged

    def get(self, quantity):
        for row in self.rows:
            if row.quantity == quantity:
                return row
        raise KeyError(quantity)


def compare_with_analytics(config, mode=BufferMode.GEOMETRIC_MATCHED):
    '''
    Simulates C{config} and lines the empirical figures up with the closed
    forms.

    @raises InstabilityError: when the closed forms are unstable at
                              C{config.f}
    @rtype: L{DiscrepancyReport}
    '''
    point = operating_point(config.params, config.f)
    point.rates.check_stable()
    stats = run(config)
    rates = point.rates
    rows = [
        ComparisonRow('mu_p', rates.mu_p, stats.empirical_rates['mu_p']),
        ComparisonRow('lambda_ps', rates.lambda_ps,
                      stats.empirical_rates['lambda_ps']),
        ComparisonRow('mu_ps', rates.mu_ps, stats.empirical_rates['mu_ps']),
        ComparisonRow('mu_s', rates.mu_s, stats.empirical_rates['mu_s']),
        ComparisonRow('d_p', point.delays.d_p, stats.mean_d_p),
        ComparisonRow('d_s', point.d_s, stats.mean_d_s),
        ComparisonRow('gamma', point.gamma, stats.empirical_gamma),
    ]
    if config.buffer_k is not None:
        metrics = buffer_metrics(rates.lambda_ps,
                                 geometric_moments(rates.mu_ps),
                                 config.buffer_k, mode)
        rows.append(ComparisonRow('p_b', metrics.p_b, stats.blocking))
    return DiscrepancyReport(rows, stats)
