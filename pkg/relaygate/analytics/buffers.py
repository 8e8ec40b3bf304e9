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
Finite relay buffer view of Q_ps: overflow and blocking probabilities for a
buffer of K packets, built on the Pollaczek-Khinchine mean occupancy.
'''

from relaygate.analytics.queues import rate_set, geometric_moments, \
    PRIMARY, RELAY
from relaygate.enums import BufferMode
from relaygate.errors import ParameterError, InstabilityError
from relaygate.utils import _


class BufferMetrics(object):

    def __init__(self, k, p_n, p_ov, p_b, rho, mode):
        self.k = k
        self.p_n = p_n
        self.p_ov = p_ov
        self.p_b = p_b
        self.rho = rho
        self.mode = mode

    def __repr__(self):
        return 'BufferMetrics(k=%r, p_ov=%r, p_b=%r, mode=%r)' % \
            (self.k, self.p_ov, self.p_b, self.mode)


def occupancy_quantity(lam, moments):
    '''
    Mean number of packets in a queue with Bernoulli arrivals of rate
    C{lam} and service moments C{moments}.
    '''
    if lam < 0:
        raise ParameterError(_('arrival rate must be >= 0, got %r') % lam)
    rho = lam * moments.e_s
    if rho >= 1:
        raise InstabilityError('rho < 1')
    return rho + lam * lam * moments.e_s2 / (2 * (1 - rho))


def overflow_probability(lam, moments, k, mode=BufferMode.GEOMETRIC_MATCHED):
    '''
    Probability that more than C{k} packets are waiting.

    C{BufferMode.LITERAL} spreads the occupancy quantity uniformly over the
    states 0..k. C{BufferMode.GEOMETRIC_MATCHED} uses the geometric
    occupancy distribution whose mean equals the occupancy quantity.
    '''
    if mode not in BufferMode.all():
        raise ParameterError(_('unknown buffer mode %r') % mode)
    if not isinstance(k, int) or isinstance(k, bool) or k < 0:
        raise ParameterError(_('buffer size must be an integer >= 0, '
                               'got %r') % (k,))
    p_n = occupancy_quantity(lam, moments)
    if lam == 0:
        return 0.0
    if mode == BufferMode.LITERAL:
        return min(max(1 - (k + 1) * p_n, 0.0), 1.0)
    sigma = p_n / (1 + p_n)
    return sigma ** (k + 1)


def blocking_probability(p_ov, rho):
    if not 0 <= p_ov <= 1:
        raise ParameterError(_('overflow probability must be in [0, 1], '
                               'got %r') % p_ov)
    if not 0 <= rho < 1:
        raise ParameterError(_('utilization must be in [0, 1), got %r') % rho)
    return (1 - rho) * p_ov / (1 - rho * p_ov)


def overflow_derivative(lam, moments, rho):
    if not 0 < rho < 1:
        raise ParameterError(_('utilization must be in (0, 1), got %r') % rho)
    return lam * lam * moments.e_s2 / (rho - 1) ** 2 + 1


def buffer_metrics(lam, moments, k, mode=BufferMode.GEOMETRIC_MATCHED):
    rho = lam * moments.e_s
    p_n = occupancy_quantity(lam, moments)
    p_ov = overflow_probability(lam, moments, k, mode)
    return BufferMetrics(k, p_n, p_ov, blocking_probability(p_ov, rho), rho,
                         mode)


def relay_buffer_metrics(params, f, k, mode=BufferMode.GEOMETRIC_MATCHED):
    '''
    Buffer metrics of the relay queue Q_ps at acceptance factor C{f}.

    @raises InstabilityError: when the primary or the relay queue is
                              unstable at C{f}
    '''
    rates = rate_set(params, f)
    for constraint in (PRIMARY, RELAY):
        if constraint in rates.violated:
            raise InstabilityError(constraint, f)
    return buffer_metrics(rates.lambda_ps, geometric_moments(rates.mu_ps),
                          k, mode)
