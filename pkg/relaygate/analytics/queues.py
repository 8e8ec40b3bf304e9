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
Closed-form rates, utilizations and delays of the three queues (primary Q_p,
relay Q_ps and secondary Q_s) as functions of the acceptance factor f.
'''

import math

from relaygate.analytics.channel import outage_probability
from relaygate.enums import Link, DerivativeMode
from relaygate.errors import ParameterError, InstabilityError
from relaygate.utils import _


PRIMARY = 'lambda_p < mu_p'
RELAY = 'lambda_ps < mu_ps'
SECONDARY = 'lambda_s < mu_s'
NAN = float('nan')


class ServiceMoments(object):

    def __init__(self, e_s, e_s2):
        self.e_s = e_s
        self.e_s2 = e_s2

    def residual(self):
        ''' Mean residual service time E[S^2] / (2 E[S]) '''
        return self.e_s2 / (2 * self.e_s)

    def __repr__(self):
        return 'ServiceMoments(e_s=%r, e_s2=%r)' % (self.e_s, self.e_s2)


class RateSet(object):
    '''
    Service and arrival rates of the three queues at one acceptance factor.
    When the primary queue is unstable the relay and secondary fields are
    NaN and C{violated} lists the broken constraints in the order
    primary, relay, secondary.
    '''

    def __init__(self, f, lambda_p, lambda_s, outages):
        self.f = f
        self.lambda_p = lambda_p
        self.lambda_s = lambda_s
        self.outages = outages
        self.mu_p = NAN
        self.lambda_ps = NAN
        self.mu_ps = NAN
        self.mu_s = NAN
        self.rho_p = NAN
        self.rho_ps = NAN
        self.rho_s = NAN
        self.violated = []

    @property
    def stable(self):
        return not self.violated

    def check_stable(self):
        if self.violated:
            raise InstabilityError(self.violated[0], self.f)

    def __repr__(self):
        return ('RateSet(f=%r, mu_p=%r, lambda_ps=%r, mu_ps=%r, mu_s=%r, '
                'stable=%r)' % (self.f, self.mu_p, self.lambda_ps, self.mu_ps,
                                self.mu_s, self.stable))


class DelayBreakdown(object):
    '''
    Mean delays in slots. C{d_s} = C{d1} + C{d2} + C{d3}, with C{d2}
    evaluated at the final C{d_s}.
    '''

    def __init__(self, d_p, d1, d2, d3, d_s, rates):
        self.d_p = d_p
        self.d1 = d1
        self.d2 = d2
        self.d3 = d3
        self.d_s = d_s
        self.rates = rates

    def __repr__(self):
        return 'DelayBreakdown(d_p=%r, d1=%r, d2=%r, d3=%r, d_s=%r)' % \
            (self.d_p, self.d1, self.d2, self.d3, self.d_s)


def geometric_moments(p):
    '''
    First and second service moments of a slotted transmission that
    succeeds with probability C{p} in every slot.
    '''
    if not 0 < p <= 1:
        raise ParameterError(_('success probability must be in (0, 1], '
                               'got %r') % p)
    return ServiceMoments(1.0 / p, (1.0 - p) / (p * p))


def _moments(mu):
    # rounding may push a rate a hair above one
    return geometric_moments(min(mu, 1.0))


def _utilization(lam, mu):
    if mu <= 0:
        return math.inf
    return lam * _moments(mu).e_s


def _check_f(f):
    if not 0 <= f <= 1:
        raise ParameterError(_('f must be in [0, 1], got %r') % f)


def link_outages(params):
    return dict((l, outage_probability(params.link(l))) for l in Link.all())


def rate_set(params, f):
    '''
    Evaluates the rates of the prioritized cognitive relaying protocol.

    @param params: network parameters
    @type params: L{relaygate.analytics.channel.NetworkParams}
    @param f: acceptance factor
    @type f: float
    @rtype: L{RateSet}
    '''
    _check_f(f)
    outages = link_outages(params)
    q_p = outages[Link.P]
    q_ps = outages[Link.PS]
    q_s = outages[Link.S]
    q_sp = outages[Link.SP]
    lambda_p = params.lambda_p

    rates = RateSet(f, lambda_p, params.lambda_s, outages)
    c = q_p * (1 - q_ps)
    rates.mu_p = (1 - q_p) + f * c
    if rates.mu_p <= lambda_p:
        rates.violated.append(PRIMARY)
        return rates

    u = lambda_p / rates.mu_p
    rates.rho_p = _utilization(lambda_p, rates.mu_p)
    rates.lambda_ps = f * q_p + f * c * u
    rates.mu_ps = (1 - u) * (1 - q_ps)
    rates.rho_ps = _utilization(rates.lambda_ps, rates.mu_ps)
    rates.mu_s = (1 - u) * (1 - q_s) * (1 - rates.rho_ps * (1 - q_sp))
    rates.rho_s = _utilization(params.lambda_s, rates.mu_s)
    if not rates.lambda_ps < rates.mu_ps:
        rates.violated.append(RELAY)
    if not params.lambda_s < rates.mu_s:
        rates.violated.append(SECONDARY)
    return rates


def primary_delay(params, f):
    rates = rate_set(params, f)
    if PRIMARY in rates.violated:
        raise InstabilityError(PRIMARY, f)
    return (1 - params.lambda_p) / (rates.mu_p - params.lambda_p)


def delay_breakdown(rates):
    d_p = (1 - rates.lambda_p) / (rates.mu_p - rates.lambda_p)
    r_s = _moments(rates.mu_s).residual()
    r_ps = _moments(rates.mu_ps).residual()
    # residual service seen by a secondary arrival, conditioned on the
    # primary queue being empty
    d1 = (rates.rho_s * r_s + rates.rho_ps * r_ps) / (1 - rates.rho_p)
    d3 = rates.rho_p * d_p
    # the rho_s * d_s part of the queueing term sits in the denominator
    d_s = (d1 + 2 * rates.rho_p * d_p) / (1 - rates.rho_s)
    d2 = rates.rho_p * d_p + rates.rho_s * d_s
    return DelayBreakdown(d_p, d1, d2, d3, d_s, rates)


def secondary_delay(params, f):
    '''
    Mean delay of the secondary packets.

    @raises InstabilityError: when any of the three queues is unstable
    @rtype: L{DelayBreakdown}
    '''
    rates = rate_set(params, f)
    rates.check_stable()
    return delay_breakdown(rates)


class _Slopes(object):
    ''' f-derivatives of the rate chain at one stable operating point '''

    def __init__(self, rates):
        q = rates.outages[Link.P]
        r_ps = 1 - rates.outages[Link.PS]
        r_s = 1 - rates.outages[Link.S]
        r_sp = 1 - rates.outages[Link.SP]
        lambda_p = rates.lambda_p
        f = rates.f
        c = q * r_ps
        u = rates.rho_p
        du = -lambda_p * c / rates.mu_p ** 2

        self.rho_p = du
        self.lambda_ps = q + c * u + f * c * du
        self.mu_ps = -du * r_ps
        self.rho_ps = (self.lambda_ps * rates.mu_ps -
                       rates.lambda_ps * self.mu_ps) / rates.mu_ps ** 2
        self.mu_s = -du * r_s * (1 - rates.rho_ps * r_sp) - \
            (1 - u) * r_s * r_sp * self.rho_ps
        self.rho_s = -rates.lambda_s * self.mu_s / rates.mu_s ** 2
        self.d_p = -(1 - lambda_p) * c / (rates.mu_p - lambda_p) ** 2
        self.r_ps = -self.mu_ps / (2 * rates.mu_ps ** 2)
        self.r_s = -self.mu_s / (2 * rates.mu_s ** 2)


def _exact_derivative(rates, delays, slopes):
    r_s = _moments(rates.mu_s).residual()
    r_ps = _moments(rates.mu_ps).residual()
    h = 1 / (1 - rates.rho_p)
    dh = slopes.rho_p * h * h
    residuals = rates.rho_s * r_s + rates.rho_ps * r_ps
    numerator = h * residuals + 2 * rates.rho_p * delays.d_p
    d_numerator = dh * residuals + \
        h * (slopes.rho_s * r_s + rates.rho_s * slopes.r_s +
             slopes.rho_ps * r_ps + rates.rho_ps * slopes.r_ps) + \
        2 * (slopes.rho_p * delays.d_p + rates.rho_p * slopes.d_p)
    denominator = 1 - rates.rho_s
    return (d_numerator * denominator + numerator * slopes.rho_s) / \
        denominator ** 2


def _appendix_derivative(rates, delays, slopes):
    # rho_p, rho_s and the Q_s residual frozen:
    #   D_s' = A * rho_ps' + B * D_p' + C
    #   A = R_ps / ((1 - rho_p)(1 - rho_s))
    #   B = 2 rho_p / (1 - rho_s)
    #   C = rho_ps * R_ps' / ((1 - rho_p)(1 - rho_s))
    r_ps = _moments(rates.mu_ps).residual()
    scale = 1 / ((1 - rates.rho_p) * (1 - rates.rho_s))
    a = r_ps * scale
    b = 2 * rates.rho_p / (1 - rates.rho_s)
    c = rates.rho_ps * slopes.r_ps * scale
    return a * slopes.rho_ps + b * slopes.d_p + c


def secondary_delay_derivative(params, f, mode=DerivativeMode.EXACT):
    '''
    Slope of the secondary delay with respect to the acceptance factor.

    In C{DerivativeMode.EXACT} every f-dependence of the rate chain is
    differentiated. C{DerivativeMode.APPENDIX} holds the primary and
    secondary utilizations constant and only follows the relay utilization
    and the primary delay.
    '''
    if mode not in DerivativeMode.all():
        raise ParameterError(_('unknown derivative mode %r') % mode)
    delays = secondary_delay(params, f)
    rates = delays.rates
    slopes = _Slopes(rates)
    if mode == DerivativeMode.APPENDIX:
        return _appendix_derivative(rates, delays, slopes)
    return _exact_derivative(rates, delays, slopes)
