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
Rayleigh block-fading links: outage probabilities, the expected power of the
minimum-power transmission policy and the share of secondary energy spent on
relaying.
'''

import math

from scipy.special import exp1

from relaygate.enums import Link
from relaygate.errors import ParameterError
from relaygate.utils import _, db_to_linear


class LinkParams(object):
    '''
    One fading link.

    @ivar gamma_th: linear SNR threshold
    @ivar sigma2: linear mean channel power gain
    @ivar p_max: maximum transmit power
    '''

    def __init__(self, gamma_th, sigma2, p_max):
        self.gamma_th = float(gamma_th)
        self.sigma2 = float(sigma2)
        self.p_max = float(p_max)
        self._validate()

    @classmethod
    def from_db(cls, gamma_th_db, sigma2_db, p_max):
        return cls(db_to_linear(gamma_th_db), db_to_linear(sigma2_db), p_max)

    def _validate(self):
        for name in ['gamma_th', 'sigma2', 'p_max']:
            if not math.isfinite(getattr(self, name)):
                raise ParameterError(_('%s must be finite') % name)
        if self.gamma_th < 0:
            raise ParameterError(_('gamma_th must be >= 0, got %r') %
                                 self.gamma_th)
        if self.sigma2 <= 0:
            raise ParameterError(_('sigma2 must be > 0, got %r') % self.sigma2)
        if self.p_max <= 0:
            raise ParameterError(_('p_max must be > 0, got %r') % self.p_max)

    def __repr__(self):
        return 'LinkParams(gamma_th=%r, sigma2=%r, p_max=%r)' % \
            (self.gamma_th, self.sigma2, self.p_max)


class NetworkParams(object):
    '''
    The four links of the cognitive relay network together with the
    Bernoulli arrival rates of the primary and secondary sources.
    '''

    def __init__(self, links, lambda_p, lambda_s):
        missing = [l for l in Link.all() if l not in links]
        unknown = [l for l in links if l not in Link.all()]
        if missing or unknown:
            raise ParameterError(
                _('links must be exactly %s (missing: %s, unknown: %s)') %
                (', '.join(Link.all()), missing, unknown))
        for name, link in links.items():
            if not isinstance(link, LinkParams):
                raise ParameterError(_('link %s is not a LinkParams') % name)
        self.links = dict(links)
        self.lambda_p = float(lambda_p)
        self.lambda_s = float(lambda_s)
        for name in ['lambda_p', 'lambda_s']:
            value = getattr(self, name)
            if not 0 <= value < 1:
                raise ParameterError(_('%s must be in [0, 1), got %r') %
                                     (name, value))

    def link(self, name):
        return self.links[name]

    def with_rates(self, lambda_p=None, lambda_s=None):
        if lambda_p is None:
            lambda_p = self.lambda_p
        if lambda_s is None:
            lambda_s = self.lambda_s
        return NetworkParams(self.links, lambda_p, lambda_s)

    def __repr__(self):
        return 'NetworkParams(lambda_p=%r, lambda_s=%r, links=%r)' % \
            (self.lambda_p, self.lambda_s, self.links)


class PowerBudgetReport(object):
    '''
    Relay power budget at one operating point.

    @ivar gamma: fraction of the secondary energy spent relaying
    @ivar e_psp: expected power on the relay link towards the primary
    @ivar e_ps: expected power on the secondary's own link
    @ivar eps_sp: E1 factor of the relay link
    @ivar eps_s: E1 factor of the secondary link
    '''

    def __init__(self, gamma, e_psp, e_ps, eps_sp, eps_s):
        self.gamma = gamma
        self.e_psp = e_psp
        self.e_ps = e_ps
        self.eps_sp = eps_sp
        self.eps_s = eps_s

    def __repr__(self):
        return 'PowerBudgetReport(gamma=%r)' % self.gamma


def exponential_integral(x):
    '''
    E1(x), the exponential integral of order one

    @param x: argument, x >= 0
    @type x: float
    @return: E1(x), +inf at x = 0
    @rtype: float
    '''
    if x < 0 or math.isnan(x):
        raise ParameterError(_('E1 argument must be >= 0, got %r') % x)
    if x == 0:
        return math.inf
    value = float(exp1(x))
    if math.isnan(value):
        raise ParameterError(_('E1 is undefined at %r') % x)
    return value


def outage_probability(link):
    return -math.expm1(-link.gamma_th / (link.sigma2 * link.p_max))


def _eps(link):
    # E1 factor; the product gamma_th * E1 vanishes as gamma_th goes to 0
    if link.gamma_th == 0:
        return 0.0
    return exponential_integral(link.gamma_th / (link.sigma2 * link.p_max))


def expected_relay_power(link):
    '''
    Mean transmit power of the minimum-power policy P = gamma_th / |g|^2
    restricted to the non-outage region |g|^2 >= gamma_th / p_max.
    '''
    if link.gamma_th == 0:
        return 0.0
    return link.gamma_th / link.sigma2 * _eps(link)


def power_budget(params, f, lambda_ps):
    '''
    Fraction of the secondary node energy spent forwarding primary packets.

    @param params: network parameters
    @type params: L{NetworkParams}
    @param f: acceptance factor
    @type f: float
    @param lambda_ps: arrival rate to the relay queue at C{f}
    @type lambda_ps: float
    @rtype: L{PowerBudgetReport}
    '''
    if not 0 <= f <= 1:
        raise ParameterError(_('f must be in [0, 1], got %r') % f)
    if lambda_ps < 0 or math.isnan(lambda_ps):
        raise ParameterError(_('lambda_ps must be >= 0, got %r') % lambda_ps)
    sp = params.link(Link.SP)
    s = params.link(Link.S)
    eps_sp = _eps(sp)
    eps_s = _eps(s)
    num = lambda_ps * sp.gamma_th * eps_sp * s.sigma2
    den = num + params.lambda_s * s.gamma_th * eps_s * sp.sigma2
    gamma = 0.0 if den == 0 else num / den
    return PowerBudgetReport(gamma, expected_relay_power(sp),
                             expected_relay_power(s), eps_sp, eps_s)
