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

import json
import math

from relaygate.analytics.channel import LinkParams, NetworkParams
from relaygate.enums import Link, StepRule, Nu2Update, EnergyPolicy, \
    BufferMode, DerivativeMode
from relaygate.errors import ConfigurationError, ParameterError
from relaygate.optimize.solver import SolverConfig
from relaygate.sim.simulator import SimConfig
from relaygate.utils import _


# key -> (kind, check, accepted range as printed in diagnostics)
_FLOAT = 'number'
_INT = 'integer'
_CHOICE = 'choice'

_RULES = {
    'lambda_p': (_FLOAT, lambda v: 0 <= v < 1, '[0, 1)'),
    'lambda_s': (_FLOAT, lambda v: 0 <= v < 1, '[0, 1)'),
    'gamma_th': (_FLOAT, lambda v: 0 < v <= 1, '(0, 1]'),
    'p_p': (_FLOAT, lambda v: v > 0, '(0, inf)'),
    'p_s': (_FLOAT, lambda v: v > 0, '(0, inf)'),
    'p_ps': (_FLOAT, lambda v: v > 0, '(0, inf)'),
    'p_sp': (_FLOAT, lambda v: v > 0, '(0, inf)'),
    'step_alpha': (_FLOAT, lambda v: v > 0, '(0, inf)'),
    'eps_conv': (_FLOAT, lambda v: v > 0, '(0, inf)'),
    'max_outer': (_INT, lambda v: v >= 1, '[1, inf)'),
    'max_inner': (_INT, lambda v: v >= 1, '[1, inf)'),
    'f_grid_step': (_FLOAT, lambda v: 0 < v <= 1e-2, '(0, 0.01]'),
    'step_rule': (_CHOICE, StepRule.all(), None),
    'nu2_update': (_CHOICE, Nu2Update.all(), None),
    'f': (_FLOAT, lambda v: 0 <= v <= 1, '[0, 1]'),
    'slots': (_INT, lambda v: v >= 1, '[1, inf)'),
    'warmup': (_INT, lambda v: v >= 0, '[0, slots)'),
    'seed': (_INT, lambda v: 0 <= v < 2 ** 64, '[0, 2^64)'),
    'buffer_k': (_INT, lambda v: v >= 0, '[0, inf) or null'),
    'overflow_k': (_INT, lambda v: v >= 0, '[0, inf)'),
    'replications': (_INT, lambda v: v >= 1, '[1, inf)'),
    'energy_policy': (_CHOICE, EnergyPolicy.all(), None),
    'buffer_mode': (_CHOICE, BufferMode.all(), None),
    'derivative_mode': (_CHOICE, DerivativeMode.all(), None),
}
for _link in Link.all():
    _RULES['gamma_th_%s_db' % _link] = (_FLOAT, math.isfinite, '(-inf, inf)')
    _RULES['sigma_%s_db' % _link] = (_FLOAT, math.isfinite, '(-inf, inf)')

_NULLABLE = ['buffer_k']


class Config(object):

    _properties = ['lambda_p', 'lambda_s',
                   'gamma_th_p_db', 'gamma_th_s_db', 'gamma_th_ps_db',
                   'gamma_th_sp_db', 'sigma_p_db', 'sigma_s_db',
                   'sigma_ps_db', 'sigma_sp_db', 'p_p', 'p_s', 'p_ps', 'p_sp',
                   'gamma_th', 'step_alpha', 'eps_conv', 'max_outer',
                   'max_inner', 'f_grid_step', 'step_rule', 'nu2_update',
                   'f', 'slots', 'warmup', 'seed', 'buffer_k', 'overflow_k',
                   'replications', 'energy_policy', 'buffer_mode',
                   'derivative_mode']

    def __init__(self):
        for a in self._properties:
            setattr(self, a, None)
        self.filename = None

    def load(self, filename=None, overrides=None):
        '''
        Loads the defaults, then C{filename} (JSON) and finally the
        C{key=value} C{overrides}, and validates the result.
        '''
        self.load_defaults()
        if filename is not None:
            self.filename = filename
            try:
                with open(filename, 'r') as f:
                    text = f.read()
            except IOError as e:
                raise ConfigurationError(_('Could not read config file '
                                           '(%s): %s') % (filename, e))
            self._parse(text, filename)
        for override in overrides or []:
            self.apply_override(override)
        self._validate_properties()

    def load_text(self, text, overrides=None):
        self.load_defaults()
        self._parse(text, '<text>')
        for override in overrides or []:
            self.apply_override(override)
        self._validate_properties()

    def load_defaults(self):
        self.set_property('lambda_p', 0.3)
        self.set_property('lambda_s', 0.1)
        for link in Link.all():
            self.set_property('gamma_th_%s_db' % link, 0.0)
        self.set_property('sigma_p_db', 4.0)
        self.set_property('sigma_ps_db', 12.0)
        self.set_property('sigma_sp_db', 8.0)
        self.set_property('sigma_s_db', 12.0)
        self.set_property('p_p', 1.0)
        self.set_property('p_s', 1.0)
        self.set_property('p_ps', 1.0)
        self.set_property('p_sp', 0.25)
        self.set_property('gamma_th', 0.2)
        self.set_property('step_alpha', 0.1)
        self.set_property('eps_conv', 1e-5)
        self.set_property('max_outer', 200)
        self.set_property('max_inner', 500)
        self.set_property('f_grid_step', 1e-3)
        self.set_property('step_rule', StepRule.POLYAK)
        self.set_property('nu2_update', Nu2Update.DUAL_ASCENT)
        self.set_property('f', 0.5)
        self.set_property('slots', 100000)
        self.set_property('warmup', 1000)
        self.set_property('seed', 0)
        self.set_property('buffer_k', None)
        self.set_property('overflow_k', 5)
        self.set_property('replications', 4)
        self.set_property('energy_policy', EnergyPolicy.MAX_POWER)
        self.set_property('buffer_mode', BufferMode.GEOMETRIC_MATCHED)
        self.set_property('derivative_mode', DerivativeMode.EXACT)

    def set_property(self, name, value, force=False):
        if name not in self._properties:
            raise ConfigurationError(_('Unknown key %s') % name)
        if force or getattr(self, name) is None:
            setattr(self, name, value)

    def apply_override(self, override):
        if '=' not in override:
            raise ConfigurationError(_("override '%s' is not of the form "
                                       "key=value") % override)
        key, value = override.split('=', 1)
        key = key.strip()
        try:
            value = json.loads(value)
        except ValueError:
            value = value.strip()
        self.set_property(key, value, True)

    def _parse(self, text, filename):
        try:
            data = json.loads(text) if text.strip() else {}
        except ValueError as e:
            raise ConfigurationError(_('Could not parse config file (%s): %s')
                                     % (filename, e))
        if not isinstance(data, dict):
            raise ConfigurationError(_('config file (%s) must hold a JSON '
                                       'object') % filename)
        for key, value in data.items():
            self.set_property(key, value, True)

    def _validate_properties(self):
        for key in self._properties:
            value = getattr(self, key)
            if value is None:
                if key in _NULLABLE:
                    continue
                raise ConfigurationError(_('%s: missing value') % key)
            setattr(self, key, self._check(key, value))
        if self.warmup >= self.slots:
            raise ConfigurationError(_('warmup: %r outside accepted range '
                                       '[0, slots=%r)') %
                                     (self.warmup, self.slots))

    def _check(self, key, value):
        kind, check, accepted = _RULES[key]
        if kind == _CHOICE:
            if value not in check:
                raise ConfigurationError(_('%s: %r is not one of %s') %
                                         (key, value, ', '.join(check)))
            return value
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigurationError(_('%s: expected a %s, got %r') %
                                     (key, kind, value))
        if kind == _INT:
            if isinstance(value, float):
                if not value.is_integer():
                    raise ConfigurationError(_('%s: expected an integer, '
                                               'got %r') % (key, value))
                value = int(value)
        else:
            value = float(value)
        if not check(value):
            raise ConfigurationError(_('%s: %r outside accepted range %s') %
                                     (key, value, accepted))
        return value

    def link_params(self, link):
        return LinkParams.from_db(getattr(self, 'gamma_th_%s_db' % link),
                                  getattr(self, 'sigma_%s_db' % link),
                                  getattr(self, 'p_%s' % link))

    def network_params(self):
        try:
            links = dict((l, self.link_params(l)) for l in Link.all())
            return NetworkParams(links, self.lambda_p, self.lambda_s)
        except ParameterError as e:
            raise ConfigurationError(e.msg)

    def solver_config(self, gamma_th=None):
        if gamma_th is None:
            gamma_th = self.gamma_th
        try:
            return SolverConfig(gamma_th, self.step_alpha, self.eps_conv,
                                self.max_outer, self.max_inner,
                                self.f_grid_step, self.step_rule,
                                self.nu2_update)
        except ParameterError as e:
            raise ConfigurationError(e.msg)

    def sim_config(self, f=None, params=None, trace=False):
        if f is None:
            f = self.f
        if params is None:
            params = self.network_params()
        try:
            return SimConfig(params, f, self.slots, self.warmup, self.seed,
                             self.buffer_k, self.replications,
                             self.energy_policy, trace=trace)
        except ParameterError as e:
            raise ConfigurationError(e.msg)

    def bundle(self):
        return self.network_params(), self.solver_config(), self.sim_config()


def parse_config(text, overrides=None):
    '''
    Parses JSON configuration text into the network, solver and simulator
    settings.

    @raises ConfigurationError: on malformed text, unknown keys or values
                                outside their accepted range
    @return: (NetworkParams, SolverConfig, SimConfig)
    @rtype: tuple
    '''
    config = Config()
    config.load_text(text, overrides)
    return config.bundle()
