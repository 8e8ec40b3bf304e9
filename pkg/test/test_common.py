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

from relaygate.analytics.channel import LinkParams, NetworkParams
from relaygate.config import Config
from relaygate.enums import Link


def default_config(overrides=None):
    config = Config()
    config.load(None, overrides)
    return config


def default_params(lambda_p=0.3, lambda_s=0.1):
    return default_config().network_params().with_rates(lambda_p, lambda_s)


def symmetric_params(lambda_p=0.3, lambda_s=0.1, gamma_th=1.0, sigma2=10.0,
                     p_max=1.0):
    links = dict((l, LinkParams(gamma_th, sigma2, p_max))
                 for l in Link.all())
    return NetworkParams(links, lambda_p, lambda_s)


def fd_derivative(func, x, h=1e-6):
    return (func(x + h) - func(x - h)) / (2 * h)
