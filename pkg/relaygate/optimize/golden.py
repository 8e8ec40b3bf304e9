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

import math


INVPHI = (math.sqrt(5) - 1) / 2


def golden_section(func, lo, hi, tol=1e-10, max_iter=200):
    '''
    Minimizes a unimodal C{func} on [C{lo}, C{hi}] by golden-section
    search, reusing one interior evaluation per step.

    @return: (argmin, minimum) over the interior evaluation points
    @rtype: tuple
    '''
    if hi < lo:
        lo, hi = hi, lo
    c = hi - INVPHI * (hi - lo)
    d = lo + INVPHI * (hi - lo)
    fc = func(c)
    fd = func(d)
    for _ in range(max_iter):
        if hi - lo <= tol:
            break
        if fc <= fd:
            hi, d, fd = d, c, fc
            c = hi - INVPHI * (hi - lo)
            fc = func(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + INVPHI * (hi - lo)
            fd = func(d)
    if fc <= fd:
        return c, fc
    return d, fd
