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


class Link:
    ''' Enumeration of the radio links of the cognitive relay network '''
    P = 'p'
    S = 's'
    PS = 'ps'
    SP = 'sp'

    @staticmethod
    def all():
        return [Link.P, Link.S, Link.PS, Link.SP]


class BufferMode:
    ''' Enumeration of the overflow models for the relay buffer '''
    LITERAL = 'literal'
    GEOMETRIC_MATCHED = 'geometric_matched'

    @staticmethod
    def all():
        return [BufferMode.LITERAL, BufferMode.GEOMETRIC_MATCHED]


class DerivativeMode:
    ''' Enumeration of the ways the delay slope can be computed '''
    EXACT = 'exact'
    APPENDIX = 'appendix'

    @staticmethod
    def all():
        return [DerivativeMode.EXACT, DerivativeMode.APPENDIX]


class StepRule:
    ''' Enumeration of subgradient step-size schedules '''
    CONSTANT = 'constant'
    DIMINISHING = 'diminishing'
    POLYAK = 'polyak'

    @staticmethod
    def all():
        return [StepRule.CONSTANT, StepRule.DIMINISHING, StepRule.POLYAK]


class Nu2Update:
    '''
    Enumeration of the update rules for the power budget multiplier.
    LITERAL reproduces the printed rule, which steps along nu1.
    '''
    DUAL_ASCENT = 'dual_ascent'
    LITERAL = 'literal'

    @staticmethod
    def all():
        return [Nu2Update.DUAL_ASCENT, Nu2Update.LITERAL]


class EnergyPolicy:
    ''' Energy charged to a failed secondary transmission '''
    MAX_POWER = 'max_power'
    FREE = 'free'

    @staticmethod
    def all():
        return [EnergyPolicy.MAX_POWER, EnergyPolicy.FREE]


class ExitCode:
    SUCCESS = 0
    USAGE = 1
    CONFIG = 2
    INFEASIBLE = 3
    NOT_CONVERGED = 4
