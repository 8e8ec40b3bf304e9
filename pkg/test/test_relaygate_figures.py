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

import csv
import os
import shutil
import tempfile
import unittest

from relaygate import figures
from relaygate.errors import UsageError
from relaygate.utils.table import INFEASIBLE
from test.test_common import default_config


def read_csv(path):
    with open(path, 'r') as f:
        return list(csv.reader(f))


class FiguresTest(unittest.TestCase):

    def setUp(self):
        self.tmp = tempfile.mkdtemp()
        self.config = default_config(['max_outer=20', 'eps_conv=1e-4'])

    def tearDown(self):
        shutil.rmtree(self.tmp)

    def _figure_set(self, out_dir=None):
        fs = figures.FigureSet(self.config, out_dir or self.tmp,
                               max_concurrent=2)
        fs.lambda_p_sweep = [0.3, 0.65]
        fs.lambda_s_sweep = [0.1, 0.3]
        fs.gamma_th_sweep = [0.2, 1.0]
        fs.shadow_ranges = {'nu1': [0.0], 'nu2': [0.0, 1.0]}
        fs.shadow_lambda_p = [0.1, 0.99]
        fs.shadow_lambda_s = [0.1]
        fs.shadow_gamma_th = [0.2]
        return fs

    def testTradeoff(self):
        paths = self._figure_set().run(['fig2'])
        rows = read_csv(paths['fig2'])
        self.assertEqual(rows[0], figures.HEADERS['fig2'])
        self.assertEqual(len(rows), 102)
        d_s = [float(r[1]) for r in rows[1:]]
        gamma = [float(r[2]) for r in rows[1:]]
        for a, b in zip(d_s, d_s[1:]):
            self.assertLess(b, a)
        for a, b in zip(gamma, gamma[1:]):
            self.assertGreater(b, a)

    def testSweeps(self):
        paths = self._figure_set().run(['fig4a', 'fig4c'])
        rows = read_csv(paths['fig4a'])
        self.assertEqual(rows[0], figures.HEADERS['fig4a'])
        self.assertEqual(rows[2], ['0.65'] + [INFEASIBLE] * 4)
        self.assertEqual(rows[1][4], 'true')
        rows = read_csv(paths['fig4c'])
        self.assertLess(float(rows[1][1]), float(rows[2][1]))
        for row in rows[1:]:
            self.assertLessEqual(float(row[3]), float(row[0]) + 1e-6)

    def testShadowPrices(self):
        paths = self._figure_set().run(['fig5a'])
        rows = read_csv(paths['fig5a'])
        self.assertEqual(rows[0], figures.HEADERS['fig5a'])
        self.assertEqual(len(rows), 5)
        self.assertEqual(rows[3][4:], [INFEASIBLE] * 5)
        self.assertEqual(float(rows[1][4]), 1.0)

    def testBuffers(self):
        paths = self._figure_set().run(['fig6'])
        rows = read_csv(paths['fig6'])
        self.assertEqual(rows[0], figures.HEADERS['fig6'])
        self.assertEqual(len(rows), 7)
        checked = 0
        for row in rows[1:]:
            if row[2] == INFEASIBLE:
                continue
            p_ov, p_b = float(row[4]), float(row[5])
            self.assertLessEqual(p_b, p_ov)
            self.assertGreaterEqual(p_b, 0.0)
            checked += 1
        self.assertEqual(checked, 5)

    def testDeterministic(self):
        other = tempfile.mkdtemp()
        try:
            names = ['fig2', 'fig4b', 'fig5b']
            first = self._figure_set().run(names)
            second = self._figure_set(other).run(names)
            for name in names:
                with open(first[name], 'rb') as a, \
                        open(second[name], 'rb') as b:
                    self.assertEqual(a.read(), b.read())
        finally:
            shutil.rmtree(other)

    def testUnknownFigure(self):
        self.assertRaises(UsageError, self._figure_set().run, ['fig3'])

    def testAllFigures(self):
        paths = self._figure_set().run()
        self.assertEqual(sorted(paths), sorted(figures.FIGURES))
        for path in paths.values():
            self.assertTrue(os.path.isfile(path))
