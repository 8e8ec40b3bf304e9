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
import sys
from contextlib import contextmanager


INFEASIBLE = 'infeasible'
FLOAT_FMT = '%.10g'


def format_cell(value):
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, float):
        return FLOAT_FMT % value
    return str(value)


def write_rows(fileobj, headers, rows, comments=None):
    '''
    Writes C{rows} as CSV with a fixed header line. Optional comment lines
    are emitted first with a leading '#'.
    '''
    for comment in comments or []:
        fileobj.write('# %s\n' % comment)
    writer = csv.writer(fileobj, lineterminator='\n')
    writer.writerow(headers)
    for row in rows:
        writer.writerow([format_cell(v) for v in row])


@contextmanager
def open_output(path):
    ''' Opens C{path} for writing, '-' or None meaning stdout '''
    if path in (None, '-'):
        yield sys.stdout
        return
    dirname = os.path.dirname(path)
    if dirname and not os.path.isdir(dirname):
        os.makedirs(dirname)
    with open(path, 'w', newline='') as f:
        yield f


def write_csv(path, headers, rows, comments=None):
    with open_output(path) as f:
        write_rows(f, headers, rows, comments)
