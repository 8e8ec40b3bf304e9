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

import os
import asyncio
import gettext
import threading
from collections.abc import Iterable
from concurrent.futures import ProcessPoolExecutor

from relaygate.errors import ConfigurationError


_ = gettext.gettext
N_ = lambda x: x

THREADS_ENV = 'RELAY_GATE_THREADS'


class ArgparseArgument(object):

    def __init__(self, *name, **kwargs):
        self.name = name
        self.args = kwargs

    def add_to_parser(self, parser):
        parser.add_argument(*self.name, **self.args)


def determine_num_of_cpus():
    ''' Number of virtual or physical CPUs on this system '''
    try:
        import multiprocessing
        return multiprocessing.cpu_count()
    except (ImportError, NotImplementedError):
        return 1


def max_concurrency():
    '''
    Number of concurrent workers, capped by the RELAY_GATE_THREADS
    environment variable when it is set.
    '''
    value = os.environ.get(THREADS_ENV, '')
    if value == '':
        return determine_num_of_cpus()
    try:
        threads = int(value)
    except ValueError:
        raise ConfigurationError(_('%s must be an integer, got %r') %
                                 (THREADS_ENV, value))
    if threads < 1:
        raise ConfigurationError(_('%s must be >= 1, got %d') %
                                 (THREADS_ENV, threads))
    return threads


def db_to_linear(value_db):
    return 10.0 ** (value_db / 10.0)


def get_event_loop():
    try:
        loop = asyncio.get_event_loop()
    except RuntimeError:
        loop = asyncio.new_event_loop()
        asyncio.set_event_loop(loop)
    if loop.is_closed():
        loop = asyncio.new_event_loop()
        asyncio.set_event_loop(loop)
    return loop


def run_until_complete(tasks, max_concurrent=None):
    '''
    Runs one or many tasks, blocking until all of them have finished.
    @param tasks: A single coroutine or a list of coroutines to run
    @type tasks: coroutine or list of coroutines
    @param max_concurrent: Number of concurrent tasks to execute
    @type max_concurrent: int
    @return: the result of the task (if only one task) or the list of
             results in submission order. Result is None if the operation
             is cancelled.
    @rtype: any type or list of any types in case of multiple tasks
    '''
    if not tasks:
        return

    loop = get_event_loop()

    # An event loop cannot be run within another one, so nested calls get
    # their own thread and loop.
    if loop.is_running():
        result = []

        def _nested():
            asyncio.set_event_loop(asyncio.new_event_loop())
            result.append(run_until_complete(tasks, max_concurrent))

        thread = threading.Thread(target=_nested)
        thread.start()
        thread.join()
        return result[0] if result else None

    try:
        if isinstance(tasks, Iterable):
            if not max_concurrent:
                result = loop.run_until_complete(asyncio.gather(*tasks))
            else:
                async def _worker(semaphore, task):
                    async with semaphore:
                        return await task

                semaphore = asyncio.Semaphore(max_concurrent)
                worker_tasks = [_worker(semaphore, task) for task in tasks]
                result = loop.run_until_complete(asyncio.gather(*worker_tasks))
        else:
            result = loop.run_until_complete(tasks)
        return result
    except asyncio.CancelledError:
        return None


def run_in_processes(funcs, max_concurrent=None):
    '''
    Runs blocking callables on a process pool through the event loop and
    returns their results in the order of C{funcs}. The callables, their
    arguments and their results must be picklable: module-level
    functions or L{functools.partial} objects wrapping them.

    @param funcs: callables taking no arguments
    @type funcs: list
    @param max_concurrent: number of worker processes, RELAY_GATE_THREADS
                           or the number of CPUs by default
    @type max_concurrent: int
    '''
    funcs = list(funcs)
    if not funcs:
        return []
    if max_concurrent is None:
        max_concurrent = max_concurrency()
    if max_concurrent == 1 or len(funcs) == 1:
        return [func() for func in funcs]

    workers = min(max_concurrent, len(funcs))
    with ProcessPoolExecutor(max_workers=workers) as executor:
        async def _call(func):
            loop = asyncio.get_running_loop()
            return await loop.run_in_executor(executor, func)

        return run_until_complete([_call(func) for func in funcs],
                                  max_concurrent)
