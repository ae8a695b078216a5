# Copyright 2025 TAKKT Industrial & Packaging GmbH
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
#
# SPDX-License-Identifier: Apache-2.0

"""
Threaded sweep executor for modelbench.

Brute-force searches split their candidate space into independent branches
(for example one branch per image of the first individual). The executor runs
those branches on a thread pool and hands the results back in input order,
so reports never depend on scheduling.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterable
from concurrent.futures import ALL_COMPLETED, Future, ThreadPoolExecutor, wait
from dataclasses import dataclass
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from types import TracebackType

logger = logging.getLogger(f"{__package__}.{__name__}")


class SweepExecutor[T]:
    """
    Run the branches of a sweep concurrently and collect their results in
    input order.

    With `max_workers=1` the branches run one after another on a single
    worker thread, which gives the same results as any other worker count.
    """

    @dataclass
    class Statistics:
        """
        Summary statistics of the branches swept so far.
        """

        total: int
        """
        Number of branches submitted.
        """
        completed: int
        """
        Number of branches that finished with a result.
        """
        errored: int
        """
        Number of branches that finished with an exception.
        """
        running: int
        """
        Number of branches not yet finished.
        """

    def __init__(self, max_workers: int | None = 1):
        self.executor = ThreadPoolExecutor(
            max_workers=max_workers, thread_name_prefix="modelbench-sweep"
        )
        self._futures: list[Future[T]] = []

    def __enter__(self) -> SweepExecutor[T]:
        return self

    def __exit__(
        self,
        exc_type: type[BaseException] | None,
        exc_val: BaseException | None,
        exc_tb: TracebackType | None,
    ) -> None:
        self.shutdown(wait=True)

    def shutdown(self, wait: bool = False) -> None:
        self.executor.shutdown(wait=wait)

    def statistics(self) -> SweepExecutor.Statistics:
        completed = 0
        errored = 0
        for future in self._futures:
            if not future.done():
                continue
            if future.exception() is not None:
                errored += 1
            else:
                completed += 1

        return SweepExecutor.Statistics(
            total=len(self._futures),
            completed=completed,
            errored=errored,
            running=len(self._futures) - completed - errored,
        )

    def map_ordered[I](self, func: Callable[[I], T], items: Iterable[I]) -> list[T]:
        """
        Apply `func` to every item concurrently.

        Parameters:
            func:
                The branch to run for each item.
            items:
                The items, one branch each.

        Returns:
            The results in the order of `items`.

        Raises:
            Exception:
                The exception of the first failing item (in input order), raised
                after every branch has finished.
        """
        futures = [self.executor.submit(func, item) for item in items]
        self._futures.extend(futures)
        logger.debug("Sweeping %s items", len(futures))
        wait(futures, return_when=ALL_COMPLETED)

        for future in futures:
            if (exception := future.exception()) is not None:
                raise exception

        return [future.result() for future in futures]
