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
Report types and builders for modelbench checks.

Checks that examine many cases (substitution coherence, fragment
consistency, subset-friendliness, truth transfer) produce a `Report`: an
overall outcome, a summary line, optional details and one entry per examined
aspect. Reports are built incrementally with `build_report`.

Notes:
    Reports print deterministically. The CLI writes `Report.lines()` verbatim
    and exits with `Report.exit_code`.
"""

from __future__ import annotations

import traceback
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

Details = str | dict | Exception


def normalize_details(details: Details | None) -> str | None:
    """
    Render report details as text: exceptions with their traceback, mappings as
    one `key: value` line per item. Blank text becomes `None`.
    """
    match details:
        case None:
            return None
        case Exception():
            return "".join(traceback.format_exception(details))
        case dict():
            return "\n".join(f"{key}: {value}" for key, value in details.items())
        case str() if not details.strip():
            return None
        case _:
            return details


class Outcome(Enum):
    """
    The outcome of a check or of one of its aspects.
    """

    PASS = 0
    FAIL = 1
    UNKNOWN = 2

    def __lt__(self, other: Outcome) -> bool:
        return self.value < other.value

    @property
    def exit_code(self) -> int:
        """
        The CLI exit code: 0 for an affirmative answer, 1 otherwise.
        """
        return 0 if self is Outcome.PASS else 1


@dataclass(frozen=True)
class ReportEntry:
    """
    One examined aspect of a check.
    """

    label: str
    """
    A short, unique identification of the aspect.
    """

    outcome: Outcome

    summary: str

    details: str | None = None

    witness: Any = None
    """
    The concrete value demonstrating a failure, if any.
    """

    def __str__(self) -> str:
        line = f"[{self.outcome.name}] {self.label}: {self.summary}"
        if self.details:
            return f"{line}\n{self.details}"
        return line


@dataclass(frozen=True)
class Report:
    """
    The result of a check that examined several aspects.
    """

    outcome: Outcome
    summary: str
    details: str | None = None
    entries: tuple[ReportEntry, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return self.outcome is Outcome.PASS

    @property
    def exit_code(self) -> int:
        return self.outcome.exit_code

    def entry(self, label: str) -> ReportEntry:
        """
        Return the entry with the given label.

        Raises:
            KeyError:
                If no entry has this label.
        """
        for entry in self.entries:
            if entry.label == label:
                return entry
        raise KeyError(label)

    def failures(self) -> tuple[ReportEntry, ...]:
        return tuple(e for e in self.entries if e.outcome is Outcome.FAIL)

    def lines(self) -> list[str]:
        """
        The printable form of the report, one string per line.
        """
        lines = [f"{self.outcome.name}: {self.summary}"]
        if self.details:
            lines.extend(self.details.splitlines())
        for entry in self.entries:
            lines.extend(f"  {line}" for line in str(entry).splitlines())
        return lines


class OngoingReport:
    """
    An "ongoing report" is a builder that collects the outcome of each examined
    aspect, called "partials", and eventually produces a `Report` holding the
    worst outcome among them.

    Constructing this builder is recommended through the top-level
    `build_report` available in this module.
    """

    def __init__(
        self,
        ok_summary: str,
        fail_summary: str,
        base_details: Details | None = None,
    ):
        """
        NOTE: please prefer using the `build_report` function available in this
        module instead of calling this constructor directly.
        """

        self.ok_summary = ok_summary
        self.fail_summary = fail_summary
        self.base_details = base_details
        self.results: list[ReportEntry] = []

    @property
    def outcome(self) -> Outcome:
        """
        The overall outcome of the builder, calculated based on the worst
        outcome of the individual partials.
        """

        if not self.results:
            return Outcome.PASS

        # FAIL is the worst outcome, even though numerically UNKNOWN is higher.
        if any(result.outcome is Outcome.FAIL for result in self.results):
            return Outcome.FAIL

        return max(result.outcome for result in self.results)

    def add_entry(self, entry: ReportEntry) -> None:
        self.results.append(entry)

    def passed(
        self,
        label: str,
        summary: str,
        details: Details | None = None,
    ) -> None:
        """
        Record an aspect that holds.
        """

        self.results.append(
            ReportEntry(label, Outcome.PASS, summary, normalize_details(details))
        )

    def failed(
        self,
        label: str,
        summary: str,
        details: Details | None = None,
        witness: Any = None,
    ) -> None:
        """
        Record an aspect that is violated.

        Parameters:
            label:
                A short, unique identification of the aspect.
            summary:
                What was violated.
            details:
                Additional information, rendered below the summary.
            witness:
                The value demonstrating the violation.
        """

        self.results.append(
            ReportEntry(
                label, Outcome.FAIL, summary, normalize_details(details), witness
            )
        )

    def unknown(
        self,
        label: str,
        summary: str,
        details: Details | None = None,
    ) -> None:
        """
        Record an aspect that could not be decided within the bounds.
        """

        self.results.append(
            ReportEntry(label, Outcome.UNKNOWN, summary, normalize_details(details))
        )

    def to_report(self) -> Report:
        """
        Finalize this builder by turning it into a report.
        """

        outcome = self.outcome
        return Report(
            outcome=outcome,
            summary=self.ok_summary if outcome is Outcome.PASS else self.fail_summary,
            details=normalize_details(self.base_details),
            entries=tuple(self.results),
        )


def build_report(
    ok_summary: str,
    fail_summary: str,
    base_details: Details | None = None,
) -> OngoingReport:
    """
    Start building up a new report that collects PASS/FAIL/UNKNOWN partials,
    eventually resulting in a report that holds the worst outcome provided by
    the individual partials.

    Parameters:
        ok_summary:
            Overall summary that will be shown if the final outcome is PASS.
        fail_summary:
            Overall summary that will be shown if the final outcome is FAIL or
            UNKNOWN.
        base_details:
            Optional details that are always included, for example counts.

    Returns:
        An instance of OngoingReport ready to receive partials.
    """

    return OngoingReport(
        ok_summary=ok_summary,
        fail_summary=fail_summary,
        base_details=base_details,
    )
