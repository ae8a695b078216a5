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
Resource limits for enumerations and searches.

Every operation that enumerates a potentially large space accepts an optional
`limits` argument. The CLI builds a `Limits` instance from its options (which
click also reads from `MODELBENCH_*` environment variables).
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Limits:
    """
    Caps applied by the enumerating operations.
    """

    enumeration_cap: int = 200_000
    """
    Maximum number of ground argument lists `enumerate_ground` may produce.
    """

    morphism_universe_cap: int = 8
    """
    Maximum source-universe size for `enumerate_morphisms`.
    """

    power_set_cap: int = 10
    """
    Maximum number of members of a set whose power set may be built.
    """

    fragment_cap: int = 200_000
    """
    Maximum number of formulas a bounded fragment may contain.
    """

    workers: int = 1
    """
    Number of worker threads used by sweeps. Output order does not depend on
    this value.
    """

    def __post_init__(self) -> None:
        for field_name in (
            "enumeration_cap",
            "morphism_universe_cap",
            "power_set_cap",
            "fragment_cap",
            "workers",
        ):
            if getattr(self, field_name) < 1:
                raise ValueError(f"{field_name} must be at least 1")


DEFAULT_LIMITS = Limits()
