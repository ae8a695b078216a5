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
Decidable relations between strings.

String structures interpret their predicate symbols through a fixed family
of relations. Each relation implements the `StringPredicate` protocol and
declares which arities it supports; a structure definition rejects a
predicate whose arity the relation cannot handle.

Main concepts:

- StringPredicate: Protocol implemented by the built-in relations.
- EqualLength, IsPrefix, SameString, EqualsLiteral: the built-in family.
- predicate_from_spec: Decode the JSON spelling of a relation.

Example:

>>> from modelbench.string_predicates import IsPrefix
>>> IsPrefix().holds("ab", "abb")
True
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Protocol, override

from .errors import InvalidDefinition


class StringPredicate(Protocol):
    """
    Protocol for relations between strings.
    """

    def supports_arity(self, arity: int) -> bool:
        """
        Whether the relation is defined for `arity` arguments.
        """
        ...

    def holds(self, *strings: str) -> bool:
        """
        Decide the relation for the given strings.

        Parameters:
            strings:
                The values of the argument lists, in order. Their number is an
                arity accepted by `supports_arity`.

        Returns:
            True if the strings stand in the relation.
        """
        ...


@dataclass(frozen=True)
class EqualLength(StringPredicate):
    """
    All strings have the same length. Defined for every arity of at least one.
    """

    @override
    def supports_arity(self, arity: int) -> bool:
        return arity >= 1

    @override
    def holds(self, *strings: str) -> bool:
        return len({len(s) for s in strings}) <= 1


@dataclass(frozen=True)
class SameString(StringPredicate):
    """
    All strings are identical. Defined for every arity of at least one.
    """

    @override
    def supports_arity(self, arity: int) -> bool:
        return arity >= 1

    @override
    def holds(self, *strings: str) -> bool:
        return len(set(strings)) <= 1


@dataclass(frozen=True)
class IsPrefix(StringPredicate):
    """
    The first string is a prefix of the second (not necessarily proper).
    """

    @override
    def supports_arity(self, arity: int) -> bool:
        return arity == 2

    @override
    def holds(self, *strings: str) -> bool:
        first, second = strings
        return second.startswith(first)


@dataclass(frozen=True)
class EqualsLiteral(StringPredicate):
    """
    The single argument equals a fixed string.
    """

    literal: str

    @override
    def supports_arity(self, arity: int) -> bool:
        return arity == 1

    @override
    def holds(self, *strings: str) -> bool:
        (value,) = strings
        return value == self.literal


_SIMPLE: dict[str, StringPredicate] = {
    "EqualLength": EqualLength(),
    "SameString": SameString(),
    "IsPrefix": IsPrefix(),
}


def predicate_from_spec(subject: str, spec: Any) -> StringPredicate:
    """
    Decode the JSON spelling of a relation: `"EqualLength"`, `"IsPrefix"`,
    `"SameString"` or `{"EqualsLiteral": "ab"}`.

    Raises:
        InvalidDefinition:
            If the spelling names no built-in relation.
    """
    if isinstance(spec, str) and spec in _SIMPLE:
        return _SIMPLE[spec]
    if isinstance(spec, dict) and set(spec) == {"EqualsLiteral"}:
        literal = spec["EqualsLiteral"]
        if isinstance(literal, str) and literal:
            return EqualsLiteral(literal)
    raise InvalidDefinition(subject, f"unknown string relation {spec!r}")
