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
Exceptions raised by modelbench.

All errors derive from `ModelbenchError` and carry the offending values as
attributes, so callers (and the CLI) can render precise messages without
parsing strings.

Notes:
    Definition files are validated completely before any error is raised. The
    individual problems are `InvalidDefinition` errors, grouped into an
    `ExceptionGroup`.
"""

from __future__ import annotations

from typing import Any


class ModelbenchError(Exception):
    """
    Base class of every error raised by modelbench.
    """


class InvalidDefinition(ModelbenchError):
    """
    A language or structure definition violates one of its invariants.
    """

    def __init__(self, subject: str, reason: str):
        self.subject = subject
        self.reason = reason
        super().__init__(f"{subject}: {reason}")


class FormulaSyntaxError(ModelbenchError):
    """
    The token stream does not follow the formula or argument-list grammar.
    """

    def __init__(self, text: str, position: int | None, reason: str):
        self.text = text
        self.position = position
        self.reason = reason
        where = f" at position {position}" if position is not None else ""
        super().__init__(f"Cannot parse {text!r}{where}: {reason}")


class LexError(FormulaSyntaxError):
    """
    The text contains a character sequence that is not a token at all.
    """


class UnboundSymbolError(FormulaSyntaxError):
    """
    An identifier is used that the language does not declare.
    """

    def __init__(self, text: str, position: int, symbol: str):
        self.symbol = symbol
        super().__init__(text, position, f"symbol {symbol!r} is not declared")


class ArityError(FormulaSyntaxError):
    """
    A function symbol is applied to the wrong number of argument lists.
    """

    def __init__(self, text: str, symbol: str, expected: int, actual: int):
        self.symbol = symbol
        self.expected = expected
        self.actual = actual
        super().__init__(
            text,
            None,
            f"{symbol!r} expects {expected} argument list(s), got {actual}",
        )


class SetSyntaxError(ModelbenchError):
    """
    The text is not a hereditarily finite set such as `{{},{{}}}`.
    """

    def __init__(self, text: str, position: int | None, reason: str):
        self.text = text
        self.position = position
        self.reason = reason
        where = f" at position {position}" if position is not None else ""
        super().__init__(f"Cannot parse set {text!r}{where}: {reason}")


class NonGroundSubstituent(ModelbenchError):
    """
    A formula substitution was asked to insert an argument list with variables.
    """

    def __init__(self, substituent: str):
        self.substituent = substituent
        super().__init__(f"Substituent {substituent} is not ground")


class NotGround(ModelbenchError):
    """
    An operation that needs a variable-free argument list received variables.
    """

    def __init__(self, arglist: str):
        self.arglist = arglist
        super().__init__(f"Argument list {arglist} contains variables")


class NotInLanguage(ModelbenchError):
    """
    An argument list is not generated by the (name-extended) grammar.
    """

    def __init__(self, arglist: str):
        self.arglist = arglist
        super().__init__(f"Argument list {arglist} is not in the language")


class NotClosed(ModelbenchError):
    """
    A closed formula was required but the formula has free variables.
    """

    def __init__(self, formula: str, free: tuple[str, ...]):
        self.formula = formula
        self.free = free
        super().__init__(f"Formula {formula} has free variables {', '.join(free)}")


class NotClosedUnderX(ModelbenchError):
    """
    A formula has free variables other than the one being witnessed.
    """

    def __init__(self, formula: str, variable: str, extra: tuple[str, ...]):
        self.formula = formula
        self.variable = variable
        self.extra = extra
        super().__init__(
            f"Formula {formula} has free variables {', '.join(extra)} besides {variable}"
        )


class NameCollision(ModelbenchError):
    """
    A name token clashes with the alphabet, the predicates or the reserved
    tokens of the language.
    """

    def __init__(self, names: tuple[str, ...], reason: str):
        self.names = names
        self.reason = reason
        super().__init__(f"Names {', '.join(names)} cannot be used: {reason}")


class ExplosionGuard(ModelbenchError):
    """
    An enumeration would produce more items than the configured cap.
    """

    def __init__(self, what: str, predicted: int, cap: int):
        self.what = what
        self.predicted = predicted
        self.cap = cap
        super().__init__(
            f"Enumerating {what} would produce {predicted} items, cap is {cap}"
        )


class Incomparable(ModelbenchError):
    """
    Two grammars belong to different families and cannot be compared
    structurally.
    """

    def __init__(self, left: str, right: str):
        self.left = left
        self.right = right
        super().__init__(f"Cannot compare a {left} grammar with a {right} grammar")


class LanguageMismatch(ModelbenchError):
    """
    The source and target of a morphism use different formal languages.
    """


class StructureMismatch(ModelbenchError):
    """
    Two morphisms cannot be composed because their structures do not line up.
    """


class NotInvertible(ModelbenchError):
    """
    A morphism that is not an exact isomorphism was asked for its inverse.
    """

    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(f"Morphism is not invertible: {reason}")


class UniverseTooLarge(ModelbenchError):
    """
    A brute-force morphism search was requested on a universe above the cap.
    """

    def __init__(self, size: int, cap: int):
        self.size = size
        self.cap = cap
        super().__init__(f"Universe has {size} elements, search cap is {cap}")


class TooLarge(ModelbenchError):
    """
    A power set was requested for a set with more members than the cap.
    """

    def __init__(self, size: int, cap: int):
        self.size = size
        self.cap = cap
        super().__init__(f"Power set of a {size}-element set exceeds cap {cap}")


class EmptyInput(ModelbenchError):
    """
    An operation needs a nonempty set.
    """


class PreconditionViolated(ModelbenchError):
    """
    The input of an operation does not satisfy its precondition. `witness`
    is the concrete offending value.
    """

    def __init__(self, reason: str, witness: Any):
        self.reason = reason
        self.witness = witness
        super().__init__(f"{reason}: {witness}")
