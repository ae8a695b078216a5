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
Bounded fragments of the theory of a structure.

The theory of a structure consists of every formula valid in it; it is a
complete Henkin system: of each closed formula and its negation exactly one
is valid, and every valid existential formula has a name witnessing it. The
theory is infinite, so this module works on finite fragments: all closed
formulas up to a number of connectives and quantifiers, over argument lists up
to a depth.

Main concepts:

- FragmentBounds: The window onto the set of all formulas.
- enumerate_formulas: The formulas within the bounds, in a fixed order.
- enumerate_valid_fragment: Split a fragment into valid and invalid formulas.
- henkin_witness: A name witnessing an existential formula.
- fragment_consistency_report: Check the Henkin properties on a fragment.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from functools import cached_property

from .config import DEFAULT_LIMITS, Limits
from .errors import ExplosionGuard, NotClosedUnderX
from .language import LanguageSpec, NameSet, enumerate_lists, name_leaves
from .report import Report, build_report
from .structure import Structure, TruthValue
from .syntax import (
    BINARY_CONNECTIVES,
    ArgList,
    Eq,
    Exists,
    ForAll,
    Formula,
    Iff,
    Leaf,
    Not,
    Pred,
    SymbolAtom,
    free_variables,
    fresh_variables,
    name,
    print_formula,
    subst_formula,
)

logger = logging.getLogger(f"{__package__}.{__name__}")


@dataclass(frozen=True)
class FragmentBounds:
    """
    The window onto the set of all formulas.
    """

    connective_depth: int = 1
    """
    The maximum number of connectives and quantifiers in a formula.
    """

    list_depth: int = 0
    """
    The maximum depth of argument lists (string length for string grammars).
    """

    max_quantifiers: int = 1
    """
    The maximum number of nested quantifiers.
    """

    max_predicate_arity: int = 2
    """
    Predicates are enumerated without arguments and with 1 to this many
    argument lists.
    """

    def __post_init__(self) -> None:
        for key in (
            "connective_depth",
            "list_depth",
            "max_quantifiers",
            "max_predicate_arity",
        ):
            if getattr(self, key) < 0:
                raise ValueError(f"{key} must not be negative")

    def describe(self) -> str:
        return (
            f"bounded fragment: at most {self.connective_depth} connectives and "
            f"quantifiers, lists of depth at most {self.list_depth}, at most "
            f"{self.max_quantifiers} nested quantifiers"
        )


class _FragmentBuilder:
    """
    Builds formulas by size: size 0 are the atoms, a negation or quantifier
    adds one to its body, a binary connective adds one to the sizes of both
    sides. Quantifiers bind the lowest variable not yet in scope.
    """

    def __init__(
        self,
        language: LanguageSpec,
        leaves: Sequence[ArgList],
        bounds: FragmentBounds,
        limits: Limits,
    ):
        self.language = language
        self.leaves = list(leaves)
        self.bounds = bounds
        self.limits = limits
        self._lists: dict[tuple[SymbolAtom, ...], list[ArgList]] = {}
        self._formulas: dict[tuple[int, tuple[SymbolAtom, ...], int], list[Formula]] = {}
        self._counts: dict[tuple[int, tuple[SymbolAtom, ...], int], int] = {}

    def lists(self, scope: tuple[SymbolAtom, ...]) -> list[ArgList]:
        if scope not in self._lists:
            self._lists[scope] = enumerate_lists(
                self.language,
                [*self.leaves, *(Leaf(x) for x in scope)],
                self.bounds.list_depth,
                self.limits,
            )
        return self._lists[scope]

    def _predicate_count(self, lists: int) -> int:
        arities = range(1, self.bounds.max_predicate_arity + 1)
        return len(self.language.predicates) * (1 + sum(lists**n for n in arities))

    def count(self, size: int, scope: tuple[SymbolAtom, ...], quantifiers: int) -> int:
        key = (size, scope, quantifiers)
        if key in self._counts:
            return self._counts[key]

        if size == 0:
            lists = len(self.lists(scope))
            result = lists * lists + self._predicate_count(lists)
        else:
            result = self.count(size - 1, scope, quantifiers)
            result += len(BINARY_CONNECTIVES) * sum(
                self.count(left, scope, quantifiers)
                * self.count(size - 1 - left, scope, quantifiers)
                for left in range(size)
            )
            if quantifiers > 0:
                inner = self._extend(scope)
                result += 2 * self.count(size - 1, inner, quantifiers - 1)

        self._counts[key] = result
        return result

    def _extend(self, scope: tuple[SymbolAtom, ...]) -> tuple[SymbolAtom, ...]:
        return (*scope, *fresh_variables(scope, 1))

    def atoms(self, scope: tuple[SymbolAtom, ...]) -> list[Formula]:
        lists = self.lists(scope)
        result: list[Formula] = [Eq(left, right) for left in lists for right in lists]
        for symbol in sorted(self.language.predicates):
            result.append(Pred(symbol))
            for arity in range(1, self.bounds.max_predicate_arity + 1):
                result.extend(
                    Pred(symbol, args) for args in itertools.product(lists, repeat=arity)
                )
        return result

    def formulas(
        self, size: int, scope: tuple[SymbolAtom, ...], quantifiers: int
    ) -> list[Formula]:
        key = (size, scope, quantifiers)
        if key in self._formulas:
            return self._formulas[key]

        if size == 0:
            result = self.atoms(scope)
        else:
            result = [Not(body) for body in self.formulas(size - 1, scope, quantifiers)]
            for connective in BINARY_CONNECTIVES:
                for left_size in range(size):
                    lefts = self.formulas(left_size, scope, quantifiers)
                    rights = self.formulas(size - 1 - left_size, scope, quantifiers)
                    result.extend(
                        connective(left, right) for left in lefts for right in rights
                    )
            if quantifiers > 0:
                inner = self._extend(scope)
                x = inner[-1]
                bodies = self.formulas(size - 1, inner, quantifiers - 1)
                result.extend(ForAll(x, body) for body in bodies)
                result.extend(Exists(x, body) for body in bodies)

        self._formulas[key] = result
        return result


def enumerate_formulas(
    language: LanguageSpec,
    names: NameSet,
    bounds: FragmentBounds,
    *,
    scope: Sequence[SymbolAtom] = (),
    limits: Limits = DEFAULT_LIMITS,
) -> list[Formula]:
    """
    Enumerate every formula within `bounds` whose argument lists are built
    from the language, `names` and the variables in scope.

    Parameters:
        language:
            The language.
        names:
            The names allowed as leaves.
        bounds:
            The fragment window.
        scope:
            Variables that may occur free. The default yields closed formulas.
        limits:
            `limits.fragment_cap` bounds the number of formulas.

    Returns:
        The formulas ordered by size, then by their printed form.

    Raises:
        ExplosionGuard:
            If the fragment would exceed `limits.fragment_cap` formulas, or a
            list enumeration would exceed `limits.enumeration_cap`.
    """
    scope = tuple(scope)
    builder = _FragmentBuilder(language, name_leaves(names), bounds, limits)

    predicted = sum(
        builder.count(size, scope, bounds.max_quantifiers)
        for size in range(bounds.connective_depth + 1)
    )
    if predicted > limits.fragment_cap:
        raise ExplosionGuard("formulas", predicted, limits.fragment_cap)
    logger.debug("Enumerating %s formulas (%s)", predicted, bounds.describe())

    return [
        formula
        for size in range(bounds.connective_depth + 1)
        for formula in sorted(
            builder.formulas(size, scope, bounds.max_quantifiers), key=print_formula
        )
    ]


@dataclass(frozen=True)
class FragmentPartition:
    """
    A bounded fragment split by truth value.
    """

    bounds: FragmentBounds
    valid: tuple[Formula, ...]
    invalid: tuple[Formula, ...]

    undecided: tuple[Formula, ...] = field(default_factory=tuple)
    """
    Formulas whose quantifier scans were inconclusive (string structures
    only).
    """

    @cached_property
    def valid_set(self) -> frozenset[Formula]:
        return frozenset(self.valid)

    @cached_property
    def invalid_set(self) -> frozenset[Formula]:
        return frozenset(self.invalid)

    def counts(self) -> dict[str, int]:
        return {
            "valid": len(self.valid),
            "invalid": len(self.invalid),
            "undecided": len(self.undecided),
        }

    def __len__(self) -> int:
        return len(self.valid) + len(self.invalid) + len(self.undecided)


def enumerate_valid_fragment(
    structure: Structure,
    bounds: FragmentBounds,
    *,
    limits: Limits = DEFAULT_LIMITS,
) -> FragmentPartition:
    """
    Evaluate every closed formula of the bounded fragment.

    Raises:
        ExplosionGuard:
            As `enumerate_formulas`.
    """
    formulas = enumerate_formulas(
        structure.language, structure.finite_names(1), bounds, limits=limits
    )
    memo: dict[Formula, TruthValue] = {}
    parts: dict[TruthValue, list[Formula]] = {value: [] for value in TruthValue}
    for formula in formulas:
        parts[structure.eval_closed(formula, memo=memo)].append(formula)

    partition = FragmentPartition(
        bounds,
        tuple(parts[TruthValue.TRUE]),
        tuple(parts[TruthValue.FALSE]),
        tuple(parts[TruthValue.UNKNOWN_AT_BOUND]),
    )
    logger.debug("Fragment partition: %s", partition.counts())
    return partition


def henkin_witness(structure: Structure, x: SymbolAtom, formula: Formula) -> str:
    """
    Find a name `c` such that `ex x F` and `F` with `c` for `x` have the same
    truth value.

    Returns:
        The first name (in canonical order) of an individual satisfying `F`,
        or the first name if none does.

    Raises:
        NotClosedUnderX:
            If `F` has free variables other than `x`.
    """
    if extra := free_variables(formula) - {x}:
        raise NotClosedUnderX(
            print_formula(formula),
            x.ident,
            tuple(sorted((v.ident for v in extra), key=lambda i: int(i[1:]))),
        )

    tokens, _ = structure.quantifier_names()
    for token in tokens:
        instance = subst_formula(formula, x, Leaf(name(token)))
        if structure.eval_closed(instance) is TruthValue.TRUE:
            return token
    return tokens[0]


def witness_instance(structure: Structure, x: SymbolAtom, formula: Formula) -> Formula:
    """
    The biconditional `<-> ex x F F(c)` for the Henkin witness `c` of `F`.
    """
    token = henkin_witness(structure, x, formula)
    return Iff(Exists(x, formula), subst_formula(formula, x, Leaf(name(token))))


def in_theory(structure: Structure, formula: Formula) -> TruthValue:
    """
    Whether a formula belongs to the theory of the structure, that is, whether
    it is valid.
    """
    return structure.is_valid(formula)


def fragment_consistency_report(
    structure: Structure,
    bounds: FragmentBounds,
    *,
    limits: Limits = DEFAULT_LIMITS,
) -> Report:
    """
    Check the Henkin properties on a bounded fragment.

    The report has three entries:

    - `complementarity`: of each formula and its negation exactly one is
      valid.
    - `witnesses`: every valid existential formula has a witness whose
      biconditional instance is valid.
    - `partition`: every formula lies in exactly one part.
    """
    partition = enumerate_valid_fragment(structure, bounds, limits=limits)
    memo: dict[Formula, TruthValue] = {}
    builder = build_report(
        ok_summary=f"fragment of {len(partition)} formulas is complete and consistent",
        fail_summary="fragment violates the Henkin properties",
        base_details={"bounds": bounds.describe(), **partition.counts()},
    )

    broken: list[Formula] = []
    for formula in (*partition.valid, *partition.invalid):
        valid = formula in partition.valid_set
        negated = structure.eval_closed(Not(formula), memo=memo)
        if (negated is TruthValue.TRUE) == valid:
            broken.append(formula)
    if broken:
        builder.failed(
            "complementarity",
            f"{len(broken)} formulas agree with their negation, first "
            f"{print_formula(broken[0])}",
            witness=broken[0],
        )
    else:
        builder.passed("complementarity", "exactly one of F, ! F is valid for every F")

    existentials = [f for f in partition.valid if isinstance(f, Exists)]
    unwitnessed: list[Formula] = []
    for formula in existentials:
        instance = witness_instance(structure, formula.variable, formula.body)
        if structure.eval_closed(instance) is not TruthValue.TRUE:
            unwitnessed.append(formula)
    if unwitnessed:
        builder.failed(
            "witnesses",
            f"{len(unwitnessed)} existential formulas lack a witness, first "
            f"{print_formula(unwitnessed[0])}",
            witness=unwitnessed[0],
        )
    else:
        builder.passed(
            "witnesses", f"all {len(existentials)} valid existential formulas witnessed"
        )

    both = partition.valid_set & partition.invalid_set
    if both:
        first = min(both, key=print_formula)
        builder.failed(
            "partition",
            f"{len(both)} formulas are both valid and invalid, first {print_formula(first)}",
            witness=first,
        )
    else:
        builder.passed("partition", "valid and invalid parts are disjoint")

    if partition.undecided:
        builder.unknown(
            "undecided",
            f"{len(partition.undecided)} formulas could not be decided, first "
            f"{print_formula(partition.undecided[0])}",
        )

    return builder.to_report()
