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

import json
import random
from collections.abc import Sequence
from pathlib import Path
from typing import Any, override

import modelbench
from modelbench.language import LanguageSpec, NameSet, TermGrammar
from modelbench.parser import parse_formula
from modelbench.structure import FiniteTermStructure, StringStructure, TruthValue
from modelbench.syntax import (
    BINARY_CONNECTIVES,
    Apply,
    ArgList,
    Eq,
    Exists,
    ForAll,
    Formula,
    Leaf,
    Not,
    SymbolAtom,
    fresh_variables,
)

DATA = Path(modelbench.__file__).parent / "data"

# Rows are the left factor, columns the right factor.
KLEIN_CAYLEY = {
    "e": {"e": "e", "a": "a", "b": "b", "c": "c"},
    "a": {"e": "a", "a": "e", "b": "c", "c": "b"},
    "b": {"e": "b", "a": "c", "b": "e", "c": "a"},
    "c": {"e": "c", "a": "b", "b": "a", "c": "e"},
}


def read_fixture(name: str) -> dict[str, Any]:
    return json.loads((DATA / name).read_text(encoding="utf-8"))


def klein_language() -> LanguageSpec:
    return LanguageSpec.from_mapping(read_fixture("klein_language.json"))


def klein(**overrides: str) -> FiniteTermStructure:
    """
    The Klein four-group. Keyword arguments overwrite table entries, e.g.
    `klein(a_b="e")` sets `a * b = e`.
    """
    data = read_fixture("klein.json")
    for key, value in overrides.items():
        data["functions"]["*"][key.replace("_", ",")] = value
    return FiniteTermStructure.from_mapping(data, klein_language(), "klein")


def trivial() -> FiniteTermStructure:
    return FiniteTermStructure.from_mapping(
        read_fixture("trivial.json"), klein_language(), "trivial"
    )


def strings_ab() -> StringStructure:
    return StringStructure.from_mapping(read_fixture("strings_ab.json"))


def group_axioms() -> list[Formula]:
    lines = (DATA / "groups.fml").read_text(encoding="utf-8").splitlines()
    return [
        parse_formula(line, klein_language())
        for line in lines
        if line.strip() and not line.startswith("#")
    ]


def unary_structure(p_holds_for: Sequence[str]) -> FiniteTermStructure:
    """
    A two-element structure with one unary predicate `p` and a constant `o`.
    """
    language = LanguageSpec(
        alphabet=frozenset({"o", "s"}),
        predicates=frozenset({"p"}),
        grammar=TermGrammar.of(["o"], {"s": 1}),
    )
    return FiniteTermStructure(
        language=language,
        universe=("a", "b"),
        names=NameSet.from_mapping({"a": "$a", "b": "$b"}),
        constants={"o": "a"},
        functions={"s": {("a",): "b", ("b",): "a"}},
        predicates={("p", 1): frozenset((d,) for d in p_holds_for)},
    )


class NestingBlindStructure(FiniteTermStructure):
    """
    Evaluates every application with a nested application to the first
    individual, so evaluation depends on syntax beyond the values.
    """

    @override
    def _evaluate(self, arglist: ArgList) -> str:
        if isinstance(arglist, Apply) and any(
            isinstance(child, Apply) for child in arglist.children
        ):
            return self.universe[0]
        return super()._evaluate(arglist)


class AlwaysTrueStructure(FiniteTermStructure):
    """
    Answers TRUE for every closed formula, its negation included.
    """

    @override
    def eval_closed(
        self,
        formula: Formula,
        *,
        quantifier_domain: Sequence[ArgList] | None = None,
        memo: dict[Formula, TruthValue] | None = None,
    ) -> TruthValue:
        return TruthValue.TRUE


def random_arglist(
    rng: random.Random,
    grammar: TermGrammar,
    leaves: Sequence[ArgList],
    depth: int,
) -> ArgList:
    if depth == 0 or not grammar.functions or rng.random() < 0.3:
        return rng.choice(list(leaves))
    function, arity = rng.choice(grammar.functions)
    return Apply(
        function,
        tuple(random_arglist(rng, grammar, leaves, depth - 1) for _ in range(arity)),
    )


def random_formula(
    rng: random.Random,
    language: LanguageSpec,
    names: NameSet,
    *,
    scope: tuple[SymbolAtom, ...] = (),
    size: int = 2,
    list_depth: int = 1,
    quantifiers: int = 1,
) -> Formula:
    """
    A random equation formula with exactly `size` connectives and quantifiers
    whose free variables lie in `scope`.
    """
    grammar = language.grammar
    assert isinstance(grammar, TermGrammar)

    if size == 0:
        leaves = [Leaf(atom) for atom in names.atoms()] + [Leaf(x) for x in scope]
        return Eq(
            random_arglist(rng, grammar, leaves, list_depth),
            random_arglist(rng, grammar, leaves, list_depth),
        )

    def sub(size: int, scope: tuple[SymbolAtom, ...], quantifiers: int) -> Formula:
        return random_formula(
            rng,
            language,
            names,
            scope=scope,
            size=size,
            list_depth=list_depth,
            quantifiers=quantifiers,
        )

    kinds = ["not", "binary"] + (["quantifier"] if quantifiers > 0 else [])
    match rng.choice(kinds):
        case "not":
            return Not(sub(size - 1, scope, quantifiers))
        case "binary":
            left = rng.randrange(size)
            connective = rng.choice(BINARY_CONNECTIVES)
            return connective(
                sub(left, scope, quantifiers), sub(size - 1 - left, scope, quantifiers)
            )
        case _:
            x = fresh_variables(scope, 1)[0]
            quantifier = rng.choice((ForAll, Exists))
            return quantifier(x, sub(size - 1, (*scope, x), quantifiers - 1))
