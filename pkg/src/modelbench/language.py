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
Formal languages: alphabet, predicate symbols and the grammar of argument
lists.

A language is described intensionally. Two grammar families are supported:

- `TermGrammar`: variables and constants are lists, and `f(l1 ... ln)` is a
  list whenever `l1 ... ln` are and `f` has arity `n`.
- `StringGrammar`: variables are lists, concatenations of lists are lists and,
  if `atoms_are_lists`, every atom is a list.

Naming the individuals of a structure extends a language: names become
additional leaves (`hat_extend`). Name sets are either finite (`NameSet`) or
the enumerable set of string names (`StringNameSet`).

Notes:
    Languages are immutable and hashable. Parsers are cached per language.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field, replace
from typing import Any, Protocol, assert_never

from .config import DEFAULT_LIMITS, Limits
from .errors import ExplosionGuard, Incomparable, InvalidDefinition, NameCollision
from .syntax import (
    NAME_PATTERN,
    VARIABLE_PATTERN,
    Apply,
    ArgList,
    Concat,
    Leaf,
    SymbolAtom,
    SymbolKind,
    alphabet_symbol,
    depth,
    name,
)

logger = logging.getLogger(f"{__package__}.{__name__}")

RESERVED_TOKENS = frozenset(
    {"~", ",", "!", "->", "<->", "&", "|", "all", "ex", "(", ")", "[", "]"}
)
_FORBIDDEN_CHARACTERS = frozenset("()[],$ \t\r\n")


class Names(Protocol):
    """
    The names of a structure's individuals and the bijection behind them.
    """

    universe_tag: str

    def __contains__(self, token: object) -> bool: ...

    def element_of(self, token: str) -> str:
        """
        The individual named by `token`.

        Raises:
            KeyError:
                If `token` is not one of the names.
        """
        ...

    def name_of(self, element: str) -> str:
        """
        The name token of `element`.

        Raises:
            KeyError:
                If `element` has no name in this set.
        """
        ...

    def collisions(self, tokens: frozenset[str]) -> tuple[str, ...]:
        """
        The names that clash with `tokens` or lack the name marker.
        """
        ...


@dataclass(frozen=True)
class NameSet:
    """
    A finite, bijective assignment of name tokens to individuals.

    The registry keeps insertion order, which is the canonical order of the
    individuals everywhere (enumeration, quantifier scans, witnesses).
    """

    pairs: tuple[tuple[str, str], ...]
    """
    `(element, name)` pairs in canonical order.
    """

    universe_tag: str = ""
    """
    An identifier of the structure owning these names.
    """

    _by_name: dict[str, str] = field(init=False, repr=False, compare=False)
    _by_element: dict[str, str] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        by_name: dict[str, str] = {}
        by_element: dict[str, str] = {}
        for element, token in self.pairs:
            if element in by_element:
                raise InvalidDefinition(
                    self.universe_tag or "names", f"{element!r} is named twice"
                )
            if token in by_name:
                raise InvalidDefinition(
                    self.universe_tag or "names",
                    f"{token!r} names both {by_name[token]!r} and {element!r}",
                )
            by_name[token] = element
            by_element[element] = token
        object.__setattr__(self, "_by_name", by_name)
        object.__setattr__(self, "_by_element", by_element)

    def __hash__(self) -> int:
        return hash((self.pairs, self.universe_tag))

    @classmethod
    def from_mapping(cls, mapping: Mapping[str, str], universe_tag: str = "") -> NameSet:
        """
        Build a name set from an `element -> name` mapping, keeping its order.
        """
        return cls(tuple(mapping.items()), universe_tag)

    def __contains__(self, token: object) -> bool:
        if isinstance(token, SymbolAtom):
            token = token.ident
        return token in self._by_name

    def __iter__(self) -> Iterator[str]:
        """
        Iterate over the name tokens in canonical order.
        """
        return iter(self._by_name)

    def __len__(self) -> int:
        return len(self.pairs)

    @property
    def elements(self) -> tuple[str, ...]:
        return tuple(element for element, _ in self.pairs)

    def atoms(self) -> tuple[SymbolAtom, ...]:
        return tuple(name(token) for token in self._by_name)

    def element_of(self, token: str) -> str:
        return self._by_name[token]

    def name_of(self, element: str) -> str:
        return self._by_element[element]

    def collisions(self, tokens: frozenset[str]) -> tuple[str, ...]:
        return tuple(
            token
            for token in self._by_name
            if token in tokens or not NAME_PATTERN.fullmatch(token)
        )


@dataclass(frozen=True)
class StringNameSet:
    """
    The names of all nonempty strings over single-character atoms: the string
    `ab` is named `$ab`.
    """

    atoms: tuple[str, ...]
    universe_tag: str = "strings"

    def __contains__(self, token: object) -> bool:
        if isinstance(token, SymbolAtom):
            token = token.ident
        if not isinstance(token, str) or not token.startswith("$"):
            return False
        text = token[1:]
        return bool(text) and all(character in self.atoms for character in text)

    def element_of(self, token: str) -> str:
        if token not in self:
            raise KeyError(token)
        return token[1:]

    def name_of(self, element: str) -> str:
        token = "$" + element
        if token not in self:
            raise KeyError(element)
        return token

    def collisions(self, tokens: frozenset[str]) -> tuple[str, ...]:
        return ()

    def strings(self, max_length: int) -> Iterator[str]:
        """
        All strings of length 1 to `max_length`, shorter first, then in atom
        order.
        """
        for length in range(1, max_length + 1):
            for combination in itertools.product(self.atoms, repeat=length):
                yield "".join(combination)

    def window(self, max_length: int) -> NameSet:
        """
        The finite name set of all strings up to `max_length`.
        """
        return NameSet(
            tuple((s, "$" + s) for s in self.strings(max_length)),
            f"{self.universe_tag}<={max_length}",
        )


@dataclass(frozen=True)
class TermGrammar:
    """
    Terms over constants and function symbols of fixed arity.
    """

    constants: frozenset[str] = frozenset()
    functions: tuple[tuple[str, int], ...] = ()
    """
    `(symbol, arity)` pairs, sorted by symbol.
    """

    @classmethod
    def of(
        cls,
        constants: Iterable[str] = (),
        functions: Mapping[str, int] | None = None,
    ) -> TermGrammar:
        return cls(
            frozenset(constants),
            tuple(sorted((functions or {}).items())),
        )

    @property
    def arities(self) -> dict[str, int]:
        return dict(self.functions)

    @property
    def kind(self) -> str:
        return "term"


@dataclass(frozen=True)
class StringGrammar:
    """
    Nonempty strings of atoms, variables and names.
    """

    atoms: frozenset[str] = frozenset()
    atoms_are_lists: bool = True

    @property
    def kind(self) -> str:
        return "string"


type Grammar = TermGrammar | StringGrammar


def _token_problems(subject: str, tokens: Iterable[str]) -> list[InvalidDefinition]:
    problems = []
    for token in sorted(tokens):
        if not token:
            problems.append(InvalidDefinition(subject, "empty token"))
        elif token in RESERVED_TOKENS:
            problems.append(InvalidDefinition(subject, f"{token!r} is a reserved token"))
        elif VARIABLE_PATTERN.fullmatch(token):
            problems.append(
                InvalidDefinition(subject, f"{token!r} is spelled like a variable")
            )
        elif _FORBIDDEN_CHARACTERS & set(token):
            problems.append(
                InvalidDefinition(subject, f"{token!r} contains a reserved character")
            )
    return problems


@dataclass(frozen=True)
class LanguageSpec:
    """
    A formal language `[A;P]` with the grammar generating its argument lists.
    """

    alphabet: frozenset[str]
    """
    The symbol alphabet.
    """

    predicates: frozenset[str]
    """
    The predicate symbols. Every predicate may be applied to any number of
    argument lists.
    """

    grammar: Grammar
    """
    The grammar generating the argument lists.
    """

    names: NameSet | StringNameSet | None = None
    """
    Names admitted as additional leaves. Set by `hat_extend`.
    """

    def __post_init__(self) -> None:
        problems = _token_problems("alphabet", self.alphabet)
        problems += _token_problems("predicates", self.predicates)

        if shared := self.alphabet & self.predicates:
            problems.append(
                InvalidDefinition(
                    "predicates",
                    f"{', '.join(sorted(shared))} also in the alphabet",
                )
            )

        match self.grammar:
            case TermGrammar(constants, functions):
                if missing := constants - self.alphabet:
                    problems.append(
                        InvalidDefinition(
                            "grammar",
                            f"constants {', '.join(sorted(missing))} not in the alphabet",
                        )
                    )
                for symbol, arity in functions:
                    if symbol not in self.alphabet:
                        problems.append(
                            InvalidDefinition(
                                "grammar", f"function {symbol!r} not in the alphabet"
                            )
                        )
                    if not isinstance(arity, int) or isinstance(arity, bool):
                        problems.append(
                            InvalidDefinition(
                                "grammar",
                                f"function {symbol!r} has non-integer arity {arity!r}",
                            )
                        )
                    elif arity < 1:
                        problems.append(
                            InvalidDefinition(
                                "grammar", f"function {symbol!r} has arity {arity}"
                            )
                        )
                if shared := constants & {symbol for symbol, _ in functions}:
                    problems.append(
                        InvalidDefinition(
                            "grammar",
                            f"{', '.join(sorted(shared))} both constant and function",
                        )
                    )
            case StringGrammar(atoms, _):
                if missing := atoms - self.alphabet:
                    problems.append(
                        InvalidDefinition(
                            "grammar",
                            f"atoms {', '.join(sorted(missing))} not in the alphabet",
                        )
                    )
            case _:
                assert_never(self.grammar)

        if problems:
            raise ExceptionGroup("Invalid language definition", problems)

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any]) -> LanguageSpec:
        """
        Build a language from its JSON form.

        Raises:
            InvalidDefinition:
                If the mapping is malformed.
            ExceptionGroup:
                If the language violates its invariants.
        """
        try:
            grammar_data = data["grammar"]
            kind = grammar_data["kind"]
            alphabet = frozenset(data.get("alphabet", ()))
            predicates = frozenset(data.get("predicates", ()))
        except (KeyError, TypeError) as e:
            raise InvalidDefinition("language", f"missing or malformed key {e}") from e

        grammar: Grammar
        match kind:
            case "term":
                functions = grammar_data.get("functions", {})
                if not isinstance(functions, Mapping):
                    raise InvalidDefinition("grammar", "functions must be an object")
                grammar = TermGrammar.of(grammar_data.get("constants", ()), functions)
            case "string":
                grammar = StringGrammar(
                    frozenset(grammar_data.get("atoms", ())),
                    bool(grammar_data.get("atomsAreLists", True)),
                )
            case _:
                raise InvalidDefinition("grammar", f"unknown grammar kind {kind!r}")

        return cls(alphabet, predicates, grammar)

    @property
    def is_name_extended(self) -> bool:
        return self.names is not None

    def without_names(self) -> LanguageSpec:
        return replace(self, names=None)


def hat_extend(spec: LanguageSpec, names: NameSet | StringNameSet) -> LanguageSpec:
    """
    Admit `names` as leaves: as constants under a term grammar, as atoms under
    a string grammar.

    Raises:
        NameCollision:
            If a name clashes with the alphabet, the predicates or a reserved
            token, or lacks the `$` marker.
    """
    if clashes := names.collisions(spec.alphabet | spec.predicates | RESERVED_TOKENS):
        raise NameCollision(clashes, "names must be `$`-marked and disjoint from A and P")
    return replace(spec, names=names)


def in_language(
    spec: LanguageSpec,
    arglist: ArgList,
    allow_names: Names | None = None,
) -> bool:
    """
    Decide whether the grammar generates `arglist`.

    Names are accepted as leaves if `allow_names` is given or the language was
    extended with names; otherwise any name makes the answer false.
    """
    names = allow_names if allow_names is not None else spec.names
    match spec.grammar:
        case TermGrammar():
            return _in_terms(spec.grammar, arglist, names)
        case StringGrammar():
            return _in_strings(spec.grammar, arglist, names)
        case _:
            assert_never(spec.grammar)


def _leaf_allowed(atom: SymbolAtom, names: Names | None) -> bool | None:
    match atom.kind:
        case SymbolKind.VARIABLE:
            return True
        case SymbolKind.NAME:
            return names is not None and atom.ident in names
        case SymbolKind.PREDICATE:
            return False
        case SymbolKind.ALPHABET:
            return None
        case _:
            assert_never(atom.kind)


def _in_terms(grammar: TermGrammar, arglist: ArgList, names: Names | None) -> bool:
    match arglist:
        case Leaf(atom):
            allowed = _leaf_allowed(atom, names)
            return atom.ident in grammar.constants if allowed is None else allowed
        case Apply(function, children):
            arity = grammar.arities.get(function)
            return arity == len(children) and all(
                _in_terms(grammar, child, names) for child in children
            )
        case Concat():
            return False
        case _:
            assert_never(arglist)


def _in_strings(grammar: StringGrammar, arglist: ArgList, names: Names | None) -> bool:
    match arglist:
        case Leaf(atom):
            allowed = _leaf_allowed(atom, names)
            if allowed is None:
                return grammar.atoms_are_lists and atom.ident in grammar.atoms
            return allowed
        case Concat(children):
            return all(_in_strings(grammar, child, names) for child in children)
        case Apply():
            return False
        case _:
            assert_never(arglist)


def name_leaves(names: NameSet) -> list[ArgList]:
    return [Leaf(atom) for atom in names.atoms()]


def enumerate_lists(
    spec: LanguageSpec,
    leaves: Sequence[ArgList],
    depth_bound: int,
    limits: Limits = DEFAULT_LIMITS,
) -> list[ArgList]:
    """
    Enumerate every list of depth (string length) at most `depth_bound` built
    from the grammar's alphabet and the extra `leaves`.

    Term lists come level by level: leaves first (constants, then `leaves` in
    the given order), then every application whose deepest child has the
    previous depth. Strings come shorter first, in symbol order.

    Raises:
        ExplosionGuard:
            If the enumeration would exceed `limits.enumeration_cap`.
    """
    if depth_bound < 0:
        raise ValueError("depth_bound must not be negative")

    cap = limits.enumeration_cap
    match spec.grammar:
        case TermGrammar():
            return _enumerate_terms(spec.grammar, leaves, depth_bound, cap)
        case StringGrammar():
            return _enumerate_strings(spec.grammar, leaves, depth_bound, cap)
        case _:
            assert_never(spec.grammar)


def _enumerate_terms(
    grammar: TermGrammar,
    extra_leaves: Sequence[ArgList],
    depth_bound: int,
    cap: int,
) -> list[ArgList]:
    result: list[ArgList] = [
        Leaf(alphabet_symbol(c)) for c in sorted(grammar.constants)
    ]
    result.extend(extra_leaves)
    if len(result) > cap:
        raise ExplosionGuard("argument lists", len(result), cap)

    previous_level_start = 0
    for level in range(1, depth_bound + 1):
        size = len(result)
        predicted = size + sum(
            size**arity - previous_level_start**arity for _, arity in grammar.functions
        )
        if predicted > cap:
            raise ExplosionGuard("argument lists", predicted, cap)

        current = result[:size]
        for function, arity in grammar.functions:
            for indices in itertools.product(range(size), repeat=arity):
                if max(indices) >= previous_level_start:
                    result.append(
                        Apply(function, tuple(current[i] for i in indices))
                    )
        previous_level_start = size
        logger.debug("Enumerated %s lists up to depth %s", len(result), level)

    return result


def _enumerate_strings(
    grammar: StringGrammar,
    extra_leaves: Sequence[ArgList],
    length_bound: int,
    cap: int,
) -> list[ArgList]:
    symbols: list[ArgList] = []
    if grammar.atoms_are_lists:
        symbols.extend(Leaf(alphabet_symbol(a)) for a in sorted(grammar.atoms))
    symbols.extend(extra_leaves)

    predicted = sum(len(symbols) ** length for length in range(1, length_bound + 1))
    if predicted > cap:
        raise ExplosionGuard("strings", predicted, cap)

    return [
        Concat(combination)
        for length in range(1, length_bound + 1)
        for combination in itertools.product(symbols, repeat=length)
    ]


def enumerate_ground(
    spec: LanguageSpec,
    names: NameSet,
    depth_bound: int,
    limits: Limits = DEFAULT_LIMITS,
) -> list[ArgList]:
    """
    Enumerate every ground list of the name-extended language up to
    `depth_bound` (string length for string grammars), in a fixed order.

    Raises:
        ExplosionGuard:
            If the enumeration would exceed `limits.enumeration_cap`.
    """
    return enumerate_lists(spec, name_leaves(names), depth_bound, limits)


def _names_included(
    left: NameSet | StringNameSet | None,
    right: NameSet | StringNameSet | None,
) -> bool:
    match left, right:
        case None, _:
            return True
        case _, None:
            return False
        case NameSet(), NameSet():
            return set(left) <= set(right)
        case StringNameSet(), StringNameSet():
            return set(left.atoms) <= set(right.atoms)
        case _:
            return False


def is_syntactic_extension(spec1: LanguageSpec, spec2: LanguageSpec) -> bool:
    """
    Decide whether `spec2` extends `spec1`: alphabet and predicates are
    included and `spec2`'s grammar generates every list of `spec1`'s.

    Raises:
        Incomparable:
            If the grammars belong to different families.
    """
    g1, g2 = spec1.grammar, spec2.grammar
    if type(g1) is not type(g2):
        raise Incomparable(g1.kind, g2.kind)

    if not (spec1.alphabet <= spec2.alphabet and spec1.predicates <= spec2.predicates):
        return False
    if not _names_included(spec1.names, spec2.names):
        return False

    match g1, g2:
        case TermGrammar(), TermGrammar():
            arities = g2.arities
            return g1.constants <= g2.constants and all(
                arities.get(symbol) == arity for symbol, arity in g1.functions
            )
        case StringGrammar(), StringGrammar():
            # Without usable atoms g1 only generates strings of variables and names.
            if not g1.atoms_are_lists or not g1.atoms:
                return True
            return g2.atoms_are_lists and g1.atoms <= g2.atoms
        case _:
            raise Incomparable(g1.kind, g2.kind)
