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
Structures, truth and models.

A structure has a universe, a bijective naming of its individuals, an
evaluation of ground argument lists and an interpretation of every predicate
symbol at every arity. Closed formulas are evaluated by substituting names:
quantifiers range over the names of the individuals, which is equivalent to
ranging over all ground lists because every ground list evaluates to a named
individual and substituting a list or the name of its value never changes a
truth value.

Two kinds are provided:

- `FiniteTermStructure`: a finite universe with constant values, total
  function tables and predicate tables.
- `StringStructure`: all nonempty strings over single-character atoms, names
  stripped to their strings, predicates from `modelbench.string_predicates`.
  Quantifiers scan strings up to `quant_bound` and answer
  `TruthValue.UNKNOWN_AT_BOUND` when the scan is inconclusive.

Notes:
    Structures are immutable. Every operation is a pure function of the
    structure and its arguments.
"""

from __future__ import annotations

import itertools
import logging
import random
from abc import ABC, abstractmethod
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, assert_never, override

from .config import DEFAULT_LIMITS, Limits
from .errors import (
    InvalidDefinition,
    NameCollision,
    NotClosed,
    NotGround,
    NotInLanguage,
)
from .language import (
    LanguageSpec,
    NameSet,
    StringGrammar,
    StringNameSet,
    TermGrammar,
    enumerate_ground,
    enumerate_lists,
    hat_extend,
    in_language,
    name_leaves,
)
from .report import Report, build_report
from .string_predicates import StringPredicate, predicate_from_spec
from .syntax import (
    And,
    Apply,
    ArgList,
    Concat,
    Eq,
    Exists,
    ForAll,
    Formula,
    Iff,
    Implies,
    Leaf,
    Not,
    Or,
    Pred,
    SymbolAtom,
    SymbolKind,
    arglists,
    free_variables,
    is_ground,
    name,
    print_formula,
    print_list,
    subst_formula,
    subst_list,
    universal_closure,
    variable,
)

logger = logging.getLogger(f"{__package__}.{__name__}")


class TruthValue(Enum):
    """
    A truth value. `UNKNOWN_AT_BOUND` only arises from bounded quantifier
    scans over infinite universes.
    """

    TRUE = "TRUE"
    FALSE = "FALSE"
    UNKNOWN_AT_BOUND = "UNKNOWN-AT-BOUND"

    @classmethod
    def of(cls, value: bool) -> TruthValue:
        return cls.TRUE if value else cls.FALSE

    @property
    def is_exact(self) -> bool:
        return self is not TruthValue.UNKNOWN_AT_BOUND

    def negate(self) -> TruthValue:
        match self:
            case TruthValue.TRUE:
                return TruthValue.FALSE
            case TruthValue.FALSE:
                return TruthValue.TRUE
            case TruthValue.UNKNOWN_AT_BOUND:
                return self
            case _:
                assert_never(self)

    def conjoin(self, other: TruthValue) -> TruthValue:
        if TruthValue.FALSE in (self, other):
            return TruthValue.FALSE
        if self is other is TruthValue.TRUE:
            return TruthValue.TRUE
        return TruthValue.UNKNOWN_AT_BOUND

    def disjoin(self, other: TruthValue) -> TruthValue:
        return self.negate().conjoin(other.negate()).negate()

    def implies(self, other: TruthValue) -> TruthValue:
        return self.negate().disjoin(other)

    def iff(self, other: TruthValue) -> TruthValue:
        if not (self.is_exact and other.is_exact):
            return TruthValue.UNKNOWN_AT_BOUND
        return TruthValue.of(self is other)


def _holds_for_every_instance(formula: Formula) -> bool:
    """
    Recognize bodies that are true whatever is substituted: equations with
    identical sides and their positive combinations.
    """
    match formula:
        case Eq(left, right):
            return left == right
        case And(left, right):
            return _holds_for_every_instance(left) and _holds_for_every_instance(right)
        case Or(left, right):
            return _holds_for_every_instance(left) or _holds_for_every_instance(right)
        case Implies(left, right):
            return left == right or _holds_for_every_instance(right)
        case Iff(left, right):
            return left == right or (
                _holds_for_every_instance(left) and _holds_for_every_instance(right)
            )
        case ForAll(_, body) | Exists(_, body):
            return _holds_for_every_instance(body)
        case Pred() | Not():
            return False
        case _:
            assert_never(formula)


class ModelStatus(Enum):
    MODEL = "MODEL"
    COUNTEREXAMPLE = "COUNTEREXAMPLE"
    UNKNOWN_AT_BOUND = "UNKNOWN-AT-BOUND"


@dataclass(frozen=True)
class ModelVerdict:
    """
    The answer of `Structure.is_model`.
    """

    status: ModelStatus

    valid: int
    """
    The number of axioms found valid.
    """

    total: int
    """
    The number of axioms checked.
    """

    axiom: Formula | None = None
    """
    The first failing (or undecided) axiom.
    """

    assignment: tuple[tuple[str, str], ...] = ()
    """
    `(variable, name)` pairs falsifying `axiom`, in variable order.
    """

    @property
    def is_model(self) -> bool:
        return self.status is ModelStatus.MODEL

    def instance(self) -> Formula | None:
        """
        The axiom with the falsifying names substituted.
        """
        if self.axiom is None:
            return None
        result = self.axiom
        for x, token in self.assignment:
            result = subst_formula(
                result, SymbolAtom(SymbolKind.VARIABLE, x), Leaf(name(token))
            )
        return universal_closure(result)


class Structure(ABC):
    """
    Base class of structures for a formal language.

    Subclasses provide the evaluation of ground lists, the predicate
    interpretation and the names that quantifiers scan. Truth, validity and
    model checking are implemented here on top of those.
    """

    language: LanguageSpec
    names: NameSet | StringNameSet

    @property
    def hat_language(self) -> LanguageSpec:
        """
        The language extended by this structure's names.
        """
        return hat_extend(self.language, self.names)

    @abstractmethod
    def _evaluate(self, arglist: ArgList) -> str:
        """
        Evaluate a ground list of the name-extended language.
        """

    @abstractmethod
    def predicate_holds(self, symbol: str, elements: tuple[str, ...]) -> bool:
        """
        Whether `symbol`, interpreted at arity `len(elements)`, holds.
        """

    @abstractmethod
    def nullary_value(self, symbol: str) -> bool:
        """
        The truth value of `symbol` used without arguments.
        """

    @abstractmethod
    def quantifier_names(self) -> tuple[tuple[str, ...], bool]:
        """
        The names quantifiers scan and whether the scan is exhaustive.
        """

    @abstractmethod
    def finite_names(self, window: int = 1) -> NameSet:
        """
        A finite set of names for enumerations. Infinite name sets are cut to
        the names of strings up to length `window`.
        """

    def name_leaf(self, element: str) -> Leaf:
        return Leaf(name(self.names.name_of(element)))

    def eval_list(self, arglist: ArgList) -> str:
        """
        Evaluate a ground argument list to an individual.

        Raises:
            NotGround:
                If the list contains variables.
            NotInLanguage:
                If the name-extended grammar does not generate the list.
        """
        if not is_ground(arglist):
            raise NotGround(print_list(arglist))
        if not in_language(self.language, arglist, self.names):
            raise NotInLanguage(print_list(arglist))
        return self._evaluate(arglist)

    def _check_formula(self, formula: Formula) -> None:
        for arglist in arglists(formula):
            if not in_language(self.language, arglist, self.names):
                raise NotInLanguage(print_list(arglist))

    def eval_closed(
        self,
        formula: Formula,
        *,
        quantifier_domain: Sequence[ArgList] | None = None,
        memo: dict[Formula, TruthValue] | None = None,
    ) -> TruthValue:
        """
        Evaluate a closed formula.

        Parameters:
            formula:
                The closed formula.
            quantifier_domain:
                Ground lists for the quantifiers to range over instead of the
                names. The scan over an explicit domain counts as exhaustive.
            memo:
                A cache of truth values of closed formulas. Share it between
                calls that evaluate overlapping formulas.

        Raises:
            NotClosed:
                If the formula has free variables.
            NotInLanguage:
                If an argument list is not generated by the name-extended
                grammar.
        """
        if free := free_variables(formula):
            raise NotClosed(
                print_formula(formula),
                tuple(sorted((x.ident for x in free), key=lambda i: int(i[1:]))),
            )
        self._check_formula(formula)

        if quantifier_domain is None:
            tokens, exhaustive = self.quantifier_names()
            domain: Sequence[ArgList] = [Leaf(name(token)) for token in tokens]
        else:
            domain, exhaustive = quantifier_domain, True

        return self._truth(formula, domain, exhaustive, memo)

    def _truth(
        self,
        formula: Formula,
        domain: Sequence[ArgList],
        exhaustive: bool,
        memo: dict[Formula, TruthValue] | None,
    ) -> TruthValue:
        if memo is not None and (known := memo.get(formula)) is not None:
            return known

        result: TruthValue
        match formula:
            case Eq(left, right):
                result = TruthValue.of(self._evaluate(left) == self._evaluate(right))
            case Pred(symbol, ()):
                result = TruthValue.of(self.nullary_value(symbol))
            case Pred(symbol, args):
                values = tuple(self._evaluate(a) for a in args)
                result = TruthValue.of(self.predicate_holds(symbol, values))
            case Not(body):
                result = self._truth(body, domain, exhaustive, memo).negate()
            case And(left, right):
                result = self._truth(left, domain, exhaustive, memo).conjoin(
                    self._truth(right, domain, exhaustive, memo)
                )
            case Or(left, right):
                result = self._truth(left, domain, exhaustive, memo).disjoin(
                    self._truth(right, domain, exhaustive, memo)
                )
            case Implies(left, right):
                result = self._truth(left, domain, exhaustive, memo).implies(
                    self._truth(right, domain, exhaustive, memo)
                )
            case Iff(left, right):
                result = self._truth(left, domain, exhaustive, memo).iff(
                    self._truth(right, domain, exhaustive, memo)
                )
            case ForAll(x, body) | Exists(x, body):
                result = self._quantify(formula, x, body, domain, exhaustive, memo)
            case _:
                assert_never(formula)

        if memo is not None:
            memo[formula] = result
        return result

    def _quantify(
        self,
        formula: ForAll | Exists,
        x: SymbolAtom,
        body: Formula,
        domain: Sequence[ArgList],
        exhaustive: bool,
        memo: dict[Formula, TruthValue] | None,
    ) -> TruthValue:
        universal = isinstance(formula, ForAll)
        decisive = TruthValue.FALSE if universal else TruthValue.TRUE

        if x not in free_variables(body):
            return self._truth(body, domain, exhaustive, memo)

        saw_unknown = False
        for value in domain:
            instance = self._truth(subst_formula(body, x, value), domain, exhaustive, memo)
            if instance is decisive:
                return decisive
            saw_unknown = saw_unknown or not instance.is_exact

        if not exhaustive and _holds_for_every_instance(body):
            return TruthValue.TRUE
        if saw_unknown or not exhaustive:
            logger.debug("Scan of %s is inconclusive", print_formula(formula))
            return TruthValue.UNKNOWN_AT_BOUND
        return decisive.negate()

    def is_valid(self, formula: Formula) -> TruthValue:
        """
        Evaluate the universal closure of a formula.
        """
        return self.eval_closed(universal_closure(formula))

    def counterexample(self, formula: Formula) -> tuple[tuple[str, str], ...] | None:
        """
        The first assignment of names to the free variables (variables in
        index order, names in canonical order) under which the formula is
        false, or `None` if the scanned names contain none.
        """
        free = sorted(free_variables(formula), key=lambda a: a.index)
        tokens, _ = self.quantifier_names()
        for assignment in itertools.product(tokens, repeat=len(free)):
            instance = formula
            for x, token in zip(free, assignment, strict=True):
                instance = subst_formula(instance, x, Leaf(name(token)))
            if self.eval_closed(instance) is TruthValue.FALSE:
                return tuple(
                    (x.ident, token) for x, token in zip(free, assignment, strict=True)
                )
        return None

    def is_model(self, axioms: Sequence[Formula]) -> ModelVerdict:
        """
        Check that every axiom is valid.

        Returns:
            `MODEL` if all axioms are valid, otherwise the first false axiom
            with a falsifying assignment. If no axiom is false but some could
            not be decided, `UNKNOWN_AT_BOUND` with the first such axiom.
        """
        valid = 0
        undecided: Formula | None = None
        for axiom in axioms:
            match self.is_valid(axiom):
                case TruthValue.TRUE:
                    valid += 1
                case TruthValue.FALSE:
                    return ModelVerdict(
                        ModelStatus.COUNTEREXAMPLE,
                        valid,
                        len(axioms),
                        axiom,
                        self.counterexample(axiom) or (),
                    )
                case TruthValue.UNKNOWN_AT_BOUND:
                    undecided = undecided or axiom

        if undecided is not None:
            logger.warning("Validity of %s is undecided", print_formula(undecided))
            return ModelVerdict(
                ModelStatus.UNKNOWN_AT_BOUND, valid, len(axioms), undecided
            )
        return ModelVerdict(ModelStatus.MODEL, valid, len(axioms))


def _parse_predicate_key(key: str) -> tuple[str, int]:
    symbol, _, arity = key.rpartition("/")
    if not symbol or not arity.isdigit():
        raise InvalidDefinition("predicates", f"key {key!r} is not of the form p/n")
    return symbol, int(arity)


@dataclass(frozen=True)
class FiniteTermStructure(Structure):
    """
    A structure with a finite universe for a term grammar.
    """

    language: LanguageSpec
    """
    The language. Its grammar must be a `TermGrammar`.
    """

    universe: tuple[str, ...]
    """
    The individuals, in canonical order.
    """

    names: NameSet
    """
    The names of the individuals.
    """

    constants: Mapping[str, str] = field(default_factory=dict)
    """
    The value of every constant of the grammar.
    """

    functions: Mapping[str, Mapping[tuple[str, ...], str]] = field(default_factory=dict)
    """
    A total table for every function symbol of the grammar.
    """

    predicates: Mapping[tuple[str, int], frozenset[tuple[str, ...]]] = field(
        default_factory=dict
    )
    """
    The tuples for which `(symbol, arity)` holds. Missing entries are empty.
    """

    nullary: Mapping[str, bool] = field(default_factory=dict)
    """
    The truth values of predicates used without arguments. Missing entries
    are false.
    """

    def __post_init__(self) -> None:
        problems = self._problems()
        if problems:
            raise ExceptionGroup("Invalid structure definition", problems)

        for element in self.universe:
            if self._evaluate(self.name_leaf(element)) != element:
                raise InvalidDefinition(
                    "names", f"{self.names.name_of(element)} does not denote {element}"
                )

    def _problems(self) -> list[InvalidDefinition]:
        problems: list[InvalidDefinition] = []
        grammar = self.language.grammar
        if not isinstance(grammar, TermGrammar):
            return [InvalidDefinition("language", "a term grammar is required")]

        if not self.universe:
            problems.append(InvalidDefinition("universe", "must not be empty"))
        if len(set(self.universe)) != len(self.universe):
            problems.append(InvalidDefinition("universe", "contains duplicates"))
        universe = set(self.universe)

        if set(self.names.elements) != universe:
            problems.append(
                InvalidDefinition("names", "must name every individual exactly once")
            )
        try:
            hat_extend(self.language, self.names)
        except NameCollision as e:
            problems.append(InvalidDefinition("names", str(e)))

        if set(self.constants) != grammar.constants:
            problems.append(
                InvalidDefinition("constants", "must assign exactly the grammar's constants")
            )
        for constant, value in sorted(self.constants.items()):
            if value not in universe:
                problems.append(
                    InvalidDefinition("constants", f"{constant} -> {value!r} not in universe")
                )

        arities = grammar.arities
        if set(self.functions) != set(arities):
            problems.append(
                InvalidDefinition("functions", "must define exactly the grammar's functions")
            )
        for symbol, table in sorted(self.functions.items()):
            arity = arities.get(symbol)
            if arity is None:
                continue
            for arguments in itertools.product(self.universe, repeat=arity):
                if arguments not in table:
                    problems.append(
                        InvalidDefinition(
                            "functions",
                            f"{symbol}({' '.join(arguments)}) is undefined",
                        )
                    )
                elif table[arguments] not in universe:
                    problems.append(
                        InvalidDefinition(
                            "functions",
                            f"{symbol}({' '.join(arguments)}) = {table[arguments]!r}"
                            " not in universe",
                        )
                    )
            extra = [
                args
                for args in table
                if len(args) != arity or not set(args) <= universe
            ]
            if extra:
                problems.append(
                    InvalidDefinition(
                        "functions", f"{symbol} has entries outside its domain: {extra}"
                    )
                )

        for (symbol, arity), tuples in sorted(self.predicates.items()):
            if symbol not in self.language.predicates:
                problems.append(InvalidDefinition("predicates", f"{symbol!r} is not declared"))
            if arity < 1:
                problems.append(InvalidDefinition("predicates", f"{symbol}/{arity} has no arguments"))
            for t in sorted(tuples):
                if len(t) != arity or not set(t) <= universe:
                    problems.append(
                        InvalidDefinition("predicates", f"{symbol}/{arity} has bad tuple {t}")
                    )
        for symbol in sorted(self.nullary):
            if symbol not in self.language.predicates:
                problems.append(InvalidDefinition("predicates", f"{symbol!r} is not declared"))

        return problems

    @classmethod
    def from_mapping(
        cls,
        data: Mapping[str, Any],
        language: LanguageSpec,
        universe_tag: str = "",
    ) -> FiniteTermStructure:
        """
        Build a structure from its JSON form.

        Function tables are keyed by comma-separated arguments (`"e,a"`),
        predicates by `symbol/arity`; arity 0 takes a boolean.

        Raises:
            InvalidDefinition:
                If the mapping is malformed.
            ExceptionGroup:
                If the structure violates its invariants.
        """
        try:
            universe = tuple(data["universe"])
            raw_names = dict(data["names"])
            # Names follow universe order; unknown elements go last.
            ordered = {e: raw_names[e] for e in universe if e in raw_names}
            names = NameSet.from_mapping(ordered | raw_names, universe_tag)
            constants = dict(data.get("constants", {}))
            functions = {
                symbol: {tuple(key.split(",")): value for key, value in table.items()}
                for symbol, table in data.get("functions", {}).items()
            }
            predicates: dict[tuple[str, int], frozenset[tuple[str, ...]]] = {}
            nullary: dict[str, bool] = {}
            for key, value in data.get("predicates", {}).items():
                symbol, arity = _parse_predicate_key(key)
                if arity == 0:
                    if not isinstance(value, bool):
                        raise InvalidDefinition("predicates", f"{key} needs a boolean")
                    nullary[symbol] = value
                else:
                    predicates[(symbol, arity)] = frozenset(tuple(t) for t in value)
        except (KeyError, TypeError, AttributeError) as e:
            raise InvalidDefinition("structure", f"missing or malformed key {e}") from e

        return cls(language, universe, names, constants, functions, predicates, nullary)

    @override
    def _evaluate(self, arglist: ArgList) -> str:
        match arglist:
            case Leaf(atom) if atom.kind is SymbolKind.NAME:
                return self.names.element_of(atom.ident)
            case Leaf(atom):
                return self.constants[atom.ident]
            case Apply(function, children):
                return self.functions[function][
                    tuple(self._evaluate(child) for child in children)
                ]
            case Concat():
                raise NotInLanguage(print_list(arglist))
            case _:
                assert_never(arglist)

    @override
    def predicate_holds(self, symbol: str, elements: tuple[str, ...]) -> bool:
        return elements in self.predicates.get((symbol, len(elements)), frozenset())

    @override
    def nullary_value(self, symbol: str) -> bool:
        return self.nullary.get(symbol, False)

    @override
    def quantifier_names(self) -> tuple[tuple[str, ...], bool]:
        return tuple(self.names.name_of(d) for d in self.universe), True

    @override
    def finite_names(self, window: int = 1) -> NameSet:
        return self.names


@dataclass(frozen=True)
class StringStructure(Structure):
    """
    The structure of all nonempty strings over single-character atoms.
    """

    language: LanguageSpec
    """
    The language. Its grammar must be a `StringGrammar` whose atoms are lists.
    """

    relations: Mapping[tuple[str, int], StringPredicate] = field(default_factory=dict)
    """
    The relation interpreting `(symbol, arity)`. Missing entries are empty.
    """

    nullary: Mapping[str, bool] = field(default_factory=dict)

    quant_bound: int = 6
    """
    The maximum string length scanned by quantifiers.
    """

    names: StringNameSet = field(init=False)

    def __post_init__(self) -> None:
        problems: list[InvalidDefinition] = []
        grammar = self.language.grammar
        if not isinstance(grammar, StringGrammar) or not grammar.atoms_are_lists:
            problems.append(
                InvalidDefinition("language", "a string grammar with atom lists is required")
            )
            atoms: tuple[str, ...] = ()
        else:
            atoms = tuple(sorted(grammar.atoms))
        for atom in atoms:
            if len(atom) != 1 or not atom.isalnum():
                problems.append(
                    InvalidDefinition("atoms", f"{atom!r} is not a single alphanumeric character")
                )
        if not atoms and not problems:
            problems.append(InvalidDefinition("atoms", "must not be empty"))
        for (symbol, arity), relation in sorted(self.relations.items(), key=lambda i: i[0]):
            if symbol not in self.language.predicates:
                problems.append(InvalidDefinition("predicates", f"{symbol!r} is not declared"))
            if not relation.supports_arity(arity):
                problems.append(
                    InvalidDefinition("predicates", f"{symbol}/{arity}: arity not supported")
                )
        for symbol in sorted(self.nullary):
            if symbol not in self.language.predicates:
                problems.append(InvalidDefinition("predicates", f"{symbol!r} is not declared"))
        if self.quant_bound < 1:
            problems.append(InvalidDefinition("quantBound", "must be at least 1"))
        if problems:
            raise ExceptionGroup("Invalid structure definition", problems)

        object.__setattr__(self, "names", StringNameSet(atoms))

    @classmethod
    def from_mapping(
        cls,
        data: Mapping[str, Any],
        language: LanguageSpec | None = None,
    ) -> StringStructure:
        """
        Build a string structure from its JSON form. Without an explicit
        language, the atoms form the alphabet and the predicate keys the
        predicate symbols.

        Raises:
            InvalidDefinition:
                If the mapping is malformed.
            ExceptionGroup:
                If the structure violates its invariants.
        """
        try:
            relations: dict[tuple[str, int], StringPredicate] = {}
            nullary: dict[str, bool] = {}
            for key, value in data.get("predicates", {}).items():
                symbol, arity = _parse_predicate_key(key)
                if arity == 0:
                    if not isinstance(value, bool):
                        raise InvalidDefinition("predicates", f"{key} needs a boolean")
                    nullary[symbol] = value
                else:
                    relations[(symbol, arity)] = predicate_from_spec(key, value)
            if language is None:
                atoms = frozenset(data["atoms"])
                language = LanguageSpec(
                    alphabet=atoms,
                    predicates=frozenset(s for s, _ in relations) | frozenset(nullary),
                    grammar=StringGrammar(atoms, True),
                )
            quant_bound = int(data.get("quantBound", 6))
        except (KeyError, TypeError, ValueError) as e:
            raise InvalidDefinition("structure", f"missing or malformed key {e}") from e

        return cls(language, relations, nullary, quant_bound)

    @override
    def _evaluate(self, arglist: ArgList) -> str:
        match arglist:
            case Leaf(atom) if atom.kind is SymbolKind.NAME:
                return self.names.element_of(atom.ident)
            case Leaf(atom):
                return atom.ident
            case Concat(children):
                return "".join(self._evaluate(child) for child in children)
            case Apply():
                raise NotInLanguage(print_list(arglist))
            case _:
                assert_never(arglist)

    @override
    def predicate_holds(self, symbol: str, elements: tuple[str, ...]) -> bool:
        relation = self.relations.get((symbol, len(elements)))
        return relation is not None and relation.holds(*elements)

    @override
    def nullary_value(self, symbol: str) -> bool:
        return self.nullary.get(symbol, False)

    @override
    def quantifier_names(self) -> tuple[tuple[str, ...], bool]:
        return tuple("$" + s for s in self.names.strings(self.quant_bound)), False

    @override
    def finite_names(self, window: int = 1) -> NameSet:
        return self.names.window(window)


def structures_equal(first: Structure, second: Structure) -> bool:
    """
    Decide whether two structures are equal: same language, universe, names,
    evaluation of the generators and predicate interpretation.
    """
    match first, second:
        case FiniteTermStructure(), FiniteTermStructure():

            def nonempty(
                tables: Mapping[tuple[str, int], frozenset[tuple[str, ...]]],
            ) -> dict[tuple[str, int], frozenset[tuple[str, ...]]]:
                return {key: value for key, value in tables.items() if value}

            return (
                first.language == second.language
                and set(first.universe) == set(second.universe)
                and dict(first.names.pairs) == dict(second.names.pairs)
                and dict(first.constants) == dict(second.constants)
                and {k: dict(v) for k, v in first.functions.items()}
                == {k: dict(v) for k, v in second.functions.items()}
                and nonempty(first.predicates) == nonempty(second.predicates)
                and {k for k, v in first.nullary.items() if v}
                == {k for k, v in second.nullary.items() if v}
            )
        case StringStructure(), StringStructure():
            return first == second
        case _:
            return False


def check_substitution_coherence(
    structure: Structure,
    list_depth: int = 2,
    substituent_depth: int = 1,
    *,
    x: SymbolAtom | None = None,
    name_window: int = 1,
    sample: int | None = None,
    seed: int = 0,
    max_listed: int = 10,
    limits: Limits = DEFAULT_LIMITS,
) -> Report:
    """
    Check that evaluating `l` with a ground list `m` substituted for `x` gives
    the same individual as substituting the name of `m`'s value instead.

    Parameters:
        structure:
            The structure to examine.
        list_depth:
            Depth (string length) bound of the lists `l`, built from the
            grammar, the names and `x`.
        substituent_depth:
            Depth (string length) bound of the ground lists `m`.
        x:
            The substituted variable, `x1` by default.
        name_window:
            For infinite name sets, the maximum length of named strings used
            in the enumeration.
        sample:
            Check a random sample of this many pairs instead of all pairs.
        seed:
            Seed of the sample.
        max_listed:
            The number of violations listed individually.
        limits:
            Enumeration caps.

    Returns:
        A report with one entry per listed violation.
    """
    x = x or variable(1)
    names = structure.finite_names(name_window)
    templates = enumerate_lists(
        structure.language, [*name_leaves(names), Leaf(x)], list_depth, limits
    )
    substituents = enumerate_ground(structure.language, names, substituent_depth, limits)

    pairs: Sequence[tuple[int, int]] = [
        (i, j) for i in range(len(templates)) for j in range(len(substituents))
    ]
    if sample is not None and sample < len(pairs):
        pairs = sorted(random.Random(seed).sample(pairs, sample))
    logger.debug("Checking %s substitution pairs", len(pairs))

    violations = 0
    builder = build_report(
        ok_summary=f"evaluation respects substitution on {len(pairs)} pairs",
        fail_summary="evaluation does not respect substitution",
    )
    for i, j in pairs:
        template, substituent = templates[i], substituents[j]
        value = structure.eval_list(substituent)
        direct = structure.eval_list(subst_list(template, x, substituent))
        named = structure.eval_list(subst_list(template, x, structure.name_leaf(value)))
        if direct != named:
            violations += 1
            if violations <= max_listed:
                builder.failed(
                    f"{print_list(template)} with {x} := {print_list(substituent)}",
                    f"substituting the list gives {direct}, its name gives {named}",
                    witness=(template, substituent),
                )

    builder.base_details = {"pairs": len(pairs), "violations": violations}
    return builder.to_report()
