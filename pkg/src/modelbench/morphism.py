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
Homomorphisms and isomorphisms between structures of one language.

A morphism maps the individuals of its source to those of its target. Its
pushforward rewrites ground lists: every name of a source individual `d` is
replaced by the target's name of the image of `d`. A morphism is a
homomorphism when evaluating commutes with the pushforward and predicates are
preserved; an isomorphism is a bijective homomorphism that also reflects
predicates.

For finite term structures all checks are exact: commuting on all ground
lists follows from compatibility with constants and function tables by
induction on the lists. String structures are infinite, so their checks are
verified on all lists up to a length bound.

Notes:
    Source and target keep their own names even when their universes share
    identifiers.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Callable, Iterator, Mapping
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Protocol, assert_never, override

from .config import DEFAULT_LIMITS, Limits
from .errors import (
    ExplosionGuard,
    InvalidDefinition,
    LanguageMismatch,
    NotGround,
    NotInLanguage,
    NotInvertible,
    StructureMismatch,
    UniverseTooLarge,
)
from .executor import SweepExecutor
from .henkin import FragmentBounds, enumerate_formulas
from .language import TermGrammar, enumerate_ground, in_language
from .report import Report, build_report
from .structure import (
    FiniteTermStructure,
    Structure,
    StringStructure,
    TruthValue,
    structures_equal,
)
from .syntax import (
    Apply,
    ArgList,
    Concat,
    Formula,
    Leaf,
    SymbolAtom,
    alphabet_symbol,
    instantiate,
    is_ground,
    map_formula_lists,
    map_names,
    name,
    print_formula,
    print_list,
    relaxed_skeleton,
    skeleton_pairs,
)

logger = logging.getLogger(f"{__package__}.{__name__}")


# --- string maps --------------------------------------------------------------


class StringStep(Protocol):
    """
    Protocol for one step of a built-in map between strings.
    """

    def apply(self, value: str) -> str:
        """
        The image of `value`.
        """
        ...

    def inverse(self) -> StringStep:
        """
        The step undoing this one.

        Raises:
            NotInvertible:
                If the step is not injective.
        """
        ...


@dataclass(frozen=True)
class Reverse(StringStep):
    @override
    def apply(self, value: str) -> str:
        return value[::-1]

    @override
    def inverse(self) -> StringStep:
        return self


@dataclass(frozen=True)
class Rename(StringStep):
    """
    Replace every character by its image; unlisted characters stay.
    """

    pairs: tuple[tuple[str, str], ...]

    def __post_init__(self) -> None:
        for source, target in self.pairs:
            if not (isinstance(source, str) and isinstance(target, str)) or (
                len(source) != 1 or len(target) != 1
            ):
                raise InvalidDefinition(
                    "map", f"rename {source!r} -> {target!r} must map single characters"
                )

    @override
    def apply(self, value: str) -> str:
        table = dict(self.pairs)
        return "".join(table.get(character, character) for character in value)

    @override
    def inverse(self) -> StringStep:
        targets = [target for _, target in self.pairs]
        if len(set(targets)) != len(targets):
            raise NotInvertible(f"rename {dict(self.pairs)} is not injective")
        return Rename(tuple(sorted((t, s) for s, t in self.pairs)))


@dataclass(frozen=True)
class StringMap:
    """
    A built-in map between strings: the composite of its steps, applied first
    to last. No steps is the identity.
    """

    steps: tuple[StringStep, ...] = ()

    @classmethod
    def from_spec(cls, spec: Any) -> StringMap:
        """
        Decode `"identity"`, `"reverse"` or `{"rename": {"a": "b", ...}}`.

        Raises:
            InvalidDefinition:
                If the spelling names no built-in map.
        """
        match spec:
            case "identity":
                return cls()
            case "reverse":
                return cls((Reverse(),))
            case {"rename": dict(pairs)} if len(spec) == 1:
                return cls((Rename(tuple(sorted(pairs.items()))),))
            case _:
                raise InvalidDefinition("map", f"unknown string map {spec!r}")

    def __call__(self, value: str) -> str:
        for step in self.steps:
            value = step.apply(value)
        return value

    def then(self, after: StringMap) -> StringMap:
        """
        The map applying `self`, then `after`.
        """
        return StringMap(self.steps + after.steps)

    def inverse(self) -> StringMap:
        return StringMap(tuple(step.inverse() for step in reversed(self.steps)))


type ElementMap = Mapping[str, str] | StringMap


# --- morphisms ----------------------------------------------------------------


def _atoms(structure: StringStructure) -> tuple[str, ...]:
    return structure.names.atoms


@dataclass(frozen=True)
class Morphism:
    """
    A total map from the individuals of `source` to those of `target`.
    """

    source: Structure
    target: Structure

    mapping: ElementMap
    """
    A table for finite sources, a `StringMap` for string structures.
    """

    label: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if self.source.language != self.target.language:
            raise LanguageMismatch("Source and target must share one formal language")

        match self.source, self.target, self.mapping:
            case FiniteTermStructure(), FiniteTermStructure(), StringMap():
                raise InvalidDefinition("map", "finite structures need a table")
            case FiniteTermStructure() as source, FiniteTermStructure() as target, _:
                problems = []
                if missing := [d for d in source.universe if d not in self.mapping]:
                    problems.append(
                        InvalidDefinition("map", f"no image for {', '.join(missing)}")
                    )
                if extra := sorted(set(self.mapping) - set(source.universe)):
                    problems.append(
                        InvalidDefinition("map", f"{', '.join(extra)} not in the source")
                    )
                outside = sorted(
                    {v for v in self.mapping.values() if v not in target.universe}
                )
                if outside:
                    problems.append(
                        InvalidDefinition(
                            "map", f"images {', '.join(outside)} not in the target"
                        )
                    )
                if problems:
                    raise ExceptionGroup("Invalid morphism definition", problems)
            case StringStructure() as source, StringStructure() as target, StringMap():
                for atom in _atoms(source):
                    image = self.mapping(atom)
                    if not image or not set(image) <= set(_atoms(target)):
                        raise InvalidDefinition(
                            "map", f"{atom!r} maps to {image!r}, not a target string"
                        )
            case _:
                raise InvalidDefinition(
                    "map", "string structures need a built-in string map"
                )

    def __call__(self, element: str) -> str:
        match self.mapping:
            case StringMap():
                return self.mapping(element)
            case _:
                return self.mapping[element]

    def table(self) -> dict[str, str]:
        """
        The map as a table, in source universe order.

        Raises:
            TypeError:
                If the source is infinite.
        """
        if not isinstance(self.source, FiniteTermStructure):
            raise TypeError("Only morphisms between finite structures have a table")
        return {d: self(d) for d in self.source.universe}

    def is_bijective(self) -> bool:
        match self.source, self.target:
            case FiniteTermStructure() as source, FiniteTermStructure() as target:
                images = [self(d) for d in source.universe]
                return len(set(images)) == len(images) and set(images) == set(
                    target.universe
                )
            case StringStructure() as source, StringStructure() as target:
                images = [self(atom) for atom in _atoms(source)]
                return (
                    all(len(image) == 1 for image in images)
                    and len(set(images)) == len(images)
                    and set(images) == set(_atoms(target))
                )
            case _:
                return False

    def __str__(self) -> str:
        if isinstance(self.mapping, StringMap):
            return self.label or "string map"
        return " ".join(f"{d}->{image}" for d, image in self.table().items())


def identity(structure: Structure) -> Morphism:
    """
    The identity morphism of a structure.
    """
    match structure:
        case FiniteTermStructure():
            return Morphism(
                structure,
                structure,
                {d: d for d in structure.universe},
                "identity",
            )
        case StringStructure():
            return Morphism(structure, structure, StringMap(), "identity")
        case _:
            raise TypeError(f"Unsupported structure {type(structure).__name__}")


def _name_rewriter(psi: Morphism) -> Callable[[SymbolAtom], SymbolAtom]:
    def rewrite(atom: SymbolAtom) -> SymbolAtom:
        element = psi.source.names.element_of(atom.ident)
        return name(psi.target.names.name_of(psi(element)))

    return rewrite


def _check_pushable(psi: Morphism, arglist: ArgList) -> None:
    if not is_ground(arglist):
        raise NotGround(print_list(arglist))
    if not in_language(psi.source.language, arglist, psi.source.names):
        raise NotInLanguage(print_list(arglist))


def push_list(psi: Morphism, arglist: ArgList) -> ArgList:
    """
    Push a ground list of the source forward: every source name `$d` becomes
    the target's name of `psi(d)`.

    Raises:
        NotGround:
            If the list contains variables.
        NotInLanguage:
            If the list is not generated by the source's name-extended grammar.
    """
    _check_pushable(psi, arglist)
    return map_names(arglist, _name_rewriter(psi))


def push_list_by_skeleton(
    psi: Morphism,
    arglist: ArgList,
    *,
    relaxed: bool = False,
) -> ArgList:
    """
    Push a ground list forward through a decomposition: split it into a
    name-free skeleton and its names, map the names, and substitute them back.

    Parameters:
        relaxed:
            Use one variable per name occurrence instead of one per distinct
            name. Both decompositions give the same result as `push_list`.
    """
    _check_pushable(psi, arglist)
    rewrite = _name_rewriter(psi)

    if relaxed:
        bare, pairs = relaxed_skeleton(arglist)
        return instantiate(bare, [(x, rewrite(atom)) for x, atom in pairs])

    bare, pairs = skeleton_pairs(arglist)
    return instantiate(bare, [(x, rewrite(atom)) for x, atom in pairs])


def push_formula(psi: Morphism, formula: Formula) -> Formula:
    """
    Rewrite the source names of a formula into the target's names of their
    images. Variables and the rest of the syntax stay.
    """
    rewrite = _name_rewriter(psi)
    return map_formula_lists(formula, lambda arglist: map_names(arglist, rewrite))


# --- verdicts -----------------------------------------------------------------


class MorphismStatus(Enum):
    EXACT_HOMOMORPHISM = "EXACT-HOMOMORPHISM"
    EXACT_ISOMORPHISM = "EXACT-ISOMORPHISM"
    BOUNDED_VERIFIED = "BOUNDED-VERIFIED"
    COUNTEREXAMPLE = "COUNTEREXAMPLE"


@dataclass(frozen=True)
class MorphismVerdict:
    """
    The answer of a homomorphism or isomorphism check.
    """

    status: MorphismStatus

    depth: int | None = None
    """
    The list depth verified up to, for bounded answers.
    """

    witness: Any = None
    """
    For counterexamples: a ground list on which evaluation and pushforward do
    not commute, a `(symbol, tuple)` pair violating a predicate condition, or
    the individuals violating bijectivity.
    """

    reason: str = ""

    @property
    def holds(self) -> bool:
        return self.status is not MorphismStatus.COUNTEREXAMPLE

    def __str__(self) -> str:
        match self.status:
            case MorphismStatus.EXACT_HOMOMORPHISM | MorphismStatus.EXACT_ISOMORPHISM:
                return self.status.value
            case MorphismStatus.BOUNDED_VERIFIED:
                return f"{self.status.value} (depth {self.depth})"
            case MorphismStatus.COUNTEREXAMPLE:
                return f"{self.status.value}: {self.reason}: {format_witness(self.witness)}"
            case _:
                assert_never(self.status)


def format_witness(witness: Any) -> str:
    """
    Render a counterexample witness: lists in canonical syntax, predicate
    violations as `p(d1, d2)`.
    """
    match witness:
        case Leaf() | Apply() | Concat():
            return print_list(witness)
        case (str() as symbol, tuple() as elements):
            return f"{symbol}({', '.join(elements)})"
        case tuple():
            return ", ".join(str(item) for item in witness)
        case _:
            return str(witness)


def _counterexample(reason: str, witness: Any) -> MorphismVerdict:
    logger.debug("Morphism check failed: %s", reason)
    return MorphismVerdict(MorphismStatus.COUNTEREXAMPLE, witness=witness, reason=reason)


def _finite_generator_violation(
    psi: Morphism,
    source: FiniteTermStructure,
    target: FiniteTermStructure,
) -> MorphismVerdict | None:
    for constant in sorted(source.constants):
        if psi(source.constants[constant]) != target.constants[constant]:
            return _counterexample(
                "evaluation does not commute", Leaf(alphabet_symbol(constant))
            )

    grammar = source.language.grammar
    assert isinstance(grammar, TermGrammar)
    for function, arity in grammar.functions:
        source_table = source.functions[function]
        target_table = target.functions[function]
        for arguments in itertools.product(source.universe, repeat=arity):
            image = tuple(psi(d) for d in arguments)
            if psi(source_table[arguments]) != target_table[image]:
                return _counterexample(
                    "evaluation does not commute",
                    Apply(function, tuple(source.name_leaf(d) for d in arguments)),
                )
    return None


def _predicate_keys(*structures: FiniteTermStructure) -> list[tuple[str, int]]:
    return sorted({key for s in structures for key in s.predicates})


def _nullary_violation(
    source: Structure, target: Structure, *, reflect: bool
) -> MorphismVerdict | None:
    for symbol in sorted(source.language.predicates):
        forward = source.nullary_value(symbol)
        backward = target.nullary_value(symbol)
        if forward and not backward:
            return _counterexample("predicate not preserved", (symbol, ()))
        if reflect and backward and not forward:
            return _counterexample("predicate not reflected", (symbol, ()))
    return None


def _finite_check(psi: Morphism, *, iso: bool) -> MorphismVerdict:
    source, target = psi.source, psi.target
    assert isinstance(source, FiniteTermStructure)
    assert isinstance(target, FiniteTermStructure)

    if iso:
        seen: dict[str, str] = {}
        for d in source.universe:
            if (other := seen.get(psi(d))) is not None:
                return _counterexample("not injective", (other, d))
            seen[psi(d)] = d
        for d in target.universe:
            if d not in seen:
                return _counterexample("not surjective", d)

    if verdict := _finite_generator_violation(psi, source, target):
        return verdict
    if verdict := _nullary_violation(source, target, reflect=iso):
        return verdict

    for symbol, arity in _predicate_keys(source, target):
        source_tuples = source.predicates.get((symbol, arity), frozenset())
        target_tuples = target.predicates.get((symbol, arity), frozenset())
        for t in sorted(source_tuples):
            if tuple(psi(d) for d in t) not in target_tuples:
                return _counterexample("predicate not preserved", (symbol, t))
        if iso:
            images = {tuple(psi(d) for d in t) for t in source_tuples}
            inverse = {psi(d): d for d in source.universe}
            for u in sorted(target_tuples - images):
                return _counterexample(
                    "predicate not reflected",
                    (symbol, tuple(inverse[d] for d in u)),
                )

    status = MorphismStatus.EXACT_ISOMORPHISM if iso else MorphismStatus.EXACT_HOMOMORPHISM
    return MorphismVerdict(status)


def _string_tuples(
    structure: StringStructure, arity: int, depth_bound: int, limits: Limits
) -> Iterator[tuple[str, ...]]:
    strings = list(structure.names.strings(depth_bound))
    predicted = len(strings) ** arity
    if predicted > limits.enumeration_cap:
        raise ExplosionGuard("predicate tuples", predicted, limits.enumeration_cap)
    return itertools.product(strings, repeat=arity)


def _bounded_check(
    psi: Morphism, depth_bound: int, limits: Limits, *, iso: bool
) -> MorphismVerdict:
    source, target = psi.source, psi.target
    assert isinstance(source, StringStructure)
    assert isinstance(target, StringStructure)

    if iso and not psi.is_bijective():
        return _counterexample("not bijective", str(psi))

    names = source.finite_names(1)
    for arglist in enumerate_ground(source.language, names, depth_bound, limits):
        if psi(source.eval_list(arglist)) != target.eval_list(push_list(psi, arglist)):
            return _counterexample("evaluation does not commute", arglist)

    if verdict := _nullary_violation(source, target, reflect=iso):
        return verdict

    inverse = psi.mapping.inverse() if iso and isinstance(psi.mapping, StringMap) else None
    for symbol, arity in sorted(set(source.relations) | set(target.relations)):
        for t in _string_tuples(source, arity, depth_bound, limits):
            image = tuple(psi(s) for s in t)
            if source.predicate_holds(symbol, t) and not target.predicate_holds(
                symbol, image
            ):
                return _counterexample("predicate not preserved", (symbol, t))
        if inverse is not None:
            for u in _string_tuples(target, arity, depth_bound, limits):
                if target.predicate_holds(symbol, u) and not source.predicate_holds(
                    symbol, tuple(inverse(s) for s in u)
                ):
                    return _counterexample("predicate not reflected", (symbol, u))

    logger.warning(
        "Morphism %s verified on lists up to length %s only", psi, depth_bound
    )
    return MorphismVerdict(MorphismStatus.BOUNDED_VERIFIED, depth=depth_bound)


def is_homomorphism(
    psi: Morphism,
    depth_bound: int = 3,
    limits: Limits = DEFAULT_LIMITS,
) -> MorphismVerdict:
    """
    Check that `psi` is a homomorphism.

    Finite term structures are checked exactly on constants, function tables
    and predicate tables. String structures are checked on every ground list
    (and predicate tuple of strings) up to `depth_bound`.

    Returns:
        `EXACT_HOMOMORPHISM`, `BOUNDED_VERIFIED` or a `COUNTEREXAMPLE` carrying
        its witness.
    """
    match psi.source:
        case FiniteTermStructure():
            return _finite_check(psi, iso=False)
        case StringStructure():
            return _bounded_check(psi, depth_bound, limits, iso=False)
        case _:
            raise TypeError(f"Unsupported structure {type(psi.source).__name__}")


def is_isomorphism(
    psi: Morphism,
    depth_bound: int = 3,
    limits: Limits = DEFAULT_LIMITS,
) -> MorphismVerdict:
    """
    Check that `psi` is a bijective homomorphism whose inverse preserves the
    predicates as well.
    """
    match psi.source:
        case FiniteTermStructure():
            return _finite_check(psi, iso=True)
        case StringStructure():
            return _bounded_check(psi, depth_bound, limits, iso=True)
        case _:
            raise TypeError(f"Unsupported structure {type(psi.source).__name__}")


# --- algebra ------------------------------------------------------------------


def compose(phi: Morphism, psi: Morphism) -> Morphism:
    """
    The composite `phi ∘ psi`: first `psi`, then `phi`.

    Raises:
        StructureMismatch:
            If the target of `psi` is not the source of `phi`.
    """
    if not structures_equal(psi.target, phi.source):
        raise StructureMismatch("The target of psi must be the source of phi")

    mapping: ElementMap
    match psi.mapping, phi.mapping:
        case StringMap() as first, StringMap() as second:
            mapping = first.then(second)
        case _:
            mapping = {d: phi(psi(d)) for d in psi.table()}
    label = f"{phi.label} . {psi.label}" if phi.label and psi.label else ""
    return Morphism(psi.source, phi.target, mapping, label)


def invert(psi: Morphism, depth_bound: int = 3) -> Morphism:
    """
    The inverse of an isomorphism.

    Raises:
        NotInvertible:
            If `psi` is not an isomorphism (exactly, or up to `depth_bound` for
            string structures).
    """
    verdict = is_isomorphism(psi, depth_bound)
    if not verdict.holds:
        raise NotInvertible(f"{verdict.reason}: {verdict.witness}")

    mapping: ElementMap
    match psi.mapping:
        case StringMap():
            mapping = psi.mapping.inverse()
        case _:
            mapping = {image: d for d, image in psi.table().items()}
            assert isinstance(psi.target, FiniteTermStructure)
            mapping = {d: mapping[d] for d in psi.target.universe}
    label = f"{psi.label}^-1" if psi.label else ""
    return Morphism(psi.target, psi.source, mapping, label)


# --- enumeration --------------------------------------------------------------


@dataclass(frozen=True)
class _Constraint:
    """
    `symbol(images of arguments) == image of result` in the target, or
    membership of the images in the target predicate `symbol` when `result`
    is None.
    """

    symbol: str
    arguments: tuple[int, ...]
    result: int | None = None

    @property
    def last(self) -> int:
        if self.result is None:
            return max(self.arguments)
        return max(*self.arguments, self.result)


class _Search:
    """
    Backtracking over image tuples in target universe order. Each constraint
    is checked as soon as the last individual it mentions has an image.
    """

    def __init__(
        self,
        source: FiniteTermStructure,
        target: FiniteTermStructure,
        iso: bool,
    ):
        self.source = source
        self.target = target
        self.iso = iso
        index = {d: i for i, d in enumerate(source.universe)}
        self.by_last: list[list[_Constraint]] = [[] for _ in source.universe]
        self.required: dict[int, set[str]] = {}

        for constant, value in source.constants.items():
            self.required.setdefault(index[value], set()).add(target.constants[constant])

        for function, table in sorted(source.functions.items()):
            for arguments, value in sorted(table.items()):
                c = _Constraint(function, tuple(index[a] for a in arguments), index[value])
                self.by_last[c.last].append(c)

        for (symbol, _), tuples in sorted(source.predicates.items()):
            for t in sorted(tuples):
                c = _Constraint(symbol, tuple(index[d] for d in t))
                self.by_last[c.last].append(c)

    def _consistent(self, images: list[str]) -> bool:
        k = len(images) - 1
        if (required := self.required.get(k)) is not None and required != {images[k]}:
            return False

        for c in self.by_last[k]:
            arguments = tuple(images[i] for i in c.arguments)
            if c.result is None:
                key = (c.symbol, len(arguments))
                if arguments not in self.target.predicates.get(key, frozenset()):
                    return False
            elif self.target.functions[c.symbol][arguments] != images[c.result]:
                return False
        return True

    def _reflects(self, images: list[str]) -> bool:
        mapping = dict(zip(self.source.universe, images, strict=True))
        for key in _predicate_keys(self.source, self.target):
            source_tuples = self.source.predicates.get(key, frozenset())
            target_tuples = self.target.predicates.get(key, frozenset())
            if {tuple(mapping[d] for d in t) for t in source_tuples} != target_tuples:
                return False
        return True

    def branch(self, first: str) -> list[dict[str, str]]:
        """
        All solutions mapping the first individual to `first`.
        """
        found: list[dict[str, str]] = []
        images = [first]

        def extend() -> None:
            if not self._consistent(images):
                return
            if len(images) == len(self.source.universe):
                if not self.iso or self._reflects(images):
                    found.append(dict(zip(self.source.universe, images, strict=True)))
                return
            for candidate in self.target.universe:
                if self.iso and candidate in images:
                    continue
                images.append(candidate)
                extend()
                images.pop()

        extend()
        return found


def enumerate_morphisms(
    source: Structure,
    target: Structure,
    mode: str = "hom",
    limits: Limits = DEFAULT_LIMITS,
) -> list[Morphism]:
    """
    Find every homomorphism (`mode="hom"`) or isomorphism (`mode="iso"`)
    between two finite structures by backtracking search.

    Returns:
        The morphisms in lexicographic order of their image tuples, taken in
        source universe order.

    Raises:
        UniverseTooLarge:
            If the source has more individuals than
            `limits.morphism_universe_cap`.
        LanguageMismatch:
            If the structures use different languages.
    """
    if mode not in ("hom", "iso"):
        raise ValueError(f"Unknown mode {mode!r}")
    if not (
        isinstance(source, FiniteTermStructure) and isinstance(target, FiniteTermStructure)
    ):
        raise InvalidDefinition("structure", "morphism search needs finite structures")
    if source.language != target.language:
        raise LanguageMismatch("Source and target must share one formal language")
    if len(source.universe) > limits.morphism_universe_cap:
        raise UniverseTooLarge(len(source.universe), limits.morphism_universe_cap)

    iso = mode == "iso"
    if iso and len(source.universe) != len(target.universe):
        return []
    if _nullary_violation(source, target, reflect=iso):
        return []

    search = _Search(source, target, iso)
    with SweepExecutor[list[dict[str, str]]](limits.workers) as executor:
        branches = executor.map_ordered(search.branch, target.universe)

    tables = [table for branch in branches for table in branch]
    logger.debug("Found %s %s morphisms", len(tables), mode)
    return [Morphism(source, target, table) for table in tables]


# --- bounded reports ----------------------------------------------------------


def check_pushforward_bijective(
    psi: Morphism,
    depth_bound: int = 2,
    *,
    name_window: int = 1,
    limits: Limits = DEFAULT_LIMITS,
) -> Report:
    """
    Check that the pushforward of an isomorphism is a bijection between the
    ground lists of source and target, on all lists up to `depth_bound`.
    """
    builder = build_report(
        ok_summary=f"pushforward is bijective up to depth {depth_bound}",
        fail_summary=f"pushforward is not bijective up to depth {depth_bound}",
    )

    source_lists = enumerate_ground(
        psi.source.language, psi.source.finite_names(name_window), depth_bound, limits
    )
    target_lists = enumerate_ground(
        psi.target.language, psi.target.finite_names(name_window), depth_bound, limits
    )

    images: dict[ArgList, ArgList] = {}
    collision = None
    for arglist in source_lists:
        image = push_list(psi, arglist)
        if image in images and collision is None:
            collision = (images[image], arglist)
        images.setdefault(image, arglist)

    if collision is None:
        builder.passed("injective", f"{len(source_lists)} lists have distinct images")
    else:
        builder.failed(
            "injective",
            f"{print_list(collision[0])} and {print_list(collision[1])} share an image",
            witness=collision,
        )

    missed = [arglist for arglist in target_lists if arglist not in images]
    if missed:
        builder.failed(
            "surjective",
            f"{len(missed)} target lists have no preimage, first {print_list(missed[0])}",
            witness=missed[0],
        )
    else:
        builder.passed("surjective", f"all {len(target_lists)} target lists are hit")

    return builder.to_report()


def check_truth_transfer(
    psi: Morphism,
    bounds: FragmentBounds,
    *,
    max_listed: int = 10,
    limits: Limits = DEFAULT_LIMITS,
) -> Report:
    """
    Check that every closed formula of the bounded fragment has the same truth
    value in the source as its pushforward has in the target.
    """
    names = psi.source.finite_names(1)
    formulas = enumerate_formulas(psi.source.language, names, bounds, limits=limits)
    source_memo: dict[Formula, TruthValue] = {}
    target_memo: dict[Formula, TruthValue] = {}

    builder = build_report(
        ok_summary=f"truth transfers on {len(formulas)} formulas",
        fail_summary="truth does not transfer",
    )
    mismatches = 0
    for formula in formulas:
        before = psi.source.eval_closed(formula, memo=source_memo)
        pushed = push_formula(psi, formula)
        after = psi.target.eval_closed(pushed, memo=target_memo)
        if before != after:
            mismatches += 1
            if mismatches <= max_listed:
                builder.failed(
                    print_formula(formula),
                    f"{before.value} in the source, {after.value} for "
                    f"{print_formula(pushed)} in the target",
                    witness=formula,
                )

    builder.base_details = {"formulas": len(formulas), "mismatches": mismatches}
    return builder.to_report()
