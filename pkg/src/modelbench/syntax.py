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
Abstract syntax of argument lists and formulas.

Argument lists are finite trees: leaves are alphabet symbols, variables or
names; inner nodes are function applications (term grammars) or
concatenations (string grammars). Formulas are written in prefix notation, so
printing needs no precedence rules.

Notes:
    - Variables are exactly the tokens `x1`, `x2`, ... and are identified by
      their index.
    - Names are spelled `$ident`. The marker keeps them apart from every
      alphabet and from the variables.
    - Formula substitution only ever inserts ground argument lists, so it
      never captures a bound variable.
"""

from __future__ import annotations

import re
from collections.abc import Callable, Iterable, Iterator
from dataclasses import dataclass
from enum import Enum
from typing import ClassVar, assert_never

from .errors import NonGroundSubstituent, NotGround

VARIABLE_PATTERN = re.compile(r"x[1-9][0-9]*")
NAME_PATTERN = re.compile(r"\$[A-Za-z0-9_]+")
NAME_MARKER = "$"


class SymbolKind(Enum):
    """
    The lexical class of a leaf symbol.
    """

    ALPHABET = "alphabet"
    VARIABLE = "variable"
    NAME = "name"
    PREDICATE = "predicate"


@dataclass(frozen=True)
class SymbolAtom:
    """
    A single token of an argument list or formula.
    """

    kind: SymbolKind
    """
    The lexical class of the token.
    """

    ident: str
    """
    The token text as it appears in the concrete syntax.
    """

    def __post_init__(self) -> None:
        if not self.ident:
            raise ValueError("Symbol tokens must not be empty")
        match self.kind:
            case SymbolKind.VARIABLE:
                if not VARIABLE_PATTERN.fullmatch(self.ident):
                    raise ValueError(f"{self.ident!r} is not a variable token")
            case SymbolKind.NAME:
                if not NAME_PATTERN.fullmatch(self.ident):
                    raise ValueError(f"{self.ident!r} is not a name token")
            case SymbolKind.ALPHABET | SymbolKind.PREDICATE:
                if self.ident.startswith(NAME_MARKER) or VARIABLE_PATTERN.fullmatch(
                    self.ident
                ):
                    raise ValueError(
                        f"{self.ident!r} is reserved for names or variables"
                    )
            case _:
                assert_never(self.kind)

    @property
    def index(self) -> int:
        """
        The index of a variable, `3` for `x3`.

        Raises:
            ValueError:
                If the atom is not a variable.
        """
        if self.kind is not SymbolKind.VARIABLE:
            raise ValueError(f"{self.ident!r} is not a variable")
        return int(self.ident[1:])

    def __str__(self) -> str:
        return self.ident


def variable(index: int) -> SymbolAtom:
    return SymbolAtom(SymbolKind.VARIABLE, f"x{index}")


def name(ident: str) -> SymbolAtom:
    """
    Build a name atom. The `$` marker is added when missing.
    """
    if not ident.startswith(NAME_MARKER):
        ident = NAME_MARKER + ident
    return SymbolAtom(SymbolKind.NAME, ident)


def alphabet_symbol(token: str) -> SymbolAtom:
    return SymbolAtom(SymbolKind.ALPHABET, token)


# --- argument lists -----------------------------------------------------------


@dataclass(frozen=True)
class Leaf:
    """
    A single alphabet symbol, variable or name.
    """

    atom: SymbolAtom

    def __post_init__(self) -> None:
        if self.atom.kind is SymbolKind.PREDICATE:
            raise ValueError("Predicate symbols cannot appear in argument lists")

    def __str__(self) -> str:
        return print_list(self)


@dataclass(frozen=True)
class Apply:
    """
    A function symbol applied to argument lists, `*(x1 $a)`.
    """

    function: str
    children: tuple[ArgList, ...]

    def __post_init__(self) -> None:
        if not self.children:
            raise ValueError("Function applications need at least one argument")

    def __str__(self) -> str:
        return print_list(self)


@dataclass(frozen=True)
class Concat:
    """
    A nonempty string of atoms, variables and names, `[a x1 $b]`.
    """

    children: tuple[ArgList, ...]

    def __post_init__(self) -> None:
        if not self.children:
            raise ValueError("Strings must not be empty")

    def __str__(self) -> str:
        return print_list(self)


type ArgList = Leaf | Apply | Concat


def var(index: int) -> Leaf:
    return Leaf(variable(index))


def ref(ident: str) -> Leaf:
    return Leaf(name(ident))


def sym(token: str) -> Leaf:
    return Leaf(alphabet_symbol(token))


def print_list(arglist: ArgList) -> str:
    """
    Render an argument list in its canonical concrete syntax.
    """
    match arglist:
        case Leaf(atom):
            return atom.ident
        case Apply(function, children):
            return f"{function}({' '.join(print_list(c) for c in children)})"
        case Concat(children):
            return f"[{' '.join(print_list(c) for c in children)}]"
        case _:
            assert_never(arglist)


def leaves(arglist: ArgList) -> Iterator[SymbolAtom]:
    """
    Yield the leaf atoms in preorder, left to right.
    """
    match arglist:
        case Leaf(atom):
            yield atom
        case Apply(_, children) | Concat(children):
            for child in children:
                yield from leaves(child)
        case _:
            assert_never(arglist)


def list_variables(arglist: ArgList) -> frozenset[SymbolAtom]:
    return frozenset(a for a in leaves(arglist) if a.kind is SymbolKind.VARIABLE)


def list_names(arglist: ArgList) -> tuple[SymbolAtom, ...]:
    """
    The distinct names of an argument list in order of first occurrence.
    """
    return tuple(dict.fromkeys(a for a in leaves(arglist) if a.kind is SymbolKind.NAME))


def is_ground(arglist: ArgList) -> bool:
    return not list_variables(arglist)


def depth(arglist: ArgList) -> int:
    """
    Tree depth for term lists (a leaf has depth 0) and length for strings.
    """
    match arglist:
        case Leaf():
            return 0
        case Apply(_, children):
            return 1 + max(depth(c) for c in children)
        case Concat(children):
            return sum(1 if isinstance(c, Leaf) else depth(c) for c in children)
        case _:
            assert_never(arglist)


def subst_list(arglist: ArgList, x: SymbolAtom, replacement: ArgList) -> ArgList:
    """
    Replace every leaf `x` by `replacement`.

    Inside a string, a string replacement is spliced in, so substituting
    `[a b]` for `x1` in `[x1 c]` yields `[a b c]`.
    """
    match arglist:
        case Leaf(atom):
            return replacement if atom == x else arglist
        case Apply(function, children):
            return Apply(function, tuple(subst_list(c, x, replacement) for c in children))
        case Concat(children):
            spliced: list[ArgList] = []
            for child in children:
                new_child = subst_list(child, x, replacement)
                if isinstance(new_child, Concat):
                    spliced.extend(new_child.children)
                else:
                    spliced.append(new_child)
            return Concat(tuple(spliced))
        case _:
            assert_never(arglist)


def map_names(arglist: ArgList, rename: Callable[[SymbolAtom], SymbolAtom]) -> ArgList:
    """
    Rewrite every name leaf through `rename`, keeping everything else.
    """
    match arglist:
        case Leaf(atom):
            return Leaf(rename(atom)) if atom.kind is SymbolKind.NAME else arglist
        case Apply(function, children):
            return Apply(function, tuple(map_names(c, rename) for c in children))
        case Concat(children):
            return Concat(tuple(map_names(c, rename) for c in children))
        case _:
            assert_never(arglist)


def fresh_variables(avoid: Iterable[SymbolAtom], count: int) -> list[SymbolAtom]:
    """
    The `count` lowest-indexed variables not contained in `avoid`.
    """
    taken = {a.index for a in avoid if a.kind is SymbolKind.VARIABLE}
    result: list[SymbolAtom] = []
    index = 1
    while len(result) < count:
        if index not in taken:
            result.append(variable(index))
        index += 1
    return result


def skeleton(arglist: ArgList) -> tuple[ArgList, tuple[SymbolAtom, ...]]:
    """
    Split a ground list into its name-free skeleton and its names.

    The i-th distinct name (by first occurrence) is replaced everywhere by the
    i-th lowest-indexed variable not occurring in the list.

    Returns:
        The skeleton and the names, so that substituting the names back for
        the variables, in order, reproduces the input.

    Raises:
        NotGround:
            If the list contains variables.
    """
    bare, pairs = skeleton_pairs(arglist)
    return bare, tuple(name for _, name in pairs)


def skeleton_pairs(
    arglist: ArgList,
) -> tuple[ArgList, tuple[tuple[SymbolAtom, SymbolAtom], ...]]:
    """
    `skeleton`, with each name paired with the variable that replaced it.
    `instantiate` reverses it.

    Raises:
        NotGround:
            If the list contains variables.
    """
    if not is_ground(arglist):
        raise NotGround(print_list(arglist))

    found = list_names(arglist)
    fresh = dict(zip(found, fresh_variables(leaves(arglist), len(found)), strict=True))
    return map_names(arglist, fresh.__getitem__), tuple((fresh[a], a) for a in found)


def relaxed_skeleton(
    arglist: ArgList,
) -> tuple[ArgList, tuple[tuple[SymbolAtom, SymbolAtom], ...]]:
    """
    Decompose a ground list with one fresh variable per name occurrence.

    Repeated names get distinct variables, which is the most relaxed valid
    decomposition. `instantiate` reverses it.

    Raises:
        NotGround:
            If the list contains variables.
    """
    if not is_ground(arglist):
        raise NotGround(print_list(arglist))

    occurrences = [a for a in leaves(arglist) if a.kind is SymbolKind.NAME]
    fresh = iter(fresh_variables(leaves(arglist), len(occurrences)))
    pairs: list[tuple[SymbolAtom, SymbolAtom]] = []

    def rewrite(atom: SymbolAtom) -> SymbolAtom:
        x = next(fresh)
        pairs.append((x, atom))
        return x

    return map_names(arglist, rewrite), tuple(pairs)


def instantiate(
    arglist: ArgList,
    pairs: Iterable[tuple[SymbolAtom, SymbolAtom | ArgList]],
) -> ArgList:
    """
    Apply `arglist x1/μ1 ... xm/μm`, the first pair innermost.
    """
    result = arglist
    for x, value in pairs:
        replacement = Leaf(value) if isinstance(value, SymbolAtom) else value
        result = subst_list(result, x, replacement)
    return result


# --- formulas -----------------------------------------------------------------


@dataclass(frozen=True)
class Eq:
    left: ArgList
    right: ArgList

    def __str__(self) -> str:
        return print_formula(self)


@dataclass(frozen=True)
class Pred:
    symbol: str
    args: tuple[ArgList, ...] = ()

    def __str__(self) -> str:
        return print_formula(self)


@dataclass(frozen=True)
class Not:
    body: Formula

    def __str__(self) -> str:
        return print_formula(self)


@dataclass(frozen=True)
class _Binary:
    token: ClassVar[str]

    left: Formula
    right: Formula

    def __str__(self) -> str:
        return print_formula(self)


@dataclass(frozen=True)
class Implies(_Binary):
    token = "->"


@dataclass(frozen=True)
class Iff(_Binary):
    token = "<->"


@dataclass(frozen=True)
class And(_Binary):
    token = "&"


@dataclass(frozen=True)
class Or(_Binary):
    token = "|"


@dataclass(frozen=True)
class _Quantifier:
    token: ClassVar[str]

    variable: SymbolAtom
    body: Formula

    def __post_init__(self) -> None:
        if self.variable.kind is not SymbolKind.VARIABLE:
            raise ValueError(f"Cannot quantify over {self.variable.ident!r}")

    def __str__(self) -> str:
        return print_formula(self)


@dataclass(frozen=True)
class ForAll(_Quantifier):
    token = "all"


@dataclass(frozen=True)
class Exists(_Quantifier):
    token = "ex"


type Formula = Eq | Pred | Not | Implies | Iff | And | Or | ForAll | Exists

BINARY_CONNECTIVES: tuple[type[_Binary], ...] = (Implies, Iff, And, Or)
QUANTIFIERS: tuple[type[_Quantifier], ...] = (ForAll, Exists)


def print_formula(formula: Formula) -> str:
    """
    Render a formula in canonical prefix syntax, tokens separated by one space.
    """
    match formula:
        case Eq(left, right):
            return f"~ {print_list(left)} , {print_list(right)}"
        case Pred(symbol, ()):
            return symbol
        case Pred(symbol, args):
            return f"{symbol} {' , '.join(print_list(a) for a in args)}"
        case Not(body):
            return f"! {print_formula(body)}"
        case Implies() | Iff() | And() | Or():
            return (
                f"{formula.token} {print_formula(formula.left)} "
                f"{print_formula(formula.right)}"
            )
        case ForAll() | Exists():
            return f"{formula.token} {formula.variable} {print_formula(formula.body)}"
        case _:
            assert_never(formula)


def arglists(formula: Formula) -> Iterator[ArgList]:
    """
    Yield every argument list of a formula, left to right.
    """
    match formula:
        case Eq(left, right):
            yield left
            yield right
        case Pred(_, args):
            yield from args
        case Not(body) | ForAll(_, body) | Exists(_, body):
            yield from arglists(body)
        case Implies(left, right) | Iff(left, right) | And(left, right) | Or(
            left, right
        ):
            yield from arglists(left)
            yield from arglists(right)
        case _:
            assert_never(formula)


def free_variables(formula: Formula) -> frozenset[SymbolAtom]:
    match formula:
        case Eq() | Pred():
            result: frozenset[SymbolAtom] = frozenset()
            for arglist in arglists(formula):
                result |= list_variables(arglist)
            return result
        case Not(body):
            return free_variables(body)
        case Implies(left, right) | Iff(left, right) | And(left, right) | Or(
            left, right
        ):
            return free_variables(left) | free_variables(right)
        case ForAll(x, body) | Exists(x, body):
            return free_variables(body) - {x}
        case _:
            assert_never(formula)


def is_closed(formula: Formula) -> bool:
    return not free_variables(formula)


def formula_names(formula: Formula) -> tuple[SymbolAtom, ...]:
    found: dict[SymbolAtom, None] = {}
    for arglist in arglists(formula):
        found.update(dict.fromkeys(list_names(arglist)))
    return tuple(found)


def formula_size(formula: Formula) -> int:
    """
    The number of connectives and quantifiers in a formula.
    """
    match formula:
        case Eq() | Pred():
            return 0
        case Not(body) | ForAll(_, body) | Exists(_, body):
            return 1 + formula_size(body)
        case Implies(left, right) | Iff(left, right) | And(left, right) | Or(
            left, right
        ):
            return 1 + formula_size(left) + formula_size(right)
        case _:
            assert_never(formula)


def map_formula_lists(
    formula: Formula,
    transform: Callable[[ArgList], ArgList],
) -> Formula:
    """
    Rebuild a formula with every argument list passed through `transform`.
    """
    match formula:
        case Eq(left, right):
            return Eq(transform(left), transform(right))
        case Pred(symbol, args):
            return Pred(symbol, tuple(transform(a) for a in args))
        case Not(body):
            return Not(map_formula_lists(body, transform))
        case Implies() | Iff() | And() | Or():
            return type(formula)(
                map_formula_lists(formula.left, transform),
                map_formula_lists(formula.right, transform),
            )
        case ForAll() | Exists():
            return type(formula)(
                formula.variable, map_formula_lists(formula.body, transform)
            )
        case _:
            assert_never(formula)


def subst_formula(formula: Formula, x: SymbolAtom, replacement: ArgList) -> Formula:
    """
    Replace the free occurrences of `x` by the ground list `replacement`.

    Raises:
        NonGroundSubstituent:
            If `replacement` contains variables.
    """
    if not is_ground(replacement):
        raise NonGroundSubstituent(print_list(replacement))
    return _subst_ground(formula, x, replacement)


def _subst_ground(formula: Formula, x: SymbolAtom, replacement: ArgList) -> Formula:
    match formula:
        case Eq(left, right):
            return Eq(subst_list(left, x, replacement), subst_list(right, x, replacement))
        case Pred(symbol, args):
            return Pred(symbol, tuple(subst_list(a, x, replacement) for a in args))
        case Not(body):
            return Not(_subst_ground(body, x, replacement))
        case Implies() | Iff() | And() | Or():
            return type(formula)(
                _subst_ground(formula.left, x, replacement),
                _subst_ground(formula.right, x, replacement),
            )
        case ForAll(bound, _) | Exists(bound, _):
            if bound == x:
                return formula
            return type(formula)(bound, _subst_ground(formula.body, x, replacement))
        case _:
            assert_never(formula)


def universal_closure(formula: Formula) -> Formula:
    """
    Bind the free variables of a formula, the lowest index outermost.
    """
    result = formula
    for x in sorted(free_variables(formula), key=lambda a: a.index, reverse=True):
        result = ForAll(x, result)
    return result
