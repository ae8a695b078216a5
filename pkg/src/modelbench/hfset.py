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
Hereditarily finite sets.

Sets whose members are sets again, all of them finite. An `HFSet` keeps its
members sorted and free of duplicates, so two sets with the same members have
the same representation and compare equal structurally.

The module provides the set algebra, the construction principles of a reduced
set theory (subsets by a property, regularity witnesses, choice sets, pairs)
and checkers for subset-friendliness and its closure properties. Every
operation that picks a witness takes the one of minimal rank, then the first
in canonical order.

Example:

>>> from modelbench.hfset import HFSet, power_set
>>> str(power_set(HFSet.parse("{{}}")))
'{{},{{}}}'
"""

from __future__ import annotations

import functools
import itertools
import logging
from collections.abc import Callable, Iterable, Iterator
from dataclasses import dataclass

from lark import Lark, Transformer, v_args
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput

from .config import DEFAULT_LIMITS, Limits
from .errors import (
    EmptyInput,
    ExplosionGuard,
    PreconditionViolated,
    SetSyntaxError,
    TooLarge,
)
from .report import Report, build_report

logger = logging.getLogger(f"{__package__}.{__name__}")

_SET_GRAMMAR = r"""
start: set
set: "{" [set ("," set)*] "}"

%import common.WS
%ignore WS
"""


@dataclass(frozen=True, order=True)
class HFSet:
    """
    A hereditarily finite set. The order compares member tuples
    lexicographically and is total on canonical forms.
    """

    elements: tuple[HFSet, ...] = ()
    """
    The members, sorted and duplicate-free.
    """

    def __post_init__(self) -> None:
        canonical = tuple(sorted(set(self.elements)))
        if canonical != self.elements:
            object.__setattr__(self, "elements", canonical)

    @classmethod
    def of(cls, *members: HFSet) -> HFSet:
        return cls(tuple(members))

    @classmethod
    def parse(cls, text: str) -> HFSet:
        """
        Parse the text syntax: `{}`, `{{}}`, `{{},{{}}}`. Members are
        separated by commas; whitespace is ignored.

        Raises:
            SetSyntaxError:
                If the text is not a set.
        """
        try:
            tree = _set_parser().parse(text)
        except UnexpectedInput as e:
            match e:
                case UnexpectedEOF():
                    raise SetSyntaxError(text, len(text), "unexpected end of input") from None
                case UnexpectedCharacters():
                    raise SetSyntaxError(
                        text, e.pos_in_stream, f"unexpected {text[e.pos_in_stream]!r}"
                    ) from None
                case _:
                    raise SetSyntaxError(text, e.pos_in_stream, str(e)) from None
        return _SetBuilder().transform(tree)

    def __str__(self) -> str:
        return "{" + ",".join(str(member) for member in self.elements) + "}"

    def __iter__(self) -> Iterator[HFSet]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, member: object) -> bool:
        return member in self.elements

    def __bool__(self) -> bool:
        return bool(self.elements)


EMPTY = HFSet()


@functools.cache
def _set_parser() -> Lark:
    return Lark(_SET_GRAMMAR, parser="lalr")


@v_args(inline=True)
class _SetBuilder(Transformer[object, HFSet]):
    def start(self, value: HFSet) -> HFSet:
        return value

    def set(self, *members: HFSet | None) -> HFSet:
        return HFSet(tuple(m for m in members if m is not None))


# --- basic algebra ------------------------------------------------------------


@functools.cache
def rank(a: HFSet) -> int:
    """
    The rank: 0 for the empty set, otherwise one more than the highest rank of
    a member.
    """
    return max((rank(member) + 1 for member in a), default=0)


def witness_key(a: HFSet) -> tuple[int, HFSet]:
    """
    Sort key for witness selection: minimal rank, then canonical order.
    """
    return rank(a), a


def is_subset(a: HFSet, b: HFSet) -> bool:
    return all(member in b for member in a)


def is_transitive(u: HFSet) -> bool:
    """
    Whether every member of `u` is also a subset of `u`.
    """
    return all(is_subset(member, u) for member in u)


def union(a: HFSet, b: HFSet) -> HFSet:
    return HFSet(a.elements + b.elements)


def intersection(a: HFSet, b: HFSet) -> HFSet:
    return HFSet(tuple(member for member in a if member in b))


def difference(a: HFSet, b: HFSet) -> HFSet:
    return HFSet(tuple(member for member in a if member not in b))


def pair(a: HFSet, b: HFSet) -> HFSet:
    return HFSet.of(a, b)


def finite_set(*members: HFSet) -> HFSet:
    """
    The set `{A1, ..., An}`.
    """
    return HFSet.of(*members)


def big_union(a: HFSet) -> HFSet:
    """
    The union of all members of `a`.
    """
    return HFSet(tuple(itertools.chain.from_iterable(member.elements for member in a)))


def transitive_closure(a: HFSet) -> HFSet:
    """
    The smallest transitive set containing `a` as a subset.
    """
    seen: set[HFSet] = set()
    pending = list(a)
    while pending:
        member = pending.pop()
        if member not in seen:
            seen.add(member)
            pending.extend(member)
    return HFSet(tuple(seen))


def power_set(y: HFSet, limits: Limits = DEFAULT_LIMITS) -> HFSet:
    """
    All subsets of `y`.

    Raises:
        TooLarge:
            If `y` has more than `limits.power_set_cap` members.
    """
    if len(y) > limits.power_set_cap:
        raise TooLarge(len(y), limits.power_set_cap)
    return HFSet(
        tuple(
            HFSet(combination)
            for size in range(len(y) + 1)
            for combination in itertools.combinations(y.elements, size)
        )
    )


def kuratowski_pair(x: HFSet, y: HFSet) -> HFSet:
    """
    The ordered pair `{{x},{x,y}}`.
    """
    return HFSet.of(HFSet.of(x), HFSet.of(x, y))


def ordered_tuple(*items: HFSet) -> HFSet:
    """
    Nest Kuratowski pairs to the left: `<a,b,c> = <<a,b>,c>`. A single item is
    its own tuple.
    """
    if not items:
        raise ValueError("Tuples need at least one item")
    return functools.reduce(kuratowski_pair, items)


def cartesian_product(*sets: HFSet) -> HFSet:
    """
    The set of all ordered tuples with the i-th item from the i-th set.
    """
    if not sets:
        raise ValueError("The product needs at least one factor")
    return HFSet(
        tuple(
            ordered_tuple(*items)
            for items in itertools.product(*(s.elements for s in sets))
        )
    )


# --- construction principles --------------------------------------------------


def subset_comprehension(a: HFSet, prop: Callable[[HFSet], bool]) -> HFSet:
    """
    The members of `a` having the property `prop`.
    """
    return HFSet(tuple(member for member in a if prop(member)))


def regularity_witness(u: HFSet) -> HFSet:
    """
    A member of `u` that shares no member with `u`.

    Raises:
        EmptyInput:
            If `u` is empty.
    """
    if not u:
        raise EmptyInput("The empty set has no members")
    return min(
        (member for member in u if not intersection(u, member)),
        key=witness_key,
    )


def choice_set(u: HFSet) -> HFSet:
    """
    A set meeting every member of `u` in exactly one element: the canonical
    first element of each.

    Raises:
        PreconditionViolated:
            If a member is empty (witness: that member) or two members overlap
            (witness: the pair).
    """
    for member in u:
        if not member:
            raise PreconditionViolated("members must be nonempty", member)
    for first, second in itertools.combinations(u.elements, 2):
        if intersection(first, second):
            raise PreconditionViolated(
                "members must be pairwise disjoint", (first, second)
            )
    return HFSet(tuple(member.elements[0] for member in u))


# --- generators ---------------------------------------------------------------


def von_neumann(n: int) -> HFSet:
    """
    The natural number `n`: `0 = {}` and `n + 1 = n ∪ {n}`.
    """
    if n < 0:
        raise ValueError("Natural numbers are not negative")
    result = EMPTY
    for _ in range(n):
        result = union(result, HFSet.of(result))
    return result


def enumerate_hf(max_rank: int, limits: Limits = DEFAULT_LIMITS) -> list[HFSet]:
    """
    All sets of rank at most `max_rank`, in canonical order.

    Raises:
        ExplosionGuard:
            If there are more than `limits.enumeration_cap` such sets.
    """
    size = 1
    for _ in range(max_rank):
        size = 2**size
        if size > limits.enumeration_cap:
            raise ExplosionGuard("sets", size, limits.enumeration_cap)

    level: list[HFSet] = [EMPTY]
    for _ in range(max_rank):
        level = sorted(
            HFSet(combination)
            for k in range(len(level) + 1)
            for combination in itertools.combinations(level, k)
        )
    logger.debug("Enumerated %s sets of rank at most %s", len(level), max_rank)
    return level


def power_set_chain(length: int, limits: Limits = DEFAULT_LIMITS) -> list[HFSet]:
    """
    The first `length` sets of the chain `{}`, `P({})`, `P(P({}))`, ...

    Raises:
        TooLarge:
            If a power set in the chain exceeds `limits.power_set_cap`.
    """
    chain: list[HFSet] = []
    current = EMPTY
    for _ in range(length):
        chain.append(current)
        if len(chain) < length:
            current = power_set(current, limits)
    return chain


# --- subset-friendliness ------------------------------------------------------


def _first(candidates: Iterable[HFSet]) -> HFSet | None:
    return min(candidates, key=witness_key, default=None)


def _power_set_member(y: HFSet, u: HFSet, limits: Limits) -> bool | None:
    """
    Whether `P(y)` is a member of `u`; None if `P(y)` is too large to build
    and `u` has a member of its size.
    """
    expected = 2 ** len(y)
    if not any(len(member) == expected for member in u):
        return False
    if len(y) > limits.power_set_cap:
        return None
    return power_set(y, limits) in u


def check_subset_friendly(u: HFSet, limits: Limits = DEFAULT_LIMITS) -> Report:
    """
    Check the four conditions of subset-friendliness:

    1. `u` contains the empty set.
    2. `u` is transitive.
    3. `u` contains the power set of each member.
    4. Any two members lie together in some transitive member.

    No finite set passes all four; each violated condition carries its
    witness.
    """
    builder = build_report(
        ok_summary=f"{u} is subset-friendly",
        fail_summary=f"{u} is not subset-friendly",
    )

    if EMPTY in u:
        builder.passed("contains empty set", "{} is a member")
    else:
        builder.failed("contains empty set", "{} is not a member", witness=EMPTY)

    if (missing := _first(m for m in u if not is_subset(m, u))) is not None:
        builder.failed(
            "transitive", f"member {missing} is not a subset", witness=missing
        )
    else:
        builder.passed("transitive", "every member is a subset")

    undecided: HFSet | None = None
    for y in sorted(u, key=witness_key):
        match _power_set_member(y, u, limits):
            case False:
                builder.failed(
                    "closed under power set",
                    f"the power set of {y} is not a member",
                    witness=y,
                )
                break
            case None:
                undecided = undecided or y
    else:
        if undecided is not None:
            builder.unknown(
                "closed under power set",
                f"the power set of {undecided} is too large to compare",
            )
        else:
            builder.passed("closed under power set", "every power set is a member")

    transitive_members = [v for v in u if is_transitive(v)]
    ordered = sorted(u, key=witness_key)
    for y, z in itertools.combinations_with_replacement(ordered, 2):
        if not any(y in v and z in v for v in transitive_members):
            builder.failed(
                "pairs covered by transitive member",
                f"no transitive member contains both {y} and {z}",
                witness=(y, z),
            )
            break
    else:
        builder.passed(
            "pairs covered by transitive member",
            "every two members lie in a transitive member",
        )

    return builder.to_report()


def closure_report(
    u: HFSet,
    members: Iterable[HFSet] | None = None,
    limits: Limits = DEFAULT_LIMITS,
) -> Report:
    """
    Check the closure properties a subset-friendly set has, for the given
    members of `u` (all members by default): the union, transitive closure
    and power set of each member, the subsets of each member, and the union,
    intersection, difference, pair and product of every two members.
    """
    chosen = sorted(members if members is not None else u, key=witness_key)
    builder = build_report(
        ok_summary=f"{u} is closed under the set operations",
        fail_summary=f"{u} is not closed under the set operations",
    )

    def check(label: str, results: Iterable[tuple[object, HFSet]]) -> None:
        for operands, result in results:
            if result not in u:
                builder.failed(
                    label, f"{result} from {operands} is not a member", witness=operands
                )
                return
        builder.passed(label, "all results are members")

    def small(a: HFSet) -> bool:
        return len(a) <= limits.power_set_cap

    pairs = list(itertools.product(chosen, repeat=2))
    check("union of members", ((a, big_union(a)) for a in chosen))
    check("transitive closure", ((a, transitive_closure(a)) for a in chosen))
    check("power set", ((a, power_set(a, limits)) for a in chosen if small(a)))
    check(
        "subsets",
        ((v, s) for v in chosen if small(v) for s in power_set(v, limits)),
    )
    check("binary union", (((a, b), union(a, b)) for a, b in pairs))
    check("intersection", (((a, b), intersection(a, b)) for a, b in pairs))
    check("difference", (((a, b), difference(a, b)) for a, b in pairs))
    check("finite set", (((a, b), finite_set(a, b)) for a, b in pairs))
    check("product", (((a, b), cartesian_product(a, b)) for a, b in pairs))

    return builder.to_report()
