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

import random

import pytest

from modelbench.errors import ArityError, FormulaSyntaxError, LexError, UnboundSymbolError
from modelbench.language import LanguageSpec, NameSet, StringGrammar
from modelbench.parser import parse_arglist, parse_formula
from modelbench.syntax import (
    Apply,
    Concat,
    Eq,
    Exists,
    ForAll,
    Iff,
    Not,
    Pred,
    print_formula,
    print_list,
    ref,
    sym,
    var,
    variable,
)

from .utils import klein_language, random_formula

STRINGS = LanguageSpec(
    alphabet=frozenset({"a", "b"}),
    predicates=frozenset({"p", "q"}),
    grammar=StringGrammar(frozenset({"a", "b"})),
)


def test_parse_group_axiom():
    formula = parse_formula("ex x1 all x2 ~ *(x1 x2) , x2", klein_language())
    assert formula == Exists(
        variable(1),
        ForAll(variable(2), Eq(Apply("*", (var(1), var(2))), var(2))),
    )


def test_parse_names():
    formula = parse_formula("~ *($a $b) , $c", klein_language())
    assert formula == Eq(Apply("*", (ref("a"), ref("b"))), ref("c"))


def test_parse_connectives():
    text = "<-> ! ~ x1 , x1 | & ~ x1 , x1 ~ x1 , x1 -> ~ x1 , x1 ~ x1 , x1"
    formula = parse_formula(text, klein_language())
    assert isinstance(formula, Iff)
    assert isinstance(formula.left, Not)
    assert print_formula(formula) == text


def test_whitespace_is_insignificant():
    tight = parse_formula("~*($a $b),$c", klein_language())
    loose = parse_formula("  ~  *( $a   $b )  ,  $c ", klein_language())
    assert tight == loose


def test_parse_string_predicates():
    formula = parse_formula("& p [a x1] , [$ab] q", STRINGS)
    assert formula.left == Pred(
        "p", (Concat((sym("a"), var(1))), Concat((ref("ab"),)))
    )
    assert formula.right == Pred("q")


def test_parse_arglist():
    assert parse_arglist("*($a *(x1 $b))", klein_language()) == Apply(
        "*", (ref("a"), Apply("*", (var(1), ref("b"))))
    )
    assert print_list(parse_arglist("[a b $ab]", STRINGS)) == "[a b $ab]"


def test_keywords_need_word_boundaries():
    spec = LanguageSpec(
        alphabet=frozenset({"allx", "e"}),
        predicates=frozenset(),
        grammar=StringGrammar(frozenset({"allx", "e"})),
    )
    assert parse_formula("~ [allx] , [e]", spec) == Eq(
        Concat((sym("allx"),)), Concat((sym("e"),))
    )


class TestErrors:
    def test_arity(self):
        with pytest.raises(ArityError) as exc_info:
            parse_formula("~ *($a) , $b", klein_language())
        assert exc_info.value.symbol == "*"
        assert exc_info.value.expected == 2
        assert exc_info.value.actual == 1

    def test_unbound_symbol(self):
        with pytest.raises(UnboundSymbolError) as exc_info:
            parse_formula("~ f($a $b) , $c", klein_language())
        assert exc_info.value.symbol == "f"
        assert exc_info.value.position == 2

    def test_lex_error(self):
        with pytest.raises(LexError) as exc_info:
            parse_formula("~ $a , #", klein_language())
        assert exc_info.value.position == 7

    def test_unexpected_end(self):
        with pytest.raises(FormulaSyntaxError):
            parse_formula("& ~ $a , $b", klein_language())

    def test_unexpected_token(self):
        with pytest.raises(FormulaSyntaxError):
            parse_formula("~ $a $b", klein_language())

    def test_errors_share_a_base(self):
        assert issubclass(LexError, FormulaSyntaxError)
        assert issubclass(UnboundSymbolError, FormulaSyntaxError)
        assert issubclass(ArityError, FormulaSyntaxError)


def test_printing_reparses_to_the_same_formula():
    language = klein_language()
    names = NameSet.from_mapping({"e": "$e", "a": "$a"})
    rng = random.Random(7)
    for _ in range(200):
        formula = random_formula(
            rng, language, names, size=rng.randrange(5), list_depth=2, quantifiers=2
        )
        assert parse_formula(print_formula(formula), language) == formula
