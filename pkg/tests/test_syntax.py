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

import pytest

from modelbench.errors import NonGroundSubstituent, NotGround
from modelbench.syntax import (
    And,
    Apply,
    Concat,
    Eq,
    Exists,
    ForAll,
    Implies,
    Not,
    Pred,
    SymbolAtom,
    SymbolKind,
    depth,
    formula_names,
    formula_size,
    free_variables,
    fresh_variables,
    instantiate,
    is_closed,
    is_ground,
    list_names,
    name,
    print_formula,
    print_list,
    ref,
    relaxed_skeleton,
    skeleton,
    skeleton_pairs,
    subst_formula,
    subst_list,
    sym,
    universal_closure,
    var,
    variable,
)


def product(left, right):
    return Apply("*", (left, right))


class TestAtoms:
    def test_name_adds_marker(self):
        assert name("a") == name("$a") == SymbolAtom(SymbolKind.NAME, "$a")

    def test_variable_index(self):
        assert variable(12).index == 12
        with pytest.raises(ValueError):
            _ = name("a").index

    @pytest.mark.parametrize("ident", ["x0", "y1", "x"])
    def test_rejects_malformed_variables(self, ident):
        with pytest.raises(ValueError):
            SymbolAtom(SymbolKind.VARIABLE, ident)

    @pytest.mark.parametrize("ident", ["$a", "x3"])
    def test_alphabet_symbols_cannot_look_like_names_or_variables(self, ident):
        with pytest.raises(ValueError):
            SymbolAtom(SymbolKind.ALPHABET, ident)

    def test_empty_lists_are_rejected(self):
        with pytest.raises(ValueError):
            Concat(())
        with pytest.raises(ValueError):
            Apply("*", ())


class TestArgumentLists:
    def test_print_terms(self):
        assert print_list(product(ref("a"), product(var(1), sym("0")))) == "*($a *(x1 0))"

    def test_print_strings(self):
        assert print_list(Concat((sym("a"), var(2), ref("b")))) == "[a x2 $b]"

    def test_depth(self):
        assert depth(ref("a")) == 0
        assert depth(product(ref("a"), product(ref("b"), ref("c")))) == 2
        assert depth(Concat((sym("a"), sym("b"), ref("ab")))) == 3

    def test_ground(self):
        assert is_ground(product(ref("a"), ref("b")))
        assert not is_ground(product(ref("a"), var(1)))

    def test_list_names_in_first_occurrence_order(self):
        arglist = product(ref("b"), product(ref("a"), ref("b")))
        assert list_names(arglist) == (name("b"), name("a"))

    def test_subst_replaces_every_occurrence(self):
        arglist = product(var(1), product(var(1), var(2)))
        result = subst_list(arglist, variable(1), ref("a"))
        assert print_list(result) == "*($a *($a x2))"

    def test_subst_splices_strings(self):
        template = Concat((var(1), sym("c")))
        result = subst_list(template, variable(1), Concat((sym("a"), sym("b"))))
        assert result == Concat((sym("a"), sym("b"), sym("c")))

    def test_subst_of_absent_variable_is_identity(self):
        arglist = product(ref("a"), var(2))
        assert subst_list(arglist, variable(1), ref("b")) == arglist


class TestSkeletons:
    def test_skeleton_uses_one_variable_per_distinct_name(self):
        arglist = product(ref("a"), product(ref("b"), ref("a")))
        bare, names = skeleton(arglist)
        assert print_list(bare) == "*(x1 *(x2 x1))"
        assert names == (name("a"), name("b"))
        assert instantiate(bare, zip((variable(1), variable(2)), names)) == arglist

    def test_skeleton_pairs_bind_each_variable_to_its_name(self):
        arglist = product(ref("a"), product(ref("b"), ref("a")))
        bare, pairs = skeleton_pairs(arglist)
        assert pairs == ((variable(1), name("a")), (variable(2), name("b")))
        assert bare == skeleton(arglist)[0]
        assert instantiate(bare, pairs) == arglist
        with pytest.raises(NotGround):
            skeleton_pairs(product(var(1), ref("a")))

    def test_relaxed_skeleton_uses_one_variable_per_occurrence(self):
        arglist = product(ref("a"), product(ref("b"), ref("a")))
        bare, pairs = relaxed_skeleton(arglist)
        assert print_list(bare) == "*(x1 *(x2 x3))"
        assert [atom for _, atom in pairs] == [name("a"), name("b"), name("a")]
        assert instantiate(bare, pairs) == arglist

    def test_skeleton_of_name_free_list(self):
        arglist = product(sym("0"), sym("0"))
        assert skeleton(arglist) == (arglist, ())

    def test_skeleton_needs_ground_lists(self):
        with pytest.raises(NotGround):
            skeleton(var(1))
        with pytest.raises(NotGround):
            relaxed_skeleton(product(var(1), ref("a")))

    def test_fresh_variables_skip_taken_ones(self):
        assert fresh_variables([variable(1), variable(3)], 3) == [
            variable(2),
            variable(4),
            variable(5),
        ]


class TestFormulas:
    def test_print_formula(self):
        formula = ForAll(
            variable(1),
            Implies(Pred("p", (var(1),)), Not(Eq(var(1), ref("e")))),
        )
        assert print_formula(formula) == "all x1 -> p x1 ! ~ x1 , $e"

    def test_print_predicates(self):
        assert print_formula(Pred("q")) == "q"
        assert print_formula(Pred("p", (ref("a"), ref("b")))) == "p $a , $b"

    def test_free_variables_respect_binding(self):
        formula = And(Eq(var(1), var(2)), Exists(variable(2), Eq(var(2), var(3))))
        assert free_variables(formula) == {variable(1), variable(2), variable(3)}
        assert free_variables(Exists(variable(2), Eq(var(2), var(2)))) == frozenset()

    def test_subst_formula_leaves_bound_occurrences(self):
        formula = And(Eq(var(1), ref("a")), ForAll(variable(1), Eq(var(1), var(1))))
        result = subst_formula(formula, variable(1), ref("b"))
        assert print_formula(result) == "& ~ $b , $a all x1 ~ x1 , x1"

    def test_subst_formula_needs_ground_substituent(self):
        with pytest.raises(NonGroundSubstituent):
            subst_formula(Eq(var(1), var(1)), variable(1), var(2))

    def test_universal_closure_binds_lowest_index_outermost(self):
        formula = Eq(var(3), var(1))
        closure = universal_closure(formula)
        assert print_formula(closure) == "all x1 all x3 ~ x3 , x1"
        assert is_closed(closure)
        assert universal_closure(closure) == closure

    def test_size_and_names(self):
        formula = Not(And(Eq(ref("b"), ref("a")), Exists(variable(1), Pred("q"))))
        assert formula_size(formula) == 3
        assert formula_names(formula) == (name("b"), name("a"))
