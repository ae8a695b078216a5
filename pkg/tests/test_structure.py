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

from modelbench.config import Limits
from modelbench.errors import InvalidDefinition, NotClosed, NotGround, NotInLanguage
from modelbench.language import NameSet, enumerate_ground
from modelbench.parser import parse_arglist, parse_formula
from modelbench.report import Outcome
from modelbench.structure import (
    FiniteTermStructure,
    ModelStatus,
    StringStructure,
    TruthValue,
    check_substitution_coherence,
    structures_equal,
)
from modelbench.henkin import FragmentBounds, enumerate_formulas
from modelbench.syntax import (
    Concat,
    Exists,
    ForAll,
    print_formula,
    ref,
    subst_formula,
    subst_list,
    variable,
)

from .utils import (
    NestingBlindStructure,
    group_axioms,
    klein,
    klein_language,
    random_formula,
    read_fixture,
    strings_ab,
    trivial,
    unary_structure,
)

KLEIN_NAMES = NameSet.from_mapping({"e": "$e", "a": "$a", "b": "$b", "c": "$c"})


class TestTruthValues:
    def test_unknown_is_absorbed_by_decisive_values(self):
        unknown = TruthValue.UNKNOWN_AT_BOUND
        assert unknown.conjoin(TruthValue.FALSE) is TruthValue.FALSE
        assert unknown.disjoin(TruthValue.TRUE) is TruthValue.TRUE
        assert unknown.conjoin(TruthValue.TRUE) is unknown
        assert unknown.negate() is unknown
        assert unknown.iff(TruthValue.TRUE) is unknown

    def test_exact_connectives(self):
        assert TruthValue.FALSE.implies(TruthValue.FALSE) is TruthValue.TRUE
        assert TruthValue.TRUE.iff(TruthValue.FALSE) is TruthValue.FALSE


class TestFiniteTermStructures:
    def test_eval_list(self):
        structure = klein()
        assert structure.eval_list(parse_arglist("*($a *($b $c))", klein_language())) == "e"

    def test_every_name_denotes_its_individual(self):
        structure = klein()
        for element in structure.universe:
            assert structure.eval_list(structure.name_leaf(element)) == element

    def test_eval_list_needs_ground_lists(self):
        with pytest.raises(NotGround):
            klein().eval_list(parse_arglist("*($a x1)", klein_language()))

    def test_eval_list_rejects_foreign_lists(self):
        with pytest.raises(NotInLanguage):
            klein().eval_list(Concat((ref("a"),)))

    @pytest.mark.parametrize(
        "text, expected",
        [
            ("~ *($a $b) , $c", TruthValue.TRUE),
            ("~ *($a $a) , $a", TruthValue.FALSE),
            ("all x1 ~ *(x1 x1) , $e", TruthValue.TRUE),
            ("ex x1 ! ~ *(x1 $a) , *($a x1)", TruthValue.FALSE),
            ("all x1 ex x2 ~ *(x1 x2) , $c", TruthValue.TRUE),
            ("all x1 ~ $a , $a", TruthValue.TRUE),
        ],
    )
    def test_eval_closed(self, text, expected):
        assert klein().eval_closed(parse_formula(text, klein_language())) is expected

    def test_eval_closed_needs_closed_formulas(self):
        with pytest.raises(NotClosed) as exc_info:
            klein().eval_closed(parse_formula("~ x2 , *(x1 $a)", klein_language()))
        assert exc_info.value.free == ("x1", "x2")

    def test_predicates_are_interpreted_per_arity(self):
        structure = unary_structure(["a"])
        language = structure.language
        assert structure.eval_closed(parse_formula("p o", language)) is TruthValue.TRUE
        assert structure.eval_closed(parse_formula("p $a , $a", language)) is TruthValue.FALSE
        assert structure.eval_closed(parse_formula("p", language)) is TruthValue.FALSE

    def test_successor_flips_the_predicate(self):
        structure = unary_structure(["a"])
        formula = parse_formula("all x1 <-> p x1 ! p s(x1)", structure.language)
        assert structure.eval_closed(formula) is TruthValue.TRUE

    def test_counterexample(self):
        structure = unary_structure(["a"])
        formula = parse_formula("p x1", structure.language)
        assert structure.is_valid(formula) is TruthValue.FALSE
        assert structure.counterexample(formula) == (("x1", "$b"),)

    def test_quantifiers_may_range_over_ground_lists(self):
        structure = klein()
        language = klein_language()
        domain = enumerate_ground(language, KLEIN_NAMES, 2)
        rng = random.Random(3)
        x = variable(1)
        for _ in range(100):
            body = random_formula(
                rng, language, KLEIN_NAMES, scope=(x,), size=rng.randrange(3), quantifiers=0
            )
            formula = rng.choice((ForAll, Exists))(x, body)
            assert structure.eval_closed(formula) is structure.eval_closed(
                formula, quantifier_domain=domain
            ), print_formula(formula)

    def test_memo_is_filled(self):
        memo = {}
        formula = parse_formula("all x1 ~ *(x1 $e) , x1", klein_language())
        assert klein().eval_closed(formula, memo=memo) is TruthValue.TRUE
        assert memo[formula] is TruthValue.TRUE


class TestNameSubstitution:
    """
    Substituting a ground list for a free variable and substituting the name
    of the list's value give the same truth value.
    """

    @staticmethod
    def assert_coherent(structure, formulas, lists):
        x = variable(1)
        for formula in formulas:
            for arglist in lists:
                named = structure.name_leaf(structure.eval_list(arglist))
                assert structure.eval_closed(
                    subst_formula(formula, x, arglist)
                ) is structure.eval_closed(subst_formula(formula, x, named)), (
                    print_formula(formula),
                    arglist,
                )

    @pytest.mark.parametrize("structure", [klein(), trivial()], ids=["klein", "trivial"])
    def test_enumerated_formulas(self, structure):
        language = klein_language()
        formulas = enumerate_formulas(
            language, structure.names, FragmentBounds(), scope=[variable(1)]
        )
        lists = enumerate_ground(language, structure.names, 1)
        self.assert_coherent(structure, formulas, lists)

    @pytest.mark.parametrize("structure", [klein(), trivial()], ids=["klein", "trivial"])
    def test_random_formulas_against_deeper_lists(self, structure):
        language = klein_language()
        rng = random.Random(11)
        formulas = [
            random_formula(
                rng, language, structure.names, scope=(variable(1),), size=2, quantifiers=1
            )
            for _ in range(30)
        ]
        lists = enumerate_ground(language, structure.names, 2)
        self.assert_coherent(structure, formulas, lists)

    @pytest.mark.slow
    def test_two_connectives_against_deeper_lists(self):
        structure = klein()
        language = klein_language()
        formulas = enumerate_formulas(
            language,
            structure.names,
            FragmentBounds(connective_depth=2),
            scope=[variable(1)],
            limits=Limits(fragment_cap=1_000_000),
        )
        lists = enumerate_ground(language, structure.names, 2)
        rng = random.Random(5)
        self.assert_coherent(structure, rng.sample(formulas, 200), lists)


class TestModels:
    def test_klein_is_a_group(self):
        verdict = klein().is_model(group_axioms())
        assert verdict.status is ModelStatus.MODEL
        assert (verdict.valid, verdict.total) == (2, 2)
        assert verdict.instance() is None

    def test_corrupted_table_breaks_associativity(self):
        axioms = group_axioms()
        structure = klein(a_b="e")
        verdict = structure.is_model(axioms)

        assert not verdict.is_model
        assert verdict.status is ModelStatus.COUNTEREXAMPLE
        assert verdict.axiom == axioms[0]
        assert verdict.valid == 0
        assert verdict.assignment == (("x1", "$a"), ("x2", "$a"), ("x3", "$b"))
        assert structure.eval_closed(verdict.instance()) is TruthValue.FALSE

    def test_trivial_group(self):
        trivial = FiniteTermStructure.from_mapping(
            read_fixture("trivial.json"), klein_language(), "trivial"
        )
        assert trivial.is_model(group_axioms()).is_model


class TestDefinitions:
    def test_incomplete_table(self):
        data = read_fixture("klein.json")
        del data["functions"]["*"]["a,b"]
        with pytest.raises(ExceptionGroup) as exc_info:
            FiniteTermStructure.from_mapping(data, klein_language())
        assert any("undefined" in p.reason for p in exc_info.value.exceptions)

    def test_values_outside_the_universe(self):
        data = read_fixture("klein.json")
        data["functions"]["*"]["a,b"] = "z"
        with pytest.raises(ExceptionGroup):
            FiniteTermStructure.from_mapping(data, klein_language())

    def test_missing_universe(self):
        with pytest.raises(InvalidDefinition):
            FiniteTermStructure.from_mapping({"names": {}}, klein_language())

    def test_unsupported_string_arity(self):
        with pytest.raises(ExceptionGroup):
            StringStructure.from_mapping(
                {"atoms": ["a"], "predicates": {"p/3": "IsPrefix"}}
            )

    def test_unknown_string_relation(self):
        with pytest.raises(InvalidDefinition):
            StringStructure.from_mapping({"atoms": ["a"], "predicates": {"p/1": "Odd"}})

    def test_structures_equal(self):
        assert structures_equal(klein(), klein())
        assert not structures_equal(klein(), klein(a_b="e"))
        assert not structures_equal(klein(), strings_ab())


class TestStringStructures:
    @pytest.mark.parametrize(
        "text, expected",
        [
            ("p [$ab] , [$ba]", TruthValue.TRUE),
            ("p [a] , [$ab]", TruthValue.FALSE),
            ("q [a b]", TruthValue.TRUE),
            ("ex x1 q [x1]", TruthValue.TRUE),
            ("all x1 q [x1]", TruthValue.FALSE),
            ("all x1 ~ [x1] , [x1]", TruthValue.TRUE),
            ("all x1 p [x1] , [x1]", TruthValue.UNKNOWN_AT_BOUND),
            ("ex x1 ~ [a x1] , [b]", TruthValue.UNKNOWN_AT_BOUND),
        ],
    )
    def test_eval_closed(self, text, expected):
        structure = strings_ab()
        assert structure.eval_closed(parse_formula(text, structure.language)) is expected

    def test_names_are_stripped(self):
        structure = strings_ab()
        assert structure.eval_list(parse_arglist("[$ab a]", structure.language)) == "aba"

    def test_undecided_axioms(self):
        structure = strings_ab()
        verdict = structure.is_model([parse_formula("p [x1] , [x1]", structure.language)])
        assert verdict.status is ModelStatus.UNKNOWN_AT_BOUND
        assert verdict.valid == 0


class TestSubstitutionCoherence:
    def test_klein(self):
        report = check_substitution_coherence(klein(), 2, 1)
        assert report.passed
        assert report.details == "pairs: 18100\nviolations: 0"

    def test_strings(self):
        report = check_substitution_coherence(strings_ab(), 3, 3)
        assert report.passed
        assert report.details == f"pairs: {155 * 84}\nviolations: 0"

    def test_sample(self):
        report = check_substitution_coherence(klein(), 2, 1, sample=50, seed=1)
        assert report.passed
        assert report.details.startswith("pairs: 50\n")

    def test_nesting_blind_evaluation_is_caught(self):
        structure = NestingBlindStructure.from_mapping(
            read_fixture("klein.json"), klein_language(), "klein"
        )
        report = check_substitution_coherence(structure, 2, 1, max_listed=3)

        assert report.outcome is Outcome.FAIL
        assert len(report.failures()) == 3
        template, substituent = report.failures()[0].witness
        value = structure.eval_list(substituent)
        direct = structure.eval_list(subst_list(template, variable(1), substituent))
        named = structure.eval_list(
            subst_list(template, variable(1), structure.name_leaf(value))
        )
        assert direct != named
