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

from modelbench.config import Limits
from modelbench.errors import (
    InvalidDefinition,
    LanguageMismatch,
    NotGround,
    NotInvertible,
    StructureMismatch,
    UniverseTooLarge,
)
from modelbench.henkin import FragmentBounds
from modelbench.language import enumerate_ground
from modelbench.morphism import (
    Morphism,
    MorphismStatus,
    StringMap,
    check_pushforward_bijective,
    check_truth_transfer,
    compose,
    enumerate_morphisms,
    identity,
    invert,
    is_homomorphism,
    is_isomorphism,
    push_formula,
    push_list,
    push_list_by_skeleton,
)
from modelbench.parser import parse_arglist, parse_formula
from modelbench.report import Outcome
from modelbench.syntax import Apply, Concat, leaves, list_names, print_formula, print_list

from .utils import klein, klein_language, strings_ab, trivial, unary_structure

SWAP_AB = {"e": "e", "a": "b", "b": "a", "c": "c"}
CYCLE_ABC = {"e": "e", "a": "b", "b": "c", "c": "a"}
SWAP_BC = {"e": "e", "a": "a", "b": "c", "c": "b"}
COLLAPSE = {"e": "u", "a": "u", "b": "u", "c": "u"}
# Sends e to a although `a * a` is e.
MOVE_IDENTITY = {"e": "a", "a": "e", "b": "b", "c": "c"}


def klein_morphism(table, label=""):
    return Morphism(klein(), klein(), table, label)


def collapse():
    return Morphism(klein(), trivial(), COLLAPSE, "collapse")


def automorphisms():
    return enumerate_morphisms(klein(), klein(), "iso")


def klein_lists(depth):
    return enumerate_ground(klein_language(), klein().names, depth)


class TestDefinitions:
    def test_missing_images(self):
        with pytest.raises(ExceptionGroup) as exc_info:
            klein_morphism({"e": "e", "a": "z"})
        reasons = [p.reason for p in exc_info.value.exceptions]
        assert any("no image" in r for r in reasons)
        assert any("not in the target" in r for r in reasons)

    def test_languages_must_agree(self):
        with pytest.raises(LanguageMismatch):
            Morphism(klein(), strings_ab(), SWAP_AB)

    def test_finite_structures_need_tables(self):
        with pytest.raises(InvalidDefinition):
            Morphism(klein(), klein(), StringMap())

    def test_string_maps(self):
        assert StringMap.from_spec("reverse")("aab") == "baa"
        assert StringMap.from_spec({"rename": {"a": "b"}})("aab") == "bbb"
        assert StringMap.from_spec("identity")("ab") == "ab"
        with pytest.raises(InvalidDefinition):
            StringMap.from_spec("rotate")

    def test_composite_string_maps_invert_step_by_step(self):
        swap = StringMap.from_spec({"rename": {"a": "b", "b": "a"}})
        composite = StringMap.from_spec("reverse").then(swap)
        assert composite("aab") == "abb"
        assert composite.inverse()("abb") == "aab"
        assert composite.inverse().steps == (swap.steps[0].inverse(), composite.steps[0])

    def test_rename_inverse_needs_injectivity(self):
        with pytest.raises(NotInvertible):
            StringMap.from_spec({"rename": {"a": "b", "b": "b"}}).inverse()

    def test_str(self):
        assert str(klein_morphism(SWAP_AB)) == "e->e a->b b->a c->c"
        assert str(identity(strings_ab())) == "identity"


class TestPushforward:
    def test_push_list(self):
        psi = klein_morphism(SWAP_AB)
        arglist = parse_arglist("*($a *($b $c))", klein_language())
        assert print_list(push_list(psi, arglist)) == "*($b *($a $c))"

    def test_push_list_needs_ground_lists(self):
        psi = klein_morphism(SWAP_AB)
        with pytest.raises(NotGround):
            push_list(psi, parse_arglist("*($a x1)", klein_language()))

    def test_push_formula_keeps_variables(self):
        psi = klein_morphism(SWAP_AB)
        formula = parse_formula("all x1 ~ *($a x1) , $b", klein_language())
        assert print_formula(push_formula(psi, formula)) == "all x1 ~ *($b x1) , $a"

    def test_push_into_another_universe(self):
        arglist = parse_arglist("*($a $b)", klein_language())
        assert print_list(push_list(collapse(), arglist)) == "*($u $u)"

    def test_skeleton_decompositions_agree(self):
        psi = klein_morphism(CYCLE_ABC)
        lists = klein_lists(2)
        assert len(lists) == 404
        tail = lists[-10:]
        lists += [Apply("*", (left, right)) for left in tail for right in tail]
        assert len(lists) == 504
        assert any(
            len(list_names(arglist)) < sum(1 for _ in leaves(arglist)) for arglist in lists
        )
        for arglist in lists:
            pushed = push_list(psi, arglist)
            assert push_list_by_skeleton(psi, arglist) == pushed
            assert push_list_by_skeleton(psi, arglist, relaxed=True) == pushed

    def test_pushforward_is_functorial(self):
        lists = klein_lists(2)
        found = automorphisms()
        for phi in found:
            for psi in found:
                composite = compose(phi, psi)
                for arglist in lists:
                    assert push_list(composite, arglist) == push_list(
                        phi, push_list(psi, arglist)
                    )
        for arglist in lists:
            assert push_list(identity(klein()), arglist) == arglist

    @pytest.mark.slow
    def test_pushforward_is_functorial_on_deeper_lists(self):
        phi = klein_morphism(SWAP_AB)
        psi = klein_morphism(CYCLE_ABC)
        composite = compose(phi, psi)
        for arglist in klein_lists(3):
            assert push_list(composite, arglist) == push_list(
                phi, push_list(psi, arglist)
            )

    def test_evaluation_commutes_with_automorphisms(self):
        psi = klein_morphism(CYCLE_ABC)
        structure = klein()
        for arglist in enumerate_ground(klein_language(), structure.names, 2):
            assert psi(structure.eval_list(arglist)) == structure.eval_list(
                push_list(psi, arglist)
            )


class TestFiniteChecks:
    @pytest.mark.parametrize("table", [SWAP_AB, CYCLE_ABC])
    def test_automorphisms(self, table):
        psi = klein_morphism(table)
        assert is_homomorphism(psi).status is MorphismStatus.EXACT_HOMOMORPHISM
        verdict = is_isomorphism(psi)
        assert verdict.status is MorphismStatus.EXACT_ISOMORPHISM
        assert str(verdict) == "EXACT-ISOMORPHISM"

    def test_collapse_is_a_homomorphism_only(self):
        assert is_homomorphism(collapse()).holds
        verdict = is_isomorphism(collapse())
        assert verdict.status is MorphismStatus.COUNTEREXAMPLE
        assert verdict.reason == "not injective"
        assert verdict.witness == ("e", "a")

    def test_moving_the_identity(self):
        verdict = is_homomorphism(klein_morphism(MOVE_IDENTITY))
        assert not verdict.holds
        assert print_list(verdict.witness) == "*($e $e)"
        assert str(verdict) == "COUNTEREXAMPLE: evaluation does not commute: *($e $e)"

    def test_predicates_must_be_preserved(self):
        source = unary_structure(["a"])
        target = unary_structure(["b"])
        verdict = is_homomorphism(Morphism(source, target, {"a": "a", "b": "b"}))
        assert verdict.reason == "predicate not preserved"
        assert verdict.witness == ("p", ("a",))

    def test_predicates_must_be_reflected(self):
        source = unary_structure([])
        target = unary_structure(["a", "b"])
        psi = Morphism(source, target, {"a": "a", "b": "b"})
        assert is_homomorphism(psi).holds
        verdict = is_isomorphism(psi)
        assert verdict.reason == "predicate not reflected"
        assert verdict.witness == ("p", ("a",))


class TestAlgebra:
    def test_compose(self):
        psi = klein_morphism(CYCLE_ABC)
        assert compose(psi, psi).table() == {"e": "e", "a": "c", "b": "a", "c": "b"}
        assert compose(collapse(), psi).table() == COLLAPSE

    def test_compose_needs_matching_structures(self):
        with pytest.raises(StructureMismatch):
            compose(klein_morphism(SWAP_AB), collapse())

    def test_invert(self):
        psi = klein_morphism(CYCLE_ABC, "cycle")
        inverse = invert(psi)
        assert inverse.table() == {"e": "e", "a": "c", "b": "a", "c": "b"}
        assert inverse.label == "cycle^-1"
        assert compose(inverse, psi).table() == identity(klein()).table()

    def test_transpositions_compose_to_a_cycle(self):
        composite = compose(klein_morphism(SWAP_AB), klein_morphism(SWAP_BC))
        assert composite.table() == CYCLE_ABC
        assert is_isomorphism(composite).status is MorphismStatus.EXACT_ISOMORPHISM

    def test_automorphisms_form_a_group(self):
        found = automorphisms()
        unit = identity(klein()).table()
        tables = {frozenset(psi.table().items()) for psi in found}
        for phi in found:
            inverse = invert(phi)
            assert is_isomorphism(inverse).status is MorphismStatus.EXACT_ISOMORPHISM
            assert compose(phi, inverse).table() == unit
            assert compose(inverse, phi).table() == unit
            for psi in found:
                composite = compose(phi, psi)
                assert is_isomorphism(composite).status is MorphismStatus.EXACT_ISOMORPHISM
                assert frozenset(composite.table().items()) in tables

    def test_swap_is_its_own_inverse(self):
        assert invert(klein_morphism(SWAP_AB)).table() == SWAP_AB

    def test_invert_needs_an_isomorphism(self):
        with pytest.raises(NotInvertible):
            invert(collapse())


class TestEnumeration:
    def test_automorphisms_of_klein(self):
        found = enumerate_morphisms(klein(), klein(), "iso")
        assert len(found) == 6
        assert found[0].table() == identity(klein()).table()
        assert all(is_isomorphism(psi).holds for psi in found)

    def test_endomorphisms_of_klein(self):
        found = enumerate_morphisms(klein(), klein(), "hom")
        assert len(found) == 16
        assert found[0].table() == {"e": "e", "a": "e", "b": "e", "c": "e"}
        assert len({tuple(psi.table().values()) for psi in found}) == 16

    def test_workers_do_not_change_the_answer(self):
        sequential = enumerate_morphisms(klein(), klein(), "hom")
        parallel = enumerate_morphisms(klein(), klein(), "hom", Limits(workers=4))
        assert [psi.table() for psi in parallel] == [psi.table() for psi in sequential]

    def test_between_different_universes(self):
        assert len(enumerate_morphisms(klein(), trivial(), "hom")) == 1
        assert enumerate_morphisms(klein(), trivial(), "iso") == []
        (only,) = enumerate_morphisms(trivial(), klein(), "hom")
        assert only.table() == {"u": "e"}

    def test_universe_cap(self):
        with pytest.raises(UniverseTooLarge):
            enumerate_morphisms(klein(), klein(), "iso", Limits(morphism_universe_cap=3))

    def test_unknown_mode(self):
        with pytest.raises(ValueError):
            enumerate_morphisms(klein(), klein(), "epi")


class TestStringMorphisms:
    def test_identity_is_verified_up_to_the_bound(self):
        verdict = is_isomorphism(identity(strings_ab()), depth_bound=3)
        assert verdict.status is MorphismStatus.BOUNDED_VERIFIED
        assert str(verdict) == "BOUNDED-VERIFIED (depth 3)"

    def test_reversal_does_not_commute(self):
        structure = strings_ab()
        psi = Morphism(structure, structure, StringMap.from_spec("reverse"), "reverse")
        verdict = is_homomorphism(psi)
        assert verdict.status is MorphismStatus.COUNTEREXAMPLE
        assert verdict.reason == "evaluation does not commute"
        assert isinstance(verdict.witness, Concat)
        assert len(verdict.witness.children) == 2

    def test_renaming_atoms_moves_alphabet_symbols(self):
        structure = strings_ab()
        psi = Morphism(
            structure, structure, StringMap.from_spec({"rename": {"a": "b", "b": "a"}})
        )
        assert psi.is_bijective()
        assert not is_homomorphism(psi).holds

    def test_invert_string_identity(self):
        inverse = invert(identity(strings_ab()))
        assert inverse("ab") == "ab"


class TestReports:
    def test_pushforward_of_an_automorphism_is_bijective(self):
        report = check_pushforward_bijective(klein_morphism(CYCLE_ABC), 2)
        assert report.passed
        assert report.entry("injective").outcome is Outcome.PASS
        assert report.entry("surjective").outcome is Outcome.PASS

    def test_pushforward_of_the_collapse_is_not_injective(self):
        report = check_pushforward_bijective(collapse(), 1)
        assert not report.passed
        assert report.entry("injective").outcome is Outcome.FAIL
        assert report.entry("surjective").outcome is Outcome.PASS
        first, second = report.entry("injective").witness
        assert push_list(collapse(), first) == push_list(collapse(), second)

    def test_truth_transfers_along_automorphisms(self):
        report = check_truth_transfer(klein_morphism(SWAP_AB), FragmentBounds())
        assert report.passed
        assert "mismatches: 0" in report.details

    def test_truth_does_not_transfer_along_the_collapse(self):
        report = check_truth_transfer(
            collapse(), FragmentBounds(connective_depth=0), max_listed=2
        )
        assert report.outcome is Outcome.FAIL
        assert len(report.failures()) == 2
        assert report.failures()[0].summary.startswith("FALSE in the source, TRUE")

    def test_truth_does_not_transfer_along_non_homomorphisms(self):
        report = check_truth_transfer(
            klein_morphism(MOVE_IDENTITY), FragmentBounds(connective_depth=0, list_depth=1)
        )
        assert not report.passed
