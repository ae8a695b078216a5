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

from .config import DEFAULT_LIMITS, Limits
from .errors import ModelbenchError
from .henkin import (
    FragmentBounds,
    FragmentPartition,
    enumerate_formulas,
    enumerate_valid_fragment,
    fragment_consistency_report,
    henkin_witness,
    in_theory,
)
from .hfset import HFSet, check_subset_friendly, closure_report
from .language import (
    LanguageSpec,
    NameSet,
    StringGrammar,
    TermGrammar,
    enumerate_ground,
    hat_extend,
    in_language,
)
from .morphism import (
    Morphism,
    MorphismStatus,
    MorphismVerdict,
    StringMap,
    compose,
    enumerate_morphisms,
    invert,
    is_homomorphism,
    is_isomorphism,
    push_formula,
    push_list,
)
from .parser import parse_arglist, parse_formula
from .report import Outcome, Report, build_report
from .structure import (
    FiniteTermStructure,
    ModelStatus,
    ModelVerdict,
    StringStructure,
    Structure,
    TruthValue,
    check_substitution_coherence,
)
from .syntax import print_formula, print_list, subst_formula, subst_list

__all__ = [
    "DEFAULT_LIMITS",
    "FiniteTermStructure",
    "FragmentBounds",
    "FragmentPartition",
    "HFSet",
    "LanguageSpec",
    "Limits",
    "ModelStatus",
    "ModelVerdict",
    "ModelbenchError",
    "Morphism",
    "MorphismStatus",
    "MorphismVerdict",
    "NameSet",
    "Outcome",
    "Report",
    "StringGrammar",
    "StringMap",
    "StringStructure",
    "Structure",
    "TermGrammar",
    "TruthValue",
    "build_report",
    "check_subset_friendly",
    "check_substitution_coherence",
    "closure_report",
    "compose",
    "enumerate_formulas",
    "enumerate_ground",
    "enumerate_morphisms",
    "enumerate_valid_fragment",
    "fragment_consistency_report",
    "hat_extend",
    "henkin_witness",
    "in_language",
    "in_theory",
    "invert",
    "is_homomorphism",
    "is_isomorphism",
    "parse_arglist",
    "parse_formula",
    "print_formula",
    "print_list",
    "push_formula",
    "push_list",
    "subst_formula",
    "subst_list",
]
