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

import json
from collections.abc import Mapping
from pathlib import Path
from typing import Any

from ..errors import FormulaSyntaxError, ModelbenchError
from ..language import LanguageSpec
from ..morphism import Morphism, StringMap
from ..parser import parse_formula
from ..structure import FiniteTermStructure, StringStructure, Structure
from ..syntax import Formula


class DefinitionError(ModelbenchError):
    """A definition file cannot be read or is malformed."""

    def __init__(self, path: Path, reason: str):
        self.path = path
        self.reason = reason
        super().__init__(f"{path}: {reason}")


def _read_json(path: Path) -> Any:
    try:
        with path.open(encoding="utf-8") as f:
            return json.load(f)
    except OSError as e:
        raise DefinitionError(path, e.strerror or str(e)) from e
    except json.JSONDecodeError as e:
        raise DefinitionError(path, f"invalid JSON: {e}") from e


def _read_object(path: Path) -> dict[str, Any]:
    data = _read_json(path)
    if not isinstance(data, dict):
        raise DefinitionError(path, "expected a JSON object")
    return data


def load_language(source: Path | Mapping[str, Any]) -> LanguageSpec:
    """
    Load a language from a JSON file or its already decoded form.
    """
    if isinstance(source, Path):
        return LanguageSpec.from_mapping(_read_object(source))
    return LanguageSpec.from_mapping(source)


def _referenced_language(value: Any, base: Path) -> LanguageSpec:
    """
    A `language` field is either a path relative to the referencing file or
    an inline definition.
    """
    match value:
        case str():
            return load_language(base.parent / value)
        case Mapping():
            return load_language(value)
        case _:
            raise DefinitionError(base, "language must be a path or an object")


def load_structure(path: Path) -> Structure:
    """
    Load a finite term structure or, for `"kind": "string"`, a string
    structure.
    """
    data = _read_object(path)
    match data.get("kind", "term"):
        case "string":
            language = (
                _referenced_language(data["language"], path)
                if "language" in data
                else None
            )
            return StringStructure.from_mapping(data, language)
        case "term":
            if "language" not in data:
                raise DefinitionError(path, "a term structure needs a language")
            language = _referenced_language(data["language"], path)
            return FiniteTermStructure.from_mapping(data, language, path.stem)
        case kind:
            raise DefinitionError(path, f"unknown structure kind {kind!r}")


def load_morphism(path: Path) -> Morphism:
    """
    Load a morphism. `source` and `target` are structure files relative to the
    morphism file; `map` is a table for finite structures or a built-in string
    map (`"identity"`, `"reverse"`, `{"rename": {...}}`) for string structures.
    """
    data = _read_object(path)
    try:
        source = load_structure(path.parent / data["source"])
        target = load_structure(path.parent / data["target"])
        raw_map = data["map"]
    except (KeyError, TypeError) as e:
        raise DefinitionError(path, f"missing or malformed key {e}") from e

    if isinstance(source, StringStructure):
        label = raw_map if isinstance(raw_map, str) else json.dumps(raw_map, sort_keys=True)
        return Morphism(source, target, StringMap.from_spec(raw_map), label)
    if not isinstance(raw_map, dict):
        raise DefinitionError(path, "map must be an object")
    return Morphism(source, target, raw_map, path.stem)


def load_axioms(path: Path, language: LanguageSpec) -> list[Formula]:
    """
    Load an axiom file: one formula per line; blank lines and everything after
    `#` are ignored.

    Raises:
        DefinitionError:
            If the file cannot be read or a line does not parse; the message
            names the line.
    """
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise DefinitionError(path, e.strerror or str(e)) from e

    axioms = []
    for number, line in enumerate(text.splitlines(), start=1):
        formula = line.split("#", 1)[0].strip()
        if not formula:
            continue
        try:
            axioms.append(parse_formula(formula, language))
        except FormulaSyntaxError as e:
            raise DefinitionError(path, f"line {number}: {e}") from e
    return axioms
