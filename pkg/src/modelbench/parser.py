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
Parsing of the prefix concrete syntax.

A Lark grammar is generated for each language: its predicate symbols,
constants, function symbols and atoms become dedicated terminals, so the
LALR parser never has to guess which class an identifier belongs to.

Notes:
    Lark's own exceptions never leave this module. Unknown identifiers raise
    `UnboundSymbolError`, other unknown characters `LexError`, misplaced tokens
    `FormulaSyntaxError` and wrong function arity `ArityError`.
"""

from __future__ import annotations

import functools
import re
from collections.abc import Iterable

from lark import Lark, Token, Transformer, v_args
from lark.exceptions import (
    UnexpectedCharacters,
    UnexpectedEOF,
    UnexpectedInput,
    UnexpectedToken,
    VisitError,
)

from .errors import ArityError, FormulaSyntaxError, LexError, UnboundSymbolError
from .language import Grammar, LanguageSpec, StringGrammar, TermGrammar
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
    alphabet_symbol,
)

_IDENTIFIER = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_WORD_GUARD = "(?![A-Za-z0-9_])"

_FORMULA_RULES = """
formula_root: formula
arglist_root: arglist

?formula: "~" arglist "," arglist -> eq
        | "!" formula -> neg
        | "->" formula formula -> implies
        | "<->" formula formula -> iff
        | "&" formula formula -> conj
        | "|" formula formula -> disj
        | _ALL VAR formula -> forall
        | _EX VAR formula -> exists
"""

_COMMON_TERMINALS = r"""
_ALL.1: /all(?![A-Za-z0-9_])/
_EX.1: /ex(?![A-Za-z0-9_])/
VAR.3: /x[1-9][0-9]*(?![A-Za-z0-9_])/
NAME.3: /\$[A-Za-z0-9_]+/

%import common.WS
%ignore WS
"""


def _terminal(label: str, tokens: Iterable[str]) -> str:
    alternatives = []
    for token in sorted(tokens, key=lambda t: (-len(t), t)):
        pattern = re.escape(token).replace("/", "\\/")
        if token[-1].isalnum() or token[-1] == "_":
            pattern += _WORD_GUARD
        alternatives.append(pattern)
    return f"{label}.2: /(?:{'|'.join(alternatives)})/"


def _grammar_text(grammar: Grammar, predicates: frozenset[str]) -> str:
    rules = [_FORMULA_RULES.strip()]
    terminals = [_COMMON_TERMINALS]

    if predicates:
        rules.append('        | PRED (arglist ("," arglist)*)? -> pred')
        terminals.append(_terminal("PRED", predicates))

    match grammar:
        case TermGrammar(constants, functions):
            arglist = ["?arglist: VAR -> variable", "        | NAME -> name"]
            if constants:
                arglist.append("        | CONST -> constant")
                terminals.append(_terminal("CONST", constants))
            if functions:
                arglist.append('        | FUNC "(" arglist+ ")" -> apply')
                terminals.append(_terminal("FUNC", [f for f, _ in functions]))
            rules.extend(arglist)
        case StringGrammar(atoms, atoms_are_lists):
            rules.append('arglist: "[" item+ "]" -> concat')
            rules.append("?item: VAR -> variable")
            rules.append("     | NAME -> name")
            if atoms_are_lists and atoms:
                rules.append("     | ATOM -> atom")
                terminals.append(_terminal("ATOM", atoms))

    return "\n".join(rules + terminals) + "\n"


@functools.cache
def _parser(grammar: Grammar, predicates: frozenset[str]) -> Lark:
    return Lark(
        _grammar_text(grammar, predicates),
        parser="lalr",
        start=["formula_root", "arglist_root"],
    )


@v_args(inline=True)
class _AstBuilder(Transformer[Token, Formula | ArgList]):
    """
    Turns Lark parse trees into syntax values, checking function arity.
    """

    def __init__(self, text: str, arities: dict[str, int]):
        super().__init__()
        self.text = text
        self.arities = arities

    def formula_root(self, formula: Formula) -> Formula:
        return formula

    def arglist_root(self, arglist: ArgList) -> ArgList:
        return arglist

    def eq(self, left: ArgList, right: ArgList) -> Formula:
        return Eq(left, right)

    def pred(self, symbol: Token, *args: ArgList) -> Formula:
        return Pred(str(symbol), tuple(args))

    def neg(self, body: Formula) -> Formula:
        return Not(body)

    def implies(self, left: Formula, right: Formula) -> Formula:
        return Implies(left, right)

    def iff(self, left: Formula, right: Formula) -> Formula:
        return Iff(left, right)

    def conj(self, left: Formula, right: Formula) -> Formula:
        return And(left, right)

    def disj(self, left: Formula, right: Formula) -> Formula:
        return Or(left, right)

    def forall(self, x: Token, body: Formula) -> Formula:
        return ForAll(SymbolAtom(SymbolKind.VARIABLE, str(x)), body)

    def exists(self, x: Token, body: Formula) -> Formula:
        return Exists(SymbolAtom(SymbolKind.VARIABLE, str(x)), body)

    def variable(self, token: Token) -> ArgList:
        return Leaf(SymbolAtom(SymbolKind.VARIABLE, str(token)))

    def name(self, token: Token) -> ArgList:
        return Leaf(SymbolAtom(SymbolKind.NAME, str(token)))

    def constant(self, token: Token) -> ArgList:
        return Leaf(alphabet_symbol(str(token)))

    def atom(self, token: Token) -> ArgList:
        return Leaf(alphabet_symbol(str(token)))

    def apply(self, function: Token, *children: ArgList) -> ArgList:
        expected = self.arities[str(function)]
        if len(children) != expected:
            raise ArityError(self.text, str(function), expected, len(children))
        return Apply(str(function), tuple(children))

    def concat(self, *items: ArgList) -> ArgList:
        return Concat(tuple(items))


def _translate(text: str, error: UnexpectedInput) -> FormulaSyntaxError:
    match error:
        case UnexpectedCharacters():
            position = error.pos_in_stream
            if match := _IDENTIFIER.match(text, position):
                return UnboundSymbolError(text, position, match.group())
            return LexError(text, position, f"unknown token {text[position]!r}")
        case UnexpectedEOF():
            return FormulaSyntaxError(text, len(text), "unexpected end of input")
        case UnexpectedToken():
            expected = ", ".join(sorted(error.expected))
            return FormulaSyntaxError(
                text,
                error.pos_in_stream,
                f"unexpected {error.token!s} (expected one of {expected})",
            )
        case _:
            return FormulaSyntaxError(text, None, str(error))


def _parse(text: str, spec: LanguageSpec, start: str) -> Formula | ArgList:
    parser = _parser(spec.grammar, spec.predicates)
    try:
        tree = parser.parse(text, start=start)
    except UnexpectedInput as e:
        raise _translate(text, e) from None

    arities = spec.grammar.arities if isinstance(spec.grammar, TermGrammar) else {}
    try:
        return _AstBuilder(text, arities).transform(tree)
    except VisitError as e:
        if isinstance(e.orig_exc, FormulaSyntaxError):
            raise e.orig_exc from None
        raise


def parse_formula(text: str, spec: LanguageSpec) -> Formula:
    """
    Parse a formula written in prefix notation.

    Parameters:
        text:
            Whitespace-separated tokens, for example `all x1 ~ x1 , x1`.
        spec:
            The language that declares predicates, constants, function symbols
            and atoms. Any `$`-marked name is accepted lexically.

    Returns:
        The formula. `print_formula` of the result is the canonical spelling of
        `text`.

    Raises:
        LexError:
            If the text contains characters that form no token.
        UnboundSymbolError:
            If an identifier is not declared by the language.
        ArityError:
            If a function symbol gets the wrong number of argument lists.
        FormulaSyntaxError:
            If the tokens do not form a formula.
    """
    result = _parse(text, spec, "formula_root")
    assert not isinstance(result, Leaf | Apply | Concat)
    return result


def parse_arglist(text: str, spec: LanguageSpec) -> ArgList:
    """
    Parse a single argument list, for example `*($a x1)` or `[a $b]`.

    Raises:
        FormulaSyntaxError:
            As `parse_formula`.
    """
    result = _parse(text, spec, "arglist_root")
    assert isinstance(result, Leaf | Apply | Concat)
    return result
