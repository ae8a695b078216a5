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

import logging
from collections.abc import Sequence
from pathlib import Path
from typing import Any, NoReturn

import click  # type: ignore
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from ..config import DEFAULT_LIMITS, Limits
from ..errors import ModelbenchError, PreconditionViolated
from ..henkin import FragmentBounds, enumerate_valid_fragment, fragment_consistency_report
from ..hfset import (
    HFSet,
    big_union,
    cartesian_product,
    check_subset_friendly,
    choice_set,
    difference,
    intersection,
    pair,
    power_set,
    rank,
    regularity_witness,
    transitive_closure,
    union,
)
from ..morphism import (
    Morphism,
    enumerate_morphisms,
    is_homomorphism,
    is_isomorphism,
    push_formula,
    push_list,
)
from ..parser import parse_arglist, parse_formula
from ..report import Report
from ..structure import ModelStatus, TruthValue, check_substitution_coherence
from ..syntax import print_formula, print_list, universal_closure
from .loader import load_axioms, load_language, load_morphism, load_structure

FILE = click.Path(exists=True, dir_okay=False, path_type=Path)

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


class _Group(click.Group):
    """
    Renders library errors on standard error and exits with status 2.
    """

    def invoke(self, ctx: click.Context) -> Any:
        try:
            return super().invoke(ctx)
        except ExceptionGroup as group:
            click.echo(f"Error: {group.message}", err=True)
            for exception in group.exceptions:
                click.echo(f"  {exception}", err=True)
            ctx.exit(2)
        except ModelbenchError as e:
            click.echo(f"Error: {e}", err=True)
            ctx.exit(2)


def _exit(affirmative: bool) -> NoReturn:
    click.get_current_context().exit(0 if affirmative else 1)
    raise AssertionError("unreachable")


def _emit_report(report: Report) -> NoReturn:
    for line in report.lines():
        click.echo(line)
    _exit(report.passed)


def _configure_logging(level: str) -> None:
    logger = logging.getLogger("modelbench")
    logger.setLevel(level)
    logger.handlers = [
        RichHandler(console=Console(stderr=True), show_time=False, show_path=False)
    ]
    logger.propagate = False


def _one_of(**options: Any) -> str:
    given = [option for option, value in options.items() if value is not None]
    if len(given) != 1:
        spelled = " or ".join(f"--{option.replace('_', '-')}" for option in options)
        raise click.UsageError(f"Provide exactly one of {spelled}.")
    return given[0]


@click.group(cls=_Group)  # type: ignore[misc]
@click.option(
    "--log-level",
    type=click.Choice(LOG_LEVELS, case_sensitive=False),
    default="WARNING",
    show_default=True,
    help="Log level of the diagnostics written to standard error.",
)  # type: ignore[misc]
@click.option(
    "--enumeration-cap",
    type=click.IntRange(min=1),
    default=DEFAULT_LIMITS.enumeration_cap,
    show_default=True,
    help="Maximum number of argument lists or sets an enumeration may produce.",
)  # type: ignore[misc]
@click.option(
    "--morphism-universe-cap",
    type=click.IntRange(min=1),
    default=DEFAULT_LIMITS.morphism_universe_cap,
    show_default=True,
    help="Maximum source universe size of a morphism search.",
)  # type: ignore[misc]
@click.option(
    "--power-set-cap",
    type=click.IntRange(min=1),
    default=DEFAULT_LIMITS.power_set_cap,
    show_default=True,
    help="Maximum number of members of a set whose power set is built.",
)  # type: ignore[misc]
@click.option(
    "--fragment-cap",
    type=click.IntRange(min=1),
    default=DEFAULT_LIMITS.fragment_cap,
    show_default=True,
    help="Maximum number of formulas in a bounded fragment.",
)  # type: ignore[misc]
@click.option(
    "--workers",
    type=click.IntRange(min=1),
    default=DEFAULT_LIMITS.workers,
    show_default=True,
    help="Number of threads used by morphism searches.",
)  # type: ignore[misc]
@click.pass_context  # type: ignore[misc]
def cli(
    ctx: click.Context,
    log_level: str,
    enumeration_cap: int,
    morphism_universe_cap: int,
    power_set_cap: int,
    fragment_cap: int,
    workers: int,
) -> None:
    _configure_logging(log_level.upper())
    ctx.obj = Limits(
        enumeration_cap=enumeration_cap,
        morphism_universe_cap=morphism_universe_cap,
        power_set_cap=power_set_cap,
        fragment_cap=fragment_cap,
        workers=workers,
    )


@cli.command()  # type: ignore[misc]
@click.option("--language", "language_path", type=FILE)  # type: ignore[misc]
@click.option("--structure", "structure_path", type=FILE)  # type: ignore[misc]
@click.option("--formula", help="A formula in prefix notation.")  # type: ignore[misc]
@click.option("--list", "arglist", help="A single argument list.")  # type: ignore[misc]
def parse(
    language_path: Path | None,
    structure_path: Path | None,
    formula: str | None,
    arglist: str | None,
) -> None:
    """Print the canonical form of a formula or argument list."""
    if _one_of(language=language_path, structure=structure_path) == "language":
        assert language_path is not None
        language = load_language(language_path)
    else:
        assert structure_path is not None
        language = load_structure(structure_path).language

    if _one_of(formula=formula, list=arglist) == "formula":
        assert formula is not None
        click.echo(print_formula(parse_formula(formula, language)))
    else:
        assert arglist is not None
        click.echo(print_list(parse_arglist(arglist, language)))


@cli.command(name="eval")  # type: ignore[misc]
@click.option("--structure", "structure_path", type=FILE, required=True)  # type: ignore[misc]
@click.option("--formula", help="A closed formula.")  # type: ignore[misc]
@click.option("--list", "arglist", help="A ground argument list.")  # type: ignore[misc]
def eval_(structure_path: Path, formula: str | None, arglist: str | None) -> None:
    """Evaluate a closed formula or a ground argument list."""
    structure = load_structure(structure_path)

    if _one_of(formula=formula, list=arglist) == "list":
        assert arglist is not None
        parsed = parse_arglist(arglist, structure.language)
        element = structure.eval_list(parsed)
        click.echo(f"{print_list(parsed)} = {element}")
        return

    assert formula is not None
    value = structure.eval_closed(parse_formula(formula, structure.language))
    click.echo(value.value)
    _exit(value is TruthValue.TRUE)


@cli.command()  # type: ignore[misc]
@click.option("--structure", "structure_path", type=FILE, required=True)  # type: ignore[misc]
@click.option("--formula", required=True, help="A formula; free variables are closed universally.")  # type: ignore[misc]
def valid(structure_path: Path, formula: str) -> None:
    """Decide whether a formula is valid in a structure."""
    structure = load_structure(structure_path)
    parsed = parse_formula(formula, structure.language)
    closure = print_formula(universal_closure(parsed))

    match structure.is_valid(parsed):
        case TruthValue.TRUE:
            click.echo(f"VALID: {closure}")
            _exit(True)
        case TruthValue.FALSE:
            click.echo(f"INVALID: {closure}")
            for variable, token in structure.counterexample(parsed) or ():
                click.echo(f"  {variable} = {token}")
        case TruthValue.UNKNOWN_AT_BOUND:
            click.echo(f"UNKNOWN-AT-BOUND: {closure}")
    _exit(False)


@cli.command()  # type: ignore[misc]
@click.option("--structure", "structure_path", type=FILE, required=True)  # type: ignore[misc]
@click.option("--axioms", "axioms_path", type=FILE, required=True)  # type: ignore[misc]
def check_model(structure_path: Path, axioms_path: Path) -> None:
    """Check that every axiom of a file is valid in a structure."""
    structure = load_structure(structure_path)
    axioms = load_axioms(axioms_path, structure.language)
    verdict = structure.is_model(axioms)

    match verdict.status:
        case ModelStatus.MODEL:
            click.echo(f"MODEL: {verdict.valid}/{verdict.total} axioms valid")
        case ModelStatus.COUNTEREXAMPLE:
            assert verdict.axiom is not None
            position = axioms.index(verdict.axiom) + 1
            click.echo(
                f"COUNTEREXAMPLE: axiom {position} of {verdict.total} fails: "
                f"{print_formula(verdict.axiom)}"
            )
            for variable, token in verdict.assignment:
                click.echo(f"  {variable} = {token}")
            if (instance := verdict.instance()) is not None:
                click.echo(f"  instance: {print_formula(instance)}")
        case ModelStatus.UNKNOWN_AT_BOUND:
            assert verdict.axiom is not None
            click.echo(
                f"UNKNOWN-AT-BOUND: {verdict.valid}/{verdict.total} axioms valid, "
                f"undecided: {print_formula(verdict.axiom)}"
            )
    _exit(verdict.is_model)


@cli.command()  # type: ignore[misc]
@click.option("--morphism", "morphism_path", type=FILE, required=True)  # type: ignore[misc]
@click.option("--formula", help="A formula over the source names.")  # type: ignore[misc]
@click.option("--list", "arglist", help="A ground argument list over the source names.")  # type: ignore[misc]
def push(morphism_path: Path, formula: str | None, arglist: str | None) -> None:
    """Push an argument list or formula forward along a morphism."""
    psi = load_morphism(morphism_path)
    language = psi.source.language

    if _one_of(formula=formula, list=arglist) == "list":
        assert arglist is not None
        click.echo(print_list(push_list(psi, parse_arglist(arglist, language))))
    else:
        assert formula is not None
        click.echo(print_formula(push_formula(psi, parse_formula(formula, language))))


@cli.command()  # type: ignore[misc]
@click.option("--morphism", "morphism_path", type=FILE, required=True)  # type: ignore[misc]
@click.option(
    "--depth",
    type=click.IntRange(min=1),
    default=3,
    show_default=True,
    help="List depth (string length) checked for string structures.",
)  # type: ignore[misc]
@click.pass_obj  # type: ignore[misc]
def hom(limits: Limits, morphism_path: Path, depth: int) -> None:
    """Decide whether a morphism is a homomorphism."""
    verdict = is_homomorphism(load_morphism(morphism_path), depth, limits)
    click.echo(str(verdict))
    _exit(verdict.holds)


@cli.command()  # type: ignore[misc]
@click.option("--morphism", "morphism_path", type=FILE, required=True)  # type: ignore[misc]
@click.option(
    "--depth",
    type=click.IntRange(min=1),
    default=3,
    show_default=True,
    help="List depth (string length) checked for string structures.",
)  # type: ignore[misc]
@click.pass_obj  # type: ignore[misc]
def iso(limits: Limits, morphism_path: Path, depth: int) -> None:
    """Decide whether a morphism is an isomorphism."""
    verdict = is_isomorphism(load_morphism(morphism_path), depth, limits)
    click.echo(str(verdict))
    _exit(verdict.holds)


def display_morphism_table(morphisms: Sequence[Morphism], universe: Sequence[str]) -> None:
    """Displays a list of morphisms as a rich Table, one column per individual."""

    console = Console()
    table = Table(title="Morphisms")
    table.add_column("#", justify="right")
    for element in universe:
        table.add_column(element, justify="center", style="cyan")
    for index, psi in enumerate(morphisms, start=1):
        images = psi.table()
        table.add_row(str(index), *(images[d] for d in universe))
    console.print(table)


@cli.command()  # type: ignore[misc]
@click.option("--from", "source_path", type=FILE, required=True)  # type: ignore[misc]
@click.option("--to", "target_path", type=FILE, required=True)  # type: ignore[misc]
@click.option(
    "--iso/--hom",
    default=False,
    help="Search isomorphisms instead of homomorphisms (default).",
)  # type: ignore[misc]
@click.option("--table", is_flag=True, default=False, help="Render a table.")  # type: ignore[misc]
@click.pass_obj  # type: ignore[misc]
def enum_morphisms(
    limits: Limits,
    source_path: Path,
    target_path: Path,
    iso: bool,
    table: bool,
) -> None:
    """List every homomorphism or isomorphism between two finite structures."""
    source = load_structure(source_path)
    target = load_structure(target_path)
    morphisms = enumerate_morphisms(source, target, "iso" if iso else "hom", limits)

    kind = "isomorphisms" if iso else "homomorphisms"
    click.echo(f"{len(morphisms)} {kind}")
    if table and morphisms:
        display_morphism_table(morphisms, list(morphisms[0].table()))
    else:
        for psi in morphisms:
            click.echo(str(psi))
    _exit(bool(morphisms))


@cli.command()  # type: ignore[misc]
@click.option("--structure", "structure_path", type=FILE, required=True)  # type: ignore[misc]
@click.option("--connective-depth", type=click.IntRange(min=0), default=1, show_default=True)  # type: ignore[misc]
@click.option("--list-depth", type=click.IntRange(min=0), default=0, show_default=True)  # type: ignore[misc]
@click.option("--quantifiers", type=click.IntRange(min=0), default=1, show_default=True)  # type: ignore[misc]
@click.option("--max-arity", type=click.IntRange(min=0), default=2, show_default=True)  # type: ignore[misc]
@click.option(
    "--report",
    is_flag=True,
    default=False,
    help="Print the consistency report instead of the fragment.",
)  # type: ignore[misc]
@click.pass_obj  # type: ignore[misc]
def henkin(
    limits: Limits,
    structure_path: Path,
    connective_depth: int,
    list_depth: int,
    quantifiers: int,
    max_arity: int,
    report: bool,
) -> None:
    """Split a bounded fragment of formulas into valid and invalid ones."""
    structure = load_structure(structure_path)
    bounds = FragmentBounds(connective_depth, list_depth, quantifiers, max_arity)

    if report:
        _emit_report(fragment_consistency_report(structure, bounds, limits=limits))

    partition = enumerate_valid_fragment(structure, bounds, limits=limits)
    click.echo(bounds.describe())
    sections = [("VALID", partition.valid), ("INVALID", partition.invalid)]
    if partition.undecided:
        sections.append(("UNDECIDED", partition.undecided))
    for title, formulas in sections:
        click.echo(f"{title} ({len(formulas)})")
        for formula in formulas:
            click.echo(print_formula(formula))


@cli.command()  # type: ignore[misc]
@click.option("--structure", "structure_path", type=FILE, required=True)  # type: ignore[misc]
@click.option("--list-depth", type=click.IntRange(min=0), default=2, show_default=True)  # type: ignore[misc]
@click.option("--substituent-depth", type=click.IntRange(min=0), default=1, show_default=True)  # type: ignore[misc]
@click.option(
    "--name-window",
    type=click.IntRange(min=1),
    default=1,
    show_default=True,
    help="Longest named string used for string structures.",
)  # type: ignore[misc]
@click.option("--sample", type=click.IntRange(min=1), default=None, help="Check a random sample of pairs.")  # type: ignore[misc]
@click.option("--seed", type=int, default=0, show_default=True, help="Seed of the sample.")  # type: ignore[misc]
@click.pass_obj  # type: ignore[misc]
def cond4(
    limits: Limits,
    structure_path: Path,
    list_depth: int,
    substituent_depth: int,
    name_window: int,
    sample: int | None,
    seed: int,
) -> None:
    """Check that substituting a ground list agrees with substituting its name."""
    structure = load_structure(structure_path)
    _emit_report(
        check_substitution_coherence(
            structure,
            list_depth,
            substituent_depth,
            name_window=name_window,
            sample=sample,
            seed=seed,
            limits=limits,
        )
    )


HF_OPERATIONS: dict[str, tuple[int, int | None]] = {
    "tc": (1, 1),
    "pow": (1, 1),
    "union": (2, 2),
    "inter": (2, 2),
    "diff": (2, 2),
    "pair": (2, 2),
    "prod": (1, None),
    "bigunion": (1, 1),
    "choice": (1, 1),
    "reg": (1, 1),
    "rank": (1, 1),
    "friendly": (1, 1),
}


@cli.command()  # type: ignore[misc]
@click.argument("operation", type=click.Choice(list(HF_OPERATIONS)))  # type: ignore[misc]
@click.argument("sets", nargs=-1)  # type: ignore[misc]
@click.pass_obj  # type: ignore[misc]
def hf(limits: Limits, operation: str, sets: tuple[str, ...]) -> None:
    """Apply an operation to hereditarily finite sets such as '{{},{{}}}'."""
    low, high = HF_OPERATIONS[operation]
    if len(sets) < low or (high is not None and len(sets) > high):
        expected = f"{low}" if low == high else f"at least {low}"
        raise click.UsageError(f"{operation} takes {expected} set(s), got {len(sets)}.")
    args = [HFSet.parse(text) for text in sets]

    match operation:
        case "tc":
            result: HFSet | int = transitive_closure(args[0])
        case "pow":
            result = power_set(args[0], limits)
        case "union":
            result = union(*args)
        case "inter":
            result = intersection(*args)
        case "diff":
            result = difference(*args)
        case "pair":
            result = pair(*args)
        case "prod":
            result = cartesian_product(*args)
        case "bigunion":
            result = big_union(args[0])
        case "reg":
            result = regularity_witness(args[0])
        case "rank":
            result = rank(args[0])
        case "choice":
            try:
                result = choice_set(args[0])
            except PreconditionViolated as e:
                witness = e.witness
                if isinstance(witness, tuple):
                    witness = ", ".join(str(member) for member in witness)
                click.echo(f"NO CHOICE SET: {e.reason}: {witness}")
                _exit(False)
        case "friendly":
            _emit_report(check_subset_friendly(args[0], limits))
        case _:
            raise AssertionError(operation)

    click.echo(str(result))


def main() -> None:
    cli(auto_envvar_prefix="MODELBENCH")
