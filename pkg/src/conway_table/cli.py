"""Command-line interface.

Expand factorizations, verify the families of the table, print the table,
evaluate Conway functions and run the identity suite::

    conway-table expand "row2(a1,1) M mat2(0,a2;a2,1) M col2(a3,1)"
    conway-table verify --all
    conway-table verify --all --as-printed
    conway-table table --format csv
    conway-table eval "row2(a1,1) M mat2(0,a2;a2,1) M col2(a3,1)" --assign a1=2,a2=3,a3=5
    conway-table eval "row2(1,a1) M col2(a2,1) = row2(a1,1) M col2(1,a2)" --ones
    conway-table identities

Exit codes: 0 success, 1 verification failure, 2 unreadable input,
3 dimension error, 4 unknown family id, 5 missing variable value.
"""

import functools
import json
import logging
import re
import sys
from pathlib import Path
from typing import Dict, Optional

import click

from .config import Settings
from .exceptions import (
    ConwayTableError,
    DimensionError,
    MissingVariableError,
    NotationError,
    UnknownFamilyError,
)
from .notation import IdentityAssertion, check_identity, expand, parse, vectors
from .polyring import all_ones
from .registry import FamilyRegistry, seed_counts, summary_frame, verify_all
from .tangle2 import generic_pair_commutes, run_identity_suite
from .tangle3 import canonical_key, classify_vectors

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_UNREADABLE = 2
EXIT_DIMENSION = 3
EXIT_UNKNOWN_ID = 4
EXIT_MISSING_VALUE = 5


def exit_code(err: ConwayTableError) -> int:
    """Exit code for a library error."""
    if isinstance(err, DimensionError):
        return EXIT_DIMENSION
    if isinstance(err, UnknownFamilyError):
        return EXIT_UNKNOWN_ID
    if isinstance(err, MissingVariableError):
        return EXIT_MISSING_VALUE
    return EXIT_UNREADABLE


def reports_errors(func):
    """Turn library errors into a message on standard error and an exit code."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except ConwayTableError as err:
            kind = "syntax error" if isinstance(err, NotationError) else "error"
            click.echo(f"{kind}: {err}", err=True)
            click.get_current_context().exit(exit_code(err))

    return wrapper


@click.group()
@click.option(
    "--registry",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    default=None,
    help="Registry document to use instead of the shipped one.",
)
@click.option("-v", "--verbose", count=True, help="Log progress (-v) or details (-vv).")
@click.pass_context
def cli(ctx: click.Context, registry: Optional[Path], verbose: int):
    """Conway functions of the families of alternating knots."""
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbose, logging.DEBUG)
    logging.basicConfig(
        level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s"
    )
    try:
        settings = Settings.from_env()
    except ValueError as err:
        raise click.UsageError(str(err)) from err
    if registry is not None:
        settings.registry_path = registry
    ctx.obj = settings


@cli.command(name="expand")
@click.argument("expression")
@reports_errors
def expand_command(expression: str):
    """Print the canonical polynomial of EXPRESSION and its term count."""
    node = parse(expression)
    if isinstance(node, IdentityAssertion):
        check = check_identity(node)
        canonical = check.branches[0]
        click.echo(f"{canonical} ({canonical.term_count()} terms)")
        if not check.agree:
            for index, difference in check.differences:
                click.echo(f"branch {index + 1} differs by {difference}", err=True)
            click.get_current_context().exit(EXIT_FAILED)
        return
    canonical = expand(node)
    click.echo(f"{canonical} ({canonical.term_count()} terms)")


@cli.command()
@click.option("--all", "select_all", is_flag=True, help="Verify every family.")
@click.option("--id", "ids", multiple=True, help="Verify one family; may be repeated.")
@click.option("--as-printed", is_flag=True, help="Verify the texts exactly as published.")
@click.option("--oracle-trials", type=click.IntRange(min=0), default=None,
              help="Random points for the independent oracle (0 disables it).")
@click.option("--seed", type=int, default=None, help="Seed of the oracle points.")
@click.option("--jobs", type=click.IntRange(min=1), default=None, help="Worker threads.")
@click.option("--report", type=click.Path(dir_okay=False, path_type=Path), default=None,
              help="Write the machine-readable report to this JSON file.")
@click.pass_obj
@reports_errors
def verify(
    settings: Settings,
    select_all: bool,
    ids,
    as_printed: bool,
    oracle_trials: Optional[int],
    seed: Optional[int],
    jobs: Optional[int],
    report: Optional[Path],
):
    """Verify families of the table; exit 0 iff all of them pass."""
    if not select_all and not ids:
        raise click.UsageError("Give --all or at least one --id.")
    registry = FamilyRegistry.load(settings.registry_path)
    records = list(registry) if select_all else [registry.get(i) for i in ids]
    reports = verify_all(
        records,
        jobs=jobs or settings.jobs,
        as_printed=as_printed,
        oracle_trials=settings.oracle_trials if oracle_trials is None else oracle_trials,
        seed=settings.seed if seed is None else seed,
    )

    for record, result in zip(records, reports):
        status = "OK" if result.passed else "FAIL"
        note = ""
        if record.expected_terms is not None:
            expected = record.expected_terms
            if result.expected_match and expected.provenance == "paper":
                note = " (matches paper)"
            elif result.expected_match is False:
                note = f" (expected {expected.value})"
        click.echo(f"{record.id:<18} {status:<4} {result.seed_count} terms{note}")
        if not result.passed:
            for problem in result.problems:
                click.echo(f"    {problem}")
            for mismatch in result.mismatches:
                click.echo(f"    branch differs by {mismatch}")
            for label, value in (
                ("multilinear", result.multilinear_unit),
                ("chain", result.chain_agree),
                ("oracle", result.oracle_agree),
                ("printed function", result.printed_match),
            ):
                if value is False:
                    click.echo(f"    {label} check failed")
            if result.seed_value is not None and result.seed_value != result.seed_count:
                click.echo(f"    seed value {result.seed_value} differs from term count")

    passed = sum(r.passed for r in reports)
    click.echo(f"{passed}/{len(reports)} OK")
    if select_all:
        for label, counts in seed_counts(records, reports).items():
            if len(counts) > 1:
                click.echo(f"seed {label} has differing Conway numbers {counts}")

    if report is not None:
        document = {
            "registry": str(settings.registry_path),
            "as_printed": as_printed,
            "passed": passed,
            "total": len(reports),
            "families": [r.to_dict() for r in reports],
        }
        report.write_text(json.dumps(document, indent=2) + "\n", encoding="utf-8")
        logger.info("wrote report to %s", report)

    if passed != len(reports):
        click.get_current_context().exit(EXIT_FAILED)


@cli.command()
@click.option("--format", "fmt", type=click.Choice(["markdown", "csv"]), default="markdown",
              show_default=True)
@click.pass_obj
@reports_errors
def table(settings: Settings, fmt: str):
    """Print one row per family: id, seed, conways, Conway number, factorizations."""
    registry = FamilyRegistry.load(settings.registry_path)
    records = list(registry)
    frame = summary_frame(records, verify_all(records, jobs=settings.jobs))
    if fmt == "csv":
        click.echo(frame.to_csv(index=False, lineterminator="\n"), nl=False)
    else:
        click.echo(frame.to_markdown(index=False))


@cli.command()
@click.option("--trials", type=click.IntRange(min=0), default=100, show_default=True,
              help="Random instantiations per identity.")
@click.option("--seed", type=int, default=None)
@click.pass_obj
def identities(settings: Settings, trials: int, seed: Optional[int]):
    """Check the commutation, closed-form and boundary identities."""
    results = run_identity_suite(trials, settings.seed if seed is None else seed)
    for result in results:
        status = "OK" if result.holds else "FAIL"
        click.echo(
            f"{result.name:<20} {status:<4} symbolic={'yes' if result.symbolic else 'no'} "
            f"random={result.random_passed}/{result.trials}"
        )
    generic = generic_pair_commutes()
    click.echo(f"{'generic-pair':<20} {'FAIL' if generic else 'OK':<4} commutes={'yes' if generic else 'no'}")
    if generic or not all(r.holds for r in results):
        click.get_current_context().exit(EXIT_FAILED)


def _parse_assignment(text: str) -> Dict[int, int]:
    assignment = {}
    for item in filter(None, (part.strip() for part in text.split(","))):
        match = re.fullmatch(r"a([1-9][0-9]*)\s*=\s*(-?[0-9]+)", item)
        if match is None:
            raise click.BadParameter(f"expected aN=value, got '{item}'", param_hint="--assign")
        assignment[int(match.group(1))] = int(match.group(2))
    return assignment


@cli.command(name="eval")
@click.argument("expression")
@click.option("--assign", default="", help="Values such as a1=2,a2=3.")
@click.option("--ones", is_flag=True, help="Set every variable to 1 (the seed).")
@reports_errors
def eval_command(expression: str, assign: str, ones: bool):
    """Evaluate EXPRESSION exactly at an integer assignment.

    An asserted equality is checked first and its common value is printed.
    """
    assignment = _parse_assignment(assign)
    node = parse(expression)
    if isinstance(node, IdentityAssertion):
        check = check_identity(node)
        if not check.agree:
            for index, difference in check.differences:
                click.echo(f"branch {index + 1} differs by {difference}", err=True)
            click.get_current_context().exit(EXIT_FAILED)
        polynomial = check.branches[0]
    else:
        polynomial = expand(node)
    if ones:
        assignment = {**all_ones(polynomial), **assignment}
    click.echo(str(polynomial.evaluate(assignment)))


@cli.command(name="vectors")
@click.pass_obj
@reports_errors
def vectors_command(settings: Settings):
    """Group the 3-tangle vectors of the table under renaming of variables."""
    registry = FamilyRegistry.load(settings.registry_path)
    found = [
        v
        for record in registry
        for text in record.expressions
        for v in vectors(parse(text))
        if v.dim == 5
    ]
    classes = classify_vectors(found)
    click.echo(f"{len(found)} five-component vectors in {len(classes)} classes")
    for members in classes:
        key = canonical_key(members[0])
        click.echo(f"  {len(members):>3} x ({', '.join(key)})")


def main():
    """Entry point of the ``conway-table`` console script."""
    cli(prog_name="conway-table")


if __name__ == "__main__":
    main()
