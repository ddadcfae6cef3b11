"""
oddcon command line.

Usage:
    oddcon verify smink44 --suite bianchi
    oddcon verify model.odd --suite all --seed 7 --trials 50 --format machine
    oddcon components susy-r11 --object torsion
    oddcon catalog list
    oddcon catalog show smink44

TARGET is a path to a model file or the name of a catalog entry.
Exit status: 0 when every check passes, 1 when one fails, 2 on bad input.
"""

import sys
import time
from typing import Optional

import click
from rich.console import Console
from rich.markup import escape
from rich.panel import Panel
from rich.table import Table

from oddcon import __version__
from oddcon.catalog.entries import LISTED, lookup
from oddcon.catalog.frames import Parallelisation
from oddcon.cli.model import model_from_entry, serialize_model
from oddcon.cli.suites import (
    CURVATURE_TRIALS,
    FAIL,
    NOTE,
    OBJECTS,
    PASS,
    SUITE_NAMES,
    SUITES,
    Target,
    component_table,
    print_outcome,
    resolve_target,
    run_suite,
)
from oddcon.errors import OddconError

console = Console()
err_console = Console(stderr=True)

DEFAULT_SEED = 0
DEFAULT_TRIALS = 32
DEFAULT_SUITE = "all"
DEFAULT_FORMAT = "text"

INPUT_ERROR = 2


def _input_error(err: Exception) -> None:
    err_console.print(f"[red]✗[/] {escape(str(err))}", highlight=False)
    sys.exit(INPUT_ERROR)


def _load(name: str) -> Target:
    try:
        return resolve_target(name)
    except (OddconError, OSError, UnicodeDecodeError) as err:
        _input_error(err)


@click.group()
@click.version_option(__version__, prog_name="oddcon")
def main() -> None:
    """Exact checks and component reports for odd quasi-connections."""


@main.command()
@click.argument("target")
@click.option(
    "--suite",
    type=click.Choice(SUITE_NAMES),
    default=DEFAULT_SUITE,
    show_default=True,
    help="Suite to run; 'all' runs every suite in order.",
)
@click.option(
    "--seed",
    type=int,
    default=DEFAULT_SEED,
    envvar="ODDCON_SEED",
    show_default=True,
    help="Seed for the sampled fields and functions.",
)
@click.option(
    "--trials",
    type=click.IntRange(min=1),
    default=DEFAULT_TRIALS,
    envvar="ODDCON_TRIALS",
    show_default=True,
    help=f"Samples per check; curvature checks use at most {CURVATURE_TRIALS}.",
)
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["text", "machine"]),
    default=DEFAULT_FORMAT,
    show_default=True,
    help="'machine' prints only a sorted-key JSON report.",
)
def verify(target: str, suite: str, seed: int, trials: int, fmt: str) -> None:
    """Run a verification suite against TARGET."""
    start_time = time.time()
    loaded = _load(target)

    if fmt == "machine":
        try:
            report = run_suite(loaded, suite, seed, trials)
        except OddconError as err:
            _input_error(err)
        click.echo(report.to_machine())
        sys.exit(report.exit_code)

    console.print(
        Panel(
            f"[bold]oddcon verify[/]: {loaded.name} on {loaded.chart}",
            style="blue",
        ),
        highlight=False,
    )
    console.print(f"[dim]suite {suite}, seed {seed}, {trials} trials per check[/]\n")
    try:
        report = run_suite(loaded, suite, seed, trials, on_check=print_outcome)
    except OddconError as err:
        _input_error(err)
    report.elapsed = time.time() - start_time

    table = Table(title="Summary")
    table.add_column("Suite", style="cyan")
    table.add_column("Pass", style="green", justify="right")
    table.add_column("Fail", style="red", justify="right")
    table.add_column("Note", style="yellow", justify="right")
    for name, (title, _) in SUITES.items():
        checks = [check for check in report.checks if check.suite == name]
        if not checks:
            continue
        counts = [sum(check.status == status for check in checks) for status in (PASS, FAIL, NOTE)]
        table.add_row(f"{name} ({title})", *(str(count) for count in counts))

    console.print()
    console.print(table)
    verdict = "[bold green]All checks passed[/]" if report.passed else "[bold red]Failures[/]"
    console.print(f"\n{verdict} in {report.elapsed:.1f}s")
    sys.exit(report.exit_code)


@main.command()
@click.argument("target")
@click.option(
    "--object",
    "obj",
    type=click.Choice(OBJECTS),
    default="torsion",
    show_default=True,
    help="Derived object to list.",
)
@click.option(
    "--frame",
    type=click.Choice(["coordinate", "model"]),
    default=None,
    help="Reporting basis. Defaults to the target's frame when it has one.",
)
def components(target: str, obj: str, frame: Optional[str]) -> None:
    """Print the components of a derived object of TARGET."""
    loaded = _load(target)
    if frame == "model" and loaded.frame is None:
        _input_error(OddconError(f"{target} has no frame; use --frame coordinate"))
    if frame == "coordinate" or loaded.frame is None:
        basis = Parallelisation.coordinate(loaded.chart)
    else:
        basis = loaded.frame

    try:
        data = component_table(loaded, obj, basis)
    except OddconError as err:
        _input_error(err)

    table = Table(title=f"{data.title} on {loaded.name}")
    for i, column in enumerate(data.columns):
        is_key = i < len(data.columns) - 1 and column not in ("value", "stated")
        table.add_column(column, style="cyan" if is_key else "green")
    for row in data.rows:
        table.add_row(*row)
    console.print(table, highlight=False)
    console.print(f"[dim]{data.vanishing} vanishing components not shown[/]")


@main.group()
def catalog() -> None:
    """Built-in odd connections."""


@catalog.command("list")
def catalog_list() -> None:
    """List the catalog entries."""
    table = Table(title="oddcon catalog")
    table.add_column("Name", style="cyan")
    table.add_column("Chart")
    table.add_column("Frame", style="green")
    table.add_column("Summary")
    for name in LISTED:
        entry = lookup(name)
        labels = ", ".join(entry.frame.labels) if entry.frame is not None else "-"
        table.add_row(name, str(entry.chart), labels, entry.summary)
    console.print(table, highlight=False)
    console.print(
        "\n[dim]Also accepted: canonical-rnn:<n> and weitzenbock:coordinate:<n> for any n >= 1.[/]"
    )


@catalog.command("show")
@click.argument("name")
def catalog_show(name: str) -> None:
    """Print the model file of catalog entry NAME."""
    try:
        entry = lookup(name)
    except OddconError as err:
        _input_error(err)
    click.echo(serialize_model(model_from_entry(entry)), nl=False)


if __name__ == "__main__":
    main()
