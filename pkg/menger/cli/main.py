"""Main CLI entrypoint for the Menger toolkit.

Exit codes: 0 when everything checked holds, 1 on a violation, 2 on
unreadable or inconsistent input, 3 when a closure cap is exceeded.
"""

from __future__ import annotations

import json
import logging
import sys
from collections.abc import Callable, Iterator, Sequence
from contextlib import contextmanager
from pathlib import Path
from typing import NoReturn, cast

import click
from rich.console import Console
from rich.logging import RichHandler
from rich.markup import escape
from rich.table import Table

from menger import __version__
from menger.config import TieBreak, get_config
from menger.errors import (
    AxiomViolation,
    ClosureCapExceeded,
    FaithfulnessFailure,
    FileFormatError,
    IndexOutOfRange,
    NotClosed,
    ShapeMismatch,
    TranslationMismatch,
    format_tuple,
)
from menger.files import (
    dump_algebra,
    dump_function_set,
    dump_representation,
    load_algebra,
    load_function_set,
    load_representation,
)
from menger.kernel import (
    CheckReport,
    FiniteMengerAlgebra,
    SubtractionMengerAlgebra,
    check_compat_axioms,
    check_derived_identities,
    check_omega_order,
    check_prop4_equivalences,
    check_subtraction_axioms,
    check_superassociativity,
)
from menger.order import build_order, check_join_identities, check_join_wellposed, check_meet_laws
from menger.pfunc import (
    FunctionAlgebra,
    all_partial_functions,
    close,
    make_abstract,
    random_closed_algebra,
)
from menger.reprs import theorem2_pipeline, verify_representation
from menger.terms import TranslationSet, oracle_depth, translations, translations_by_depth

console = Console()
logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2
EXIT_CAP = 3

AXIOM_GROUPS = ("menger", "subtraction", "compat", "derived", "order")


def setup_logging() -> None:
    """Configure logging with rich output."""
    config = get_config()

    handlers: list[logging.Handler] = [RichHandler(console=console, rich_tracebacks=True)]
    if config.logging.file is not None:
        handlers.append(logging.FileHandler(config.logging.file))
    logging.basicConfig(
        level=getattr(logging, config.logging.level),
        format=config.logging.format,
        handlers=handlers,
    )


def fail(message: str, code: int) -> NoReturn:
    console.print(f"[red]Error:[/] {escape(message)}")
    sys.exit(code)


@contextmanager
def exit_codes() -> Iterator[None]:
    """Map toolkit errors onto the documented exit codes."""
    try:
        yield
    except ClosureCapExceeded as exc:
        fail(str(exc), EXIT_CAP)
    except (FileFormatError, ShapeMismatch, IndexOutOfRange, TranslationMismatch) as exc:
        fail(str(exc), EXIT_INPUT)


def require_subtraction(
    algebra: FiniteMengerAlgebra | SubtractionMengerAlgebra, path: Path
) -> SubtractionMengerAlgebra:
    if not isinstance(algebra, SubtractionMengerAlgebra):
        fail(f"{path}: no subtraction table", EXIT_INPUT)
    return algebra


def print_report(report: CheckReport, labels: Sequence[str], title: str) -> None:
    table = Table(title=title)
    table.add_column("Axiom", style="cyan")
    table.add_column("Violations", justify="right")
    table.add_column("Status")
    for axiom in report.axioms:
        count = report.violations[axiom]
        status = "[red]✗ fails[/]" if count else "[green]✓ holds[/]"
        table.add_row(axiom, str(count), status)
    for name, truth in report.evaluations.items():
        table.add_row(name, "-", "[green]true[/]" if truth else "[yellow]false[/]")
    console.print(table)

    if report.witnesses:
        console.print("\n[bold]Witnesses[/] (element indices):")
        for witness in report.witnesses:
            console.print(f"  {witness.axiom}: {format_tuple(witness.substitution)}")
        legend = ", ".join(f"{k}={label}" for k, label in enumerate(labels))
        console.print(f"  [dim]carrier: {escape(legend)}[/]")
    console.print(f"\nChecked {report.checked_count} substitutions.")


def emit_json(payload: dict[str, object]) -> None:
    click.echo(json.dumps(payload, indent=2))


@click.group()
@click.version_option(version=__version__, prog_name="menger")
@click.option("-v", "--verbose", is_flag=True, help="Enable verbose output")
@click.pass_context
def cli(ctx: click.Context, verbose: bool) -> None:
    """Menger toolkit.

    Check finite subtraction Menger algebras against their axioms and
    represent them by partial n-place functions.
    """
    ctx.ensure_object(dict)
    ctx.obj["verbose"] = verbose

    if verbose:
        get_config().logging.level = "DEBUG"

    setup_logging()


def _group_reports(
    algebra: FiniteMengerAlgebra | SubtractionMengerAlgebra,
    groups: Sequence[str],
    path: Path,
    max_witnesses: int | None,
) -> CheckReport:
    menger = algebra.menger if isinstance(algebra, SubtractionMengerAlgebra) else algebra
    cached: list[TranslationSet] = []

    def translation_set() -> TranslationSet:
        if not cached:
            cached.append(translations(menger))
        return cached[0]

    def order_checks(S: SubtractionMengerAlgebra) -> CheckReport:
        omega = check_omega_order(S, max_witnesses=max_witnesses)
        if not omega.holds:
            return omega
        O = build_order(S)
        return CheckReport.merge(
            [
                omega,
                check_meet_laws(O, max_witnesses=max_witnesses),
                check_join_wellposed(O, max_witnesses=max_witnesses),
                check_join_identities(O, translation_set(), max_witnesses=max_witnesses),
            ]
        )

    runners: dict[str, Callable[[SubtractionMengerAlgebra], CheckReport]] = {
        "subtraction": lambda S: check_subtraction_axioms(S, max_witnesses=max_witnesses),
        "compat": lambda S: check_compat_axioms(S, translation_set(), max_witnesses=max_witnesses),
        "derived": lambda S: CheckReport.merge(
            [
                check_derived_identities(S, translation_set(), max_witnesses=max_witnesses),
                check_prop4_equivalences(S, translation_set(), max_witnesses=max_witnesses),
            ]
        ),
        "order": order_checks,
    }
    reports = []
    for group in groups:
        if group == "menger":
            reports.append(check_superassociativity(menger, max_witnesses=max_witnesses))
        else:
            reports.append(runners[group](require_subtraction(algebra, path)))
    return CheckReport.merge(reports)


@cli.command()
@click.argument("path", type=click.Path(path_type=Path))
@click.option(
    "--axioms",
    type=click.Choice(["all", *AXIOM_GROUPS]),
    default="all",
    show_default=True,
    help="Which axiom group to check",
)
@click.option(
    "--max-witnesses",
    type=click.IntRange(min=0),
    default=None,
    help="Witnesses kept per axiom (default: from config)",
)
@click.option("--json", "output_json", is_flag=True, help="Output the report as JSON")
def check(path: Path, axioms: str, max_witnesses: int | None, output_json: bool) -> None:
    """Check the algebra in PATH against its axioms."""
    with exit_codes():
        algebra = load_algebra(path)
        if axioms == "all":
            groups: Sequence[str] = (
                AXIOM_GROUPS
                if isinstance(algebra, SubtractionMengerAlgebra)
                else ("menger",)
            )
        else:
            groups = (axioms,)
        logger.debug("checking %s: %s", path, ", ".join(groups))
        report = _group_reports(algebra, groups, path, max_witnesses)

    if output_json:
        emit_json({"carrier": list(algebra.labels), **report.to_dict()})
    else:
        print_report(report, algebra.labels, f"{path} ({', '.join(groups)})")
    sys.exit(EXIT_OK if report.holds else EXIT_VIOLATION)


@cli.command()
@click.argument("path", type=click.Path(path_type=Path))
@click.option(
    "--out", "out_path", type=click.Path(path_type=Path), default=None, help="Representation file"
)
@click.option(
    "--tiebreak",
    type=click.Choice(["least", "greatest"]),
    default=None,
    help="Minimal filter generator to prefer (default: from config)",
)
def represent(path: Path, out_path: Path | None, tiebreak: str | None) -> None:
    """Build and verify a faithful representation of the algebra in PATH."""
    with exit_codes():
        S = require_subtraction(load_algebra(path), path)
        try:
            R = theorem2_pipeline(S, cast(TieBreak | None, tiebreak))
        except AxiomViolation as exc:
            fail(f"{path}: {exc}", EXIT_VIOLATION)
        except FaithfulnessFailure as exc:
            x, y = exc.pair
            fail(f"representation identifies {S.labels[x]} and {S.labels[y]}", EXIT_VIOLATION)
        if out_path is not None:
            dump_representation(R, out_path)

    console.print(
        f"[green]✓[/] {len(R.provenance)} pairs, base size [cyan]{R.base_size}[/]"
        if R.verified
        else f"[red]✗[/] {len(R.provenance)} pairs, base size {R.base_size}"
    )
    if out_path is not None:
        console.print(f"Wrote [cyan]{out_path}[/]")
    if not R.verified:
        assert R.report is not None
        print_report(R.report, S.labels, "representation")
        sys.exit(EXIT_VIOLATION)


@cli.command()
@click.argument("algebra_path", type=click.Path(path_type=Path))
@click.argument("rep_path", type=click.Path(path_type=Path))
@click.option(
    "--max-witnesses",
    type=click.IntRange(min=0),
    default=None,
    help="Witnesses kept per axiom (default: from config)",
)
def verify(algebra_path: Path, rep_path: Path, max_witnesses: int | None) -> None:
    """Verify the representation in REP_PATH against the algebra in ALGEBRA_PATH."""
    with exit_codes():
        S = require_subtraction(load_algebra(algebra_path), algebra_path)
        R = load_representation(rep_path, S)
        report = verify_representation(S, R, max_witnesses=max_witnesses)

    print_report(report, S.labels, f"{rep_path}")
    sys.exit(EXIT_OK if report.holds else EXIT_VIOLATION)


@cli.command("translations")
@click.argument("path", type=click.Path(path_type=Path))
@click.option(
    "--depth-oracle",
    type=click.IntRange(min=1),
    default=None,
    help="Cross-check against term enumeration up to this depth (at least 1)",
)
@click.option("--limit", type=click.IntRange(min=0), default=20, show_default=True)
def translations_cmd(path: Path, depth_oracle: int | None, limit: int) -> None:
    """List the translation maps of the algebra in PATH."""
    with exit_codes():
        algebra = load_algebra(path)
        menger = algebra.menger if isinstance(algebra, SubtractionMengerAlgebra) else algebra
        T = translations(menger)

    console.print(f"Translation set size: [cyan]{len(T)}[/]")
    labels = menger.labels
    for k in range(min(limit, len(T))):
        image = format_tuple([labels[v] for v in T.functions[k]])
        console.print(f"  {escape(image)}  [dim]{escape(str(T.generator_witness(k)))}[/]")
    if len(T) > limit:
        console.print(f"  [dim]... {len(T) - limit} more[/]")

    if depth_oracle is not None:
        depth = oracle_depth(menger, depth_oracle)
        if depth is None:
            fail(f"term maps still growing at depth {depth_oracle}", EXIT_VIOLATION)
        if translations_by_depth(menger, depth) != T.as_set():
            fail(f"closure and term enumeration disagree at depth {depth}", EXIT_VIOLATION)
        console.print(f"[green]✓[/] agrees with term enumeration (converged at depth {depth})")


# === Function sets ===


@cli.group("pfunc")
def pfunc_group() -> None:
    """Generate difference-closed sets of partial n-place functions."""


def _write_function_set(F: FunctionAlgebra, out_path: Path | None, abstract_path: Path | None) -> None:
    console.print(f"Family size: {len(F)} (base {F.base_size}, rank {F.rank})")
    if out_path is not None:
        dump_function_set(F, out_path)
        console.print(f"Wrote [cyan]{out_path}[/]")
    if abstract_path is not None:
        try:
            dump_algebra(make_abstract(F), abstract_path)
        except NotClosed as exc:
            fail(str(exc), EXIT_VIOLATION)
        console.print(f"Wrote [cyan]{abstract_path}[/]")


def _output_options(command: Callable[..., None]) -> Callable[..., None]:
    command = click.option(
        "--abstract",
        "abstract_path",
        type=click.Path(path_type=Path),
        default=None,
        help="Also write the operation tables as an algebra file",
    )(command)
    command = click.option(
        "--out", "out_path", type=click.Path(path_type=Path), default=None, help="Function set file"
    )(command)
    command = click.option(
        "--cap",
        type=click.IntRange(min=1),
        default=None,
        help="Closure size limit (default: from config)",
    )(command)
    return command


@pfunc_group.command("close")
@click.option(
    "--generators",
    "generators_path",
    type=click.Path(path_type=Path),
    required=True,
    help="Function set file with the generators",
)
@_output_options
def pfunc_close(
    generators_path: Path, cap: int | None, out_path: Path | None, abstract_path: Path | None
) -> None:
    """Close a generator file under superposition and difference."""
    with exit_codes():
        generators = load_function_set(generators_path)
        F = close(
            list(generators),
            cap,
            base_size=generators.base_size,
            rank=generators.rank,
            names=generators.names,
        )
        _write_function_set(F, out_path, abstract_path)


@pfunc_group.command("all")
@click.option("--base-size", type=click.IntRange(min=0), required=True)
@click.option("--rank", type=click.IntRange(min=1), default=1, show_default=True)
@_output_options
def pfunc_all(
    base_size: int, rank: int, cap: int | None, out_path: Path | None, abstract_path: Path | None
) -> None:
    """Every partial function on the base."""
    with exit_codes():
        F = all_partial_functions(base_size, rank, cap)
        _write_function_set(F, out_path, abstract_path)


@pfunc_group.command("random")
@click.option("--base-size", type=click.IntRange(min=0), required=True)
@click.option("--rank", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option(
    "--count",
    type=click.IntRange(min=0),
    default=None,
    help="Number of random generators (default: from config)",
)
@_output_options
def pfunc_random(
    base_size: int,
    rank: int,
    seed: int,
    count: int | None,
    cap: int | None,
    out_path: Path | None,
    abstract_path: Path | None,
) -> None:
    """Close randomly drawn partial functions."""
    with exit_codes():
        F = random_closed_algebra(base_size, rank, count, seed=seed, cap=cap)
        _write_function_set(F, out_path, abstract_path)


if __name__ == "__main__":
    cli()
