"""
Tree Energy Tool

Computes tree energies, decides T_a against T_b, reproduces the Table 1 bounds and runs the
verification suites. Results go to stdout; progress, panels and logs go to stderr.
"""

import csv
import io
import json
import math
from enum import Enum
from pathlib import Path
from typing import Any, Optional

import typer
from rich.console import Console
from rich.panel import Panel
from rich.progress import BarColumn, Progress, SpinnerColumn, TextColumn, TimeElapsedColumn
from rich.table import Table

from treeenergy import configure_logging
from treeenergy.comparator import (
    PARITY_INSTANCES,
    CrossCheckError,
    analytic_bounds,
    parity_threshold,
    proof_constant_checks,
    sweep_verdicts,
    table1,
)
from treeenergy.config import Config, InvalidConfigError, QuadratureConfig
from treeenergy.energy import EigenCapError, energy_of_tree
from treeenergy.events import (
    CaseCompletedEvent,
    CompletionEvent,
    ErrorEvent,
    EventType,
    SuiteEventType,
    SuiteProgressEvent,
    SuiteStartedEvent,
)
from treeenergy.loader import EdgeListError, EdgeListLoadError, load_edgelist
from treeenergy.models import EnergyMethod, EnergyResult, SuiteReport, Verdict
from treeenergy.trees import (
    STRATEGIES,
    EnumerationCapError,
    FamilyParams,
    FamilyParamsError,
    InfeasibleTreeError,
    InvalidTreeError,
    Tree,
    build_path,
    build_Ta,
    build_Tb,
    build_Tc,
    enumerate_constrained_trees,
    enumerate_trees,
    family_order,
)
from treeenergy.utils import format_float, ordered_map, round_floats
from treeenergy.verify import SUITE_NAMES, UnknownSuiteError, run_suite_stream

configure_logging(level="ERROR", enable_dev_logging=False)


class OutputFormat(str, Enum):
    PLAIN = "plain"
    CSV = "csv"
    JSON = "json"


class FamilyChoice(str, Enum):
    TA = "ta"
    TB = "tb"
    TC = "tc"


class MethodChoice(str, Enum):
    COULSON = "coulson"
    EIGEN = "eigen"
    BOTH = "both"


class CommandError(Exception):
    """Custom exception for failures reported through a suite event stream."""

    def __init__(self, error_type: str, message: str):
        self.error_type = error_type
        super().__init__(f"{error_type}: {message}")


class ProgressManager:
    """Manages Rich progress bars while a suite runs."""

    def __init__(self, console: Console, quiet: bool = False):
        self.console = console
        self.quiet = quiet
        self.progress: Optional[Progress] = None
        self.suite_task: Any = None

    def __enter__(self) -> "ProgressManager":
        if not self.quiet:
            self.progress = Progress(
                SpinnerColumn(),
                TextColumn("[progress.description]{task.description}"),
                BarColumn(),
                TextColumn("[progress.percentage]{task.percentage:>3.0f}%"),
                TimeElapsedColumn(),
                console=self.console,
            )
            self.progress.__enter__()
            self.suite_task = self.progress.add_task("Preparing suite...", total=None)
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        if self.progress:
            self.progress.__exit__(exc_type, exc_val, exc_tb)

    def update_started(self, event: SuiteStartedEvent) -> None:
        if self.progress:
            self.progress.update(self.suite_task, description=event.message, total=event.data["total_cases"])

    def update_progress(self, event: SuiteProgressEvent) -> None:
        if self.progress:
            failures = event.data["failures"]
            description = event.message if not failures else f"{event.message} ([red]{failures} failed[/red])"
            self.progress.update(self.suite_task, completed=event.data["current_case"], description=description)

    def report_case(self, event: CaseCompletedEvent) -> None:
        if not self.quiet and not event.data["passed"]:
            self.console.print(
                f"  [red]FAIL[/red] {event.data['case_id']}: expected {event.data.get('expected')},"
                f" got {event.data.get('got')}"
            )

    def update_completion(self, event: CompletionEvent) -> None:
        if self.progress:
            self.progress.update(self.suite_task, description=event.message)

    def handle_error(self, event: ErrorEvent) -> None:
        if self.progress:
            self.progress.update(self.suite_task, description=f"[red]{event.message}[/red]")
        self.console.print(f"[red]Error: {event.message}[/red]")
        if event.data.get("error_details"):
            self.console.print(f"[red]   Details: {event.data['error_details']}[/red]")


class SuiteEventProcessor:
    """Drives a suite stream and routes its events to the progress display."""

    def __init__(self, console: Console, quiet: bool = False):
        self.console = console
        self.quiet = quiet

    def process_stream(self, name: str, config: Config, workers: int, max_order: Optional[int]) -> SuiteReport:
        progress_manager = ProgressManager(self.console, self.quiet)
        stream = run_suite_stream(name, config, workers, max_order)

        with progress_manager:
            while True:
                try:
                    event = next(stream)
                except StopIteration as e:
                    report = e.value if e.value is not None else SuiteReport(name)
                    break

                self._dispatch_event(event, progress_manager)

        return report

    def _dispatch_event(self, event: SuiteEventType, progress_manager: ProgressManager) -> None:
        if event.type == EventType.SUITE_STARTED:
            progress_manager.update_started(event)

        elif event.type == EventType.SUITE_PROGRESS:
            progress_manager.update_progress(event)

        elif event.type == EventType.CASE_COMPLETED:
            progress_manager.report_case(event)

        elif event.type == EventType.COMPLETION:
            progress_manager.update_completion(event)

        elif event.type == EventType.ERROR:
            progress_manager.handle_error(event)
            raise CommandError(event.data["error_type"], event.message)


console = Console(stderr=True)
app = typer.Typer(
    name="treeenergy",
    help="Energies of trees with two maximum-degree vertices",
    add_completion=False,
    rich_markup_mode="rich",
)


@app.callback()
def main_callback(
    ctx: typer.Context,
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Debug logging with the console renderer"),
    quiet: bool = typer.Option(False, "--quiet", "-q", help="Suppress progress and panels"),
) -> None:
    if verbose:
        configure_logging(level="DEBUG", enable_dev_logging=True)
    ctx.obj = {"quiet": quiet}


def _quiet(ctx: typer.Context) -> bool:
    return bool((ctx.obj or {}).get("quiet", False))


def _exit_with_error() -> None:
    """Exit with error code 1."""
    raise typer.Exit(1)


def parse_range(text: str, param_hint: str) -> range:
    """'A:B' or 'A:B:step', both ends inclusive."""
    parts = text.split(":")
    try:
        numbers = [int(part) for part in parts]
    except ValueError as e:
        raise typer.BadParameter(f"expected A:B[:step], got {text!r}", param_hint=param_hint) from e
    if len(numbers) not in (2, 3) or (len(numbers) == 3 and numbers[2] < 1) or numbers[1] < numbers[0]:
        raise typer.BadParameter(f"expected A:B[:step] with A <= B and step >= 1, got {text!r}", param_hint=param_hint)
    step = numbers[2] if len(numbers) == 3 else 1
    return range(numbers[0], numbers[1] + 1, step)


def _quadrature_config(tol: Optional[float]) -> QuadratureConfig:
    try:
        return QuadratureConfig.from_env(abs_tol=tol) if tol is not None else QuadratureConfig.from_env()
    except InvalidConfigError as e:
        raise typer.BadParameter(str(e), param_hint="--tol") from e


def _emit_json(payload: Any) -> None:
    typer.echo(json.dumps(round_floats(payload), indent=2, sort_keys=True))


def _emit_csv(rows: list[dict[str, str]], fieldnames: list[str]) -> None:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=fieldnames, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    typer.echo(buffer.getvalue(), nl=False)


def _edges_text(tree: Tree) -> str:
    return " ".join(f"{u}-{v}" for u, v in tree.edges)


def _select_tree(
    family: Optional[FamilyChoice],
    delta: Optional[int],
    t: Optional[int],
    n: Optional[int],
    path: Optional[int],
    edgelist: Optional[Path],
) -> Tree:
    options = (("--family", family), ("--path", path), ("--edgelist", edgelist))
    chosen = [name for name, value in options if value is not None]
    if len(chosen) != 1:
        raise typer.BadParameter("choose exactly one of --family, --path, --edgelist")

    try:
        if edgelist is not None:
            return load_edgelist(edgelist)
        if path is not None:
            return build_path(path)
        if delta is None:
            raise typer.BadParameter("--family needs --delta", param_hint="--delta")
        if family is FamilyChoice.TC:
            if n is None and t is None:
                raise typer.BadParameter("--family tc needs --n or --t", param_hint="--n")
            return build_Tc(delta, n if n is not None else family_order(delta, t or 0))
        if t is None:
            raise typer.BadParameter(f"--family {family.value} needs --t", param_hint="--t")
        params = FamilyParams(delta, t)
        return build_Ta(params) if family is FamilyChoice.TA else build_Tb(params)
    except (EdgeListError, EdgeListLoadError) as e:
        raise typer.BadParameter(str(e), param_hint="--edgelist") from e
    except (FamilyParamsError, InfeasibleTreeError) as e:
        raise typer.BadParameter(str(e)) from e


@app.command()
def energy(
    ctx: typer.Context,
    family: Optional[FamilyChoice] = typer.Option(None, "--family", help="Family member ta, tb or tc"),
    delta: Optional[int] = typer.Option(None, "--delta", "-d", help="Maximum degree"),
    t: Optional[int] = typer.Option(None, "--t", help="Spine parameter, n = 4*delta - 4 + t"),
    n: Optional[int] = typer.Option(None, "--n", help="Order of a T_c tree"),
    path: Optional[int] = typer.Option(None, "--path", help="Path on N vertices"),
    edgelist: Optional[Path] = typer.Option(None, "--edgelist", help="Edge-list file, one 'u v' per line"),  # noqa: B008
    method: MethodChoice = typer.Option(MethodChoice.BOTH, "--method", "-m", help="coulson, eigen or both"),
    tol: Optional[float] = typer.Option(None, "--tol", help="Absolute quadrature tolerance (overrides ENERGY_TOL)"),
    output_format: OutputFormat = typer.Option(OutputFormat.PLAIN, "--format", "-f", help="plain, csv or json"),
) -> None:
    """Energy of one tree by the Coulson integral, the eigenvalue sum, or both."""
    tree = _select_tree(family, delta, t, n, path, edgelist)
    cfg = _quadrature_config(tol)
    config = Config(quadrature=cfg)
    if method is MethodChoice.BOTH:
        methods = [EnergyMethod.COULSON, EnergyMethod.EIGEN]
    else:
        methods = [EnergyMethod(method.value)]

    try:
        results: list[EnergyResult] = [energy_of_tree(tree, m, cfg, config.eigen_cap) for m in methods]
    except EigenCapError as e:
        console.print(f"[red]Error: {e}[/red]")
        raise typer.Exit(1) from e
    except Exception as e:
        console.print(f"[red]Error computing energy: {e}[/red]")
        if not _quiet(ctx):
            console.print_exception()
        raise typer.Exit(1) from e

    difference = abs(results[0].value - results[1].value) if len(results) == 2 else None

    if output_format is OutputFormat.JSON:
        payload: dict[str, Any] = {
            "tree": {"n": tree.vertex_count, "edges": [list(edge) for edge in tree.edges]},
            "results": [result.to_dict() for result in results],
        }
        if difference is not None:
            payload["delta"] = difference
        _emit_json(payload)
    elif output_format is OutputFormat.CSV:
        rows = [
            {
                "method": r.method.value,
                "value": format_float(r.value),
                "abs_error_estimate": format_float(r.abs_error_estimate),
                "evaluations": str(r.evaluations),
            }
            for r in results
        ]
        _emit_csv(rows, ["method", "value", "abs_error_estimate", "evaluations"])
    else:
        typer.echo(f"n={tree.vertex_count}")
        for r in results:
            typer.echo(f"{r.method.value}: {format_float(r.value)} (error {format_float(r.abs_error_estimate)})")
        if difference is not None:
            typer.echo(f"delta: {format_float(difference)}")


@app.command()
def compare(
    ctx: typer.Context,
    delta: int = typer.Option(..., "--delta", "-d", help="Maximum degree, at least 3"),
    t: Optional[int] = typer.Option(None, "--t", help="Spine parameter, at least 3"),
    t_range: Optional[str] = typer.Option(None, "--t-range", help="A:B[:step], inclusive"),
    workers: int = typer.Option(1, "--workers", "-w", help="Worker processes for range sweeps", min=1),
    cross_check: bool = typer.Option(True, "--cross-check/--no-cross-check", help="Check against direct energies"),
    tol: Optional[float] = typer.Option(None, "--tol", help="Absolute quadrature tolerance (overrides ENERGY_TOL)"),
    output_format: OutputFormat = typer.Option(OutputFormat.PLAIN, "--format", "-f", help="plain, csv or json"),
) -> None:
    """Which of T_a(delta, t) and T_b(delta, t) has the larger energy."""
    if (t is None) == (t_range is None):
        raise typer.BadParameter("give exactly one of --t and --t-range")
    ts = range(t, t + 1) if t is not None else parse_range(t_range or "", "--t-range")
    try:
        for value in ts:
            FamilyParams(delta, value)
    except FamilyParamsError as e:
        raise typer.BadParameter(str(e)) from e

    cfg = _quadrature_config(tol)
    config = Config(quadrature=cfg)
    cells = [(delta, value) for value in ts]

    try:
        with Progress(
            SpinnerColumn(),
            TextColumn("[progress.description]{task.description}"),
            console=console,
            disable=_quiet(ctx),
        ) as progress:
            task = progress.add_task(f"Comparing {len(cells)} cell(s) for delta={delta}...", total=None)
            verdicts: list[Verdict] = sweep_verdicts(cells, cfg, config, workers, cross_check)
            progress.remove_task(task)
    except CrossCheckError as e:
        console.print(f"[red]Cross-check failed: {e}[/red]")
        raise typer.Exit(1) from e
    except Exception as e:
        console.print(f"[red]Error during comparison: {e}[/red]")
        if not _quiet(ctx):
            console.print_exception()
        raise typer.Exit(1) from e

    if output_format is OutputFormat.JSON:
        _emit_json([verdict.to_dict() for verdict in verdicts])
    elif output_format is OutputFormat.CSV:
        _emit_csv(
            [verdict.to_csv_row() for verdict in verdicts],
            ["delta", "t", "winner", "margin", "margin_error", "decisive"],
        )
    else:
        for verdict in verdicts:
            marker = "" if verdict.decisive else "  INDECISIVE"
            typer.echo(
                f"delta={verdict.delta} t={verdict.t} winner={verdict.winner.value}"
                f" margin={format_float(verdict.margin)} error={format_float(verdict.margin_error)}{marker}"
            )

    if not all(verdict.decisive for verdict in verdicts):
        _exit_with_error()


@app.command(name="table1")
def table1_command(
    ctx: typer.Context,
    delta_range: str = typer.Option("8:67", "--delta-range", help="A:B[:step], inclusive"),
    check: bool = typer.Option(False, "--check", help="Compare with the published column"),
    tol: Optional[float] = typer.Option(None, "--tol", help="Absolute quadrature tolerance (overrides ENERGY_TOL)"),
    output_format: OutputFormat = typer.Option(OutputFormat.CSV, "--format", "-f", help="plain, csv or json"),
) -> None:
    """The linear bounding integral f(delta) for each delta in the range."""
    deltas = parse_range(delta_range, "--delta-range")
    if deltas.start < 3:
        raise typer.BadParameter("delta must be at least 3", param_hint="--delta-range")
    cfg = _quadrature_config(tol)
    config = Config(quadrature=cfg)

    try:
        with Progress(
            SpinnerColumn(),
            TextColumn("[progress.description]{task.description}"),
            console=console,
            disable=_quiet(ctx),
        ) as progress:
            task = progress.add_task(f"Integrating f(delta) for {len(deltas)} value(s)...", total=None)
            frame = table1(deltas, cfg)
            progress.remove_task(task)
    except Exception as e:
        console.print(f"[red]Error computing Table 1: {e}[/red]")
        raise typer.Exit(1) from e

    columns = ["delta", "f_value", "f_paper", "abs_diff"] if check else ["delta", "f_value", "tail_part", "head_part"]
    records = frame[columns].to_dict("records")

    if output_format is OutputFormat.JSON:
        _emit_json(records)
    else:
        rows = [
            {key: str(int(value)) if key == "delta" else _format_cell(value) for key, value in record.items()}
            for record in records
        ]
        if output_format is OutputFormat.CSV:
            _emit_csv(rows, columns)
        else:
            for row in rows:
                typer.echo("  ".join(f"{key}={row[key]}" for key in columns))

    if check:
        compared = frame.dropna(subset=["f_paper"])
        worst = float(compared["abs_diff"].max()) if not compared.empty else 0.0
        if not _quiet(ctx):
            console.print(f"max abs_diff = {format_float(worst)} over {len(compared)} published value(s)")
        if worst > config.table1_tolerance:
            _exit_with_error()


def _is_nan(value: Any) -> bool:
    return isinstance(value, float) and math.isnan(value)


def _format_cell(value: Any) -> str:
    return "" if _is_nan(value) else format_float(float(value))


def print_rich_suite_summary(report: SuiteReport) -> None:
    """Print the suite outcome as a Rich panel."""
    results_table = Table(title=f"Suite {report.suite_name}", show_header=False, box=None)
    results_table.add_column("Metric", style="cyan", width=20)
    results_table.add_column("Value", style="white")

    status = "[bold green]passed[/bold green]" if report.passed else "[bold red]failed[/bold red]"
    results_table.add_row("Status", status)
    results_table.add_row("Cases run", f"{report.cases_run:,}")
    results_table.add_row("Failures", f"{len(report.failures):,}")
    for note in report.notes:
        results_table.add_row("Note", note)

    console.print(Panel(results_table, expand=False, border_style="green" if report.passed else "red"))


@app.command()
def verify(
    ctx: typer.Context,
    suite: str = typer.Option(..., "--suite", "-s", help=f"One of: {', '.join(SUITE_NAMES)}"),
    max_order: Optional[int] = typer.Option(None, "--max-order", help="Largest n for theorem11 (default 14, max 16)"),
    workers: int = typer.Option(1, "--workers", "-w", help="Worker processes", min=1),
    tol: Optional[float] = typer.Option(None, "--tol", help="Absolute quadrature tolerance (overrides ENERGY_TOL)"),
    output_format: OutputFormat = typer.Option(OutputFormat.PLAIN, "--format", "-f", help="plain, csv or json"),
) -> None:
    """Run one verification suite; exit 1 when any case fails."""
    config = Config(quadrature=_quadrature_config(tol))
    quiet = _quiet(ctx)

    try:
        processor = SuiteEventProcessor(console, quiet)
        report = processor.process_stream(suite, config, workers, max_order)
    except (UnknownSuiteError, EnumerationCapError) as e:
        raise typer.BadParameter(str(e)) from e
    except CommandError as e:
        raise typer.Exit(1) from e

    if output_format is OutputFormat.JSON:
        _emit_json(report.to_dict())
    elif output_format is OutputFormat.CSV:
        _emit_csv([failure.to_dict() for failure in report.failures], ["case_id", "expected", "got"])
    else:
        status = "PASSED" if report.passed else "FAILED"
        typer.echo(f"suite {report.suite_name}: {status} ({report.cases_run} cases, {len(report.failures)} failures)")
        for failure in report.failures:
            typer.echo(f"  {failure.case_id}: expected {failure.expected}, got {failure.got}")

    if not quiet:
        print_rich_suite_summary(report)
    if not report.passed:
        _exit_with_error()


def _eigen_value(tree: Tree) -> float:
    return energy_of_tree(tree, EnergyMethod.EIGEN).value


@app.command(name="enumerate")
def enumerate_command(
    ctx: typer.Context,
    n: int = typer.Option(..., "--n", help="Number of vertices"),
    delta: Optional[int] = typer.Option(None, "--delta", "-d", help="Keep trees whose maximum degree occurs twice"),
    rank: bool = typer.Option(False, "--rank", help="Append eigenvalue energies, sorted descending"),
    strategy: str = typer.Option("auto", "--strategy", help=f"One of: {', '.join(STRATEGIES)}"),
    workers: int = typer.Option(1, "--workers", "-w", help="Worker processes for --rank", min=1),
    output_format: OutputFormat = typer.Option(OutputFormat.PLAIN, "--format", "-f", help="plain, csv or json"),
) -> None:
    """Canonical edge lists of every tree on n vertices, up to isomorphism."""
    config = Config()
    if strategy not in STRATEGIES:
        raise typer.BadParameter(f"expected one of {', '.join(STRATEGIES)}", param_hint="--strategy")
    try:
        if delta is None:
            source = enumerate_trees(n, strategy, config.enumeration_hard_cap, config.prufer_max_order)
        else:
            source = enumerate_constrained_trees(
                n, delta, strategy, config.enumeration_hard_cap, config.prufer_max_order
            )
        trees = [tree.canonical_relabel() for tree in source]
    except (EnumerationCapError, FamilyParamsError, InvalidTreeError) as e:
        raise typer.BadParameter(str(e)) from e

    energies: list[Optional[float]] = [None] * len(trees)
    if rank:
        values = ordered_map(_eigen_value, trees, workers)
        order = sorted(range(len(trees)), key=lambda i: -values[i])
        trees = [trees[i] for i in order]
        energies = [values[i] for i in order]

    if output_format is OutputFormat.JSON:
        _emit_json(
            [
                {"index": i, "n": tree.vertex_count, "edges": [list(edge) for edge in tree.edges], "energy": energy}
                for i, (tree, energy) in enumerate(zip(trees, energies))
            ]
        )
    elif output_format is OutputFormat.CSV:
        fieldnames = ["index", "n", "edges"] + (["energy"] if rank else [])
        rows = []
        for i, (tree, energy) in enumerate(zip(trees, energies)):
            row = {"index": str(i), "n": str(tree.vertex_count), "edges": _edges_text(tree)}
            if rank and energy is not None:
                row["energy"] = format_float(energy)
            rows.append(row)
        _emit_csv(rows, fieldnames)
    else:
        for i, (tree, energy) in enumerate(zip(trees, energies)):
            suffix = f"\t{format_float(energy)}" if energy is not None else ""
            typer.echo(f"{i}\t{_edges_text(tree)}{suffix}")

    if not _quiet(ctx):
        console.print(f"{len(trees)} tree(s) on {n} vertices")


@app.command()
def bounds(
    ctx: typer.Context,
    delta_range: str = typer.Option("65:100", "--delta-range", help="Deltas for the closed-form bounds"),
    tol: Optional[float] = typer.Option(None, "--tol", help="Absolute quadrature tolerance (overrides ENERGY_TOL)"),
    output_format: OutputFormat = typer.Option(OutputFormat.PLAIN, "--format", "-f", help="plain or json"),
) -> None:
    """Closed-form bounds, parity thresholds and the bounding-integral constants; exit 1 if a constant fails."""
    deltas = parse_range(delta_range, "--delta-range")
    if deltas.start < 3:
        raise typer.BadParameter("delta must be at least 3", param_hint="--delta-range")
    config = Config(quadrature=_quadrature_config(tol))

    try:
        analytic = [analytic_bounds(delta) for delta in deltas]
        thresholds = [
            {"delta": delta, "parity": parity.value, "threshold": parity_threshold(delta, parity)}
            for delta, parity in PARITY_INSTANCES
        ]
        checks = proof_constant_checks(config.quadrature)
    except Exception as e:
        console.print(f"[red]Error computing bounds: {e}[/red]")
        if not _quiet(ctx):
            console.print_exception()
        raise typer.Exit(1) from e

    tolerance = config.proof_constant_tolerance
    if output_format is OutputFormat.JSON:
        _emit_json(
            {
                "analytic": [
                    {
                        "delta": b.delta,
                        "upper_tail": b.upper_tail,
                        "lower_head": b.lower_head,
                        "difference": b.difference,
                    }
                    for b in analytic
                ],
                "thresholds": thresholds,
                "constants": [{**check.to_dict(), "passed": check.passed(tolerance)} for check in checks],
            }
        )
    else:
        for b in analytic:
            typer.echo(
                f"analytic delta={b.delta} upper_tail={format_float(b.upper_tail)}"
                f" lower_head={format_float(b.lower_head)} difference={format_float(b.difference)}"
            )
        for row in thresholds:
            typer.echo(f"threshold delta={row['delta']} parity={row['parity']} t>={row['threshold']}")
        for check in checks:
            status = "ok" if check.passed(tolerance) else "FAIL"
            typer.echo(
                f"constant {check.name}: integral={format_float(check.integral)}"
                f" claimed={format_float(check.claimed)} {status}"
            )

    if not all(check.passed(tolerance) for check in checks):
        _exit_with_error()


def main() -> None:
    """Entry point for the CLI application."""
    app()


if __name__ == "__main__":
    main()
