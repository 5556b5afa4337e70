"""
Command-line interface for the one-query toolkit.
Uses Click for command parsing and Rich for output formatting.

Exit codes: 0 success / positive decision, 1 environment error,
2 input error, 3 negative decision.
"""
from __future__ import annotations

import functools
import os
import sys

import click
from rich.console import Console
from rich.table import Table
from rich.text import Text

# Ensure src/ is importable when invoked via run.py
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from config import load_config
from engine import scanner
from engine.boolfn import BudgetExceeded, DimensionError, FunctionFormatError, serialize_function
from engine.catalog import CATALOG_NAMES, catalog_entry, orthonormalized_witnesses, raw_witnesses_exact
from engine.classify import is_one_query, min_degree
from engine.feasibility import (
    CertificateFormatError,
    Infeasible,
    build_constraints,
    format_certificate,
    support_analysis,
    verify_certificate,
)
from engine.simulator import SimulationConfig, SimulationReport, report_lines, run_algorithm1
from engine.witness import (
    WitnessConfig,
    WitnessError,
    build_gram_witness,
    build_projector_float,
    check_orthogonality,
    dump_witness,
    float_agreement,
    reproduces,
)
from models import storage

console = Console()
err_console = Console(stderr=True)


class ExitCodes:
    SUCCESS = 0             # command ran; decision (if any) is positive
    ENVIRONMENT_ERROR = 1   # I/O or OS failure
    INPUT_ERROR = 2         # unreadable function / certificate, mismatched n, budget
    NEGATIVE = 3            # command ran; the mathematical answer is "no"


def _guarded(command):
    """Map exceptions onto the exit-code contract."""
    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except (FunctionFormatError, CertificateFormatError, DimensionError, BudgetExceeded) as exc:
            err_console.print(f"[red]Input error:[/red] {exc}")
            sys.exit(ExitCodes.INPUT_ERROR)
        except WitnessError as exc:
            err_console.print(f"[red]Witness error:[/red] {exc}")
            sys.exit(ExitCodes.INPUT_ERROR)
        except ValueError as exc:
            err_console.print(f"[red]Invalid argument:[/red] {exc}")
            sys.exit(ExitCodes.INPUT_ERROR)
        except OSError as exc:
            err_console.print(f"[red]I/O error:[/red] {exc}")
            sys.exit(ExitCodes.ENVIRONMENT_ERROR)
    return wrapper


@click.group()
def cli():
    """Decide, certify and simulate exact one-query quantum algorithms."""


def _print_trace(outcome: Infeasible | None):
    if outcome is None:
        return
    click.echo("contradiction trace:")
    for step in outcome.trace:
        click.echo(f"  {step}")
    if outcome.farkas is not None:
        click.echo("farkas: " + " ".join(str(v) for v in outcome.farkas))


def _stem(path: str) -> str:
    return os.path.splitext(os.path.basename(path))[0]


# ── check ────────────────────────────────────────────────────────────────────

@cli.command()
@click.argument("path", type=click.Path(dir_okay=False))
@click.option("--canonical", is_flag=True, default=False,
              help="Also print the canonical representative of the isomorphism class.")
@_guarded
def check(path, canonical):
    """Decide whether the function in PATH is a one-query function."""
    max_n = int(load_config().get("canonical", {}).get("max_n", 6))
    f = storage.load_function(path)
    if canonical and f.n > max_n:
        raise BudgetExceeded(f"canonical form limited to n <= {max_n}, got n = {f.n}")
    result = is_one_query(f, verify_filter=True, canonical_max_n=max_n if canonical else None)
    click.echo(result.decision.value)
    if canonical:
        click.echo("canonical:")
        click.echo(serialize_function(result.canonical), nl=False)
    if not result.one_query:
        _print_trace(result.outcome)
        sys.exit(ExitCodes.NEGATIVE)


# ── certificate ──────────────────────────────────────────────────────────────

@cli.command()
@click.argument("path", type=click.Path(dir_okay=False))
@click.option("--out", "out_dir", default=None, help="Directory for <name>.cert and <name>.witness.")
@click.option("--all-support", is_flag=True, default=False,
              help="Also report every index that can carry positive weight.")
@_guarded
def certificate(path, out_dir, all_support):
    """Find a weight certificate and the measurement projector for PATH."""
    witness_cfg = WitnessConfig.from_config(load_config())

    f = storage.load_function(path)
    result = is_one_query(f, verify_filter=True, canonical_max_n=None)
    if not result.one_query:
        click.echo(result.decision.value)
        _print_trace(result.outcome)
        sys.exit(ExitCodes.NEGATIVE)

    c = result.certificate
    witness = build_gram_witness(f, c)
    projector = build_projector_float(witness)
    cert_text = format_certificate(c)
    dump = dump_witness(witness, projector, witness_cfg.float_digits)
    if f.n <= witness_cfg.max_float_check_n:
        dump += f"float_agreement={float_agreement(witness, projector, witness_cfg.max_float_check_n):.3e}\n"

    if out_dir is None:
        click.echo(cert_text, nl=False)
        click.echo(dump, nl=False)
    else:
        name = _stem(path)
        storage.write_text(out_dir, f"{name}.cert", cert_text)
        storage.write_text(out_dir, f"{name}.witness", dump)
        err_console.print(f"[green]Wrote[/green] {name}.cert and {name}.witness to {out_dir}")

    if all_support:
        support = support_analysis(build_constraints(f))
        click.echo("support=" + ",".join(str(i) for i in support))


# ── simulate ─────────────────────────────────────────────────────────────────

@cli.command()
@click.argument("path", type=click.Path(dir_okay=False))
@click.argument("cert_path", type=click.Path(dir_okay=False))
@click.option("--tol", type=float, default=None, help="Allowed |p_accept - f(x)|. Default: from config.yaml.")
@click.option("--lines", "machine", is_flag=True, default=False,
              help="Emit only the machine-readable x=... p=... f=... ok=... lines.")
@_guarded
def simulate(path, cert_path, tol, machine):
    """Run the one-query algorithm for every input of PATH using CERT_PATH."""
    sim_cfg = SimulationConfig.from_config(load_config())
    tol = sim_cfg.tolerance if tol is None else tol

    f = storage.load_function(path)
    c = storage.load_certificate(cert_path)
    if c.n != f.n:
        raise DimensionError(f"certificate is for n = {c.n}, function has n = {f.n}")

    # non-strict: a wrong certificate must show up as failed records, not as an error
    witness = build_gram_witness(f, c, strict=False)
    projector = build_projector_float(witness)
    report = run_algorithm1(f, c, projector, tol, sim_cfg.clamp_slack)

    if machine:
        click.echo(report_lines(report, sim_cfg.digits), nl=False)
    else:
        _render_report(report, sim_cfg.digits)
    if not report.all_passed:
        sys.exit(ExitCodes.NEGATIVE)


def _render_report(report: SimulationReport, digits: int):
    table = Table(title="One-query simulation", header_style="bold cyan", show_lines=False)
    table.add_column("x")
    table.add_column("expected", justify="right")
    table.add_column("p_accept", justify="right")
    table.add_column("pass", justify="center")
    for r in report.records:
        table.add_row(
            str(r.x),
            str(r.expected),
            f"{r.p_accept:.{digits}f}",
            Text("yes", style="green") if r.passed else Text("NO", style="bold red"),
        )
    console.print(table)
    console.print(
        f"max deviation {report.max_deviation:.3e} (tolerance {report.tolerance:.1e}), "
        f"{len(report.failures)} failure(s)"
    )


# ── degree ───────────────────────────────────────────────────────────────────

@cli.command()
@click.argument("path", type=click.Path(dir_okay=False))
@click.option("--cap", type=int, default=None, help="Highest degree to try. Default: n.")
@_guarded
def degree(path, cap):
    """Least degree of a multilinear polynomial agreeing with PATH on its domain."""
    f = storage.load_function(path)
    cap = f.n if cap is None else cap
    d = min_degree(f, cap)
    click.echo(str(d) if d is not None else f">{cap}")


# ── catalog ──────────────────────────────────────────────────────────────────

@cli.command()
@click.argument("name", type=click.Choice(CATALOG_NAMES))
@click.option("--n", "n", type=int, default=None, help="Size parameter (f1, f2, f5).")
@click.option("--c", "c", type=int, default=None, help="Weight level of the 0-inputs (f2).")
@click.option("--weights", "weights_path", default=None, type=click.Path(dir_okay=False),
              help="Certificate-format weights file (f3).")
@click.option("--out", "out_dir", default=".", help="Output directory.")
@click.option("--tol", type=float, default=None, help="Simulation tolerance. Default: from config.yaml.")
@click.option("--stamp", is_flag=True, default=False, help="Append a UTC timestamp to the report.")
@_guarded
def catalog(name, n, c, weights_path, out_dir, tol, stamp):
    """Generate a named family, verify it, and write function, certificate and report."""
    sim_cfg = SimulationConfig.from_config(load_config())
    tol = sim_cfg.tolerance if tol is None else tol
    weights = storage.load_certificate(weights_path).weights if weights_path else None

    entry = catalog_entry(name, n=n, c=c, weights=weights)
    f, cert = entry.function, entry.certificate
    witness = build_gram_witness(f, cert)
    projector = build_projector_float(witness)
    report = run_algorithm1(f, cert, projector, tol, sim_cfg.clamp_slack)
    orthonormalized_witnesses(entry)

    target = "1-f" if entry.witnesses_complement else "f"
    lines = [
        f"name={entry.name}",
        f"n={f.n}",
        f"domain={len(f)}",
        f"verify_certificate={int(verify_certificate(f, cert))}",
        f"orthogonality={int(check_orthogonality(f, cert))}",
        f"g_equals_f={int(reproduces(witness, f))}",
        f"witness_rank={witness.rank}",
        f"published_witnesses_represent={target}",
        f"simulation_max_deviation={report.max_deviation:.3e}",
        f"simulation_pass={int(report.all_passed)}",
        f"published_witnesses_exact_without_orthonormalisation={int(raw_witnesses_exact(entry))}",
    ]
    lines.extend(f"note={note}" for note in entry.notes)

    base = entry.name.split("(")[0]
    storage.save_function(out_dir, base, f)
    storage.save_certificate(out_dir, base, cert)
    storage.write_text(out_dir, f"{base}.report", "\n".join(lines) + "\n", stamp=stamp)

    console.print(f"[bold cyan]{entry.name}[/bold cyan]: {len(f)} domain points, "
                  f"rank {witness.rank}, max deviation {report.max_deviation:.3e}")
    for note in entry.notes:
        console.print(f"  [dim]{note}[/dim]")
    if not report.all_passed:
        sys.exit(ExitCodes.NEGATIVE)


# ── search ───────────────────────────────────────────────────────────────────

@cli.command()
@click.option("--n", "n", type=int, required=True, help="Number of variables.")
@click.option("--total-only", is_flag=True, default=False, help="Scan total functions only.")
@click.option("--canonical", is_flag=True, default=False, help="Report one representative per isomorphism class.")
@click.option("--out", "out_dir", default=None, help="Write summary.txt and representative files here.")
@click.option("--stamp", is_flag=True, default=False, help="Append a UTC timestamp to summary.txt.")
@_guarded
def search(n, total_only, canonical, out_dir, stamp):
    """Exhaustively classify functions on n variables."""
    summary = scanner.run_search(
        n, total_only=total_only, dedup=canonical, out_dir=out_dir, stamp=stamp,
    )
    table = Table(title=f"{summary.mode.capitalize()} functions, n = {n}", header_style="bold cyan")
    table.add_column("", min_width=28)
    table.add_column("with output negation", justify="right")
    table.add_column("without", justify="right")
    table.add_row("functions examined", str(summary.examined), str(summary.examined))
    table.add_row("one-query functions", str(summary.one_query_functions), str(summary.one_query_functions))
    table.add_row("isomorphism classes", str(summary.classes), str(summary.classes_without_negation))
    table.add_row("one-query classes", str(summary.one_query_classes),
                  str(summary.one_query_classes_without_negation))
    console.print(table)
    for kind, count in sorted(summary.characterization.items()):
        console.print(f"  [dim]{kind}:[/dim] {count}")
