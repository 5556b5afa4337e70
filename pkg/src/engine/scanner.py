"""
Scanner: orchestrates exhaustive classification runs.
Uses Rich console for live progress output in CLI mode.
"""
from __future__ import annotations

from rich.console import Console
from rich.progress import Progress, SpinnerColumn, TextColumn, BarColumn, MofNCompleteColumn

from config import load_config, scan_threads
from engine.classify import ScanConfig, SearchSummary, scan_partial, scan_total
from models import storage

console = Console(stderr=True)


def run_search(
    n: int,
    total_only: bool = False,
    dedup: bool = False,
    out_dir: str | None = None,
    stamp: bool = False,
    silent: bool = False,
) -> SearchSummary:
    """
    Run a total or partial scan and optionally persist it.

    Args:
        n:          Number of variables.
        total_only: Scan total functions (2^(2^n)) instead of partial assignments.
        dedup:      Group by canonical form and keep one representative per class.
        out_dir:    Where summary.txt and the representative files go (None: no files).
        stamp:      Append a UTC timestamp to summary.txt.
        silent:     Suppress Rich console output.
    """
    cfg = load_config()
    scan_cfg = ScanConfig.from_config(cfg)
    workers = scan_threads(cfg)
    mode = "total" if total_only else "partial"

    if not silent:
        console.rule(f"[bold cyan]{mode.capitalize()} scan, n = {n}[/bold cyan]")
        console.log(f"{workers} worker(s), chunks of {scan_cfg.chunk_size}")

    with Progress(
        SpinnerColumn(),
        TextColumn("[progress.description]{task.description}"),
        BarColumn(),
        MofNCompleteColumn(),
        console=console,
        disable=silent,
        transient=True,
    ) as progress:
        task = progress.add_task(f"Classifying {mode} functions...", total=None)

        def cb(done: int, total: int):
            progress.update(task, completed=done, total=total)

        scan = scan_total if total_only else scan_partial
        summary = scan(n, dedup=dedup, workers=workers, config=scan_cfg, progress_cb=cb)

    if out_dir is not None:
        paths = storage.save_search_results(summary, out_dir, stamp=stamp)
        if not silent:
            console.log(f"  [green]✓[/green] wrote {len(paths)} file(s) to {out_dir}")

    if not silent:
        console.rule(
            f"[bold green]Scan complete: {summary.one_query_functions} of "
            f"{summary.examined} one-query, {summary.one_query_classes} of "
            f"{summary.classes} classes[/bold green]"
        )
    return summary
