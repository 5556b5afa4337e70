"""
File persistence.
Files:
  - <name>.fn      : function file (n= header, sorted data lines)
  - <name>.cert    : certificate (n= header, c<i>=p/q lines)
  - <name>.witness : Gram witness dump with the float projector
  - <name>.report  : catalog verification report
  - summary.txt    : search summary
Every file is byte-identical across runs unless a stamp is requested.
"""
import os
from datetime import datetime, timezone

from engine.boolfn import PartialBooleanFunction, parse_function, serialize_function
from engine.classify import SearchSummary
from engine.feasibility import WeightCertificate, format_certificate, parse_certificate


def _now() -> str:
    return datetime.now(timezone.utc).replace(tzinfo=None).isoformat()


def stamp_line() -> str:
    return f"# generated {_now()}Z\n"


def init_output_dir(path: str) -> str:
    os.makedirs(path, exist_ok=True)
    return path


def read_text(path: str) -> str:
    with open(path, "r", encoding="utf-8") as f:
        return f.read()


def write_text(directory: str, name: str, text: str, stamp: bool = False) -> str:
    path = os.path.join(init_output_dir(directory), name)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)
        if stamp:
            f.write(stamp_line())
    return path


# ── Functions and certificates ──────────────────────────────────────────────

def load_function(path: str) -> PartialBooleanFunction:
    return parse_function(read_text(path))


def load_certificate(path: str) -> WeightCertificate:
    return parse_certificate(read_text(path))


def save_function(directory: str, name: str, f: PartialBooleanFunction) -> str:
    return write_text(directory, f"{name}.fn", serialize_function(f))


def save_certificate(directory: str, name: str, c: WeightCertificate) -> str:
    return write_text(directory, f"{name}.cert", format_certificate(c))


# ── Search results ──────────────────────────────────────────────────────────

def format_summary(summary: SearchSummary) -> str:
    lines = [
        f"n={summary.n}",
        f"mode={summary.mode}",
        f"examined={summary.examined}",
        f"one_query_functions={summary.one_query_functions}",
        f"classes={summary.classes}",
        f"classes_without_output_negation={summary.classes_without_negation}",
        f"one_query_classes={summary.one_query_classes}",
        f"one_query_classes_without_output_negation={summary.one_query_classes_without_negation}",
    ]
    for kind in sorted(summary.characterization):
        lines.append(f"characterization.{kind}={summary.characterization[kind]}")
    lines.append("representatives:")
    for index, c in enumerate(summary.one_query_representatives()):
        table = " ".join(f"{x}:{v}" for x, v in c.function.items())
        weights = " ".join(f"{w.numerator}/{w.denominator}" for w in c.certificate.weights)
        lines.append(f"  #{index} one-query degree={c.degree} squares={c.squares} [{table}] c=({weights})")
    return "\n".join(lines) + "\n"


def save_search_results(summary: SearchSummary, directory: str, stamp: bool = False) -> list[str]:
    """Write summary.txt plus <index>.fn / <index>.cert for every one-query representative."""
    paths = [write_text(directory, "summary.txt", format_summary(summary), stamp=stamp)]
    for index, c in enumerate(summary.one_query_representatives()):
        paths.append(save_function(directory, str(index), c.function))
        paths.append(save_certificate(directory, str(index), c.certificate))
    return paths
