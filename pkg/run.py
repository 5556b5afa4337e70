#!/usr/bin/env python3
"""
oneq: exact one-query quantum algorithms for partial Boolean functions.
Entry point.

Usage:
  python run.py check f.fn                    # one-query or not (exit 0 / 3)
  python run.py certificate f.fn --out out/   # weights, Gram witness, projector
  python run.py simulate f.fn f.cert          # run the algorithm on every input
  python run.py degree f.fn                   # least agreeing multilinear degree
  python run.py catalog f5 --n 1 --out out/   # named families f1..f5
  python run.py search --n 3 --total-only     # exhaustive classification
"""
import sys
import os

# Add src/ to path only when running as a script (PyInstaller handles it when frozen)
if not getattr(sys, "frozen", False):
    sys.path.insert(0, os.path.join(os.path.dirname(os.path.abspath(__file__)), "src"))

if __name__ == "__main__":
    from cli.main import cli
    cli(prog_name="oneq")
