"""Command-line interface and report files."""

from .cli import cli, main

__all__ = ["cli", "main"]
