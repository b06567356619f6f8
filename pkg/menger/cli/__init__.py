"""CLI module for the Menger toolkit."""

from menger.cli.main import cli

__all__ = ["cli"]
