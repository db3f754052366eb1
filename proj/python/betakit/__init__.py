"""Exact arithmetic for intermediate beta-shifts."""

from ._core import BetakitError, System, beta_value, classify_number, run_cli

__all__ = ["BetakitError", "System", "beta_value", "classify_number", "run_cli"]
