"""Reversible arithmetic circuits with borrowed dirty wires."""

from ._core import (
    BuildError,
    continued_fractions,
    qubit_budget,
    registered_ops,
    shor,
    synthesize,
    verify,
)

__all__ = [
    "BuildError",
    "continued_fractions",
    "qubit_budget",
    "registered_ops",
    "shor",
    "synthesize",
    "verify",
]
