"""Working-precision management.

All heavy numerics run under mpmath with a binary precision chosen per
call.  The default is 256 significand bits and can be overridden through
the ONECUT_PRECISION_BITS environment variable.
"""

from __future__ import annotations

import os
from contextlib import contextmanager
from dataclasses import dataclass

from mpmath import mp

DEFAULT_PRECISION_BITS = 256
ENV_PRECISION_BITS = "ONECUT_PRECISION_BITS"


def default_precision_bits() -> int:
    """Default binary working precision, honoring the env override."""
    raw = os.environ.get(ENV_PRECISION_BITS)
    if raw is None:
        return DEFAULT_PRECISION_BITS
    try:
        bits = int(raw)
    except ValueError as exc:
        raise ValueError(
            f"{ENV_PRECISION_BITS} must be an integer, got {raw!r}"
        ) from exc
    if bits < 53:
        raise ValueError(f"{ENV_PRECISION_BITS} must be at least 53, got {bits}")
    return bits


@contextmanager
def working_precision(bits: int | None = None, guard: int = 0):
    """Context manager setting mp.prec to ``bits + guard``.

    Values created inside keep their precision after the context exits.
    """
    if bits is None:
        bits = default_precision_bits()
    old = mp.prec
    mp.prec = bits + guard
    try:
        yield mp
    finally:
        mp.prec = old


@dataclass(frozen=True)
class PrecisionConfig:
    """Precision and discretization budget for the recurrence pipeline.

    digits_target is the number of decimal digits the self-validation
    (node doubling) must reproduce before a table is accepted.
    """

    precision_bits: int = DEFAULT_PRECISION_BITS
    digits_target: int = 30
    panel_nodes: int = 64
    initial_panels: int = 8
    max_doublings: int = 5

    @staticmethod
    def default() -> "PrecisionConfig":
        return PrecisionConfig(precision_bits=default_precision_bits())
