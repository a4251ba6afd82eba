"""Public store interface: vertex construction, bounds, measurement.

The heavy lifting lives in the engine backend (see kcdag.engine); this module
adds bound handling and convenience constructors.
"""

from __future__ import annotations

import math
from typing import Iterable, Union

from .engine import (  # noqa: F401  (re-exported API)
    BACKEND,
    FALSE,
    TRUE,
    KIND_CONJ,
    KIND_DECISION,
    KIND_FALSE,
    KIND_TRUE,
    DiagramStore,
    available_backends,
)
from .ordering import VariableOrder

INF = math.inf

Bound = Union[int, float]


def parse_bound(value) -> Bound:
    """Normalize a bound given as int, float or string; 'inf' is unbounded."""
    if isinstance(value, str):
        text = value.strip().lower()
        if text in ("inf", "infinity"):
            return INF
        try:
            value = int(text)
        except ValueError:
            raise ValueError(f"bound must be a non-negative integer or 'inf', not {value!r}")
    if isinstance(value, float):
        if value == INF:
            return INF
        if not value.is_integer():
            raise ValueError(f"bound must be an integer or infinite, not {value!r}")
        value = int(value)
    if not isinstance(value, int) or isinstance(value, bool) or value < 0:
        raise ValueError(f"bound must be a non-negative integer or 'inf', not {value!r}")
    return value


def format_bound(bound: Bound) -> str:
    return "inf" if bound == INF else str(int(bound))


def new_store(order: VariableOrder | Iterable[int]) -> DiagramStore:
    """A fresh store over the given order (or variable sequence)."""
    if not isinstance(order, VariableOrder):
        order = VariableOrder(list(order))
    return DiagramStore(order)
