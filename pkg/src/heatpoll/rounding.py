"""Rounding helpers shared by every module.

All rounding in the package is half-away-from-zero, so 21.5 -> 22 and
-2.5 -> -3. Python's built-in ``round`` uses banker's rounding and must not
be used for temperatures, happiness or closeness.
"""

from __future__ import annotations

import math
from decimal import ROUND_HALF_UP, Decimal


def round_half_away(x: float) -> int:
    if math.isnan(x) or math.isinf(x):
        raise ValueError(f"cannot round non-finite value {x!r}")
    return int(math.copysign(math.floor(abs(x) + 0.5), x))


def round_half_away_to(x: float, ndigits: int) -> float:
    """Round to ``ndigits`` decimals, half away from zero, on the shortest repr of ``x``."""
    if math.isnan(x) or math.isinf(x):
        raise ValueError(f"cannot round non-finite value {x!r}")
    q = Decimal(1).scaleb(-ndigits)
    return float(Decimal(repr(x)).quantize(q, rounding=ROUND_HALF_UP))


def clamp(x, lo, hi):
    return lo if x < lo else hi if x > hi else x
