"""Deterministic number formatting for text outputs"""

from typing import Optional

import numpy as np

SIGNIFICANT_DIGITS = 12


def format_decimal(value: Optional[float]) -> str:
    """
    Positional notation with 12 significant digits, trailing zeros trimmed.

    None renders as an empty field; integers render without a decimal point.
    """
    if value is None:
        return ""
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    return np.format_float_positional(
        float(value),
        precision=SIGNIFICANT_DIGITS,
        unique=False,
        fractional=False,
        trim="-",
    )
