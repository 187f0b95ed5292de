"""Saaty's 1-9 comparison scale."""

from enum import IntEnum
from fractions import Fraction

MIN_TIER_SCALE = 2
MAX_TIER_SCALE = 9


class SaatyScale(IntEnum):
    EQUAL = 1
    WEAK = 2
    MODERATE = 3
    MODERATE_PLUS = 4
    STRONG = 5
    STRONG_PLUS = 6
    DEMONSTRATE = 7
    DEMONSTRATE_PLUS = 8
    EXTREME = 9

    @property
    def label(self) -> str:
        return _LABELS[self]


_LABELS = {
    SaatyScale.EQUAL: "Equal",
    SaatyScale.WEAK: "Weak",
    SaatyScale.MODERATE: "Moderate",
    SaatyScale.MODERATE_PLUS: "Moderate plus",
    SaatyScale.STRONG: "Strong",
    SaatyScale.STRONG_PLUS: "Strong plus",
    SaatyScale.DEMONSTRATE: "Demonstrate",
    SaatyScale.DEMONSTRATE_PLUS: "Demonstrate plus",
    SaatyScale.EXTREME: "Extremely preferred",
}


def is_saaty_value(value: float, tol: float = 1e-9) -> bool:
    """True for 1..9 and the reciprocals 1/2..1/9."""
    for intensity in SaatyScale:
        if abs(value - intensity) <= tol or abs(value - 1.0 / intensity) <= tol:
            return True
    return False


def format_saaty(value: float) -> str:
    """Render a matrix entry as "7", "1/7" or "1"; other values as plain decimals."""
    if value >= 1.0:
        rounded = round(value)
        if abs(value - rounded) <= 1e-9:
            return str(int(rounded))
    else:
        fraction = Fraction(value).limit_denominator(SaatyScale.EXTREME)
        if fraction.numerator == 1 and abs(float(fraction) - value) <= 1e-9:
            return f"1/{fraction.denominator}"
    return repr(float(value))
