"""Independent big-integer evaluation of the threshold t for LW(r).

    (max((10r-2)!, ceil(((10r-1)!)^24 / (1-theta)^3)))^(2^(r-1))

Writes one decimal integer per golden file.
"""
from fractions import Fraction
from math import factorial, ceil
import sys
from pathlib import Path

sys.set_int_max_str_digits(0)


def min_valid_t(r, theta):
    gap = 1 - theta
    second = Fraction(factorial(10 * r - 1) ** 24) / gap ** 3
    second = -(-second.numerator // second.denominator)
    return max(factorial(10 * r - 2), second) ** (2 ** (r - 1))


if __name__ == "__main__":
    out = Path(__file__).resolve().parent.parent / "golden"
    for r, theta, name in [(2, Fraction(1, 2), "min_valid_t_r2_half.txt"), (3, Fraction(1, 4), "min_valid_t_r3_quarter.txt")]:
        (out / name).write_text(str(min_valid_t(r, theta)) + "\n")
    assert min_valid_t(2, Fraction(1, 2)) == (8 * factorial(19) ** 24) ** 2
