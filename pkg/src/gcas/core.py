"""Residue and mixed-radix digit arithmetic shared by the rest of the package.

Digits are stored least-significant first: ``digits[0]`` is the coefficient
of ``base**0``.  Documentation elsewhere numbers variables from 1, so the
variable written ``x_1`` lives at ``digits[0]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

# Desk-scale capacity limits applied by parameter validation.
MAX_CELLS = 2**20
MAX_Q = 2**16


class GCASError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(GCASError, ValueError):
    """An input violates a structural precondition."""


class DigitRangeError(GCASError, ValueError):
    """A value does not fit the requested number of digits."""


class CapacityError(GCASError, ValueError):
    """A request exceeds the desk-scale size bounds."""


def check_modulus(q: int) -> int:
    if int(q) != q or q < 2:
        raise ValidationError(f"modulus q must be an integer >= 2, got {q!r}")
    return int(q)


@dataclass(frozen=True)
class DigitVector:
    """Fixed-length base-``base`` representation of a nonnegative integer."""

    base: int
    digits: tuple[int, ...]

    def __post_init__(self) -> None:
        if int(self.base) != self.base or self.base < 2:
            raise ValidationError(f"digit base must be >= 2, got {self.base!r}")
        digits = tuple(int(d) for d in self.digits)
        for pos, d in enumerate(digits):
            if not 0 <= d < self.base:
                raise ValidationError(
                    f"digit {d} at position {pos} outside [0, {self.base})")
        object.__setattr__(self, "digits", digits)

    def __len__(self) -> int:
        return len(self.digits)

    def __iter__(self):
        return iter(self.digits)

    def __getitem__(self, pos):
        return self.digits[pos]

    @property
    def value(self) -> int:
        return digits_to_index(self)


def index_to_digits(value: int, base: int, length: int) -> DigitVector:
    """Expand ``value`` into exactly ``length`` base-``base`` digits, LSB first.

    >>> index_to_digits(5, 2, 3).digits
    (1, 0, 1)
    """
    if base < 2:
        raise ValidationError(f"digit base must be >= 2, got {base}")
    if length < 0:
        raise ValidationError(f"digit length must be nonnegative, got {length}")
    if not 0 <= value < base**length:
        raise DigitRangeError(
            f"{value} does not fit in {length} base-{base} digits")
    out = []
    for _ in range(length):
        value, r = divmod(value, base)
        out.append(r)
    return DigitVector(base, tuple(out))


def digits_to_index(d: DigitVector | Sequence[int], base: int | None = None) -> int:
    """Inverse of :func:`index_to_digits`.

    A plain sequence is accepted when ``base`` is given; it is validated the
    same way a :class:`DigitVector` is.
    """
    if not isinstance(d, DigitVector):
        if base is None:
            raise ValidationError("base is required for a plain digit sequence")
        d = DigitVector(base, tuple(d))
    value = 0
    for digit in reversed(d.digits):
        value = value * d.base + digit
    return value


def unified_digits(g_digits: DigitVector, i_digits: DigitVector) -> DigitVector:
    """Concatenate row digits ``(g_1..g_m)`` and column digits ``(i_1..i_n)``.

    Position ``l`` (1-based) of the result holds ``g_l`` for ``l <= m`` and
    ``i_{l-m}`` for ``m < l <= m+n``.
    """
    if g_digits.base != i_digits.base:
        raise ValidationError(
            f"base mismatch: row digits base {g_digits.base}, "
            f"column digits base {i_digits.base}")
    return DigitVector(g_digits.base, g_digits.digits + i_digits.digits)


def mod_pow(base_val: int, exponent: int, q: int) -> int:
    """``base_val**exponent mod q`` with the convention ``0**0 == 1``."""
    q = check_modulus(q)
    if base_val < 0 or exponent < 0:
        raise ValidationError("mod_pow takes nonnegative base and exponent")
    return pow(base_val, exponent, q)


def units(b: int) -> list[int]:
    """The admissible chain coefficients ``{r : 1 <= r < b, gcd(r, b) = 1}``."""
    from math import gcd

    return [r for r in range(1, b) if gcd(r, b) == 1]


def all_digit_vectors(base: int, length: int) -> Iterable[DigitVector]:
    """Every digit vector of the given shape, in increasing index order."""
    for v in range(base**length):
        yield index_to_digits(v, base, length)
