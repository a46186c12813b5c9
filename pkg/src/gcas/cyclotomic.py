"""Exact sums of q-th roots of unity.

A :class:`CyclotomicSum` stores the multiplicity of each power of
``xi = exp(2*pi*i/q)``.  Whether such a sum vanishes is decided exactly: the
sum is zero iff the q-th cyclotomic polynomial divides the coefficient
polynomial over the integers.  :meth:`CyclotomicSum.to_complex` is kept as an
independent floating-point cross-check only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

import numpy as np

from .core import MAX_Q, GCASError, ValidationError, check_modulus


class CyclotomicConsistencyError(GCASError, ArithmeticError):
    """Exact polynomial division left a remainder where none is possible."""


@dataclass(frozen=True)
class IntPolynomial:
    """Dense integer polynomial, ``coeffs[k]`` multiplies ``x**k``.

    Trailing zeros are stripped, so the zero polynomial has ``coeffs == ()``.
    """

    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        c = [int(v) for v in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __mul__(self, other: IntPolynomial) -> IntPolynomial:
        if self.is_zero() or other.is_zero():
            return IntPolynomial(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(tuple(out))

    def divmod_monic(self, divisor: IntPolynomial) -> tuple[IntPolynomial, IntPolynomial]:
        """Quotient and remainder by a monic divisor; stays inside Z[x]."""
        if divisor.is_zero() or divisor.coeffs[-1] != 1:
            raise ValidationError("divisor must be monic")
        rem = list(self.coeffs)
        dd = divisor.degree
        if len(rem) - 1 < dd:
            return IntPolynomial(()), self
        quot = [0] * (len(rem) - dd)
        dc = divisor.coeffs
        for top in range(len(rem) - 1, dd - 1, -1):
            lead = rem[top]
            if lead:
                shift = top - dd
                quot[shift] = lead
                for k in range(dd + 1):
                    rem[shift + k] -= lead * dc[k]
        return IntPolynomial(tuple(quot)), IntPolynomial(tuple(rem[:dd]))

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> IntPolynomial:
    """The n-th cyclotomic polynomial, via ``(x**n - 1) / prod_{d | n, d < n} Phi_d``."""
    if int(n) != n or not 1 <= n <= MAX_Q:
        raise ValidationError(f"cyclotomic index must lie in [1, {MAX_Q}], got {n!r}")
    poly = IntPolynomial((-1,) + (0,) * (n - 1) + (1,))
    for d in range(1, n):
        if n % d == 0:
            poly, rem = poly.divmod_monic(cyclotomic_polynomial(d))
            if not rem.is_zero():
                raise CyclotomicConsistencyError(
                    f"Phi_{d} does not divide the partial quotient for n={n}")
    return poly


@dataclass(frozen=True)
class CyclotomicSum:
    """``sum_j coeffs[j] * xi_q**j`` with integer (possibly negative) weights."""

    q: int
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        check_modulus(self.q)
        coeffs = tuple(int(c) for c in self.coeffs)
        if len(coeffs) != self.q:
            raise ValidationError(
                f"expected {self.q} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def zero(cls, q: int) -> CyclotomicSum:
        return cls(q, (0,) * q)

    @classmethod
    def from_exponents(cls, q: int, exponents: Iterable[int]) -> CyclotomicSum:
        coeffs = [0] * q
        for e in exponents:
            coeffs[e % q] += 1
        return cls(q, tuple(coeffs))

    def add_term(self, exponent: int, weight: int = 1) -> CyclotomicSum:
        coeffs = list(self.coeffs)
        coeffs[exponent % self.q] += weight
        return CyclotomicSum(self.q, tuple(coeffs))

    def __add__(self, other: CyclotomicSum) -> CyclotomicSum:
        self._same_q(other)
        return CyclotomicSum(self.q, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: CyclotomicSum) -> CyclotomicSum:
        self._same_q(other)
        return CyclotomicSum(self.q, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def _same_q(self, other: CyclotomicSum) -> None:
        if self.q != other.q:
            raise ValidationError(f"cannot combine sums over q={self.q} and q={other.q}")

    def conjugate(self) -> CyclotomicSum:
        # conj(xi**j) = xi**(q-j)
        q = self.q
        return CyclotomicSum(q, tuple(self.coeffs[(q - j) % q] for j in range(q)))

    def is_zero(self) -> bool:
        return is_zero(self)

    def to_complex(self) -> complex:
        re, im = to_complex(self)
        return complex(re, im)

    def __str__(self) -> str:
        terms = [f"{c}*xi^{j}" for j, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) if terms else "0"


def add_term(s: CyclotomicSum, exponent: int, weight: int) -> CyclotomicSum:
    return s.add_term(exponent, weight)


def is_zero(s: CyclotomicSum) -> bool:
    """Exact vanishing test by divisibility by the q-th cyclotomic polynomial."""
    poly = IntPolynomial(s.coeffs)
    if poly.is_zero():
        return True
    _, rem = poly.divmod_monic(cyclotomic_polynomial(s.q))
    return rem.is_zero()


def to_complex(s: CyclotomicSum) -> tuple[float, float]:
    re = im = 0.0
    for j, c in enumerate(s.coeffs):
        if c:
            angle = 2.0 * math.pi * j / s.q
            re += c * math.cos(angle)
            im += c * math.sin(angle)
    return re, im


def magnitude_of_real_integer(s: CyclotomicSum) -> int | None:
    """Return ``c`` if the sum equals the integer constant ``c``, else None.

    The candidate is the rounded real part; the residual ``s - c`` is then
    tested exactly.
    """
    re, _ = to_complex(s)
    c = round(re)
    if is_zero(s.add_term(0, -c)):
        return c
    return None


def numeric_is_zero(s: CyclotomicSum, rel: float = 1e-6) -> bool:
    """Tolerance test used only to cross-check :func:`is_zero`."""
    scale = sum(abs(c) for c in s.coeffs) + 1
    return abs(complex(*to_complex(s))) < rel * scale


@lru_cache(maxsize=None)
def residue_matrix(q: int):
    """Integer matrix whose row ``j`` is ``x**j mod Phi_q`` (length ``phi(q)``).

    A coefficient vector ``c`` gives a vanishing sum iff ``c @ R == 0``.
    """
    phi = cyclotomic_polynomial(q)
    rows = []
    for j in range(q):
        _, rem = IntPolynomial((0,) * j + (1,)).divmod_monic(phi)
        rows.append(list(rem.coeffs) + [0] * (phi.degree - len(rem.coeffs)))
    out = np.array(rows, dtype=object)
    out.setflags(write=False)
    return out


def vanishing_rows(counts) -> np.ndarray:
    """Exact :func:`is_zero` for each row of an integer ``(rows, q)`` array."""
    counts = np.asarray(counts)
    q = counts.shape[1]
    R = residue_matrix(q)
    bound = int(np.abs(counts).max(initial=0)) * q * max((abs(int(v)) for v in R.flat), default=0)
    if bound < 2**62:
        reduced = counts.astype(np.int64) @ R.astype(np.int64)
    else:
        reduced = counts.astype(object) @ R
    return ~np.any(reduced != 0, axis=1)
