"""Two-dimensional extended generalized Boolean functions (EGBFs).

An EGBF maps row digits ``x = (x_1..x_m)`` over ``Z_b1`` and column digits
``y = (y_1..y_n)`` over ``Z_b2`` to ``Z_q``.  Materializing it gives the
``b1**m x b2**n`` array whose ``(g, i)`` entry is ``f(digits(g), digits(i))``.

Two evaluation routes exist on purpose: the scalar ``eval_t1``/``eval_t2``
functions follow the defining formula term by term, while
``Theorem1Function.to_array``/``Theorem2Function.to_array`` compute the whole
array with numpy digit planes.  Tests compare the two.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .core import (
    MAX_CELLS,
    MAX_Q,
    CapacityError,
    DigitVector,
    ValidationError,
    check_modulus,
    index_to_digits,
    unified_digits,
    units,
)


class ExponentArray:
    """An ``L1 x L2`` integer matrix over ``Z_q``; the complex array is ``xi_q**entries``."""

    __slots__ = ("q", "entries")

    def __init__(self, q: int, entries) -> None:
        self.q = check_modulus(q)
        arr = np.array(entries, dtype=np.int64)
        if arr.ndim != 2 or 0 in arr.shape:
            raise ValidationError(f"exponent array must be a nonempty 2-D matrix, got shape {arr.shape}")
        if arr.min() < 0 or arr.max() >= q:
            raise ValidationError(f"exponent array entries must lie in [0, {q})")
        arr.setflags(write=False)
        self.entries = arr

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    def tolist(self) -> list[list[int]]:
        return self.entries.tolist()

    def to_complex(self) -> np.ndarray:
        return np.exp(2j * np.pi * self.entries / self.q)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExponentArray):
            return NotImplemented
        return self.q == other.q and np.array_equal(self.entries, other.entries)

    def __hash__(self) -> int:
        return hash((self.q, self.entries.shape, self.entries.tobytes()))

    def __repr__(self) -> str:
        return f"ExponentArray(q={self.q}, entries={self.entries.tolist()})"


def _tuples(rows) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(v) for v in r) for r in rows)


def _check_chains(chains, universe: int, label: str) -> list[str]:
    errs = []
    seen: list[int] = []
    for alpha, chain in enumerate(chains, start=1):
        if not chain:
            errs.append(f"{label} block {alpha} is empty")
        seen.extend(chain)
    if any(not 1 <= v <= universe for v in seen):
        errs.append(f"{label} indices must lie in [1, {universe}]")
    if len(seen) != len(set(seen)):
        errs.append(f"{label} blocks must be pairwise disjoint")
    if set(seen) != set(range(1, universe + 1)):
        errs.append(f"{label} blocks must cover every index 1..{universe}")
    return errs


def _check_coeff_shapes(chains, d, b: int, label: str) -> list[str]:
    errs = []
    if len(d) != len(chains):
        return [f"{label} needs one coefficient list per block ({len(chains)}), got {len(d)}"]
    allowed = set(units(b))
    for alpha, (chain, coeffs) in enumerate(zip(chains, d), start=1):
        if len(coeffs) != max(len(chain) - 1, 0):
            errs.append(f"{label} block {alpha} needs {max(len(chain) - 1, 0)} coefficients, got {len(coeffs)}")
        bad = [c for c in coeffs if c not in allowed]
        if bad:
            errs.append(f"{label} coefficients {bad} in block {alpha}: d not in U({b})")
    return errs


def _check_affine(table, q: int, width: int, label: str) -> list[str]:
    if len(table) != q - 1 or any(len(row) != width for row in table):
        return [f"{label} must be a {q - 1} x {width} table (powers 1..q-1 by variable)"]
    if any(not 0 <= v < q for row in table for v in row):
        return [f"{label} entries must lie in Z_{q}"]
    return []


def _default_d(chains) -> tuple[tuple[int, ...], ...]:
    return tuple((1,) * max(len(c) - 1, 0) for c in chains)


@dataclass(frozen=True)
class Theorem1Function:
    """Chain-structured EGBF on ``m + n`` variables sharing one digit base ``b``.

    Variables are numbered ``z_1..z_{m+n}`` with ``z_l = x_l`` for ``l <= m``
    and ``z_{m+j} = y_j``.  ``partitions`` lists each chain as an ordered
    tuple of 1-based variable indices; ``d[alpha]`` holds the ``t_alpha - 1``
    coefficients of the consecutive products along chain ``alpha``.
    ``lam[gamma - 1][l - 1]`` multiplies ``z_l**gamma``.
    """

    b: int
    m: int
    n: int
    q: int
    partitions: tuple[tuple[int, ...], ...]
    d: tuple[tuple[int, ...], ...] | None = None
    lam: tuple[tuple[int, ...], ...] | None = None
    lambda0: int = 0

    def __post_init__(self) -> None:
        parts = _tuples(self.partitions)
        object.__setattr__(self, "partitions", parts)
        object.__setattr__(self, "d", _default_d(parts) if self.d is None else _tuples(self.d))
        width = self.m + self.n
        lam = ((0,) * width,) * (self.q - 1) if self.lam is None else _tuples(self.lam)
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "lambda0", int(self.lambda0))

    @property
    def k(self) -> int:
        return len(self.partitions)

    @property
    def heads(self) -> tuple[int, ...]:
        return tuple(chain[0] for chain in self.partitions)

    @property
    def shape(self) -> tuple[int, int]:
        return self.b**self.m, self.b**self.n

    def violations(self) -> list[str]:
        errs = []
        if self.q < 2 or self.q > MAX_Q:
            return [f"q must lie in [2, {MAX_Q}]"]
        if self.b < 2:
            errs.append("b must be at least 2")
        if self.m < 1:
            errs.append("m must be at least 1")
        if self.n < 0:
            errs.append("n must be nonnegative")
        if errs:
            return errs
        if self.q % self.b:
            errs.append(f"b={self.b} must divide q={self.q}")
        if not 1 <= self.k <= self.m + self.n:
            errs.append(f"k={self.k} must satisfy 1 <= k <= m+n={self.m + self.n}")
        if self.b ** (self.m + self.n) > MAX_CELLS:
            errs.append(f"array of {self.b ** (self.m + self.n)} cells exceeds the {MAX_CELLS}-cell bound")
        errs += _check_chains(self.partitions, self.m + self.n, "partition")
        errs += _check_coeff_shapes(self.partitions, self.d, self.b, "chain")
        errs += _check_affine(self.lam, self.q, self.m + self.n, "lambda")
        if not 0 <= self.lambda0 < self.q:
            errs.append(f"lambda0 must lie in Z_{self.q}")
        return errs

    def variable_planes(self) -> list[np.ndarray]:
        """``planes[l-1]`` is the ``L1 x L2`` array of the value of ``z_l``."""
        return digit_planes(self.b, self.m, self.b, self.n)

    def to_array(self) -> ExponentArray:
        _require_valid(self)
        planes = self.variable_planes()
        acc = _chain_sum(planes, self.partitions, self.d, self.q // self.b)
        acc = acc + _affine_sum(planes, self.lam, self.b, self.q)
        return ExponentArray(self.q, (acc + self.lambda0) % self.q)


@dataclass(frozen=True)
class Theorem2Function:
    """EGBF with independent row (base ``b1``) and column (base ``b2``) chain systems.

    ``x_partitions`` chain the row variables ``x_1..x_m`` and ``y_partitions``
    the column variables ``y_1..y_n`` (both 1-based within their own family).
    ``lam`` is ``(q-1) x m`` and ``nu`` is ``(q-1) x n``.
    """

    b1: int
    b2: int
    m: int
    n: int
    q: int
    x_partitions: tuple[tuple[int, ...], ...]
    y_partitions: tuple[tuple[int, ...], ...]
    d: tuple[tuple[int, ...], ...] | None = None
    d_prime: tuple[tuple[int, ...], ...] | None = None
    lam: tuple[tuple[int, ...], ...] | None = None
    nu: tuple[tuple[int, ...], ...] | None = None
    lambda0: int = 0

    def __post_init__(self) -> None:
        xp, yp = _tuples(self.x_partitions), _tuples(self.y_partitions)
        object.__setattr__(self, "x_partitions", xp)
        object.__setattr__(self, "y_partitions", yp)
        object.__setattr__(self, "d", _default_d(xp) if self.d is None else _tuples(self.d))
        object.__setattr__(self, "d_prime", _default_d(yp) if self.d_prime is None else _tuples(self.d_prime))
        lam = ((0,) * self.m,) * (self.q - 1) if self.lam is None else _tuples(self.lam)
        nu = ((0,) * self.n,) * (self.q - 1) if self.nu is None else _tuples(self.nu)
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "nu", nu)
        object.__setattr__(self, "lambda0", int(self.lambda0))

    @property
    def k1(self) -> int:
        return len(self.x_partitions)

    @property
    def k2(self) -> int:
        return len(self.y_partitions)

    @property
    def shape(self) -> tuple[int, int]:
        return self.b1**self.m, self.b2**self.n

    def violations(self) -> list[str]:
        errs = []
        if self.q < 2 or self.q > MAX_Q:
            return [f"q must lie in [2, {MAX_Q}]"]
        if self.b1 < 2 or self.b2 < 2:
            errs.append("b1 and b2 must be at least 2")
        if self.m < 1 or self.n < 1:
            errs.append("m and n must be at least 1")
        if errs:
            return errs
        for name, b in (("b1", self.b1), ("b2", self.b2)):
            if self.q % b:
                errs.append(f"{name}={b} must divide q={self.q}")
        if not 1 <= self.k1 <= self.m:
            errs.append(f"k1={self.k1} must satisfy 1 <= k1 <= m={self.m}")
        if not 1 <= self.k2 <= self.n:
            errs.append(f"k2={self.k2} must satisfy 1 <= k2 <= n={self.n}")
        if self.b1**self.m * self.b2**self.n > MAX_CELLS:
            errs.append(f"array exceeds the {MAX_CELLS}-cell bound")
        errs += _check_chains(self.x_partitions, self.m, "x partition")
        errs += _check_chains(self.y_partitions, self.n, "y partition")
        errs += _check_coeff_shapes(self.x_partitions, self.d, self.b1, "x chain")
        errs += _check_coeff_shapes(self.y_partitions, self.d_prime, self.b2, "y chain")
        errs += _check_affine(self.lam, self.q, self.m, "lambda")
        errs += _check_affine(self.nu, self.q, self.n, "nu")
        if not 0 <= self.lambda0 < self.q:
            errs.append(f"lambda0 must lie in Z_{self.q}")
        return errs

    def variable_planes(self) -> tuple[list[np.ndarray], list[np.ndarray]]:
        planes = digit_planes(self.b1, self.m, self.b2, self.n)
        return planes[: self.m], planes[self.m:]

    def to_array(self) -> ExponentArray:
        _require_valid(self)
        xs, ys = self.variable_planes()
        q = self.q
        acc = _chain_sum(xs, self.x_partitions, self.d, q // self.b1)
        acc = acc + _chain_sum(ys, self.y_partitions, self.d_prime, q // self.b2)
        acc = acc + _affine_sum(xs, self.lam, self.b1, q) + _affine_sum(ys, self.nu, self.b2, q)
        return ExponentArray(q, (acc + self.lambda0) % q)


def _require_valid(fn) -> None:
    errs = fn.violations()
    if errs:
        raise ValidationError("; ".join(errs))


def digit_planes(b1: int, m: int, b2: int, n: int) -> list[np.ndarray]:
    """Digit-value planes ``[x_1..x_m, y_1..y_n]``, each of shape ``(b1**m, b2**n)``."""
    rows, cols = b1**m, b2**n
    if rows * cols > MAX_CELLS:
        raise CapacityError(f"{rows}x{cols} array exceeds the {MAX_CELLS}-cell bound")
    g = np.arange(rows, dtype=np.int64)[:, None]
    i = np.arange(cols, dtype=np.int64)[None, :]
    planes = [np.broadcast_to((g // b1**p) % b1, (rows, cols)) for p in range(m)]
    planes += [np.broadcast_to((i // b2**p) % b2, (rows, cols)) for p in range(n)]
    return planes


def _chain_sum(planes, chains, d, scale: int) -> np.ndarray:
    acc = np.zeros(planes[0].shape if planes else (1, 1), dtype=np.int64)
    for chain, coeffs in zip(chains, d):
        for beta, coeff in enumerate(coeffs):
            acc = acc + coeff * planes[chain[beta] - 1] * planes[chain[beta + 1] - 1]
    return scale * acc


def _affine_sum(planes, table, b: int, q: int) -> np.ndarray:
    acc = np.zeros(planes[0].shape, dtype=np.int64)
    for gamma, row in enumerate(table, start=1):
        powers = np.array([pow(z, gamma, q) for z in range(b)], dtype=np.int64)
        for plane, coeff in zip(planes, row):
            if coeff:
                acc = acc + coeff * powers[plane]
    return acc % q


def _check_digits(digits: DigitVector, base: int, length: int, what: str) -> None:
    if digits.base != base or len(digits) != length:
        raise ValidationError(
            f"{what} digits must be {length} base-{base} digits, "
            f"got {len(digits)} base-{digits.base} digits")


def _monomial_total(table, values: Sequence[int]) -> int:
    total = 0
    for gamma, row in enumerate(table, start=1):
        for coeff, z in zip(row, values):
            total += coeff * z**gamma
    return total


def _chain_total(chains, d, values: Sequence[int]) -> int:
    total = 0
    for chain, coeffs in zip(chains, d):
        for beta in range(len(chain) - 1):
            total += coeffs[beta] * values[chain[beta] - 1] * values[chain[beta + 1] - 1]
    return total


def eval_t1(fn: Theorem1Function, g_digits: DigitVector, i_digits: DigitVector) -> int:
    """Value of a chain EGBF at one ``(row, column)`` digit pair."""
    _check_digits(g_digits, fn.b, fn.m, "row")
    _check_digits(i_digits, fn.b, fn.n, "column")
    z = unified_digits(g_digits, i_digits).digits
    total = (fn.q // fn.b) * _chain_total(fn.partitions, fn.d, z)
    total += _monomial_total(fn.lam, z) + fn.lambda0
    return total % fn.q


def eval_t2(fn: Theorem2Function, g_digits: DigitVector, i_digits: DigitVector) -> int:
    _check_digits(g_digits, fn.b1, fn.m, "row")
    _check_digits(i_digits, fn.b2, fn.n, "column")
    x, y = g_digits.digits, i_digits.digits
    total = (fn.q // fn.b1) * _chain_total(fn.x_partitions, fn.d, x)
    total += (fn.q // fn.b2) * _chain_total(fn.y_partitions, fn.d_prime, y)
    total += _monomial_total(fn.lam, x) + _monomial_total(fn.nu, y) + fn.lambda0
    return total % fn.q


Evaluator = Callable[[DigitVector, DigitVector], int]


def materialize(evaluator: Evaluator, b1: int, m: int, b2: int, n: int, *, q: int) -> ExponentArray:
    """Tabulate ``evaluator`` over every row/column digit pair.

    Entry ``(g, i)`` is ``evaluator(digits(g, b1, m), digits(i, b2, n)) mod q``.
    """
    rows, cols = b1**m, b2**n
    if rows * cols > MAX_CELLS:
        raise CapacityError(f"{rows}x{cols} array exceeds the {MAX_CELLS}-cell bound")
    col_digits = [index_to_digits(i, b2, n) for i in range(cols)]
    out = np.empty((rows, cols), dtype=np.int64)
    for g in range(rows):
        gd = index_to_digits(g, b1, m)
        for i, idig in enumerate(col_digits):
            out[g, i] = evaluator(gd, idig) % q
    return ExponentArray(q, out)
