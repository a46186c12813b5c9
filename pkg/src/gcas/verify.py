"""Exact 2-D aperiodic autocorrelation and the GCAS decision procedure.

For q-ary arrays the autocorrelation at a shift is a sum of powers of
``xi_q``, so it is held as a :class:`~gcas.cyclotomic.CyclotomicSum`: a
histogram of exponent differences ``c[g+u1, i+u2] - c[g, i] mod q`` over
the overlapping positions.  No floating point is involved in any verdict.

The verifier only ever looks at exponent arrays; it does not know or use
how a set was constructed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, NamedTuple

import numpy as np

from .construct import ArraySet
from .core import GCASError, ValidationError
from .cyclotomic import CyclotomicSum, magnitude_of_real_integer, vanishing_rows
from .egbf import ExponentArray


class ShiftRangeError(GCASError, ValueError):
    """A shift lies outside ``(-L1, L1) x (-L2, L2)``."""


class Shift(NamedTuple):
    u1: int
    u2: int


def _overlap(length: int, u: int) -> tuple[slice, slice]:
    # (shifted, base) slices along one axis
    if u >= 0:
        return slice(u, length), slice(0, length - u)
    return slice(0, length + u), slice(-u, length)


def _check_shift(rows: int, cols: int, s: Shift) -> Shift:
    u1, u2 = s
    if not (-rows < u1 < rows and -cols < u2 < cols):
        raise ShiftRangeError(f"shift {tuple(s)} outside (-{rows}, {rows}) x (-{cols}, {cols})")
    return Shift(int(u1), int(u2))


def _counts(stack: np.ndarray, q: int, s: Shift) -> np.ndarray:
    """Exponent-difference histogram over a ``(members, rows, cols)`` stack."""
    r_shift, r_base = _overlap(stack.shape[1], s.u1)
    c_shift, c_base = _overlap(stack.shape[2], s.u2)
    # differences lie in (-q, q); offset by q and fold instead of reducing mod q
    diff = stack[:, r_shift, c_shift] - stack[:, r_base, c_base]
    diff += q
    counts = np.bincount(diff.ravel(), minlength=2 * q)
    return counts[:q] + counts[q:]


def _histogram(stack: np.ndarray, q: int, s: Shift) -> CyclotomicSum:
    return CyclotomicSum(q, tuple(_counts(stack, q, s).tolist()))


def _compact(members: np.ndarray, q: int) -> np.ndarray:
    dtype = np.int16 if 2 * q < 2**15 else np.int32
    return np.ascontiguousarray(members, dtype=dtype)


def aacf(c: ExponentArray, s: Shift | tuple[int, int]) -> CyclotomicSum:
    """Autocorrelation ``sum_{g,i} xi**(c[g+u1, i+u2] - c[g, i])`` over in-range cells."""
    s = _check_shift(c.rows, c.cols, Shift(*s))
    return _histogram(_compact(c.entries[None], c.q), c.q, s)


def aacf_set_sum(array_set: ArraySet, s: Shift | tuple[int, int]) -> CyclotomicSum:
    s = _check_shift(array_set.rows, array_set.cols, Shift(*s))
    return _histogram(_compact(array_set.members, array_set.q), array_set.q, s)


def half_plane_shifts(rows: int, cols: int) -> Iterator[Shift]:
    """Shifts with ``u1 > 0``, or ``u1 == 0`` and ``u2 >= 0``; the rest are conjugates."""
    for u2 in range(cols):
        yield Shift(0, u2)
    for u1 in range(1, rows):
        for u2 in range(-cols + 1, cols):
            yield Shift(u1, u2)


def all_shifts(rows: int, cols: int) -> Iterator[Shift]:
    for u1 in range(-rows + 1, rows):
        for u2 in range(-cols + 1, cols):
            yield Shift(u1, u2)


def aacf_grid(array_set: ArraySet, exploit_symmetry: bool = True) -> Iterator[tuple[Shift, CyclotomicSum]]:
    """Set autocorrelation sum at every shift, in lexicographic shift order.

    With ``exploit_symmetry`` only half the shifts are computed and the
    others are filled in as conjugates (``rho(-u) = conj(rho(u))``).
    """
    q, rows, cols = array_set.q, array_set.rows, array_set.cols
    stack = _compact(array_set.members, q)
    if not exploit_symmetry:
        for s in all_shifts(rows, cols):
            yield s, _histogram(stack, q, s)
        return
    half = {s: _histogram(stack, q, s) for s in half_plane_shifts(rows, cols)}
    for s in all_shifts(rows, cols):
        if s in half:
            yield s, half[s]
        else:
            yield s, half[Shift(-s.u1, -s.u2)].conjugate()


@dataclass
class VerificationReport:
    set_size: int
    rows: int
    cols: int
    q: int
    peak: int | None
    nonzero_shifts: list[tuple[Shift, CyclotomicSum]] = field(default_factory=list)
    is_gcas: bool = False
    shifts_checked: int = 0
    strategy_notes: str = ""

    @property
    def expected_peak(self) -> int:
        return self.set_size * self.rows * self.cols

    def summary(self) -> str:
        verdict = "yes" if self.is_gcas else "no"
        lines = [
            f"arrays={self.set_size} shape={self.rows}x{self.cols} q={self.q}",
            f"peak={self.peak if self.peak is not None else 'non-integer'} (expected {self.expected_peak})",
            f"shifts={(2 * self.rows - 1) * (2 * self.cols - 1)} computed={self.shifts_checked} "
            f"nonzero={len(self.nonzero_shifts)}",
        ]
        for s, value in self.nonzero_shifts:
            lines.append(f"  nonzero at ({s.u1},{s.u2}): {value}")
        if self.strategy_notes:
            lines.append(f"notes: {self.strategy_notes}")
        lines.append(f"GCAS: {verdict} ({self.set_size},{self.rows},{self.cols})")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "set_size": self.set_size,
            "rows": self.rows,
            "cols": self.cols,
            "q": self.q,
            "peak": self.peak,
            "is_gcas": self.is_gcas,
            "nonzero_shifts": [
                {"u1": s.u1, "u2": s.u2, "coeffs": list(v.coeffs)} for s, v in self.nonzero_shifts
            ],
            "strategy_notes": self.strategy_notes,
        }


def check_gcas(array_set: ArraySet, exploit_symmetry: bool = True, notes: str = "") -> VerificationReport:
    """Decide exactly whether ``array_set`` is a Golay complementary array set.

    Every shift in ``(-L1, L1) x (-L2, L2)`` other than the origin must give
    an exactly vanishing sum, and the origin must give ``size * L1 * L2``.
    All offending shifts are listed, sorted lexicographically.
    """
    if not isinstance(array_set, ArraySet):
        raise ValidationError("check_gcas expects an ArraySet")
    q, rows, cols = array_set.q, array_set.rows, array_set.cols
    stack = _compact(array_set.members, q)
    shifts = list(half_plane_shifts(rows, cols) if exploit_symmetry else all_shifts(rows, cols))
    counts = np.stack([_counts(stack, q, s) for s in shifts])
    vanishing = vanishing_rows(counts)
    peak = None
    bad: dict[Shift, CyclotomicSum] = {}
    for s, row, zero in zip(shifts, counts, vanishing):
        if s == (0, 0):
            peak = magnitude_of_real_integer(CyclotomicSum(q, tuple(row.tolist())))
        elif not zero:
            value = CyclotomicSum(q, tuple(row.tolist()))
            bad[s] = value
            if exploit_symmetry:
                bad[Shift(-s.u1, -s.u2)] = value.conjugate()
    report = VerificationReport(
        set_size=len(array_set), rows=rows, cols=cols, q=q, peak=peak,
        nonzero_shifts=sorted(bad.items()), shifts_checked=len(shifts), strategy_notes=notes,
    )
    report.is_gcas = not bad and peak == report.expected_peak
    return report


def check_conjugate_symmetry(c: ExponentArray) -> bool:
    """True iff ``aacf(c, u)`` is the conjugate of ``aacf(c, -u)`` at every shift."""
    for s in all_shifts(c.rows, c.cols):
        if aacf(c, s) != aacf(c, Shift(-s.u1, -s.u2)).conjugate():
            return False
    return True
