"""Candidate GCAS builders.

Every member of a set is the base EGBF array plus a linear "offset" form in
a few distinguished variables (the chain heads, and one extra variable).
Members are enumerated in lexicographic order of their offset tuples.

Theorem 2's extra offset term is not pinned down unambiguously, so it is
built under an explicit :class:`OffsetStrategy`; :data:`DEFAULT_STRATEGY` is
the one that passes the exhaustive verification sweep on every tuple.
"""

from __future__ import annotations

import enum
import itertools
import warnings
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from .core import ValidationError
from .egbf import ExponentArray, Theorem1Function, Theorem2Function

# Upper bound on members * cells held in memory at once.
MAX_TOTAL_ENTRIES = 2**26


class ParameterError(ValidationError):
    """Construction parameters violate one or more hypotheses."""

    def __init__(self, violations: Sequence[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class DuplicateMembersWarning(UserWarning):
    """A generated set contains repeated arrays (kept, multiset semantics)."""


class OffsetStrategy(enum.Enum):
    AS_PRINTED_UNSCALED = "as-printed"
    AS_PRINTED_SCALED = "as-printed-scaled"
    MIRROR_T1 = "mirror-t1"

    @classmethod
    def parse(cls, value: str | OffsetStrategy) -> OffsetStrategy:
        if isinstance(value, cls):
            return value
        for s in cls:
            if value in (s.value, s.name):
                return s
        raise ValidationError(
            f"unknown offset strategy {value!r}; choose from {[s.value for s in cls]}")


DEFAULT_STRATEGY = OffsetStrategy.MIRROR_T1


@dataclass(frozen=True)
class Theorem1Params:
    fn: Theorem1Function
    N: int

    @property
    def set_size(self) -> int:
        return self.N ** (self.fn.k + 1)


@dataclass(frozen=True)
class Theorem2Params:
    fn: Theorem2Function
    N1: int
    N2: int
    offset_strategy: OffsetStrategy = DEFAULT_STRATEGY

    def __post_init__(self) -> None:
        object.__setattr__(self, "offset_strategy", OffsetStrategy.parse(self.offset_strategy))

    @property
    def set_size(self) -> int:
        return self.N1 ** (self.fn.k1 + 1) * self.N2**self.fn.k2


@dataclass
class ArraySet:
    """Ordered multiset of equally-shaped q-ary arrays.

    ``members`` is an integer array of shape ``(size, rows, cols)``;
    ``labels[j]`` is the offset tuple that produced member ``j`` (or any
    tuple of ints for sets read from disk).
    """

    q: int
    members: np.ndarray
    labels: list[tuple[int, ...]] = field(default_factory=list)

    def __post_init__(self) -> None:
        members = np.asarray(self.members, dtype=np.int64)
        if members.ndim != 3 or members.shape[0] == 0 or 0 in members.shape[1:]:
            raise ValidationError(f"array set needs shape (size, rows, cols), got {members.shape}")
        if members.min() < 0 or members.max() >= self.q:
            raise ValidationError(f"array set entries must lie in [0, {self.q})")
        self.members = members
        if not self.labels:
            self.labels = [(j,) for j in range(len(members))]
        elif len(self.labels) != len(members):
            raise ValidationError("one label per member is required")
        self.labels = [tuple(int(v) for v in lab) for lab in self.labels]

    @classmethod
    def from_arrays(cls, arrays: Sequence[ExponentArray], labels=None) -> ArraySet:
        if not arrays:
            raise ValidationError("an array set needs at least one member")
        qs = {a.q for a in arrays}
        shapes = {a.shape for a in arrays}
        if len(qs) != 1 or len(shapes) != 1:
            raise ValidationError("all members must share q and shape")
        return cls(qs.pop(), np.stack([a.entries for a in arrays]), list(labels or []))

    def __len__(self) -> int:
        return self.members.shape[0]

    def __iter__(self) -> Iterator[ExponentArray]:
        for m in self.members:
            yield ExponentArray(self.q, m)

    def __getitem__(self, j: int) -> ExponentArray:
        return ExponentArray(self.q, self.members[j])

    @property
    def rows(self) -> int:
        return self.members.shape[1]

    @property
    def cols(self) -> int:
        return self.members.shape[2]

    def multiset(self) -> list[tuple[tuple[int, ...], ...]]:
        """Sorted member contents, for order-insensitive comparison."""
        return sorted(tuple(map(tuple, m.tolist())) for m in self.members)

    def duplicate_count(self) -> int:
        flat = self.members.reshape(len(self), -1)
        return len(self) - len(np.unique(flat, axis=0))


def _check_N(q: int, b: int, N: int, name: str) -> list[str]:
    errs = []
    if N < 1 or q % N:
        errs.append(f"{name}={N} must divide q={q}")
    if N < b:
        errs.append(f"{name}={N} must be at least the digit base {b}")
    return errs


def _check_total(size: int, cells: int) -> list[str]:
    if size * cells > MAX_TOTAL_ENTRIES:
        return [f"set of {size} arrays x {cells} cells exceeds the {MAX_TOTAL_ENTRIES}-entry bound"]
    return []


def validate_t1(p: Theorem1Params) -> list[str]:
    """Every violated hypothesis, as human-readable strings; empty means valid.

    A chain head equal to ``m`` is not a violation: the set is still built,
    but the extra offset then repeats a head offset and members repeat (see
    :func:`t1_warnings`).
    """
    errs = p.fn.violations()
    if errs:
        return errs
    errs = _check_N(p.fn.q, p.fn.b, p.N, "N")
    if not errs:
        errs += _check_total(p.set_size, p.fn.b ** (p.fn.m + p.fn.n))
    return errs


def t1_warnings(p: Theorem1Params) -> list[str]:
    if p.fn.m in p.fn.heads:
        return [f"chain head equals m={p.fn.m}: the extra offset repeats a head offset, "
                "so every array appears N times"]
    return []


def _stack_offsets(base: np.ndarray, forms: Sequence[tuple[int, np.ndarray]], radices: Sequence[int], q: int):
    """Add ``sum_j n_j * scale_j * plane_j`` for every ``n`` in the product of ``range(radix_j)``."""
    labels = list(itertools.product(*(range(r) for r in radices)))
    out = np.empty((len(labels),) + base.shape, dtype=np.int64)
    for idx, tup in enumerate(labels):
        acc = base.copy()
        for n_j, (scale, plane) in zip(tup, forms):
            if n_j:
                acc += n_j * scale * plane
        out[idx] = acc % q
    return out, labels


def _finish(q: int, members: np.ndarray, labels, notes: Sequence[str]) -> ArraySet:
    s = ArraySet(q, members, labels)
    dup = s.duplicate_count()
    if dup:
        detail = "; ".join(notes) if notes else "coincident offset forms"
        warnings.warn(f"{dup} repeated member(s) kept as a multiset ({detail})",
                      DuplicateMembersWarning, stacklevel=3)
    return s


def build_t1_set(p: Theorem1Params) -> ArraySet:
    """The ``N**(k+1)`` arrays ``f + (q/N)(sum_a n_a z_{head a} + n_{k+1} z_m)``."""
    errs = validate_t1(p)
    if errs:
        raise ParameterError(errs)
    fn = p.fn
    planes = fn.variable_planes()
    scale = fn.q // p.N
    forms = [(scale, planes[h - 1]) for h in fn.heads] + [(scale, planes[fn.m - 1])]
    members, labels = _stack_offsets(fn.to_array().entries, forms, [p.N] * (fn.k + 1), fn.q)
    return _finish(fn.q, members, labels, t1_warnings(p))


def build_t1_base_set(p: Theorem1Params) -> ArraySet:
    """The ``N**k`` head-offset arrays only (no extra offset variable)."""
    errs = validate_t1(p)
    if errs:
        raise ParameterError(errs)
    fn = p.fn
    planes = fn.variable_planes()
    scale = fn.q // p.N
    forms = [(scale, planes[h - 1]) for h in fn.heads]
    members, labels = _stack_offsets(fn.to_array().entries, forms, [p.N] * fn.k, fn.q)
    return _finish(fn.q, members, labels, [])


def validate_t2(p: Theorem2Params) -> list[str]:
    """Theorem 2 hypotheses plus the index bounds the chosen strategy needs."""
    fn = p.fn
    errs = fn.violations()
    if errs:
        return errs
    errs = _check_N(fn.q, fn.b1, p.N1, "N1") + _check_N(fn.q, fn.b2, p.N2, "N2")
    if p.offset_strategy is not OffsetStrategy.MIRROR_T1:
        extra = fn.k1 + 1
        if extra > fn.m or extra > fn.n:
            errs.append(f"strategy {p.offset_strategy.value} needs variables x_{extra} and y_{extra}, "
                        f"but m={fn.m}, n={fn.n}")
    if not errs:
        errs += _check_total(p.set_size, fn.shape[0] * fn.shape[1])
    return errs


def t2_warnings(p: Theorem2Params) -> list[str]:
    fn = p.fn
    x_heads = {c[0] for c in fn.x_partitions}
    y_heads = {c[0] for c in fn.y_partitions}
    if p.offset_strategy is OffsetStrategy.MIRROR_T1:
        if fn.m in x_heads:
            return [f"x chain head equals m={fn.m}: extra offset repeats a head offset"]
        return []
    extra = fn.k1 + 1
    if extra in x_heads and extra in y_heads:
        return [f"index {extra} is both an x and a y chain head: extra offset is redundant"]
    return []


def build_t2_set(p: Theorem2Params) -> ArraySet:
    """The ``N1**(k1+1) * N2**k2`` arrays of the two-base construction.

    Offset tuples are ``(n_1..n_k1, n_{k1+1}, n'_1..n'_k2)``.  The term
    weighted by ``n_{k1+1}`` is

    * ``as-printed``: ``n (x_{k1+1} + y_{k1+1})`` with no scale,
    * ``as-printed-scaled``: ``(q/N1) n (x_{k1+1} + y_{k1+1})``,
    * ``mirror-t1``: ``(q/N1) n x_m``.
    """
    errs = validate_t2(p)
    if errs:
        raise ParameterError(errs)
    fn = p.fn
    xs, ys = fn.variable_planes()
    s1, s2 = fn.q // p.N1, fn.q // p.N2
    forms = [(s1, xs[c[0] - 1]) for c in fn.x_partitions]
    strategy = p.offset_strategy
    if strategy is OffsetStrategy.MIRROR_T1:
        forms.append((s1, xs[fn.m - 1]))
    else:
        extra = fn.k1
        scale = 1 if strategy is OffsetStrategy.AS_PRINTED_UNSCALED else s1
        forms.append((scale, xs[extra] + ys[extra]))
    forms += [(s2, ys[c[0] - 1]) for c in fn.y_partitions]
    radices = [p.N1] * (fn.k1 + 1) + [p.N2] * fn.k2
    members, labels = _stack_offsets(fn.to_array().entries, forms, radices, fn.q)
    return _finish(fn.q, members, labels, t2_warnings(p))
