"""Parameter feasibility for 2-D GCAS constructions.

Each source is a closed-form row: a set size and array shape as functions of
a small parameter witness, plus a divisibility condition on the phase
alphabet ``q``.  Only ``Th1`` and ``Th2`` are constructible in this package;
the ``Ref*`` rows are formula-level only.
"""

from __future__ import annotations

import csv
import enum
import io
import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Iterator, Sequence


class Source(enum.Enum):
    Th1 = "Th1"
    Th2 = "Th2"
    Ref11 = "Ref11"
    Ref16 = "Ref16"
    Ref17a = "Ref17a"
    Ref17b = "Ref17b"
    Ref18a = "Ref18a"
    Ref18b = "Ref18b"
    Ref12a = "Ref12a"
    Ref12b = "Ref12b"


OURS = (Source.Th1, Source.Th2)

Q_CONSTRAINT = {
    Source.Th1: "lcm(N,b) | q",
    Source.Th2: "lcm(N1,N2,b1,b2) | q",
    Source.Ref11: "q even",
    Source.Ref16: "q = N",
    Source.Ref17a: "lcm(p1,p2) | q",
    Source.Ref17b: "p | q",
    Source.Ref18a: "lcm(N,b) | q",
    Source.Ref18b: "lcm(N1,N2,b1,b2) | q",
    Source.Ref12a: "lcm(N,b) | q",
    Source.Ref12b: "lcm(N1,N2,b1,b2) | q",
}


@dataclass(frozen=True)
class Bounds:
    max_L1: int = 8
    max_L2: int = 8
    max_set_size: int = 81
    max_q: int = 12

    @classmethod
    def from_dict(cls, doc: dict) -> Bounds:
        unknown = set(doc) - {"max_L1", "max_L2", "max_set_size", "max_q"}
        if unknown:
            raise ValueError(f"unknown catalog bounds: {sorted(unknown)}")
        return cls(**{k: int(v) for k, v in doc.items()})


@dataclass(frozen=True, order=True)
class CatalogRow:
    L1: int
    L2: int
    set_size: int
    q: int
    source: Source
    witness: tuple[tuple[str, int], ...]
    note: str = ""

    @property
    def q_constraint(self) -> str:
        return Q_CONSTRAINT[self.source]

    @property
    def params(self) -> dict[str, int]:
        return dict(self.witness)

    def witness_text(self) -> str:
        return ";".join(f"{k}={v}" for k, v in self.witness)


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


def _exponents(base: int, limit: int, start: int = 0) -> range:
    """Exponents ``e >= start`` with ``base**e <= limit``."""
    e = start
    while base**e <= limit:
        e += 1
    return range(start, e)


def _multiples(div: int, max_q: int) -> range:
    return range(div, max_q + 1, div) if div >= 1 else range(0)


def _row(source: Source, size: int, L1: int, L2: int, q: int, note: str = "", **witness) -> CatalogRow:
    return CatalogRow(L1, L2, size, q, source, tuple(witness.items()), note)


def _single_base(source: Source, b: Bounds) -> Iterator[CatalogRow]:
    # Th1 and Ref18a share the witness (N, b, m, n, k); they differ in set size and in m >= 1
    extra = 1 if source is Source.Th1 else 0
    for base in range(2, max(b.max_L1, b.max_L2) + 1):
        for m in _exponents(base, b.max_L1, 1 if source is Source.Th1 else 0):
            for n in _exponents(base, b.max_L2):
                for N in range(base, b.max_q + 1):
                    for k in range(1, m + n + 1):
                        size = N ** (k + extra)
                        if size > b.max_set_size:
                            break
                        for q in _multiples(lcm(N, base), b.max_q):
                            yield _row(source, size, base**m, base**n, q, N=N, b=base, m=m, n=n, k=k)


def _two_base(source: Source, b: Bounds) -> Iterator[CatalogRow]:
    extra = 1 if source is Source.Th2 else 0
    for b1 in range(2, b.max_L1 + 1):
        for b2 in range(2, b.max_L2 + 1):
            for m in _exponents(b1, b.max_L1, 1):
                for n in _exponents(b2, b.max_L2, 1):
                    for N1, N2 in itertools.product(range(b1, b.max_q + 1), range(b2, b.max_q + 1)):
                        sigma = lcm(N1, N2, b1, b2)
                        if sigma > b.max_q:
                            continue
                        for k1, k2 in itertools.product(range(1, m + 1), range(1, n + 1)):
                            size = N1 ** (k1 + extra) * N2**k2
                            if size > b.max_set_size:
                                continue
                            for q in _multiples(sigma, b.max_q):
                                yield _row(source, size, b1**m, b2**n, q,
                                           N1=N1, N2=N2, b1=b1, b2=b2, m=m, n=n, k1=k1, k2=k2)


def _ref11(b: Bounds) -> Iterator[CatalogRow]:
    for m in _exponents(2, b.max_L1):
        for n in _exponents(2, b.max_L2):
            for k in range(1, m + n + 1):
                if 2**k > b.max_set_size:
                    break
                for q in _multiples(2, b.max_q):
                    yield _row(Source.Ref11, 2**k, 2**m, 2**n, q, m=m, n=n, k=k)


def _ref16(b: Bounds) -> Iterator[CatalogRow]:
    for N in range(2, b.max_q + 1):
        for m in _exponents(N, b.max_L1, 1):
            for n in _exponents(N, b.max_L2, 1):
                for k in range(1, m + n + 1):
                    if N**k > b.max_set_size:
                        break
                    yield _row(Source.Ref16, N**k, N**m, N**n, N, N=N, m=m, n=n, k=k)


def _ref17a(b: Bounds) -> Iterator[CatalogRow]:
    for p1 in filter(_is_prime, range(2, b.max_L1 + 1)):
        for p2 in filter(_is_prime, range(2, b.max_L2 + 1)):
            if lcm(p1, p2) > b.max_q:
                continue
            for m in _exponents(p1, b.max_L1, 1):
                for n in _exponents(p2, b.max_L2, 1):
                    for k1, k2 in itertools.product(range(1, m + 1), range(1, n + 1)):
                        size = p1**k1 * p2**k2
                        if size > b.max_set_size:
                            continue
                        for q in _multiples(lcm(p1, p2), b.max_q):
                            yield _row(Source.Ref17a, size, p1**m, p2**n, q,
                                       p1=p1, p2=p2, m=m, n=n, k1=k1, k2=k2)


def _ref17b(b: Bounds) -> Iterator[CatalogRow]:
    for p in filter(_is_prime, range(2, min(max(b.max_L1, b.max_L2), b.max_q) + 1)):
        for m in _exponents(p, b.max_L1):
            for n in _exponents(p, b.max_L2):
                for k in range(1, m + n + 1):
                    if p**k > b.max_set_size:
                        break
                    for q in _multiples(p, b.max_q):
                        yield _row(Source.Ref17b, p**k, p**m, p**n, q, p=p, m=m, n=n, k=k)


def _eta_values(base: int, exponents: Sequence[int]) -> set[int]:
    """All values of ``sum_j r_j * base**e_j`` with ``r_j`` in ``Z_base``."""
    values = {0}
    for e in exponents:
        values = {v + r * base**e for v in values for r in range(base)}
    return values


def _ref12a(b: Bounds) -> Iterator[CatalogRow]:
    for base in range(2, b.max_L1 + 1):
        for m in _exponents(base, b.max_L1):
            for n in range(1, b.max_L2.bit_length() + 1):
                if base ** (n - 1) > b.max_L2:
                    break
                for k in range(1, n + 1):
                    # r_1..r_{k-1} on b^{n-k+a-1}, r_0 on b^{n-k}
                    exps = [n - k + a - 1 for a in range(1, k)] + [n - k]
                    for eta in sorted(_eta_values(base, exps)):
                        L2 = base ** (n - 1) + eta
                        if L2 > b.max_L2:
                            break
                        for N in range(base, b.max_q + 1):
                            if N**k > b.max_set_size:
                                break
                            for q in _multiples(lcm(N, base), b.max_q):
                                yield _row(Source.Ref12a, N**k, base**m, L2, q,
                                           N=N, b=base, m=m, n=n, k=k, eta=eta)


def _ref12b(b: Bounds) -> Iterator[CatalogRow]:
    for b1 in range(2, b.max_L1 + 1):
        for b2 in range(2, b.max_L2 + 1):
            for m in _exponents(b1, b.max_L1, 1):
                for n in range(1, b.max_L2.bit_length() + 1):
                    if b2 ** (n - 1) > b.max_L2:
                        break
                    for k2 in range(1, n + 1):
                        for phi in range(0, n - k2 + 1):
                            # permutation in the exponent taken as the identity
                            exps = [n - k2 + a - 1 for a in range(1, k2)] + [phi]
                            note = "boundary phi=n-k2" if phi == n - k2 else ""
                            for eta in sorted(_eta_values(b2, exps)):
                                L2 = b2 ** (n - 1) + eta
                                if L2 > b.max_L2:
                                    break
                                yield from _ref12b_sizes(b, b1, b2, m, n, k2, phi, eta, L2, note)


def _ref12b_sizes(b, b1, b2, m, n, k2, phi, eta, L2, note) -> Iterator[CatalogRow]:
    for N1, N2 in itertools.product(range(b1, b.max_q + 1), range(b2, b.max_q + 1)):
        sigma = lcm(N1, N2, b1, b2)
        if sigma > b.max_q:
            continue
        for k1 in range(1, m + 1):
            size = N1**k1 * N2**k2
            if size > b.max_set_size:
                break
            for q in _multiples(sigma, b.max_q):
                yield _row(Source.Ref12b, size, b1**m, L2, q, note, N1=N1, N2=N2, b1=b1, b2=b2,
                           m=m, n=n, k1=k1, k2=k2, phi=phi, eta=eta)


_GENERATORS = {
    Source.Th1: lambda b: _single_base(Source.Th1, b),
    Source.Ref18a: lambda b: _single_base(Source.Ref18a, b),
    Source.Th2: lambda b: _two_base(Source.Th2, b),
    Source.Ref18b: lambda b: _two_base(Source.Ref18b, b),
    Source.Ref11: _ref11,
    Source.Ref16: _ref16,
    Source.Ref17a: _ref17a,
    Source.Ref17b: _ref17b,
    Source.Ref12a: _ref12a,
    Source.Ref12b: _ref12b,
}


def enumerate_feasible(source: Source | str, bounds: Bounds) -> list[CatalogRow]:
    """Every witness row of ``source`` inside ``bounds``, sorted by (L1, L2, set_size)."""
    source = Source(source)
    if min(bounds.max_L1, bounds.max_L2, bounds.max_set_size, bounds.max_q) < 1:
        return []
    rows = {
        r for r in _GENERATORS[source](bounds)
        if r.L1 <= bounds.max_L1 and r.L2 <= bounds.max_L2 and r.set_size <= bounds.max_set_size
    }
    return sorted(rows)


@dataclass(frozen=True)
class Comparison:
    L1: int
    L2: int
    q: int
    shared: tuple[tuple[str, int], ...]
    best: tuple[tuple[str, int], ...]
    size_a: int
    size_b: int

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.size_a, self.size_b)

    @property
    def exceeds(self) -> bool:
        """Our construction strictly beats every prior row at this key."""
        ours = {s.value for s in OURS}
        sources = dict(self.best)
        a_ours = [v for k, v in sources.items() if k in ours]
        prior = [v for k, v in sources.items() if k not in ours]
        return bool(a_ours and prior) and max(a_ours) > max(prior)


def _shared_fields(rows: Iterable[CatalogRow]) -> tuple[str, ...]:
    names = None
    for r in rows:
        fields = {k for k, _ in r.witness}
        names = fields if names is None else names & fields
    return tuple(sorted(names or ()))


def compare(rows_a: Sequence[CatalogRow], rows_b: Sequence[CatalogRow],
            match: Sequence[str] | None = None) -> list[Comparison]:
    """Largest set size per source at each shared key.

    A key is ``(L1, L2, q)`` plus the values of the witness fields in
    ``match``; by default those are the fields every row in both inputs
    carries, so rows are compared under the same parameters.
    """
    if not rows_a or not rows_b:
        return []
    fields = tuple(match) if match is not None else _shared_fields(list(rows_a) + list(rows_b))

    def key(r: CatalogRow):
        p = r.params
        return (r.L1, r.L2, r.q, tuple((f, p[f]) for f in fields))

    def best(rows):
        out: dict = {}
        for r in rows:
            slot = out.setdefault(key(r), {})
            slot[r.source.value] = max(slot.get(r.source.value, 0), r.set_size)
        return out

    best_a, best_b = best(rows_a), best(rows_b)
    table = []
    for k in sorted(best_a.keys() & best_b.keys()):
        merged = dict(best_b[k])
        for src, size in best_a[k].items():
            merged[src] = max(merged.get(src, 0), size)
        table.append(Comparison(k[0], k[1], k[2], k[3], tuple(sorted(merged.items())),
                                max(best_a[k].values()), max(best_b[k].values())))
    return table


def rows_to_csv(rows: Iterable[CatalogRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["source", "set_size", "L1", "L2", "q", "witness"])
    for r in rows:
        writer.writerow([r.source.value, r.set_size, r.L1, r.L2, r.q, r.witness_text()])
    return buf.getvalue()


def render_comparison(table: Sequence[Comparison], label_a: str, label_b: str) -> str:
    """Aligned text table; ``*`` marks keys where our construction is strictly larger."""
    header = ["L1", "L2", "q", "witness", label_a, label_b, "ratio", ""]
    body = []
    for c in table:
        shared = ";".join(f"{k}={v}" for k, v in c.shared)
        body.append([str(c.L1), str(c.L2), str(c.q), shared or "-", str(c.size_a), str(c.size_b),
                     str(c.ratio), "*" if c.exceeds else ""])
    widths = [max(len(r[j]) for r in [header] + body) for j in range(len(header))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in [header] + body]
    return "\n".join(lines)
