"""JSON interchange for construction parameters and array sets, plus CSV export.

Parameter documents are discriminated by ``"theorem"``::

    {"theorem": "t1", "q": 6, "b": 2, "m": 1, "n": 3, "N": 3, "k": 1,
     "partitions": [[4, 1, 2, 3]], "d": [[1, 1, 1]],
     "lambda": [[0, 0, 0, 0], ...], "lambda0": 0}

Array set documents hold ``q``, ``rows``, ``cols``, ``labels`` and
``members`` as row-major integer matrices.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Any

import numpy as np

from .construct import ArraySet, OffsetStrategy, Theorem1Params, Theorem2Params
from .core import GCASError, ValidationError
from .egbf import Theorem1Function, Theorem2Function


class DocumentError(GCASError, ValueError):
    """A document is malformed (not a validation failure of its contents)."""


def _int(doc: dict, key: str, default: Any = ...) -> int:
    if key not in doc:
        if default is ...:
            raise DocumentError(f"missing field {key!r}")
        return default
    value = doc[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise DocumentError(f"field {key!r} must be an integer, got {value!r}")
    return value


def _matrix(doc: dict, key: str, default: Any = ...) -> list[list[int]] | None:
    if key not in doc or doc[key] is None:
        if default is ...:
            raise DocumentError(f"missing field {key!r}")
        return default
    value = doc[key]
    if not isinstance(value, list) or not all(isinstance(row, list) for row in value):
        raise DocumentError(f"field {key!r} must be a list of integer lists")
    for row in value:
        if not all(isinstance(v, int) and not isinstance(v, bool) for v in row):
            raise DocumentError(f"field {key!r} must contain only integers")
    return value


def params_from_doc(doc: dict) -> Theorem1Params | Theorem2Params:
    """Parse a parameter document.

    Raises :class:`DocumentError` for structural problems and
    :class:`ValidationError` when a redundant count disagrees with the
    chain lists it summarizes.
    """
    if not isinstance(doc, dict):
        raise DocumentError("parameter document must be a JSON object")
    theorem = doc.get("theorem")
    if theorem == "t1":
        fn = Theorem1Function(
            b=_int(doc, "b"), m=_int(doc, "m"), n=_int(doc, "n"), q=_int(doc, "q"),
            partitions=_matrix(doc, "partitions"), d=_matrix(doc, "d", None),
            lam=_matrix(doc, "lambda", None), lambda0=_int(doc, "lambda0", 0),
        )
        k = _int(doc, "k", fn.k)
        if k != fn.k:
            raise ValidationError(f"k={k} but {fn.k} partitions were given")
        return Theorem1Params(fn, _int(doc, "N"))
    if theorem == "t2":
        fn = Theorem2Function(
            b1=_int(doc, "b1"), b2=_int(doc, "b2"), m=_int(doc, "m"), n=_int(doc, "n"),
            q=_int(doc, "q"), x_partitions=_matrix(doc, "x_partitions"),
            y_partitions=_matrix(doc, "y_partitions"), d=_matrix(doc, "d", None),
            d_prime=_matrix(doc, "d_prime", None), lam=_matrix(doc, "lambda", None),
            nu=_matrix(doc, "nu", None), lambda0=_int(doc, "lambda0", 0),
        )
        for key, actual in (("k1", fn.k1), ("k2", fn.k2)):
            given = _int(doc, key, actual)
            if given != actual:
                raise ValidationError(f"{key}={given} but {actual} partitions were given")
        strategy = doc.get("strategy", OffsetStrategy.MIRROR_T1.value)
        try:
            strategy = OffsetStrategy.parse(strategy)
        except ValidationError as exc:
            raise DocumentError(str(exc)) from None
        return Theorem2Params(fn, _int(doc, "N1"), _int(doc, "N2"), strategy)
    raise DocumentError(f"'theorem' must be \"t1\" or \"t2\", got {theorem!r}")


def _lists(rows) -> list[list[int]]:
    return [list(r) for r in rows]


def params_to_doc(p: Theorem1Params | Theorem2Params) -> dict:
    fn = p.fn
    if isinstance(p, Theorem1Params):
        return {
            "theorem": "t1", "q": fn.q, "b": fn.b, "m": fn.m, "n": fn.n, "N": p.N, "k": fn.k,
            "partitions": _lists(fn.partitions), "d": _lists(fn.d),
            "lambda": _lists(fn.lam), "lambda0": fn.lambda0,
        }
    return {
        "theorem": "t2", "q": fn.q, "b1": fn.b1, "b2": fn.b2, "m": fn.m, "n": fn.n,
        "N1": p.N1, "N2": p.N2, "k1": fn.k1, "k2": fn.k2,
        "x_partitions": _lists(fn.x_partitions), "y_partitions": _lists(fn.y_partitions),
        "d": _lists(fn.d), "d_prime": _lists(fn.d_prime),
        "lambda": _lists(fn.lam), "nu": _lists(fn.nu), "lambda0": fn.lambda0,
        "strategy": p.offset_strategy.value,
    }


def arrayset_to_doc(s: ArraySet) -> dict:
    return {
        "q": s.q, "rows": s.rows, "cols": s.cols,
        "labels": [list(lab) for lab in s.labels],
        "members": s.members.tolist(),
    }


def arrayset_from_doc(doc: dict) -> ArraySet:
    if not isinstance(doc, dict):
        raise DocumentError("array set document must be a JSON object")
    q, rows, cols = _int(doc, "q"), _int(doc, "rows"), _int(doc, "cols")
    members = doc.get("members")
    if not isinstance(members, list) or not members:
        raise DocumentError("'members' must be a nonempty list of matrices")
    for j, member in enumerate(members):
        if (not isinstance(member, list) or len(member) != rows
                or any(not isinstance(r, list) or len(r) != cols for r in member)):
            raise DocumentError(f"member {j} is not a {rows}x{cols} matrix")
        if any(isinstance(v, bool) or not isinstance(v, int) for r in member for v in r):
            raise DocumentError(f"member {j} must contain only integers")
    labels = doc.get("labels") or []
    if not isinstance(labels, list) or any(not isinstance(lab, list) for lab in labels):
        raise DocumentError("'labels' must be a list of integer lists")
    try:
        return ArraySet(q, np.array(members, dtype=np.int64), labels)
    except ValidationError as exc:
        raise DocumentError(str(exc)) from None


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=None, separators=(",", ":")) + "\n"


def arrayset_to_csv(s: ArraySet) -> str:
    """``q,rows,cols`` header and values, then one flattened member per line."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["q", "rows", "cols"])
    writer.writerow([s.q, s.rows, s.cols])
    for member in s.members:
        writer.writerow(member.ravel().tolist())
    return buf.getvalue()


def format_rows(entries: np.ndarray, q: int) -> list[str]:
    """Rows as digit strings (``"00030003"``) when ``q <= 10``, else comma-separated."""
    if q <= 10:
        return ["".join(str(v) for v in row) for row in entries.tolist()]
    return [",".join(str(v) for v in row) for row in entries.tolist()]
