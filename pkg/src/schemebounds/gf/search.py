"""Exhaustive search for the minimum rank of F_q S outside F_q J.

Coefficient tuples are enumerated one per projective class (the first
nonzero coefficient is 1), skipping the zero tuple and the class of J.
Each candidate is eliminated row by row and abandoned as soon as it cannot
beat the best rank seen so far, so after a low-rank element turns up most
candidates cost only a handful of row reductions.
"""

from __future__ import annotations

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field

import numpy as np

from ..errors import BudgetExceeded, ParameterOutOfRange
from ..scheme import Scheme
from ._kernels import decode_class, naive_min_rank, search_chunk
from .field import TABLE_LIMIT, FqField
from .matrix import combine, rank

__all__ = ["RkMinReport", "rkmin_search", "rkmin_naive", "class_count", "class_representative"]

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 50_000_000
_CHUNK = 1 << 16


@dataclass(frozen=True)
class RkMinReport:
    field: FqField
    rkmin: int
    witness: tuple
    candidates_examined: int
    exhaustive: bool
    classes_total: int = 0
    elapsed: float = dc_field(default=0.0, compare=False)

    def to_dict(self) -> dict:
        return {
            "field": self.field.label(),
            "q": self.field.q,
            "modulus": list(self.field.modulus),
            "rkmin": self.rkmin,
            "witness": list(self.witness),
            "candidates_examined": self.candidates_examined,
            "classes_total": self.classes_total,
            "exhaustive": self.exhaustive,
        }


def class_count(s: int, q: int) -> int:
    """Number of projective classes of nonzero tuples in F_q^s."""
    return (q**s - 1) // (q - 1)


def class_representative(index: int, s: int, q: int) -> tuple:
    coeffs = np.zeros(s, dtype=np.int32)
    decode_class(index, s, q, coeffs)
    return tuple(int(c) for c in coeffs)


def _search_python(color, s, field: FqField, limit: int):
    """Slow path for fields too large for lookup tables."""
    from .matrix import FqMatrix

    n = color.shape[0]
    best, best_index, examined = n + 1, -1, 0
    for index in range(limit):
        c = np.array(class_representative(index, s, field.q), dtype=np.int64)
        if (c == 1).all():
            continue
        examined += 1
        r = rank(FqMatrix(field, c[color]), stop_at=best)
        if r < best:
            best, best_index = r, index
    return best, best_index, examined


def rkmin_search(
    sch: Scheme,
    field: FqField,
    budget: int | None = None,
    threads: int = 1,
    require_exhaustive: bool = False,
) -> RkMinReport:
    """Minimum rank of ``sum a_r A_r`` over tuples not proportional to all-ones.

    ``budget`` caps the number of projective classes scanned (default
    ``DEFAULT_BUDGET``).  When it is too small the best rank found so far is
    returned with ``exhaustive=False``; ``require_exhaustive=True`` raises
    :class:`BudgetExceeded` carrying that report instead.

    The witness is the first class in enumeration order that attains the
    minimum, for any number of threads.
    """
    if sch.s < 2:
        raise ParameterOutOfRange("F S equals F J when s = 1; rk_min is undefined")
    if threads < 1:
        raise ValueError("threads must be positive")
    budget = DEFAULT_BUDGET if budget is None else int(budget)
    if budget < 1:
        raise ValueError("budget must be positive")
    q, s, n = field.q, sch.s, sch.n
    total = class_count(s, q)
    limit = min(total, budget)
    color = np.ascontiguousarray(sch.color, dtype=np.int64)
    t0 = time.perf_counter()

    if q > TABLE_LIMIT:
        best, best_index, examined = _search_python(color, s, field, limit)
    else:
        add, mul, neg, inv = field.tables
        hint = np.array([n], dtype=np.int64)
        chunk = max(_CHUNK, limit // (threads * 64) + 1) if threads > 1 else limit
        starts = list(range(0, limit, chunk))

        def run(start):
            return search_chunk(color, s, q, start, min(chunk, limit - start),
                                add, mul, neg, inv, hint, True)

        if threads > 1 and len(starts) > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                results = list(pool.map(run, starts))
        else:
            results = [run(st) for st in starts]
        examined = sum(int(r[2]) for r in results)
        found = [(int(r[0]), int(r[1])) for r in results if r[1] >= 0]
        best, best_index = min(found) if found else (n + 1, -1)

    elapsed = time.perf_counter() - t0
    if best_index < 0:
        # only possible when the budget admits nothing but the class of J
        witness, best = (), n + 1
    else:
        witness = class_representative(best_index, s, q)
        check = rank(combine(sch, field, witness))
        if check != best:  # pragma: no cover - kernel self-check
            raise AssertionError(f"witness has rank {check}, search said {best}")
    report = RkMinReport(field, best, witness, examined, limit == total, total, elapsed)
    if limit < total:
        log.warning("rk_min search truncated at %d of %d classes", limit, total)
        if require_exhaustive:
            raise BudgetExceeded(
                f"{total} projective classes exceed the budget of {budget}", report)
    return report


def rkmin_naive(sch: Scheme, field: FqField) -> int:
    """Brute-force rk_min over all q^s tuples with full elimination."""
    if field.q > TABLE_LIMIT:
        raise ParameterOutOfRange("naive oracle needs table arithmetic")
    add, mul, neg, inv = field.tables
    return int(naive_min_rank(np.ascontiguousarray(sch.color, dtype=np.int64),
                              sch.s, field.q, add, mul, neg, inv))
