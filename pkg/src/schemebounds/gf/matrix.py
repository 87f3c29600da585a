"""Dense matrices over F_q and exact rank."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..scheme import Scheme
from ._kernels import rank_tables
from .field import TABLE_LIMIT, FqField

__all__ = ["FqMatrix", "combine", "rank"]


@dataclass(frozen=True, eq=False)
class FqMatrix:
    field: FqField
    entries: np.ndarray

    def __post_init__(self):
        e = np.array(self.entries, dtype=np.int64)
        if e.ndim != 2:
            raise ValueError("FqMatrix needs a 2-d array")
        if e.size and (e.min() < 0 or e.max() >= self.field.q):
            raise ValueError(f"entries must be element codes in 0..{self.field.q - 1}")
        e.setflags(write=False)
        object.__setattr__(self, "entries", e)

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    @classmethod
    def identity(cls, field: FqField, n: int) -> "FqMatrix":
        return cls(field, np.eye(n, dtype=np.int64))

    @classmethod
    def all_ones(cls, field: FqField, n: int) -> "FqMatrix":
        return cls(field, np.ones((n, n), dtype=np.int64))

    @classmethod
    def from_integers(cls, field: FqField, a) -> "FqMatrix":
        """Reduce an integer matrix through Z -> F_p -> F_q."""
        return cls(field, (np.asarray(a, dtype=object) % field.p).astype(np.int64))

    def __eq__(self, other) -> bool:
        if not isinstance(other, FqMatrix):
            return NotImplemented
        return self.field == other.field and np.array_equal(self.entries, other.entries)

    __hash__ = None

    def __add__(self, other: "FqMatrix") -> "FqMatrix":
        return FqMatrix(self.field, self.field.add(self.entries, other.entries))

    def __sub__(self, other: "FqMatrix") -> "FqMatrix":
        return FqMatrix(self.field, self.field.sub(self.entries, other.entries))

    def scale(self, c: int) -> "FqMatrix":
        return FqMatrix(self.field, self.field.mul(c, self.entries))

    def __matmul__(self, other: "FqMatrix") -> "FqMatrix":
        F = self.field
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        if F.f == 1:
            prod = (self.entries @ other.entries) % F.p if F.p < 2**26 else (
                (self.entries.astype(object) @ other.entries.astype(object)) % F.p)
            return FqMatrix(F, np.asarray(prod, dtype=np.int64))
        acc = np.zeros((self.rows, other.cols), dtype=np.int64)
        for k in range(self.cols):
            acc = F.add(acc, F.mul(self.entries[:, k, None], other.entries[None, k, :]))
        return FqMatrix(F, acc)

    @property
    def T(self) -> "FqMatrix":
        return FqMatrix(self.field, self.entries.T)

    def rank(self, stop_at: int | None = None) -> int:
        return rank(self, stop_at)

    def tolist(self) -> list[list[int]]:
        return self.entries.tolist()


def combine(sch: Scheme, field: FqField, coeffs) -> FqMatrix:
    """The matrix ``sum_r coeffs[r] * A_r`` over ``field``."""
    c = np.asarray(coeffs, dtype=np.int64)
    if c.shape != (sch.s,):
        raise ValueError(f"need {sch.s} coefficients, got shape {c.shape}")
    if c.min() < 0 or c.max() >= field.q:
        raise ValueError("coefficients must be element codes of the field")
    return FqMatrix(field, c[sch.color])


def _rank_generic(field: FqField, a: np.ndarray, stop: int) -> int:
    a = a.copy()
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        nz = np.flatnonzero(a[r:, c])
        if not len(nz):
            continue
        i = r + nz[0]
        a[[r, i]] = a[[i, r]]
        a[r] = field.mul(field.inv(a[r, c]), a[r])
        below = a[r + 1:, c]
        if below.any():
            a[r + 1:] = field.sub(a[r + 1:], field.mul(below[:, None], a[r][None, :]))
        r += 1
        if r >= stop or r == rows:
            break
    return min(r, stop)


def rank(mat: FqMatrix, stop_at: int | None = None) -> int:
    """Exact rank by Gaussian elimination.

    With ``stop_at`` the elimination ends as soon as ``stop_at`` independent
    rows are found and ``stop_at`` is returned; a result equal to
    ``stop_at`` therefore means "at least ``stop_at``".
    """
    rows, cols = mat.shape
    full = min(rows, cols)
    stop = full if stop_at is None else max(0, min(int(stop_at), full))
    if stop == 0 or rows == 0 or cols == 0:
        return 0
    F = mat.field
    if F.q <= TABLE_LIMIT:
        add, mul, neg, inv = F.tables
        return int(rank_tables(mat.entries.astype(np.int32), add, mul, neg, inv, stop))
    return _rank_generic(F, mat.entries, stop)
