"""Association schemes given by color matrices.

A scheme on ``X = {0, ..., n-1}`` is stored as an ``n x n`` integer matrix
whose ``(x, y)`` entry names the basis relation containing ``(x, y)``.
Colors are the consecutive integers ``0 .. s-1`` and color 0 is the
diagonal.  Files that use any other convention are rejected.

Text format::

    # optional comments
    n s
    c00 c01 ... c0(n-1)
    ...
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .errors import (
    InconsistentIntersection,
    NotReflexive,
    NotTransposeClosed,
    OrderTooSmall,
    SchemeFormatError,
)

__all__ = [
    "Scheme",
    "RelationSet",
    "validate_scheme",
    "is_commutative",
    "is_primitive",
    "is_symmetric",
    "is_thin",
    "membership_in_Sstar",
    "parse_scheme",
    "format_scheme",
    "read_scheme",
    "write_scheme",
]


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Scheme:
    """A validated association scheme.

    Instances are produced by :func:`validate_scheme` and never mutated;
    all array attributes are read-only.
    """

    n: int
    s: int
    color: np.ndarray
    transpose_map: np.ndarray
    valencies: np.ndarray
    intersection: np.ndarray
    name: str = field(default="")

    def adjacency(self, r: int) -> np.ndarray:
        """0/1 adjacency matrix of basis relation ``r``."""
        return (self.color == r).astype(np.int64)

    def adjacency_matrices(self) -> np.ndarray:
        return np.stack([self.adjacency(r) for r in range(self.s)])

    def digest(self) -> str:
        """SHA-256 of the canonical text form (names excluded)."""
        return hashlib.sha256(format_scheme(self, comment=None).encode()).hexdigest()

    def with_name(self, name: str) -> "Scheme":
        return Scheme(self.n, self.s, self.color, self.transpose_map,
                      self.valencies, self.intersection, name)

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return f"<Scheme{label} n={self.n} s={self.s}>"


@dataclass(frozen=True)
class RelationSet:
    """A binary relation on X, with its decomposition into basis relations.

    ``colors`` is ``None`` when the relation is not a union of basis
    relations.
    """

    indicator: np.ndarray
    colors: Optional[frozenset] = None

    @property
    def in_Sstar(self) -> bool:
        return self.colors is not None

    def is_equivalence(self) -> bool:
        return _is_equivalence(np.asarray(self.indicator, dtype=bool))


def _is_equivalence(rel: np.ndarray) -> bool:
    if not rel.diagonal().all() or not (rel == rel.T).all():
        return False
    r = rel.astype(np.int64)
    return bool(((r @ r > 0) <= rel).all())


def _transpose_map(color: np.ndarray, s: int) -> np.ndarray:
    sigma = np.full(s, -1, dtype=np.int64)
    flat, flat_t = color.ravel(), color.T.ravel()
    for r in range(s):
        images = np.unique(flat_t[flat == r])
        if len(images) != 1:
            raise NotTransposeClosed(
                f"transpose of color {r} meets colors {images.tolist()}")
        sigma[r] = images[0]
    return sigma


def _intersection_numbers(color: np.ndarray, s: int) -> np.ndarray:
    """Intersection tensor c[r, s, t], checked on every pair (x, y)."""
    n = color.shape[0]
    c = np.zeros((s, s, s), dtype=np.int64)
    witness = {}
    for x in range(n):
        for y in range(n):
            t = int(color[x, y])
            if t not in witness:
                witness[t] = (x, y)
        if len(witness) == s:
            break
    # sorted key columns for the witness pairs; key = r * s + s'
    expected = np.empty((n, s), dtype=np.int64)
    for t, (x, y) in witness.items():
        keys = color[x, :] * s + color[:, y]
        expected[:, t] = np.sort(keys)
        counts = np.bincount(keys, minlength=s * s).reshape(s, s)
        c[:, :, t] = counts
    for x in range(n):
        keys = color[x, :][:, None] * s + color  # keys[z, y]
        keys.sort(axis=0)
        ok = (keys == expected[:, color[x, :]]).all(axis=0)
        if not ok.all():
            y = int(np.flatnonzero(~ok)[0])
            t = int(color[x, y])
            x0, y0 = witness[t]
            got = np.bincount(color[x, :] * s + color[:, y],
                              minlength=s * s).reshape(s, s)
            r, s2 = (int(v) for v in np.argwhere(got != c[:, :, t])[0])
            raise InconsistentIntersection(
                f"c[{r}][{s2}][{t}] is {c[r, s2, t]} at {(x0, y0)} but "
                f"{got[r, s2]} at {(x, y)}",
                witnesses=((x0, y0), (x, y), (r, s2, t)),
            )
    return c


def validate_scheme(color_matrix, name: str = "") -> Scheme:
    """Check the scheme axioms and return a populated :class:`Scheme`.

    Raises ``NotTransposeClosed``, ``NotReflexive`` or
    ``InconsistentIntersection`` (with witness pairs) on failure, and
    ``SchemeFormatError`` if the colors are not ``0 .. s-1``.
    """
    color = np.array(color_matrix, dtype=np.int64)
    if color.ndim != 2 or color.shape[0] != color.shape[1] or color.shape[0] < 1:
        raise SchemeFormatError(f"expected a non-empty square matrix, got shape {color.shape}")
    n = color.shape[0]
    if color.min() < 0:
        raise SchemeFormatError("negative color index")
    s = int(color.max()) + 1
    present = np.zeros(s, dtype=bool)
    present[color.ravel()] = True
    if not present.all():
        missing = np.flatnonzero(~present).tolist()
        raise SchemeFormatError(f"colors are not consecutive; missing {missing}")

    sigma = _transpose_map(color, s)
    diag = np.eye(n, dtype=bool)
    if not ((color == 0) == diag).all():
        raise NotReflexive("color 0 must be exactly the diagonal")

    c = _intersection_numbers(color, s)
    valencies = np.array([c[r, sigma[r], 0] for r in range(s)], dtype=np.int64)
    return Scheme(n, s, _frozen(color), _frozen(sigma), _frozen(valencies),
                  _frozen(c), name)


def is_commutative(sch: Scheme) -> bool:
    c = sch.intersection
    return bool((c == c.transpose(1, 0, 2)).all())


def is_symmetric(sch: Scheme) -> bool:
    return bool((sch.transpose_map == np.arange(sch.s)).all())


def is_thin(sch: Scheme) -> bool:
    return bool((sch.valencies == 1).all())


def is_primitive(sch: Scheme) -> bool:
    """True iff every non-reflexive basis graph ``r | r*`` is connected.

    This agrees with the definition through equivalence relations in S*:
    the connected components of ``r | r*`` form an equivalence relation
    that is a union of basis relations (reachability in k steps is a union
    of the relations occurring in products of ``A_r`` and ``A_r*``), so a
    disconnected graph yields a proper non-trivial one.  Conversely a proper
    equivalence relation ``E`` in S* other than the diagonal contains some
    ``r != 0``, and the graph of ``r`` stays inside the classes of ``E``.
    """
    if sch.n < 2:
        raise OrderTooSmall("primitivity needs order >= 2")
    for r in range(1, sch.s):
        adj = (sch.color == r) | (sch.color == sch.transpose_map[r])
        ncomp, _ = connected_components(csr_matrix(adj), directed=False)
        if ncomp != 1:
            return False
    return True


def membership_in_Sstar(sch: Scheme, indicator) -> RelationSet:
    """Decompose a 0/1 matrix as a union of basis relations, if possible."""
    ind = np.asarray(indicator)
    if ind.shape != (sch.n, sch.n):
        raise ValueError(f"indicator has shape {ind.shape}, expected {(sch.n, sch.n)}")
    if not np.isin(ind, (0, 1)).all():
        raise ValueError("indicator must be a 0/1 matrix")
    ind = ind.astype(np.int8)
    flat_c = sch.color.ravel()
    ones = np.bincount(flat_c, weights=ind.ravel(), minlength=sch.s)
    sizes = np.bincount(flat_c, minlength=sch.s)
    if ((ones != 0) & (ones != sizes)).any():
        return RelationSet(_frozen(ind), None)
    return RelationSet(_frozen(ind), frozenset(np.flatnonzero(ones).tolist()))


# ---- text format ----------------------------------------------------------


def parse_scheme(text: str, name: str = "") -> Scheme:
    tokens = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            tokens.append(line.split())
    if not tokens:
        raise SchemeFormatError("empty scheme file")
    try:
        n, s = (int(v) for v in tokens[0])
        rows = [[int(v) for v in row] for row in tokens[1:]]
    except ValueError as exc:
        raise SchemeFormatError(f"malformed scheme file: {exc}") from None
    if len(rows) != n or any(len(r) != n for r in rows):
        raise SchemeFormatError(f"expected {n} rows of {n} entries")
    sch = validate_scheme(rows, name=name)
    if sch.s != s:
        raise SchemeFormatError(f"header says s={s} but matrix uses {sch.s} colors")
    return sch


def format_scheme(sch: Scheme, comment: Optional[str] = "") -> str:
    lines = []
    if comment is not None and (comment or sch.name):
        lines.append(f"# {comment or sch.name}")
    lines.append(f"{sch.n} {sch.s}")
    width = len(str(sch.s - 1))
    for row in sch.color:
        lines.append(" ".join(str(int(v)).rjust(width) for v in row))
    return "\n".join(lines) + "\n"


def read_scheme(path, name: Optional[str] = None) -> Scheme:
    with open(path) as fh:
        return parse_scheme(fh.read(), name=name if name is not None else str(path))


def write_scheme(sch: Scheme, path) -> None:
    with open(path, "w") as fh:
        fh.write(format_scheme(sch))


def unions(sch: Scheme, colors: Iterable[int]) -> np.ndarray:
    """Indicator of the union of the given basis relations."""
    return np.isin(sch.color, list(colors)).astype(np.int8)
