"""Central primitive idempotents of the complex adjacency algebra.

Every element of the adjacency algebra is stored by its coefficient vector
``a`` in the basis ``A_0, ..., A_{s-1}``; the matrix ``sum a_r A_r`` has the
entry ``a_r`` at every cell of color ``r``.  Products are computed with the
intersection numbers, so all work happens in dimension ``s`` instead of
``n``.

Two arithmetic tiers are provided.  The exact tier splits the center over Q
by eigenvalues of the multiplication maps of center generators; it succeeds
exactly when every idempotent has rational entries.  Otherwise the floating
tier diagonalizes a seeded random central element and certifies the result
by residuals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np
import sympy

from .errors import (
    DenominatorDivisible,
    ExactPathUnavailable,
    IllConditioned,
    NonIntegerParameter,
    NonIntegral,
    NotRational,
    SemisimplicityViolated,
)
from .gf.field import make_field
from .gf.matrix import FqMatrix
from .scheme import Scheme

__all__ = [
    "SpectralData",
    "algebra_product",
    "center_basis",
    "primitive_idempotents",
    "rep_params",
    "frame_number",
    "spectral_data",
    "reduce_idempotent",
    "DEFAULT_TOL",
]

DEFAULT_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class SpectralData:
    """Idempotents as coefficient vectors plus the derived invariants.

    ``idempotents[i][r]`` is the entry of ``P_i`` on cells of color ``r``;
    it is a :class:`fractions.Fraction` when ``exact`` and a complex number
    otherwise.  ``params[i]`` is ``(n_P, m_P)``.
    """

    n: int
    idempotents: tuple
    principal_index: int
    exact: bool
    rational: bool
    tol: float = 0.0
    params: Optional[tuple] = None
    m_min: Optional[int] = None
    frame: Optional[int] = None
    residual: float = 0.0

    def matrix(self, i: int, sch: Scheme) -> np.ndarray:
        """The ``n x n`` matrix of idempotent ``i`` (object dtype when exact)."""
        coeffs = np.array(self.idempotents[i], dtype=object if self.exact else complex)
        return coeffs[sch.color]

    def nonprincipal(self) -> list[int]:
        return [i for i in range(len(self.idempotents)) if i != self.principal_index]

    def to_dict(self) -> dict:
        out = {
            "num_idempotents": len(self.idempotents),
            "exact": self.exact,
            "rational": self.rational,
            "principal_index": self.principal_index,
        }
        if self.params is not None:
            out["params"] = [{"degree": d, "multiplicity": m} for d, m in self.params]
        if self.m_min is not None:
            out["m_min"] = self.m_min
        if self.frame is not None:
            out["frame"] = self.frame
        if not self.exact:
            out["residual"] = self.residual
        return out


# ---- algebra in coefficient space -----------------------------------------


def algebra_product(sch: Scheme, u, v) -> np.ndarray:
    """Coefficients of ``(sum u_r A_r)(sum v_s A_s)`` via intersection numbers."""
    u = np.asarray(u)
    v = np.asarray(v)
    c = sch.intersection
    if u.dtype == object or v.dtype == object:
        c = c.astype(object)
    # (uv)_t = sum_{r,s} u_r v_s c[r, s, t]
    return np.tensordot(v, np.tensordot(u, c, axes=(0, 0)), axes=(0, 0))


def _identity(sch: Scheme, exact: bool) -> np.ndarray:
    e = np.zeros(sch.s, dtype=object if exact else complex)
    e[0] = Fraction(1) if exact else 1.0
    if exact:
        e[1:] = Fraction(0)
    return e


def _to_fraction(x) -> Fraction:
    x = sympy.Rational(x)
    return Fraction(int(x.p), int(x.q))


def center_basis(sch: Scheme) -> list[tuple]:
    """Basis of the center of Q S as integer coefficient vectors.

    Solves ``sum_t z_t (c[r,t,u] - c[t,r,u]) = 0`` for all ``r, u`` by exact
    elimination; each vector is scaled to coprime integers.
    """
    c = sch.intersection
    s = sch.s
    comm = (c - c.transpose(1, 0, 2))  # comm[r, t, u]
    rows = comm.transpose(0, 2, 1).reshape(s * s, s)
    rows = rows[np.any(rows != 0, axis=1)]
    if len(rows) == 0:
        return [tuple(int(i == j) for i in range(s)) for j in range(s)]
    basis = sympy.Matrix(rows.tolist()).nullspace()
    out = []
    for vec in basis:
        fr = [_to_fraction(x) for x in vec]
        den = math.lcm(*(f.denominator for f in fr))
        ints = [int(f * den) for f in fr]
        g = math.gcd(*ints)
        out.append(tuple(i // g for i in ints))
    return out


def _coordinates_solver(basis: Sequence[Sequence], exact: bool):
    """Return a function mapping a vector of span(basis) to its coordinates."""
    B = np.array(basis, dtype=object if exact else complex).T  # s x k
    if exact:
        Bm = sympy.Matrix(B.tolist())
        _, pivots = Bm.T.rref()
        sub = Bm.extract(list(pivots), list(range(Bm.shape[1])))  # k x k
        inv = sub.inv()

        def coords(v):
            w = sympy.Matrix([sympy.Rational(v[i].numerator, v[i].denominator) for i in pivots])
            return [_to_fraction(x) for x in inv * w]

        return coords
    pinv = np.linalg.pinv(B)
    return lambda v: pinv @ np.asarray(v, dtype=complex)


def _multiplication_matrix(sch: Scheme, z, basis, coords, exact: bool):
    cols = [coords(algebra_product(sch, z, np.array(b, dtype=z.dtype))) for b in basis]
    if exact:
        return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in col]
                             for col in cols]).T
    return np.array(cols, dtype=complex).T


def _normalize_idempotent(sch: Scheme, e, exact: bool, tol: float = 0.0):
    sq = algebra_product(sch, e, e)
    if exact:
        t = next(i for i in range(len(e)) if e[i] != 0)
        lam = sq[t] / e[t]
        if lam == 0:
            raise AssertionError("nilpotent element in a semisimple center")
        return np.array([x / lam for x in e], dtype=object)
    t = int(np.argmax(np.abs(e)))
    lam = sq[t] / e[t]
    if abs(lam) < tol:
        raise IllConditioned("central eigenvector squares to ~0")
    return e / lam


def _exact_idempotents(sch: Scheme, basis) -> list[np.ndarray]:
    k = len(basis)
    coords = _coordinates_solver(basis, exact=True)
    spaces = [sympy.eye(k)]
    x = sympy.Symbol("x")
    for b in basis:
        z = np.array([Fraction(v) for v in b], dtype=object)
        L = _multiplication_matrix(sch, z, basis, coords, exact=True)
        poly = sympy.Poly(L.charpoly(x).as_expr(), x, domain=sympy.QQ)
        roots = poly.ground_roots()
        if sum(roots.values()) != k:
            raise ExactPathUnavailable("a central element has irrational eigenvalues")
        refined = []
        for W in spaces:
            pieces = []
            for theta in roots:
                ker = ((L - theta * sympy.eye(k)) * W).nullspace()
                if ker:
                    pieces.append(W * sympy.Matrix.hstack(*ker))
            if sum(P.shape[1] for P in pieces) != W.shape[1]:  # pragma: no cover
                raise AssertionError("center is not diagonalizable")
            refined.extend(pieces)
        spaces = refined
        if all(W.shape[1] == 1 for W in spaces):
            break
    if any(W.shape[1] != 1 for W in spaces):  # pragma: no cover
        raise AssertionError("center generators did not separate the idempotents")
    Bm = sympy.Matrix([list(b) for b in basis]).T  # s x k
    out = []
    for W in spaces:
        e = np.array([_to_fraction(v) for v in Bm * W], dtype=object)
        out.append(_normalize_idempotent(sch, e, exact=True))
    return out


def _float_idempotents(sch: Scheme, basis, tol: float, seed: int, attempts: int = 5):
    k = len(basis)
    coords = _coordinates_solver(basis, exact=False)
    B = np.array(basis, dtype=complex)
    rng = np.random.default_rng(seed)
    for _ in range(attempts):
        w = rng.integers(1, 1000, size=k)
        z = w @ B
        L = _multiplication_matrix(sch, z, basis, coords, exact=False)
        vals, vecs = np.linalg.eig(L)
        scale = max(1.0, float(np.abs(vals).max()))
        gaps = np.abs(vals[:, None] - vals[None, :])
        np.fill_diagonal(gaps, np.inf)
        if k > 1 and gaps.min() < max(tol, 1e-7) * scale * 1e3:
            continue
        return [_normalize_idempotent(sch, vecs[:, j] @ B, exact=False, tol=tol)
                for j in range(k)]
    raise IllConditioned(
        f"central eigenvalues closer than the separation threshold after {attempts} draws")


def _residual(sch: Scheme, idem: list[np.ndarray]) -> float:
    worst = np.abs(sum(idem) - _identity(sch, False)).max()
    for i, P in enumerate(idem):
        for j, Q in enumerate(idem[i:], start=i):
            prod = algebra_product(sch, P, Q)
            target = P if i == j else 0
            worst = max(worst, float(np.abs(prod - target).max()))
    return float(worst)


def _principal_index(sch: Scheme, idem, exact: bool, tol: float) -> int:
    for i, P in enumerate(idem):
        if exact:
            if all(x == Fraction(1, sch.n) for x in P):
                return i
        elif np.abs(P - 1.0 / sch.n).max() < max(tol, 1e-9) * 1e3:
            return i
    raise AssertionError("principal idempotent (1/n)J not found")


def primitive_idempotents(sch: Scheme, mode: str = "auto", tol: float = DEFAULT_TOL,
                          seed: int = 0) -> SpectralData:
    """Central primitive idempotents of the complex adjacency algebra.

    ``mode`` is ``"exact"`` (raise :class:`ExactPathUnavailable` unless all
    idempotents are rational), ``"float"``, or ``"auto"`` (exact when
    possible).  In floating mode the result is certified: ``P^2 = P``,
    ``P_i P_j = 0`` and ``sum P = I`` hold within ``tol``.
    """
    if mode not in ("auto", "exact", "float"):
        raise ValueError(f"unknown mode {mode!r}")
    basis = center_basis(sch)
    if mode in ("auto", "exact"):
        try:
            idem = _exact_idempotents(sch, basis)
        except ExactPathUnavailable:
            if mode == "exact":
                raise
        else:
            total = sum(idem[1:], idem[0].copy())
            if list(total) != list(_identity(sch, True)):  # pragma: no cover
                raise AssertionError("exact idempotents do not sum to I")
            idem = sorted(idem, key=lambda P: (P[0], tuple(P)))
            pi = _principal_index(sch, idem, True, 0.0)
            return SpectralData(sch.n, tuple(tuple(P) for P in idem), pi, True, True)
    idem = _float_idempotents(sch, basis, tol, seed)
    res = _residual(sch, idem)
    if res > tol:
        raise IllConditioned(f"idempotent residual {res:.3g} exceeds tol {tol:.3g}")
    idem = sorted(idem, key=lambda P: (round(P[0].real, 9), round(P[0].imag, 9),
                                       tuple(np.round(P.real, 9)), tuple(np.round(P.imag, 9))))
    pi = _principal_index(sch, idem, False, tol)
    return SpectralData(sch.n, tuple(tuple(P) for P in idem), pi, False, False, tol,
                        residual=res)


def _int_or_raise(x: float, what: str, slack: float = 1e-6) -> int:
    k = round(float(x))
    if abs(float(x) - k) > slack:
        raise NonIntegerParameter(f"{what} = {x} is not an integer")
    return int(k)


def rep_params(sch: Scheme, spec: SpectralData) -> SpectralData:
    """Fill in ``(n_P, m_P)`` for every idempotent and ``m_min``.

    ``n_P`` is the square root of ``dim P*FS`` and ``m_P = rank(P) / n_P``,
    where ``rank(P) = trace(P) = n * P_0`` for an idempotent.
    """
    basis = np.eye(sch.s, dtype=np.int64)
    params = []
    for P in spec.idempotents:
        P = np.array(P, dtype=object if spec.exact else complex)
        rows = [algebra_product(sch, P, basis[r].astype(P.dtype)) for r in range(sch.s)]
        if spec.exact:
            dim = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row]
                                for row in rows]).rank()
            tr = sch.n * P[0]
            if tr.denominator != 1:
                raise NonIntegerParameter(f"trace {tr} is not an integer")
            rk = int(tr)
        else:
            M = np.array(rows, dtype=complex)
            sv = np.linalg.svd(M, compute_uv=False)
            dim = int((sv > max(spec.tol, 1e-9) * 1e3 * max(1.0, sv.max())).sum())
            rk = _int_or_raise(sch.n * P[0].real, "rank(P)")
            if abs(P[0].imag) * sch.n > 1e-6:
                raise NonIntegerParameter("trace of an idempotent is not real")
        deg = math.isqrt(dim)
        if deg * deg != dim:
            raise NonIntegerParameter(f"dim P*S = {dim} is not a square")
        if rk % deg:
            raise NonIntegerParameter(f"rank {rk} not divisible by degree {deg}")
        params.append((deg, rk // deg))
    nonprin = [params[i][1] for i in spec.nonprincipal()]
    m_min = min(nonprin) if nonprin else None
    return replace(spec, params=tuple(params), m_min=m_min)


def frame_number(sch: Scheme, spec: SpectralData) -> int:
    """``n^s * prod(d_r) / prod_{P != P0} m_P^(n_P^2)`` in exact integers."""
    if spec.params is None:
        spec = rep_params(sch, spec)
    num = sch.n**sch.s
    for d in sch.valencies:
        num *= int(d)
    den = 1
    for i in spec.nonprincipal():
        deg, mult = spec.params[i]
        den *= mult ** (deg * deg)
    if num % den:
        raise NonIntegral(f"Frame quotient {num}/{den} is not an integer")
    return num // den


def spectral_data(sch: Scheme, mode: str = "auto", tol: float = DEFAULT_TOL,
                  seed: int = 0) -> SpectralData:
    """Idempotents, parameters, ``m_min`` and Frame number in one call."""
    spec = rep_params(sch, primitive_idempotents(sch, mode=mode, tol=tol, seed=seed))
    return replace(spec, frame=frame_number(sch, spec))


def reduce_idempotent(sch: Scheme, spec: SpectralData, index: int, p: int) -> FqMatrix:
    """Entrywise reduction of a rational idempotent modulo ``p``.

    Requires ``p`` not to divide the Frame number.  Every denominator must
    then be prime to ``p``; a divisible one raises
    :class:`DenominatorDivisible`.
    """
    if not (spec.rational and spec.exact):
        raise NotRational("reduction mod p needs exact rational idempotents")
    frame = spec.frame if spec.frame is not None else frame_number(sch, spec)
    if frame % p == 0:
        raise SemisimplicityViolated(f"{p} divides the Frame number {frame}")
    F = make_field(p)
    coeffs = []
    for x in spec.idempotents[index]:
        if x.denominator % p == 0:
            raise DenominatorDivisible(
                f"entry {x} of idempotent {index} has denominator divisible by {p}")
        coeffs.append(x.numerator * pow(x.denominator, -1, p) % p)
    return FqMatrix(F, np.array(coeffs, dtype=np.int64)[sch.color])
