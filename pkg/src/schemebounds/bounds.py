"""Executable checks of the modular absolute bounds for primitive schemes.

For a matrix ``A`` and a scalar ``lam`` the relation ``e_lam(A)`` holds
``(x, y)`` when ``lam * A[:, x] == A[:, y]``; ``e(A)`` is the union over all
scalars, i.e. the pairs with linearly dependent columns.  For ``A`` in the
adjacency algebra these relations are unions of basis relations, which is
what drives the rank bound

    |X| <= (q^r - 1) / (q - 1),    r = rk_min(F_q, S) > 1,

checked here on concrete schemes together with its characteristic-zero
counterpart in terms of the minimal multiplicity ``m_min``.
"""

from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, field as dc_field
from fractions import Fraction
from typing import Optional, Union

import numpy as np
from sympy import isprime

from .errors import NotRational, OrderTooSmall, SemisimplicityViolated
from .gf.field import FqField, make_field
from .gf.matrix import FqMatrix, combine, rank
from .gf.search import rkmin_search
from .scheme import RelationSet, Scheme, is_primitive, is_thin, membership_in_Sstar
from .spectral import SpectralData, reduce_idempotent, spectral_data

__all__ = [
    "BoundReport",
    "e_lambda",
    "e_union",
    "has_zero_column",
    "check_theorem_110707c",
    "check_theorem_180707b",
    "check_theorem_160707a",
    "check_theorem_200707b",
    "check_ha003",
    "write_witness",
    "bound_value",
]

HOLDS = "holds"
VIOLATED = "violated"
NOT_APPLICABLE = "not-applicable"

RATIONALS = "Q"


@dataclass
class BoundReport:
    theorem: str
    inputs: dict
    computed: dict = dc_field(default_factory=dict)
    verdict: str = HOLDS
    reason: str = ""
    witness: Optional[dict] = None

    @property
    def holds(self) -> bool:
        return self.verdict == HOLDS

    def to_dict(self) -> dict:
        d = asdict(self)
        if not d["reason"]:
            del d["reason"]
        if d["witness"] is None:
            del d["witness"]
        return d


def _inputs(sch: Scheme, **extra) -> dict:
    return {"scheme": sch.name, "scheme_sha256": sch.digest(), "n": sch.n, "s": sch.s, **extra}


def bound_value(q: int, r: int) -> int:
    """``(q^r - 1) / (q - 1)``: the number of points of PG(r-1, q)."""
    return (q**r - 1) // (q - 1)


def write_witness(report: BoundReport, directory) -> str:
    """Dump a report with its witness to ``directory``; returns the path."""
    os.makedirs(directory, exist_ok=True)
    digest = report.inputs.get("scheme_sha256", "unknown")[:12]
    path = os.path.join(directory, f"violation-{report.theorem}-{digest}.json")
    with open(path, "w") as fh:
        json.dump(report.to_dict(), fh, indent=2, sort_keys=True, default=str)
    return path


# ---- e_lambda relations ----------------------------------------------------

Matrix = Union[FqMatrix, np.ndarray]


def _columns_equal(B: np.ndarray, A: np.ndarray, tol: Optional[float]) -> np.ndarray:
    """``out[x, y]`` is True when column x of B equals column y of A."""
    n = A.shape[1]
    out = np.zeros((B.shape[1], n), dtype=bool)
    for x in range(B.shape[1]):
        col = B[:, x, None]
        if tol is None:
            out[x] = (col == A).all(axis=0)
        else:
            out[x] = (np.abs(col - A) <= tol).all(axis=0)
    return out


def _float_tol(A: np.ndarray, tol: float) -> float:
    return tol * max(1.0, float(np.abs(A).max()) if A.size else 1.0)


def e_lambda(sch: Optional[Scheme], A: Matrix, lam, tol: float = 1e-9) -> RelationSet:
    """The relation ``{(x, y) : lam * A x == A y}`` on the columns of ``A``.

    ``A`` is an :class:`FqMatrix` (``lam`` an element code), an integer or
    :class:`~fractions.Fraction` array (exact comparison) or a float/complex
    array (comparison to ``tol`` relative to the largest entry).  With a
    scheme, the result carries its decomposition into basis relations.
    """
    if isinstance(A, FqMatrix):
        a = A.entries
        rel = _columns_equal(A.field.mul(int(lam), a), a, None)
    else:
        a = np.asarray(A)
        if a.dtype.kind in "fc":
            rel = _columns_equal(lam * a, a, _float_tol(a, tol))
        else:
            rel = _columns_equal(np.asarray(a * lam), a, None)
    ind = rel.astype(np.int8)
    if sch is None:
        return RelationSet(ind, None)
    return membership_in_Sstar(sch, ind)


def has_zero_column(A: Matrix, tol: float = 1e-9) -> bool:
    a = A.entries if isinstance(A, FqMatrix) else np.asarray(A)
    if a.dtype.kind in "fc":
        return bool((np.abs(a) <= _float_tol(a, tol)).all(axis=0).any())
    return bool((a == 0).all(axis=0).any())


def _dependent_columns(a: np.ndarray, tol: Optional[float]) -> np.ndarray:
    """Pairwise linear dependence via equality in Cauchy-Schwarz."""
    if tol is None:
        obj = a.astype(object)
        G = obj.T @ obj
        d = np.diag(G)
        return (G * G) == np.outer(d, d)
    G = a.conj().T @ a
    d = np.real(np.diag(G))
    lhs = np.abs(G) ** 2
    rhs = np.outer(d, d)
    return np.abs(lhs - rhs) <= tol * max(1.0, float(rhs.max()) if rhs.size else 1.0)


def e_union(sch: Optional[Scheme], A: Matrix, lams=None, tol: float = 1e-9) -> RelationSet:
    """Union of ``e_lam(A)`` over ``lams`` (default: all scalars).

    Over a finite field the default scans every element; over Q or C the
    union over all scalars is decided by pairwise dependence of columns.
    A zero column makes ``e_0(A)`` nonempty; the union is still returned
    and :func:`has_zero_column` reports the condition.
    """
    if isinstance(A, FqMatrix):
        scan = A.field.elements() if lams is None else lams
        rel = np.zeros((A.cols, A.cols), dtype=bool)
        for lam in scan:
            rel |= e_lambda(None, A, lam).indicator.astype(bool)
    else:
        a = np.asarray(A)
        exact = a.dtype.kind not in "fc"
        if lams is None:
            rel = _dependent_columns(a, None if exact else tol)
        else:
            rel = np.zeros((a.shape[1], a.shape[1]), dtype=bool)
            for lam in lams:
                rel |= e_lambda(None, a, lam, tol).indicator.astype(bool)
    ind = rel.astype(np.int8)
    if sch is None:
        return RelationSet(ind, None)
    return membership_in_Sstar(sch, ind)


def _rational_scalars(a: np.ndarray) -> set:
    """Every ``lam`` with ``e_lam(A)`` nonempty, for an exact matrix."""
    lams = {Fraction(0), Fraction(1)}
    a = np.vectorize(Fraction, otypes=[object])(a.astype(object))
    n = a.shape[1]
    for x in range(n):
        nz = np.flatnonzero(a[:, x] != 0)
        if not len(nz):
            continue
        i = nz[0]
        for y in range(n):
            lam = a[i, y] / a[i, x]
            if (lam * a[:, x] == a[:, y]).all():
                lams.add(lam)
    return lams


# ---- theorem checks --------------------------------------------------------


def check_theorem_110707c(sch: Scheme, field: Union[FqField, str], trials: int = 200,
                          seed: int = 0, coeff_range: int = 3) -> BoundReport:
    """Every ``e_lam(A)`` and ``e(A)`` for ``A`` in F S is a union of basis relations.

    ``field`` is an :class:`FqField` or ``"Q"``; over Q the coefficients are
    random integers in ``[-coeff_range, coeff_range]``.  Unit tuples and the
    all-ones tuple are always included besides the ``trials`` random ones.
    """
    rng = np.random.default_rng(seed)
    over_q = isinstance(field, str)
    if over_q and field != RATIONALS:
        raise ValueError(f"unknown field {field!r}")
    label = RATIONALS if over_q else field.label()
    report = BoundReport("t110707c", _inputs(sch, field=label, trials=trials, seed=seed))
    tuples = [tuple(int(i == r) for i in range(sch.s)) for r in range(sch.s)]
    tuples.append(tuple([1] * sch.s))
    for _ in range(trials):
        if over_q:
            tuples.append(tuple(int(v) for v in rng.integers(-coeff_range, coeff_range + 1, sch.s)))
        else:
            tuples.append(tuple(int(v) for v in rng.integers(0, field.q, sch.s)))
    checked = 0
    for coeffs in tuples:
        if over_q:
            A = np.array(coeffs, dtype=np.int64)[sch.color]
            scalars = sorted(_rational_scalars(A))
        else:
            A = combine(sch, field, coeffs)
            scalars = [int(v) for v in field.elements()]
        for lam in scalars:
            rel = e_lambda(sch, A, lam)
            checked += 1
            if not rel.in_Sstar:
                report.verdict = VIOLATED
                report.witness = {"coefficients": list(coeffs), "lambda": str(lam),
                                  "relation": rel.indicator.tolist()}
                break
        if report.verdict == HOLDS:
            rel = e_union(sch, A)
            checked += 1
            if not rel.in_Sstar:
                report.verdict = VIOLATED
                report.witness = {"coefficients": list(coeffs), "lambda": "union",
                                  "relation": rel.indicator.tolist()}
        if report.verdict != HOLDS:
            break
    report.computed = {"tuples": len(tuples), "relations_checked": checked}
    return report


def _primitive_or_reason(sch: Scheme) -> Optional[str]:
    try:
        return None if is_primitive(sch) else "scheme is not primitive"
    except OrderTooSmall:
        return "order < 2"


def check_theorem_180707b(sch: Scheme, field: FqField, budget: Optional[int] = None,
                          threads: int = 1) -> BoundReport:
    """Rank bound ``|X| <= (q^r - 1)/(q - 1)`` with ``r = rk_min(F_q, S)``.

    For ``r = 1`` the check is ``|X| < q`` and the scheme is thin of prime
    order.  ``computed["equality"]`` flags attainment of the bound.
    """
    report = BoundReport("t180707b", _inputs(sch, field=field.label(), q=field.q))
    reason = _primitive_or_reason(sch)
    if reason:
        report.verdict, report.reason = NOT_APPLICABLE, reason
        return report
    rk = rkmin_search(sch, field, budget=budget, threads=threads)
    q, r, n = field.q, rk.rkmin, sch.n
    report.computed = {"rkmin": r, "exhaustive": rk.exhaustive,
                       "candidates_examined": rk.candidates_examined}
    if not rk.exhaustive:
        report.verdict = NOT_APPLICABLE
        report.reason = f"search budget exhausted; best rank found {r}"
        return report
    if r > 1:
        bound = bound_value(q, r)
        report.computed.update(bound_value=bound, equality=(n == bound))
        ok = n <= bound
    else:
        thin, prime = is_thin(sch), bool(isprime(n))
        report.computed.update(bound_value=q - 1, thin=thin, prime_order=prime,
                               equality=(n == q - 1))
        ok = n < q and thin and prime
    if not ok:
        report.verdict = VIOLATED
        report.witness = {"coefficients": list(rk.witness), "field_modulus": list(field.modulus)}
    return report


def check_theorem_160707a(sch: Scheme, p: int, spec: Optional[SpectralData] = None) -> BoundReport:
    """``|X| <= (q^m_min - 1)/(q - 1)`` for p prime to the Frame number.

    Only rational schemes are decided (then ``q = p``); others are reported
    not-applicable because the degree of the field of idempotent entries is
    not computed.
    """
    report = BoundReport("t160707a", _inputs(sch, prime=p))
    reason = _primitive_or_reason(sch)
    if reason:
        report.verdict, report.reason = NOT_APPLICABLE, reason
        return report
    spec = spec or spectral_data(sch)
    frame, m_min = spec.frame, spec.m_min
    report.computed = {"frame": frame, "m_min": m_min, "rational": spec.rational}
    if frame % p == 0:
        report.verdict, report.reason = NOT_APPLICABLE, f"{p} divides the Frame number {frame}"
    elif m_min == 1:
        report.verdict, report.reason = NOT_APPLICABLE, "m_min = 1"
    elif not spec.rational:
        report.verdict = NOT_APPLICABLE
        report.reason = "idempotents are not rational; field degree unavailable"
    else:
        bound = bound_value(p, m_min)
        report.computed.update(q=p, bound_value=bound, equality=(sch.n == bound))
        if sch.n > bound:
            report.verdict = VIOLATED
            report.witness = {"params": [list(x) for x in spec.params]}
    return report


def check_theorem_200707b(sch: Scheme, field: FqField, budget: Optional[int] = None,
                          threads: int = 1) -> BoundReport:
    """``rk_min = 1`` exactly for thin schemes of prime order.

    The converse direction needs an n-th root of unity in the field, so it
    is only asserted when ``n`` divides ``q - 1``.
    """
    report = BoundReport("t200707b", _inputs(sch, field=field.label(), q=field.q))
    reason = _primitive_or_reason(sch)
    if reason:
        report.verdict, report.reason = NOT_APPLICABLE, reason
        return report
    rk = rkmin_search(sch, field, budget=budget, threads=threads)
    thin, prime = is_thin(sch), bool(isprime(sch.n))
    roots = (field.q - 1) % sch.n == 0
    report.computed = {"rkmin": rk.rkmin, "exhaustive": rk.exhaustive, "thin": thin,
                       "prime_order": prime, "n_divides_q_minus_1": roots}
    forward = rk.rkmin != 1 or (thin and prime)
    if rk.rkmin == 1 or rk.exhaustive:
        converse = not (thin and prime and roots) or rk.rkmin == 1
    else:
        converse = None
    report.computed.update(forward=forward, converse=converse)
    if not forward or converse is False:
        report.verdict = VIOLATED
        report.witness = {"coefficients": list(rk.witness)}
    elif converse is None:
        report.verdict = NOT_APPLICABLE
        report.reason = "search budget exhausted before rk_min was decided"
    return report


def check_ha003(sch: Scheme, p: int, budget: Optional[int] = None, threads: int = 1,
                spec: Optional[SpectralData] = None) -> BoundReport:
    """Some element of F_p S has rank ``m_P``; hence ``rk_min(F_p, S) <= m_min``.

    Raises :class:`NotRational` or :class:`SemisimplicityViolated` when the
    hypotheses fail.  When the minimizing idempotent has degree 1 its
    reduction mod p is itself such an element and its rank is reported.
    """
    spec = spec or spectral_data(sch)
    if not spec.rational:
        raise NotRational("the check needs rational idempotents")
    if spec.frame % p == 0:
        raise SemisimplicityViolated(f"{p} divides the Frame number {spec.frame}")
    report = BoundReport("ha003", _inputs(sch, prime=p))
    report.computed = {"m_min": spec.m_min, "frame": spec.frame}
    if spec.m_min is None or spec.m_min == 1:
        report.verdict, report.reason = NOT_APPLICABLE, "m_min = 1"
        return report
    i_min = min(spec.nonprincipal(), key=lambda i: (spec.params[i][1], i))
    deg, mult = spec.params[i_min]
    if deg == 1:
        E = reduce_idempotent(sch, spec, i_min, p)
        report.computed["reduced_idempotent_rank"] = rank(E)
    rk = rkmin_search(sch, make_field(p), budget=budget, threads=threads)
    report.computed.update(rkmin=rk.rkmin, exhaustive=rk.exhaustive)
    if rk.rkmin <= spec.m_min:
        return report
    if not rk.exhaustive:
        report.verdict = NOT_APPLICABLE
        report.reason = f"search budget exhausted; best rank found {rk.rkmin}"
        return report
    report.verdict = VIOLATED
    report.witness = {"idempotent": [str(x) for x in spec.idempotents[i_min]]}
    return report
