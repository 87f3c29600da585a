from __future__ import annotations

from dataclasses import replace
from fractions import Fraction

import numpy as np
import pytest
from sympy import primerange

from schemebounds import (
    center_basis,
    frame_number,
    is_commutative,
    primitive_idempotents,
    reduce_idempotent,
    rep_params,
    spectral_data,
    validate_scheme,
)
from schemebounds.errors import (
    DenominatorDivisible,
    ExactPathUnavailable,
    IllConditioned,
    NonIntegerParameter,
    NonIntegral,
    NotRational,
    SemisimplicityViolated,
)
from schemebounds.spectral import algebra_product

from oracles import eigen_projectors, rank_mod_p, small_corpus

CORPUS = small_corpus()
IDS = [s.name for s in CORPUS]
SPECS = {s.name: spectral_data(s) for s in CORPUS}


def _matrices(sch, spec):
    return [spec.matrix(i, sch) for i in range(len(spec.idempotents))]


def _frame_formula(sch, params, principal):
    num = sch.n**sch.s
    for d in sch.valencies:
        num *= int(d)
    den = 1
    for i, (deg, mult) in enumerate(params):
        if i != principal:
            den *= mult ** (deg * deg)
    return Fraction(num, den)


# ---- center ------------------------------------------------------------------


def test_center_dimensions(c31_5, s3):
    assert len(center_basis(c31_5)) == 7
    assert len(center_basis(s3)) == 3
    assert len(center_basis(validate_scheme([[0]]))) == 1


@pytest.mark.parametrize("sch", CORPUS, ids=IDS)
def test_center_is_central(sch):
    basis = center_basis(sch)
    if is_commutative(sch):
        assert len(basis) == sch.s
    A = sch.adjacency_matrices().astype(np.int64)
    for z in basis:
        Z = np.asarray(z, dtype=np.int64)[sch.color]
        for r in range(sch.s):
            assert (Z @ A[r] == A[r] @ Z).all()


@pytest.mark.parametrize("sch", CORPUS[:8], ids=IDS[:8])
def test_algebra_product_matches_matrix_product(sch):
    rng = np.random.default_rng(sch.n)
    u, v = rng.integers(-3, 4, sch.s), rng.integers(-3, 4, sch.s)
    w = algebra_product(sch, u, v)
    assert (w[sch.color] == u[sch.color] @ v[sch.color]).all()


# ---- johnson(5,2), exact -------------------------------------------------------


def test_johnson_exact(j52):
    spec = spectral_data(j52, mode="exact")
    assert spec.exact and spec.rational
    assert sorted(m * d for d, m in spec.params) == [1, 4, 5]
    assert spec.m_min == 4
    assert spec.frame == 900
    P = _matrices(j52, spec)
    I = np.eye(10, dtype=int)
    assert (sum(P[1:], P[0]) == I).all()
    for i, Pi in enumerate(P):
        for j, Pj in enumerate(P):
            prod = Pi.dot(Pj)
            assert (prod == (Pi if i == j else 0)).all()
    principal = P[spec.principal_index]
    assert (principal == Fraction(1, 10)).all()


def test_johnson_matches_eigen_oracle(j52):
    spec = spectral_data(j52)
    oracle = eigen_projectors(j52.adjacency(1))
    assert sorted(oracle) == [-2.0, 1.0, 6.0]
    got = [np.asarray(M, dtype=float) for M in _matrices(j52, spec)]
    for proj in oracle.values():
        assert any(np.allclose(proj, M, atol=1e-12) for M in got)
    ranks = sorted(int(round(np.trace(p))) for p in oracle.values())
    assert ranks == [1, 4, 5]


@pytest.mark.parametrize("name", ["hamming(3,2)", "johnson(6,3)", "complete(5)", "johnson(6,2)"])
def test_symmetric_schemes_match_eigen_oracle(name):
    sch = next(s for s in CORPUS if s.name == name)
    spec = SPECS[name]
    rng = np.random.default_rng(0)
    M = rng.standard_normal(sch.s)[sch.color]
    assert (M == M.T).all()
    oracle = eigen_projectors(M, decimals=8)
    got = [np.asarray(X, dtype=float) for X in _matrices(sch, spec)]
    assert len(oracle) == len(got)
    for proj in oracle.values():
        assert any(np.allclose(proj, X, atol=1e-8) for X in got)


def test_float_mode_agrees_with_exact(j52):
    exact = spectral_data(j52, mode="exact")
    flt = spectral_data(j52, mode="float")
    assert not flt.exact
    assert flt.params == exact.params and flt.frame == exact.frame
    for i in range(3):
        assert np.allclose(np.asarray(exact.idempotents[i], dtype=float),
                           np.asarray(flt.idempotents[i]), atol=1e-9)


# ---- floating schemes --------------------------------------------------------------


def test_z5_float(z5):
    with pytest.raises(ExactPathUnavailable):
        primitive_idempotents(z5, mode="exact")
    spec = spectral_data(z5)
    assert not spec.exact and not spec.rational
    assert len(spec.idempotents) == 5
    assert all(p == (1, 1) for p in spec.params)
    assert spec.residual < 1e-9
    assert spec.frame == 5**5 == _frame_formula(z5, spec.params, spec.principal_index)
    for M in _matrices(z5, spec):
        assert np.linalg.matrix_rank(M, tol=1e-8) == 1
        # entries are fifth roots of unity divided by 5
        assert np.allclose(np.abs(M), 0.2)


def test_cyclotomic_31_5(c31_5):
    spec = spectral_data(c31_5)
    non = [spec.params[i] for i in spec.nonprincipal()]
    assert non == [(1, 5)] * 6
    assert spec.m_min == 5
    assert spec.frame == 31**7 == _frame_formula(c31_5, spec.params, spec.principal_index)


def test_one_point():
    sch = validate_scheme([[0]])
    spec = spectral_data(sch)
    assert spec.idempotents == ((Fraction(1),),)
    assert spec.params == ((1, 1),) and spec.m_min is None and spec.frame == 1


def test_s3_parameters(s3):
    spec = spectral_data(s3)
    assert sorted(spec.params) == [(1, 1), (1, 1), (2, 2)]
    assert spec.frame == 6**6 // 2**4 == 2916


def test_ill_conditioned_tolerance(z5):
    with pytest.raises(IllConditioned):
        primitive_idempotents(z5, mode="float", tol=1e-300)


def test_unknown_mode(z5):
    with pytest.raises(ValueError):
        primitive_idempotents(z5, mode="symbolic")


# ---- invariants over the corpus -------------------------------------------------------


@pytest.mark.parametrize("sch", CORPUS, ids=IDS)
def test_parameter_identities(sch):
    spec = SPECS[sch.name]
    params = spec.params
    assert sum(d * m for d, m in params) == sch.n
    assert sum(d * d for d, _ in params) == sch.s
    assert all(m >= d for d, m in params)
    assert params[spec.principal_index] == (1, 1)
    assert isinstance(spec.frame, int) and spec.frame > 0
    assert spec.frame == _frame_formula(sch, params, spec.principal_index)


@pytest.mark.parametrize("sch", CORPUS, ids=IDS)
def test_idempotent_identities(sch):
    spec = SPECS[sch.name]
    P = _matrices(sch, spec)
    n = sch.n
    A = sch.adjacency_matrices()
    if spec.exact:
        close = lambda a, b: (a == b).all()
    else:
        close = lambda a, b: np.allclose(a.astype(complex), b, atol=1e-9)
    assert close(sum(P[1:], P[0]), np.eye(n, dtype=int))
    for i in range(len(P)):
        for j in range(len(P)):
            assert close(P[i].dot(P[j]), P[i] if i == j else np.zeros((n, n), dtype=int))
        for r in range(sch.s):
            assert close(P[i].dot(A[r]), A[r].dot(P[i]))
        # rank(P) = m_P n_P
        d, m = spec.params[i]
        rk = np.linalg.matrix_rank(np.asarray(P[i], dtype=complex), tol=1e-8)
        assert rk == d * m


def test_rationality_flags():
    rational = {name for name, spec in SPECS.items() if spec.rational}
    assert {"johnson(5,2)", "hamming(3,2)", "S3", "complete(4)"} <= rational
    assert not {"Z5", "cyclotomic(31,5)", "Z4"} & rational


# ---- error guards on parameters ----------------------------------------------------------


def test_non_integral_frame(j52):
    spec = spectral_data(j52)
    bad = tuple((1, 7) if i != spec.principal_index and m == 5 else (d, m)
                for i, (d, m) in enumerate(spec.params))
    with pytest.raises(NonIntegral):
        frame_number(j52, replace(spec, params=bad))


def test_non_integer_parameter(j52):
    spec = primitive_idempotents(j52)
    scaled = tuple(tuple(x / 3 for x in P) for P in spec.idempotents)
    with pytest.raises(NonIntegerParameter):
        rep_params(j52, replace(spec, idempotents=scaled))


# ---- reduction mod p -----------------------------------------------------------------------


def test_johnson_reduction_mod_7(j52):
    spec = spectral_data(j52)
    ranks = {}
    for i in range(3):
        E = reduce_idempotent(j52, spec, i, 7)
        ranks[spec.params[i][1]] = E.rank()
    assert ranks == {1: 1, 4: 4, 5: 5}
    P0 = reduce_idempotent(j52, spec, spec.principal_index, 7)
    assert (P0.entries == 5).all()


def test_reduction_guards(j52, z5):
    spec = spectral_data(j52)
    with pytest.raises(SemisimplicityViolated):
        reduce_idempotent(j52, spec, 0, 3)
    with pytest.raises(NotRational):
        reduce_idempotent(z5, spectral_data(z5), 0, 7)
    # a Frame number that wrongly admits p = 5 exposes the 1/10 entries
    with pytest.raises(DenominatorDivisible):
        reduce_idempotent(j52, replace(spec, frame=1), spec.principal_index, 5)


RATIONAL = [s for s in CORPUS if SPECS[s.name].rational]


@pytest.mark.parametrize("sch", RATIONAL, ids=[s.name for s in RATIONAL])
def test_reduced_idempotents_keep_their_rank(sch):
    spec = SPECS[sch.name]
    A = [sch.adjacency(r).astype(np.int64) for r in range(sch.s)]
    checked = 0
    for p in primerange(2, 51):
        if spec.frame % p == 0:
            continue
        for i, (d, m) in enumerate(spec.params):
            E = reduce_idempotent(sch, spec, i, p)
            e = E.entries
            assert rank_mod_p(e, p) == d * m
            assert ((e @ e - e) % p == 0).all()
            for a in A:
                assert ((e @ a - a @ e) % p == 0).all()
            checked += 1
    assert checked > 0
