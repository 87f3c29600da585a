"""Constructions of concrete schemes: cyclotomic, thin (group), Johnson, Hamming."""

from __future__ import annotations

import itertools
from math import comb

import numpy as np
from sympy import isprime, primefactors

from .errors import NotADivisor, NotAGroup, NotPrime, ParameterOutOfRange
from .scheme import Scheme, validate_scheme

__all__ = [
    "CORPUS_CAP",
    "primitive_root",
    "cyclotomic",
    "cyclotomic_subgroup",
    "from_group",
    "cyclic_group_table",
    "symmetric_group_table",
    "johnson",
    "hamming",
    "complete_graph",
]

CORPUS_CAP = 512
PRIMITIVE_ROOT_GUARD = 10**6


def primitive_root(p: int, guard: int = PRIMITIVE_ROOT_GUARD) -> int:
    """Smallest primitive root modulo the prime ``p``."""
    if not isprime(p):
        raise NotPrime(f"{p} is not prime")
    if p > guard:
        raise ParameterOutOfRange(f"p={p} exceeds the primitive-root guard")
    if p == 2:
        return 1
    factors = primefactors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // f, p) != 1 for f in factors):
            return g
    raise AssertionError("unreachable: every prime has a primitive root")


def cyclotomic_subgroup(p: int, r: int) -> list[int]:
    """The multiplicative subgroup of order ``r`` in Z_p, sorted."""
    if not isprime(p):
        raise NotPrime(f"{p} is not prime")
    if r < 1 or (p - 1) % r:
        raise NotADivisor(f"{r} does not divide {p - 1}")
    h = pow(primitive_root(p), (p - 1) // r, p)
    return sorted(pow(h, i, p) for i in range(r))


def cyclotomic(p: int, r: int) -> Scheme:
    """Cyclotomic scheme on Z_p for the subgroup H of order ``r``.

    ``(x, y)`` with ``x != y`` gets color ``1 + k mod e`` where
    ``y - x = g**k`` for the smallest primitive root ``g`` and
    ``e = (p - 1) / r`` is the number of cosets; color 1 is H itself.
    """
    if not isprime(p):
        raise NotPrime(f"{p} is not prime")
    if r < 1 or (p - 1) % r:
        raise NotADivisor(f"{r} does not divide {p - 1}")
    if p > CORPUS_CAP:
        raise ParameterOutOfRange(f"p={p} exceeds the corpus cap {CORPUS_CAP}")
    e = (p - 1) // r
    g = primitive_root(p)
    coset = np.zeros(p, dtype=np.int64)
    v = 1
    for k in range(p - 1):
        coset[v] = 1 + k % e
        v = v * g % p
    xs = np.arange(p)
    color = coset[(xs[None, :] - xs[:, None]) % p]
    return validate_scheme(color, name=f"cyclotomic({p},{r})")


def _check_group(table: np.ndarray) -> int:
    m = table.shape[0]
    if table.shape != (m, m) or m < 1:
        raise NotAGroup("multiplication table must be a non-empty square")
    if table.min() < 0 or table.max() >= m:
        raise NotAGroup("table entries must be element indices 0..m-1")
    idx = np.arange(m)
    ids = [e for e in range(m) if (table[e] == idx).all() and (table[:, e] == idx).all()]
    if not ids:
        raise NotAGroup("no identity element")
    e = ids[0]
    for row in table:
        if len(np.unique(row)) != m:
            raise NotAGroup("some row is not a permutation (no inverses)")
    for col in table.T:
        if len(np.unique(col)) != m:
            raise NotAGroup("some column is not a permutation (no inverses)")
    for a in range(m):
        # (a b) c == a (b c) for all b, c
        left = table[table[a]]          # left[b, c] = (a b) c
        right = table[a][table]         # right[b, c] = a (b c)
        if not (left == right).all():
            b, c = np.argwhere(left != right)[0]
            raise NotAGroup(f"not associative at ({a}, {b}, {c})")
    return e


def from_group(cayley, name: str = "") -> Scheme:
    """Thin scheme of the regular action of a group.

    ``cayley[i][j]`` is the index of the product ``g_i g_j``.  The pair
    ``(x, y)`` gets the color of ``x^-1 y``; the identity is relabeled to
    color 0 and the remaining elements keep their relative order.
    """
    table = np.array(cayley, dtype=np.int64)
    e = _check_group(table)
    m = table.shape[0]
    inv = np.argmax(table == e, axis=1)
    label = np.empty(m, dtype=np.int64)
    label[e] = 0
    others = [g for g in range(m) if g != e]
    label[others] = np.arange(1, m)
    color = label[table[inv[:, None], np.arange(m)[None, :]]]
    return validate_scheme(color, name=name or f"group(order {m})")


def cyclic_group_table(m: int) -> np.ndarray:
    idx = np.arange(m)
    return (idx[:, None] + idx[None, :]) % m


def symmetric_group_table(k: int) -> np.ndarray:
    """Cayley table of Sym(k) on permutations in lexicographic order."""
    perms = list(itertools.permutations(range(k)))
    index = {p: i for i, p in enumerate(perms)}
    m = len(perms)
    table = np.empty((m, m), dtype=np.int64)
    for i, a in enumerate(perms):
        for j, b in enumerate(perms):
            # (a b)(x) = a(b(x))
            table[i, j] = index[tuple(a[b[x]] for x in range(k))]
    return table


def johnson(v: int, k: int, cap: int = CORPUS_CAP) -> Scheme:
    """Johnson scheme J(v, k); color of (a, b) is ``k - |a & b|``."""
    if k < 1 or 2 * k > v:
        raise ParameterOutOfRange(f"need 1 <= k <= v/2, got v={v}, k={k}")
    if comb(v, k) > cap:
        raise ParameterOutOfRange(f"binomial({v},{k}) exceeds the corpus cap {cap}")
    subsets = np.zeros((comb(v, k), v), dtype=np.int64)
    for i, sub in enumerate(itertools.combinations(range(v), k)):
        subsets[i, list(sub)] = 1
    color = k - subsets @ subsets.T
    return validate_scheme(color, name=f"johnson({v},{k})")


def hamming(m: int, a: int, cap: int = CORPUS_CAP) -> Scheme:
    """Hamming scheme H(m, a); color is the Hamming distance."""
    if m < 1 or a < 2:
        raise ParameterOutOfRange(f"need m >= 1 and a >= 2, got m={m}, a={a}")
    if a**m > cap:
        raise ParameterOutOfRange(f"{a}^{m} exceeds the corpus cap {cap}")
    words = np.array(list(itertools.product(range(a), repeat=m)), dtype=np.int64)
    color = (words[:, None, :] != words[None, :, :]).sum(axis=2)
    return validate_scheme(color, name=f"hamming({m},{a})")


def complete_graph(n: int) -> Scheme:
    """The scheme with exactly two relations, Δ and its complement."""
    if n < 1 or n > CORPUS_CAP:
        raise ParameterOutOfRange(f"n={n} out of range")
    color = 1 - np.eye(n, dtype=np.int64)
    return validate_scheme(color, name=f"complete({n})")
