"""Compiled inner loops for table-driven finite-field elimination.

All kernels take the (add, mul, neg, inv) tables of a field with q <= TABLE_LIMIT.
Rank is computed row by row: each new row is reduced against the echelon
basis built so far, so a matrix whose first ``k`` rows are independent is
dismissed after touching only ``k`` rows when ``stop == k``.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def _reduce_into(row, basis, piv, r, addt, mult, negt, invt):
    """Reduce ``row`` against ``basis[:r]``; append it if nonzero. Returns new r."""
    cols = row.shape[0]
    for b in range(r):
        c = row[piv[b]]
        if c != 0:
            nc = negt[c]
            for j in range(piv[b], cols):
                bj = basis[b, j]
                if bj != 0:
                    row[j] = addt[row[j], mult[nc, bj]]
    for j in range(cols):
        if row[j] != 0:
            iv = invt[row[j]]
            for k in range(j, cols):
                basis[r, k] = mult[iv, row[k]]
            for k in range(j):
                basis[r, k] = 0
            piv[r] = j
            return r + 1
    return r


@njit(cache=True, nogil=True)
def rank_tables(mat, addt, mult, negt, invt, stop):
    """Rank of ``mat`` (int32 codes); returns ``stop`` once the rank reaches it."""
    rows, cols = mat.shape
    cap = min(rows, cols)
    if stop <= 0 or stop > cap:
        stop = cap
    basis = np.zeros((cap + 1, cols), dtype=np.int32)
    piv = np.zeros(cap + 1, dtype=np.int64)
    row = np.empty(cols, dtype=np.int32)
    r = 0
    for i in range(rows):
        for j in range(cols):
            row[j] = mat[i, j]
        r = _reduce_into(row, basis, piv, r, addt, mult, negt, invt)
        if r >= stop:
            return stop
    return r


@njit(cache=True, nogil=True)
def decode_class(index, s, q, coeffs):
    """Write the ``index``-th projective class representative into ``coeffs``.

    Classes are ordered by the position L of the leading 1 (L = 0 first),
    then by the tail ``coeffs[L+1:]`` read as a base-q number. Returns L.
    """
    lead = 0
    block = 1
    for _ in range(s - 1):
        block *= q
    while index >= block:
        index -= block
        lead += 1
        block //= q
    for j in range(s):
        coeffs[j] = 0
    coeffs[lead] = 1
    j = s - 1
    while index > 0:
        coeffs[j] = index % q
        index //= q
        j -= 1
    return lead


@njit(cache=True, nogil=True)
def search_chunk(color, s, q, start, count, addt, mult, negt, invt, hint, skip_all_ones):
    """Scan ``count`` classes from ``start``; return (best_rank, best_index, examined).

    ``hint[0]`` is a rank known to be attained somewhere (possibly by another
    worker).  A candidate is fully examined only if it could reach rank
    ``<= hint[0]``, so the first index attaining the global minimum is always
    recorded by the worker that owns it, whatever the schedule.
    """
    n = color.shape[0]
    coeffs = np.zeros(s, dtype=np.int32)
    lead = decode_class(start, s, q, coeffs)
    basis = np.zeros((n + 1, n), dtype=np.int32)
    piv = np.zeros(n + 1, dtype=np.int64)
    row = np.empty(n, dtype=np.int32)
    best = n + 1
    best_index = -1
    examined = 0
    for k in range(count):
        index = start + k
        all_ones = True
        for j in range(s):
            if coeffs[j] != 1:
                all_ones = False
                break
        if not (all_ones and skip_all_ones):
            examined += 1
            h = hint[0] + 1
            stop = best if best < h else h
            r = 0
            for i in range(n):
                for j in range(n):
                    row[j] = coeffs[color[i, j]]
                r = _reduce_into(row, basis, piv, r, addt, mult, negt, invt)
                if r >= stop:
                    break
            if r < stop:
                best = r
                best_index = index
                if r < hint[0]:
                    hint[0] = r
        # odometer step to the next class representative
        j = s - 1
        while j > lead:
            coeffs[j] += 1
            if coeffs[j] < q:
                break
            coeffs[j] = 0
            j -= 1
        if j == lead:
            coeffs[lead] = 0
            lead += 1
            if lead < s:
                coeffs[lead] = 1
    return best, best_index, examined


@njit(cache=True, nogil=True)
def naive_min_rank(color, s, q, addt, mult, negt, invt):
    """Minimum rank over every nonzero coefficient tuple that is not all-equal.

    No projective reduction, no pruning: the oracle for ``search_chunk``.
    """
    n = color.shape[0]
    coeffs = np.zeros(s, dtype=np.int32)
    mat = np.empty((n, n), dtype=np.int32)
    best = n + 1
    total = 1
    for _ in range(s):
        total *= q
    for index in range(1, total):
        v = index
        for j in range(s - 1, -1, -1):
            coeffs[j] = v % q
            v //= q
        equal = True
        for j in range(1, s):
            if coeffs[j] != coeffs[0]:
                equal = False
                break
        if equal:
            continue
        for i in range(n):
            for j in range(n):
                mat[i, j] = coeffs[color[i, j]]
        r = rank_tables(mat, addt, mult, negt, invt, 0)
        if r < best:
            best = r
    return best
