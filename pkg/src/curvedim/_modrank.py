"""Rank of an integer matrix over GF(p) by dense Gaussian elimination."""

from __future__ import annotations

import numba
import numpy as np

MERSENNE_31 = 2**31 - 1


@numba.njit(cache=True)
def _inverse(x, p):
    e = p - 2
    r = 1
    while e:
        if e & 1:
            r = r * x % p
        x = x * x % p
        e >>= 1
    return r


@numba.njit(cache=True)
def _rank_mersenne(A):
    p = 2147483647
    rows, cols = A.shape
    rank = 0
    for col in range(cols):
        if rank == rows:
            break
        piv = -1
        for i in range(rank, rows):
            if A[i, col] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != rank:
            for j in range(col, cols):
                t = A[rank, j]
                A[rank, j] = A[piv, j]
                A[piv, j] = t
        inv = _inverse(A[rank, col], p)
        for j in range(col, cols):
            A[rank, j] = A[rank, j] * inv % p
        for i in range(rank + 1, rows):
            f = A[i, col]
            if f != 0:
                f = p - f
                for j in range(col, cols):
                    y = A[i, j] + f * A[rank, j]
                    y = (y & p) + (y >> 31)
                    y = (y & p) + (y >> 31)
                    if y >= p:
                        y -= p
                    A[i, j] = y
        rank += 1
    return rank


@numba.njit(cache=True)
def _rank_generic(A, p):
    rows, cols = A.shape
    rank = 0
    for col in range(cols):
        if rank == rows:
            break
        piv = -1
        for i in range(rank, rows):
            if A[i, col] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != rank:
            for j in range(col, cols):
                t = A[rank, j]
                A[rank, j] = A[piv, j]
                A[piv, j] = t
        inv = _inverse(A[rank, col], p)
        for j in range(col, cols):
            A[rank, j] = A[rank, j] * inv % p
        for i in range(rank + 1, rows):
            f = A[i, col]
            if f != 0:
                f = p - f
                for j in range(col, cols):
                    A[i, j] = (A[i, j] + f * A[rank, j]) % p
        rank += 1
    return rank


def rank_mod_p(A: np.ndarray, p: int) -> int:
    """Rank of ``A`` modulo the prime ``p`` (< 2**31); ``A`` is not modified."""
    if p >= 2**31:
        raise ValueError("prime must be below 2**31 for int64 elimination")
    if A.size == 0:
        return 0
    M = np.array(A, dtype=np.int64) % p
    if M.shape[0] > M.shape[1]:
        M = np.ascontiguousarray(M.T)
    if p == MERSENNE_31:
        return int(_rank_mersenne(M))
    return int(_rank_generic(M, p))
