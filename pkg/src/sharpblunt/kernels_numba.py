"""Numba twins of the int64 kernels.

Same pivoting and reduction order as the numpy route in ``kernels``; every
elementary operation is bounds-checked against ``LIMIT`` so int64 arithmetic
stays exact.  Import of this module fails cleanly when numba is absent.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from .kernels import LIMIT


@njit(cache=True)
def _max_abs(A):
    out = 0
    for i in range(A.shape[0]):
        for j in range(A.shape[1]):
            v = A[i, j]
            if v < 0:
                v = -v
            if v > out:
                out = v
    return out


@njit(cache=True)
def _snf_core(A, U, Ui, V):
    m, n = A.shape
    r = min(m, n)
    for t in range(r):
        while True:
            best = -1
            pi = -1
            pj = -1
            for i in range(t, m):
                for j in range(t, n):
                    x = A[i, j]
                    if x != 0:
                        if x < 0:
                            x = -x
                        if best < 0 or x < best:
                            best = x
                            pi = i
                            pj = j
            if best < 0:
                break
            if pi != t:
                for j in range(n):
                    A[t, j], A[pi, j] = A[pi, j], A[t, j]
                for j in range(m):
                    U[t, j], U[pi, j] = U[pi, j], U[t, j]
                    Ui[j, t], Ui[j, pi] = Ui[j, pi], Ui[j, t]
            if pj != t:
                for i in range(m):
                    A[i, t], A[i, pj] = A[i, pj], A[i, t]
                for i in range(n):
                    V[i, t], V[i, pj] = V[i, pj], V[i, t]
            if A[t, t] < 0:
                for j in range(n):
                    A[t, j] = -A[t, j]
                for j in range(m):
                    U[t, j] = -U[t, j]
                    Ui[j, t] = -Ui[j, t]
            p = A[t, t]
            dirty = False
            for i in range(t + 1, m):
                if A[i, t] != 0:
                    q = A[i, t] // p
                    for j in range(n):
                        A[i, j] -= q * A[t, j]
                    for j in range(m):
                        U[i, j] -= q * U[t, j]
                        Ui[j, t] += q * Ui[j, i]
                    if A[i, t] != 0:
                        dirty = True
            for j in range(t + 1, n):
                if A[t, j] != 0:
                    q = A[t, j] // p
                    for i in range(m):
                        A[i, j] -= q * A[i, t]
                    for i in range(n):
                        V[i, j] -= q * V[i, t]
                    if A[t, j] != 0:
                        dirty = True
            if _max_abs(A) >= LIMIT or _max_abs(U) >= LIMIT:
                return False
            if _max_abs(Ui) >= LIMIT or _max_abs(V) >= LIMIT:
                return False
            if dirty:
                continue
            fix = -1
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i, j] % p != 0:
                        fix = i
                        break
                if fix >= 0:
                    break
            if fix < 0:
                break
            for j in range(n):
                A[t, j] += A[fix, j]
            for j in range(m):
                U[t, j] += U[fix, j]
                Ui[j, fix] -= Ui[j, t]
            if _max_abs(A) >= LIMIT or _max_abs(U) >= LIMIT:
                return False
            if _max_abs(Ui) >= LIMIT:
                return False
        done = True
        for i in range(t, m):
            for j in range(t, n):
                if A[i, j] != 0:
                    done = False
                    break
            if not done:
                break
        if done:
            break
    return True


def snf_int64(M64):
    m, n = M64.shape
    A = M64.copy()
    U = np.eye(m, dtype=np.int64)
    Ui = np.eye(m, dtype=np.int64)
    V = np.eye(n, dtype=np.int64)
    if not _snf_core(A, U, Ui, V):
        return None
    return A, U, Ui, V


@njit(cache=True)
def apply_word_int64(A, word, R):
    rows = R.shape[0]
    n = R.shape[1]
    for k in range(word.shape[0]):
        i = word[k]
        for r in range(rows):
            c = 0
            for j in range(n):
                c += R[r, j] * A[j, i]
            R[r, i] -= c
    return R


@njit(cache=True)
def apply_word_dual_int64(A, word, R):
    rows = R.shape[0]
    n = R.shape[1]
    for k in range(word.shape[0]):
        i = word[k]
        for r in range(rows):
            c = R[r, i]
            if c != 0:
                for j in range(n):
                    R[r, j] -= c * A[j, i]
    return R
