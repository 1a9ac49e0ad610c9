"""Integer kernels behind the lattice and root-system machinery.

Three routes compute the same things with identical pivoting rules:

* an exact arbitrary-precision Python route (always available, always safe),
* a vectorized numpy int64 route,
* a numba-jitted int64 route (default when numba imports).

The accelerated routes guard every elementary operation against entry
growth past ``LIMIT`` and report failure instead of overflowing, in which
case the caller falls back to the exact route.  Select the accelerated
backend with the environment variable ``SHARPBLUNT_BACKEND`` (``numba`` or
``numpy``); small matrices always take the exact route so that cheap paths
never pay JIT warmup.
"""

from __future__ import annotations

import os

import numpy as np

# Entries are kept below 2**31 so that int64 products cannot overflow.
LIMIT = 1 << 31

# Matrices at or below this size skip the accelerated backends entirely.
SMALL_CUTOFF = 12

_BACKEND_ENV = "SHARPBLUNT_BACKEND"


def _resolve_backend(name=None):
    name = name or os.environ.get(_BACKEND_ENV, "")
    if name not in ("", "numba", "numpy", "exact"):
        raise ValueError(f"unknown backend {name!r}; use 'numba', 'numpy' or 'exact'")
    if name in ("numpy", "exact"):
        return name
    try:
        from . import kernels_numba  # noqa: F401
    except ImportError:
        if name == "numba":
            raise
        return "numpy"
    return "numba"


_ACTIVE = _resolve_backend()


def active_backend():
    return _ACTIVE


def set_backend(name):
    """Force a kernel backend; mainly for tests and benchmarks."""
    global _ACTIVE
    _ACTIVE = _resolve_backend(name)
    return _ACTIVE


# ---------------------------------------------------------------------------
# Smith normal form
#
# Returns (D, U, Uinv, V) with U*M*V = D, U and V unimodular, D diagonal with
# a nonnegative divisibility chain.  The pivot rule (globally minimal absolute
# value, ties broken row-major) is shared by all three implementations so the
# outputs are bit-identical.
# ---------------------------------------------------------------------------


def snf_exact(M):
    m = len(M)
    n = len(M[0]) if m else 0
    A = [list(row) for row in M]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    Ui = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(a, b):
        A[a], A[b] = A[b], A[a]
        U[a], U[b] = U[b], U[a]
        for r in Ui:
            r[a], r[b] = r[b], r[a]

    def swap_cols(a, b):
        for r in A:
            r[a], r[b] = r[b], r[a]
        for r in V:
            r[a], r[b] = r[b], r[a]

    def negate_row(a):
        A[a] = [-x for x in A[a]]
        U[a] = [-x for x in U[a]]
        for r in Ui:
            r[a] = -r[a]

    def row_op(i, t, q):
        # row_i -= q * row_t
        Ai, At = A[i], A[t]
        for j in range(n):
            Ai[j] -= q * At[j]
        Uii, Ut = U[i], U[t]
        for j in range(m):
            Uii[j] -= q * Ut[j]
        for r in Ui:
            r[t] += q * r[i]

    def col_op(j, t, q):
        # col_j -= q * col_t
        for r in A:
            r[j] -= q * r[t]
        for r in V:
            r[j] -= q * r[t]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                Ai = A[i]
                for j in range(t, n):
                    x = Ai[j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
            if best is None:
                break
            _, pi, pj = best
            if pi != t:
                swap_rows(t, pi)
            if pj != t:
                swap_cols(t, pj)
            if A[t][t] < 0:
                negate_row(t)
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    row_op(i, t, A[i][t] // p)
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j]:
                    col_op(j, t, A[t][j] // p)
                    if A[t][j]:
                        dirty = True
            if dirty:
                continue
            fix = None
            for i in range(t + 1, m):
                Ai = A[i]
                for j in range(t + 1, n):
                    if Ai[j] % p:
                        fix = i
                        break
                if fix is not None:
                    break
            if fix is None:
                break
            row_op(t, fix, -1)
        if all(x == 0 for row in A[t:] for x in row[t:]):
            break
    return A, U, Ui, V


def _snf_numpy(M64):
    m, n = M64.shape
    A = M64.copy()
    U = np.eye(m, dtype=np.int64)
    Ui = np.eye(m, dtype=np.int64)
    V = np.eye(n, dtype=np.int64)

    def ok():
        return (
            np.abs(A).max(initial=0) < LIMIT
            and np.abs(U).max(initial=0) < LIMIT
            and np.abs(Ui).max(initial=0) < LIMIT
            and np.abs(V).max(initial=0) < LIMIT
        )

    for t in range(min(m, n)):
        while True:
            sub = np.abs(A[t:, t:])
            if not sub.any():
                break
            masked = np.where(sub > 0, sub, np.iinfo(np.int64).max)
            flat = int(np.argmin(masked))
            pi, pj = t + flat // (n - t), t + flat % (n - t)
            if pi != t:
                A[[t, pi]] = A[[pi, t]]
                U[[t, pi]] = U[[pi, t]]
                Ui[:, [t, pi]] = Ui[:, [pi, t]]
            if pj != t:
                A[:, [t, pj]] = A[:, [pj, t]]
                V[:, [t, pj]] = V[:, [pj, t]]
            if A[t, t] < 0:
                A[t] = -A[t]
                U[t] = -U[t]
                Ui[:, t] = -Ui[:, t]
            p = A[t, t]
            dirty = False
            col = A[t + 1 :, t]
            if col.any():
                q = col // p
                A[t + 1 :, :] -= q[:, None] * A[t, :]
                U[t + 1 :, :] -= q[:, None] * U[t, :]
                Ui[:, t] += Ui[:, t + 1 :] @ q
                if A[t + 1 :, t].any():
                    dirty = True
            row = A[t, t + 1 :]
            if row.any():
                q = row // p
                A[:, t + 1 :] -= A[:, t : t + 1] * q[None, :]
                V[:, t + 1 :] -= V[:, t : t + 1] * q[None, :]
                if A[t, t + 1 :].any():
                    dirty = True
            if not ok():
                return None
            if dirty:
                continue
            rem = A[t + 1 :, t + 1 :] % p
            if rem.any():
                fix = t + 1 + int(np.argmax(rem.any(axis=1)))
                A[t, :] += A[fix, :]
                U[t, :] += U[fix, :]
                Ui[:, fix] -= Ui[:, t]
                if not ok():
                    return None
                continue
            break
        if not A[t:, t:].any():
            break
    return A, U, Ui, V


def snf(M, backend=None):
    """Smith decomposition (D, U, Uinv, V) of an integer matrix.

    Rows of ``M`` may be any int sequences.  The result is in plain Python
    ints regardless of the route taken.
    """
    m = len(M)
    n = len(M[0]) if m else 0
    use = backend or _ACTIVE
    if use != "exact" and m > SMALL_CUTOFF and n > SMALL_CUTOFF:
        if all(abs(x) < LIMIT for row in M for x in row):
            M64 = np.array([[int(x) for x in row] for row in M], dtype=np.int64)
            if use == "numba":
                from . import kernels_numba

                out = kernels_numba.snf_int64(M64)
            else:
                out = _snf_numpy(M64)
            if out is not None:
                return tuple([[int(x) for x in row] for row in mat] for mat in out)
    return snf_exact(M)


def invariant_factors_from_diag(D):
    """Diagonal entries greater than one, in chain order."""
    k = min(len(D), len(D[0]) if D else 0)
    return tuple(int(D[i][i]) for i in range(k) if D[i][i] not in (0, 1))


# ---------------------------------------------------------------------------
# Reflection words
# ---------------------------------------------------------------------------


def longest_word(cartan, subset=None):
    """Word (list of simple-reflection indices) for the longest element.

    Repeatedly applies the lowest-index simple reflection with a positive
    weight coordinate, driving the all-ones vector to the antidominant
    chamber.  ``subset`` restricts to a parabolic, with indices kept global.
    """
    n = len(cartan)
    idx = list(range(n)) if subset is None else sorted(subset)
    c = {i: 1 for i in idx}
    word = []
    while True:
        i = next((j for j in idx if c[j] > 0), None)
        if i is None:
            return word
        ci = c[i]
        for j in idx:
            c[j] -= ci * cartan[i][j]
        word.append(i)


def apply_word_rows(cartan, word, rows, backend=None):
    """Apply a reflection word to row vectors in simple-root coordinates.

    Step ``i`` maps r to r - (sum_j r_j A[j][i]) e_i; the word acts left to
    right (first letter first).
    """
    if not rows:
        return []
    use = backend or _ACTIVE
    R = np.array([[int(x) for x in r] for r in rows], dtype=np.int64)
    A = np.array(cartan, dtype=np.int64)
    w = np.array(word, dtype=np.int64)
    if use == "numba":
        from . import kernels_numba

        out = kernels_numba.apply_word_int64(A, w, R)
    else:
        for i in word:
            R[:, i] -= R @ A[:, i]
        out = R
    if np.abs(out).max(initial=0) >= LIMIT:
        raise OverflowError("reflection word application exceeded kernel bounds")
    return [[int(x) for x in row] for row in out]


def apply_word_dual_rows(cartan, word, rows, backend=None):
    """Apply a reflection word to functionals given by evaluation coordinates.

    Row u holds the values of a functional on the simple roots; step ``i``
    maps u to u - u_i * A[:, i].  Word order matches apply_word_rows.
    """
    if not rows:
        return []
    use = backend or _ACTIVE
    R = np.array([[int(x) for x in r] for r in rows], dtype=np.int64)
    A = np.array(cartan, dtype=np.int64)
    w = np.array(word, dtype=np.int64)
    if use == "numba":
        from . import kernels_numba

        out = kernels_numba.apply_word_dual_int64(A, w, R)
    else:
        for i in word:
            R -= np.outer(R[:, i].copy(), A[:, i])
        out = R
    if np.abs(out).max(initial=0) >= LIMIT:
        raise OverflowError("reflection word application exceeded kernel bounds")
    return [[int(x) for x in row] for row in out]


# ---------------------------------------------------------------------------
# Root closure
# ---------------------------------------------------------------------------


def root_closure(cartan):
    """All roots generated from the simple roots by simple reflections.

    Breadth-first closure in simple-root coordinates; returns rows sorted
    lexicographically.  Correct for any finite Cartan matrix.
    """
    n = len(cartan)
    A = np.array(cartan, dtype=np.int64)
    seen = {tuple(row) for row in np.eye(n, dtype=np.int64).tolist()}
    frontier = np.eye(n, dtype=np.int64)
    while frontier.size:
        batch = []
        for i in range(n):
            refl = frontier.copy()
            refl[:, i] -= refl @ A[:, i]
            batch.append(refl)
        cand = np.concatenate(batch, axis=0)
        fresh = []
        for row in cand.tolist():
            key = tuple(row)
            if key not in seen:
                seen.add(key)
                fresh.append(row)
        frontier = np.array(fresh, dtype=np.int64) if fresh else np.empty((0, n), np.int64)
    return sorted(seen)
