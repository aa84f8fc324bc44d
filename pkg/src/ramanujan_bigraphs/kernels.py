"""Hot kernels: characteristic polynomials of integer matrices modulo a prime.

Both backends compute the same thing. A similarity transform brings the matrix
to upper Hessenberg form over GF(p), then the characteristic polynomial is
read off with the O(n^3) Hessenberg recurrence. Primes must lie below 2**31 so
that every product of two residues fits in int64.

Coefficient arrays are lowest degree first and have length n + 1.
"""
import numpy as np

from ._accel import default_backend, njit

PRIME_LIMIT = 2**31


@njit()
def _inv_mod(a, p):
    result = 1
    base = a % p
    e = p - 2
    while e > 0:
        if e & 1:
            result = result * base % p
        base = base * base % p
        e >>= 1
    return result


@njit()
def _charpoly_mod_loops(A, p):
    n = A.shape[0]
    H = np.empty((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            H[i, j] = A[i, j] % p

    for k in range(n - 2):
        piv = -1
        for i in range(k + 1, n):
            if H[i, k] != 0:
                piv = i
                break
        if piv == -1:
            continue
        if piv != k + 1:
            for j in range(n):
                tmp = H[piv, j]
                H[piv, j] = H[k + 1, j]
                H[k + 1, j] = tmp
            for j in range(n):
                tmp = H[j, piv]
                H[j, piv] = H[j, k + 1]
                H[j, k + 1] = tmp
        inv = _inv_mod(H[k + 1, k], p)
        for i in range(k + 2, n):
            f = H[i, k] * inv % p
            if f == 0:
                continue
            for j in range(k, n):
                H[i, j] = (H[i, j] - f * H[k + 1, j] % p + p) % p
            for j in range(n):
                H[j, k + 1] = (H[j, k + 1] + f * H[j, i]) % p

    P = np.zeros((n + 1, n + 1), dtype=np.int64)
    P[0, 0] = 1
    for m in range(1, n + 1):
        d = H[m - 1, m - 1]
        # (x - d) * P[m-1]
        for c in range(m, 0, -1):
            P[m, c] = (P[m - 1, c - 1] - d * P[m - 1, c] % p + p) % p
        P[m, 0] = (p - d * P[m - 1, 0] % p) % p
        t = 1
        for i in range(1, m):
            t = t * H[m - i, m - i - 1] % p
            if t == 0:
                break
            coef = t * H[m - i - 1, m - 1] % p
            if coef == 0:
                continue
            for c in range(m - i):
                P[m, c] = (P[m, c] - coef * P[m - i - 1, c] % p + p) % p
    return P[n].copy()


def _charpoly_mod_numpy(A, p):
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[0]
    H = A % p

    for k in range(n - 2):
        nz = np.flatnonzero(H[k + 1:, k])
        if nz.size == 0:
            continue
        piv = k + 1 + int(nz[0])
        if piv != k + 1:
            H[[piv, k + 1], :] = H[[k + 1, piv], :]
            H[:, [piv, k + 1]] = H[:, [k + 1, piv]]
        inv = pow(int(H[k + 1, k]), p - 2, p)
        f = H[k + 2:, k] * inv % p
        if not f.any():
            continue
        H[k + 2:, k:] = (H[k + 2:, k:] - np.outer(f, H[k + 1, k:]) % p) % p
        H[:, k + 1] = (H[:, k + 1] + (H[:, k + 2:] * f % p).sum(axis=1)) % p

    P = np.zeros((n + 1, n + 1), dtype=np.int64)
    P[0, 0] = 1
    for m in range(1, n + 1):
        d = int(H[m - 1, m - 1])
        row = np.zeros(n + 1, dtype=np.int64)
        row[1:m + 1] = P[m - 1, :m]
        row[:m] = (row[:m] - d * P[m - 1, :m] % p) % p
        coefs = np.zeros(m, dtype=np.int64)
        t = 1
        for i in range(1, m):
            t = t * int(H[m - i, m - i - 1]) % p
            if t == 0:
                break
            coefs[i] = t * int(H[m - i - 1, m - 1]) % p
        if m > 1 and coefs.any():
            # rows P[m-i-1] for i = 1..m-1
            idx = np.arange(1, m)
            acc = (coefs[idx, None] * P[m - idx - 1, :] % p).sum(axis=0) % p
            row = (row - acc) % p
        P[m] = row
    return P[n].copy()


def charpoly_mod(A, p, backend=None):
    """Characteristic polynomial det(xI - A) of an integer matrix modulo ``p``.

    ``A`` is a square int64 array (entries may be negative); ``p`` is a prime
    below 2**31. Returns residues in ``[0, p)``, lowest degree first.
    """
    if not 2 <= p < PRIME_LIMIT:
        raise ValueError(f"modulus {p} out of range")
    A = np.ascontiguousarray(A, dtype=np.int64)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("expected a square matrix")
    if A.shape[0] == 0:
        return np.ones(1, dtype=np.int64)
    backend = backend or default_backend()
    if backend == "numba":
        return _charpoly_mod_loops(A, np.int64(p))
    if backend == "numpy":
        return _charpoly_mod_numpy(A, p)
    if backend == "python":
        return _charpoly_mod_loops.py_func(A, p)
    raise ValueError(f"unknown backend {backend!r}")
