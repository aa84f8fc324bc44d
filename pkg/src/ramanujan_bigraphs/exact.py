"""Exact integer linear algebra and polynomial arithmetic.

Polynomials are lists of Python ints (or Fractions), lowest degree first,
with no trailing zeros except for the zero polynomial ``[]``.
"""
import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .kernels import PRIME_LIMIT, charpoly_mod


# -- polynomial helpers ------------------------------------------------------

def trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def degree(a):
    return len(trim(a)) - 1


def poly_add(a, b):
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                 for i in range(n)])


def poly_neg(a):
    return [-c for c in a]


def poly_sub(a, b):
    return poly_add(a, poly_neg(b))


def poly_scale(a, c):
    return trim([c * x for x in a])


def poly_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return trim(out)


def poly_pow(a, e):
    result = [1]
    base = list(a)
    while e > 0:
        if e & 1:
            result = poly_mul(result, base)
        base = poly_mul(base, base)
        e >>= 1
    return result


def poly_eval(a, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def poly_derivative(a):
    return trim([i * a[i] for i in range(1, len(a))])


def poly_divmod(a, b):
    """Division over the rationals; exact ints are kept when possible."""
    a = trim(a)
    b = trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [0] * max(len(a) - len(b) + 1, 0)
    r = [Fraction(c) for c in a]
    lead = Fraction(b[-1])
    for k in range(len(a) - len(b), -1, -1):
        coef = r[k + len(b) - 1] / lead
        q[k] = coef
        if coef:
            for j, bj in enumerate(b):
                r[k + j] -= coef * bj
    return _intify(trim(q)), _intify(trim(r[:len(b) - 1]))


def _intify(a):
    return [int(c) if isinstance(c, Fraction) and c.denominator == 1 else c for c in a]


def poly_exact_div(a, b):
    q, r = poly_divmod(a, b)
    if r:
        raise ArithmeticError("polynomial division is not exact")
    return q


def multiplicity_of(a, factor):
    """Largest m with factor**m dividing a (a nonzero)."""
    m = 0
    a = trim(a)
    while True:
        q, r = poly_divmod(a, factor)
        if r:
            return m
        a = q
        m += 1


def content(a):
    g = 0
    for c in a:
        g = math.gcd(g, int(c))
    return g


def primitive_part(a):
    a = trim(a)
    if not a:
        return a
    g = content(a)
    if a[-1] < 0:
        g = -g
    return [c // g for c in a]


def sign_positive_prem(a, b):
    """Remainder of c*a by b for some c > 0, with integer coefficients."""
    a = trim(a)
    b = trim(b)
    db = len(b) - 1
    lead = b[-1]
    r = list(a)
    while len(r) - 1 >= db and r:
        dr = len(r) - 1
        coef = r[-1]
        shift = dr - db
        # r <- lead*r - coef*x^shift*b keeps integrality; |lead| keeps the sign
        s = 1 if lead > 0 else -1
        r = [abs(lead) * c for c in r]
        for j, bj in enumerate(b):
            r[shift + j] -= s * coef * bj
        r = trim(r)
    return r


def poly_gcd(a, b):
    """Primitive gcd of two integer polynomials (positive leading coefficient)."""
    a = primitive_part(a)
    b = primitive_part(b)
    while b:
        r = primitive_part(sign_positive_prem(a, b))
        a, b = b, r
    return a


# -- root counting -----------------------------------------------------------

def _sign_at_infinity(a, positive):
    lead = a[-1]
    s = 1 if lead > 0 else -1
    if not positive and (len(a) - 1) % 2 == 1:
        s = -s
    return s


def _variations(signs):
    v = 0
    prev = 0
    for s in signs:
        if s == 0:
            continue
        if prev and s != prev:
            v += 1
        prev = s
    return v


def signed_remainder_sequence(a, b):
    seq = [trim(a), trim(b)]
    while seq[-1]:
        r = sign_positive_prem(seq[-2], seq[-1])
        if not r:
            break
        g = content(r)
        seq.append([-(c // g) for c in r])
    return [s for s in seq if s]


def tarski_query(p, q):
    """#{real roots x of p with q(x) > 0} - #{... with q(x) < 0}.

    Roots are counted without multiplicity; ``p`` need not be squarefree.
    """
    p = trim(p)
    if len(p) <= 1:
        return 0
    seq = signed_remainder_sequence(p, poly_mul(poly_derivative(p), trim(q)))
    lo = _variations([_sign_at_infinity(s, False) for s in seq])
    hi = _variations([_sign_at_infinity(s, True) for s in seq])
    return lo - hi


def count_real_roots(p):
    """Number of distinct real roots of an integer polynomial."""
    return tarski_query(p, [1])


def count_roots_where_positive(p, g):
    """Number of distinct real roots x of ``p`` with ``g(x) > 0``, exactly."""
    n = count_real_roots(p)
    common = poly_gcd(p, g)
    z = count_real_roots(common) if len(common) > 1 else 0
    taq = tarski_query(p, g)
    pos2 = taq + n - z
    assert pos2 % 2 == 0
    return pos2 // 2


# -- characteristic polynomials ----------------------------------------------

def berkowitz_charpoly(M):
    """det(xI - M) by Berkowitz's division-free algorithm over exact ints.

    O(n^4); used as an independent check of :func:`charpoly` on small inputs.
    """
    A = [[int(x) for x in row] for row in np.asarray(M).tolist()]
    n = len(A)
    # vect holds the char poly of the leading r x r block, highest degree first
    vect = [1]
    for r in range(n):
        # block partition of the leading (r+1)x(r+1) submatrix
        R = A[r][:r]                      # row r, columns < r
        C = [A[i][r] for i in range(r)]   # column r, rows < r
        a = A[r][r]
        S = [row[:r] for row in A[:r]]
        # Toeplitz column: 1, -a, -R C, -R S C, -R S^2 C, ...
        col = [1, -a]
        v = C
        for _ in range(r):
            col.append(-sum(x * y for x, y in zip(R, v)))
            v = [sum(S[i][j] * v[j] for j in range(r)) for i in range(r)]
        # product of the (r+2) x (r+1) lower-triangular Toeplitz matrix with vect
        vect = [sum(col[i - j] * vect[j] for j in range(min(i, len(vect) - 1) + 1)
                    if i - j < len(col))
                for i in range(r + 2)]
    return list(reversed(vect))


def _is_prime(n):
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=None)
def _primes(count):
    out = []
    n = PRIME_LIMIT - 1
    while len(out) < count:
        if _is_prime(n):
            out.append(n)
        n -= 2
    return tuple(out)


def coefficient_bound_bits(M):
    """log2 of a bound on every |coefficient| of det(xI - M).

    Each coefficient is a signed sum of principal minors; Hadamard bounds each
    minor by the product of its rows' norms, so prod(1 + ||row_i||) bounds the
    whole sum.
    """
    M = np.asarray(M, dtype=np.float64)
    norms = np.sqrt((M * M).sum(axis=1))
    return float(np.log2(1.0 + norms).sum())


def charpoly(M, backend=None):
    """Exact integer characteristic polynomial det(xI - M), lowest degree first.

    Multimodular: residues from :func:`kernels.charpoly_mod` are combined by
    CRT until the modulus exceeds twice the Hadamard-type coefficient bound.
    """
    M = np.asarray(M, dtype=np.int64)
    n = M.shape[0]
    if n == 0:
        return [1]
    bits = coefficient_bound_bits(M) + 2
    need = int(bits // 30) + 2
    primes = _primes(need)
    x = [0] * (n + 1)
    modulus = 1
    for p in primes:
        res = charpoly_mod(M, p, backend=backend)
        inv = pow(modulus % p, -1, p)
        for k in range(n + 1):
            delta = (int(res[k]) - x[k]) % p * inv % p
            x[k] += modulus * delta
        modulus *= p
    half = modulus // 2
    return [c - modulus if c > half else c for c in x]


def bareiss_rank(M):
    """Rank of an integer matrix by fraction-free Gaussian elimination."""
    A = [[int(x) for x in row] for row in np.asarray(M).tolist()]
    if not A:
        return 0
    rows, cols = len(A), len(A[0])
    rank = 0
    prev = 1
    for c in range(cols):
        if rank == rows:
            break
        piv = next((i for i in range(rank, rows) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        pr = A[rank]
        pc = pr[c]
        for i in range(rank + 1, rows):
            row = A[i]
            f = row[c]
            if f == 0:
                A[i] = [x * pc // prev for x in row]
                continue
            A[i] = [(pc * row[j] - f * pr[j]) // prev for j in range(cols)]
        prev = pc
        rank += 1
    return rank
