"""Pure-numpy kernels for dense polynomial arithmetic mod p.

Coefficient arrays are int64, constant term first, always length >= 1 and
trimmed (trailing zeros removed) except for the zero polynomial [0].
All moduli satisfy p < 2**31 so a product of two residues fits in int64;
sums are reduced immediately so no intermediate ever overflows.
"""

import numpy as np

BACKEND = "numpy"


def _trim(a):
    n = len(a)
    while n > 1 and a[n - 1] == 0:
        n -= 1
    return a[:n]


def inv_scalar(x, p):
    x %= p
    # binary extended power: x^(p-2) mod p
    r = 1
    e = p - 2
    b = x
    while e:
        if e & 1:
            r = (r * b) % p
        b = (b * b) % p
        e >>= 1
    return r


def mul(a, b, p):
    if (len(a) == 1 and a[0] == 0) or (len(b) == 1 and b[0] == 0):
        return np.zeros(1, dtype=np.int64)
    out = np.zeros(len(a) + len(b) - 1, dtype=np.int64)
    for i in range(len(a)):
        c = a[i]
        if c:
            out[i:i + len(b)] = (out[i:i + len(b)] + c * b) % p
    return _trim(out)


def divmod_(a, b, p):
    db = len(b) - 1
    lead = int(b[db])
    inv = inv_scalar(lead, p)
    r = a.copy() % p
    da = len(r) - 1
    if da < db or (len(r) == 1 and r[0] == 0):
        return np.zeros(1, dtype=np.int64), _trim(r)
    q = np.zeros(da - db + 1, dtype=np.int64)
    for k in range(da - db, -1, -1):
        c = (r[k + db] * inv) % p
        if c:
            q[k] = c
            r[k:k + db + 1] = (r[k:k + db + 1] - c * b) % p
    return _trim(q), _trim(r)


def gcd(a, b, p):
    a = _trim(a.copy() % p)
    b = _trim(b.copy() % p)
    while not (len(b) == 1 and b[0] == 0):
        _, r = divmod_(a, b, p)
        a, b = b, r
    if a[len(a) - 1] != 1 and a[len(a) - 1] != 0:
        a = (a * inv_scalar(int(a[len(a) - 1]), p)) % p
    return _trim(a)


def powmod(a, e, m, p):
    """a**e mod (m, p) with 0 <= e < 2**63."""
    _, r = divmod_(a, m, p)
    out = np.zeros(1, dtype=np.int64)
    out[0] = 1
    b = r
    while e:
        if e & 1:
            out = divmod_(mul(out, b, p), m, p)[1]
        e >>= 1
        if e:
            b = divmod_(mul(b, b, p), m, p)[1]
    return out


def eval_at(a, x, p):
    acc = 0
    for i in range(len(a) - 1, -1, -1):
        acc = (acc * x + a[i]) % p
    return acc


def series_inv(u, N, p):
    """Inverse of the power series u (u[0] != 0) mod x^N."""
    out = np.zeros(N, dtype=np.int64)
    u0inv = inv_scalar(int(u[0]), p)
    out[0] = u0inv
    for k in range(1, N):
        acc = 0
        top = min(k, len(u) - 1)
        for j in range(1, top + 1):
            acc = (acc + u[j] * out[k - j]) % p
        out[k] = (-acc * u0inv) % p
    return out


def mul_trunc2(A, B, N, p):
    """Truncated product of bivariate arrays (rows: main-var power, cols: x
    powers < N)."""
    ra, ca = A.shape
    rb, cb = B.shape
    out = np.zeros((ra + rb - 1, N), dtype=np.int64)
    for i in range(ra):
        for j in range(rb):
            row = out[i + j]
            for k in range(min(ca, N)):
                c = A[i, k]
                if c:
                    top = min(cb, N - k)
                    row[k:k + top] = (row[k:k + top] + c * B[j, :top]) % p
    return out
