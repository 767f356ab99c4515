"""Numba-compiled kernels, semantics identical to numpy_impl.

Compiled lazily on first call; cache=True persists the machine code across
processes so the JIT cost is paid once per environment.
"""

import numpy as np
from numba import njit

BACKEND = "numba"


@njit(cache=True)
def _trim(a):
    n = len(a)
    while n > 1 and a[n - 1] == 0:
        n -= 1
    return a[:n]


@njit(cache=True)
def inv_scalar(x, p):
    x %= p
    r = 1
    e = p - 2
    b = x
    while e:
        if e & 1:
            r = (r * b) % p
        b = (b * b) % p
        e >>= 1
    return r


@njit(cache=True)
def mul(a, b, p):
    if (len(a) == 1 and a[0] == 0) or (len(b) == 1 and b[0] == 0):
        return np.zeros(1, dtype=np.int64)
    out = np.zeros(len(a) + len(b) - 1, dtype=np.int64)
    for i in range(len(a)):
        c = a[i]
        if c:
            for j in range(len(b)):
                if b[j]:
                    out[i + j] = (out[i + j] + c * b[j]) % p
    return _trim(out)


@njit(cache=True)
def divmod_(a, b, p):
    db = len(b) - 1
    inv = inv_scalar(b[db], p)
    r = a.copy() % p
    da = len(r) - 1
    if da < db or (len(r) == 1 and r[0] == 0):
        return np.zeros(1, dtype=np.int64), _trim(r)
    q = np.zeros(da - db + 1, dtype=np.int64)
    for k in range(da - db, -1, -1):
        c = (r[k + db] * inv) % p
        if c:
            q[k] = c
            for j in range(db + 1):
                r[k + j] = (r[k + j] - c * b[j]) % p
    return _trim(q), _trim(r)


@njit(cache=True)
def gcd(a, b, p):
    a = _trim(a.copy() % p)
    b = _trim(b.copy() % p)
    while not (len(b) == 1 and b[0] == 0):
        _, r = divmod_(a, b, p)
        a, b = b, r
    lc = a[len(a) - 1]
    if lc != 1 and lc != 0:
        a = (a * inv_scalar(lc, p)) % p
    return _trim(a)


@njit(cache=True)
def powmod(a, e, m, p):
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


@njit(cache=True)
def eval_at(a, x, p):
    acc = 0
    for i in range(len(a) - 1, -1, -1):
        acc = (acc * x + a[i]) % p
    return acc


@njit(cache=True)
def series_inv(u, N, p):
    out = np.zeros(N, dtype=np.int64)
    u0inv = inv_scalar(u[0], p)
    out[0] = u0inv
    for k in range(1, N):
        acc = 0
        top = min(k, len(u) - 1)
        for j in range(1, top + 1):
            acc = (acc + u[j] * out[k - j]) % p
        out[k] = (-acc * u0inv) % p
    return out


@njit(cache=True)
def mul_trunc2(A, B, N, p):
    ra, ca = A.shape
    rb, cb = B.shape
    out = np.zeros((ra + rb - 1, N), dtype=np.int64)
    for i in range(ra):
        for j in range(rb):
            for k in range(min(ca, N)):
                c = A[i, k]
                if c:
                    top = min(cb, N - k)
                    for l in range(top):
                        if B[j, l]:
                            out[i + j, k + l] = (out[i + j, k + l] + c * B[j, l]) % p
    return out
