# cython: boundscheck=False, wraparound=False, cdivision=True
"""Dense polynomial arithmetic over Z/p, compiled backend.

Same list-of-ints contract as _zpoly_py. Coefficients must fit the int64
fast path: callers (mkt.zkernel) route p >= 2^31 to the pure backend, so
every product a*b of reduced values stays below 2^62.
"""

from libc.stdlib cimport free, malloc


cdef long long* _to_c(list a, Py_ssize_t* n) except NULL:
    cdef Py_ssize_t i, m = len(a)
    cdef long long* buf = <long long*> malloc((m if m > 0 else 1) * sizeof(long long))
    if buf == NULL:
        raise MemoryError()
    for i in range(m):
        buf[i] = a[i]
    n[0] = m
    return buf


cdef list _from_c(long long* buf, Py_ssize_t n):
    cdef Py_ssize_t m = n
    while m > 0 and buf[m - 1] == 0:
        m -= 1
    cdef list out = [0] * m
    cdef Py_ssize_t i
    for i in range(m):
        out[i] = buf[i]
    return out


cdef long long _mod(long long x, long long p):
    cdef long long r = x % p
    if r < 0:
        r += p
    return r


cdef long long _powmod_ll(long long base, long long e, long long p):
    cdef long long result = 1 % p
    base = _mod(base, p)
    while e > 0:
        if e & 1:
            result = (result * base) % p
        base = (base * base) % p
        e >>= 1
    return result


cdef long long _inv_ll(long long a, long long p):
    return _powmod_ll(a, p - 2, p)


def trim(list a):
    cdef Py_ssize_t n = len(a)
    while n and a[n - 1] == 0:
        n -= 1
    return a[:n]


def zp_add(list a, list b, p):
    cdef long long pp = p
    cdef Py_ssize_t i, na = len(a), nb = len(b)
    cdef Py_ssize_t n = na if na > nb else nb
    cdef list out = [0] * n
    cdef long long x, y
    for i in range(n):
        x = a[i] if i < na else 0
        y = b[i] if i < nb else 0
        out[i] = (x + y) % pp
    return trim(out)


def zp_sub(list a, list b, p):
    cdef long long pp = p
    cdef Py_ssize_t i, na = len(a), nb = len(b)
    cdef Py_ssize_t n = na if na > nb else nb
    cdef list out = [0] * n
    cdef long long x, y
    for i in range(n):
        x = a[i] if i < na else 0
        y = b[i] if i < nb else 0
        out[i] = _mod(x - y, pp)
    return trim(out)


def zp_neg(list a, p):
    cdef long long pp = p
    cdef Py_ssize_t i
    cdef list out = [0] * len(a)
    for i in range(len(a)):
        out[i] = _mod(-(<long long> a[i]), pp)
    return out


def zp_scale(list a, c, p):
    cdef long long pp = p
    cdef long long cc = _mod(c, pp)
    if cc == 0:
        return []
    cdef Py_ssize_t i
    cdef list out = [0] * len(a)
    for i in range(len(a)):
        out[i] = (<long long> a[i]) * cc % pp
    return trim(out)


def zp_mul(list a, list b, p):
    if not a or not b:
        return []
    cdef long long pp = p
    cdef Py_ssize_t na, nb, i, j
    cdef long long* ca = _to_c(a, &na)
    cdef long long* cb = _to_c(b, &nb)
    cdef Py_ssize_t n = na + nb - 1
    cdef long long* acc = <long long*> malloc(n * sizeof(long long))
    if acc == NULL:
        free(ca); free(cb)
        raise MemoryError()
    for i in range(n):
        acc[i] = 0
    cdef long long x
    for i in range(na):
        x = ca[i]
        if x == 0:
            continue
        for j in range(nb):
            acc[i + j] = (acc[i + j] + x * cb[j]) % pp
    out = _from_c(acc, n)
    free(ca); free(cb); free(acc)
    return out


def zp_divmod(list a, list b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    cdef long long pp = p
    cdef Py_ssize_t na, nb, i, k
    cdef long long* r = _to_c(a, &na)
    cdef long long* cb = _to_c(b, &nb)
    cdef Py_ssize_t db = nb - 1, da = na - 1
    if da < db:
        free(r); free(cb)
        return [], trim(list(a))
    cdef long long inv_lead = _inv_ll(cb[db], pp)
    cdef Py_ssize_t nq = da - db + 1
    cdef long long* q = <long long*> malloc(nq * sizeof(long long))
    if q == NULL:
        free(r); free(cb)
        raise MemoryError()
    cdef long long c
    for k in range(nq - 1, -1, -1):
        c = r[db + k] % pp
        if c != 0:
            c = c * inv_lead % pp
            q[k] = c
            for i in range(db + 1):
                r[i + k] = _mod(r[i + k] - c * cb[i], pp)
        else:
            q[k] = 0
    qq = _from_c(q, nq)
    rr = _from_c(r, db if db > 0 else 0)
    free(r); free(cb); free(q)
    return qq, rr


def zp_rem(list a, list b, p):
    return zp_divmod(a, b, p)[1]


def zp_gcd(list a, list b, p):
    cdef long long pp = p
    a, b = list(a), list(b)
    while b:
        a, b = b, zp_rem(a, b, p)
    cdef long long inv
    cdef Py_ssize_t i
    if a:
        inv = _inv_ll(a[len(a) - 1], pp)
        for i in range(len(a)):
            a[i] = (<long long> a[i]) * inv % pp
    return a


def zp_invmod(list a, list f, p):
    cdef long long pp = p
    r0, r1 = list(f), zp_rem(a, f, p)
    s0, s1 = [], [1]
    while r1:
        q, r2 = zp_divmod(r0, r1, p)
        r0, r1 = r1, r2
        s0, s1 = s1, zp_sub(s0, zp_mul(q, s1, p), p)
    if len(r0) != 1:
        raise ZeroDivisionError("element not invertible modulo f")
    return zp_scale(s0, _inv_ll(r0[0], pp), p)


def zp_mulmod(list a, list b, list f, p):
    return zp_rem(zp_mul(a, b, p), f, p)


def zp_powmod(list a, e, list f, p):
    result = zp_rem([1], f, p)
    base = zp_rem(a, f, p)
    ee = e
    while ee:
        if ee & 1:
            result = zp_mulmod(result, base, f, p)
        base = zp_mulmod(base, base, f, p)
        ee >>= 1
    return result


def zp_eval(list a, x, p):
    cdef long long pp = p
    cdef long long xx = _mod(x, pp)
    cdef long long acc = 0
    cdef Py_ssize_t i
    for i in range(len(a) - 1, -1, -1):
        acc = (acc * xx + <long long> a[i]) % pp
    return acc
