# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled F_p polynomial kernels (moduli below 2**31).

Same interface and list conventions as ``_kernels_py``.
"""

ctypedef long long i64


cdef inline i64 _mod(i64 x, i64 p):
    x %= p
    return x + p if x < 0 else x


cdef i64 _inv(i64 a, i64 p):
    cdef i64 t = 0, newt = 1, r = p, newr = _mod(a, p), q, tmp
    if newr == 0:
        raise ZeroDivisionError("inverse of zero in F_p")
    while newr:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    return _mod(t, p)


cdef list _trim(list a):
    cdef Py_ssize_t n = len(a)
    while n and a[n - 1] == 0:
        n -= 1
    del a[n:]
    return a


def trim(list a):
    return _trim(a)


cpdef list poly_add(list a, list b, i64 p):
    cdef Py_ssize_t i
    cdef list out
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i in range(len(b)):
        out[i] = _mod(<i64>out[i] + <i64>b[i], p)
    return _trim(out)


cpdef list poly_sub(list a, list b, i64 p):
    cdef Py_ssize_t i, n = max(len(a), len(b))
    cdef list out = [0] * n
    for i in range(len(a)):
        out[i] = a[i]
    for i in range(len(b)):
        out[i] = _mod(<i64>out[i] - <i64>b[i], p)
    return _trim(out)


cpdef list poly_scale(list a, i64 c, i64 p):
    cdef Py_ssize_t i
    c = _mod(c, p)
    if c == 0:
        return []
    return [_mod(<i64>a[i] * c, p) for i in range(len(a))]


cpdef list poly_mul(list a, list b, i64 p):
    cdef Py_ssize_t i, j, na = len(a), nb = len(b)
    cdef i64 x
    if na == 0 or nb == 0:
        return []
    cdef i64[::1] acc
    import array
    buf = array.array("q", [0]) * (na + nb - 1)
    acc = buf
    for i in range(na):
        x = a[i]
        if x == 0:
            continue
        for j in range(nb):
            acc[i + j] = (acc[i + j] + x * <i64>b[j]) % p
    return _trim([acc[i] for i in range(na + nb - 1)])


cpdef tuple poly_divmod(list a, list b, i64 p):
    cdef Py_ssize_t k, j, na = len(a), db
    cdef i64 inv, c
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    db = len(b) - 1
    if na - 1 < db:
        return [], list(a)
    import array
    rb = array.array("q", a)
    bb = array.array("q", b)
    qb = array.array("q", [0]) * (na - db)
    cdef i64[::1] r = rb, bv = bb, q = qb
    inv = _inv(bv[db], p)
    for k in range(na - 1 - db, -1, -1):
        c = (r[k + db] * inv) % p
        q[k] = c
        if c:
            for j in range(db + 1):
                r[k + j] = _mod(r[k + j] - c * bv[j], p)
    return (_trim([q[k] for k in range(na - db)]),
            _trim([r[k] for k in range(db)]))


def surd_run(list d, list a0, i64 p, Py_ssize_t max_steps, bint stop_at_period):
    cdef list P = [], Q = [1], a, num, rem
    cdef list ps = [P], qs = [Q], quotients = []
    cdef tuple first = None
    cdef Py_ssize_t h
    for h in range(max_steps):
        a = poly_divmod(poly_add(P, a0, p), Q, p)[0]
        quotients.append(a)
        P = poly_sub(poly_mul(a, Q, p), P, p)
        num = poly_sub(d, poly_mul(P, P, p), p)
        Q, rem = poly_divmod(num, Q, p)
        if rem:
            raise ArithmeticError("inexact division in surd recursion")
        ps.append(P)
        qs.append(Q)
        if not Q:
            return quotients, ps, qs, "complete"
        if h == 0:
            first = (P, Q)
        elif stop_at_period and P == first[0] and Q == first[1]:
            return quotients, ps, qs, "period"
    return quotients, ps, qs, "bound"
