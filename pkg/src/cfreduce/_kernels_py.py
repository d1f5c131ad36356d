"""Pure-Python F_p polynomial kernels.

Polynomials are lists of residues in [0, p), lowest degree first, with no
trailing zeros (the zero polynomial is ``[]``).  This module is the fallback
for the compiled ``_kernels`` extension and must stay interface-identical.
"""


def trim(a):
    n = len(a)
    while n and a[n - 1] == 0:
        n -= 1
    del a[n:]
    return a


def poly_add(a, b, p):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return trim(out)


def poly_sub(a, b, p):
    n = max(len(a), len(b))
    out = [0] * n
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return trim(out)


def poly_scale(a, c, p):
    c %= p
    if c == 0:
        return []
    return [(x * c) % p for x in a]


def poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return trim([c % p for c in out])


def poly_divmod(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], r
    inv = pow(b[-1], p - 2, p)
    q = [0] * (len(r) - db)
    for k in range(len(r) - 1 - db, -1, -1):
        c = (r[k + db] * inv) % p
        q[k] = c
        if c:
            for j in range(db + 1):
                r[k + j] = (r[k + j] - c * b[j]) % p
    return trim(q), trim(r[:db])


def surd_run(d, a0, p, max_steps, stop_at_period):
    """Complete-quotient recursion for sqrt(d) over F_p.

    ``a0`` is the polynomial part of sqrt(d).  Returns ``(quotients, ps, qs,
    status)`` where ``ps[h], qs[h]`` describe the h-th complete quotient and
    ``status`` is ``"complete"`` (some Q vanished), ``"period"`` (the pair
    (P_1, Q_1) recurred) or ``"bound"``.
    """
    P, Q = [], [1]
    ps, qs, quotients = [P], [Q], []
    twice = None
    for h in range(max_steps):
        a, _ = poly_divmod(poly_add(P, a0, p), Q, p)
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
            twice = (P, Q)
        elif stop_at_period and P == twice[0] and Q == twice[1]:
            return quotients, ps, qs, "period"
    return quotients, ps, qs, "bound"
