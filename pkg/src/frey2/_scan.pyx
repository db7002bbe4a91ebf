# cython: language_level=3
"""Compiled kernels for GF(2^m) bulk scans.

Mirrors frey2._scan_py: exhaustive root finding over GF(2^k), k <= 16,
and brute-force singular-point enumeration over GF(2^m)^2, m <= 8.
"""

from libc.stdlib cimport free, malloc

BACKEND = "cython"

_TABLES = {}


cdef unsigned int _clmul_mod(unsigned int a, unsigned int b,
                             unsigned int modulus, int k) noexcept:
    cdef unsigned int r = 0
    while b:
        if b & 1u:
            r ^= a
        b >>= 1
        a <<= 1
        if a >> k:
            a ^= modulus
    return r


def _factor_small(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _tables(int m, unsigned int modulus):
    """(exp, log) discrete-log tables for GF(2^m)*, built from a generator."""
    key = (m, modulus)
    cached = _TABLES.get(key)
    if cached is not None:
        return cached
    cdef unsigned int order = (1u << m) - 1
    cdef unsigned int g, acc, base
    cdef unsigned long long ee
    gen = 0
    for g in range(2, 1u << m):
        ok = True
        for p in _factor_small(order):
            ee = order // p
            acc = 1
            base = g
            while ee:
                if ee & 1:
                    acc = _clmul_mod(acc, base, modulus, m)
                base = _clmul_mod(base, base, modulus, m)
                ee >>= 1
            if acc == 1:
                ok = False
                break
        if ok:
            gen = g
            break
    if gen == 0:
        gen = 1
    exp = [1] * (2 * order if order else 2)
    log = [0] * (1 << m)
    cdef unsigned int v = 1
    cdef unsigned int i
    for i in range(order):
        exp[i] = v
        log[v] = i
        v = _clmul_mod(v, gen, modulus, m)
    for i in range(order, 2 * order):
        exp[i] = exp[i - order]
    _TABLES[key] = (exp, log)
    return exp, log


def find_roots(int k, unsigned int modulus, coeffs):
    """All roots in GF(2^k) of the polynomial with the given coefficients."""
    cdef int n = len(coeffs)
    cdef unsigned int size = 1u << k
    cdef unsigned int a, acc, c
    cdef int i
    cdef unsigned int *cs = <unsigned int *>malloc(n * sizeof(unsigned int))
    if cs == NULL:
        raise MemoryError()
    out = []
    try:
        for i in range(n):
            cs[i] = coeffs[i]
        if n == 0 or (n == 1 and cs[0] == 0):
            free(cs)
            cs = NULL
            raise ValueError("zero polynomial has every element as a root")
        if cs[0] == 0:
            out.append(0)
        for a in range(1, size):
            acc = 0
            for i in range(n - 1, -1, -1):
                acc = _clmul_mod(acc, a, modulus, k) ^ cs[i]
            if acc == 0:
                out.append(a)
    finally:
        if cs != NULL:
            free(cs)
    return out


def scan_singular(int m, unsigned int modulus, q_coeffs, p_coeffs):
    """Brute-force Jacobian-criterion scan over all of GF(2^m)^2.

    Returns every (a, b) with  b^2 + b*Q(a) = P(a),  Q(a) = 0  and
    b*Q'(a) = P'(a).
    """
    exp_l, log_l = _tables(m, modulus)
    cdef unsigned int size = 1u << m
    cdef unsigned int order = size - 1
    cdef unsigned int *exp = <unsigned int *>malloc(2 * (order if order else 1) * sizeof(unsigned int))
    cdef unsigned int *log = <unsigned int *>malloc(size * sizeof(unsigned int))
    if exp == NULL or log == NULL:
        if exp != NULL:
            free(exp)
        if log != NULL:
            free(log)
        raise MemoryError()
    cdef unsigned int i
    for i in range(2 * order if order else 1):
        exp[i] = exp_l[i] if order else 1
    for i in range(size):
        log[i] = log_l[i]

    dq = _pad_derivative(q_coeffs)
    dp = _pad_derivative(p_coeffs)
    cdef unsigned int a, b, acc, pa, qda, pda, b2, bq
    out = []
    qv = [0] * size
    pv = [0] * size
    qdv = [0] * size
    pdv = [0] * size
    for poly, vals in ((q_coeffs, qv), (p_coeffs, pv), (dq, qdv), (dp, pdv)):
        for a in range(size):
            acc = 0
            for c in reversed(poly):
                acc = _clmul_mod(acc, a, modulus, m) ^ <unsigned int>c
            vals[a] = acc
    try:
        for a in range(size):
            if qv[a]:
                continue
            pa = pv[a]
            qda = qdv[a]
            pda = pdv[a]
            for b in range(size):
                b2 = exp[2 * log[b]] if b else 0
                if b2 != pa:
                    continue
                bq = exp[log[b] + log[qda]] if (b and qda) else 0
                if bq == pda:
                    out.append((a, b))
    finally:
        free(exp)
        free(log)
    return out


def _pad_derivative(coeffs):
    """Formal derivative in characteristic 2: odd-degree coefficients shift down."""
    out = [0] * max(len(coeffs) - 1, 0)
    for i in range(1, len(coeffs)):
        if i & 1:
            out[i - 1] = coeffs[i]
    return out
