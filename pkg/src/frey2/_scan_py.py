"""Pure-Python fallback kernels for GF(2^m) bulk scans.

Same interface as the compiled `frey2._scan` extension: exhaustive root
finding and brute-force singular-point enumeration over small binary
fields.  Elements are ints (bit vectors); tables are rebuilt per call and
cached by (m, modulus).
"""

BACKEND = "python"

_TABLES = {}


def _clmul_mod(a, b, modulus, k):
    r = 0
    while b:
        if b & 1:
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


def _tables(m, modulus):
    """(exp, log) discrete-log tables for GF(2^m)*, built from a generator."""
    key = (m, modulus)
    cached = _TABLES.get(key)
    if cached is not None:
        return cached
    order = (1 << m) - 1
    prime_factors = _factor_small(order)
    gen = None
    for g in range(2, 1 << m):
        ok = True
        for p in prime_factors:
            e = order // p
            acc, base, ee = 1, g, e
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
    if gen is None:  # m == 1
        gen = 1
    exp = [1] * (2 * order)
    log = [0] * (1 << m)
    v = 1
    for i in range(order):
        exp[i] = v
        log[v] = i
        v = _clmul_mod(v, gen, modulus, m)
    for i in range(order, 2 * order):
        exp[i] = exp[i - order]
    _TABLES[key] = (exp, log)
    return exp, log


def _eval_all(coeffs, m, modulus):
    """Values of a polynomial at every element of GF(2^m), indexed by element."""
    exp, log = _tables(m, modulus)
    order = (1 << m) - 1
    size = 1 << m
    vals = [0] * size
    vals[0] = coeffs[0] if coeffs else 0
    for a in range(1, size):
        la = log[a]
        acc = 0
        for c in reversed(coeffs):
            if acc:
                acc = exp[log[acc] + la]
            acc ^= c
        vals[a] = acc
    return vals


def find_roots(k, modulus, coeffs):
    """All roots in GF(2^k) of the polynomial with the given coefficients."""
    if not any(coeffs):
        raise ValueError("zero polynomial has every element as a root")
    vals = _eval_all(coeffs, k, modulus)
    return [a for a in range(1 << k) if vals[a] == 0]


def scan_singular(m, modulus, q_coeffs, p_coeffs):
    """Brute-force Jacobian-criterion scan over all of GF(2^m)^2.

    Returns every (a, b) with  b^2 + b*Q(a) = P(a),  Q(a) = 0  and
    b*Q'(a) = P'(a).
    """
    exp, log = _tables(m, modulus)
    size = 1 << m
    dq = _pad_derivative(q_coeffs)
    dp = _pad_derivative(p_coeffs)
    qv = _eval_all(q_coeffs, m, modulus)
    pv = _eval_all(p_coeffs, m, modulus)
    qdv = _eval_all(dq, m, modulus)
    pdv = _eval_all(dp, m, modulus)
    out = []
    for a in range(size):
        if qv[a]:
            continue
        pa, qda, pda = pv[a], qdv[a], pdv[a]
        for b in range(size):
            b2 = exp[2 * log[b]] if b else 0
            if b2 != pa:  # b^2 + b*Q(a) = P(a) with Q(a) = 0
                continue
            bq = exp[log[b] + log[qda]] if (b and qda) else 0
            if bq == pda:
                out.append((a, b))
    return out


def _pad_derivative(coeffs):
    """Formal derivative in characteristic 2: odd-degree coefficients shift down."""
    out = [0] * max(len(coeffs) - 1, 0)
    for i in range(1, len(coeffs)):
        if i & 1:
            out[i - 1] = coeffs[i]
    return out
