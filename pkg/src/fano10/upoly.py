"""Dense univariate polynomials over an exact field.

Polynomials are tuples of coefficients, lowest degree first, with no trailing
zeros; the zero polynomial is the empty tuple.
"""

from __future__ import annotations

from typing import Sequence

Poly = tuple


def trim(c: Sequence) -> Poly:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def deg(f: Poly) -> int:
    return len(f) - 1  # -1 for zero


def add(f: Poly, g: Poly) -> Poly:
    n = max(len(f), len(g))
    out = []
    for i in range(n):
        a = f[i] if i < len(f) else 0
        b = g[i] if i < len(g) else 0
        out.append(a + b)
    return trim(out)


def neg(f: Poly) -> Poly:
    return tuple(-a for a in f)


def sub(f: Poly, g: Poly) -> Poly:
    return add(f, neg(g))


def scale(f: Poly, c) -> Poly:
    return trim([c * a for a in f])


def mul(f: Poly, g: Poly) -> Poly:
    if not f or not g:
        return ()
    zero = f[0] - f[0]
    out = [zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            out[i + j] = out[i + j] + a * b
    return trim(out)


def divmod_(f: Poly, g: Poly) -> tuple[Poly, Poly]:
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(f)
    dg = len(g) - 1
    lead_inv = 1 / g[-1]
    if len(r) <= dg:
        return (), trim(r)
    q = [g[-1] - g[-1]] * (len(r) - dg)
    while len(r) - 1 >= dg and r:
        c = r[-1] * lead_inv
        s = len(r) - 1 - dg
        q[s] = c
        for i, b in enumerate(g):
            r[s + i] = r[s + i] - c * b
        r.pop()
        while r and r[-1] == 0:
            r.pop()
    return trim(q), trim(r)


def mod(f: Poly, g: Poly) -> Poly:
    return divmod_(f, g)[1]


def monic(f: Poly) -> Poly:
    if not f:
        return f
    inv = 1 / f[-1]
    return tuple(a * inv for a in f)


def gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd (zero when both inputs are zero)."""
    f, g = trim(f), trim(g)
    while g:
        f, g = g, mod(f, g)
    return monic(f)


def evaluate(f: Poly, x):
    acc = x - x
    for a in reversed(f):
        acc = acc * x + a
    return acc


def powmod(f: Poly, e: int, m: Poly) -> Poly:
    one = m[-1] / m[-1]
    result: Poly = (one,)
    base = mod(f, m)
    while e:
        if e & 1:
            result = mod(mul(result, base), m)
        base = mod(mul(base, base), m)
        e >>= 1
    return mod(result, m)


def derivative(f: Poly) -> Poly:
    return trim([a * i for i, a in enumerate(f)][1:])


def distinct_roots_over_extensions(f: Poly, p: int, kmax: int) -> list[int]:
    """Number of distinct roots of f in F_{p^k} for k = 1..kmax (f over F_p)."""
    f = monic(trim(f))
    if deg(f) <= 0:
        return [0] * kmax
    one = f[-1]
    x = (one - one, one)
    counts = []
    xp = x
    for _ in range(kmax):
        xp = powmod(xp, p, f)  # x^{p^k} mod f
        counts.append(deg(gcd(f, sub(xp, x))))
    return counts


def closed_point_degrees(counts: Sequence[int]) -> dict[int, int]:
    """Number of Galois orbits of each exact degree from cumulative root counts."""
    from sympy import mobius

    out = {}
    for d in range(1, len(counts) + 1):
        total = sum(int(mobius(d // e)) * counts[e - 1] for e in range(1, d + 1) if d % e == 0)
        if total:
            out[d] = total // d
    return out
