"""Degrees of zero-dimensional intersections of quadrics over a prime field.

The quotient ring R/I is read off in degrees 3 and 4 (Hilbert function); the
multiplication matrix of a random linear form gives a characteristic
polynomial whose roots over F_{p^k} are the points of the intersection,
grouped into closed points by their degree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Sequence

from sympy import GF
from sympy.polys.matrices import DomainMatrix

from .. import upoly
from ..scalars import Matrix


class NotZeroDimensional(ValueError):
    pass


def _monomials(n: int, d: int) -> list[tuple]:
    out = []
    for combo in itertools.combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


def _quadric_poly(g: Matrix) -> dict:
    n = g.nrows
    poly = {}
    for i in range(n):
        for j in range(i, n):
            c = g[i, j] if i == j else 2 * g[i, j]
            if c != 0:
                e = [0] * n
                e[i] += 1
                e[j] += 1
                poly[tuple(e)] = c
    return poly


def _shift(poly: dict, mono: tuple) -> dict:
    return {tuple(a + b for a, b in zip(e, mono)): c for e, c in poly.items()}


class _Quotient:
    """R_d / I_d with normal forms relative to an rref basis of I_d."""

    def __init__(self, F, gens: list[dict], n: int, d: int):
        self.F = F
        self.mons = _monomials(n, d)
        self.index = {m: i for i, m in enumerate(self.mons)}
        rows = []
        for g in gens:
            for m in _monomials(n, d - 2):
                v = [F(0)] * len(self.mons)
                for e, c in _shift(g, m).items():
                    v[self.index[e]] = c
                rows.append(v)
        red, rank, pivots = Matrix(F, rows, len(self.mons)).rref()
        self.red = red.rows[:rank]
        self.pivots = pivots
        self.standard = [i for i in range(len(self.mons)) if i not in set(pivots)]

    @property
    def dim(self) -> int:
        return len(self.standard)

    def normal_form(self, vec: Sequence) -> tuple:
        v = list(vec)
        for row, piv in zip(self.red, self.pivots):
            c = v[piv]
            if c != 0:
                v = [a - c * b for a, b in zip(v, row)]
        return tuple(v[i] for i in self.standard)

    def vector(self, poly: dict) -> list:
        v = [self.F(0)] * len(self.mons)
        for e, c in poly.items():
            v[self.index[e]] = v[self.index[e]] + c
        return v


@dataclass(frozen=True)
class DegreeCertificate:
    hilbert: tuple
    charpoly_degree: int
    squarefree: bool
    points_by_degree: dict = field(default_factory=dict)
    expected: int | None = None

    @property
    def total(self) -> int:
        """Geometric points: Σ deg · (closed points of that degree)."""
        return sum(d * n for d, n in self.points_by_degree.items())

    @property
    def rational_points(self) -> int:
        return self.points_by_degree.get(1, 0)

    @property
    def ok(self) -> bool:
        if not self.squarefree:
            return False
        consistent = self.hilbert[-1] == self.charpoly_degree == self.total
        return consistent and (self.expected is None or self.total == self.expected)


def zero_dim_certificate(forms: Sequence[Matrix], rng, expected: int | None = None, tries: int = 20) -> DegreeCertificate:
    """Certify the degree of the common zeros of quadrics in P^{n-1} over F_p."""
    F = forms[0].field
    if not F.is_prime:
        raise ValueError("degree certificates need a prime field")
    p = F.p
    n = forms[0].nrows
    gens = [_quadric_poly(g) for g in forms]
    q2 = comb(n + 1, 2) - Matrix(F, [_Quotient(F, gens, n, 2).vector(g) for g in gens]).rank()
    q3 = _Quotient(F, gens, n, 3)
    q4 = _Quotient(F, gens, n, 4)
    hilbert = (q2, q3.dim, q4.dim)
    if q3.dim != q4.dim:
        raise NotZeroDimensional(f"Hilbert function {hilbert} has not stabilized")
    std = [q3.mons[i] for i in q3.standard]
    K = GF(p)
    for _ in range(tries):
        l0 = [F.random(rng) for _ in range(n)]
        l1 = [F.random(rng) for _ in range(n)]
        t0 = _mult_matrix(F, q4, std, l0, n)
        if t0.rank() < len(std):
            continue
        t1 = _mult_matrix(F, q4, std, l1, n)
        m = t0.inverse() @ t1
        dm = DomainMatrix([[K(int(x)) for x in row] for row in m.rows], m.shape, K)
        cp = [F(int(c) % p) for c in reversed(dm.charpoly())]
        f = upoly.trim(tuple(cp))
        sqf = upoly.deg(upoly.gcd(f, upoly.derivative(f))) == 0
        if not sqf:
            # a random l1 separating the points gives a squarefree polynomial; retry a few times
            continue
        counts = upoly.distinct_roots_over_extensions(f, p, upoly.deg(f))
        degrees = upoly.closed_point_degrees(counts)
        return DegreeCertificate(hilbert, upoly.deg(f), True, degrees, expected)
    return DegreeCertificate(hilbert, -1, False, {}, expected)


def _mult_matrix(F, q4: _Quotient, std: list[tuple], lin: Sequence, n: int) -> Matrix:
    cols = []
    for m in std:
        poly = {}
        for i, c in enumerate(lin):
            if c != 0:
                e = list(m)
                e[i] += 1
                poly[tuple(e)] = c
        cols.append(q4.normal_form(q4.vector(poly)))
    return Matrix.from_columns(F, cols)
