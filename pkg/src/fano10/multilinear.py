"""Functorial multilinear algebra on based spaces.

Basis conventions, shared by every module:

* ``wedge(k, X)`` is indexed by strictly increasing index tuples of ``X``;
  ``e_I ∧ e_J`` carries the sign of the permutation that sorts ``I + J``.
* ``sym(k, X)`` is indexed by weakly increasing tuples (monomials).
* ``tensor(X, Y)`` is indexed by pairs, first factor major.
* ``dual(X)`` reuses the indices of ``X`` (dual basis).

``induced_map`` is covariant: on a dual it applies the inverse transpose, so
``induced_map(f @ g) == induced_map(f) @ induced_map(g)`` for every functor.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Sequence

from .scalars import FieldDescriptor, Matrix

__all__ = [
    "BasedSpace",
    "FunctorExpr",
    "Atom",
    "Dual",
    "Tensor",
    "Wedge",
    "Sym",
    "MultiVector",
    "EigenSpec",
    "induced_map",
    "induced_derivation",
    "plucker_point",
    "wedge_product",
    "is_decomposable",
    "eigen_spec_apply",
    "fold_mod",
    "perm_sign",
]


@dataclass(frozen=True)
class BasedSpace:
    dim: int
    label: str

    def __post_init__(self):
        if self.dim < 0:
            raise ValueError("dimension must be nonnegative")


class FunctorExpr:
    """Expression tree over atom, dual, tensor, wedge(k), sym(k)."""

    @property
    def dim(self) -> int:  # pragma: no cover - abstract
        raise NotImplementedError

    def basis(self) -> list:
        raise NotImplementedError

    def atom(self) -> BasedSpace:
        raise NotImplementedError

    def index(self) -> dict:
        return {b: i for i, b in enumerate(self.basis())}


@dataclass(frozen=True)
class Atom(FunctorExpr):
    space: BasedSpace

    @property
    def dim(self):
        return self.space.dim

    def basis(self):
        return list(range(self.space.dim))

    def atom(self):
        return self.space

    def __str__(self):
        return self.space.label


@dataclass(frozen=True)
class Dual(FunctorExpr):
    inner: FunctorExpr

    @property
    def dim(self):
        return self.inner.dim

    def basis(self):
        return self.inner.basis()

    def atom(self):
        return self.inner.atom()

    def __str__(self):
        return f"({self.inner})^*"


@dataclass(frozen=True)
class Tensor(FunctorExpr):
    left: FunctorExpr
    right: FunctorExpr

    def __post_init__(self):
        if self.left.atom() != self.right.atom():
            raise ValueError("tensor factors must be built on the same atom")

    @property
    def dim(self):
        return self.left.dim * self.right.dim

    def basis(self):
        return list(itertools.product(range(self.left.dim), range(self.right.dim)))

    def atom(self):
        return self.left.atom()

    def __str__(self):
        return f"{self.left}⊗{self.right}"


@dataclass(frozen=True)
class Wedge(FunctorExpr):
    k: int
    inner: FunctorExpr

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("wedge degree must be nonnegative")

    @property
    def dim(self):
        return comb(self.inner.dim, self.k)

    def basis(self):
        return list(itertools.combinations(range(self.inner.dim), self.k))

    def atom(self):
        return self.inner.atom()

    def __str__(self):
        return f"∧^{self.k}{self.inner}"


@dataclass(frozen=True)
class Sym(FunctorExpr):
    k: int
    inner: FunctorExpr

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("symmetric degree must be nonnegative")

    @property
    def dim(self):
        return comb(self.inner.dim + self.k - 1, self.k) if self.inner.dim else int(self.k == 0)

    def basis(self):
        return list(itertools.combinations_with_replacement(range(self.inner.dim), self.k))

    def atom(self):
        return self.inner.atom()

    def __str__(self):
        return f"S^{self.k}{self.inner}"


def perm_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting seq (0 if seq has a repeat)."""
    s = list(seq)
    if len(set(s)) != len(s):
        return 0
    sign = 1
    for i in range(len(s)):
        for j in range(i + 1, len(s)):
            if s[i] > s[j]:
                sign = -sign
    return sign


# ---------------------------------------------------------------------------
# induced maps


def _minor(m: Matrix, rows: Sequence[int], cols: Sequence[int]):
    if not rows:
        return m.field(1)
    return m.submatrix(rows, cols).det()


def _expand_product(field: FieldDescriptor, forms: list[tuple]) -> dict:
    # product of linear forms (coefficient tuples) as {sorted index tuple: coeff}
    acc: dict = {(): field(1)}
    for form in forms:
        nxt: dict = {}
        for mono, c in acc.items():
            for i, a in enumerate(form):
                if a == 0:
                    continue
                key = tuple(sorted(mono + (i,)))
                nxt[key] = nxt.get(key, field(0)) + c * a
        acc = nxt
    return acc


def induced_map(f: Matrix, functor: FunctorExpr) -> Matrix:
    """Canonical matrix of the map induced by f on the functor space."""
    n = functor.atom().dim
    if f.nrows != f.ncols or f.nrows != n:
        raise ValueError(f"expected a {n}x{n} matrix, got {f.shape}")
    return _induced(f, functor)


def _induced(f: Matrix, e: FunctorExpr) -> Matrix:
    F = f.field
    if isinstance(e, Atom):
        return f
    if isinstance(e, Dual):
        return _induced(f, e.inner).inverse().T
    if isinstance(e, Tensor):
        a = _induced(f, e.left)
        b = _induced(f, e.right)
        rows = []
        for i in range(a.nrows):
            for k in range(b.nrows):
                rows.append(tuple(a[i, j] * b[k, l] for j in range(a.ncols) for l in range(b.ncols)))
        return Matrix._raw(F, tuple(rows), a.ncols * b.ncols)
    if isinstance(e, Wedge):
        m = _induced(f, e.inner)
        basis = e.basis()
        rows = tuple(tuple(_minor(m, I, J) for J in basis) for I in basis)
        return Matrix._raw(F, rows, len(basis))
    if isinstance(e, Sym):
        m = _induced(f, e.inner)
        basis = e.basis()
        idx = {b: i for i, b in enumerate(basis)}
        cols = []
        for J in basis:
            col = [F(0)] * len(basis)
            for mono, c in _expand_product(F, [m.col(j) for j in J]).items():
                col[idx[mono]] = col[idx[mono]] + c
            cols.append(col)
        return Matrix.from_columns(F, cols) if cols else Matrix.zeros(F, 0, 0)
    raise TypeError(f"unknown functor {e!r}")


def induced_derivation(x: Matrix, functor: FunctorExpr) -> Matrix:
    """Action of a Lie algebra element x ∈ gl(atom) on the functor space."""
    n = functor.atom().dim
    if x.nrows != x.ncols or x.nrows != n:
        raise ValueError(f"expected a {n}x{n} matrix, got {x.shape}")
    return _derive(x, functor)


def _identity_like(F, d):
    return Matrix.identity(F, d)


def _derive(x: Matrix, e: FunctorExpr) -> Matrix:
    F = x.field
    if isinstance(e, Atom):
        return x
    if isinstance(e, Dual):
        return -_derive(x, e.inner).T
    if isinstance(e, Tensor):
        a, b = _derive(x, e.left), _derive(x, e.right)
        ia, ib = _identity_like(F, a.nrows), _identity_like(F, b.nrows)
        return _kron(a, ib) + _kron(ia, b)
    if isinstance(e, (Wedge, Sym)):
        d = _derive(x, e.inner)
        basis = e.basis()
        idx = {b: i for i, b in enumerate(basis)}
        zero = F(0)
        cols = []
        alternating = isinstance(e, Wedge)
        for J in basis:
            col = [zero] * len(basis)
            for r, jr in enumerate(J):
                for m in range(d.nrows):
                    c = d[m, jr]
                    if c == 0:
                        continue
                    new = J[:r] + (m,) + J[r + 1:]
                    if alternating:
                        s = perm_sign(new)
                        if s == 0:
                            continue
                        key = tuple(sorted(new))
                        col[idx[key]] = col[idx[key]] + c * s
                    else:
                        key = tuple(sorted(new))
                        col[idx[key]] = col[idx[key]] + c
            cols.append(col)
        return Matrix.from_columns(F, cols) if cols else Matrix.zeros(F, 0, 0)
    raise TypeError(f"unknown functor {e!r}")


def _kron(a: Matrix, b: Matrix) -> Matrix:
    rows = []
    for i in range(a.nrows):
        for k in range(b.nrows):
            rows.append(tuple(a[i, j] * b[k, l] for j in range(a.ncols) for l in range(b.ncols)))
    return Matrix._raw(a.field, tuple(rows), a.ncols * b.ncols)


# ---------------------------------------------------------------------------
# multivectors


@dataclass(frozen=True)
class MultiVector:
    functor: FunctorExpr
    coords: tuple

    def __post_init__(self):
        if len(self.coords) != self.functor.dim:
            raise ValueError(f"{len(self.coords)} coordinates for a space of dimension {self.functor.dim}")

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def coefficient(self, label):
        return self.coords[self.functor.index()[label]]

    def __add__(self, other: "MultiVector") -> "MultiVector":
        if other.functor != self.functor:
            raise ValueError("different functor spaces")
        return MultiVector(self.functor, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def scale(self, c) -> "MultiVector":
        return MultiVector(self.functor, tuple(c * a for a in self.coords))


def plucker_point(v1: Sequence, v2: Sequence, field: FieldDescriptor, space: BasedSpace | None = None) -> MultiVector:
    """v1 ∧ v2 in Plücker coordinates (2x2 minors)."""
    v1 = tuple(field(x) for x in v1)
    v2 = tuple(field(x) for x in v2)
    if len(v1) != len(v2):
        raise ValueError("vectors of different lengths")
    if Matrix(field, [v1, v2]).rank() < 2:
        raise ValueError("dependent vectors span no 2-plane")
    space = space or BasedSpace(len(v1), f"V{len(v1)}")
    w = Wedge(2, Atom(space))
    coords = tuple(v1[i] * v2[j] - v1[j] * v2[i] for i, j in w.basis())
    return MultiVector(w, coords)


def _as_wedge(mv: MultiVector) -> tuple[int, FunctorExpr]:
    f = mv.functor
    if isinstance(f, Wedge):
        return f.k, f.inner
    return 1, f


def wedge_product(a: MultiVector, b: MultiVector) -> MultiVector:
    ka, inner = _as_wedge(a)
    kb, inner_b = _as_wedge(b)
    if inner != inner_b:
        raise ValueError("wedge factors from different spaces")
    ba = [(x,) for x in range(inner.dim)] if ka == 1 and not isinstance(a.functor, Wedge) else a.functor.basis()
    bb = [(x,) for x in range(inner.dim)] if kb == 1 and not isinstance(b.functor, Wedge) else b.functor.basis()
    target = Wedge(ka + kb, inner)
    idx = target.index()
    zero = a.coords[0] - a.coords[0] if a.coords else 0
    out = [zero] * target.dim
    for I, x in zip(ba, a.coords):
        if x == 0:
            continue
        for J, y in zip(bb, b.coords):
            if y == 0:
                continue
            s = perm_sign(I + J)
            if s == 0:
                continue
            k = idx[tuple(sorted(I + J))]
            out[k] = out[k] + x * y * s
    return MultiVector(target, tuple(out))


def is_decomposable(omega: MultiVector) -> bool:
    """True iff the 2-vector omega satisfies omega ∧ omega = 0."""
    if omega.is_zero():
        raise ValueError("the zero 2-vector has no decomposability type")
    if not (isinstance(omega.functor, Wedge) and omega.functor.k == 2):
        raise ValueError("expected an element of a second exterior power")
    return wedge_product(omega, omega).is_zero()


# ---------------------------------------------------------------------------
# eigenvalue multiplicity calculus


@dataclass(frozen=True)
class EigenSpec:
    """Multiset of eigenvalue exponents over a formal generic base ζ."""

    items: tuple[tuple[int, int], ...]

    def __post_init__(self):
        exps = [e for e, _ in self.items]
        if exps != sorted(set(exps)):
            raise ValueError("exponents must be distinct and sorted")
        if any(m <= 0 for _, m in self.items):
            raise ValueError("multiplicities must be positive")

    @classmethod
    def from_counts(cls, counts: dict) -> "EigenSpec":
        return cls(tuple(sorted((int(e), int(m)) for e, m in counts.items() if m)))

    @classmethod
    def from_exponents(cls, exps: Sequence[int]) -> "EigenSpec":
        counts: dict = {}
        for e in exps:
            counts[e] = counts.get(e, 0) + 1
        return cls.from_counts(counts)

    @property
    def dim(self) -> int:
        return sum(m for _, m in self.items)

    def as_dict(self) -> dict:
        return dict(self.items)

    def multiplicities(self) -> tuple[int, ...]:
        return tuple(m for _, m in self.items)

    def max_multiplicity(self) -> int:
        return max((m for _, m in self.items), default=0)


def _power_spec(spec: EigenSpec, k: int, alternating: bool) -> EigenSpec:
    # dp[(chosen, exponent)] = ways
    dp = {(0, 0): 1}
    for e, m in spec.items:
        nxt: dict = {}
        for (c, s), w in dp.items():
            for j in range(0, k - c + 1):
                ways = comb(m, j) if alternating else comb(m + j - 1, j)
                if ways == 0:
                    continue
                key = (c + j, s + j * e)
                nxt[key] = nxt.get(key, 0) + w * ways
        dp = nxt
    return EigenSpec.from_counts({s: w for (c, s), w in dp.items() if c == k})


def eigen_spec_apply(functor: FunctorExpr, spec: EigenSpec) -> EigenSpec:
    """Eigen multiplicities on the functor space of a diagonalizable map with atom spec."""
    if spec.dim != functor.atom().dim:
        raise ValueError("spec total does not match the atom dimension")
    return _apply(functor, spec)


def _apply(e: FunctorExpr, spec: EigenSpec) -> EigenSpec:
    if isinstance(e, Atom):
        return spec
    if isinstance(e, Dual):
        inner = _apply(e.inner, spec)
        return EigenSpec.from_counts({-x: m for x, m in inner.items})
    if isinstance(e, Tensor):
        a, b = _apply(e.left, spec), _apply(e.right, spec)
        out: dict = {}
        for x, m in a.items:
            for y, n in b.items:
                out[x + y] = out.get(x + y, 0) + m * n
        return EigenSpec.from_counts(out)
    if isinstance(e, Wedge):
        return _power_spec(_apply(e.inner, spec), e.k, True)
    if isinstance(e, Sym):
        return _power_spec(_apply(e.inner, spec), e.k, False)
    raise TypeError(f"unknown functor {e!r}")


def fold_mod(spec: EigenSpec, n: int) -> EigenSpec:
    """Identify exponents modulo n (eigenvalues when ζ is an n-th root of unity)."""
    if n < 1:
        raise ValueError("modulus must be positive")
    out: dict = {}
    for e, m in spec.items:
        out[e % n] = out.get(e % n, 0) + m
    return EigenSpec.from_counts(out)


def max_fold(spec: EigenSpec) -> tuple[int, int]:
    """Largest folded multiplicity over all moduli n >= 2, with a modulus attaining it.

    Moduli beyond the exponent span leave the eigenvalue record unfolded, so scanning
    n = 2 .. span + 1 covers every case.
    """
    exps = [e for e, _ in spec.items]
    span = (max(exps) - min(exps)) if exps else 0
    best, arg = -1, 2
    for n in range(2, span + 2):
        m = fold_mod(spec, n).max_multiplicity()
        if m > best:
            best, arg = m, n
    return best, arg
