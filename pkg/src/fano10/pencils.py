"""Pencils of skew forms on a 5-dimensional space and the standard model of W.

Coordinates: ``V5`` has basis ``e0..e4`` with ``U2 = <e0, e1>`` and
``U3 = <e2, e3, e4>`` identified with binary quadratic forms ``X^2, XY, Y^2``
on ``U2`` (``X, Y`` dual to ``e0, e1``). A quadratic form acts as the
symmetric bilinear form of its polarization, so ``XY`` has Gram matrix
``[[0, 1/2], [1/2, 0]]``. Vectors of ``∧²V5`` use the sorted-pair basis of
:mod:`fano10.multilinear`. A skew form is a 5x5 skew matrix ``A`` and pairs
with ``e_i ∧ e_j`` (``i < j``) as ``A[i][j]``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import _accel, upoly
from .multilinear import Atom, BasedSpace, MultiVector, Sym, Wedge, induced_derivation, induced_map, wedge_product
from .scalars import FieldDescriptor, Matrix, QQ, span_basis, span_rank, spans_equal

V5 = BasedSpace(5, "V5")
V5_DUAL = BasedSpace(5, "V5*")
U2 = BasedSpace(2, "U2")
PAIRS = list(itertools.combinations(range(5), 2))
PAIR_INDEX = {pq: i for i, pq in enumerate(PAIRS)}

# the identification ∧⁴V5^∨ ≅ V5 used by psi: e*_{[5] minus m} ↦ (-1)^m e_m
WEDGE4_IDENTIFICATION = "e*_{complement of m} -> (-1)^m e_m (volume form e*_0∧...∧e*_4 = 1)"


class DegeneratePencil(ValueError):
    """Some member of the pencil has rank below 4."""


class InvariantViolation(AssertionError):
    """A structural property that must hold for the model failed."""


# ---------------------------------------------------------------------------
# skew forms


def skew_to_wedge(a: Matrix) -> tuple:
    """Coordinates of a skew form in the sorted-pair basis of ∧²V^∨."""
    return tuple(a[i, j] for i, j in itertools.combinations(range(a.nrows), 2))


def wedge_to_skew(field: FieldDescriptor, coords: Sequence, n: int = 5) -> Matrix:
    z = field(0)
    rows = [[z] * n for _ in range(n)]
    for (i, j), c in zip(itertools.combinations(range(n), 2), coords):
        rows[i][j] = field(c)
        rows[j][i] = -field(c)
    return Matrix(field, rows)


def pair_form(form: Sequence, omega: Sequence):
    """Pairing of a 2-form with a 2-vector (both in sorted-pair coordinates)."""
    acc = form[0] - form[0]
    for a, b in zip(form, omega):
        if a != 0 and b != 0:
            acc = acc + a * b
    return acc


def skew_eval(a: Matrix, x: Sequence, y: Sequence):
    return sum((x[i] * a[i, j] * y[j] for i in range(a.nrows) for j in range(a.ncols) if a[i, j] != 0), a.field(0))


def pfaffian4(m, idx: Sequence[int]):
    a, b, c, d = idx
    return m[a][b] * m[c][d] - m[a][c] * m[b][d] + m[a][d] * m[b][c]


@dataclass(frozen=True)
class SkewPencil:
    A: Matrix
    B: Matrix

    def __post_init__(self):
        if self.A.field != self.B.field:
            raise ValueError("pencil members over different fields")
        for name, m in (("A", self.A), ("B", self.B)):
            if m.shape != (5, 5):
                raise ValueError(f"{name} must be 5x5")
            if m.T != -m:
                raise ValueError(f"{name} is not skew-symmetric")
        if span_rank(self.field, [skew_to_wedge(self.A), skew_to_wedge(self.B)]) < 2:
            raise ValueError("pencil members are dependent")

    @property
    def field(self) -> FieldDescriptor:
        return self.A.field

    def member(self, lam, mu) -> Matrix:
        return self.A.scale(lam) + self.B.scale(mu)

    def map_field(self, target: FieldDescriptor) -> "SkewPencil":
        return SkewPencil(self.A.map_field(target), self.B.map_field(target))


def pfaffian_quadrics(pencil: SkewPencil) -> list[tuple]:
    """Signed 4x4 Pfaffians of λA+μB as binary quadrics (c_λλ, c_λμ, c_μμ)."""
    F = pencil.field
    A, B = pencil.A.rows, pencil.B.rows
    out = []
    for i in range(5):
        idx = [k for k in range(5) if k != i]
        # Pf is quadratic: evaluate at (1,0), (0,1), (1,1) and solve
        pa = pfaffian4(A, idx)
        pb = pfaffian4(B, idx)
        s = [[A[r][c] + B[r][c] for c in range(5)] for r in range(5)]
        pab = pfaffian4(s, idx) - pa - pb
        sign = 1 if i % 2 == 0 else -1
        out.append((F(pa * sign), F(pab * sign), F(pb * sign)))
    return out


def _binary_gcd_is_trivial(quadrics: list[tuple]) -> bool:
    if all(all(c == 0 for c in q) for q in quadrics):
        return False
    # common root at [1:0] iff every λ² coefficient vanishes
    if all(q[0] == 0 for q in quadrics):
        return False
    g: tuple = ()
    for a, b, c in quadrics:
        g = upoly.gcd(g, upoly.trim((c, b, a)))  # polynomial in x = λ/μ
        if upoly.deg(g) == 0:
            return True
    return upoly.deg(g) == 0


def rank_profile(pencil: SkewPencil) -> bool:
    """True iff every nonzero member λA+μB (over the algebraic closure) has rank 4."""
    return _binary_gcd_is_trivial(pfaffian_quadrics(pencil))


@dataclass(frozen=True)
class KernelConic:
    """v(λ,μ) = λ² c[0] + λμ c[1] + μ² c[2] spans ker(λA+μB)."""

    pencil: SkewPencil
    coeffs: tuple[tuple, tuple, tuple]

    def at(self, lam, mu) -> tuple:
        F = self.pencil.field
        lam, mu = F(lam), F(mu)
        w = (lam * lam, lam * mu, mu * mu)
        return tuple(w[0] * a + w[1] * b + w[2] * c for a, b, c in zip(*self.coeffs))

    def span(self) -> list[tuple]:
        return span_basis(self.pencil.field, list(self.coeffs))

    def coordinate_polys(self) -> list[tuple]:
        """Each kernel coordinate as a binary quadric (c_λλ, c_λμ, c_μμ)."""
        return [tuple(self.coeffs[k][i] for k in range(3)) for i in range(5)]

    def annihilated_identically(self) -> bool:
        c0, c1, c2 = self.coeffs
        A, B = self.pencil.A, self.pencil.B
        terms = [A @ c0, _vadd(A @ c1, B @ c0), _vadd(A @ c2, B @ c1), B @ c2]
        return all(x == 0 for t in terms for x in t)


def _vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def kernel_conic(pencil: SkewPencil) -> KernelConic:
    if not rank_profile(pencil):
        raise DegeneratePencil("degenerate pencil")
    quads = pfaffian_quadrics(pencil)
    coeffs = tuple(tuple(q[k] for q in quads) for k in range(3))
    kc = KernelConic(pencil, coeffs)
    if not kc.annihilated_identically():
        raise InvariantViolation("signed Pfaffians do not span the kernel")
    return kc


def conic_coordinate_degrees(kc: KernelConic) -> list[int]:
    """Total degree in (λ,μ) of each kernel coordinate (-1 for an identically zero one)."""
    out = []
    for i in range(5):
        nonzero = any(kc.coeffs[k][i] != 0 for k in range(3))
        out.append(2 if nonzero else -1)
    return out


def common_isotropic(pencil: SkewPencil, certify_over: int | None = 5) -> tuple[list[tuple], dict]:
    """U3 = span of the kernel conic, with isotropy and (optionally) an F_q uniqueness certificate."""
    kc = kernel_conic(pencil)
    basis = kc.span()
    if len(basis) != 3:
        raise InvariantViolation(f"kernel conic spans a {len(basis)}-dimensional space")
    for form in (pencil.A, pencil.B):
        for u in basis:
            for v in basis:
                if skew_eval(form, u, v) != 0:
                    raise InvariantViolation("kernel-conic span is not isotropic")
    cert: dict = {"isotropic": True, "dimension": 3}
    if certify_over is not None:
        cert.update(enumerate_isotropic(pencil, certify_over, expected=basis))
    return basis, cert


def _reduce_matrix(m: Matrix, q: int) -> np.ndarray:
    out = np.zeros(m.shape, dtype=np.int64)
    for i in range(m.nrows):
        for j in range(m.ncols):
            x = m[i, j]
            if isinstance(x, Fraction):
                if x.denominator % q == 0:
                    raise ValueError(f"entry {x} has no reduction mod {q}")
                out[i, j] = x.numerator * pow(x.denominator, -1, q) % q
            elif hasattr(x, "b"):
                if x.b != 0:
                    raise ValueError("cannot reduce an irrational extension element")
                out[i, j] = x.a % q
            else:
                out[i, j] = int(x) % q
    return out


def enumerate_isotropic(pencil: SkewPencil, q: int = 5, expected: list[tuple] | None = None) -> dict:
    """Exhaustive count of common isotropic 3-spaces over F_q (after reduction)."""
    if pencil.field.is_finite and pencil.field.p != q:
        raise ValueError(f"cannot reduce a pencil over {pencil.field} modulo {q}")
    a = _reduce_matrix(pencil.A, q)
    b = _reduce_matrix(pencil.B, q)
    hits = _accel.isotropic_subspaces(a, b, q, 3)
    fq = FieldDescriptor.prime(q)
    total = _gaussian_binomial(5, 3, q)
    cert = {"field": str(fq), "subspaces_checked": total, "isotropic_count": int(hits.shape[0])}
    if expected is not None and hits.shape[0] == 1:
        exp = Matrix(fq, [[_reduce_scalar(x, q) for x in v] for v in expected])
        cert["matches_kernel_span"] = spans_equal(fq, list(exp.rows), [tuple(r) for r in hits[0].tolist()])
    return cert


def _reduce_scalar(x, q):
    if isinstance(x, Fraction):
        return x.numerator * pow(x.denominator, -1, q) % q
    if hasattr(x, "v"):
        return x.v % q
    return int(x) % q


def _gaussian_binomial(n: int, k: int, q: int) -> int:
    num, den = 1, 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


# ---------------------------------------------------------------------------
# standard model


def _quadric_grams(F):
    h = F(1) / F(2)
    z, o = F(0), F(1)
    return [((o, z), (z, z)), ((z, h), (h, z)), ((z, z), (z, o))]


def contraction_matrix(F: FieldDescriptor) -> Matrix:
    """The 2x10 matrix of ∧²V5 → U2⊗U3 → U2^∨, e_i∧f ↦ f(e_i, ·)."""
    grams = _quadric_grams(F)
    cols = []
    for i, j in PAIRS:
        if i < 2 <= j:
            g = grams[j - 2]
            cols.append((g[i][0], g[i][1]))
        else:
            cols.append((F(0), F(0)))
    return Matrix.from_columns(F, cols)


def _wedge_change(p: Matrix) -> Matrix:
    return induced_map(p, Wedge(2, Atom(V5)))


def _unit(F, n, k):
    return tuple(F(1) if i == k else F(0) for i in range(n))


def _pair_vec(F, coeffs: dict) -> tuple:
    v = [F(0)] * 10
    for (i, j), c in coeffs.items():
        v[PAIR_INDEX[(i, j)]] = F(c)
    return tuple(v)


@dataclass(frozen=True)
class StandardModel:
    field: FieldDescriptor
    basis_change: Matrix  # columns: the model basis of V5 in e-coordinates
    u2: tuple
    u3: tuple
    pencil: SkewPencil
    v8: tuple  # 8 vectors of ∧²V5, ordered U1, U4, ∧²U3
    L: tuple  # 2 forms in sorted-pair coordinates
    summands: dict = dc_field(compare=False)  # k -> basis of the sl2-summand U_k of ∧²V5
    contraction: Matrix | None = dc_field(default=None, compare=False)

    @property
    def v8_matrix(self) -> Matrix:
        """10x8 matrix whose columns are the V8 basis."""
        return Matrix.from_columns(self.field, list(self.v8))


def standard_model(field: FieldDescriptor = QQ, u2_change: Matrix | None = None) -> StandardModel:
    """The pencil model; optionally rebuilt starting from another basis of U2."""
    F = field
    if u2_change is None:
        g = Matrix.identity(F, 2)
    else:
        g = u2_change
        if g.field != F or g.shape != (2, 2):
            raise ValueError("basis change of U2 must be a 2x2 matrix over the model field")
    s = induced_map(g.inverse().T, Sym(2, Atom(U2)))
    z = F(0)
    prow = [[z] * 5 for _ in range(5)]
    for i in range(2):
        for j in range(2):
            prow[i][j] = g[i, j]
    for i in range(3):
        for j in range(3):
            prow[2 + i][2 + j] = s[i, j]
    P = Matrix(F, prow)
    w2P = _wedge_change(P)
    contr_std = contraction_matrix(F)
    contr = contr_std @ w2P.inverse()

    def img(vs):
        return tuple(w2P @ v for v in vs)

    u1 = [_pair_vec(F, {(0, 1): 1})]
    mixed = [(i, j) for i in range(2) for j in range(2, 5)]
    sub = Matrix.from_columns(F, [contr_std.col(PAIR_INDEX[ij]) for ij in mixed])
    u4 = []
    for k in sub.kernel_basis():
        u4.append(_pair_vec(F, {ij: c for ij, c in zip(mixed, k) if c != 0}))
    u2s = [_pair_vec(F, {(0, 2): 1, (1, 3): 1}), _pair_vec(F, {(0, 3): 1, (1, 4): 1})]
    u3s = [_pair_vec(F, {(2, 3): 1}), _pair_vec(F, {(2, 4): 1}), _pair_vec(F, {(3, 4): 1})]
    summands = {1: img(u1), 2: img(u2s), 3: img(u3s), 4: img(u4)}
    v8 = summands[1] + summands[4] + summands[3]
    L = tuple(contr.rows)
    pencil = SkewPencil(wedge_to_skew(F, L[0]), wedge_to_skew(F, L[1]))
    u2 = tuple(P.col(j) for j in range(2))
    u3 = tuple(P.col(j) for j in range(2, 5))
    return StandardModel(F, P, u2, u3, pencil, v8, L, summands, contr)


@dataclass(frozen=True)
class PencilReport:
    max_rank: bool
    kernel_coeffs: tuple
    u3: tuple
    v8: tuple
    L: tuple
    summand_dims: tuple
    uniqueness: dict

    def dims(self) -> dict:
        return {
            "u3": len(self.u3),
            "v8": len(self.v8),
            "L": len(self.L),
            "summands": self.summand_dims,
        }


def analyze(model: StandardModel, certify_over: int | None = 5) -> PencilReport:
    F = model.field
    pencil = model.pencil
    ok = rank_profile(pencil)
    kc = kernel_conic(pencil)
    q = certify_over if (certify_over is not None and (not F.is_finite or F.p == certify_over)) else None
    u3, cert = common_isotropic(pencil, q)
    v8_ann = all(pair_form(form, v) == 0 for form in model.L for v in model.v8)
    if not v8_ann or span_rank(F, list(model.v8)) != 8:
        raise InvariantViolation("V8 is not the annihilator of L")
    if not spans_equal(F, u3, list(model.u3)):
        raise InvariantViolation("isotropic space differs from the U3 summand of V5")
    return PencilReport(
        max_rank=ok,
        kernel_coeffs=kc.coeffs,
        u3=tuple(u3),
        v8=model.v8,
        L=model.L,
        summand_dims=tuple(len(model.summands[k]) for k in (1, 2, 3, 4)),
        uniqueness=cert,
    )


# ---------------------------------------------------------------------------
# the two rank facts


def _form_multivector(coords, F):
    return MultiVector(Wedge(2, Atom(V5_DUAL)), tuple(F(c) for c in coords))


def wedge4_to_v5(mv: MultiVector) -> tuple:
    """∧⁴V5^∨ → V5 via e*_{complement of m} ↦ (-1)^m e_m."""
    basis = mv.functor.basis()
    F_zero = mv.coords[0] - mv.coords[0]
    out = [F_zero] * 5
    for I, c in zip(basis, mv.coords):
        (m,) = [k for k in range(5) if k not in I]
        out[m] = c if m % 2 == 0 else -c
    return tuple(out)


def psi_rank(model: StandardModel) -> tuple[int, list[tuple]]:
    """Rank and image of Sym²L → ∧⁴V5^∨ ≅ V5, (α, β) ↦ α∧β."""
    F = model.field
    a, b = (_form_multivector(f, F) for f in model.L)
    images = [wedge4_to_v5(wedge_product(x, y)) for x, y in ((a, a), (a, b), (b, b))]
    basis = span_basis(F, images)
    return len(basis), basis


def sl_basis(F: FieldDescriptor, n: int = 5) -> list[Matrix]:
    """E_ij (i != j) followed by E_kk - E_{k+1,k+1}."""
    out = []
    for i in range(n):
        for j in range(n):
            if i != j:
                rows = [[F(1) if (r, c) == (i, j) else F(0) for c in range(n)] for r in range(n)]
                out.append(Matrix(F, rows))
    for k in range(n - 1):
        rows = [[F(0)] * n for _ in range(n)]
        rows[k][k] = F(1)
        rows[k + 1][k + 1] = F(-1)
        out.append(Matrix(F, rows))
    return out


def sl_action_matrix(model: StandardModel, generators: Sequence[Matrix] | None = None) -> Matrix:
    """Matrix of sl(V5^∨) → Hom(L, V8^∨): X ↦ (α ↦ (X·α)|_{V8})."""
    F = model.field
    gens = list(generators) if generators is not None else sl_basis(F)
    functor = Wedge(2, Atom(V5_DUAL))
    cols = []
    for x in gens:
        d = induced_derivation(x, functor)
        col = []
        for form in model.L:
            moved = d @ tuple(form)
            col.extend(pair_form(moved, v) for v in model.v8)
        cols.append(tuple(col))
    return Matrix.from_columns(F, cols)


def sl_action_rank(model: StandardModel) -> int:
    return sl_action_matrix(model).rank()
