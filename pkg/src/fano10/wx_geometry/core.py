"""The fourfold W = G(2,V5) ∩ P(V8): equations, sampling, membership."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .. import _accel
from ..pencils import PAIRS, PAIR_INDEX, StandardModel, kernel_conic, standard_model, wedge_to_skew
from ..scalars import FieldDescriptor, Matrix, QQ, coordinates_in, span_basis

QUADS = list(itertools.combinations(range(5), 4))


class ModelCorruption(AssertionError):
    """A count that is forced by the geometry came out differently."""


class Degenerate(ValueError):
    """Input is not general enough for the requested construction."""


# ---------------------------------------------------------------------------
# small vector helpers


def vzero(F, n):
    return tuple(F(0) for _ in range(n))


def vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, u):
    return tuple(c * a for a in u)


def vcomb(F, coeffs, vectors):
    out = vzero(F, len(vectors[0]))
    for c, v in zip(coeffs, vectors):
        if c != 0:
            out = tuple(a + c * b for a, b in zip(out, v))
    return out


def dot(u, v):
    acc = None
    for a, b in zip(u, v):
        acc = a * b if acc is None else acc + a * b
    return acc


def random_vector(F, rng, n, nonzero=True):
    while True:
        v = tuple(F.random(rng) for _ in range(n))
        if not nonzero or any(x != 0 for x in v):
            return v


def wedge2(u: Sequence, v: Sequence) -> tuple:
    """Plücker coordinates of u∧v in the sorted-pair basis."""
    return tuple(u[i] * v[j] - u[j] * v[i] for i, j in PAIRS)


def contract(f: Sequence, omega: Sequence) -> tuple:
    """ι_f ω ∈ V5 for f ∈ V5^∨: e_i∧e_j ↦ f_i e_j − f_j e_i."""
    F0 = omega[0] - omega[0]
    out = [F0] * 5
    for (i, j), w in zip(PAIRS, omega):
        if w != 0:
            out[j] = out[j] + f[i] * w
            out[i] = out[i] - f[j] * w
    return tuple(out)


TRIPLES = list(itertools.combinations(range(5), 3))


def wedge3(omega: Sequence, x: Sequence) -> tuple:
    """ω∧x ∈ ∧³V5 in the sorted-triple basis."""
    return tuple(
        omega[PAIR_INDEX[(i, j)]] * x[k] - omega[PAIR_INDEX[(i, k)]] * x[j] + omega[PAIR_INDEX[(j, k)]] * x[i]
        for i, j, k in TRIPLES
    )


def support(F: FieldDescriptor, omega: Sequence) -> list[tuple]:
    """The subspace ⟨ω⟩ ⊂ V5 spanned by a decomposable bivector (row space of its skew matrix)."""
    return span_basis(F, list(wedge_to_skew(F, omega).rows))


def quad_value(g: Matrix, x: Sequence):
    return dot(x, g @ tuple(x))


def bilinear(g: Matrix, x: Sequence, y: Sequence):
    return dot(x, g @ tuple(y))


def restrict_form(g: Matrix, basis: Sequence[Sequence]) -> Matrix:
    """Gram matrix of x ↦ xᵀGx on the span of the given vectors."""
    F = g.field
    imgs = [g @ tuple(b) for b in basis]
    return Matrix(F, [[dot(a, gb) for gb in imgs] for a in basis])


def forms_proportional(a: Matrix, b: Matrix) -> bool:
    ra = [x for row in a.rows for x in row]
    rb = [x for row in b.rows for x in row]
    za, zb = all(x == 0 for x in ra), all(x == 0 for x in rb)
    if za or zb:
        return za and zb
    from ..scalars import proportional

    return proportional(ra, rb)


def to_residues(m: Matrix, p: int) -> np.ndarray:
    out = np.zeros(m.shape, dtype=np.int64)
    for i, row in enumerate(m.rows):
        for j, x in enumerate(row):
            out[i, j] = int(x) % p
    return out


@dataclass(frozen=True)
class BinaryRoots:
    """Roots of a s² + 2b st + c t² on P¹: kind is split, double, inert or zero."""

    kind: str
    roots: tuple

    @property
    def length(self) -> int:
        return {"split": 2, "double": 2, "inert": 2, "zero": -1}[self.kind]


def binary_roots(F: FieldDescriptor, a, b, c) -> BinaryRoots:
    if a == 0 and b == 0 and c == 0:
        return BinaryRoots("zero", ())
    one, zero = F(1), F(0)
    if a == 0:
        if b == 0:
            return BinaryRoots("double", ((one, zero),))
        return BinaryRoots("split", ((one, zero), (-c, 2 * b)))
    disc = b * b - a * c
    if disc == 0:
        return BinaryRoots("double", ((-b / a, one),))
    r = F.sqrt(disc)
    if r is None:
        return BinaryRoots("inert", ())
    return BinaryRoots("split", (((-b + r) / a, one), ((-b - r) / a, one)))


# ---------------------------------------------------------------------------
# the model


def plucker_grams(F: FieldDescriptor) -> tuple[Matrix, ...]:
    """Gram matrices of ω_ab ω_cd − ω_ac ω_bd + ω_ad ω_bc for each 4-subset {a<b<c<d}."""
    half = F(1) / F(2)
    out = []
    for a, b, c, d in QUADS:
        rows = [[F(0)] * 10 for _ in range(10)]
        for (p1, p2), s in zip((((a, b), (c, d)), ((a, c), (b, d)), ((a, d), (b, c))), (1, -1, 1)):
            i, j = PAIR_INDEX[p1], PAIR_INDEX[p2]
            rows[i][j] = rows[i][j] + s * half
            rows[j][i] = rows[j][i] + s * half
        out.append(Matrix(F, rows))
    return tuple(out)


@dataclass(frozen=True)
class WModel:
    std: StandardModel
    plucker: tuple  # five 10x10 Grams
    plucker_v8: tuple  # the same restricted to V8 coordinates
    lift: Matrix  # 8x10 with lift @ v8_matrix = Id
    pi_basis: tuple  # ∧²U3 ⊂ ∧²V5
    cu_form: Matrix  # Gram of the kernel conic c_U in U3 coordinates
    dual_conic: Matrix  # Gram of c_U^∨ in pi_basis coordinates
    l_u: tuple  # basis of U3^⊥ ⊂ V5^∨; hyperplanes containing U3
    to_model: Matrix  # ∧²V5 e-coordinates -> model coordinates

    @property
    def field(self) -> FieldDescriptor:
        return self.std.field

    @property
    def pencil(self):
        return self.std.pencil

    @property
    def v8(self) -> tuple:
        return self.std.v8

    def coords(self, omega: Sequence) -> tuple:
        """V8 coordinates of ω ∈ V8."""
        return self.lift @ tuple(omega)

    def embed(self, y: Sequence) -> tuple:
        return self.std.v8_matrix @ tuple(y)

    def in_v8(self, omega: Sequence) -> bool:
        from ..pencils import pair_form

        return all(pair_form(form, omega) == 0 for form in self.std.L)

    def on_grassmannian(self, omega: Sequence) -> bool:
        return all(quad_value(g, omega) == 0 for g in self.plucker)

    def contains(self, omega: Sequence) -> bool:
        return any(x != 0 for x in omega) and self.in_v8(omega) and self.on_grassmannian(omega)

    def contains_span(self, basis: Sequence[Sequence]) -> bool:
        """P(span) ⊂ W, checked as a polynomial identity."""
        if not all(self.in_v8(b) for b in basis):
            return False
        return all(restrict_form(g, basis).is_zero() for g in self.plucker)


def _left_inverse(b: Matrix) -> Matrix:
    F = b.field
    n, k = b.shape
    cols = list(b.cols())
    for i in range(n):
        if len(cols) == n:
            break
        e = tuple(F(1) if r == i else F(0) for r in range(n))
        if Matrix.from_columns(F, cols + [e]).rank() == len(cols) + 1:
            cols.append(e)
    inv = Matrix.from_columns(F, cols).inverse()
    return Matrix(F, inv.rows[:k])


def _conic_form(F: FieldDescriptor, coeffs_u3: Sequence[Sequence]) -> Matrix:
    """The 3x3 Gram vanishing on λ²c0 + λμc1 + μ²c2 (coefficients in U3 coordinates)."""
    c0, c1, c2 = coeffs_u3
    idx = [(0, 0), (1, 1), (2, 2), (0, 1), (0, 2), (1, 2)]

    # q(v) = Σ s_ij v_i v_j over i <= j; collect coefficients of λ^4 .. μ^4
    rows = []
    pairs = [((c0, c0),), ((c0, c1), (c1, c0)), ((c1, c1), (c0, c2), (c2, c0)), ((c1, c2), (c2, c1)), ((c2, c2),)]
    for group in pairs:
        row = []
        for i, j in idx:
            acc = F(0)
            for x, y in group:
                acc += x[i] * y[j]
            row.append(acc)
        rows.append(row)
    ker = Matrix(F, rows).kernel_basis()
    if len(ker) != 1:
        raise ModelCorruption(f"kernel conic lies on {len(ker)} independent conics")
    s = ker[0]
    half = F(1) / F(2)
    g = [[F(0)] * 3 for _ in range(3)]
    for (i, j), val in zip(idx, s):
        if i == j:
            g[i][i] = val
        else:
            g[i][j] = g[j][i] = val * half
    return Matrix(F, g)


def _adjugate3(m: Matrix) -> Matrix:
    F = m.field
    a = m.rows
    out = [[F(0)] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            r = [k for k in range(3) if k != j]
            c = [k for k in range(3) if k != i]
            minor = a[r[0]][c[0]] * a[r[1]][c[1]] - a[r[0]][c[1]] * a[r[1]][c[0]]
            out[i][j] = minor if (i + j) % 2 == 0 else -minor
    return Matrix(F, out)


def build_w_model(field: FieldDescriptor = QQ, u2_change: Matrix | None = None) -> WModel:
    F = field
    std = standard_model(F, u2_change)
    grams = plucker_grams(F)
    b8 = std.v8_matrix
    lift = _left_inverse(b8)
    plucker_v8 = tuple(restrict_form(g, std.v8) for g in grams)
    pi_basis = std.summands[3]
    kc = kernel_conic(std.pencil)
    coeffs_u3 = [coordinates_in(F, list(std.u3), c) for c in kc.coeffs]
    cu = _conic_form(F, coeffs_u3)
    # a point b of Π = b0 u0∧u1 + b1 u0∧u2 + b2 u1∧u2 is the line with dual coordinates (b2, -b1, b0)
    j = Matrix(F, [[0, 0, 1], [0, -1, 0], [1, 0, 0]])
    dual = j.T @ _adjugate3(cu) @ j
    l_u = tuple(Matrix(F, [tuple(u) for u in std.u3]).kernel_basis())
    from ..pencils import _wedge_change

    to_model = _wedge_change(std.basis_change).inverse()
    return WModel(std, grams, plucker_v8, lift, tuple(pi_basis), cu, dual, l_u, to_model)


# ---------------------------------------------------------------------------
# sampling


def isotropic_complement(W: WModel, u: Sequence) -> list[tuple] | None:
    """K_u = {v : A(u,v) = B(u,v) = 0}, three-dimensional and containing u for general u."""
    p = W.pencil
    rows = [p.A @ tuple(u), p.B @ tuple(u)]
    m = Matrix(W.field, rows)
    if m.rank() != 2:
        return None
    return m.kernel_basis()


def _complement_pair(F, u, basis):
    """Two vectors of the basis that together with u span it."""
    for a, b in itertools.combinations(basis, 2):
        if Matrix(F, [tuple(u), a, b]).rank() == 3:
            return a, b
    return None


def sample_w_point(W: WModel, rng, tries: int = 200) -> tuple:
    """A point u∧v of W with u random and v random in K_u."""
    F = W.field
    for _ in range(tries):
        u = random_vector(F, rng, 5)
        k = isotropic_complement(W, u)
        if k is None:
            continue
        v = vcomb(F, [F.random(rng) for _ in k], k)
        omega = wedge2(u, v)
        if any(x != 0 for x in omega):
            return omega
    raise Degenerate("could not sample a point of W")


def w_line_through(W: WModel, rng, tries: int = 200) -> tuple[tuple, tuple]:
    """Two points spanning a line P(u∧K_u) ⊂ W."""
    F = W.field
    for _ in range(tries):
        u = random_vector(F, rng, 5)
        k = isotropic_complement(W, u)
        if k is None:
            continue
        pair = _complement_pair(F, u, k)
        if pair is None:
            continue
        return wedge2(u, pair[0]), wedge2(u, pair[1])
    raise Degenerate("could not find a line in W")


def linear_section_degree(W: WModel, rng, p: int | None = None):
    """Degree of W ∩ P³ for a seeded 4-dimensional subspace of V8, via a zero-dimensional certificate."""
    from .zerodim import zero_dim_certificate

    F = W.field
    while True:
        s = [random_vector(F, rng, 8) for _ in range(4)]
        if Matrix(F, s).rank() == 4:
            break
    forms = [restrict_form(g, s) for g in W.plucker_v8]
    return zero_dim_certificate(forms, rng, expected=5)


def quadric_evaluation_rank(W: WModel, rng, n_points: int = 60) -> int:
    """Rank of Sym²V8^∨ evaluated at sampled W-points (36 - h⁰(I_W(2)) when enough points)."""
    F = W.field
    mons = list(itertools.combinations_with_replacement(range(8), 2))
    rows = []
    for _ in range(n_points):
        y = W.coords(sample_w_point(W, rng))
        rows.append([y[a] * y[b] for a, b in mons])
    return Matrix(F, rows).rank()
