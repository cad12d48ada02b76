"""Automorphisms of W in the block form φ = [[φ2, 0], [φ0, φ3]] on V5 = U2 ⊕ U3.

Everything is computed in model coordinates, where the pencil is
A = e0*∧e2* + ½e1*∧e3*, B = ½e0*∧e3* + e1*∧e4* up to the chosen basis of U2.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..multilinear import Atom, BasedSpace, Dual, EigenSpec, Sym, Wedge, eigen_spec_apply, induced_derivation, induced_map, max_fold
from ..pencils import U2, V5, pair_form, sl_basis
from ..scalars import FieldDescriptor, Matrix, QQ, span_basis, spans_equal
from .core import ModelCorruption, WModel, random_vector, sample_w_point, vcomb
from .planes import pi_v4, random_l_u

V8_SPACE = BasedSpace(8, "V8")


def _block(F, phi2: Matrix, phi0: Matrix, phi3: Matrix) -> Matrix:
    rows = [[F(0)] * 5 for _ in range(5)]
    for i in range(2):
        for j in range(2):
            rows[i][j] = phi2[i, j]
    for i in range(3):
        for j in range(2):
            rows[2 + i][j] = phi0[i, j]
        for j in range(3):
            rows[2 + i][2 + j] = phi3[i, j]
    return Matrix(F, rows)


def model_forms(W: WModel) -> list[Matrix]:
    """The pencil pulled back to model coordinates: Pᵀ A P."""
    P = W.std.basis_change
    return [P.T @ f @ P for f in (W.pencil.A, W.pencil.B)]


def to_e_coords(W: WModel, phi_model: Matrix) -> Matrix:
    P = W.std.basis_change
    return P @ phi_model @ P.inverse()


def _unit(F, shape, k):
    r, c = shape
    return Matrix(F, [[F(1) if i * c + j == k else F(0) for j in range(c)] for i in range(r)])


def sym2_contragredient(phi2: Matrix) -> Matrix:
    """The map induced on U3 = Sym²U2^∨ (coordinates X², XY, Y²) by φ2."""
    return induced_map(phi2.inverse().T, Sym(2, Atom(U2)))


@dataclass(frozen=True)
class FixedPhi2:
    solution_dim: int
    phi3_dim: int
    phi3_matches: bool
    phi0_dim: int


def solve_fixed_phi2(W: WModel, phi2: Matrix) -> FixedPhi2:
    """Linear conditions on (φ0, φ3, s) with φ*α = s_α·(A, B) for α in the pencil."""
    F = W.field
    A, B = model_forms(W)
    z2 = Matrix.zeros(F, 3, 2)
    z3 = Matrix.zeros(F, 3, 3)
    unknowns = [("phi0", k) for k in range(6)] + [("phi3", k) for k in range(9)] + [("s", k) for k in range(4)]
    cols = []
    for kind, k in unknowns:
        phi0 = _unit(F, (3, 2), k) if kind == "phi0" else z2
        phi3 = _unit(F, (3, 3), k) if kind == "phi3" else z3
        phi = _block(F, phi2, phi0, phi3)
        # φ*α = φᵀαφ is linear in (φ0, φ3) once φ2 is fixed because U2 and U3 are isotropic
        first = [phi.T @ A @ phi, phi.T @ B @ phi] if kind != "s" else [Matrix.zeros(F, 5, 5)] * 2
        s = [F(0)] * 4
        if kind == "s":
            s[k] = F(1)
        lhs = [first[0] - A.scale(s[0]) - B.scale(s[1]), first[1] - A.scale(s[2]) - B.scale(s[3])]
        cols.append(tuple(x for m in lhs for row in m.rows for x in row))
    ker = Matrix.from_columns(F, cols).kernel_basis()
    phi3s = span_basis(F, [k[6:15] for k in ker if any(x != 0 for x in k[6:15])]) if ker else []
    target = sym2_contragredient(phi2)
    match = len(phi3s) == 1 and spans_equal(F, phi3s, [tuple(x for row in target.rows for x in row)])
    phi0s = span_basis(F, [k[:6] for k in ker if all(x == 0 for x in k[6:15])])
    return FixedPhi2(len(ker), len(phi3s), match, len(phi0s))


def lie_algebra_dim(W: WModel) -> tuple[int, int]:
    """(dim of the stabilizer of V8 in gl(V5), dim mod scalars)."""
    F = W.field
    functor = Wedge(2, Atom(V5))
    gens = sl_basis(F) + [Matrix.identity(F, 5)]
    cols = []
    for x in gens:
        d = induced_derivation(x, functor)
        cols.append(tuple(pair_form(form, d @ tuple(v)) for form in W.std.L for v in W.v8))
    ker = Matrix.from_columns(F, cols).kernel_basis()
    return len(ker), len(ker) - 1


def _completely_symmetric_tensors(F) -> list[tuple]:
    """φ0 with φ0(e_a)(e_b, e_c) symmetric in a, b, c, as 3x2 matrices in the basis X², XY, Y²."""
    out = []
    for cubic in itertools.combinations_with_replacement(range(2), 3):
        # T(a,b,c) = 1 on permutations of the multi-index
        vals = {}
        for perm in set(itertools.permutations(cubic)):
            vals[perm] = F(1)
        m = [[F(0)] * 2 for _ in range(3)]
        for a in range(2):
            # φ0(e_a) as a quadratic form: value on (b,c); coordinates: X² <- (0,0), XY <- 2·(0,1), Y² <- (1,1)
            g = lambda b, c: vals.get((a, b, c), F(0))
            m[0][a] = g(0, 0)
            m[1][a] = 2 * g(0, 1)
            m[2][a] = g(1, 1)
        out.append(tuple(x for row in m for x in row))
    return out


def complete_symmetry_dim(W: WModel) -> tuple[int, bool]:
    """Dimension of {φ0 : [[1,0],[φ0,1]] preserves V8} and whether it is the image of Sym³U2^∨."""
    F = W.field
    phi2 = Matrix.identity(F, 2)
    A, B = model_forms(W)
    cols = []
    for k in range(6):
        phi = _block(F, phi2, _unit(F, (3, 2), k), Matrix.identity(F, 3))
        diffs = [phi.T @ A @ phi - A, phi.T @ B @ phi - B]
        cols.append(tuple(d[0, 1] for d in diffs))
    ker = Matrix.from_columns(F, cols).kernel_basis()
    sym = span_basis(F, _completely_symmetric_tensors(F))
    return len(ker), len(sym) == 4 and spans_equal(F, ker, sym)


def automorphism(W: WModel, phi2: Matrix, phi0: Matrix, scalar) -> Matrix:
    """φ in e-coordinates from its block data (φ3 = scalar · Sym²(φ2^{-T}))."""
    F = W.field
    phi3 = sym2_contragredient(phi2).scale(F(scalar))
    return to_e_coords(W, _block(F, phi2, phi0, phi3))


def restrict_to_v8(W: WModel, phi: Matrix) -> Matrix:
    """Matrix of ∧²φ on V8 in V8 coordinates; raises when V8 is not preserved."""
    F = W.field
    w2 = induced_map(phi, Wedge(2, Atom(V5)))
    cols = []
    for v in W.v8:
        img = w2 @ tuple(v)
        if not W.in_v8(img):
            raise ModelCorruption("φ does not preserve V8")
        cols.append(W.coords(img))
    return Matrix.from_columns(F, cols)


def ell_cubed(W: WModel) -> Matrix:
    """φ with φ2 = φ3 = Id and φ0(u)(x,y) = ℓ(u)ℓ(x)ℓ(y) for ℓ = X."""
    F = W.field
    phi0 = Matrix(F, [[1, 0], [0, 0], [0, 0]])
    return to_e_coords(W, _block(F, Matrix.identity(F, 2), phi0, Matrix.identity(F, 3)))


def id_minus_phi_rank(W: WModel) -> int:
    F = W.field
    r = restrict_to_v8(W, ell_cubed(W))
    phi = induced_map(r, Sym(2, Dual(Atom(V8_SPACE))))
    return (Matrix.identity(F, 36) - phi).rank()


def v8_torus_exponents(W: WModel) -> list[int]:
    """Exponents k with ∧²φ v = c^k v for φ = diag(1, 1, c, c, c) on the V8 basis."""
    F = W.field
    c = F(3)
    phi = to_e_coords(W, Matrix.diagonal(F, [1, 1, c, c, c]))
    w2 = induced_map(phi, Wedge(2, Atom(V5)))
    exps = []
    for v in W.v8:
        img = w2 @ tuple(v)
        for k in range(3):
            if img == tuple((c ** k) * x for x in v):
                exps.append(k)
                break
        else:
            raise ModelCorruption("V8 basis vector is not a torus eigenvector")
    return exps


@dataclass(frozen=True)
class EigenReport:
    v8_spec: dict
    sym2_dual: tuple
    fold_bound: int
    fold_modulus: int


def eigen_multiplicities(W: WModel) -> EigenReport:
    """Multiplicities of φ* on Sym²V8^∨ when φ acts by 1 on U2 and ζ^{-1} on U3."""
    # the torus exponents of diag(1,1,c,c,c) count powers of c; with c = ζ^{-1} dualizing makes them ζ-powers
    base = EigenSpec.from_exponents([-k for k in v8_torus_exponents(W)])
    spec = eigen_spec_apply(Sym(2, Dual(Atom(V8_SPACE))), base)
    best, n = max_fold(spec)
    return EigenReport(base.as_dict(), spec.multiplicities(), best, n)


def eigen_chain_from_v5() -> dict:
    """Independent route: V5 spec {0:2, -1:3} → ∧² → drop the U2 summand → dual → Sym²."""
    v5 = EigenSpec.from_counts({0: 2, -1: 3})
    w2 = eigen_spec_apply(Wedge(2, Atom(V5)), v5).as_dict()
    w2[-1] -= 2  # the complement of V8 is U2 ⊂ U2 ⊗ U3
    v8 = EigenSpec.from_counts(w2)
    spec = eigen_spec_apply(Sym(2, Dual(Atom(V8_SPACE))), v8)
    return {"wedge2": eigen_spec_apply(Wedge(2, Atom(V5)), v5).as_dict(), "v8": v8.as_dict(),
            "sym2_dual": spec.multiplicities(), "fold": max_fold(spec)}


@dataclass(frozen=True)
class AutReport:
    lie_gl: int
    lie_dim: int
    fixed_phi2: FixedPhi2
    group_dim: int
    complete_symmetry: int
    complete_is_sym3: bool
    id_minus_phi: int | None
    eval_rank: int | None
    h0_iw2: int | None
    preserves_pi: bool | None
    permutes_pi_v4: bool | None
    preserves_w: bool | None

    def checks(self) -> dict:
        out = {
            "a_lie_dim": self.lie_dim == 8,
            "a_fixed_phi2": self.fixed_phi2.solution_dim == 5 and self.fixed_phi2.phi3_matches and self.fixed_phi2.phi0_dim == 4,
            "a_group_dim": self.group_dim == 8,
            "b_complete_symmetry": self.complete_symmetry == 4 and self.complete_is_sym3,
        }
        if self.id_minus_phi is not None:
            out["c_rank_id_minus_phi"] = self.id_minus_phi == 18
        if self.eval_rank is not None:
            out["d_eval_rank"] = self.eval_rank == 31 and self.h0_iw2 == 5
        if self.preserves_pi is not None:
            out["e_orbits"] = bool(self.preserves_pi and self.permutes_pi_v4 and self.preserves_w)
        return out

    @property
    def ok(self) -> bool:
        return all(self.checks().values())


def random_automorphism(W: WModel, rng) -> Matrix:
    F = W.field
    while True:
        phi2 = Matrix(F, [[F.random(rng) for _ in range(2)] for _ in range(2)])
        if phi2.det() != 0:
            break
    coeffs = [F.random(rng) for _ in range(4)]
    flat = vcomb(F, coeffs, _completely_symmetric_tensors(F))
    psi = Matrix(F, [flat[0:2], flat[2:4], flat[4:6]])
    # [[φ2, 0], [ψφ2, φ3]] = [[1, 0], [ψ, 1]] · diag(φ2, φ3)
    return automorphism(W, phi2, psi @ phi2, F.random_nonzero(rng))


def orbit_checks(W: WModel, rng, n: int = 3) -> tuple[bool, bool, bool]:
    F = W.field
    pi = list(W.pi_basis)
    pres_pi = perm = pres_w = True
    for _ in range(n):
        phi = random_automorphism(W, rng)
        w2 = induced_map(phi, Wedge(2, Atom(V5)))
        pres_pi &= spans_equal(F, [w2 @ tuple(x) for x in pi], pi)
        f = random_l_u(W, rng)
        g = tuple((Matrix(F, [f]) @ phi.inverse()).rows[0])  # V4 ↦ φ(V4)
        from .planes import contains_u3

        perm &= contains_u3(W, g) and spans_equal(F, [w2 @ tuple(x) for x in pi_v4(W, f)], list(pi_v4(W, g)))
        for _ in range(3):
            pres_w &= W.contains(w2 @ sample_w_point(W, rng))
    return pres_pi, perm, pres_w


def aut_suite(W: WModel, rng, eval_points: int = 60, with_rank: bool = True, with_orbits: bool = True) -> AutReport:
    from .core import quadric_evaluation_rank

    F = W.field
    gl, lie = lie_algebra_dim(W)
    while True:
        phi2 = Matrix(F, [[F.random(rng) for _ in range(2)] for _ in range(2)])
        if phi2.det() != 0:
            break
    fixed = solve_fixed_phi2(W, phi2)
    # group: GL(U2) x (φ0, φ3 up to the scalar already in φ3) modulo scalars
    group_dim = 4 + fixed.solution_dim - 1
    cs, is_sym3 = complete_symmetry_dim(W)
    rank = id_minus_phi_rank(W) if with_rank else None
    ev = quadric_evaluation_rank(W, rng, eval_points) if eval_points else None
    h0 = 36 - ev if ev is not None else None
    orbits = orbit_checks(W, rng) if with_orbits else (None, None, None)
    return AutReport(gl, lie, fixed, group_dim, cs, is_sym3, rank, ev, h0, *orbits)
