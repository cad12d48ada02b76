"""Hyperplane sections M_{V4}, the planes Π and Π_{V4}, and their incidences."""

from __future__ import annotations

from dataclasses import dataclass

from ..scalars import FieldDescriptor, Matrix, intersect_spans, span_basis, span_contains, span_rank
from .core import (
    ModelCorruption,
    WModel,
    binary_roots,
    contract,
    restrict_form,
    vcomb,
    wedge2,
)


@dataclass(frozen=True)
class MSpace:
    """M_{V4} = ∧²V4 ∩ V8 together with the Plücker quadric Q_{W,V4} on it."""

    f: tuple  # V4 = ker f
    basis: tuple  # four vectors of ∧²V5
    qw: Matrix  # 4x4 Gram of Q_{W,V4} in that basis
    qw_rank: int

    @property
    def reducible(self) -> bool:
        # a quadric surface in P³ splits into two planes iff its rank is at most 2
        return self.qw_rank <= 2


def hyperplane_basis(F: FieldDescriptor, f) -> list[tuple]:
    return Matrix(F, [tuple(f)]).kernel_basis()


def m_space(W: WModel, f) -> MSpace:
    F = W.field
    f = tuple(F(x) for x in f)
    if all(x == 0 for x in f):
        raise ValueError("a hyperplane needs a nonzero functional")
    # ι_f on the V8 basis; its kernel is ∧²V4 ∩ V8
    cols = [contract(f, v) for v in W.v8]
    ker = Matrix.from_columns(F, cols).kernel_basis()
    if len(ker) != 4:
        raise ModelCorruption(f"dim M_V4 = {len(ker)} for V4 = ker {f}")
    basis = tuple(W.embed(k) for k in ker)
    grams = [restrict_form(g, basis) for g in W.plucker]
    nonzero = [g for g in grams if not g.is_zero()]
    if not nonzero:
        raise ModelCorruption("Plücker quadrics vanish on P(M_V4)")
    qw = nonzero[0]
    flat = [[x for row in g.rows for x in row] for g in nonzero]
    if Matrix(F, flat).rank() != 1:
        raise ModelCorruption("restricted Plücker quadrics are not proportional on M_V4")
    return MSpace(f, basis, qw, qw.rank())


def contains_u3(W: WModel, f) -> bool:
    """[V4] ∈ L_U, i.e. U3 ⊂ ker f."""
    return all(sum((a * b for a, b in zip(f, u)), W.field(0)) == 0 for u in W.std.u3)


def l_u_point(W: WModel, s, t) -> tuple:
    F = W.field
    return vcomb(F, [F(s), F(t)], list(W.l_u))


def vertex(W: WModel, f) -> tuple:
    """For [V4] ∈ L_U, the point v ∈ c_U whose common orthogonal is V4."""
    F = W.field
    if not contains_u3(W, f):
        raise ValueError("V4 does not contain U3")
    A, B = W.pencil.A, W.pencil.B
    u3 = list(W.std.u3)
    # unknowns: x (3 coordinates of v in U3), a, b with A v = a f, B v = b f
    cols = []
    for u in u3:
        cols.append(tuple(A @ u) + tuple(B @ u))
    z = tuple(F(0) for _ in range(5))
    cols.append(tuple(-x for x in f) + z)
    cols.append(z + tuple(-x for x in f))
    ker = Matrix.from_columns(F, cols).kernel_basis()
    vs = span_basis(F, [vcomb(F, k[:3], u3) for k in ker])
    if len(vs) != 1:
        raise ModelCorruption(f"{len(vs)}-dimensional vertex for V4 = ker {f}")
    return vs[0]


def pi_v4(W: WModel, f) -> tuple:
    """The α-plane Π_{V4} = P(v ∧ V4) ⊂ W."""
    F = W.field
    v = vertex(W, f)
    plane = span_basis(F, [wedge2(v, w) for w in hyperplane_basis(F, f)])
    if len(plane) != 3:
        raise ModelCorruption("Π_V4 is not a plane")
    return tuple(plane)


def dual_conic_on(W: WModel, line_basis) -> tuple:
    """Restriction of c_U^∨ to a line of Π given by two vectors of ∧²U3: (a, b, c) for a s² + 2b st + c t²."""
    F = W.field
    coords = [_pi_coords(W, x) for x in line_basis]
    g = restrict_form(W.dual_conic, coords)
    return g[0, 0], g[0, 1], g[1, 1]


def _pi_coords(W: WModel, omega) -> tuple:
    from ..scalars import coordinates_in

    c = coordinates_in(W.field, list(W.pi_basis), omega)
    if c is None:
        raise ValueError("vector is not in ∧²U3")
    return c


@dataclass(frozen=True)
class Tangency:
    f: tuple
    line: tuple
    binary: tuple
    kind: str

    @property
    def ok(self) -> bool:
        return self.kind == "double"


@dataclass(frozen=True)
class PlanePair:
    f: tuple
    g: tuple
    meet_dim: int
    on_pi: bool

    @property
    def ok(self) -> bool:
        return self.meet_dim == 1 and self.on_pi


@dataclass(frozen=True)
class IncidenceReport:
    pi_in_w: bool
    pi_v4_in_w: bool
    tangencies: tuple
    pairs: tuple

    @property
    def ok(self) -> bool:
        return self.pi_in_w and self.pi_v4_in_w and all(t.ok for t in self.tangencies) and all(p.ok for p in self.pairs)


def random_l_u(W: WModel, rng) -> tuple:
    F = W.field
    while True:
        s, t = F.random(rng), F.random(rng)
        if s != 0 or t != 0:
            return l_u_point(W, s, t)


def plane_incidences(W: WModel, rng, samples: int = 10) -> IncidenceReport:
    F = W.field
    pi = list(W.pi_basis)
    tangencies, pairs = [], []
    planes_in_w = True
    fs = []
    while len(fs) < samples + 1:
        f = random_l_u(W, rng)
        if all(span_rank(F, [f, g]) == 2 for g in fs):
            fs.append(f)
    for f in fs[:samples]:
        plane = pi_v4(W, f)
        planes_in_w &= W.contains_span(plane)
        line = intersect_spans(F, pi, list(plane))
        if len(line) != 2:
            raise ModelCorruption(f"Π ∩ Π_V4 has dimension {len(line)}")
        a, b, c = dual_conic_on(W, line)
        tangencies.append(Tangency(f, tuple(line), (a, b, c), binary_roots(F, a, b, c).kind))
    for f, g in zip(fs[:samples], fs[1 : samples + 1]):
        meet = intersect_spans(F, list(pi_v4(W, f)), list(pi_v4(W, g)))
        on_pi = all(span_contains(F, pi, x) for x in meet)
        pairs.append(PlanePair(f, g, len(meet), on_pi))
    return IncidenceReport(W.contains_span(pi), planes_in_w, tuple(tangencies), tuple(pairs))


@dataclass(frozen=True)
class ReducibilityScan:
    field: str
    hyperplanes: int
    dims_ok: bool
    reducible: int
    in_l_u: int
    agree: bool
    mismatches: tuple


def reducibility_scan(W: WModel) -> ReducibilityScan:
    """m_space reducibility against U3 ⊆ V4 over every F_p-hyperplane (prime fields only)."""
    F = W.field
    if not F.is_prime:
        raise ValueError("the full hyperplane scan needs a prime field")
    from .. import _accel

    count = red = inl = 0
    mismatches = []
    for block in _accel.projective_points(5, F.p):
        for row in block.tolist():
            f = tuple(F(x) for x in row)
            ms = m_space(W, f)
            flag = ms.reducible
            member = contains_u3(W, f)
            count += 1
            red += flag
            inl += member
            if flag != member:
                mismatches.append(tuple(row))
    return ReducibilityScan(str(F), count, True, red, inl, not mismatches, tuple(mismatches[:5]))
