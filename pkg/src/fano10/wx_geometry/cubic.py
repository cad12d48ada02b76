"""Twisted cubics γ(t) = (w₀ + t w_∞) ∧ (v₀ + t v₁ + t² v_∞) bisecant to a τ-conic.

Input: a τ-conic d ⊂ G(2, V4^d), two lines ℓ = {V2 : e1 ∈ V2 ⊂ V3} and
ℓ′ = {V2 : e1′ ∈ V2 ⊂ V3′} meeting in e1∧e1′, and vectors w ∈ V3 ∩ V4^d,
w′ ∈ V3′ ∩ V4^d. The line ⟨w, w′⟩ meets the quadric surface Q_d swept by
the lines of d in [w₀] and [w_∞]; the normalizations

    w₀ + w_∞ ∈ C·w,   w₀ + t₀ w_∞ ∈ C·w′,   v₀ − t₀ v_∞ ∈ ⟨e1, e1′, w, w′⟩

fix the curve, and v₁ is the unique vector with v(1) ∈ ⟨e1, w⟩ and
v(t₀) ∈ ⟨e1′, w′⟩.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .. import upoly
from ..scalars import (
    FieldDescriptor,
    Matrix,
    _field_of_rows,
    coordinates_in,
    intersect_spans,
    proportional,
    span_contains,
    span_rank,
)
from .conics import ConicRecord, hyperplanes_containing
from .core import (
    binary_roots,
    plucker_grams,
    quad_value,
    random_vector,
    restrict_form,
    vadd,
    vcomb,
    vscale,
    vsub,
    wedge2,
    wedge3,
)


class PreconditionError(ValueError):
    """The input violates a genericity assumption of the construction."""


class NotATauConic(PreconditionError):
    pass


class HyperplaneContainsE1(PreconditionError):
    pass


class LinesDoNotMeet(PreconditionError):
    pass


class NotOnLine(PreconditionError):
    """w is not in V3 ∩ V4^d (or w′ not in V3′ ∩ V4^d), or lies on the other plane."""


class DegenerateBisecant(PreconditionError):
    """The line ⟨w, w′⟩ is tangent to Q_d, lies on it, or meets it at w or w′."""


class DegenerateNormalization(PreconditionError):
    """A normalization step divides by zero (special position of the input)."""


@dataclass(frozen=True)
class LineData:
    """ℓ = {[V2] : ⟨e1⟩ ⊂ V2 ⊂ V3}."""

    e1: tuple
    v3: tuple  # three vectors spanning V3


@dataclass(frozen=True)
class CubicInput:
    d: ConicRecord
    line: LineData
    line2: LineData
    w: tuple
    w2: tuple


@dataclass(frozen=True)
class TwistedCubicParam:
    w0: tuple
    w_inf: tuple
    v0: tuple
    v1: tuple
    v_inf: tuple
    t0: object

    def w_at(self, t) -> tuple:
        return vadd(self.w0, vscale(t, self.w_inf))

    def v_at(self, t) -> tuple:
        return vadd(vadd(self.v0, vscale(t, self.v1)), vscale(t * t, self.v_inf))

    def gamma(self, t) -> tuple:
        return wedge2(self.w_at(t), self.v_at(t))

    def gamma_inf(self) -> tuple:
        return wedge2(self.w_inf, self.v_inf)

    def coefficients(self) -> tuple:
        """Coefficients of t⁰..t³ of γ(t) in ∧²V5."""
        w0, wi, v0, v1, vi = self.w0, self.w_inf, self.v0, self.v1, self.v_inf
        return (
            wedge2(w0, v0),
            vadd(wedge2(w0, v1), wedge2(wi, v0)),
            vadd(wedge2(w0, vi), wedge2(wi, v1)),
            wedge2(wi, vi),
        )


def _units(F, n=5):
    return [tuple(F(1) if t == i else F(0) for t in range(n)) for i in range(n)]


def _wedge_matrix(F, x) -> Matrix:
    """v ↦ x∧v as a 10x5 matrix."""
    return Matrix.from_columns(F, [wedge2(x, u) for u in _units(F)])


def _point_through(F, d: ConicRecord, x) -> tuple:
    """The point of P(⟨d⟩) whose line contains x (x ∈ Q_d)."""
    cols = [wedge3(omega, x) for omega in d.plane]
    ker = Matrix.from_columns(F, cols).kernel_basis()
    if len(ker) != 1:
        raise DegenerateBisecant(f"{len(ker)} independent lines of ⟨d⟩ through a point of ⟨w,w′⟩")
    omega = vcomb(F, list(ker[0]), list(d.plane))
    if quad_value(d.form, ker[0]) != 0:
        raise DegenerateBisecant("the line through the point is not on d")
    return omega


def _linear(c0, c1):
    """[c0 + c1 s] as a polynomial tuple."""
    return upoly.trim((c0, c1))


def q_d_on_line(F: FieldDescriptor, d: ConicRecord, w, w2) -> tuple:
    """Q_d restricted to w + s w′: gcd of the 3x3 minors of [ω_i ∧ (w + s w′)]."""
    p_cols = [wedge3(omega, w) for omega in d.plane]
    q_cols = [wedge3(omega, w2) for omega in d.plane]
    g: tuple = ()
    for rows in itertools.combinations(range(10), 3):
        m = [[_linear(p_cols[c][r], q_cols[c][r]) for c in range(3)] for r in rows]
        det: tuple = ()
        for perm in itertools.permutations(range(3)):
            sign = 1 if _even(perm) else -1
            term = upoly.mul(upoly.mul(m[0][perm[0]], m[1][perm[1]]), m[2][perm[2]])
            det = upoly.add(det, term if sign == 1 else upoly.neg(term))
        g = upoly.gcd(g, det)
    return g


def _even(perm) -> bool:
    inv = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])
    return inv % 2 == 0


def _check_input(F, inp: CubicInput) -> tuple:
    d = inp.d
    if plane_in_grassmannian_g(F, d.plane):
        raise NotATauConic("⟨d⟩ lies in G(2,V5)")
    hyp = hyperplanes_containing(F, list(d.plane))
    if len(hyp) != 1:
        raise NotATauConic("d is not in a unique G(2,V4)")
    f = hyp[0]
    for ld in (inp.line, inp.line2):
        if span_rank(F, list(ld.v3)) != 3 or not span_contains(F, list(ld.v3), ld.e1):
            raise LinesDoNotMeet("line data needs e1 ∈ V3 with dim V3 = 3")
        if sum((a * b for a, b in zip(f, ld.e1)), F(0)) == 0:
            raise HyperplaneContainsE1("V4^d contains e1")
    meet = intersect_spans(F, list(inp.line.v3), list(inp.line2.v3))
    if len(meet) != 2 or not all(span_contains(F, meet, e) for e in (inp.line.e1, inp.line2.e1)):
        raise LinesDoNotMeet("ℓ and ℓ′ do not meet in e1∧e1′")
    for x, own, other in ((inp.w, inp.line, inp.line2), (inp.w2, inp.line2, inp.line)):
        if all(a == 0 for a in x) or not span_contains(F, list(own.v3), x):
            raise NotOnLine("w must be a nonzero vector of V3")
        if sum((a * b for a, b in zip(f, x)), F(0)) != 0:
            raise NotOnLine("w must lie in V4^d")
        if span_contains(F, list(other.v3), x):
            raise NotOnLine("w lies in the other line's V3")
    return f


def plane_in_grassmannian_g(F, plane) -> bool:
    return all(restrict_form(g, list(plane)).is_zero() for g in plucker_grams(F))


def _lift(E: FieldDescriptor, inp: CubicInput) -> CubicInput:
    tup = lambda v: tuple(E(x) for x in v)  # noqa: E731
    lift_line = lambda ld: LineData(tup(ld.e1), tuple(tup(v) for v in ld.v3))  # noqa: E731
    return CubicInput(inp.d.map_field(E), lift_line(inp.line), lift_line(inp.line2), tup(inp.w), tup(inp.w2))


def twisted_cubic(inp: CubicInput, gauge=None) -> TwistedCubicParam:
    """Reconstruct γ from (d, ℓ, ℓ′, w, w′); ``gauge`` (an RNG) randomizes the internal choices.

    Lifts to the quadratic extension when ⟨w, w′⟩ meets Q_d in a conjugate pair.
    """
    F = inp.d.field
    _check_input(F, inp)
    q = q_d_on_line(F, inp.d, inp.w, inp.w2)
    if upoly.deg(q) != 2:
        raise DegenerateBisecant(f"Q_d restricts to a polynomial of degree {upoly.deg(q)} on ⟨w, w′⟩")
    c0, c1, c2 = q
    if c0 == 0:
        raise DegenerateBisecant("w lies on Q_d")
    roots = binary_roots(F, c2, c1 / 2, c0)
    if roots.kind == "double":
        raise DegenerateBisecant("⟨w, w′⟩ is tangent to Q_d")
    if roots.kind == "inert":
        if not F.is_prime:
            raise DegenerateBisecant(f"⟨w, w′⟩ meets Q_d in points not defined over {F}")
        E = F.extension()
        inp = _lift(E, inp)
        F = E
        roots = binary_roots(F, F(c2), F(c1) / 2, F(c0))
    (s1, t1), (s2, t2) = roots.roots
    s1, s2 = s1 / t1, s2 / t2
    if gauge is not None and gauge.random() < 0.5:
        s1, s2 = s2, s1
    return _assemble(F, inp, s1, s2, gauge)


def _assemble(F, inp: CubicInput, s1, s2, gauge) -> TwistedCubicParam:
    w, w2 = inp.w, inp.w2
    # w0 = w + s1 w′, w∞ = −(s1/s2)(w + s2 w′): then w0 + w∞ ∝ w and w0 + t0 w∞ ∝ w′ for t0 = s2/s1
    w0 = vadd(w, vscale(s1, w2))
    w_inf = vscale(-s1 / s2, vadd(w, vscale(s2, w2)))
    t0 = s2 / s1
    if t0 == 1:
        raise DegenerateBisecant("the two points of ⟨w, w′⟩ ∩ Q_d coincide")
    v0 = _cofactor(F, inp.d, w0, gauge)
    v_inf = _cofactor(F, inp.d, w_inf, gauge)
    h_basis = [inp.line.e1, inp.line2.e1, w, w2]
    if span_rank(F, h_basis) != 4:
        raise DegenerateNormalization("e1, e1′, w, w′ do not span a hyperplane")
    h = Matrix(F, h_basis).kernel_basis()[0]
    hv0 = sum((a * b for a, b in zip(h, v0)), F(0))
    hvi = sum((a * b for a, b in zip(h, v_inf)), F(0))
    if hv0 == 0 or hvi == 0:
        raise DegenerateNormalization("v0 or v∞ already lies in ⟨e1, e1′, w, w′⟩")
    # rescale v∞ so that v0 − t0 v∞ ∈ H
    v_inf = vscale(hv0 / (t0 * hvi), v_inf)
    # v(1) = a e1 + b w and v(t0) = c e1′ + d w′ give (1 − t0)(v0 − t0 v∞) = c e1′ + d w′ − t0 a e1 − t0 b w
    target = vscale(1 - t0, vsub(v0, vscale(t0, v_inf)))
    coeffs = Matrix.from_columns(F, [vscale(-t0, inp.line.e1), vscale(-t0, w), inp.line2.e1, w2]).solve(target)
    if coeffs is None:
        raise DegenerateNormalization("no v1 satisfies both line conditions")
    a, b, _, _ = coeffs
    if a == 0:
        raise DegenerateNormalization("γ(1) would not be on ℓ")
    v1 = vsub(vsub(vadd(vscale(a, inp.line.e1), vscale(b, w)), v0), v_inf)
    return TwistedCubicParam(w0, w_inf, v0, v1, v_inf, t0)


def _cofactor(F, d: ConicRecord, x, gauge) -> tuple:
    """A vector v with x∧v the point of d whose line passes through x."""
    omega = _point_through(F, d, x)
    v = _wedge_matrix(F, x).solve(omega)
    if v is None:
        raise DegenerateBisecant("point of d does not contain x")
    if gauge is not None:
        v = vadd(vscale(F.random_nonzero(gauge), v), vscale(F.random(gauge), x))
    return v


# ---------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class CubicCertificate:
    gamma0_in_d: bool
    gamma_inf_in_d: bool
    gamma1_on_line: bool
    gamma_t0_on_line2: bool
    decomposable: bool
    degree: int
    spans_p3: bool

    @property
    def ok(self) -> bool:
        return (self.gamma0_in_d and self.gamma_inf_in_d and self.gamma1_on_line and self.gamma_t0_on_line2
                and self.decomposable and self.degree == 3 and self.spans_p3)


def _on_conic(F, d: ConicRecord, omega) -> bool:
    c = coordinates_in(F, list(d.plane), omega)
    return c is not None and any(x != 0 for x in omega) and quad_value(d.form, c) == 0


def certify(inp: CubicInput, g: TwistedCubicParam, samples=(2, 3, 5, 7, 11, 13, 17)) -> CubicCertificate:
    F = _field_of_rows([g.w0]) or inp.d.field
    if F != inp.d.field:
        inp = _lift(F, inp)
    grams = plucker_grams(F)
    dec = all(quad_value(G, g.gamma(F(t))) == 0 for t in samples for G in grams)
    coeffs = g.coefficients()
    degree = max((k for k, c in enumerate(coeffs) if any(x != 0 for x in c)), default=-1)
    return CubicCertificate(
        _on_conic(F, inp.d, g.gamma(F(0))),
        _on_conic(F, inp.d, g.gamma_inf()),
        proportional(g.gamma(F(1)), wedge2(inp.line.e1, inp.w)),
        proportional(g.gamma(g.t0), wedge2(inp.line2.e1, inp.w2)),
        dec,
        degree,
        span_rank(F, list(coeffs)) == 4,
    )


def same_curve(a: TwistedCubicParam, b: TwistedCubicParam, samples=(2, 3, 5, 7, 11)) -> bool:
    """Projectively equal curves, allowing the reparametrization t ↦ 1/t that swaps w₀ and w_∞."""
    F = _field_of_rows([a.w0, b.w0])
    samples = [F(t) for t in samples if F(t) != 0]
    direct = all(proportional(a.gamma(t), b.gamma(t)) for t in samples)
    flipped = all(proportional(a.gamma(t), b.gamma(1 / t)) for t in samples)
    return direct or flipped


# ---------------------------------------------------------------------------
# admissible inputs


def random_input(F: FieldDescriptor, rng, tries: int = 100) -> CubicInput:
    """Seeded (d, ℓ, ℓ′, w, w′) satisfying every precondition of ``twisted_cubic``."""
    for _ in range(tries):
        f = random_vector(F, rng, 5)
        v4 = Matrix(F, [f]).kernel_basis()
        wedge_basis = [wedge2(a, b) for a, b in itertools.combinations(v4, 2)]
        a = [vcomb(F, [F.random(rng) for _ in range(6)], wedge_basis) for _ in range(3)]
        if span_rank(F, a) != 3:
            continue
        grams = [restrict_form(G, a) for G in plucker_grams(F)]
        q = next((g for g in grams if not g.is_zero()), None)
        if q is None or q.rank() != 3:
            continue
        d = ConicRecord(tuple(a), q, tag="tau", v4=tuple(f))
        e1, e2 = random_vector(F, rng, 5), random_vector(F, rng, 5)
        x, x2 = random_vector(F, rng, 5), random_vector(F, rng, 5)
        ld = LineData(e1, (e1, e2, x))
        ld2 = LineData(e2, (e1, e2, x2))
        try:
            w = _random_in(F, rng, ld.v3, f)
            w2 = _random_in(F, rng, ld2.v3, f)
            inp = CubicInput(d, ld, ld2, w, w2)
            certify(inp, twisted_cubic(inp))
        except (PreconditionError, ValueError):
            continue
        return inp
    raise PreconditionError("no admissible input found")


def _random_in(F, rng, v3, f) -> tuple:
    """A random vector of V3 ∩ ker f."""
    coeffs = Matrix(F, [[sum((a * b for a, b in zip(f, v)), F(0)) for v in v3]]).kernel_basis()
    return vcomb(F, [F.random(rng) for _ in coeffs], [vcomb(F, list(c), list(v3)) for c in coeffs])
