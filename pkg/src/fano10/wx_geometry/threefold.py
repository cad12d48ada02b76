"""The threefold X = W ∩ Ω, its elliptic quartics, the involution ι and the σ-conics."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

import numpy as np

from .. import _accel
from ..scalars import FieldDescriptor, Matrix, coordinates_in, intersect_spans, span_basis, span_contains, spans_equal
from .conics import ConicRecord, classify_conic, conic_from_plane, intersection_length, same_conic
from .core import (
    Degenerate,
    ModelCorruption,
    WModel,
    binary_roots,
    quad_value,
    random_vector,
    restrict_form,
    support,
    to_residues,
    vcomb,
    w_line_through,
)
from .planes import MSpace, contains_u3, m_space, pi_v4, random_l_u, vertex
from .zerodim import DegreeCertificate, zero_dim_certificate

SYM8 = list(itertools.combinations_with_replacement(range(8), 2))


class NonGenericOmega(ValueError):
    """The sampled Ω fails one of the generality checks; resample it upstream."""


@dataclass(frozen=True)
class XModel:
    w: WModel
    omega: Matrix  # 8x8 Gram on V8 coordinates
    omega10: Matrix  # the same pulled back to ∧²V5 through the V8 coordinates
    seed: object
    prescribed: tuple = ()  # τ-conics imposed on Ω
    attempts: int = 1
    smooth_samples: int = 0

    @property
    def field(self) -> FieldDescriptor:
        return self.w.field

    def equations(self) -> tuple:
        """The six 8x8 Grams cutting out X in P(V8)."""
        return tuple(self.w.plucker_v8) + (self.omega,)

    def contains(self, omega) -> bool:
        return self.w.contains(omega) and quad_value(self.omega10, omega) == 0

    def contains_conic(self, c: ConicRecord) -> bool:
        """c ⊂ X as a polynomial identity: plane in V8, every equation proportional to the form."""
        from .core import forms_proportional

        if not all(self.w.in_v8(v) for v in c.plane):
            return False
        forms = [restrict_form(g, list(c.plane)) for g in self.w.plucker] + [restrict_form(self.omega10, list(c.plane))]
        return all(g.is_zero() or forms_proportional(g, c.form) for g in forms)


def _sym_from_vector(F: FieldDescriptor, x) -> Matrix:
    half = F(1) / F(2)
    g = [[F(0)] * 8 for _ in range(8)]
    for (i, j), v in zip(SYM8, x):
        if i == j:
            g[i][i] = v
        else:
            g[i][j] = g[j][i] = v * half
    return Matrix(F, g)


def random_tau_conic(W: WModel, rng) -> ConicRecord:
    """A random plane A of a general M_{V4} with the form Q_{W,V4}|A."""
    F = W.field
    while True:
        f = random_vector(F, rng, 5)
        if contains_u3(W, f):
            continue
        ms = m_space(W, f)
        co = [random_vector(F, rng, 4) for _ in range(3)]
        if Matrix(F, co).rank() < 3:
            continue
        q = restrict_form(ms.qw, co)
        if q.rank() < 3:
            continue
        plane = [vcomb(F, list(c), list(ms.basis)) for c in co]
        return conic_from_plane(plane, q, tag="tau", v4=f)


def _omega_through(W: WModel, conics, rng) -> Matrix:
    """A random quadric on V8 containing the given conics."""
    F = W.field
    n = len(SYM8)
    rows = []
    for k, c in enumerate(conics):
        a8 = [W.coords(v) for v in c.plane]
        for r, s in itertools.combinations_with_replacement(range(3), 2):
            # a_rᵀ Ω a_s − λ_k q_rs in the symmetric coordinates of Ω
            row = []
            for i, j in SYM8:
                x = a8[r][i] * a8[s][j]
                if i != j:
                    x = (x + a8[r][j] * a8[s][i]) / 2
                row.append(x)
            lam = [F(0)] * len(conics)
            lam[k] = -c.form[r, s]
            rows.append(row + lam)
    ker = Matrix(F, rows, n + len(conics)).kernel_basis()
    x = vcomb(F, [F.random(rng) for _ in ker], ker)
    return _sym_from_vector(F, x[:n])


def jacobian_rank(X: XModel, y) -> int:
    rows = [g @ tuple(y) for g in X.equations()]
    return Matrix(X.field, rows).rank()


def sample_x_points(X: XModel, rng, n: int, tries: int | None = None) -> list[tuple]:
    """Points of X(F) as V8 coordinates, from Ω restricted to random lines of W."""
    F = X.field
    out: list[tuple] = []
    tries = tries if tries is not None else 50 * n
    for _ in range(tries):
        if len(out) >= n:
            break
        a, b = (X.w.coords(v) for v in w_line_through(X.w, rng))
        g = restrict_form(X.omega, [a, b])
        r = binary_roots(F, g[0, 0], g[0, 1], g[1, 1])
        if r.kind in ("split", "double"):
            out.extend(vcomb(F, [s, t], [a, b]) for s, t in r.roots)
    if len(out) < n:
        raise Degenerate(f"found only {len(out)} points of X over {F}")
    return out[:n]


def build_X(W: WModel, seed, field: FieldDescriptor | None = None, n_conics: int = 5,
            smooth_samples: int = 200, max_attempts: int = 5) -> XModel:
    """Seeded Ω through ``n_conics`` random τ-conics, accepted once the sampled Jacobians have rank 4.

    Over the rationals only membership is checked (no smoothness sampling).
    """
    F = W.field if field is None else field
    if F != W.field:
        raise ValueError(f"W is defined over {W.field}, not {F}")
    if F.is_finite and (not F.is_prime or F.p < 31):
        raise ValueError("X needs a prime field with p >= 31 or the rationals")
    rng = random.Random(f"X/{seed}")
    for attempt in range(1, max_attempts + 1):
        conics = tuple(random_tau_conic(W, rng) for _ in range(n_conics))
        omega = _omega_through(W, conics, rng)
        omega10 = W.lift.T @ omega @ W.lift
        X = XModel(W, omega, omega10, seed, conics, attempt, 0)
        if not all(X.contains_conic(c) for c in conics):
            raise ModelCorruption("prescribed conic is not on X")
        if not F.is_finite:
            return X
        pts = sample_x_points(X, rng, smooth_samples)
        if all(jacobian_rank(X, y) == 4 for y in pts):
            return XModel(W, omega, omega10, seed, conics, attempt, len(pts))
    raise NonGenericOmega(f"no smooth Ω after {max_attempts} attempts (seed {seed})")


# ---------------------------------------------------------------------------
# elliptic quartics Γ¹_{4,V4} = Q_{W,V4} ∩ Q_{Ω,V4}


@dataclass(frozen=True)
class EllipticQuartic:
    f: tuple
    space: MSpace
    qo: Matrix  # Q_{Ω,V4} on the M basis
    points: np.ndarray  # F_p-points in M coordinates
    sections: tuple  # degree certificates of plane sections
    in_x: bool
    tangent_planes: int = 0  # redrawn non-transverse planes

    @property
    def degree_ok(self) -> bool:
        return all(s.ok and s.total == 4 for s in self.sections)

    def ambient(self, F: FieldDescriptor, row) -> tuple:
        return vcomb(F, [F(int(x)) for x in row], list(self.space.basis))


def elliptic_quartic(X: XModel, f, rng, planes: int = 5) -> EllipticQuartic:
    """Γ¹_{4,V4}: F_p-points by a full P³ scan and degree 4 by plane-section certificates."""
    F = X.field
    if not F.is_prime:
        raise ValueError("the P³ scan needs a prime field")
    ms = m_space(X.w, f)
    if ms.reducible:
        raise ValueError("Q_{W,V4} is reducible (U3 ⊂ V4)")
    qo = restrict_form(X.omega10, list(ms.basis))
    q = np.stack([to_residues(ms.qw, F.p), to_residues(qo, F.p)])
    pts = _accel.zero_scan(q, 4, F.p)
    in_x = all(X.contains(vcomb(F, [F(int(x)) for x in row], list(ms.basis))) for row in pts[:50])
    certs = []
    tangent = 0
    while len(certs) < planes:
        s = [random_vector(F, rng, 4) for _ in range(3)]
        if Matrix(F, s).rank() < 3:
            continue
        cert = zero_dim_certificate([restrict_form(ms.qw, s), restrict_form(qo, s)], rng, expected=4)
        # a tangent plane (about 8/p of them) gives a non-reduced section; the degree is read off a transverse one
        if not cert.squarefree and cert.hilbert[-1] == 4 and tangent < 4 * planes:
            tangent += 1
            continue
        certs.append(cert)
    return EllipticQuartic(tuple(f), ms, qo, pts, tuple(certs), in_x, tangent)


# ---------------------------------------------------------------------------
# the involution ι


@dataclass(frozen=True)
class IotaResult:
    conic: ConicRecord
    image: ConicRecord
    pencil_member: Matrix  # the rank-2 member h·h′ on M
    residual_points: int
    residual_coplanar: bool
    involutive: bool
    meet_length: int

    @property
    def ok(self) -> bool:
        return self.residual_coplanar and self.involutive and self.meet_length == 2


def _plane_hyperplane(c: ConicRecord, X: XModel, f) -> tuple:
    if f is None:
        if c.v4 is None:
            raise ValueError("conic carries no hyperplane V4; pass one")
        f = c.v4
    return tuple(X.field(x) for x in f)


def iota_image(X: XModel, c: ConicRecord, f=None) -> tuple[ConicRecord, Matrix, MSpace]:
    """The residual conic of c in X ∩ P(M_{V4}), computed from the pencil ⟨Q_W, Q_Ω⟩ on M."""
    F = X.field
    f = _plane_hyperplane(c, X, f)
    ms = m_space(X.w, f)
    qo = restrict_form(X.omega10, list(ms.basis))
    a = [coordinates_in(F, list(ms.basis), v) for v in c.plane]
    if any(x is None for x in a):
        raise ValueError("the conic's plane is not in M_V4")
    alpha, beta = restrict_form(ms.qw, a), restrict_form(qo, a)
    # the member of the pencil vanishing on A
    ref = alpha if not alpha.is_zero() else beta
    i, j = next((i, j) for i in range(3) for j in range(3) if ref[i, j] != 0)
    if alpha.is_zero():
        member = ms.qw
    else:
        member = ms.qw.scale(beta[i, j]) - qo.scale(alpha[i, j])
    if member.is_zero():
        raise NonGenericOmega("Q_W and Q_Ω agree on M_V4")
    h = Matrix(F, a).kernel_basis()
    if len(h) != 1:
        raise ValueError("the conic's plane is not a plane of M_V4")
    h = h[0]
    # member = (h h′ᵀ + h′ hᵀ)/2, linear in h′
    rows, rhs = [], []
    for r in range(4):
        for s in range(r, 4):
            row = [F(0)] * 4
            row[s] = row[s] + h[r] / 2
            row[r] = row[r] + h[s] / 2
            rows.append(row)
            rhs.append(member[r, s])
    h2 = Matrix(F, rows).solve(rhs)
    if h2 is None or all(x == 0 for x in h2):
        raise NonGenericOmega("the pencil member through the conic is not a pair of planes")
    a2 = Matrix(F, [h2]).kernel_basis()
    plane = [vcomb(F, list(x), list(ms.basis)) for x in a2]
    q2 = restrict_form(X.omega10, plane)
    if q2.is_zero():
        q2 = restrict_form(ms.qw, a2)
    if q2.is_zero():
        raise NonGenericOmega("the residual plane lies in X")
    return conic_from_plane(plane, q2, v4=f), member, ms


def iota(X: XModel, c: ConicRecord, f=None, quartic: EllipticQuartic | None = None) -> IotaResult:
    """ι(c) with the involution, meeting-length and residual-coplanarity certificates."""
    F = X.field
    f = _plane_hyperplane(c, X, f)
    image, member, ms = iota_image(X, c, f)
    back, _, _ = iota_image(X, image, f)
    involutive = same_conic(back, c)
    meet = intersection_length(c, image)
    length = meet.length if meet.meet_dim == 2 else -1
    n_res, coplanar = 0, True
    if F.is_prime:
        pts = quartic.points if quartic is not None else _scan_m(X, ms)
        for row in pts:
            v = vcomb(F, [F(int(x)) for x in row], list(ms.basis))
            if span_contains(F, list(c.plane), v):
                continue
            n_res += 1
            if not span_contains(F, list(image.plane), v):
                coplanar = False
                break
        if coplanar and n_res < 8:
            raise NonGenericOmega(f"only {n_res} residual points over {F}")
        if not coplanar:
            raise NonGenericOmega("residual points of Γ¹ are not coplanar")
    return IotaResult(c, image, member, n_res, coplanar, involutive, length)


def _scan_m(X: XModel, ms: MSpace) -> np.ndarray:
    p = X.field.p
    qo = restrict_form(X.omega10, list(ms.basis))
    return _accel.zero_scan(np.stack([to_residues(ms.qw, p), to_residues(qo, p)]), 4, p)


# ---------------------------------------------------------------------------
# the ρ-conic c_X and the σ-conics


def rho_conic(X: XModel) -> ConicRecord:
    """c_X = Π ∩ Ω."""
    pi = list(X.w.pi_basis)
    return conic_from_plane(pi, restrict_form(X.omega10, pi))


def sigma_conic(X: XModel, f) -> ConicRecord:
    """Π_{V4} ∩ Ω for V4 ⊇ U3."""
    plane = list(pi_v4(X.w, f))
    return conic_from_plane(plane, restrict_form(X.omega10, plane), v4=tuple(f))


@dataclass(frozen=True)
class SigmaIncidence:
    meets_cx: tuple  # intersection lengths of sampled σ-conics with c_X
    disjoint_pairs: tuple  # for consecutive pairs: (meet dim, point on Ω)
    through_point: tuple  # (scan count, geometric count from the binary quadric, kind) per z ∈ c_X
    in_hyperplane: bool  # sampled σ-conic points have vanishing U1 coordinate

    @property
    def special_pairs(self) -> int:
        return sum(on for _, on in self.disjoint_pairs)

    @property
    def ok(self) -> bool:
        if not all(n == 2 for n in self.meets_cx):
            return False
        # the meeting point lies on Ω only over a hypersurface of pairs (hit with probability about 1/p);
        # general disjointness needs a nonvanishing witness and such pairs in the minority
        if not all(d == 1 for d, _ in self.disjoint_pairs) or 2 * self.special_pairs >= len(self.disjoint_pairs):
            return False
        for scan, geo, kind in self.through_point:
            if geo != 2 or scan != (2 if kind == "split" else 1 if kind == "double" else 0):
                return False
        return self.in_hyperplane


def sigma_incidences(X: XModel, rng, samples: int = 6, points: int = 3) -> SigmaIncidence:
    W, F = X.w, X.field
    cx = rho_conic(X)
    fs = []
    while len(fs) < samples + 1:
        f = random_l_u(W, rng)
        if all(Matrix(F, [f, g]).rank() == 2 for g in fs):
            fs.append(f)
    sig = [sigma_conic(X, f) for f in fs]
    meets = tuple(intersection_length(s, cx).length for s in sig[:samples])
    pairs = []
    for a, b in zip(sig, sig[1:]):
        meet = intersect_spans(F, list(a.plane), list(b.plane))
        on = len(meet) == 1 and quad_value(X.omega10, meet[0]) == 0
        pairs.append((len(meet), on))
    in_h = True
    for s in sig:
        for v in s.plane:
            # Π_{V4} = v∧V4 with v ∈ U3 has no ∧²U2 component
            in_h &= W.coords(v)[0] == 0
    through = []
    if F.is_prime:
        for z in _points_of(cx, rng, points):
            through.append(_sigma_through(X, z))
    return SigmaIncidence(meets, tuple(pairs), tuple(through), in_h)


def _points_of(c: ConicRecord, rng, n: int) -> list[tuple]:
    from .conics import conic_points

    pts, E = conic_points(c, rng, want=n)
    if E != c.field:
        raise Degenerate("c_X has too few rational points")
    return pts[:n]


def _sigma_through(X: XModel, z) -> tuple:
    """σ-conics through z ∈ c_X: a full scan of L_U(F_p) against the points of c_U on the line ⟨z⟩."""
    W, F = X.w, X.field
    sup = support(F, z)
    scan = 0
    for s, t in [(x, F(1)) for x in F.elements()] + [(F(1), F(0))]:
        scan += _vertex_on(W, s, t, sup)
    u3 = list(W.std.u3)
    line = [coordinates_in(F, u3, v) for v in sup]
    g = restrict_form(W.cu_form, line)
    kind = binary_roots(F, g[0, 0], g[0, 1], g[1, 1]).kind
    geo = 2 if kind in ("split", "double", "inert") else -1
    return scan, geo, kind


def _vertex_on(W: WModel, s, t, sup) -> int:
    from .planes import l_u_point

    v = vertex(W, l_u_point(W, s, t))
    return int(span_contains(W.field, sup, v))


# ---------------------------------------------------------------------------
# the X-geometry suite


@dataclass(frozen=True)
class XGeometryReport:
    seed: object
    attempts: int
    smooth_samples: int
    rho_tag: str
    sigma_tags_ok: bool
    quartic_degree_ok: bool
    quartic_in_x: bool
    iota_ok: int
    iota_total: int
    iota_rho_to_sigma: bool
    incidences_ok: bool
    details: dict = field(default_factory=dict, compare=False)

    @property
    def ok(self) -> bool:
        return (
            self.smooth_samples > 0
            and self.rho_tag == "rho"
            and self.sigma_tags_ok
            and self.quartic_degree_ok
            and self.quartic_in_x
            and self.iota_total >= 10
            and self.iota_ok == self.iota_total
            and self.iota_rho_to_sigma
            and self.incidences_ok
        )


def x_geometry(W: WModel, seed, smooth_samples: int = 200, sigma_samples: int = 4) -> XGeometryReport:
    F = W.field
    X = build_X(W, seed, smooth_samples=smooth_samples)
    rng = random.Random(f"X-geometry/{seed}")
    rho = classify_conic(rho_conic(X), W, rng)
    sigma_ok = True
    for _ in range(sigma_samples):
        f = random_l_u(W, rng)
        cl = classify_conic(sigma_conic(X, f), W, rng)
        sigma_ok &= cl.tag == "sigma" and spans_equal(F, [cl.v4], [f])
    # a general V4 for the degree certificate
    while True:
        f = random_vector(F, rng, 5)
        if not contains_u3(W, f):
            break
    quartic = elliptic_quartic(X, f, rng)
    results = []
    for c in X.prescribed:
        r = iota(X, c)
        results.append(r)
        results.append(iota(X, r.image, c.v4))
    for r in results:
        if r.ok and not X.contains_conic(r.image):
            raise ModelCorruption("ι(c) is not on X")
    f = random_l_u(W, rng)
    cx = rho_conic(X)
    r = iota(X, cx, f)
    image_cl = classify_conic(r.image, W, rng)
    rho_to_sigma = r.ok and image_cl.tag == "sigma" and spans_equal(F, [image_cl.v4], [f]) and same_conic(
        r.image, sigma_conic(X, f))
    inc = sigma_incidences(X, rng)
    return XGeometryReport(
        seed,
        X.attempts,
        X.smooth_samples,
        rho.tag,
        sigma_ok,
        quartic.degree_ok,
        quartic.in_x,
        sum(r.ok for r in results),
        len(results),
        rho_to_sigma,
        inc.ok,
        {"quartic_points": int(len(quartic.points)), "meets_cx": list(inc.meets_cx),
         "through_point": [list(t) for t in inc.through_point], "pairs_meeting_on_omega": inc.special_pairs,
         "tangent_planes_redrawn": quartic.tangent_planes},
    )
