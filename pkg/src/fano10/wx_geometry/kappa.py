"""The projection κ: W ⇢ P(U1 ⊕ U4) from P(U3) and its quadratic inverse.

In model coordinates a point of G(2,V5) off the hyperplane ω_01 = 0 is
(u+P)∧(v+Q) with u∧v = c e0∧e1 and mixed part m = u⊗Q − v⊗P. The ∧²U3
part P∧Q is recovered from m by Sym²(U2⊗U3) → ∧²U2 ⊗ ∧²U3, which in
coordinates reads (P∧Q)_jl = (m_0j m_1l − m_1j m_0l) / c.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..pencils import PAIR_INDEX
from ..scalars import Matrix, proportional
from .core import Degenerate, WModel, sample_w_point

U3_PAIRS = [(2, 3), (2, 4), (3, 4)]
MIXED = [(i, j) for i in range(2) for j in range(2, 5)]


def kappa(W: WModel, omega) -> tuple:
    """Coordinates on U1 ⊕ U4 (the first five V8 coordinates); raises on Π."""
    y = W.coords(omega)
    z = tuple(y[:5])
    if all(x == 0 for x in z):
        raise Degenerate("κ is not defined along Π")
    return z


def kappa_inverse(W: WModel, z) -> tuple:
    """The point of ∧²V5 given by the quadrics through the twisted cubic Γ³₀."""
    F = W.field
    y = tuple(z) + (F(0), F(0), F(0))
    part = W.to_model @ W.embed(y)  # model coordinates: U1 ⊕ U4 only
    c = part[PAIR_INDEX[(0, 1)]]
    out = [F(0)] * 10
    out[PAIR_INDEX[(0, 1)]] = c * c
    for ij in MIXED:
        out[PAIR_INDEX[ij]] = c * part[PAIR_INDEX[ij]]
    for j, l in U3_PAIRS:
        m0j, m1l = part[PAIR_INDEX[(0, j)]], part[PAIR_INDEX[(1, l)]]
        m1j, m0l = part[PAIR_INDEX[(1, j)]], part[PAIR_INDEX[(0, l)]]
        out[PAIR_INDEX[(j, l)]] = m0j * m1l - m1j * m0l
    if all(x == 0 for x in out):
        raise Degenerate("κ⁻¹ is not defined on Γ³₀")
    from ..pencils import _wedge_change

    return _wedge_change(W.std.basis_change) @ tuple(out)


def on_indeterminacy(W: WModel, omega) -> bool:
    """Points where the composite κ⁻¹∘κ is not the identity: Π, and V2 meeting U3."""
    y = W.coords(omega)
    if all(x == 0 for x in y[:5]):
        return True
    return (W.to_model @ tuple(omega))[PAIR_INDEX[(0, 1)]] == 0


@dataclass(frozen=True)
class KappaReport:
    samples: int
    passed: int
    excluded: int
    pi_flagged: bool
    witness: tuple | None

    @property
    def ok(self) -> bool:
        return self.passed == self.samples and self.pi_flagged and self.witness is None


def kappa_roundtrip(W: WModel, rng, n: int = 100) -> KappaReport:
    passed = excluded = 0
    witness = None
    while passed + (witness is not None) < n:
        omega = sample_w_point(W, rng)
        if on_indeterminacy(W, omega):
            excluded += 1
            continue
        back = kappa_inverse(W, kappa(W, omega))
        if proportional(omega, back):
            passed += 1
        elif witness is None:
            witness = tuple(omega)
    try:
        kappa(W, W.pi_basis[0])
        flagged = False
    except Degenerate:
        flagged = True
    return KappaReport(n, passed, excluded, flagged, witness)


# ---------------------------------------------------------------------------
# the twisted cubic Γ³₀ ⊂ P(U4)


def gamma0_point(W: WModel, s, t) -> tuple:
    """u ⊗ ℓ_u² for u = s e0 + t e1 and ℓ_u = t X − s Y (vanishing on u), in ∧²V5."""
    F = W.field
    s, t = F(s), F(t)
    u = (s, t)
    q = (t * t, -2 * s * t, s * s)  # ℓ_u² in the basis X², XY, Y²
    out = [F(0)] * 10
    for i in range(2):
        for j in range(3):
            out[PAIR_INDEX[(i, 2 + j)]] = u[i] * q[j]
    from ..pencils import _wedge_change

    return _wedge_change(W.std.basis_change) @ tuple(out)


def inverse_quadrics(W: WModel) -> list[dict]:
    """The components of κ⁻¹ as quadratic forms in z (monomial -> coefficient)."""
    F = W.field
    cols = [W.to_model @ W.embed(tuple(F(1) if k == a else F(0) for k in range(8))) for a in range(5)]
    # part(z) = Σ z_a cols[a]
    lin = {ij: [cols[a][PAIR_INDEX[ij]] for a in range(5)] for ij in [(0, 1)] + MIXED}

    def product(x, y):
        out: dict = {}
        for a in range(5):
            for b in range(5):
                c = x[a] * y[b]
                if c != 0:
                    key = (min(a, b), max(a, b))
                    out[key] = out.get(key, F(0)) + c
        return out

    def sub(p, q):
        out = dict(p)
        for k, v in q.items():
            out[k] = out.get(k, F(0)) - v
        return out

    comps = [product(lin[(0, 1)], lin[(0, 1)])]
    comps += [product(lin[(0, 1)], lin[ij]) for ij in MIXED]
    for j, l in U3_PAIRS:
        comps.append(sub(product(lin[(0, j)], lin[(1, l)]), product(lin[(1, j)], lin[(0, l)])))
    return comps


@dataclass(frozen=True)
class GammaReport:
    in_u4: bool
    quadrics_vanish: bool
    system_dim: int
    vanishing_dim: int
    spans_equal: bool

    @property
    def ok(self) -> bool:
        return self.in_u4 and self.quadrics_vanish and self.system_dim == self.vanishing_dim == 8 and self.spans_equal


def gamma0_check(W: WModel, rng, n_points: int = 12) -> GammaReport:
    F = W.field
    mons = list(itertools.combinations_with_replacement(range(5), 2))
    pts = []
    in_u4 = True
    while len(pts) < n_points:
        s, t = F.random(rng), F.random(rng)
        if s == 0 and t == 0:
            continue
        y = W.coords(gamma0_point(W, s, t))
        in_u4 &= y[0] == 0 and all(x == 0 for x in y[5:])
        pts.append(y[:5])
    evals = Matrix(F, [[z[a] * z[b] for a, b in mons] for z in pts])
    vanishing = evals.kernel_basis()
    comps = [tuple(c.get(m, F(0)) for m in mons) for c in inverse_quadrics(W)]
    vanish = all(x == 0 for c in comps for x in (evals @ c))
    sys_dim = Matrix(F, comps).rank()
    both = Matrix(F, comps + [tuple(v) for v in vanishing]).rank()
    return GammaReport(in_u4, vanish, sys_dim, len(vanishing), both == sys_dim == len(vanishing))
