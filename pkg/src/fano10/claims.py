"""Registry of verification claims C01-C21 and the runner that evaluates them."""

from __future__ import annotations

import hashlib
import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Callable, Sequence

from . import bbw, chow, pencils
from .scalars import QQ, FieldDescriptor, Matrix, span_rank, spans_equal
from .wx_geometry.core import wedge2

REPORT_VERSION = 1
PROVENANCE = ("PAPER", "TRIVIAL", "DERIVED")
ANY = frozenset({"rational", "prime", "ext2"})
PRIME = frozenset({"prime"})


class UnknownClaim(KeyError):
    pass


@dataclass(frozen=True)
class Config:
    field: FieldDescriptor | None = None  # None: each claim's default field
    seed: int = 0
    samples: int = 200
    timings: bool = False

    def __post_init__(self):
        if self.samples <= 0:
            raise ValueError("sample counts must be positive")

    def as_json(self) -> dict:
        return {"field": None if self.field is None else str(self.field), "seed": self.seed, "samples": self.samples}


@dataclass
class Outcome:
    computed: dict
    checks: dict
    witness: str | None = None
    consumed: list = field(default_factory=list)


@dataclass(frozen=True)
class ClaimDescriptor:
    id: str
    title: str
    anchor: str
    deps: tuple
    default_field: str
    fields: frozenset
    expected: dict  # key -> (value, provenance)
    run: Callable[["Config", FieldDescriptor, random.Random], Outcome] = field(repr=False, compare=False)
    min_p: int = 0  # smallest admissible characteristic for finite fields

    def __post_init__(self):
        for key, (_, tag) in self.expected.items():
            if tag not in PROVENANCE:
                raise ValueError(f"{self.id}.{key}: provenance {tag!r} not in {PROVENANCE}")


@dataclass(frozen=True)
class VerificationReport:
    id: str
    status: str  # pass, fail, skipped
    computed: dict
    expected: dict
    provenance: dict
    seed: int
    field: str
    consumed: tuple
    millis: int | None
    witness: str | None

    def as_json(self) -> dict:
        out = {
            "id": self.id,
            "status": self.status,
            "computed": self.computed,
            "expected": self.expected,
            "provenance": self.provenance,
            "seed": self.seed,
            "field": self.field,
            "consumed": list(self.consumed),
            "millis": self.millis,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def claim_rng(seed: int, cid: str, purpose: str = "main") -> random.Random:
    digest = hashlib.sha256(f"{seed}/{cid}/{purpose}".encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def jsonable(x):
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, float):
        return x
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else int(x)
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    return str(x)


# ---------------------------------------------------------------------------
# shared constructions


@lru_cache(maxsize=None)
def _w_model(field_text: str):
    from .wx_geometry.core import build_w_model

    return build_w_model(FieldDescriptor.parse(field_text))


def w_model(F: FieldDescriptor):
    return _w_model(str(F))


def _first_failure(checks: dict) -> str | None:
    bad = [k for k, v in checks.items() if not v]
    return None if not bad else "failed: " + ", ".join(bad)


# ---------------------------------------------------------------------------
# claim bodies


def c01(cfg, F, rng) -> Outcome:
    m = pencils.standard_model(F)
    quads = pencils.pfaffian_quadrics(m.pencil)
    profile = pencils.rank_profile(m.pencil)
    ranks = set()
    for _ in range(20):
        lam, mu = F.random(rng), F.random(rng)
        if lam == 0 and mu == 0:
            continue
        ranks.add(m.pencil.member(lam, mu).rank())
    computed = {"pfaffian_gcd_trivial": profile, "sampled_member_ranks": sorted(ranks),
                "pfaffian_quadrics": len(quads)}
    return Outcome(computed, {"gcd": profile, "ranks": ranks == {4}})


def c02(cfg, F, rng) -> Outcome:
    m = pencils.standard_model(F)
    kc = pencils.kernel_conic(m.pencil)
    degrees = pencils.conic_coordinate_degrees(kc)
    span = kc.span()
    equal = spans_equal(F, span, list(m.u3))
    computed = {"coordinate_degrees": degrees, "span_dim": len(span), "span_is_u3": equal}
    checks = {"degrees": all(d in (2, -1) for d in degrees) and 2 in degrees, "span": len(span) == 3, "u3": equal}
    return Outcome(computed, checks)


def c03(cfg, F, rng) -> Outcome:
    F5 = FieldDescriptor.prime(5)
    m = pencils.standard_model(F5)
    cert = pencils.enumerate_isotropic(m.pencil, 5, list(m.u3))
    checks = {"unique": cert["isotropic_count"] == 1, "kernel_span": cert.get("matches_kernel_span", False)}
    return Outcome(dict(cert), checks)


def c04(cfg, F, rng) -> Outcome:
    m = pencils.standard_model(F)
    rep = pencils.analyze(m, certify_over=None)
    dims = rep.dims()
    no_rank2 = rep.max_rank
    computed = {"dims": dims, "no_rank2_forms_in_L": no_rank2}
    checks = {"v8": dims["v8"] == 8, "L": dims["L"] == 2, "u3": dims["u3"] == 3,
              "summands": tuple(dims["summands"]) == (1, 2, 3, 4), "no_rank2": no_rank2}
    return Outcome(computed, checks)


def c05(cfg, F, rng) -> Outcome:
    from .wx_geometry.core import random_vector
    from .wx_geometry.planes import contains_u3, m_space, reducibility_scan

    W = w_model(F)
    dims, irreducible_generic, split_lu = [], True, True
    for _ in range(50):
        f = random_vector(F, rng, 5)
        ms = m_space(W, f)
        dims.append(len(ms.basis))
        if ms.reducible != contains_u3(W, f):
            irreducible_generic = False
    from .wx_geometry.planes import random_l_u

    for _ in range(5):
        split_lu &= m_space(W, random_l_u(W, rng)).reducible
    scan = reducibility_scan(w_model(FieldDescriptor.prime(5)))
    computed = {"dims": sorted(set(dims)), "seeded": len(dims), "scan_field": scan.field, "scan_hyperplanes": scan.hyperplanes,
                "scan_reducible": scan.reducible, "scan_in_l_u": scan.in_l_u, "scan_agree": scan.agree}
    checks = {"dim4": set(dims) == {4}, "generic_law": irreducible_generic, "l_u_split": split_lu, "scan": scan.agree}
    witness = None if scan.agree else f"hyperplanes {list(scan.mismatches)}"
    return Outcome(computed, checks, witness)


def c06(cfg, F, rng) -> Outcome:
    from .wx_geometry.core import linear_section_degree, sample_w_point

    W = w_model(F)
    certs = [linear_section_degree(W, rng) for _ in range(3)]
    ranks = set()
    worst = None
    for _ in range(cfg.samples):
        y = W.coords(sample_w_point(W, rng))
        r = Matrix(F, [g @ y for g in W.plucker_v8]).rank()
        ranks.add(r)
        if r != 3 and worst is None:
            worst = str(list(y))
    computed = {"section_degrees": [c.total for c in certs], "hilbert": [list(c.hilbert) for c in certs],
                "closed_points": [jsonable(c.points_by_degree) for c in certs], "jacobian_ranks": sorted(ranks),
                "smooth_samples": cfg.samples}
    checks = {"degree5": all(c.ok and c.total == 5 for c in certs), "smooth": ranks == {3}}
    return Outcome(computed, checks, worst)


def c07(cfg, F, rng) -> Outcome:
    from .wx_geometry.kappa import gamma0_check, kappa_roundtrip

    W = w_model(F)
    rep = kappa_roundtrip(W, rng, cfg.samples)
    gam = gamma0_check(W, rng)
    computed = {"samples": rep.samples, "passed": rep.passed, "excluded": rep.excluded,
                "pi_indeterminate": rep.pi_flagged, "gamma_in_u4": gam.in_u4, "gamma_quadrics": gam.system_dim,
                "gamma_vanishing_dim": gam.vanishing_dim}
    checks = {"roundtrip": rep.ok, "gamma": gam.ok}
    witness = None if rep.witness is None else str(list(rep.witness))
    return Outcome(computed, checks, witness)


def c08(cfg, F, rng) -> Outcome:
    from .wx_geometry.planes import plane_incidences

    rep = plane_incidences(w_model(F), rng, 10)
    computed = {"pi_in_w": rep.pi_in_w, "pi_v4_in_w": rep.pi_v4_in_w,
                "tangency_kinds": [t.kind for t in rep.tangencies], "pair_meet_dims": [p.meet_dim for p in rep.pairs],
                "pair_points_on_pi": all(p.on_pi for p in rep.pairs)}
    bad = next((t for t in rep.tangencies if not t.ok), None)
    return Outcome(computed, {"incidences": rep.ok}, None if bad is None else f"V4 = ker {list(bad.f)}")


def c09(cfg, F, rng) -> Outcome:
    from .wx_geometry.conics import classify_conic, conic_from_plane
    from .wx_geometry.core import random_vector, wedge2
    from .wx_geometry.planes import pi_v4, random_l_u
    from .wx_geometry.threefold import random_tau_conic

    W = w_model(F)

    def random_form():
        while True:
            m = Matrix(F, [[F.random(rng) for _ in range(3)] for _ in range(3)])
            m = m + m.T
            if m.rank() == 3:
                return m

    tags, v4_ok, stable = [], True, True
    for _ in range(3):
        tau = random_tau_conic(W, rng)
        f = random_l_u(W, rng)
        sigma = conic_from_plane(list(pi_v4(W, f)), random_form())
        while True:
            v3 = [random_vector(F, rng, 5) for _ in range(3)]
            if span_rank(F, v3) == 3:
                break
        rho = conic_from_plane([wedge2(v3[0], v3[1]), wedge2(v3[0], v3[2]), wedge2(v3[1], v3[2])], random_form())
        pi_rho = conic_from_plane(list(W.pi_basis), random_form())
        for c, want, v4 in ((tau, "tau", tau.v4), (sigma, "sigma", f), (rho, "rho", None), (pi_rho, "rho", None)):
            a = classify_conic(c, W, rng)
            b = classify_conic(c, W, random.Random(rng.random()))
            tags.append(a.tag == want)
            if v4 is not None:
                v4_ok &= spans_equal(F, [a.v4], [tuple(v4)])
            stable &= a.tag == b.tag and (a.v4 is None or spans_equal(F, [a.v4], [b.v4]))
    computed = {"classified": len(tags), "correct_tags": sum(tags), "v4_correct": v4_ok, "stable": stable}
    return Outcome(computed, {"tags": all(tags), "v4": v4_ok, "stable": stable})


def c10(cfg, F, rng) -> Outcome:
    from .wx_geometry.aut import aut_suite

    rep = aut_suite(w_model(F), rng, eval_points=0, with_rank=False, with_orbits=True)
    computed = {"gl_stabilizer_dim": rep.lie_gl, "lie_algebra_dim": rep.lie_dim, "group_dim": rep.group_dim,
                "fixed_phi2_solutions": rep.fixed_phi2.solution_dim, "phi0_dim": rep.fixed_phi2.phi0_dim,
                "complete_symmetry_dim": rep.complete_symmetry, "orbits": rep.checks().get("e_orbits")}
    checks = rep.checks()
    return Outcome(computed, checks, _first_failure(checks))


def c11(cfg, F, rng) -> Outcome:
    from .wx_geometry.aut import eigen_chain_from_v5, eigen_multiplicities

    rep = eigen_multiplicities(w_model(F))
    chain = eigen_chain_from_v5()
    computed = {"v8_spec": rep.v8_spec, "sym2_dual": list(rep.sym2_dual), "fold_bound": rep.fold_bound,
                "fold_modulus": rep.fold_modulus, "from_v5": list(chain["sym2_dual"]),
                "fold_from_v5": chain["fold"][0]}
    checks = {"multiplicities": rep.sym2_dual == (1, 4, 13, 12, 6), "fold": rep.fold_bound == 20,
              "independent_route": chain["sym2_dual"] == rep.sym2_dual and chain["fold"][0] == 20}
    return Outcome(computed, checks)


def c12(cfg, F, rng) -> Outcome:
    from .wx_geometry.aut import id_minus_phi_rank

    r = id_minus_phi_rank(w_model(F))
    return Outcome({"rank_id_minus_phi": r, "ambient": 36}, {"rank": r == 18})


def c13(cfg, F, rng) -> Outcome:
    from .wx_geometry.core import quadric_evaluation_rank

    r = quadric_evaluation_rank(w_model(F), rng, 60)
    return Outcome({"evaluation_rank": r, "points": 60, "h0_IW2": 36 - r}, {"rank": r == 31})


def c14(cfg, F, rng) -> Outcome:
    suite = bbw.acyclicity_suite()
    computed = {e.label: list(e.dims) for e in suite}
    checks = {e.label: e.ok for e in suite}
    return Outcome(computed, checks, _first_failure(checks))


def rank_facts(F: FieldDescriptor = QQ) -> dict:
    """The registered rank facts, each computed from the pencil model."""
    m = pencils.standard_model(F)
    return {"psi_rank": pencils.psi_rank(m)[0], "sl_action_rank": pencils.sl_action_rank(m),
            "wedge_LL_rank": wedge_ll_rank(F)}


def wedge_ll_rank(F: FieldDescriptor) -> int:
    """Rank of L ⊗ L → ∧²L for a two-dimensional L."""
    from .multilinear import perm_sign

    row = [F(perm_sign((i, j))) if i != j else F(0) for i in range(2) for j in range(2)]
    return Matrix(F, [row]).rank()


def c15(cfg, F, rng) -> Outcome:
    led = bbw.load_ledger("cogr")
    facts = rank_facts(F)
    sol = bbw.solve_ledger(led, facts)
    dims = {t: sol.dims(t, 4) for t in led.targets}
    consumed = sorted(sol.consumed(led.targets))
    rank_consumed = sorted(n for n in consumed if sol.fact_categories[n] == "rank")
    h3 = sol.values[("Om1W(-3)", 3)].value
    checks = {
        "Om1W(-2)": dims["Om1W(-2)"] == [0, 0, 0, 2, 0],
        "Om2W(-1)": dims["Om2W(-1)"] == [0, 0, 0, 2, 0],
        "Om1W(-3)_H3": h3 == 0,
        "Om2G(-1)|W": dims["Om2G(-1)|W"] == [0, 0, 0, 5, 0],
        "two_rank_facts": rank_consumed == ["psi", "sl_action"],
    }
    computed = {"dims": dims, "consumed_rank_facts": rank_consumed, "consumed_facts": consumed,
                "fact_values": facts}
    return Outcome(computed, checks, _first_failure(checks), consumed)


def c16(cfg, F, rng) -> Outcome:
    m = pencils.standard_model(F)
    r, image = pencils.psi_rank(m)
    sl = pencils.sl_action_rank(m)
    on_u3 = spans_equal(F, image, list(m.u3))
    return Outcome({"psi_rank": r, "psi_image_is_u3": on_u3, "sl_action_rank": sl},
                   {"psi": r == 3, "image": on_u3, "sl": sl == 16})


def c17(cfg, F, rng) -> Outcome:
    X10, K3 = chow.X10, chow.K3
    end = chow.hrr_euler(X10, chow.end_bundle(2, 1, 5))
    hom = chow.hrr_euler(K3, chow.SheafChernData(4, 0, 6))
    e4 = chow.hrr_euler(X10, chow.SheafChernData(2, 1, 4))
    e5 = chow.hrr_euler(X10, chow.SheafChernData(2, 1, 5))
    torsion = {k: chow.torsion_euler(k) for k in range(-5, 6)}
    bad = []
    for r in (1, 2, 3):
        for c1 in range(-2, 3):
            for c2 in range(-4, 5):
                for c3 in range(-4, 5):
                    x = chow.hrr_euler_exact(X10, chow.SheafChernData(r, c1, c2, c3))
                    if (x.denominator == 1) != chow.x10_integrality_lattice(c1, c2, c3):
                        bad.append((r, c1, c2, c3))
    computed = {"chi_end_E": end, "chi_hom_K3": hom, "chi_E_c2_4": e4, "chi_E_c2_5": e5,
                "chi_torsion": torsion, "integrality_mismatches": len(bad)}
    checks = {"end": end == -1, "hom": hom == 2, "c2_4": e4 == 5, "c2_5": e5 == 4,
              "torsion": all(v == k for k, v in torsion.items()), "integrality": not bad}
    return Outcome(computed, checks, None if not bad else f"Chern data {bad[0]}")


def c18(cfg, F, rng) -> Outcome:
    conic = chow.transform_ledger("conic")
    line = chow.transform_ledger("line")
    sigma = chow.sigma_system_degree()
    sextic = chow.sextic_image_degree(6, 4)
    dp = chow.delpezzo_residuals()
    computed = {"conic": conic.display, "conic_test_degrees": conic.degrees, "line": line.display,
                "sigma_degree": sigma, "sextic_image_degree": sextic,
                "residual_lines": chow.format_lattice_class(dp["residual_lines"]),
                "residual_conics": chow.format_lattice_class(dp["residual_conics"]),
                "residual_degrees": [dp["degree_lines"], dp["degree_conics"]]}
    checks = {
        "conic": conic.coefficients == (-3, -4),
        "conic_degrees": conic.degrees.get("line_meeting_c") == -1 and conic.degrees.get("iota_c") == -2,
        "line": line.coefficients == (-2, -3),
        "sigma": sigma == 0,
        "sextic": sextic == 2,
        "residuals": dp["residual_lines"] == (4, 0, -2, -2, -2) and dp["residual_conics"] == (2, 0, 0, 0, 0),
        "residual_degrees": dp["degree_lines"] == dp["degree_conics"] == 6,
    }
    return Outcome(computed, checks, _first_failure(checks))


def c19(cfg, F, rng) -> Outcome:
    from .wx_geometry.aut import id_minus_phi_rank, lie_algebra_dim
    from .wx_geometry.core import quadric_evaluation_rank

    W = w_model(F)
    h0 = 36 - quadric_evaluation_rank(W, rng, 60)
    _, lie = lie_algebra_dim(W)
    fixed = id_minus_phi_rank(W)
    try:
        counts = chow.dimension_counts(h0, lie, fixed)
    except chow.CountMismatch as exc:
        return Outcome({"h0_IW2": h0, "aut_dim": lie, "fixed_rank": fixed}, {"inputs": False}, str(exc))
    checks = {"moduli": counts["moduli"] == 22, "period_image": counts["period_image"] == 20,
              "quadric_bound": counts["quadric_bound_ok"], "fixed_excess": counts["fixed_excess_ok"]}
    consumed = ["wx_geometry.quadric_evaluation_rank", "wx_geometry.lie_algebra_dim", "wx_geometry.id_minus_phi_rank"]
    computed = dict(counts, h0_IW2=h0, aut_dim=lie, fixed_rank=fixed)
    return Outcome(computed, checks, _first_failure(checks), consumed)


def c20(cfg, F, rng) -> Outcome:
    from .wx_geometry.threefold import x_geometry

    W = w_model(F)
    reports = [x_geometry(W, f"{cfg.seed}/{k}", smooth_samples=cfg.samples) for k in range(3)]
    computed = {
        "seeds": len(reports),
        "smooth_samples": [r.smooth_samples for r in reports],
        "rho": [r.rho_tag for r in reports],
        "sigma_ok": [r.sigma_tags_ok for r in reports],
        "quartic_degree_ok": [r.quartic_degree_ok for r in reports],
        "iota": [[r.iota_ok, r.iota_total] for r in reports],
        "iota_rho_to_sigma": [r.iota_rho_to_sigma for r in reports],
        "incidences_ok": [r.incidences_ok for r in reports],
        "quartic_points": [r.details["quartic_points"] for r in reports],
        "pairs_meeting_on_omega": [r.details["pairs_meeting_on_omega"] for r in reports],
    }
    checks = {f"seed{k}": r.ok for k, r in enumerate(reports)}
    return Outcome(computed, checks, _first_failure(checks))


def c21(cfg, F, rng) -> Outcome:
    from .wx_geometry import cubic

    certs, unique = [], []
    fields = []
    for _ in range(5):
        inp = cubic.random_input(F, rng)
        g = cubic.twisted_cubic(inp)
        certs.append(cubic.certify(inp, g).ok)
        unique.append(cubic.same_curve(g, cubic.twisted_cubic(inp, gauge=random.Random(rng.random()))))
        fields.append(str(cubic._field_of_rows([g.w0]) or F))
    errors = precondition_errors(F, rng)
    computed = {"inputs": 5, "certified": sum(certs), "unique": sum(unique), "fields": fields, "errors": errors}
    checks = {"certified": all(certs), "unique": all(unique),
              "errors": all(v == k for k, v in errors.items())}
    return Outcome(computed, checks, _first_failure(checks))


def precondition_errors(F: FieldDescriptor, rng) -> dict:
    """Named error raised for each kind of inadmissible input (expected name -> raised name)."""
    from .wx_geometry import cubic

    inp = cubic.random_input(F, rng)
    out = {}
    # e1 inside V4^d
    e = Matrix(F, [inp.d.v4]).kernel_basis()[0]
    out["HyperplaneContainsE1"] = _raised(replace(inp, line=cubic.LineData(e, (e, inp.line2.e1, inp.line.v3[2]))))
    # w outside V3
    out["NotOnLine"] = _raised(replace(inp, w=inp.w2))
    # ⟨d⟩ inside G(2,V5): the plane e0∧⟨e1, e2, e3⟩
    unit = [tuple(F(int(i == k)) for i in range(5)) for k in range(5)]
    alpha = cubic.ConicRecord(tuple(wedge2(unit[0], unit[k]) for k in (1, 2, 3)), inp.d.form)
    out["NotATauConic"] = _raised(replace(inp, d=alpha))
    out["DegenerateBisecant"] = _tangent_case(F, rng)
    return out


def _raised(inp) -> str:
    from .wx_geometry import cubic

    try:
        cubic.twisted_cubic(inp)
    except cubic.PreconditionError as exc:
        return type(exc).__name__
    return "none"


def _tangent_case(F: FieldDescriptor, rng, inputs: int = 20) -> str:
    """Scan w′ over P(V3′ ∩ V4^d) for a line ⟨w, w′⟩ tangent to Q_d and feed it back in."""
    from .wx_geometry import cubic
    from . import upoly

    for _ in range(inputs):
        inp = cubic.random_input(F, rng)
        v3 = list(inp.line2.v3)
        ker = Matrix(F, [[sum((a * b for a, b in zip(inp.d.v4, v)), F(0)) for v in v3]]).kernel_basis()
        basis = [tuple(sum((c * v[i] for c, v in zip(k, v3)), F(0)) for i in range(5)) for k in ker]
        cands = [basis[0]] + [tuple(a + s * b for a, b in zip(basis[1], basis[0])) for s in F.elements()]
        for w2 in cands:
            if span_rank(F, [w2] + list(inp.line.v3)) == 3:
                continue
            q = cubic.q_d_on_line(F, inp.d, inp.w, w2)
            if upoly.deg(q) == 2 and q[0] != 0 and q[1] * q[1] == 4 * q[0] * q[2]:
                return _raised(replace(inp, w2=w2))
    return "no tangent line found"


def _load_anchors() -> dict:
    text = resources.files("fano10").joinpath("data/claims.anchors").read_text(encoding="utf-8")
    out = {}
    for ln in text.splitlines():
        if ln.strip() and not ln.startswith("#"):
            cid, _, anchor = ln.partition("\t")
            out[cid.strip()] = anchor.strip()
    return out


ANCHORS = _load_anchors()


def _c(cid, title, deps, default, fields, expected, fn, min_p=0) -> ClaimDescriptor:
    return ClaimDescriptor(cid, title, ANCHORS[cid], tuple(deps), default, fields, expected, fn, min_p)


REGISTRY: dict[str, ClaimDescriptor] = {c.id: c for c in [
    _c("C01", "pencil rank profile", ["pencils"], "fp:97", ANY,
       {"pfaffian_gcd_trivial": (True, "PAPER"), "sampled_member_ranks": ([4], "PAPER")}, c01),
    _c("C02", "kernel conic", ["pencils"], "fp:97", ANY,
       {"coordinate_degrees": (2, "DERIVED"), "span_dim": (3, "PAPER"), "span_is_u3": (True, "PAPER")}, c02),
    _c("C03", "U3 uniqueness (F_5 brute force)", ["pencils"], "fp:5", ANY,
       {"isotropic_count": (1, "PAPER"), "matches_kernel_span": (True, "PAPER")}, c03),
    _c("C04", "V8 / sl2 model consistency", ["pencils", "multilinear"], "rational", ANY,
       {"dims": ({"u3": 3, "v8": 8, "L": 2, "summands": [1, 2, 3, 4]}, "PAPER"),
        "no_rank2_forms_in_L": (True, "PAPER")}, c04),
    _c("C05", "M_V4 dimension and reducibility law", ["wx_geometry"], "fp:97", ANY,
       {"dims": ([4], "PAPER"), "scan_agree": (True, "PAPER"), "scan_hyperplanes": (781, "TRIVIAL"),
        "scan_reducible": (6, "DERIVED")}, c05),
    _c("C06", "W degree and smoothness sampling", ["wx_geometry"], "fp:97", PRIME,
       {"section_degrees": ([5, 5, 5], "PAPER"), "jacobian_ranks": ([3], "DERIVED")}, c06),
    _c("C07", "κ round trip", ["wx_geometry"], "fp:97", ANY,
       {"passed": ("= samples", "DERIVED"), "pi_indeterminate": (True, "TRIVIAL"),
        "gamma_quadrics": (8, "PAPER")}, c07),
    _c("C08", "plane incidences", ["wx_geometry"], "fp:97", ANY,
       {"tangency_kinds": ("double", "PAPER"), "pair_meet_dims": (1, "PAPER"), "pi_in_w": (True, "PAPER")}, c08),
    _c("C09", "conic classifier", ["wx_geometry"], "fp:97", ANY,
       {"correct_tags": ("= classified", "DERIVED"), "stable": (True, "DERIVED")}, c09),
    _c("C10", "Aut(W) dimension and complete symmetry", ["wx_geometry"], "rational", ANY,
       {"lie_algebra_dim": (8, "PAPER"), "group_dim": (8, "PAPER"), "complete_symmetry_dim": (4, "PAPER")}, c10),
    _c("C11", "eigen multiplicities and fold bound", ["multilinear", "wx_geometry"], "rational", ANY,
       {"sym2_dual": ([1, 4, 13, 12, 6], "PAPER"), "fold_bound": (20, "PAPER")}, c11),
    _c("C12", "rank(Id − Φ) = 18", ["multilinear", "wx_geometry"], "rational", ANY,
       {"rank_id_minus_phi": (18, "PAPER")}, c12),
    _c("C13", "quadric evaluation rank", ["wx_geometry"], "fp:97", ANY,
       {"evaluation_rank": (31, "DERIVED"), "h0_IW2": (5, "PAPER")}, c13),
    _c("C14", "BBW acyclicity suite", ["bbw"], "rational", ANY,
       {"Ω²(-3)": ([0, 0, 0, 0, 0, 5, 0], "PAPER"), "Ω¹(-5)": ([0, 0, 0, 0, 0, 0, 24], "DERIVED"),
        "O(1)": ([10, 0, 0, 0, 0, 0, 0], "TRIVIAL"), "O(-5)": ([0, 0, 0, 0, 0, 0, 1], "TRIVIAL")}, c14),
    _c("C15", "cohomology ledger", ["bbw", "pencils"], "rational", ANY,
       {"Om1W(-2)": ([0, 0, 0, 2, 0], "PAPER"), "Om2W(-1)": ([0, 0, 0, 2, 0], "PAPER"),
        "Om1W(-3)_H3": (0, "PAPER"), "Om2G(-1)|W": ([0, 0, 0, 5, 0], "PAPER"),
        "consumed_rank_facts": (["psi", "sl_action"], "DERIVED")}, c15),
    _c("C16", "ψ rank and sl-action rank", ["pencils", "multilinear"], "rational", ANY,
       {"psi_rank": (3, "PAPER"), "psi_image_is_u3": (True, "PAPER"), "sl_action_rank": (16, "DERIVED")}, c16),
    _c("C17", "Riemann–Roch suite", ["chow"], "rational", ANY,
       {"chi_end_E": (-1, "PAPER"), "chi_hom_K3": (2, "PAPER"), "chi_E_c2_4": (5, "DERIVED"),
        "chi_E_c2_5": (4, "DERIVED"), "chi_torsion": ("k", "TRIVIAL"), "integrality_mismatches": (0, "DERIVED")}, c17),
    _c("C18", "divisor ledgers and del Pezzo residuals", ["chow"], "rational", ANY,
       {"conic": ("-3ε*K_X-4E", "PAPER"), "line": ("-2ε*K_X-3E", "PAPER"), "sigma_degree": (0, "PAPER"),
        "sextic_image_degree": (2, "PAPER"), "residual_degrees": ([6, 6], "PAPER")}, c18),
    _c("C19", "dimension counts", ["chow", "wx_geometry"], "fp:97", ANY,
       {"moduli": (22, "PAPER"), "period_image": (20, "PAPER"), "quadric_bound": (25, "PAPER"),
        "fixed_excess": (13, "DERIVED")}, c19),
    _c("C20", "X-geometry suite", ["wx_geometry"], "fp:97", PRIME,
       {"rho": ("rho", "PAPER"), "iota": ("all certified", "PAPER"), "meets_cx": (2, "PAPER")}, c20, 31),
    _c("C21", "twisted-cubic parametrization", ["wx_geometry"], "fp:97", PRIME,
       {"certified": (5, "PAPER"), "unique": (5, "PAPER")}, c21),
]}


def list_claims() -> list[ClaimDescriptor]:
    return [REGISTRY[k] for k in sorted(REGISTRY)]


def resolve(ids: Sequence[str] | str) -> list[str]:
    if ids == "all" or ids == ["all"]:
        return sorted(REGISTRY)
    out = []
    for cid in ids:
        key = cid.upper()
        if key not in REGISTRY:
            raise UnknownClaim(cid)
        out.append(key)
    return sorted(set(out))


def run_claim(cid: str, cfg: Config) -> VerificationReport:
    desc = REGISTRY[cid]
    F = cfg.field if cfg.field is not None else FieldDescriptor.parse(desc.default_field)
    expected = {k: jsonable(v) for k, (v, _) in desc.expected.items()}
    provenance = {k: tag for k, (_, tag) in desc.expected.items()}
    reason = None
    if F.kind not in desc.fields:
        reason = f"claim needs a field of kind {sorted(desc.fields)}"
    elif F.is_finite and F.characteristic < desc.min_p:
        reason = f"claim needs characteristic >= {desc.min_p}"
    if reason is not None:
        return VerificationReport(cid, "skipped", {}, expected, provenance, cfg.seed, str(F), (), None, reason)
    rng = claim_rng(cfg.seed, cid)
    start = time.perf_counter()
    try:
        out = desc.run(cfg, F, rng)
    except Exception as exc:  # a crash is a failed claim with the error as witness
        millis = round(1000 * (time.perf_counter() - start)) if cfg.timings else None
        return VerificationReport(cid, "fail", {}, expected, provenance, cfg.seed, str(F), (), millis,
                                  f"{type(exc).__name__}: {exc}")
    millis = round(1000 * (time.perf_counter() - start)) if cfg.timings else None
    ok = bool(out.checks) and all(out.checks.values())
    witness = out.witness if not ok else None
    if not ok and witness is None:
        witness = _first_failure(out.checks) or "no checks ran"
    computed = jsonable(out.computed)
    return VerificationReport(cid, "pass" if ok else "fail", computed, expected, provenance, cfg.seed, str(F),
                              tuple(out.consumed), millis, witness)


def _run_one(args):
    cid, cfg = args
    return run_claim(cid, cfg)


def run(ids: Sequence[str] | str, cfg: Config, jobs: int = 1) -> tuple[list[VerificationReport], int]:
    """Evaluate the selected claims; exit status 0 iff every one passes (skips count as failures)."""
    keys = resolve(ids)
    if jobs > 1 and len(keys) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_run_one, [(k, cfg) for k in keys]))
    else:
        reports = [run_claim(k, cfg) for k in keys]
    reports.sort(key=lambda r: r.id)
    status = 0 if all(r.status == "pass" for r in reports) else 1
    return reports, status


def report_json(reports: Sequence[VerificationReport], cfg: Config) -> str:
    payload = {"version": REPORT_VERSION, "config": cfg.as_json(), "reports": [r.as_json() for r in reports]}
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"
