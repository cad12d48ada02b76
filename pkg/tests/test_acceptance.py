"""One test per acceptance criterion; each prints a PASS/FAIL line with its wall time."""

import contextlib
import random
import time

import pytest

from fano10 import bbw, chow, claims, pencils
from fano10.scalars import QQ, FieldDescriptor, spans_equal
from fano10.wx_geometry import aut, build_w_model, core, planes
from fano10.wx_geometry.kappa import kappa_roundtrip

F5 = FieldDescriptor.prime(5)
F97 = FieldDescriptor.prime(97)


@contextlib.contextmanager
def criterion(capsys, number: int, title: str, budget: float | None = None):
    start = time.perf_counter()
    status = "FAIL"
    try:
        yield
        elapsed = time.perf_counter() - start
        if budget is not None:
            assert elapsed < budget, f"took {elapsed:.1f} s, budget {budget} s"
        status = "PASS"
    finally:
        elapsed = time.perf_counter() - start
        with capsys.disabled():
            limit = "" if budget is None else f" (limit {budget:g} s)"
            print(f"\n[acceptance {number:2d}] {status}  {title}  {elapsed:.2f} s{limit}")


def test_01_eigen_multiplicities(capsys):
    with criterion(capsys, 1, "eigen multiplicities (1,4,13,12,6), fold bound 20", 1.0):
        rep = aut.eigen_multiplicities(build_w_model(QQ))
        assert rep.sym2_dual == (1, 4, 13, 12, 6)
        assert rep.fold_bound == 20


def test_02_rank_id_minus_phi(capsys):
    with criterion(capsys, 2, "rank(Id - Phi) = 18 over Q", 5.0):
        assert aut.id_minus_phi_rank(build_w_model(QQ)) == 18


def test_03_aut_and_dimension_counts(capsys):
    with criterion(capsys, 3, "dim Aut(W) = 8, complete symmetry 4, h0(I_W(2)) = 5, 22/20/25<29/13>7"):
        W = build_w_model(QQ)
        _, lie = aut.lie_algebra_dim(W)
        cs, is_sym3 = aut.complete_symmetry_dim(W)
        assert lie == 8 and cs == 4 and is_sym3
        ev = core.quadric_evaluation_rank(build_w_model(F97), random.Random(0), 60)
        assert ev == 31
        counts = chow.dimension_counts(36 - ev, lie, aut.id_minus_phi_rank(W))
        assert (counts["linear_system"], counts["moduli"], counts["period_image"]) == (30, 22, 20)
        assert counts["quadric_bound"] == 25 and counts["quadric_bound_ok"]
        assert counts["fixed_excess"] == 13 and counts["fixed_excess_ok"]


def test_04_bbw_suite(capsys):
    with criterion(capsys, 4, "BBW acyclicity suite and calibrations", 1.0):
        by = {e.label: e for e in bbw.acyclicity_suite()}
        for r in range(1, 5):
            assert by[f"Ω¹(-{r})"].dims == (0,) * 7
        assert by["Ω²(-1)"].dims == by["Ω²(-2)"].dims == (0,) * 7
        assert by["Ω²(-3)"].dims == (0, 0, 0, 0, 0, 5, 0)
        assert by["Ω¹(-5)"].dims == (0, 0, 0, 0, 0, 0, 24)
        assert by["O(1)"].dims[0] == 10 and by["O(-5)"].dims[6] == 1


def test_05_cohomology_ledger(capsys):
    with criterion(capsys, 5, "cohomology ledger targets with exactly two rank facts"):
        m = pencils.standard_model(QQ)
        facts = {"psi_rank": pencils.psi_rank(m)[0], "sl_action_rank": pencils.sl_action_rank(m),
                 "wedge_LL_rank": claims.wedge_ll_rank(QQ)}
        assert facts["psi_rank"] == 3 and facts["sl_action_rank"] == 16
        led = bbw.load_ledger("cogr")
        sol = bbw.solve_ledger(led, facts)
        assert sol.dims("Om1W(-2)", 4) == [0, 0, 0, 2, 0]
        assert sol.dims("Om2W(-1)", 4) == [0, 0, 0, 2, 0]
        assert sol.values[("Om1W(-3)", 3)].value == 0
        assert sol.dims("Om2G(-1)|W", 4) == [0, 0, 0, 5, 0]
        consumed = sol.consumed(led.targets)
        assert sorted(n for n in consumed if sol.fact_categories[n] == "rank") == ["psi", "sl_action"]


def test_06_riemann_roch(capsys):
    with criterion(capsys, 6, "Riemann-Roch numbers and integrality sweep", 1.0):
        X10, K3 = chow.X10, chow.K3
        assert chow.hrr_euler(X10, chow.end_bundle(2, 1, 5)) == -1
        assert chow.hrr_euler(K3, chow.SheafChernData(4, 0, 6)) == 2
        assert chow.hrr_euler(X10, chow.SheafChernData(2, 1, 4)) == 5
        assert chow.hrr_euler(X10, chow.SheafChernData(2, 1, 5)) == 4
        assert all(chow.torsion_euler(k) == k for k in range(-5, 6))
        for r in (1, 2, 3):
            for c1 in range(-3, 4):
                for c2 in range(-12, 13):
                    for c3 in range(-3, 4):
                        integral = chow.hrr_euler_exact(X10, chow.SheafChernData(r, c1, c2, c3)).denominator == 1
                        assert integral == chow.x10_integrality_lattice(c1, c2, c3)
                    chow.hrr_euler(K3, chow.SheafChernData(r, c1, c2))


def test_07_divisor_ledgers(capsys):
    with criterion(capsys, 7, "divisor ledgers, sigma degree, sextic image, del Pezzo residuals"):
        conic = chow.transform_ledger("conic")
        assert conic.display == "-3ε*K_X-4E"
        assert conic.degrees["line_meeting_c"] == -1 and conic.degrees["iota_c"] == -2
        assert chow.transform_ledger("line").display == "-2ε*K_X-3E"
        assert chow.sigma_system_degree() == 0
        assert chow.sextic_image_degree(6, 4) == 2
        dp = chow.delpezzo_residuals()
        assert chow.format_lattice_class(dp["residual_lines"]) == "4h-2E2-2E3-2E4"
        assert chow.format_lattice_class(dp["residual_conics"]) == "2h"
        assert dp["degree_lines"] == dp["degree_conics"] == 6


def test_08_pencil_suite(capsys):
    with criterion(capsys, 8, "pencil suite, U3 uniqueness over F_5, M_V4 dims and F_5 scan", 60.0):
        m = pencils.standard_model(QQ)
        assert pencils.rank_profile(m.pencil)
        kc = pencils.kernel_conic(m.pencil)
        assert max(pencils.conic_coordinate_degrees(kc)) == 2
        assert len(kc.span()) == 3 and spans_equal(QQ, kc.span(), list(m.u3))
        m5 = pencils.standard_model(F5)
        cert = pencils.enumerate_isotropic(m5.pencil, 5, list(m5.u3))
        assert cert["isotropic_count"] == 1 and cert["matches_kernel_span"]
        W = build_w_model(F97)
        rng = random.Random(8)
        for _ in range(50):
            f = core.random_vector(F97, rng, 5)
            ms = planes.m_space(W, f)
            assert len(ms.basis) == 4 and ms.reducible == planes.contains_u3(W, f)
        scan = planes.reducibility_scan(build_w_model(F5))
        assert scan.hyperplanes == 781 and scan.agree


def test_09_kappa_degree_incidences(capsys):
    with criterion(capsys, 9, "kappa round trip x100, degree 5, plane incidences x10", 60.0):
        W = build_w_model(F97)
        rng = random.Random(9)
        rep = kappa_roundtrip(W, rng, 100)
        assert rep.ok and rep.passed == 100
        cert = core.linear_section_degree(W, rng)
        assert cert.ok and cert.total == 5
        inc = planes.plane_incidences(W, rng, 10)
        assert inc.ok and len(inc.tangencies) == 10


def test_10_x_geometry(capsys):
    with criterion(capsys, 10, "X-geometry over F_97, three Ω seeds", 300.0):
        r = claims.run_claim("C20", claims.Config(field=F97))
        assert r.status == "pass", r.witness
        c = r.computed
        assert c["seeds"] >= 3
        assert all(n >= 200 for n in c["smooth_samples"])
        assert all(t == "rho" for t in c["rho"]) and all(c["sigma_ok"]) and all(c["quartic_degree_ok"])
        assert all(ok == total and total >= 10 for ok, total in c["iota"])
        assert all(c["iota_rho_to_sigma"]) and all(c["incidences_ok"])


def test_11_twisted_cubic(capsys):
    with criterion(capsys, 11, "twisted-cubic parametrization and precondition errors", 30.0):
        r = claims.run_claim("C21", claims.Config(field=F97))
        assert r.status == "pass", r.witness
        assert r.computed["certified"] == r.computed["unique"] == r.computed["inputs"] >= 5
        assert all(k == v for k, v in r.computed["errors"].items())


def test_12_determinism(capsys):
    with criterion(capsys, 12, "verify all --seed 1 twice gives byte-identical JSON"):
        cfg = claims.Config(seed=1)
        a = claims.report_json(claims.run("all", cfg, jobs=1)[0], cfg)
        b = claims.report_json(claims.run("all", cfg, jobs=4)[0], cfg)
        assert a == b
