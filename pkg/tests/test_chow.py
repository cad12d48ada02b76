import pytest
from hypothesis import given
from hypothesis import strategies as st

from fano10 import chow
from fano10.chow import K3, P1, W_MODEL, X10, CountMismatch, ModelInconsistency, SheafChernData, hrr_euler


def fano_index_one_hilbert(t: int, degree: int = 10) -> int:
    """χ(O_X(tH)) for a Fano threefold with -K = H: t(t+1)(2t+1)H³/12 + 2t + 1."""
    return t * (t + 1) * (2 * t + 1) * degree // 12 + 2 * t + 1


class TestModels:
    def test_x10(self):
        assert (X10.dim, X10.degree, X10.canonical, X10.c2, X10.chi_O) == (3, 10, -1, 24, 1)

    def test_k3(self):
        assert (K3.dim, K3.degree, K3.c1, K3.c2, K3.chi_O) == (2, 10, 0, 24, 2)

    def test_w(self):
        assert (W_MODEL.dim, W_MODEL.degree, W_MODEL.canonical) == (4, 5, -3)

    def test_derive_c2_rejects_non_integer(self):
        with pytest.raises(ModelInconsistency):
            chow.derive_c2(3, 10, 5, 1)

    def test_w_has_no_riemann_roch(self):
        with pytest.raises(ValueError):
            hrr_euler(W_MODEL, SheafChernData(1))


class TestRiemannRoch:
    def test_end_bundle(self):
        assert hrr_euler(X10, chow.end_bundle(2, 1, 5)) == -1

    def test_k3_hom_sheaf(self):
        assert hrr_euler(K3, SheafChernData(4, 0, 6)) == 2

    @pytest.mark.parametrize("c2,chi", [(4, 5), (5, 4)])
    def test_rank_two(self, c2, chi):
        assert hrr_euler(X10, SheafChernData(2, 1, c2, 0)) == chi

    @pytest.mark.parametrize("model", [X10, K3, P1])
    def test_structure_sheaf(self, model):
        assert hrr_euler(model, SheafChernData(1)) == model.chi_O

    @pytest.mark.parametrize("t", range(-4, 5))
    def test_line_bundles_on_x10(self, t):
        assert hrr_euler(X10, SheafChernData(1, t)) == fano_index_one_hilbert(t)

    @pytest.mark.parametrize("t", range(-3, 4))
    def test_line_bundles_on_k3(self, t):
        assert hrr_euler(K3, SheafChernData(1, t)) == 5 * t * t + 2

    @pytest.mark.parametrize("k,chi", [(0, 0), (1, 1), (-3, -3)])
    def test_torsion_examples(self, k, chi):
        assert chow.torsion_euler(k) == chi

    @given(st.integers(-50, 50))
    def test_torsion_linear(self, k):
        assert chow.torsion_euler(k) == k

    def test_x10_integrality_sweep(self):
        # integrality lattice on X10: c3 ≡ c2(c1+1) mod 2, at every rank
        for r in range(1, 4):
            for c1 in range(-3, 4):
                for c2 in range(-12, 13):
                    for c3 in range(-3, 4):
                        val = chow.hrr_euler_exact(X10, SheafChernData(r, c1, c2, c3))
                        assert (val.denominator == 1) == chow.x10_integrality_lattice(c1, c2, c3)

    @given(st.integers(1, 4), st.integers(-3, 3), st.integers(-12, 12))
    def test_k3_always_integral(self, r, c1, c2):
        hrr_euler(K3, SheafChernData(r, c1, c2))

    def test_non_integral_raises(self):
        with pytest.raises(ModelInconsistency):
            hrr_euler(X10, SheafChernData(1, 0, 1, 0))


@pytest.fixture(scope="module")
def ledgers():
    return chow.load_divisor_ledgers()


class TestDivisorLedgers:
    def test_conic(self, ledgers):
        t = chow.transform_ledger("conic", ledgers)
        assert t.coefficients == (-3, -4) and t.display == "-3ε*K_X-4E"
        assert t.degrees["line_meeting_c"] == -1 and t.degrees["iota_c"] == -2

    def test_line(self, ledgers):
        t = chow.transform_ledger("line", ledgers)
        assert t.coefficients == (-2, -3) and t.display == "-2ε*K_X-3E"

    def test_sigma_and_sextic(self, ledgers):
        assert chow.sigma_system_degree(ledgers) == 0
        assert chow.sextic_image_degree(6, 4) == 2

    @pytest.mark.parametrize("kind", ["conic", "line"])
    def test_half_anticanonical_symmetric(self, ledgers, kind):
        led = ledgers[kind]
        primed = led.normal_form(led.classes["half_anticanonical_primed"])
        assert primed == led.normal_form(led.classes["half_anticanonical"])

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            chow.transform_ledger("plane")

    def test_cyclic_rules(self):
        text = "ledger bad\ngenerators A B\nrule A = 1*B\nrule B = 2*A\n"
        with pytest.raises(chow.NonConfluent):
            chow.parse_divisor_ledgers(text)

    def test_duplicate_rule(self):
        text = "ledger bad\ngenerators A B C\nrule A = 1*B\nrule A = 1*C\n"
        with pytest.raises(chow.NonConfluent):
            chow.parse_divisor_ledgers(text)

    @given(st.dictionaries(st.sampled_from(["epsH", "epsK", "E", "Kt", "chiE", "Ep", "Ktp", "epsHp"]),
                           st.integers(-5, 5)))
    def test_normal_form_idempotent_and_linear(self, cls):
        led = chow.load_divisor_ledgers()["conic"]
        nf = led.normal_form(cls)
        assert set(nf) <= set(led.basis())
        assert led.normal_form(nf) == nf
        doubled = led.normal_form({g: 2 * c for g, c in cls.items()})
        assert doubled == {g: 2 * c for g, c in nf.items()}


class TestDelPezzo:
    def test_residuals(self):
        dp = chow.delpezzo_residuals()
        assert chow.format_lattice_class(dp["residual_lines"]) == "4h-2E2-2E3-2E4"
        assert chow.format_lattice_class(dp["residual_conics"]) == "2h"
        assert dp["degree_lines"] == dp["degree_conics"] == 6

    def test_lattice(self):
        lat = chow.PicLattice()
        mK = lat.anticanonical
        assert lat.dot(mK, mK) == 5
        for i in range(1, 5):
            e = tuple(int(j == i) for j in range(5))
            assert lat.dot(e, e) == -1 and lat.degree(e) == 1 and lat.genus(e) == 0

    def test_residual_genus(self):
        dp = chow.delpezzo_residuals()
        assert dp["genus_lines"] == 0 and dp["genus_conics"] == 0
        assert dp["pencil_self_intersections"] == (0, 0)


class TestDimensionCounts:
    def test_numbers(self):
        d = chow.dimension_counts(5, 8)
        assert (d["linear_system"], d["moduli"], d["period_image"], d["quadric_bound"]) == (30, 22, 20, 25)
        assert d["quadric_bound_ok"] and d["fixed_excess"] == 13 and d["fixed_excess_ok"]

    @pytest.mark.parametrize("kwargs,producer", [({"h0_IW2": 6, "aut_dim": 8}, "h0(I_W(2))"),
                                                 ({"h0_IW2": 5, "aut_dim": 9}, "dim Aut(W)"),
                                                 ({"h0_IW2": 5, "aut_dim": 8, "fixed_rank": 17}, "rank(Id-Phi)")])
    def test_mismatch_names_producer(self, kwargs, producer):
        with pytest.raises(CountMismatch) as exc:
            chow.dimension_counts(**kwargs)
        assert producer in exc.value.producer
