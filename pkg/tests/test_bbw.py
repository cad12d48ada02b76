import random
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fano10 import bbw
from fano10.bbw import HomogBundle, LedgerContradiction, LedgerError, bbw_cohomology
from fano10.claims import rank_facts

COGR = (bbw.DATA_DIR / "cogr.ledger").read_text(encoding="utf-8")


def g_hilbert(t: int) -> int:
    """χ(O_G(t)) for G(2,5): polynomial through the Plücker section counts."""
    return (t + 1) * (t + 2) ** 2 * (t + 3) ** 2 * (t + 4) // 144


class TestWeyl:
    @pytest.mark.parametrize("w,d", [((0,) * 5, 1), ((1, 0, 0, 0, 0), 5), ((1, 1, 0, 0, 0), 10),
                                     ((2, 0, 0, 0, 0), 15), ((1, 0, 0, 0, -1), 24)])
    def test_known(self, w, d):
        assert bbw.weyl_dim(w) == d

    def test_non_dominant(self):
        with pytest.raises(ValueError):
            bbw.weyl_dim((0, 1, 0, 0, 0))

    @given(st.lists(st.integers(-3, 3), min_size=5, max_size=5))
    def test_twist_invariance(self, w):
        w = sorted(w, reverse=True)
        assert bbw.weyl_dim(w) == bbw.weyl_dim([x + 2 for x in w])


class TestCohomology:
    def test_calibrations(self):
        assert bbw_cohomology(HomogBundle((0, 0), (0, 0, 0), 1)).dims() == [10, 0, 0, 0, 0, 0, 0]
        assert bbw_cohomology(HomogBundle((0, 0), (0, 0, 0), -5)).dims() == [0, 0, 0, 0, 0, 0, 1]
        assert bbw.omega_cohomology(2, -3) == [0, 0, 0, 0, 0, 5, 0]

    @pytest.mark.parametrize("t", range(0, 5))
    def test_line_bundles_match_hilbert_polynomial(self, t):
        assert bbw.omega_cohomology(0, t)[0] == g_hilbert(t)

    def test_negative_twists_are_serre_duals(self):
        for t in range(-9, -5):
            assert bbw.omega_cohomology(0, t)[6] == g_hilbert(-t - 5)
        for t in range(-4, 0):
            assert bbw.omega_cohomology(0, t) == [0] * 7

    @pytest.mark.parametrize("p", range(7))
    def test_cauchy_ranks(self, p):
        assert sum(b.rank for b in bbw.decompose_cotangent_power(p)) == comb(6, p)

    def test_cauchy_small_cases(self):
        assert bbw.decompose_cotangent_power(0, 3) == [HomogBundle((0, 0), (0, 0, 0), 3)]
        (om1,) = bbw.decompose_cotangent_power(1)
        assert om1.rank == 6
        assert sorted(b.rank for b in bbw.decompose_cotangent_power(2)) == [6, 9]

    @pytest.mark.parametrize("p", (-1, 7))
    def test_power_out_of_range(self, p):
        with pytest.raises(ValueError):
            bbw.decompose_cotangent_power(p)

    def test_suite(self):
        suite = bbw.acyclicity_suite()
        assert len(suite) == 10 and all(e.ok for e in suite)
        by = {e.label: e for e in suite}
        assert by["Ω¹(-5)"].dims == (0, 0, 0, 0, 0, 0, 24)

    def test_euler_char_of_top_forms(self):
        # Ω⁶ = O(-5): χ = 1; χ(Ω^p) = (-1)^p h^{p,p}, Betti numbers of G(2,5)
        hodge = [1, 1, 2, 2, 2, 1, 1]
        for p in range(7):
            assert bbw.euler_characteristic(bbw.omega_cohomology(p, 0)) == (-1) ** p * hodge[p]


weights2 = st.tuples(st.integers(-4, 4), st.integers(-4, 4)).map(lambda w: tuple(sorted(w, reverse=True)))
weights3 = st.tuples(st.integers(-4, 4), st.integers(-4, 4), st.integers(-4, 4)).map(
    lambda w: tuple(sorted(w, reverse=True)))


@given(weights2, weights3, st.integers(-8, 4))
def test_serre_duality_closure(lam, mu, t):
    b = HomogBundle(lam, mu, t)
    tb, td = bbw_cohomology(b), bbw_cohomology(b.serre_dual())
    assert tb.dims() == td.dims()[::-1]
    assert b.serre_dual().serre_dual() == b


@given(weights2, weights3, st.integers(-8, 4))
def test_single_nonzero_degree(lam, mu, t):
    tb = bbw_cohomology(HomogBundle(lam, mu, t))
    assert sum(1 for d in tb.dims() if d) <= 1
    if not tb.acyclic:
        assert tb.dim == bbw.weyl_dim(tb.weight)


def koszul_euler(t: int) -> int:
    return sum(c * bbw.euler_characteristic(bbw.omega_cohomology(0, t - k)) for k, c in enumerate((1, -2, 1)))


def test_koszul_euler_additivity(solved):
    # W spans P^7 and lies on exactly five Plücker quadrics
    assert [koszul_euler(t) for t in range(3)] == [1, 8, 36 - 5]
    # conormal sequence on W: χ(Ω¹_G|W(-2)) = χ(Ω¹_W(-2)) + 2χ(O_W(-3))
    restricted = sum(c * bbw.euler_characteristic(bbw.omega_cohomology(1, -2 - k))
                     for k, c in enumerate((1, -2, 1)))
    chi_w = bbw.euler_characteristic(solved.dims("Om1W(-2)", 4))
    assert restricted == chi_w + 2 * koszul_euler(-3)


@pytest.fixture(scope="module")
def solved():
    return bbw.solve_ledger(bbw.load_ledger("cogr"), rank_facts())


class TestLedger:
    def test_targets(self, solved):
        assert solved.dims("Om1W(-2)", 4) == [0, 0, 0, 2, 0]
        assert solved.dims("Om2W(-1)", 4) == [0, 0, 0, 2, 0]
        assert solved.dims("Om2G(-1)|W", 4) == [0, 0, 0, 5, 0]
        assert solved.values[("Om1W(-3)", 3)].value == 0

    def test_consumed_rank_facts(self, solved):
        led = bbw.load_ledger("cogr")
        consumed = solved.consumed(led.targets)
        assert sorted(n for n in consumed if solved.fact_categories[n] == "rank") == ["psi", "sl_action"]

    def test_omega2_restricted_uses_no_facts(self, solved):
        assert solved.consumed(["Om2G(-1)|W"]) == frozenset()

    def test_missing_fact(self):
        with pytest.raises(LedgerError, match="psi_rank"):
            bbw.solve_ledger(bbw.load_ledger("cogr"), {"sl_action_rank": 16, "wedge_LL_rank": 1})

    def test_wrong_fact_contradicts(self):
        facts = dict(rank_facts(), psi_rank=4)
        with pytest.raises(LedgerContradiction) as exc:
            bbw.solve_ledger(bbw.load_ledger("cogr"), facts)
        assert "filtration(-1)" in exc.value.segment or "psi" in str(exc.value)

    def test_contradiction_names_segment(self):
        text = "space P 1\nsheaf A on P = omega 0 0\nsheaf B on P = omega 0 1\nunknown C on P\n" \
               "ses bad on P : A -> A -> B\n"
        with pytest.raises(LedgerContradiction) as exc:
            bbw.solve_ledger(bbw.parse_ledger(text), {})
        assert exc.value.segment.startswith("bad")

    def test_malformed(self):
        with pytest.raises(LedgerError):
            bbw.parse_ledger("space G 6\nses x on G : A -> B\n")
        with pytest.raises(LedgerError):
            bbw.parse_ledger("space G 6\nfrobnicate\n")
        with pytest.raises(LedgerError, match="undeclared"):
            bbw.parse_ledger("space G 6\nunknown A on G\nses x on G : A -> A -> Z\n")

    @settings(max_examples=15)
    @given(st.randoms(use_true_random=False))
    def test_order_independence(self, rnd):
        lines = [ln for ln in COGR.splitlines() if ln.strip() and not ln.startswith("#")]
        head = [ln for ln in lines if ln.startswith("space")]
        rest = [ln for ln in lines if not ln.startswith("space")]
        rnd.shuffle(rest)
        facts = rank_facts()
        a = bbw.solve_ledger(bbw.parse_ledger(COGR), facts)
        b = bbw.solve_ledger(bbw.parse_ledger("\n".join(head + rest)), facts)
        assert {k: v.value for k, v in a.values.items()} == {k: v.value for k, v in b.values.items()}
        assert a.consumed(["Om1W(-2)", "Om2W(-1)"]) == b.consumed(["Om1W(-2)", "Om2W(-1)"])
