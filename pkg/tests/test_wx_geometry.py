import itertools
import random

import numpy as np
import pytest

from fano10 import _accel
from fano10.scalars import QQ, Matrix, span_rank, spans_equal
from fano10.wx_geometry import aut, conics, core, planes, threefold
from fano10.wx_geometry.kappa import gamma0_check, kappa, kappa_roundtrip
from fano10.wx_geometry.core import quad_value, random_vector, restrict_form, to_residues, wedge2

from conftest import F5, F97


def affine_points(W, basis):
    """F_p-points of W ∩ P(span(basis)) by brute force over P^3 (independent of the certificate)."""
    p = W.field.p
    forms = np.stack([to_residues(restrict_form(g, basis), p) for g in W.plucker_v8])
    return _accel._np_zero_scan(forms, len(basis), p)


class TestWModel:
    def test_pi_in_w(self, W97, WQ):
        for W in (W97, WQ):
            assert W.contains_span(list(W.pi_basis))

    def test_sampled_points_on_w(self, W97, rng):
        for _ in range(30):
            omega = core.sample_w_point(W97, rng)
            assert W97.contains(omega) and W97.on_grassmannian(omega) and W97.in_v8(omega)

    def test_random_decomposable_not_in_v8(self, W97, rng):
        omega = wedge2(random_vector(F97, rng, 5), random_vector(F97, rng, 5))
        assert W97.on_grassmannian(omega) and not W97.in_v8(omega)

    def test_coords_embed_roundtrip(self, W97, rng):
        y = tuple(random_vector(F97, rng, 8))
        assert W97.coords(W97.embed(y)) == y

    def test_lines_lie_in_w(self, W97, rng):
        a, b = core.w_line_through(W97, rng)
        assert W97.contains_span([a, b])

    def test_smooth_at_samples(self, W97, rng):
        for _ in range(40):
            y = W97.coords(core.sample_w_point(W97, rng))
            assert Matrix(F97, [g @ y for g in W97.plucker_v8]).rank() == 3

    def test_degree_five(self, W97, rng):
        for _ in range(3):
            cert = core.linear_section_degree(W97, rng)
            assert cert.ok and cert.total == 5

    def test_certificate_rational_points_match_scan(self, W97):
        rng = random.Random(3)
        for _ in range(4):
            while True:
                s = [random_vector(F97, rng, 8) for _ in range(4)]
                if Matrix(F97, s).rank() == 4:
                    break
            forms = [restrict_form(g, s) for g in W97.plucker_v8]
            cert = threefold.zero_dim_certificate(forms, rng, expected=5)
            pts = _accel._np_zero_scan(np.stack([to_residues(g, 97) for g in forms]), 4, 97)
            assert cert.rational_points == len(pts)

    def test_quadric_evaluation_rank(self, W97, rng):
        assert core.quadric_evaluation_rank(W97, rng, 60) == 31


class TestPlanes:
    def test_m_space_dims(self, W97, rng):
        for _ in range(20):
            f = random_vector(F97, rng, 5)
            ms = planes.m_space(W97, f)
            assert len(ms.basis) == 4 and ms.reducible == planes.contains_u3(W97, f)
            for v in ms.basis:
                assert all(x == 0 for x in core.contract(f, v))

    def test_generic_quadric_nondegenerate(self, W97, rng):
        f = random_vector(F97, rng, 5)
        assert planes.m_space(W97, f).qw.det() != 0

    def test_split_when_u3_in_v4(self, W97, rng):
        ms = planes.m_space(W97, planes.random_l_u(W97, rng))
        assert ms.reducible

    def test_f5_scan(self, W5):
        scan = planes.reducibility_scan(W5)
        # hyperplanes of F_5^5 and those containing U3, i.e. points of P(U3^⊥) = P^1(F_5)
        assert scan.hyperplanes == (5 ** 5 - 1) // 4 == 781
        assert scan.reducible == scan.in_l_u == 6 and scan.agree

    def test_incidences(self, W97, rng):
        rep = planes.plane_incidences(W97, rng, 10)
        assert rep.ok and rep.pi_in_w and rep.pi_v4_in_w
        assert all(t.kind == "double" for t in rep.tangencies)
        assert all(p.meet_dim == 1 and p.on_pi for p in rep.pairs)

    def test_zero_functional(self, W97):
        with pytest.raises(ValueError):
            planes.m_space(W97, (0, 0, 0, 0, 0))


class TestKappa:
    def test_roundtrip(self, W97, rng):
        rep = kappa_roundtrip(W97, rng, 50)
        assert rep.ok and rep.passed == 50

    def test_roundtrip_rational(self, WQ, rng):
        assert kappa_roundtrip(WQ, rng, 10).ok

    def test_pi_is_indeterminate(self, W97):
        with pytest.raises(core.Degenerate):
            kappa(W97, W97.pi_basis[1])

    def test_gamma0(self, W97, rng):
        rep = gamma0_check(W97, rng)
        assert rep.ok and rep.in_u4 and rep.system_dim == 8


class TestConics:
    def _form(self, F, rng):
        while True:
            m = Matrix(F, [[F.random(rng) for _ in range(3)] for _ in range(3)])
            m = m + m.T
            if m.rank() == 3:
                return m

    def test_tau(self, W97, rng):
        c = threefold.random_tau_conic(W97, rng)
        cl = conics.classify_conic(c, W97, rng)
        assert cl.tag == "tau" and spans_equal(F97, [cl.v4], [c.v4])

    def test_sigma(self, W97, rng):
        f = planes.random_l_u(W97, rng)
        c = conics.conic_from_plane(list(planes.pi_v4(W97, f)), self._form(F97, rng))
        cl = conics.classify_conic(c, W97, rng)
        assert cl.tag == "sigma" and spans_equal(F97, [cl.v4], [f])

    def test_rho(self, W97, rng):
        c = conics.conic_from_plane(list(W97.pi_basis), self._form(F97, rng))
        assert conics.classify_conic(c, W97, rng).tag == "rho"

    def test_stable_under_point_choice(self, W97, rng):
        c = threefold.random_tau_conic(W97, rng)
        tags = {(cl.tag, tuple(cl.v4)) for cl in (conics.classify_conic(c, W97, random.Random(k)) for k in range(4))}
        assert len(tags) == 1

    def test_plane_off_grassmannian_in_two_hyperplanes_rejected(self, W97, rng):
        # a plane of ∧²V5 whose span lies in no G(2,V4) is not a conic plane of any type
        while True:
            plane = [random_vector(F97, rng, 10) for _ in range(3)]
            if span_rank(F97, plane) == 3:
                break
        c = conics.conic_from_plane(plane, self._form(F97, rng))
        with pytest.raises(ValueError):
            conics.classify_conic(c, W97, rng)

    def test_zero_form_rejected(self, W97):
        with pytest.raises(ValueError):
            conics.conic_from_plane(list(W97.pi_basis), Matrix.zeros(F97, 3, 3))

    def test_same_conic_up_to_scalars(self, W97, rng):
        c = threefold.random_tau_conic(W97, rng)
        g = Matrix(F97, [[2, 1, 0], [0, 1, 0], [0, 0, 3]])
        plane = [tuple(sum((g[i, k] * c.plane[k][j] for k in range(3)), F97(0)) for j in range(10)) for i in range(3)]
        moved = conics.conic_from_plane(plane, (g @ c.form @ g.T).scale(5))
        assert conics.same_conic(c, moved)
        assert not conics.same_conic(c, conics.conic_from_plane(list(c.plane), self._form(F97, rng)))


class TestThreefold:
    def test_prescribed_conics_on_x(self, X97):
        assert len(X97.prescribed) == 5
        assert all(X97.contains_conic(c) for c in X97.prescribed)
        assert X97.smooth_samples >= 200

    def test_equations(self, X97):
        assert len(X97.equations()) == 6

    def test_rejects_small_field(self, W5):
        with pytest.raises(ValueError):
            threefold.build_X(W5, 0)

    def test_rational_membership_mode(self, WQ):
        X = threefold.build_X(WQ, 0)
        assert X.smooth_samples == 0 and all(X.contains_conic(c) for c in X.prescribed)

    def test_seeded(self, W97, X97):
        again = threefold.build_X(W97, 0)
        assert again.omega == X97.omega

    def test_rho_and_sigma_conics(self, X97, rng):
        W = X97.w
        cx = threefold.rho_conic(X97)
        assert X97.contains_conic(cx) and conics.classify_conic(cx, W, rng).tag == "rho"
        f = planes.random_l_u(W, rng)
        s = threefold.sigma_conic(X97, f)
        assert X97.contains_conic(s) and conics.classify_conic(s, W, rng).tag == "sigma"
        assert conics.intersection_length(s, cx).length == 2

    def test_iota_on_tau_conics(self, X97):
        for c in X97.prescribed[:2]:
            res = threefold.iota(X97, c)
            assert res.ok and X97.contains_conic(res.image)
            assert conics.same_conic(threefold.iota(X97, res.image, c.v4).image, c)

    def test_iota_exchanges_rho_and_sigma(self, X97, rng):
        f = planes.random_l_u(X97.w, rng)
        res = threefold.iota(X97, threefold.rho_conic(X97), f)
        assert res.ok and conics.same_conic(res.image, threefold.sigma_conic(X97, f))

    def test_quartic_points_split(self, X97, rng):
        c = X97.prescribed[0]
        q = threefold.elliptic_quartic(X97, c.v4, rng)
        assert q.in_x and q.degree_ok
        image = threefold.iota(X97, c, quartic=q).image
        on_c = [row for row in q.points if c.contains(q.ambient(F97, row))]
        on_image = [row for row in q.points if image.contains(q.ambient(F97, row))]
        both = sum(1 for row in q.points if c.contains(q.ambient(F97, row)) and image.contains(q.ambient(F97, row)))
        # smooth conics over F_p have p + 1 points; Γ¹ = c ∪ ι(c)
        assert len(on_c) == len(on_image) == 98
        assert len(q.points) == len(on_c) + len(on_image) - both
        assert all(X97.contains(q.ambient(F97, row)) for row in q.points)

    def test_quartic_needs_irreducible_q(self, X97, rng):
        with pytest.raises(ValueError):
            threefold.elliptic_quartic(X97, planes.random_l_u(X97.w, rng), rng)

    def test_sigma_incidences(self, X97, rng):
        rep = threefold.sigma_incidences(X97, rng)
        assert rep.ok and all(n == 2 for n in rep.meets_cx)
        assert rep.in_hyperplane

    def test_jacobian_rank(self, X97, rng):
        for y in threefold.sample_x_points(X97, rng, 20):
            assert threefold.jacobian_rank(X97, y) == 4


class TestAut:
    def test_lie_algebra(self, W97):
        assert aut.lie_algebra_dim(W97)[1] == 8

    def test_complete_symmetry(self, W97):
        assert aut.complete_symmetry_dim(W97) == (4, True)

    def test_suite(self, W97, rng):
        rep = aut.aut_suite(W97, rng, eval_points=60, with_rank=False)
        assert rep.ok and rep.group_dim == 8 and rep.h0_iw2 == 5

    def test_automorphisms_preserve_w(self, W97, rng):
        from fano10.multilinear import Atom, Wedge, induced_map
        from fano10.pencils import V5

        phi = aut.random_automorphism(W97, rng)
        w2 = induced_map(phi, Wedge(2, Atom(V5)))
        for _ in range(5):
            assert W97.contains(w2 @ core.sample_w_point(W97, rng))

    def test_eigen_routes_agree(self, W97):
        rep = aut.eigen_multiplicities(W97)
        chain = aut.eigen_chain_from_v5()
        assert rep.sym2_dual == chain["sym2_dual"] == (1, 4, 13, 12, 6)
        assert rep.fold_bound == chain["fold"][0] == 20


def test_rank_id_minus_phi(WQ):
    assert aut.id_minus_phi_rank(WQ) == 18
