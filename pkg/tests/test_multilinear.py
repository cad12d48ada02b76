import random
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fano10.multilinear import (
    Atom,
    BasedSpace,
    Dual,
    EigenSpec,
    MultiVector,
    Sym,
    Tensor,
    Wedge,
    eigen_spec_apply,
    fold_mod,
    induced_map,
    is_decomposable,
    max_fold,
    plucker_point,
    wedge_product,
)
from fano10.scalars import QQ, Matrix

from conftest import F97

V5 = BasedSpace(5, "V5")
V8 = BasedSpace(8, "V8")
PAPER_V8_SPEC = EigenSpec(((0, 1), (1, 4), (2, 3)))


def random_matrix(F, n, rnd):
    return Matrix(F, [[rnd.randrange(-3, 4) for _ in range(n)] for _ in range(n)])


def unit(i, n=5):
    return tuple(int(i == k) for k in range(n))


class TestFunctorDims:
    @given(st.integers(0, 7), st.integers(0, 4))
    def test_sym_and_wedge_dims(self, d, k):
        a = Atom(BasedSpace(d, "V"))
        assert Sym(k, a).dim == comb(d + k - 1, k) if d else Sym(k, a).dim == int(k == 0)
        assert Wedge(k, a).dim == comb(d, k)

    def test_tensor_and_dual(self):
        a = Atom(V5)
        assert Tensor(a, Dual(a)).dim == 25
        assert Sym(2, Dual(Atom(V8))).dim == 36


class TestInducedMap:
    def test_identity_wedge2(self):
        assert induced_map(Matrix.identity(QQ, 5), Wedge(2, Atom(V5))) == Matrix.identity(QQ, 10)

    def test_diagonal_sym2(self):
        m = induced_map(Matrix.diagonal(QQ, [2, 3]), Sym(2, Atom(BasedSpace(2, "U2"))))
        assert m == Matrix.diagonal(QQ, [4, 6, 9])

    @given(st.randoms(use_true_random=False))
    def test_functoriality_wedge2(self, rnd):
        f, g = random_matrix(QQ, 5, rnd), random_matrix(QQ, 5, rnd)
        w = Wedge(2, Atom(V5))
        assert induced_map(f @ g, w) == induced_map(f, w) @ induced_map(g, w)

    @given(st.randoms(use_true_random=False))
    def test_functoriality_sym2_dual(self, rnd):
        f, g = random_matrix(F97, 4, rnd), random_matrix(F97, 4, rnd)
        s = Sym(2, Dual(Atom(BasedSpace(4, "V4"))))
        if f.det() == 0 or g.det() == 0:
            return
        assert induced_map(f @ g, s) == induced_map(f, s) @ induced_map(g, s)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            induced_map(Matrix.identity(QQ, 4), Wedge(2, Atom(V5)))


class TestPlucker:
    def test_unit_vectors(self):
        p = plucker_point(unit(0), unit(1), QQ)
        assert p.coefficient((0, 1)) == 1 and sum(x != 0 for x in p.coords) == 1

    def test_bilinearity(self):
        p = plucker_point([1, 0, 1, 0, 0], unit(1), QQ)
        q = plucker_point(unit(0), unit(1), QQ) + plucker_point(unit(2), unit(1), QQ)
        assert p == q
        assert p.coefficient((1, 2)) == -1

    def test_minors_match_determinants(self):
        rnd = random.Random(3)
        for _ in range(10):
            u = [rnd.randrange(97) for _ in range(5)]
            v = [rnd.randrange(97) for _ in range(5)]
            p = plucker_point(u, v, F97)
            for i, j in Wedge(2, Atom(V5)).basis():
                assert p.coefficient((i, j)) == Matrix(F97, [[u[i], u[j]], [v[i], v[j]]]).det()

    def test_dependent_rejected(self):
        with pytest.raises(ValueError):
            plucker_point([1, 2, 3, 4, 5], [2, 4, 6, 8, 10], QQ)


class TestDecomposable:
    def test_simple(self):
        assert is_decomposable(plucker_point(unit(0), unit(1), QQ))

    def test_sum_of_two(self):
        w = plucker_point(unit(0), unit(1), QQ) + plucker_point(unit(2), unit(3), QQ)
        assert not is_decomposable(w)

    @given(st.lists(st.integers(-5, 5), min_size=10, max_size=10))
    def test_plucker_points_decomposable(self, xs):
        u, v = xs[:5], xs[5:]
        if Matrix(QQ, [u, v]).rank() < 2:
            return
        assert is_decomposable(plucker_point(u, v, QQ))

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            is_decomposable(MultiVector(Wedge(2, Atom(V5)), (QQ(0),) * 10))

    def test_wedge_is_graded_commutative(self):
        a = plucker_point(unit(0), unit(1), QQ)
        b = plucker_point(unit(2), unit(3), QQ)
        assert wedge_product(a, b) == wedge_product(b, a)


class TestEigenSpec:
    def test_dual(self):
        assert eigen_spec_apply(Dual(Atom(V8)), PAPER_V8_SPEC).items == ((-2, 3), (-1, 4), (0, 1))

    def test_sym2(self):
        out = eigen_spec_apply(Sym(2, Atom(V8)), PAPER_V8_SPEC)
        assert out.items == ((0, 1), (1, 4), (2, 13), (3, 12), (4, 6))

    def test_fold_by_one(self):
        spec = eigen_spec_apply(Sym(2, Atom(V8)), PAPER_V8_SPEC)
        assert fold_mod(spec, 1).items == ((0, 36),)

    def test_fold_by_two(self):
        spec = EigenSpec(((0, 1), (1, 4), (2, 13), (3, 12), (4, 6)))
        assert fold_mod(spec, 2).items == ((0, 20), (1, 16))

    def test_max_fold(self):
        spec = EigenSpec(((0, 1), (1, 4), (2, 13), (3, 12), (4, 6)))
        # brute force over n = 2..10
        best = max(fold_mod(spec, n).max_multiplicity() for n in range(2, 11))
        assert max_fold(spec)[0] == best == 20

    def test_invalid_spec(self):
        with pytest.raises(ValueError):
            EigenSpec(((1, 2), (0, 1)))
        with pytest.raises(ValueError):
            fold_mod(PAPER_V8_SPEC, 0)

    @given(st.lists(st.integers(-3, 3), min_size=1, max_size=6))
    def test_plethysm_consistency(self, exps):
        spec = EigenSpec.from_exponents(exps)
        a = Atom(BasedSpace(len(exps), "V"))
        sq = eigen_spec_apply(Tensor(a, a), spec).as_dict()
        s2 = eigen_spec_apply(Sym(2, a), spec).as_dict()
        w2 = eigen_spec_apply(Wedge(2, a), spec).as_dict()
        for k, v in w2.items():
            s2[k] = s2.get(k, 0) + v
        assert s2 == sq
        assert eigen_spec_apply(Sym(2, a), spec).dim == Sym(2, a).dim

    @given(st.lists(st.integers(-2, 2), min_size=2, max_size=4))
    def test_agrees_with_induced_diagonal_map(self, exps):
        # evaluate the formal ζ at 2 (exact over Q); eigenvalues 2^e on the diagonal
        n = len(exps)
        a = Atom(BasedSpace(n, "V"))
        diag = Matrix.diagonal(QQ, [QQ(2) ** e for e in exps])
        for functor in (Sym(2, a), Wedge(2, a), Dual(a), Sym(3, Dual(a))):
            m = induced_map(diag, functor)
            spec = eigen_spec_apply(functor, EigenSpec.from_exponents(exps))
            expected = sorted(QQ(2) ** e for e, mult in spec.items for _ in range(mult))
            assert sorted(m[i, i] for i in range(m.nrows)) == expected
            assert all(m[i, j] == 0 for i in range(m.nrows) for j in range(m.ncols) if i != j)
