import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fano10.scalars import (
    QQ,
    FieldDescriptor,
    FieldError,
    FieldMismatch,
    Matrix,
    intersect_spans,
    span_rank,
    spans_equal,
)

from conftest import F7, F97, F97_2


def brute_rank(m: Matrix) -> int:
    """Largest k with a nonzero k x k minor (cofactor expansion)."""

    def det(rows):
        if not rows:
            return m.field(1)
        total = m.field(0)
        for j, x in enumerate(rows[0]):
            if x != 0:
                minor = [r[:j] + r[j + 1:] for r in rows[1:]]
                total = total + (x if j % 2 == 0 else -x) * det(minor)
        return total

    for k in range(min(m.shape), 0, -1):
        for rows in itertools.combinations(range(m.nrows), k):
            for cols in itertools.combinations(range(m.ncols), k):
                if det([[m[i, j] for j in cols] for i in rows]) != 0:
                    return k
    return 0


def small_matrices(field, max_dim=5):
    entries = st.integers(-4, 4)
    return st.integers(1, max_dim).flatmap(
        lambda r: st.integers(1, max_dim).flatmap(
            lambda c: st.lists(st.lists(entries, min_size=c, max_size=c), min_size=r, max_size=r)
        )
    ).map(lambda rows: Matrix(field, rows))


class TestFieldDescriptor:
    def test_parse_round_trip(self):
        for text in ("rational", "fp:97", "fp2:97", "fp:5"):
            assert str(FieldDescriptor.parse(text)) == text

    @pytest.mark.parametrize("bad", ["fp:91", "fp:2", "fp:3", "fp:x", "gf:7", "fp2:4"])
    def test_invalid_fields_rejected(self, bad):
        with pytest.raises(FieldError):
            FieldDescriptor.parse(bad)

    def test_nonresidue_must_be_nonresidue(self):
        with pytest.raises(FieldError):
            FieldDescriptor("ext2", 7, 2)  # 2 = 3^2 mod 7

    def test_extension_contains_square_roots(self):
        for x in F97.elements():
            r = F97_2.sqrt(F97_2(x))
            assert r * r == F97_2(x)

    def test_mixed_fields_rejected(self):
        with pytest.raises(FieldMismatch):
            F7(3) + FieldDescriptor.prime(11)(3)

    def test_descend_from_extension(self):
        assert F97(F97_2(5)) == F97(5)
        with pytest.raises(FieldMismatch):
            F97(F97_2.generator())


class TestRref:
    def test_identity(self):
        r, rank, piv = Matrix.identity(QQ, 3).rref()
        assert r == Matrix.identity(QQ, 3) and rank == 3 and piv == [0, 1, 2]

    def test_zero(self):
        z = Matrix.zeros(QQ, 2, 5)
        r, rank, piv = z.rref()
        assert r == z and rank == 0 and piv == []

    def test_seeded_f7_against_minors(self):
        rng = random.Random(7)
        for _ in range(10):
            m = Matrix(F7, [[rng.randrange(7) for _ in range(5)] for _ in range(5)])
            assert m.rank() == brute_rank(m)

    @given(small_matrices(QQ))
    def test_rref_idempotent(self, m):
        r, rank, _ = m.rref()
        assert r.rref()[0] == r
        assert rank == r.rref()[1]

    @given(small_matrices(F7), st.randoms(use_true_random=False))
    def test_rank_invariant_under_row_permutation(self, m, rnd):
        rows = list(m.rows)
        rnd.shuffle(rows)
        assert Matrix(F7, rows, m.ncols).rank() == m.rank()

    @given(small_matrices(QQ))
    def test_rank_nullity(self, m):
        assert m.rank() + len(m.kernel_basis()) == m.ncols

    @given(small_matrices(QQ))
    def test_mod_p_rank_at_most_rational_rank(self, m):
        ints = [[int(x) for x in row] for row in m.rows]
        assert Matrix(F7, ints).rank() <= m.rank()

    def test_fraction_entries_stay_reduced(self):
        m = Matrix(QQ, [[Fraction(2, 4), Fraction(6, 8)], [1, 3]])
        assert m[0, 0] == Fraction(1, 2) and m[0, 0].denominator == 2


class TestKernelSolve:
    def test_identity_kernel_empty(self):
        assert Matrix.identity(QQ, 4).kernel_basis() == []

    def test_zero_kernel_standard_basis(self):
        ker = Matrix.zeros(QQ, 3, 3).kernel_basis()
        assert spans_equal(QQ, ker, Matrix.identity(QQ, 3).rows) and len(ker) == 3

    def test_rank4_skew_kernel(self):
        m = Matrix(QQ, [[0, 1, 2, 0, 1], [-1, 0, 0, 3, 0], [-2, 0, 0, 1, 1], [0, -3, -1, 0, 2], [-1, 0, -1, -2, 0]])
        assert m.T == m.scale(-1) and m.rank() == 4
        (v,) = m.kernel_basis()
        assert all(x == 0 for x in m @ v)

    @given(small_matrices(QQ))
    def test_kernel_vectors_annihilated_and_independent(self, m):
        ker = m.kernel_basis()
        assert all(all(x == 0 for x in m @ v) for v in ker)
        assert span_rank(QQ, ker) == len(ker)

    def test_solve_identity(self):
        b = (3, Fraction(1, 2), -1)
        assert Matrix.identity(QQ, 3).solve(b) == tuple(QQ(x) for x in b)

    def test_solve_inconsistent(self):
        assert Matrix.zeros(QQ, 2, 2).solve((1, 0)) is None

    def test_solve_dimension_mismatch(self):
        with pytest.raises(ValueError):
            Matrix.identity(QQ, 3).solve((1, 2))

    def test_seeded_full_rank_f97(self):
        rng = random.Random(97)
        while True:
            m = Matrix(F97, [[rng.randrange(97) for _ in range(6)] for _ in range(6)])
            if m.rank() == 6:
                break
        b = tuple(F97(rng.randrange(97)) for _ in range(6))
        x = m.solve(b)
        assert m @ x == b
        assert (m @ m.inverse()) == Matrix.identity(F97, 6)


def test_intersect_spans():
    a = [(1, 0, 0, 0), (0, 1, 0, 0)]
    b = [(0, 1, 0, 0), (0, 0, 1, 0)]
    (v,) = intersect_spans(QQ, a, b)
    assert spans_equal(QQ, [v], [(0, 1, 0, 0)])
