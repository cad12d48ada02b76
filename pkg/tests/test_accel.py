import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from fano10 import _accel
from fano10.pencils import standard_model
from fano10.scalars import FieldDescriptor, Matrix

needs_numba = pytest.mark.skipif(not _accel.HAVE_NUMBA, reason="numba not installed")
PRIMES = st.sampled_from([5, 7, 31, 97, 101])


@st.composite
def residue_matrix(draw, max_rows=6, max_cols=7):
    p = draw(PRIMES)
    shape = (draw(st.integers(1, max_rows)), draw(st.integers(1, max_cols)))
    return draw(arrays(np.int64, shape, elements=st.integers(0, p - 1))), p


@given(residue_matrix())
def test_rref_numpy_matches_exact(mp):
    m, p = mp
    F = FieldDescriptor.prime(p)
    r, piv = _accel._np_rref_mod(m, p)
    assert len(piv) == Matrix(F, m.tolist()).rank()
    exact = Matrix(F, m.tolist()).rref()[0]
    assert [[int(x) for x in row] for row in exact.rows[: len(piv)]] == r[: len(piv)].tolist()


@needs_numba
@given(residue_matrix())
def test_rref_backends_agree(mp):
    m, p = mp
    a, pa = _accel._np_rref_mod(m, p)
    b, pb = _accel._nb_rref_mod(m, p)
    assert np.array_equal(a, b) and np.array_equal(pa, pb)


@needs_numba
@given(PRIMES, st.integers(1, 4), st.integers(2, 6), st.data())
def test_eval_quadrics_backends_agree(p, k, n, data):
    q = data.draw(arrays(np.int64, (k, n, n), elements=st.integers(0, p - 1)))
    x = data.draw(arrays(np.int64, (8, n), elements=st.integers(0, p - 1)))
    assert np.array_equal(_accel._np_eval_quadrics(q, x, p), _accel._nb_eval_quadrics(q, x, p))


def test_projective_points_enumerates_each_point_once():
    pts = np.concatenate(list(_accel.projective_points(3, 5, chunk=7)))
    assert len(pts) == _accel.projective_point_count(3, 5) == 31
    assert len({tuple(r) for r in pts}) == 31
    assert all(r[np.nonzero(r)[0][0]] == 1 for r in pts)


@needs_numba
@settings(max_examples=15)
@given(st.sampled_from([5, 7]), st.integers(1, 2), st.data())
def test_zero_scan_backends_agree(p, k, data):
    q = data.draw(arrays(np.int64, (k, 4, 4), elements=st.integers(0, p - 1)))
    a = _accel._np_zero_scan(q, 4, p)
    b = _accel._nb_zero_scan(q, 4, p)
    assert sorted(map(tuple, a)) == sorted(map(tuple, b))


def _stdform_arrays(p):
    m = standard_model(FieldDescriptor.prime(p))
    a = np.array([[int(x) for x in r] for r in m.pencil.A.rows], dtype=np.int64)
    b = np.array([[int(x) for x in r] for r in m.pencil.B.rows], dtype=np.int64)
    return a, b


@needs_numba
@pytest.mark.parametrize("p", [5, 7])
def test_isotropic_backends_agree(p):
    a, b = _stdform_arrays(p)
    x = _accel._np_isotropic_subspaces(a, b, p)
    y = _accel._nb_isotropic_subspaces(a, b, p)
    assert np.array_equal(x, y) and len(x) == 1


def test_numba_disabled_by_env():
    code = "import fano10._accel as a; import fano10; print(a.BACKEND, a.HAVE_NUMBA)"
    env = dict(os.environ, FANO10_NO_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["numpy", "False"]


def test_fallback_runs_a_claim():
    code = ("from fano10 import claims; r = claims.run_claim('C03', claims.Config());"
            "print(r.status)")
    env = dict(os.environ, FANO10_NO_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "pass"
