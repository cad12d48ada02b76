"""Time the finite-field kernels: numba against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--reps N]

Each kernel is run once untimed (JIT warm-up), then ``reps`` times; the best
wall time is reported together with a check that both outputs agree.
"""

import argparse
import time

import numpy as np

from fano10 import _accel
from fano10.pencils import standard_model
from fano10.scalars import FieldDescriptor
from fano10.wx_geometry import build_w_model
from fano10.wx_geometry.core import to_residues


def best_of(fn, reps):
    fn()
    times = []
    for _ in range(reps):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def same(a, b):
    if isinstance(a, tuple):
        return all(np.array_equal(x, y) for x, y in zip(a, b))
    return np.array_equal(a, b)


def cases(p=97):
    rng = np.random.default_rng(0)
    F = FieldDescriptor.prime(p)
    W = build_w_model(F)
    grams = np.stack([to_residues(g, p) for g in W.plucker_v8[:2]])
    section = grams[:, :4, :4]
    mat = rng.integers(0, p, size=(60, 80), dtype=np.int64)
    pts = rng.integers(0, p, size=(20000, 8), dtype=np.int64)
    m5 = standard_model(FieldDescriptor.prime(5))
    a = np.array([[int(x) for x in r] for r in m5.pencil.A.rows], dtype=np.int64)
    b = np.array([[int(x) for x in r] for r in m5.pencil.B.rows], dtype=np.int64)
    return [
        ("rref_mod 60x80", lambda: _accel._np_rref_mod(mat, p), lambda: _accel._nb_rref_mod(mat, p)),
        ("eval_quadrics 20000 pts", lambda: _accel._np_eval_quadrics(grams, pts, p),
         lambda: _accel._nb_eval_quadrics(grams, pts, p)),
        ("zero_scan P^3(F_97)", lambda: _accel._np_zero_scan(section, 4, p),
         lambda: _accel._nb_zero_scan(section, 4, p)),
        ("isotropic 3-spaces F_5", lambda: _accel._np_isotropic_subspaces(a, b, 5),
         lambda: _accel._nb_isotropic_subspaces(a, b, 5)),
    ]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--reps", type=int, default=3)
    args = ap.parse_args()
    if not _accel.HAVE_NUMBA:
        raise SystemExit("numba is unavailable (or FANO10_NO_NUMBA is set); nothing to compare")
    print(f"{'kernel':<26}{'numpy':>12}{'numba':>12}{'speedup':>10}  agree")
    for name, np_fn, nb_fn in cases():
        t_np, out_np = best_of(np_fn, args.reps)
        t_nb, out_nb = best_of(nb_fn, args.reps)
        print(f"{name:<26}{t_np * 1e3:>10.1f}ms{t_nb * 1e3:>10.1f}ms{t_np / t_nb:>9.1f}x  {same(out_np, out_nb)}")


if __name__ == "__main__":
    main()
