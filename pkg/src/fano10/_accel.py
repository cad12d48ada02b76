"""Finite-field hot loops: numba kernels with pure-numpy fallbacks.

Set ``FANO10_NO_NUMBA=1`` to force the numpy implementations. Both variants
are always importable under the ``_np_*`` / ``_nb_*`` names so the benchmark
and the consistency tests can compare them directly.

All kernels work on int64 arrays of canonical residues in ``[0, p)``. Products
of two residues are reduced before accumulating, so ``p < 2**31`` is safe.
"""

from __future__ import annotations

import itertools
import os

import numpy as np

_DISABLED = os.environ.get("FANO10_NO_NUMBA", "").strip().lower() in ("1", "true", "yes", "on")

try:  # pragma: no cover - import guard
    if _DISABLED:
        raise ImportError
    import numba as nb

    _njit = nb.njit(cache=True, nogil=True)
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    nb = None
    HAVE_NUMBA = False

BACKEND = "numba" if HAVE_NUMBA else "numpy"


# ---------------------------------------------------------------------------
# row reduction


def _np_rref_mod(a: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    m = np.array(a, dtype=np.int64) % p
    nr, nc = m.shape
    pivots = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        inv = pow(int(m[r, c]), -1, p)
        m[r] = (m[r] * inv) % p
        f = m[:, c].copy()
        f[r] = 0
        rows = np.nonzero(f)[0]
        if rows.size:
            m[rows] = (m[rows] - (f[rows, None] * m[r][None, :]) % p) % p
        pivots.append(c)
        r += 1
    return m, np.array(pivots, dtype=np.int64)


def _inv_mod_scalar(x, p):
    # extended Euclid; usable inside numba
    a, b = x % p, p
    u0, u1 = 1, 0
    while b:
        q = a // b
        a, b = b, a - q * b
        u0, u1 = u1, u0 - q * u1
    return u0 % p


def _nb_rref_mod_impl(a, p):
    m = a.copy()
    nr, nc = m.shape
    for i in range(nr):
        for j in range(nc):
            m[i, j] %= p
    pivots = np.empty(min(nr, nc), dtype=np.int64)
    r = 0
    for c in range(nc):
        if r == nr:
            break
        piv = -1
        for i in range(r, nr):
            if m[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(nc):
                t = m[r, j]
                m[r, j] = m[piv, j]
                m[piv, j] = t
        inv = _inv_mod_nb(m[r, c], p)
        for j in range(nc):
            m[r, j] = (m[r, j] * inv) % p
        for i in range(nr):
            if i != r:
                f = m[i, c]
                if f != 0:
                    for j in range(nc):
                        m[i, j] = (m[i, j] - (f * m[r, j]) % p) % p
        pivots[r] = c
        r += 1
    return m, pivots[:r].copy()


# ---------------------------------------------------------------------------
# quadric evaluation


def _np_eval_quadrics(q: np.ndarray, x: np.ndarray, p: int) -> np.ndarray:
    """Values x^T Q_k x mod p; q has shape (k, n, n), x shape (m, n)."""
    q = np.asarray(q, dtype=np.int64) % p
    x = np.asarray(x, dtype=np.int64) % p
    out = np.zeros((x.shape[0], q.shape[0]), dtype=np.int64)
    for k in range(q.shape[0]):
        acc = np.zeros(x.shape[0], dtype=np.int64)
        for i in range(q.shape[1]):
            row = np.zeros(x.shape[0], dtype=np.int64)
            for j in range(q.shape[2]):
                if q[k, i, j]:
                    row = (row + (x[:, j] * q[k, i, j]) % p) % p
            acc = (acc + (row * x[:, i]) % p) % p
        out[:, k] = acc
    return out


def _nb_eval_quadrics_impl(q, x, p):
    m, n = x.shape
    k = q.shape[0]
    out = np.zeros((m, k), dtype=np.int64)
    for t in range(m):
        for s in range(k):
            acc = 0
            for i in range(n):
                xi = x[t, i]
                if xi == 0:
                    continue
                row = 0
                for j in range(n):
                    row = (row + q[s, i, j] * x[t, j]) % p
                acc = (acc + row * xi) % p
            out[t, s] = acc
    return out


# ---------------------------------------------------------------------------
# projective point enumeration


def projective_point_count(n: int, p: int) -> int:
    return (p**n - 1) // (p - 1)


def projective_points(n: int, p: int, chunk: int = 1 << 16):
    """Yield int64 blocks enumerating P^{n-1}(F_p), first nonzero entry equal to 1."""
    for lead in range(n):
        free = n - lead - 1
        total = p**free
        for start in range(0, total, chunk):
            idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
            block = np.zeros((idx.size, n), dtype=np.int64)
            block[:, lead] = 1
            rest = idx
            for j in range(n - 1, lead, -1):
                block[:, j] = rest % p
                rest = rest // p
            yield block


def _np_zero_scan(q: np.ndarray, n: int, p: int) -> np.ndarray:
    found = []
    for block in projective_points(n, p):
        vals = _np_eval_quadrics(q, block, p)
        mask = np.all(vals == 0, axis=1)
        if mask.any():
            found.append(block[mask])
    if not found:
        return np.zeros((0, n), dtype=np.int64)
    return np.concatenate(found)


def _nb_zero_scan_impl(q, n, p, capacity):
    out = np.zeros((capacity, n), dtype=np.int64)
    count = 0
    x = np.zeros(n, dtype=np.int64)
    k = q.shape[0]
    for lead in range(n):
        free = n - lead - 1
        total = 1
        for _ in range(free):
            total *= p
        for idx in range(total):
            for j in range(n):
                x[j] = 0
            x[lead] = 1
            rest = idx
            for j in range(n - 1, lead, -1):
                x[j] = rest % p
                rest //= p
            ok = True
            for s in range(k):
                acc = 0
                for i in range(n):
                    xi = x[i]
                    if xi == 0:
                        continue
                    row = 0
                    for j in range(n):
                        row = (row + q[s, i, j] * x[j]) % p
                    acc = (acc + row * xi) % p
                if acc != 0:
                    ok = False
                    break
            if ok:
                if count < capacity:
                    for j in range(n):
                        out[count, j] = x[j]
                count += 1
    return out, count


# ---------------------------------------------------------------------------
# common isotropic 3-spaces of two skew forms in dimension 5


def _rref_patterns(k: int, n: int) -> list[tuple[tuple[int, ...], list[tuple[int, int]]]]:
    pats = []
    for piv in itertools.combinations(range(n), k):
        free = [(r, c) for r in range(k) for c in range(piv[r] + 1, n) if c not in piv]
        pats.append((piv, free))
    return pats


def _np_isotropic_subspaces(a: np.ndarray, b: np.ndarray, p: int, k: int = 3) -> np.ndarray:
    """All k-dim subspaces (as rref bases) isotropic for both skew forms."""
    n = a.shape[0]
    a = np.asarray(a, dtype=np.int64) % p
    b = np.asarray(b, dtype=np.int64) % p
    hits = []
    for piv, free in _rref_patterns(k, n):
        f = len(free)
        total = p**f
        bases = np.zeros((total, k, n), dtype=np.int64)
        for r, c in enumerate(piv):
            bases[:, r, c] = 1
        rest = np.arange(total, dtype=np.int64)
        for r, c in free:
            bases[:, r, c] = rest % p
            rest = rest // p
        ok = np.ones(total, dtype=bool)
        for form in (a, b):
            img = np.einsum("tin,nm->tim", bases, form) % p
            for i in range(k):
                for j in range(i + 1, k):
                    vals = np.einsum("tm,tm->t", img[:, i, :], bases[:, j, :]) % p
                    ok &= vals == 0
        if ok.any():
            hits.append(bases[ok])
    if not hits:
        return np.zeros((0, k, n), dtype=np.int64)
    return np.concatenate(hits)


def _nb_isotropic_impl(a, b, p, pivs, free_r, free_c, free_off, k, capacity):
    n = a.shape[0]
    out = np.zeros((capacity, k, n), dtype=np.int64)
    count = 0
    basis = np.zeros((k, n), dtype=np.int64)
    for t in range(pivs.shape[0]):
        lo = free_off[t]
        hi = free_off[t + 1]
        f = hi - lo
        total = 1
        for _ in range(f):
            total *= p
        for idx in range(total):
            for r in range(k):
                for c in range(n):
                    basis[r, c] = 0
                basis[r, pivs[t, r]] = 1
            rest = idx
            for u in range(lo, hi):
                basis[free_r[u], free_c[u]] = rest % p
                rest //= p
            ok = True
            for form_id in range(2):
                if not ok:
                    break
                for i in range(k):
                    if not ok:
                        break
                    for j in range(i + 1, k):
                        acc = 0
                        for x in range(n):
                            bi = basis[i, x]
                            if bi == 0:
                                continue
                            row = 0
                            for y in range(n):
                                if form_id == 0:
                                    row = (row + a[x, y] * basis[j, y]) % p
                                else:
                                    row = (row + b[x, y] * basis[j, y]) % p
                            acc = (acc + bi * row) % p
                        if acc != 0:
                            ok = False
                            break
            if ok:
                if count < capacity:
                    for r in range(k):
                        for c in range(n):
                            out[count, r, c] = basis[r, c]
                count += 1
    return out, count


# ---------------------------------------------------------------------------
# dispatch

if HAVE_NUMBA:
    _inv_mod_nb = _njit(_inv_mod_scalar)
    _nb_rref_mod = _njit(_nb_rref_mod_impl)
    _nb_eval_quadrics_k = _njit(_nb_eval_quadrics_impl)
    _nb_zero_scan_k = _njit(_nb_zero_scan_impl)
    _nb_isotropic_k = _njit(_nb_isotropic_impl)
else:  # pragma: no cover
    _inv_mod_nb = _inv_mod_scalar


def _nb_eval_quadrics(q, x, p):
    return _nb_eval_quadrics_k(np.ascontiguousarray(q, dtype=np.int64) % p,
                               np.ascontiguousarray(x, dtype=np.int64) % p, p)


def _nb_zero_scan(q, n, p):
    q = np.ascontiguousarray(q, dtype=np.int64) % p
    capacity = 1 << 14
    while True:
        out, count = _nb_zero_scan_k(q, n, p, capacity)
        if count <= capacity:
            return out[:count].copy()
        capacity = count


def _nb_isotropic_subspaces(a, b, p, k=3):
    n = a.shape[0]
    pats = _rref_patterns(k, n)
    pivs = np.array([pv for pv, _ in pats], dtype=np.int64)
    free_r, free_c, off = [], [], [0]
    for _, free in pats:
        for r, c in free:
            free_r.append(r)
            free_c.append(c)
        off.append(len(free_r))
    args = (
        np.ascontiguousarray(a, dtype=np.int64) % p,
        np.ascontiguousarray(b, dtype=np.int64) % p,
        p,
        pivs,
        np.array(free_r, dtype=np.int64),
        np.array(free_c, dtype=np.int64),
        np.array(off, dtype=np.int64),
        k,
    )
    capacity = 64
    while True:
        out, count = _nb_isotropic_k(*args, capacity)
        if count <= capacity:
            return out[:count].copy()
        capacity = count


def rref_mod(a: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Reduced row-echelon form mod p and the pivot columns."""
    a = np.ascontiguousarray(a, dtype=np.int64)
    if HAVE_NUMBA:
        return _nb_rref_mod(a, p)
    return _np_rref_mod(a, p)


def eval_quadrics(q: np.ndarray, x: np.ndarray, p: int) -> np.ndarray:
    if HAVE_NUMBA:
        return _nb_eval_quadrics(q, x, p)
    return _np_eval_quadrics(q, x, p)


def zero_scan(q: np.ndarray, n: int, p: int) -> np.ndarray:
    """Every point of P^{n-1}(F_p) where all given quadrics vanish."""
    if HAVE_NUMBA:
        return _nb_zero_scan(q, n, p)
    return _np_zero_scan(q, n, p)


def isotropic_subspaces(a: np.ndarray, b: np.ndarray, p: int, k: int = 3) -> np.ndarray:
    if HAVE_NUMBA:
        return _nb_isotropic_subspaces(a, b, p, k)
    return _np_isotropic_subspaces(a, b, p, k)


def rank_mod(a: np.ndarray, p: int) -> int:
    return int(rref_mod(a, p)[1].size)
