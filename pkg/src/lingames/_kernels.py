"""Hot inner loops, each in a numba flavour and a pure-numpy flavour.

The public entry points (:func:`completion_search`, :func:`power_iteration`)
dispatch on :data:`lingames._accel.USE_NUMBA` and skip the JIT for tiny
inputs.  The ``*_numba`` and
``*_numpy`` variants are importable directly so tests and the benchmark can
run both on the same input.

Integer kernels require ``d < 2**62`` so that ``k + r < 2 * d`` never
overflows int64; callers route larger moduli to pure-Python code.
"""

import numpy as np

from lingames._accel import USE_NUMBA, njit

INT64_SAFE_MODULUS = 1 << 62
# below this many inner-loop steps a cold JIT compile costs more than it saves
NUMBA_MIN_WORK = 1 << 16


# ---------------------------------------------------------------------------
# completion search: maximise satisfied entries over a product of row shifts
# ---------------------------------------------------------------------------

@njit
def _column_mode(vals, n):
    # multiplicity of the most common value, and the smallest such value
    best_cnt = 0
    best_val = 0
    for a in range(n):
        cnt = 0
        for b in range(n):
            if vals[b] == vals[a]:
                cnt += 1
        if cnt > best_cnt or (cnt == best_cnt and vals[a] < best_val):
            best_cnt = cnt
            best_val = vals[a]
    return best_cnt, best_val


@njit
def _completion_search_nb(k, d, cands, lens, dense):
    na, nb = k.shape
    idx = np.zeros(na, dtype=np.int64)
    best_idx = np.zeros(na, dtype=np.int64)
    r = np.zeros(na, dtype=np.int64)
    vals = np.zeros(na, dtype=np.int64)
    best = -1
    visited = 0
    full = na * nb
    while True:
        for i in range(na):
            if dense:
                r[i] = idx[i]
            else:
                r[i] = cands[i, idx[i]]
        total = 0
        for j in range(nb):
            for i in range(na):
                vals[i] = (2 * d - k[i, j] - r[i]) % d
            cnt, _ = _column_mode(vals, na)
            total += cnt
        visited += 1
        if total > best:
            best = total
            for i in range(na):
                best_idx[i] = idx[i]
            if best == full:
                break
        # odometer, last row fastest -> lexicographic order
        pos = na - 1
        while pos >= 0:
            idx[pos] += 1
            if idx[pos] < lens[pos]:
                break
            idx[pos] = 0
            pos -= 1
        if pos < 0:
            break
    return best, best_idx, visited


def _completion_search_np(k, d, cands, lens, dense, chunk=None):
    na, nb = k.shape
    lens = tuple(int(x) for x in lens)
    total_combos = 1
    for x in lens:
        total_combos *= x
    if chunk is None:
        chunk = max(1024, (1 << 21) // (na * na * nb))
    best = -1
    best_idx = np.zeros(na, dtype=np.int64)
    visited = 0
    full = na * nb
    for start in range(0, total_combos, chunk):
        flat = np.arange(start, min(start + chunk, total_combos), dtype=np.int64)
        digits = np.stack(np.unravel_index(flat, lens), axis=1).astype(np.int64)
        if dense:
            rows = digits
        else:
            rows = cands[np.arange(na)[None, :], digits]
        v = (-k[None, :, :] - rows[:, :, None]) % d
        mult = (v[:, :, None, :] == v[:, None, :, :]).sum(axis=2)
        totals = mult.max(axis=1).sum(axis=1)
        pos = int(np.argmax(totals))
        if totals[pos] > best:
            best = int(totals[pos])
            best_idx = digits[pos].copy()
        if best == full:
            visited += pos + 1
            break
        visited += flat.size
    return best, best_idx, visited


def _prepare(k, d, cands, lens, dense):
    k = np.ascontiguousarray(k, dtype=np.int64)
    if dense:
        na = k.shape[0]
        lens = np.array([1] + [d] * (na - 1), dtype=np.int64)
        cands = np.zeros((na, 1), dtype=np.int64)
    else:
        cands = np.ascontiguousarray(cands, dtype=np.int64)
        lens = np.ascontiguousarray(lens, dtype=np.int64)
    return k, np.int64(d), cands, lens


def completion_search_numba(k, d, cands=None, lens=None, dense=False):
    k, d, cands, lens = _prepare(k, d, cands, lens, dense)
    best, idx, visited = _completion_search_nb(k, d, cands, lens, bool(dense))
    return int(best), idx, int(visited)


def completion_search_numpy(k, d, cands=None, lens=None, dense=False, chunk=None):
    k, d, cands, lens = _prepare(k, d, cands, lens, dense)
    best, idx, visited = _completion_search_np(k, int(d), cands, lens, dense, chunk)
    return int(best), idx, int(visited)


def _completion_work(k, d, lens, dense):
    na, nb = np.shape(k)
    combos = d ** (na - 1) if dense else int(np.prod(np.asarray(lens, dtype=float)))
    return combos * na * nb


def completion_search(k, d, cands=None, lens=None, dense=False):
    """Search row-shift vectors in lexicographic order of candidate indices.

    Row ``i`` takes values ``cands[i, :lens[i]]`` (or ``0`` for row 0 and
    ``0..d-1`` for the others when ``dense``).  Each column is completed by
    the most common value of ``-(k_ij + r_i) mod d``.

    Returns ``(best_ones, best_index_vector, combos_visited)``; the index
    vector is the first one in lexicographic order reaching ``best_ones``.
    """
    if USE_NUMBA and _completion_work(k, d, lens, dense) >= NUMBA_MIN_WORK:
        return completion_search_numba(k, d, cands, lens, dense)
    return completion_search_numpy(k, d, cands, lens, dense)


# ---------------------------------------------------------------------------
# power iteration on a Hermitian positive semidefinite matrix
# ---------------------------------------------------------------------------

@njit
def _power_iteration_nb(b, v0, tol, max_iter):
    n = b.shape[0]
    v = v0.astype(np.complex128)
    nv = 0.0
    for i in range(n):
        nv += v[i].real ** 2 + v[i].imag ** 2
    nv = np.sqrt(nv)
    for i in range(n):
        v[i] = v[i] / nv
    w = np.zeros(n, dtype=np.complex128)
    mu = 0.0
    for it in range(max_iter):
        for i in range(n):
            acc = 0j
            for j in range(n):
                acc += b[i, j] * v[j]
            w[i] = acc
        mu = 0.0
        for i in range(n):
            mu += (v[i].conjugate() * w[i]).real
        res = 0.0
        nw = 0.0
        for i in range(n):
            e = w[i] - mu * v[i]
            res += e.real ** 2 + e.imag ** 2
            nw += w[i].real ** 2 + w[i].imag ** 2
        res = np.sqrt(res)
        nw = np.sqrt(nw)
        if res <= tol * np.sqrt(max(mu, 1.0)):
            return mu, it + 1, True
        if nw == 0.0:
            return 0.0, it + 1, True
        for i in range(n):
            v[i] = w[i] / nw
    return mu, max_iter, False


def power_iteration_numpy(b, v0, tol, max_iter):
    b = np.asarray(b, dtype=np.complex128)
    v = np.asarray(v0, dtype=np.complex128)
    v = v / np.linalg.norm(v)
    mu = 0.0
    for it in range(max_iter):
        w = b @ v
        mu = float(np.vdot(v, w).real)
        res = float(np.linalg.norm(w - mu * v))
        if res <= tol * np.sqrt(max(mu, 1.0)):
            return mu, it + 1, True
        nw = float(np.linalg.norm(w))
        if nw == 0.0:
            return 0.0, it + 1, True
        v = w / nw
    return mu, max_iter, False


def power_iteration_numba(b, v0, tol, max_iter):
    b = np.ascontiguousarray(b, dtype=np.complex128)
    v0 = np.ascontiguousarray(v0, dtype=np.complex128)
    mu, it, ok = _power_iteration_nb(b, v0, float(tol), int(max_iter))
    return float(mu), int(it), bool(ok)


def power_iteration(b, v0, tol, max_iter):
    """Dominant eigenvalue of Hermitian PSD ``b`` by power iteration.

    Stops once the residual ``|b v - mu v|`` drops below ``tol * sqrt(mu)``,
    which bounds the error of ``sqrt(mu)`` by ``tol``.  Returns
    ``(mu, iterations, converged)``.
    """
    if USE_NUMBA and np.shape(b)[0] ** 2 * 64 >= NUMBA_MIN_WORK:
        return power_iteration_numba(b, v0, tol, max_iter)
    return power_iteration_numpy(b, v0, tol, max_iter)
