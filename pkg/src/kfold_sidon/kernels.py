"""Hot loops: field power tables, dilate-difference collision scan, branch and bound.

The numba backend is used when numba imports and ``KFOLD_SIDON_NUMBA`` is not
set to ``0``/``false``/``off``. Otherwise every kernel runs as plain
numpy/Python code; results are identical between the two paths.

The flag is read once, at import time.
"""
import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

ENV_FLAG = "KFOLD_SIDON_NUMBA"

NUMBA_AVAILABLE = numba is not None
USE_NUMBA = NUMBA_AVAILABLE and os.environ.get(ENV_FLAG, "1").strip().lower() not in (
    "0",
    "false",
    "no",
    "off",
)
BACKEND = "numba" if USE_NUMBA else "numpy"


def _identity(fn):
    return fn


jit = numba.njit(cache=True) if USE_NUMBA else _identity


# ---------------------------------------------------------------------------
# Powers of a field element, as rows of coefficient vectors.
# step is the matrix of v -> theta*v, so row a+1 = step @ row a (mod p).


def power_table_numpy(step, seed, count, p):
    """Doubling: rows [n, 2n) come from rows [0, n) times step^n."""
    m = seed.shape[0]
    out = np.empty((count, m), dtype=np.int64)
    if count == 0:
        return out
    out[0] = seed
    filled = 1
    jump = step.astype(np.int64)
    while filled < count:
        n = min(filled, count - filled)
        out[filled : filled + n] = (out[:n] @ jump.T) % p
        jump = (jump @ jump) % p
        filled += n
    return out


@jit
def _power_table_loop(step, seed, count, p):
    m = seed.shape[0]
    out = np.empty((count, m), dtype=np.int64)
    cur = seed.copy()
    nxt = np.empty(m, dtype=np.int64)
    for a in range(count):
        for i in range(m):
            out[a, i] = cur[i]
        for i in range(m):
            s = 0
            for j in range(m):
                s += step[i, j] * cur[j]
            nxt[i] = s % p
        for i in range(m):
            cur[i] = nxt[i]
    return out


power_table = _power_table_loop if USE_NUMBA else power_table_numpy


# ---------------------------------------------------------------------------
# Dilate family: are the values c*(a-b), over coefficients c and pairs a != b,
# pairwise distinct and nonzero? Modular uses ordered pairs reduced mod n;
# interval uses a > b only (the negative half mirrors it).


def dilate_collides_numpy(elems, coeffs, n, modular):
    d = elems[:, None] - elems[None, :]
    if modular:
        d = d[~np.eye(elems.shape[0], dtype=bool)]
        vals = (coeffs[:, None] % n) * d[None, :] % n
        if np.any(vals == 0):
            return True
    else:
        d = d[d > 0]
        vals = coeffs[:, None] * d[None, :]
    vals = vals.ravel()
    return np.unique(vals).shape[0] != vals.shape[0]


_BITMAP_LIMIT = 1 << 22


@jit
def _dilate_collides_loop(elems, coeffs, n, modular):
    # values live in [0, n) or (0, max(c) n]; a presence bitmap beats sorting there
    s = elems.shape[0]
    k = coeffs.shape[0]
    top = n if modular else coeffs[k - 1] * n + 1
    bitmap = top <= _BITMAP_LIMIT
    seen = np.zeros(top if bitmap else 1, dtype=np.bool_)
    pairs = s * (s - 1) if modular else s * (s - 1) // 2
    vals = np.empty(0 if bitmap else k * pairs, dtype=np.int64)
    t = 0
    for ci in range(k):
        c = coeffs[ci] % n if modular else coeffs[ci]
        for i in range(s):
            for j in range(s):
                if modular:
                    if i == j:
                        continue
                    v = c * ((elems[i] - elems[j]) % n) % n
                    if v == 0:
                        return True
                else:
                    if elems[i] <= elems[j]:
                        continue
                    v = c * (elems[i] - elems[j])
                if bitmap:
                    if seen[v]:
                        return True
                    seen[v] = True
                else:
                    vals[t] = v
                    t += 1
    if bitmap:
        return False
    vals = np.sort(vals[:t])
    for i in range(1, t):
        if vals[i] == vals[i - 1]:
            return True
    return False


dilate_collides = _dilate_collides_loop if USE_NUMBA else dilate_collides_numpy


# ---------------------------------------------------------------------------
# Incremental search state.
#
# used[v] marks dilate values c*(a-b) already present. inset[v] marks members.
# Extra (non-dilate) equations are rows of eqs with eq_len active coefficients;
# eq_inv holds their inverses mod n (modular ambient only).


@jit
def _is_trivial(vals, cs, r):
    for i in range(r):
        s = 0
        for j in range(r):
            if vals[j] == vals[i]:
                s += cs[j]
        if s != 0:
            return False
    return True


@jit
def _equations_ok(cur, depth, x, inset, n, modular, eqs, eq_inv, eq_len):
    """Check every extra equation for a nontrivial solution that uses x."""
    members = np.empty(depth + 1, dtype=np.int64)
    for i in range(depth):
        members[i] = cur[i]
    members[depth] = x
    L = depth + 1
    vals = np.empty(4, dtype=np.int64)
    cs = np.empty(4, dtype=np.int64)
    free = np.empty(2, dtype=np.int64)
    for e in range(eqs.shape[0]):
        r = eq_len[e]
        for j in range(r):
            cs[j] = eqs[e, j]
        for P in range(r):
            Q = r - 1 if P != r - 1 else r - 2
            nfree = 0
            for j in range(r):
                if j != P and j != Q:
                    free[nfree] = j
                    nfree += 1
            combos = 1
            for _ in range(nfree):
                combos *= L
            for combo in range(combos):
                vals[P] = x
                rest = combo
                for f in range(nfree):
                    vals[free[f]] = members[rest % L]
                    rest //= L
                partial = 0
                for j in range(r):
                    if j != Q:
                        partial += cs[j] * vals[j]
                if modular:
                    vq = (-partial) % n * eq_inv[e, Q] % n
                else:
                    num = -partial
                    if num % cs[Q] != 0:
                        continue
                    vq = num // cs[Q]
                    if vq < 1 or vq > n:
                        continue
                if not inset[vq]:
                    continue
                vals[Q] = vq
                if not _is_trivial(vals, cs, r):
                    return False
    return True


@jit
def _try_add(cur, depth, x, used, inset, n, modular, coeffs, eqs, eq_inv, eq_len, marks):
    """Add x (larger than every member) if the family stays solution-free."""
    nm = 0
    ok = True
    for ci in range(coeffs.shape[0]):
        c = coeffs[ci]
        for i in range(depth):
            d = x - cur[i]
            if modular:
                v1 = c * d % n
                v2 = (n - v1) % n
                if v1 == 0 or v1 == v2 or used[v1] or used[v2]:
                    ok = False
                    break
                used[v1] = True
                marks[nm] = v1
                nm += 1
                used[v2] = True
                marks[nm] = v2
                nm += 1
            else:
                v = c * d
                if used[v]:
                    ok = False
                    break
                used[v] = True
                marks[nm] = v
                nm += 1
        if not ok:
            break
    if ok:
        inset[x] = True
        if eqs.shape[0] > 0 and not _equations_ok(cur, depth, x, inset, n, modular, eqs, eq_inv, eq_len):
            ok = False
            inset[x] = False
    if not ok:
        for i in range(nm):
            used[marks[i]] = False
    return ok


@jit
def _remove_last(cur, depth, used, inset, n, modular, coeffs):
    """Undo the add of cur[depth - 1]."""
    x = cur[depth - 1]
    for ci in range(coeffs.shape[0]):
        c = coeffs[ci]
        for i in range(depth - 1):
            d = x - cur[i]
            if modular:
                v1 = c * d % n
                used[v1] = False
                used[(n - v1) % n] = False
            else:
                used[c * d] = False
    inset[x] = False


def _state_sizes(n, modular, coeffs):
    if modular:
        return n, n
    return int(coeffs.max()) * n + 1, n + 1


@jit
def _greedy(n, modular, lo, hi, coeffs, eqs, eq_inv, eq_len, used, inset, cap):
    cur = np.zeros(max(cap, 1) + 1, dtype=np.int64)
    marks = np.empty(2 * coeffs.shape[0] * (cap + 1) + 2, dtype=np.int64)
    depth = 0
    for x in range(lo, hi + 1):
        if depth >= cap:
            break
        if _try_add(cur, depth, x, used, inset, n, modular, coeffs, eqs, eq_inv, eq_len, marks):
            cur[depth] = x
            depth += 1
    return cur[:depth].copy()


def greedy(n, modular, coeffs, eqs, eq_inv, eq_len, cap):
    lo, hi = (0, n - 1) if modular else (1, n)
    if n <= 0 or hi < lo:
        return np.zeros(0, dtype=np.int64)
    usize, isize = _state_sizes(n, modular, coeffs)
    used = np.zeros(usize, dtype=np.bool_)
    inset = np.zeros(isize, dtype=np.bool_)
    return _greedy(n, modular, lo, hi, coeffs, eqs, eq_inv, eq_len, used, inset, cap)


@jit
def _bb(n, modular, lo, hi, coeffs, eqs, eq_inv, eq_len, used, inset, cap, best, budget):
    """Depth-first search over increasing sequences with first element lo.

    Accepts only strictly larger sets than ``best``; the first set of each new
    size is the lexicographically smallest of that size.
    Returns (best, witness, nodes, complete).
    """
    cur = np.zeros(cap + 2, dtype=np.int64)
    nextc = np.zeros(cap + 2, dtype=np.int64)
    witness = np.zeros(cap + 1, dtype=np.int64)
    wlen = 0
    marks = np.empty(2 * coeffs.shape[0] * (cap + 2) + 2, dtype=np.int64)

    cur[0] = lo
    inset[lo] = True
    depth = 1
    nodes = 1
    if depth > best:
        best = depth
        witness[0] = lo
        wlen = 1
    nextc[1] = lo + 1
    complete = True
    while True:
        if best >= cap:
            break
        if nodes >= budget:
            complete = False
            break
        x = nextc[depth]
        if depth >= cap or x > hi or depth + (hi - x + 1) <= best:
            if depth == 1:
                break
            _remove_last(cur, depth, used, inset, n, modular, coeffs)
            depth -= 1
            continue
        nextc[depth] = x + 1
        if _try_add(cur, depth, x, used, inset, n, modular, coeffs, eqs, eq_inv, eq_len, marks):
            cur[depth] = x
            depth += 1
            nodes += 1
            nextc[depth] = x + 1
            if depth > best:
                best = depth
                for i in range(depth):
                    witness[i] = cur[i]
                wlen = depth
    return best, witness[:wlen].copy(), nodes, complete


def branch_and_bound(n, modular, coeffs, eqs, eq_inv, eq_len, cap, best, budget):
    lo, hi = (0, n - 1) if modular else (1, n)
    usize, isize = _state_sizes(n, modular, coeffs)
    used = np.zeros(usize, dtype=np.bool_)
    inset = np.zeros(isize, dtype=np.bool_)
    return _bb(n, modular, lo, hi, coeffs, eqs, eq_inv, eq_len, used, inset, cap, best, budget)
