"""Hot numeric kernels: identity scans, canonical forms, structure search.

Each public function dispatches on :func:`bolmag._accel.backend`.  The numba
path runs explicit loops compiled with ``@njit``; the fallback path is
vectorized numpy where the algorithm allows it, and the uncompiled Python
body of the same kernel where it is a backtracking search.

Tables are ``int64`` arrays; ``-1`` marks an undetermined cell during search.
"""

import itertools
import math

import numpy as np

from ._accel import backend, njit, python_version

# identity codes understood by first_failure
BOL = 0
ASSOC = 1
FLEX = 2
RALT = 3
LALT = 4
COMM = 5
LDIST = 6
RDIST = 7

ARITY = {BOL: 3, ASSOC: 3, FLEX: 2, RALT: 2, LALT: 2, COMM: 2, LDIST: 3, RDIST: 3}

# search target codes
TARGET_NONE = 0
TARGET_J_NOT_CLOSED = 1
TARGET_NOT_ALTERNATIVE = 2
TARGET_NOT_BOL = 3


def _sides(code, a, m, x, y, z):
    # works on scalars (numba) and on broadcast index arrays (numpy)
    if code == BOL:
        return m[m[m[x, y], z], y], m[x, m[m[y, z], y]]
    elif code == ASSOC:
        return m[m[x, y], z], m[x, m[y, z]]
    elif code == FLEX:
        return m[x, m[y, x]], m[m[x, y], x]
    elif code == RALT:
        return m[m[x, y], y], m[x, m[y, y]]
    elif code == LALT:
        return m[x, m[x, y]], m[m[x, x], y]
    elif code == COMM:
        return m[x, y], m[y, x]
    elif code == LDIST:
        return m[x, a[y, z]], a[m[x, y], m[x, z]]
    else:
        return m[a[x, y], z], a[m[x, z], m[y, z]]


_sides_nb = njit(_sides)


@njit
def _hit(out, x, y, z, lhs, rhs):
    out[0] = x
    out[1] = y
    out[2] = z
    out[3] = lhs
    out[4] = rhs
    return out


@njit
def _first_failure_nb(code, arity, a, m):
    # one loop nest per identity with the z-invariant products hoisted;
    # scan order is (x, y, z) row-major throughout, so the witness is the least
    n = m.shape[0]
    out = np.full(5, -1, np.int64)
    if code == BOL:
        w = np.empty((n, n), np.int64)
        for y in range(n):
            for z in range(n):
                w[y, z] = m[m[y, z], y]
        for x in range(n):
            for y in range(n):
                xy = m[x, y]
                for z in range(n):
                    lhs = m[m[xy, z], y]
                    rhs = m[x, w[y, z]]
                    if lhs != rhs:
                        return _hit(out, x, y, z, lhs, rhs)
    elif code == ASSOC:
        for x in range(n):
            for y in range(n):
                xy = m[x, y]
                for z in range(n):
                    lhs = m[xy, z]
                    rhs = m[x, m[y, z]]
                    if lhs != rhs:
                        return _hit(out, x, y, z, lhs, rhs)
    elif code == LDIST:
        for x in range(n):
            for y in range(n):
                xy = m[x, y]
                for z in range(n):
                    lhs = m[x, a[y, z]]
                    rhs = a[xy, m[x, z]]
                    if lhs != rhs:
                        return _hit(out, x, y, z, lhs, rhs)
    elif code == RDIST:
        for x in range(n):
            for y in range(n):
                s = a[x, y]
                for z in range(n):
                    lhs = m[s, z]
                    rhs = a[m[x, z], m[y, z]]
                    if lhs != rhs:
                        return _hit(out, x, y, z, lhs, rhs)
    else:
        for x in range(n):
            for y in range(n):
                lhs, rhs = _sides_nb(code, a, m, x, y, 0)
                if lhs != rhs:
                    return _hit(out, x, y, 0, lhs, rhs)
    return out


def _first_failure_np(code, arity, a, m):
    n = m.shape[0]
    ys = np.arange(n)[None, :, None]
    zs = np.arange(n)[None, None, :] if arity == 3 else np.zeros((1, 1, 1), np.int64)
    # bound the working set to a few million cells
    chunk = max(1, (1 << 22) // (n * n))
    for x0 in range(0, n, chunk):
        xs = np.arange(x0, min(n, x0 + chunk))[:, None, None]
        lhs, rhs = np.broadcast_arrays(*_sides(code, a, m, xs, ys, zs))
        bad = np.flatnonzero(lhs != rhs)
        if bad.size:
            i, y, z = np.unravel_index(bad[0], lhs.shape)
            return np.array([x0 + i, y, z, lhs[i, y, z], rhs[i, y, z]], np.int64)
    return np.full(5, -1, np.int64)


def first_failure(code, m, a=None):
    """Lexicographically least failing tuple of identity ``code``.

    Returns ``None`` when the identity holds, else ``(witness, lhs, rhs)``
    where ``witness`` has the identity's arity.
    """
    m = np.ascontiguousarray(m, dtype=np.int64)
    a = m if a is None else np.ascontiguousarray(a, dtype=np.int64)
    arity = ARITY[code]
    if backend() == "numba":
        res = _first_failure_nb(code, arity, a, m)
    else:
        res = _first_failure_np(code, arity, a, m)
    if res[0] < 0:
        return None
    return tuple(int(v) for v in res[:arity]), int(res[3]), int(res[4])


# ---------------------------------------------------------------- canonical form


@njit
def _canonical_nb(t, e):
    n = t.shape[0]
    best = np.full((n, n), n, np.int64)
    best_pi = np.zeros(n, np.int64)
    sigma = np.full(n, -1, np.int64)  # new label -> old element
    pi = np.full(n, -1, np.int64)  # old element -> new label
    sigma[0] = e
    pi[e] = 0
    if n == 1:
        best[0, 0] = 0
        return best, pi
    cand = np.full(n, -1, np.int64)  # per depth: last old element tried
    k = 1
    while k >= 1:
        if sigma[k] >= 0:
            pi[sigma[k]] = -1
            sigma[k] = -1
        nxt = cand[k] + 1
        while nxt < n and pi[nxt] >= 0:
            nxt += 1
        if nxt >= n:
            cand[k] = -1
            k -= 1
            continue
        cand[k] = nxt
        sigma[k] = nxt
        pi[nxt] = k
        # compare the row-major prefix that is already decided against best
        prune = False
        done = False
        for i in range(n):
            if done:
                break
            for j in range(n):
                if i > k or j > k:
                    done = True
                    break
                v = pi[t[sigma[i], sigma[j]]]
                if v < 0:
                    if k + 1 > best[i, j]:
                        prune = True
                    done = True
                    break
                if v < best[i, j]:
                    done = True
                    break
                if v > best[i, j]:
                    prune = True
                    done = True
                    break
        if prune:
            continue
        if k == n - 1:
            smaller = False
            decided = False
            for i in range(n):
                if decided:
                    break
                for j in range(n):
                    v = pi[t[sigma[i], sigma[j]]]
                    if v != best[i, j]:
                        smaller = v < best[i, j]
                        decided = True
                        break
            if smaller:
                for i in range(n):
                    best_pi[i] = pi[i]
                    for j in range(n):
                        best[i, j] = pi[t[sigma[i], sigma[j]]]
            continue
        k += 1
    return best, best_pi


def _canonical_np(t, e):
    n = t.shape[0]
    if n == 1:
        return np.zeros((1, 1), np.int64), np.zeros(1, np.int64)
    others = [x for x in range(n) if x != e]
    best = None
    best_pi = None
    perms = itertools.permutations(range(1, n))
    while True:
        block = np.array(list(itertools.islice(perms, 1 << 15)), dtype=np.int64)
        if block.size == 0:
            break
        pis = np.zeros((len(block), n), np.int64)
        pis[:, others] = block
        sig = np.argsort(pis, axis=1)
        rel = t[sig[:, :, None], sig[:, None, :]].reshape(len(pis), -1)
        rel = np.take_along_axis(pis, rel, axis=1)
        first = np.lexsort(rel.T[::-1])[0]
        if best is None or tuple(rel[first]) < tuple(best):
            best = rel[first]
            best_pi = pis[first]
    return best.reshape(n, n), best_pi


def canonical_labeling(t, e):
    """Least row-major relabeling of ``t`` with neutral ``e`` sent to 0.

    Returns ``(table, pi)`` where ``pi[old] = new``.
    """
    t = np.ascontiguousarray(t, dtype=np.int64)
    if backend() == "numba":
        return _canonical_nb(t, e)
    return _canonical_np(t, e)


# ---------------------------------------------------------------- magma search


@njit
def _bol_consistent(t, n):
    for x in range(n):
        for y in range(n):
            p1 = t[x, y]
            if p1 < 0:
                continue
            for z in range(n):
                p2 = t[p1, z]
                if p2 < 0:
                    continue
                lhs = t[p2, y]
                if lhs < 0:
                    continue
                q1 = t[y, z]
                if q1 < 0:
                    continue
                q2 = t[q1, y]
                if q2 < 0:
                    continue
                rhs = t[x, q2]
                if rhs >= 0 and lhs != rhs:
                    return False
    return True


@njit
def _triple_ok(t, x, y, z):
    # False only when all five products are known and the two sides differ
    p1 = t[x, y]
    if p1 < 0:
        return True
    p2 = t[p1, z]
    if p2 < 0:
        return True
    lhs = t[p2, y]
    if lhs < 0:
        return True
    q1 = t[y, z]
    if q1 < 0:
        return True
    q2 = t[q1, y]
    if q2 < 0:
        return True
    rhs = t[x, q2]
    return rhs < 0 or lhs == rhs


@njit
def _bol_consistent_at(t, n, r, c):
    """Check only the Bol triples that use cell (r, c) in one of their products.

    Every other fully determined triple was checked when its last cell was set.
    """
    for z in range(n):
        # x*y is the cell
        if not _triple_ok(t, r, c, z):
            return False
    for x in range(n):
        # y*z is the cell
        if not _triple_ok(t, x, r, c):
            return False
    for x in range(n):
        p1c = t[x, c]
        for y in range(n):
            # (x*y)*z with x*y = r, z = c
            if t[x, y] == r and not _triple_ok(t, x, y, c):
                return False
        if p1c >= 0:
            for z in range(n):
                # ((x*c)*z)*c with (x*c)*z = r
                if t[p1c, z] == r and not _triple_ok(t, x, c, z):
                    return False
    for z in range(n):
        # (c*z)*c with c*z = r
        if t[c, z] == r:
            for x in range(n):
                if not _triple_ok(t, x, c, z):
                    return False
    for y in range(n):
        for z in range(n):
            # x*((y*z)*y) with x = r and (y*z)*y = c
            q1 = t[y, z]
            if q1 >= 0 and t[q1, y] == c and not _triple_ok(t, r, y, z):
                return False
    return True


@njit
def _j_not_closed(t, e):
    n = t.shape[0]
    member = np.zeros(n, np.bool_)
    for a in range(n):
        for b in range(n):
            if t[a, b] == e and t[b, a] == e:
                member[a] = True
                break
    for a in range(n):
        if member[a]:
            for b in range(n):
                if member[b] and not member[t[a, b]]:
                    return True
    return False


@njit
def _is_canonical(t):
    best, _ = _canonical_nb(t, 0)
    n = t.shape[0]
    for i in range(n):
        for j in range(n):
            if best[i, j] != t[i, j]:
                return False
    return True


@njit
def _partial_not_canonical(t, n):
    """True if some relabeling fixing 0 beats ``t`` on its decided row-major prefix.

    Any completion of such a partial table has a smaller relabeling, so the
    subtree holds no canonical table.
    """
    sigma = np.full(n, -1, np.int64)
    pi = np.full(n, -1, np.int64)
    sigma[0] = 0
    pi[0] = 0
    cand = np.full(n, -1, np.int64)
    k = 1
    while k >= 1:
        if sigma[k] >= 0:
            pi[sigma[k]] = -1
            sigma[k] = -1
        nxt = cand[k] + 1
        while nxt < n and pi[nxt] >= 0:
            nxt += 1
        if nxt >= n:
            cand[k] = -1
            k -= 1
            continue
        cand[k] = nxt
        sigma[k] = nxt
        pi[nxt] = k
        # 0: go deeper, 1: backtrack, 2: strictly smaller found
        verdict = 0
        for i in range(1, n):
            if verdict != 0 or i > k:
                break
            for j in range(1, n):
                if j > k:
                    # (i, k+1) is undecided for this prefix of the relabeling
                    verdict = 3
                    break
                cur = t[i, j]
                src = t[sigma[i], sigma[j]]
                if cur < 0 or src < 0:
                    verdict = 1
                    break
                v = pi[src]
                if v < 0:
                    # the label will be at least k + 1
                    verdict = 1 if k + 1 > cur else 3
                    break
                if v < cur:
                    verdict = 2
                    break
                if v > cur:
                    verdict = 1
                    break
        if verdict == 2:
            return True
        if verdict == 1:
            continue
        if k < n - 1:
            k += 1
    return False


@njit
def _magma_dfs(n, loop, start, stop_depth, iso, target, cap):
    """Row-major backtracking over the (n-1)^2 cells off the neutral row/column.

    Cells ``0..len(start)-1`` are fixed to ``start`` (a task prefix).  Nodes
    are assignments made at depth >= len(start).  When ``stop_depth`` is
    smaller than the number of cells, the partial assignments reaching that
    depth are returned instead of full tables (used to split work).

    Returns ``(stats, out)`` with stats = [emitted, nodes, stored, overflow].
    """
    t = np.full((n, n), -1, np.int64)
    for i in range(n):
        t[0, i] = i
        t[i, 0] = i
    m = (n - 1) * (n - 1)
    rows = np.empty(m, np.int64)
    cols = np.empty(m, np.int64)
    k = 0
    for i in range(1, n):
        for j in range(1, n):
            rows[k] = i
            cols[k] = j
            k += 1
    width = max(stop_depth, 1)
    out = np.empty((cap, width), np.int64)
    stats = np.zeros(4, np.int64)
    s = len(start)
    # place and validate the task prefix
    for d in range(s):
        r = rows[d]
        c = cols[d]
        v = start[d]
        if loop:
            for j in range(n):
                if t[r, j] == v or t[j, c] == v:
                    return stats, out
        t[r, c] = v
        if not _bol_consistent(t, n):
            return stats, out
    if s >= stop_depth:
        # a prefix that already spans the stop depth is itself the only result
        if stop_depth == m:
            if iso and not _is_canonical(t):
                return stats, out
            stats[0] = 1
            if target == TARGET_J_NOT_CLOSED and not _j_not_closed(t, 0):
                return stats, out
        for d in range(stop_depth):
            out[0, d] = t[rows[d], cols[d]]
        stats[2] = 1
        return stats, out
    cur = np.full(m, -1, np.int64)
    d = s
    while d >= s:
        r = rows[d]
        c = cols[d]
        t[r, c] = -1
        cur[d] += 1
        if cur[d] >= n:
            cur[d] = -1
            d -= 1
            continue
        v = cur[d]
        if loop:
            clash = False
            for j in range(n):
                if t[r, j] == v or t[j, c] == v:
                    clash = True
                    break
            if clash:
                continue
        t[r, c] = v
        stats[1] += 1
        if not _bol_consistent_at(t, n, r, c):
            continue
        if iso and _partial_not_canonical(t, n):
            continue
        if d < stop_depth - 1:
            d += 1
            continue
        if stop_depth == m:
            if iso and not _is_canonical(t):
                continue
            stats[0] += 1
            if target == TARGET_J_NOT_CLOSED and not _j_not_closed(t, 0):
                continue
        if stats[2] >= cap:
            stats[3] = 1
            return stats, out
        for q in range(stop_depth):
            out[stats[2], q] = t[rows[q], cols[q]]
        stats[2] += 1
    return stats, out


def magma_dfs(n, loop, start, stop_depth, iso=False, target=TARGET_NONE, cap=1 << 14):
    """Run the magma backtracking kernel, growing the output buffer on overflow."""
    start = np.asarray(start, dtype=np.int64)
    fn = _magma_dfs if backend() == "numba" else python_version(_magma_dfs)
    while True:
        stats, out = fn(n, bool(loop), start, stop_depth, bool(iso), target, cap)
        if not stats[3]:
            return stats, out[: stats[2]]
        cap *= 4


def cells_to_table(n, values):
    """Inverse of the DFS cell order: neutral 0 row/column plus row-major free cells."""
    t = np.empty((n, n), np.int64)
    t[0, :] = np.arange(n)
    t[:, 0] = np.arange(n)
    if n > 1:
        t[1:, 1:] = np.asarray(values, dtype=np.int64).reshape(n - 1, n - 1)
    return t


@njit
def _magma_batch_nb(tables, loop, iso, target):
    count = tables.shape[0]
    n = tables.shape[1]
    flags = np.zeros((count, 2), np.bool_)  # (emitted, certificate)
    for p in range(count):
        t = tables[p]
        ok = True
        if loop:
            for i in range(n):
                seen_r = np.zeros(n, np.bool_)
                seen_c = np.zeros(n, np.bool_)
                for j in range(n):
                    if seen_r[t[i, j]] or seen_c[t[j, i]]:
                        ok = False
                        break
                    seen_r[t[i, j]] = True
                    seen_c[t[j, i]] = True
                if not ok:
                    break
        if not ok or not _bol_consistent(t, n):
            continue
        if iso and not _is_canonical(t):
            continue
        flags[p, 0] = True
        flags[p, 1] = target != TARGET_J_NOT_CLOSED or _j_not_closed(t, 0)
    return flags


def _magma_batch_np(tables, loop, iso, target):
    count, n, _ = tables.shape
    t = tables
    idx = np.arange(count)[:, None, None, None]
    x = np.arange(n)[None, :, None, None]
    y = np.arange(n)[None, None, :, None]
    z = np.arange(n)[None, None, None, :]
    p2 = t[idx, t[idx, x, y], z]
    lhs = t[idx, p2, y]
    rhs = t[idx, x, t[idx, t[idx, y, z], y]]
    ok = (lhs == rhs).reshape(count, -1).all(axis=1)
    if loop:
        srt_r = np.sort(t, axis=2)
        srt_c = np.sort(t, axis=1)
        perm = np.arange(n)
        ok &= (srt_r == perm[None, None, :]).all(axis=(1, 2))
        ok &= (srt_c == perm[None, :, None]).all(axis=(1, 2))
    flags = np.zeros((count, 2), bool)
    for p in np.flatnonzero(ok):
        if iso:
            best, _ = _canonical_np(t[p], 0)
            if not np.array_equal(best, t[p]):
                continue
        flags[p, 0] = True
        flags[p, 1] = target != TARGET_J_NOT_CLOSED or python_version(_j_not_closed)(t[p], 0)
    return flags


def magma_batch(tables, loop, iso=False, target=TARGET_NONE):
    """Filter complete tables (neutral 0) by kind, canonicity and target."""
    tables = np.ascontiguousarray(tables, dtype=np.int64)
    if backend() == "numba":
        return _magma_batch_nb(tables, bool(loop), bool(iso), target)
    return _magma_batch_np(tables, bool(loop), bool(iso), target)


# ---------------------------------------------------------------- ring search


def group_coords(moduli):
    """Coordinates of every element of Z_m1 x ... x Z_mk (first factor most significant)."""
    moduli = tuple(int(m) for m in moduli)
    if not moduli:
        return np.zeros((1, 0), np.int64)
    grids = np.meshgrid(*[np.arange(m) for m in moduli], indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1).astype(np.int64)


def allowed_constants(moduli):
    """Per generator pair, element indices ``c`` with gcd(m_i, m_j) * c = 0."""
    moduli = np.asarray(moduli, dtype=np.int64)
    coords = group_coords(moduli)
    k = len(moduli)
    lists = []
    for i in range(k):
        for j in range(k):
            g = math.gcd(int(moduli[i]), int(moduli[j]))
            mask = ((g * coords) % moduli[None, :] == 0).all(axis=1)
            lists.append(np.flatnonzero(mask))
    return lists


@njit
def _lower_mul(coords, moduli, strides, consts, mul):
    # consts[i*k + j] = element index of e_i * e_j
    n = coords.shape[0]
    k = moduli.shape[0]
    acc = np.zeros(k, np.int64)
    for x in range(n):
        for y in range(n):
            for q in range(k):
                acc[q] = 0
            for i in range(k):
                xi = coords[x, i]
                if xi == 0:
                    continue
                for j in range(k):
                    s = xi * coords[y, j]
                    if s == 0:
                        continue
                    c = consts[i * k + j]
                    for q in range(k):
                        acc[q] += s * coords[c, q]
            idx = 0
            for q in range(k):
                idx += (acc[q] % moduli[q]) * strides[q]
            mul[x, y] = idx


@njit
def _ring_batch_nb(coords, moduli, strides, add, digits, values, sra, target):
    count = digits.shape[0]
    n = coords.shape[0]
    kk = digits.shape[1]
    flags = np.zeros((count, 2), np.bool_)
    mul = np.empty((n, n), np.int64)
    consts = np.empty(kk, np.int64)
    for p in range(count):
        for q in range(kk):
            consts[q] = values[q, digits[p, q]]
        _lower_mul(coords, moduli, strides, consts, mul)
        if _first_failure_nb(RALT, 2, mul, mul)[0] >= 0:
            continue
        bol = _first_failure_nb(BOL, 3, mul, mul)[0] < 0
        if sra and not bol:
            continue
        flags[p, 0] = True
        if target == TARGET_NONE:
            flags[p, 1] = True
        elif target == TARGET_NOT_BOL:
            flags[p, 1] = not bol
        elif target == TARGET_NOT_ALTERNATIVE:
            flags[p, 1] = _first_failure_nb(LALT, 2, mul, mul)[0] >= 0
        else:
            circ = np.empty((n, n), np.int64)
            for x in range(n):
                for y in range(n):
                    circ[x, y] = add[add[x, y], mul[x, y]]
            hit = _j_not_closed(circ, 0)
            if not hit:
                one = -1
                for u in range(n):
                    good = True
                    for x in range(n):
                        if mul[u, x] != x or mul[x, u] != x:
                            good = False
                            break
                    if good:
                        one = u
                        break
                if one >= 0:
                    hit = _j_not_closed(mul, one)
            flags[p, 1] = hit
    return flags


def _lower_mul_np(coords, moduli, strides, consts):
    # consts: (count, k*k) element indices; returns (count, n, n) tables
    k = len(moduli)
    cc = coords[consts].reshape(len(consts), k, k, k)  # [p, i, j, q]
    acc = np.einsum("xi,yj,pijq->pxyq", coords, coords, cc)
    return ((acc % moduli) * strides).sum(axis=-1)


def _ring_batch_np(coords, moduli, strides, add, digits, values, sra, target):
    count = digits.shape[0]
    n = coords.shape[0]
    consts = values[np.arange(digits.shape[1])[None, :], digits]
    muls = _lower_mul_np(coords, moduli, strides, consts)
    idx = np.arange(count)[:, None, None]
    x = np.arange(n)[None, :, None]
    y = np.arange(n)[None, None, :]
    xy = muls[idx, x, y]
    yy = muls[idx, y, y]
    ralt = (muls[idx, xy, y] == muls[idx, x, yy]).reshape(count, -1).all(axis=1)
    flags = np.zeros((count, 2), bool)
    for p in np.flatnonzero(ralt):
        m = muls[p]
        bol = _first_failure_np(BOL, 3, m, m)[0] < 0
        if sra and not bol:
            continue
        flags[p, 0] = True
        if target == TARGET_NONE:
            flags[p, 1] = True
        elif target == TARGET_NOT_BOL:
            flags[p, 1] = not bol
        elif target == TARGET_NOT_ALTERNATIVE:
            flags[p, 1] = _first_failure_np(LALT, 2, m, m)[0] >= 0
        else:
            jnc = python_version(_j_not_closed)
            circ = add[add, m]
            hit = jnc(circ, 0)
            ident = np.arange(n)
            ones = [u for u in range(n) if (m[u] == ident).all() and (m[:, u] == ident).all()]
            if not hit and ones:
                hit = jnc(m, ones[0])
            flags[p, 1] = hit
    return flags


def ring_batch(moduli, digits, values, sra, target=TARGET_NONE):
    """Lower a batch of structure-constant digit vectors and filter them.

    ``values[q, d]`` is the element index of digit ``d`` for generator pair
    ``q``.  Returns a ``(count, 2)`` flag array (emitted, certificate).
    """
    moduli = np.asarray(moduli, dtype=np.int64)
    coords = group_coords(moduli)
    strides = np.array([int(np.prod(moduli[q + 1:])) for q in range(len(moduli))], np.int64)
    add = ring_add_table(moduli)
    digits = np.ascontiguousarray(digits, dtype=np.int64)
    if backend() == "numba":
        return _ring_batch_nb(coords, moduli, strides, add, digits, values, bool(sra), target)
    return _ring_batch_np(coords, moduli, strides, add, digits, values, bool(sra), target)


def ring_add_table(moduli):
    moduli = np.asarray(moduli, dtype=np.int64)
    coords = group_coords(moduli)
    strides = np.array([int(np.prod(moduli[q + 1:])) for q in range(len(moduli))], np.int64)
    summed = (coords[:, None, :] + coords[None, :, :]) % moduli
    return (summed * strides).sum(axis=-1)


def lower_constants(moduli, consts):
    """Multiplication table of the bilinear extension of generator products."""
    moduli = np.asarray(moduli, dtype=np.int64)
    coords = group_coords(moduli)
    strides = np.array([int(np.prod(moduli[q + 1:])) for q in range(len(moduli))], np.int64)
    consts = np.asarray(consts, dtype=np.int64)
    return _lower_mul_np(coords, moduli, strides, consts[None, :])[0]
