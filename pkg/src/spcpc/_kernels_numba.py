"""Numba kernels for SC, Elias and ML erasure decoding.

All kernels take a batch of received words already permuted to the
C-ordered array layout (``c_1`` slowest, see ``ProductCode.array_order``)
and return ternary decisions in message order: 0, 1 or ``ERASED``.
"""

import numpy as np

from ._jit import njit

ERASED = 2
LLR_CLAMP = 40.0
# atanh argument bound for products with at least one finite factor
PROD_MAX = np.nextafter(1.0, 0.0)


@njit(cache=True, nogil=True)
def _half_tanh(v):
    if np.isinf(v):
        return 1.0 if v > 0.0 else -1.0
    if v > LLR_CLAMP:
        v = LLR_CLAMP
    elif v < -LLR_CLAMP:
        v = -LLR_CLAMP
    return np.tanh(0.5 * v)


@njit(cache=True, nogil=True)
def _boxplus(vals, th, start, stop, stride, skip):
    """2*atanh(prod tanh(v/2)) over ``vals[start:stop:stride]`` minus index ``skip``.

    ``th`` holds ``_half_tanh`` of ``vals`` so each tanh is evaluated once.
    """
    p = 1.0
    all_inf = True
    i = start
    while i < stop:
        if i != skip:
            p *= th[i]
            if all_inf and not np.isinf(vals[i]):
                all_inf = False
        i += stride
    if all_inf:
        return np.inf if p > 0.0 else -np.inf
    if p > PROD_MAX:
        p = PROD_MAX
    elif p < -PROD_MAX:
        p = -PROD_MAX
    return 2.0 * np.arctanh(p)


@njit(cache=True, nogil=True)
def _llr_add(a, b):
    # opposite certainties only arise on inconsistent input; treat as no information
    if np.isinf(a) and np.isinf(b) and (a > 0.0) != (b > 0.0):
        return 0.0
    return a + b


@njit(cache=True, nogil=True)
def _decide(v, bec):
    if v > 0.0:
        return 0
    if v < 0.0:
        return 1
    if bec:
        return ERASED
    return 0


@njit(cache=True, nogil=True)
def _txor(a, b):
    if a == ERASED or b == ERASED:
        return ERASED
    return a ^ b


@njit(cache=True, nogil=True)
def _sizes(dims):
    m = dims.shape[0]
    sizes = np.ones(m + 1, dtype=np.int64)
    for lvl in range(m - 1, -1, -1):
        sizes[lvl] = sizes[lvl + 1] * dims[lvl]
    offs = np.zeros(m + 2, dtype=np.int64)
    for lvl in range(m + 1):
        offs[lvl + 1] = offs[lvl] + sizes[lvl]
    return sizes, offs


@njit(cache=True, nogil=True)
def _close_rows(hard, dims, sizes, offs, coords):
    """Fill parity rows of finished levels and lift them one level up."""
    m = dims.shape[0]
    lvl = m - 1
    while lvl >= 0 and coords[lvl] == dims[lvl] - 2:
        rest = sizes[lvl + 1]
        base = offs[lvl]
        nl = dims[lvl]
        for r in range(rest):
            acc = 0
            for z in range(nl - 1):
                acc = _txor(acc, hard[base + z * rest + r])
            hard[base + (nl - 1) * rest + r] = acc
        if lvl == 0:
            break
        dst = offs[lvl - 1] + coords[lvl - 1] * sizes[lvl]
        for r in range(sizes[lvl]):
            hard[dst + r] = hard[base + r]
        lvl -= 1


@njit(cache=True, nogil=True)
def _advance(coords, info):
    """Next lexicographic info tuple; returns the first level that changed."""
    lvl = coords.shape[0] - 1
    while lvl >= 0:
        coords[lvl] += 1
        if coords[lvl] < info[lvl]:
            return lvl
        coords[lvl] = 0
        lvl -= 1
    return 0


@njit(cache=True, nogil=True)
def sc_llr_one(llr, dims, bec, genie, use_genie, out, roots):
    m = dims.shape[0]
    sizes, offs = _sizes(dims)
    soft = np.empty(offs[m + 1], dtype=np.float64)
    th = np.empty(offs[m + 1], dtype=np.float64)
    hard = np.zeros(offs[m], dtype=np.int8)
    info = dims - 1
    k = 1
    for lvl in range(m):
        k *= info[lvl]
    for i in range(sizes[0]):
        soft[i] = llr[i]
        th[i] = _half_tanh(llr[i])
    coords = np.zeros(m, dtype=np.int64)
    start = 0
    for t in range(k):
        for lvl in range(start, m):
            c = coords[lvl]
            nl = dims[lvl]
            rest = sizes[lvl + 1]
            src = offs[lvl]
            dst = offs[lvl + 1]
            hb = offs[lvl]
            for r in range(rest):
                rho = soft[src + c * rest + r]
                par = 0
                lam_erased = False
                for z in range(c):
                    h = hard[hb + z * rest + r]
                    if h == ERASED:
                        lam_erased = True
                        break
                    par ^= h
                if lam_erased:
                    v = rho
                else:
                    ext = _boxplus(soft, th, src + (c + 1) * rest + r, src + nl * rest, rest, -1)
                    if par:
                        ext = -ext
                    v = _llr_add(rho, ext)
                soft[dst + r] = v
                th[dst + r] = _half_tanh(v)
        root = soft[offs[m]]
        roots[t] = root
        bit = _decide(root, bec)
        out[t] = bit
        hard[offs[m - 1] + coords[m - 1]] = genie[t] if use_genie else bit
        _close_rows(hard, dims, sizes, offs, coords)
        start = _advance(coords, info)


@njit(cache=True, nogil=True)
def sc_llr_batch(llr, dims, bec, genie, use_genie):
    b = llr.shape[0]
    k = 1
    for x in dims:
        k *= x - 1
    out = np.empty((b, k), dtype=np.int8)
    roots = np.empty((b, k), dtype=np.float64)
    for i in range(b):
        g = genie[i] if use_genie else genie[0]
        sc_llr_one(llr[i], dims, bec, g, use_genie, out[i], roots[i])
    return out, roots


@njit(cache=True, nogil=True)
def sc_ternary_one(rx, dims, genie, use_genie, out):
    m = dims.shape[0]
    sizes, offs = _sizes(dims)
    soft = np.empty(offs[m + 1], dtype=np.int8)
    hard = np.zeros(offs[m], dtype=np.int8)
    info = dims - 1
    k = 1
    for lvl in range(m):
        k *= info[lvl]
    for i in range(sizes[0]):
        soft[i] = rx[i]
    coords = np.zeros(m, dtype=np.int64)
    start = 0
    for t in range(k):
        for lvl in range(start, m):
            c = coords[lvl]
            nl = dims[lvl]
            rest = sizes[lvl + 1]
            src = offs[lvl]
            dst = offs[lvl + 1]
            for r in range(rest):
                rho = soft[src + c * rest + r]
                if rho != ERASED:
                    soft[dst + r] = rho
                    continue
                par = 0
                for z in range(c):
                    par = _txor(par, hard[offs[lvl] + z * rest + r])
                for z in range(c + 1, nl):
                    par = _txor(par, soft[src + z * rest + r])
                soft[dst + r] = par
        bit = soft[offs[m]]
        out[t] = bit
        hard[offs[m - 1] + coords[m - 1]] = genie[t] if use_genie else bit
        _close_rows(hard, dims, sizes, offs, coords)
        start = _advance(coords, info)


@njit(cache=True, nogil=True)
def sc_ternary_batch(rx, dims, genie, use_genie):
    b = rx.shape[0]
    k = 1
    for x in dims:
        k *= x - 1
    out = np.empty((b, k), dtype=np.int8)
    for i in range(b):
        g = genie[i] if use_genie else genie[0]
        sc_ternary_one(rx[i], dims, g, use_genie, out[i])
    return out


@njit(cache=True, nogil=True)
def elias_llr_batch(llr, dims, bec):
    b = llr.shape[0]
    m = dims.shape[0]
    sizes, offs = _sizes(dims)
    k = 1
    for x in dims:
        k *= x - 1
    out = np.empty((b, k), dtype=np.int8)
    roots = np.empty((b, k), dtype=np.float64)
    cur = np.empty(sizes[0], dtype=np.float64)
    nxt = np.empty(sizes[0], dtype=np.float64)
    th = np.empty(sizes[0], dtype=np.float64)
    for i in range(b):
        for j in range(sizes[0]):
            cur[j] = llr[i, j]
        pre = 1
        for lvl in range(m):
            nl = dims[lvl]
            rest = sizes[lvl + 1]
            blk = nl * rest
            for j in range(pre * blk):
                th[j] = _half_tanh(cur[j])
            for p in range(pre):
                for c in range(nl - 1):
                    for r in range(rest):
                        base = p * blk + r
                        ext = _boxplus(cur, th, base, base + blk, rest, base + c * rest)
                        nxt[(p * (nl - 1) + c) * rest + r] = _llr_add(cur[base + c * rest], ext)
            pre *= nl - 1
            cur, nxt = nxt, cur
        for t in range(k):
            roots[i, t] = cur[t]
            out[i, t] = _decide(cur[t], bec)
    return out, roots


@njit(cache=True, nogil=True)
def elias_ternary_batch(rx, dims):
    b = rx.shape[0]
    m = dims.shape[0]
    sizes, offs = _sizes(dims)
    k = 1
    for x in dims:
        k *= x - 1
    out = np.empty((b, k), dtype=np.int8)
    cur = np.empty(sizes[0], dtype=np.int8)
    nxt = np.empty(sizes[0], dtype=np.int8)
    for i in range(b):
        for j in range(sizes[0]):
            cur[j] = rx[i, j]
        pre = 1
        for lvl in range(m):
            nl = dims[lvl]
            rest = sizes[lvl + 1]
            blk = nl * rest
            for p in range(pre):
                for c in range(nl - 1):
                    for r in range(rest):
                        base = p * blk + r
                        v = cur[base + c * rest]
                        if v == ERASED:
                            v = 0
                            for z in range(nl):
                                if z != c:
                                    v = _txor(v, cur[base + z * rest])
                        nxt[(p * (nl - 1) + c) * rest + r] = v
            pre *= nl - 1
            cur, nxt = nxt, cur
        for t in range(k):
            out[i, t] = cur[t]
    return out


@njit(cache=True, nogil=True)
def ml_erasure_batch(gt, erased, received):
    """Gauss-Jordan solve of ``u G_S = x_S`` per row of the batch.

    ``gt`` is ``G`` transposed (n x k).  Returns ternary decisions (ERASED
    where the unknown is not pinned down) and a per-row inconsistency flag.
    """
    b = erased.shape[0]
    n, k = gt.shape
    out = np.empty((b, k), dtype=np.int8)
    bad = np.zeros(b, dtype=np.bool_)
    a = np.empty((n, k + 1), dtype=np.uint8)
    piv_row = np.empty(k, dtype=np.int64)
    for i in range(b):
        rows = 0
        for j in range(n):
            if not erased[i, j]:
                for c in range(k):
                    a[rows, c] = gt[j, c]
                a[rows, k] = received[i, j]
                rows += 1
        r = 0
        for c in range(k):
            piv_row[c] = -1
            sel = -1
            for q in range(r, rows):
                if a[q, c]:
                    sel = q
                    break
            if sel < 0:
                continue
            if sel != r:
                for cc in range(k + 1):
                    tmp = a[r, cc]
                    a[r, cc] = a[sel, cc]
                    a[sel, cc] = tmp
            for q in range(rows):
                if q != r and a[q, c]:
                    for cc in range(c, k + 1):
                        a[q, cc] ^= a[r, cc]
            piv_row[c] = r
            r += 1
        for q in range(r, rows):
            if a[q, k]:
                bad[i] = True
        for c in range(k):
            pr = piv_row[c]
            if pr < 0:
                out[i, c] = ERASED
                continue
            free = False
            for cc in range(k):
                if cc != c and piv_row[cc] < 0 and a[pr, cc]:
                    free = True
                    break
            out[i, c] = ERASED if free else a[pr, k]
    return out, bad
