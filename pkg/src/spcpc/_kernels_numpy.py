"""Pure-NumPy twins of the numba kernels, vectorized over the batch axis.

Same inputs, outputs and semantics as ``_kernels_numba``; used when numba
is disabled and as the reference side of the backend benchmark.
"""

import numpy as np

ERASED = 2
LLR_CLAMP = 40.0
PROD_MAX = np.nextafter(1.0, 0.0)


def boxplus(x: np.ndarray, axis: int) -> np.ndarray:
    """``2*atanh(prod tanh(x/2))`` along ``axis`` with symbolic +-inf and 0."""
    inf = np.isinf(x)
    all_inf = inf.all(axis=axis)
    f = np.tanh(0.5 * np.clip(x, -LLR_CLAMP, LLR_CLAMP))
    f = np.where(inf, np.sign(x), f)
    p = f.prod(axis=axis)
    with np.errstate(divide="ignore"):
        soft = 2.0 * np.arctanh(np.clip(p, -PROD_MAX, PROD_MAX))
    return np.where(all_inf, np.copysign(np.inf, p), soft)


def llr_add(a, b):
    with np.errstate(invalid="ignore"):
        s = a + b
    return np.where(np.isnan(s), 0.0, s)


def decide(v, bec):
    out = (v < 0).astype(np.int8)
    if bec:
        out[v == 0] = ERASED
    return out


def txor(a, b):
    return np.where((a == ERASED) | (b == ERASED), ERASED, a ^ b).astype(np.int8)


def _sc(rx, dims, bec, genie, use_genie, ternary):
    dims = [int(x) for x in dims]
    m = len(dims)
    b = rx.shape[0]
    info = [x - 1 for x in dims]
    k = int(np.prod(info))
    sizes = [int(np.prod(dims[lvl:])) for lvl in range(m + 1)]
    soft = [None] * (m + 1)
    soft[0] = rx.reshape(b, dims[0], sizes[1])
    hard = [np.zeros((b, dims[lvl], sizes[lvl + 1]), dtype=np.int8) for lvl in range(m)]
    out = np.empty((b, k), dtype=np.int8)
    roots = None if ternary else np.empty((b, k), dtype=np.float64)
    for t, coords in enumerate(np.ndindex(*info)):
        start = 0 if t == 0 else next(lvl for lvl in range(m) if coords[lvl] != prev[lvl])
        prev = coords
        for lvl in range(start, m):
            c = coords[lvl]
            x = soft[lvl]
            rho = x[:, c, :]
            lam = hard[lvl][:, :c, :]
            if ternary:
                par = np.zeros_like(rho)
                for z in range(c):
                    par = txor(par, lam[:, z, :])
                for z in range(c + 1, dims[lvl]):
                    par = txor(par, x[:, z, :])
                val = np.where(rho != ERASED, rho, par).astype(np.int8)
            else:
                lam_erased = (lam == ERASED).any(axis=1)
                sign = np.where(lam.sum(axis=1) % 2 == 1, -1.0, 1.0)
                ext = boxplus(x[:, c + 1 :, :], axis=1) * sign
                val = np.where(lam_erased, rho, llr_add(rho, ext))
            nxt = dims[lvl + 1] if lvl + 1 < m else 1
            soft[lvl + 1] = val.reshape(b, nxt, -1)
        root = soft[m][:, 0, 0]
        if ternary:
            bit = root.astype(np.int8)
        else:
            roots[:, t] = root
            bit = decide(root, bec)
        out[:, t] = bit
        hard[m - 1][:, coords[m - 1], 0] = genie[:, t] if use_genie else bit
        lvl = m - 1
        while lvl >= 0 and coords[lvl] == dims[lvl] - 2:
            h = hard[lvl]
            acc = np.zeros_like(h[:, 0, :])
            for z in range(dims[lvl] - 1):
                acc = txor(acc, h[:, z, :])
            h[:, -1, :] = acc
            if lvl == 0:
                break
            hard[lvl - 1][:, coords[lvl - 1], :] = h.reshape(b, -1)
            lvl -= 1
    return out, roots


def sc_llr_batch(llr, dims, bec, genie, use_genie):
    return _sc(np.asarray(llr, dtype=np.float64), dims, bec, genie, use_genie, ternary=False)


def sc_ternary_batch(rx, dims, genie, use_genie):
    return _sc(np.asarray(rx, dtype=np.int8), dims, False, genie, use_genie, ternary=True)[0]


def _elias_levels(x, dims, step):
    b = x.shape[0]
    pre = 1
    for nl in dims:
        nl = int(nl)
        cur = x.reshape(b, pre, nl, -1)
        x = np.stack([step(cur, c) for c in range(nl - 1)], axis=2)
        pre *= nl - 1
    return x.reshape(b, -1)


def elias_llr_batch(llr, dims, bec):
    def step(cur, c):
        others = np.delete(cur, c, axis=2)
        return llr_add(cur[:, :, c, :], boxplus(others, axis=2))

    roots = _elias_levels(np.asarray(llr, dtype=np.float64), dims, step)
    return decide(roots, bec), roots


def elias_ternary_batch(rx, dims):
    def step(cur, c):
        others = np.delete(cur, c, axis=2)
        fill = np.bitwise_xor.reduce(others & 1, axis=2)
        fill = np.where((others == ERASED).any(axis=2), ERASED, fill)
        return np.where(cur[:, :, c, :] != ERASED, cur[:, :, c, :], fill).astype(np.int8)

    return _elias_levels(np.asarray(rx, dtype=np.int8), dims, step).astype(np.int8)


def ml_erasure_batch(gt, erased, received):
    gt = np.asarray(gt, dtype=np.uint8)
    n, k = gt.shape
    b = erased.shape[0]
    a = np.zeros((b, n, k + 1), dtype=np.uint8)
    keep = ~erased
    a[:, :, :k] = gt[None, :, :] * keep[:, :, None]
    a[:, :, k] = received * keep
    used = np.zeros((b, n), dtype=bool)
    piv = np.full((b, k), -1, dtype=np.int64)
    rows = np.arange(b)
    for c in range(k):
        cand = (a[:, :, c] == 1) & ~used
        has = cand.any(axis=1)
        sel = np.argmax(cand, axis=1)
        prow = a[rows, sel]
        hit = (a[:, :, c] == 1) & has[:, None]
        hit[rows, sel] = False
        a ^= hit[:, :, None].astype(np.uint8) * prow[:, None, :]
        used[rows[has], sel[has]] = True
        piv[has, c] = sel[has]
    bad = ((a[:, :, :k].sum(axis=2) == 0) & (a[:, :, k] == 1)).any(axis=1)
    out = np.full((b, k), ERASED, dtype=np.int8)
    free = piv < 0
    for c in range(k):
        ok = piv[:, c] >= 0
        pr = a[rows, np.maximum(piv[:, c], 0)]
        others_free = free.copy()
        others_free[:, c] = False
        determined = ok & ~((pr[:, :k] == 1) & others_free).any(axis=1)
        out[determined, c] = pr[determined, k]
    return out, bad
