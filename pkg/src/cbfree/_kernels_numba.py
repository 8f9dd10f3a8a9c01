"""Numba lane of the hot word kernels.

Default lane; compiled with ``@njit(cache=True)`` so repeated runs skip
JIT warmup. Semantics mirror ``cbfree._kernels_py`` exactly (the test
suite asserts bit-identical outputs on both lanes).
"""

import numpy as np
from numba import njit


@njit(cache=True)
def reduce_word(raw):
    n = raw.shape[0]
    out = np.empty(n, dtype=np.int64)
    top = 0
    for t in range(n):
        s = raw[t]
        if top > 0 and out[top - 1] == -s:
            top -= 1
        else:
            out[top] = s
            top += 1
    return out[:top].copy()


@njit(cache=True)
def cancel_len(u, v):
    lu = u.shape[0]
    lv = v.shape[0]
    m = lu if lu < lv else lv
    c = 0
    while c < m and u[lu - 1 - c] == -v[c]:
        c += 1
    return c


@njit(cache=True)
def concat_words(u, v):
    c = cancel_len(u, v)
    lu = u.shape[0]
    lv = v.shape[0]
    out = np.empty(lu + lv - 2 * c, dtype=np.int64)
    for t in range(lu - c):
        out[t] = u[t]
    for t in range(lv - c):
        out[lu - c + t] = v[c + t]
    return out


@njit(cache=True)
def substitute(word, img_flat, img_off):
    n_img = img_off.shape[0] - 1
    # Output never exceeds the sum of substituted image lengths.
    cap = 0
    for t in range(word.shape[0]):
        s = word[t]
        k = s if s > 0 else -s
        if k <= n_img:
            cap += img_off[k] - img_off[k - 1]
        else:
            cap += 1
    out = np.empty(cap, dtype=np.int64)
    top = 0
    for t in range(word.shape[0]):
        s = word[t]
        k = s if s > 0 else -s
        if k <= n_img:
            a = img_off[k - 1]
            b = img_off[k]
            if s > 0:
                for p in range(a, b):
                    x = img_flat[p]
                    if top > 0 and out[top - 1] == -x:
                        top -= 1
                    else:
                        out[top] = x
                        top += 1
            else:
                for p in range(b - 1, a - 1, -1):
                    x = -img_flat[p]
                    if top > 0 and out[top - 1] == -x:
                        top -= 1
                    else:
                        out[top] = x
                        top += 1
        else:
            if top > 0 and out[top - 1] == -s:
                top -= 1
            else:
                out[top] = s
                top += 1
    return out[:top].copy()


@njit(cache=True)
def _pair_cancel_buf(buf, lengths, i, j, side, inv):
    li = lengths[i]
    lj = lengths[j]
    m = li if li < lj else lj
    c = 0
    if side == 1:
        if inv == 0:
            while c < m and buf[i, li - 1 - c] == -buf[j, c]:
                c += 1
        else:
            while c < m and buf[i, li - 1 - c] == buf[j, lj - 1 - c]:
                c += 1
    else:
        if inv == 0:
            while c < m and buf[j, lj - 1 - c] == -buf[i, c]:
                c += 1
        else:
            while c < m and buf[j, c] == buf[i, c]:
                c += 1
    return c


@njit(cache=True)
def greedy_multiply_phase(flat, off):
    k = off.shape[0] - 1
    total = flat.shape[0]
    cap = 0
    for i in range(k):
        li = off[i + 1] - off[i]
        if li > cap:
            cap = li
    buf = np.zeros((k, cap), dtype=np.int64)
    lengths = np.zeros(k, dtype=np.int64)
    for i in range(k):
        li = off[i + 1] - off[i]
        lengths[i] = li
        for t in range(li):
            buf[i, t] = flat[off[i] + t]
    scratch = np.empty(cap, dtype=np.int64)
    moves = np.zeros((total + 1, 4), dtype=np.int64)
    n_moves = 0
    while True:
        best_d = 0
        bi = -1
        bj = -1
        bside = -1
        binv = -1
        for i in range(k):
            if lengths[i] == 0:
                continue
            for j in range(k):
                if j == i or lengths[j] == 0:
                    continue
                lj = lengths[j]
                for side in range(2):
                    for inv in range(2):
                        c = _pair_cancel_buf(buf, lengths, i, j, side, inv)
                        d = 2 * c - lj
                        if d > best_d:
                            best_d = d
                            bi = i
                            bj = j
                            bside = side
                            binv = inv
        if bi < 0:
            break
        c = _pair_cancel_buf(buf, lengths, bi, bj, bside, binv)
        li = lengths[bi]
        lj = lengths[bj]
        new_len = li + lj - 2 * c
        pos = 0
        if bside == 1:
            for t in range(li - c):
                scratch[pos] = buf[bi, t]
                pos += 1
            if binv == 0:
                for t in range(c, lj):
                    scratch[pos] = buf[bj, t]
                    pos += 1
            else:
                for t in range(c, lj):
                    scratch[pos] = -buf[bj, lj - 1 - t]
                    pos += 1
        else:
            if binv == 0:
                for t in range(lj - c):
                    scratch[pos] = buf[bj, t]
                    pos += 1
            else:
                for t in range(lj - c):
                    scratch[pos] = -buf[bj, lj - 1 - t]
                    pos += 1
            for t in range(c, li):
                scratch[pos] = buf[bi, t]
                pos += 1
        for t in range(new_len):
            buf[bi, t] = scratch[t]
        lengths[bi] = new_len
        moves[n_moves, 0] = bi
        moves[n_moves, 1] = bj
        moves[n_moves, 2] = bside
        moves[n_moves, 3] = binv
        n_moves += 1
    out_off = np.zeros(k + 1, dtype=np.int64)
    for i in range(k):
        out_off[i + 1] = out_off[i] + lengths[i]
    out_flat = np.empty(out_off[k], dtype=np.int64)
    for i in range(k):
        for t in range(lengths[i]):
            out_flat[out_off[i] + t] = buf[i, t]
    return out_flat, out_off, moves, n_moves
