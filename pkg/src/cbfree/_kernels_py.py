"""Pure NumPy/Python lane of the hot word kernels.

Selected by ``cbfree.kernels`` when numba is unavailable or when
``CBFREE_DISABLE_NUMBA`` is set. Must stay observably identical to the
numba lane; ``tests/test_kernels.py`` cross-checks the two.

Words are 1-d int64 arrays of signed generator indices: +k encodes a_k,
-k encodes a_k^-1.
"""

import numpy as np


def reduce_word(raw):
    """Freely reduce a raw letter sequence (single stack pass)."""
    stack = []
    for s in raw.tolist():
        if stack and stack[-1] == -s:
            stack.pop()
        else:
            stack.append(s)
    return np.asarray(stack, dtype=np.int64)


def cancel_len(u, v):
    """Length of the cancelling boundary between reduced u and v."""
    m = min(u.shape[0], v.shape[0])
    if m == 0:
        return 0
    mism = np.nonzero(u[::-1][:m] != -v[:m])[0]
    return int(mism[0]) if mism.size else m


def concat_words(u, v):
    """Product of two reduced words; one boundary cancellation suffices."""
    c = cancel_len(u, v)
    if c == 0:
        return np.concatenate((u, v))
    return np.concatenate((u[: u.shape[0] - c], v[c:]))


def substitute(word, img_flat, img_off):
    """Apply a generator substitution to a reduced word and reduce.

    Generators 1..N (N = len(img_off)-1) map to the packed images;
    higher indices map to themselves. Inverse letters get the inverted
    image. Cancellation cascades through one stack pass.
    """
    n_img = img_off.shape[0] - 1
    flat = img_flat.tolist()
    off = img_off.tolist()
    stack = []
    for s in word.tolist():
        k = s if s > 0 else -s
        if k <= n_img:
            a, b = off[k - 1], off[k]
            if s > 0:
                seg = flat[a:b]
            else:
                seg = [-x for x in reversed(flat[a:b])]
        else:
            seg = (s,)
        for x in seg:
            if stack and stack[-1] == -x:
                stack.pop()
            else:
                stack.append(x)
    return np.asarray(stack, dtype=np.int64)


def _pair_cancel(ei, ej, side, inv):
    # Cancellation at the junction of the product selected by (side, inv):
    #   side 0: T_i <- T_j^eps . T_i     side 1: T_i <- T_i . T_j^eps
    li = len(ei)
    lj = len(ej)
    m = li if li < lj else lj
    c = 0
    if side == 1:
        if inv == 0:  # T_i . T_j
            while c < m and ei[li - 1 - c] == -ej[c]:
                c += 1
        else:  # T_i . T_j^-1
            while c < m and ei[li - 1 - c] == ej[lj - 1 - c]:
                c += 1
    else:
        if inv == 0:  # T_j . T_i
            while c < m and ej[lj - 1 - c] == -ei[c]:
                c += 1
        else:  # T_j^-1 . T_i
            while c < m and ej[c] == ei[c]:
                c += 1
    return c


def _pair_product(ei, ej, side, inv, c):
    lj = len(ej)
    if side == 1:
        head = ei[: len(ei) - c]
        if inv == 0:
            return head + ej[c:]
        return head + [-ej[lj - 1 - t] for t in range(c, lj)]
    tail = ei[c:]
    if inv == 0:
        return ej[: lj - c] + tail
    return [-ej[lj - 1 - t] for t in range(lj - c)] + tail


def greedy_multiply_phase(flat, off):
    """Greedy length-reducing multiply phase of Nielsen reduction.

    Repeatedly applies the multiply move with the largest total-length
    decrease; ties break by lowest (entry, other) index pair, then left
    multiplication before right, then plain factor before inverted.
    Entries that cancel away completely stay in place as empty rows.

    Returns (out_flat, out_off, moves, n_moves) with one int64 row
    (entry, other, side, inv) per applied move; side 0 is left.
    """
    k = off.shape[0] - 1
    entries = [flat[off[i] : off[i + 1]].tolist() for i in range(k)]
    total = sum(len(e) for e in entries)
    moves = np.zeros((total + 1, 4), dtype=np.int64)
    n_moves = 0
    while True:
        best_d = 0
        sel = None
        for i in range(k):
            ei = entries[i]
            if not ei:
                continue
            for j in range(k):
                if j == i:
                    continue
                ej = entries[j]
                if not ej:
                    continue
                lj = len(ej)
                for side in (0, 1):
                    for inv in (0, 1):
                        d = 2 * _pair_cancel(ei, ej, side, inv) - lj
                        if d > best_d:
                            best_d = d
                            sel = (i, j, side, inv)
        if sel is None:
            break
        i, j, side, inv = sel
        c = _pair_cancel(entries[i], entries[j], side, inv)
        entries[i] = _pair_product(entries[i], entries[j], side, inv, c)
        moves[n_moves, 0] = i
        moves[n_moves, 1] = j
        moves[n_moves, 2] = side
        moves[n_moves, 3] = inv
        n_moves += 1
    out_off = np.zeros(k + 1, dtype=np.int64)
    for i in range(k):
        out_off[i + 1] = out_off[i] + len(entries[i])
    out_flat = np.asarray([s for e in entries for s in e], dtype=np.int64)
    return out_flat, out_off, moves, n_moves
