"""Backend selection for the hot word kernels.

The numba lane is the default. Set ``CBFREE_DISABLE_NUMBA=1`` (or any
value other than 0/false/no) before import to force the pure
NumPy/Python lane; the same happens automatically when numba cannot be
imported. ``BACKEND`` reports which lane is live.
"""

import os

import numpy as np

_flag = os.environ.get("CBFREE_DISABLE_NUMBA", "").strip().lower()
_want_numba = _flag in ("", "0", "false", "no")

HAS_NUMBA = False
if _want_numba:
    try:
        from . import _kernels_numba as _impl

        HAS_NUMBA = True
    except ImportError:
        from . import _kernels_py as _impl
else:
    from . import _kernels_py as _impl

BACKEND = "numba" if HAS_NUMBA else "python"

reduce_word = _impl.reduce_word
cancel_len = _impl.cancel_len
concat_words = _impl.concat_words
substitute = _impl.substitute
greedy_multiply_phase = _impl.greedy_multiply_phase


def warmup():
    """Trigger JIT compilation (a no-op on the pure lane)."""
    a = np.asarray([1, 2, -2, 3], dtype=np.int64)
    b = np.asarray([-3, 1], dtype=np.int64)
    reduce_word(a)
    cancel_len(a, b)
    concat_words(a, b)
    substitute(a, np.asarray([1, 2, 2], dtype=np.int64), np.asarray([0, 2, 3], dtype=np.int64))
    flat = np.asarray([1, 2, 2], dtype=np.int64)
    off = np.asarray([0, 2, 3], dtype=np.int64)
    greedy_multiply_phase(flat, off)
