"""Hot-loop kernels: compiled extension when available, pure Python otherwise.

Set ``FOXCALC_PURE=1`` to force the fallback.  ``BACKEND`` names the active one.
"""

import os

from . import _kernels_py

if os.environ.get("FOXCALC_PURE"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

reduce_word = _impl.reduce_word
mul_words = _impl.mul_words
mul_abelian = _impl.mul_abelian
convolve = _impl.convolve
fox_left = _impl.fox_left
fox_right = _impl.fox_right
eliminate_f2 = _impl.eliminate_f2
eliminate_q = _impl.eliminate_q

__all__ = [
    "BACKEND",
    "convolve",
    "eliminate_f2",
    "eliminate_q",
    "fox_left",
    "fox_right",
    "mul_abelian",
    "mul_words",
    "reduce_word",
]
