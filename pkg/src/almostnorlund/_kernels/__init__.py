"""Hot numerical kernels with a compiled core and a pure-Python fallback.

The compiled Cython module is used when it was built; setting the
environment variable ``ALMOSTNORLUND_BACKEND=python`` forces the fallback.
``BACKEND`` names the active implementation.
"""
import os

from . import _fallback

_forced = os.environ.get("ALMOSTNORLUND_BACKEND", "").strip().lower()

try:
    if _forced == "python":
        raise ImportError("fallback forced by ALMOSTNORLUND_BACKEND")
    from . import _compiled as _impl
    BACKEND = "compiled"
except ImportError:
    _impl = _fallback
    BACKEND = "python"

fsum_prefix = _impl.fsum_prefix
fsum_suffix = _impl.fsum_suffix
fsum_convolve = _impl.fsum_convolve
almost_multipliers = _impl.almost_multipliers
trig_eval = _impl.trig_eval

__all__ = [
    "BACKEND",
    "fsum_prefix",
    "fsum_suffix",
    "fsum_convolve",
    "almost_multipliers",
    "trig_eval",
]
