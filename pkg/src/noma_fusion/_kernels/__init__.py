"""Decision-kernel backend selection.

The hot loop (batched ML decisions) has two interchangeable implementations:
a compiled Cython extension (``_core``) and a vectorized numpy fallback
(``_fallback``).  The compiled one is preferred when importable; the
environment variable ``NOMA_FUSION_BACKEND`` forces a choice:

    compiled | c | cython    require the extension, fail if missing
    python | numpy | fallback  force the pure-Python kernel
    (unset) | auto            compiled if available, else fallback
"""

import os

_CHOICE = os.environ.get("NOMA_FUSION_BACKEND", "auto").strip().lower() or "auto"


def _load():
    if _CHOICE in ("compiled", "c", "cython"):
        from . import _core

        return _core, "compiled"
    if _CHOICE in ("python", "numpy", "fallback"):
        from . import _fallback

        return _fallback, "python"
    if _CHOICE != "auto":
        raise ValueError(f"unrecognized NOMA_FUSION_BACKEND={_CHOICE!r}")
    try:
        from . import _core

        return _core, "compiled"
    except ImportError:
        from . import _fallback

        return _fallback, "python"


_impl, _name = _load()

decide = _impl.decide
scaled_sums = _impl.scaled_sums


def backend_name() -> str:
    """Name of the kernel backend active in this process."""
    return _name


def available_backends() -> dict:
    """All importable kernel implementations, keyed by backend name."""
    from . import _fallback

    found = {"python": _fallback}
    try:
        from . import _core

        found["compiled"] = _core
    except ImportError:
        pass
    return found
