"""Kernel backend selection.

The compiled extension is preferred when it imports cleanly; the pure Python
fallback is always available.  Set QIDENT_BACKEND=py or QIDENT_BACKEND=c to
force a choice (forcing "c" raises if the extension was never built).
"""

import os

_forced = os.environ.get("QIDENT_BACKEND")

if _forced == "py":
    from . import _fallback as kernel
elif _forced == "c":
    from . import _speedups as kernel  # type: ignore[no-redef]
elif _forced:
    raise ImportError(f"QIDENT_BACKEND must be 'py' or 'c', not {_forced!r}")
else:
    try:
        from . import _speedups as kernel  # type: ignore[no-redef]
    except ImportError:
        from . import _fallback as kernel

BACKEND = kernel.BACKEND_NAME


def backend_name():
    """Name of the arithmetic kernel in use: 'c' or 'python'."""
    return BACKEND
