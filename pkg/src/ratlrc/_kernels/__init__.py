"""Kernel backend selection.

The hot numeric loops live in two interchangeable modules: `_core`
(compiled Cython extension) and `pure` (plain Python).  The compiled one
is preferred when importable; RATLRC_PURE=1 forces the fallback.  Both
expose the same functions over a FieldTables object.
"""

import os

from . import pure

if os.environ.get("RATLRC_PURE"):
    impl = pure
else:
    try:
        from . import _core as impl  # type: ignore[no-redef]
    except ImportError:
        impl = pure

BACKEND = "compiled" if impl is not pure else "pure"


def backends() -> dict:
    """Importable kernel modules keyed by name."""
    out = {"pure": pure}
    try:
        from . import _core
        out["compiled"] = _core
    except ImportError:
        pass
    return out
