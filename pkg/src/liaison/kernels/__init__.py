"""Hot reduction kernels.

The compiled extension is used when it was built; otherwise the pure Python
module.  Set ``LIAISON_PURE_PYTHON=1`` to force the fallback, or call
:func:`set_backend` at runtime (the benchmark does this).
"""

import os

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

BACKENDS = {"python": _pykernels}
if _ckernels is not None:
    BACKENDS["cython"] = _ckernels

BACKEND = None
normal_form = spoly = divides = make_reducer = None


def set_backend(name):
    global BACKEND, normal_form, spoly, divides, make_reducer
    try:
        mod = BACKENDS[name]
    except KeyError:
        raise ValueError(f"kernel backend {name!r} unavailable; have {sorted(BACKENDS)}") from None
    normal_form, spoly, divides = mod.normal_form, mod.spoly, mod.divides
    make_reducer = mod.make_reducer
    BACKEND = name


if _ckernels is not None and not os.environ.get("LIAISON_PURE_PYTHON"):
    set_backend("cython")
else:
    set_backend("python")
