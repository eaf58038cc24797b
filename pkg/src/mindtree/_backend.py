"""Kernel backend selection.

The compiled ``_kernels`` extension is preferred; the pure-Python
``_pykernels`` module is used when the extension is missing. Both expose
``postorder``, ``leaf_counts``, ``balance`` and ``reduce_sum`` with
identical results.
"""

from . import _pykernels

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

_active = _compiled if _compiled is not None else _pykernels


def name():
    """Name of the active backend: ``"compiled"`` or ``"python"``."""
    return "compiled" if _active is _compiled else "python"


def available():
    """Backends importable in this environment."""
    return ("compiled", "python") if _compiled is not None else ("python",)


def use(backend):
    """Switch the active backend; returns the previous backend name."""
    global _active
    previous = name()
    if backend == "compiled":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not built")
        _active = _compiled
    elif backend == "python":
        _active = _pykernels
    else:
        raise ValueError(f"unknown backend {backend!r}")
    return previous


def postorder(left, right, root):
    return _active.postorder(left, right, root)


def leaf_counts(left, right):
    return _active.leaf_counts(left, right)


def reduce_sum(left, right, values):
    return _active.reduce_sum(left, right, values)


def balance(left, right):
    return _active.balance(left, right)
