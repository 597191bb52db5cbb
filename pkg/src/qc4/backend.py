"""Selects between the compiled and pure-Python kernel backends.

The compiled extension is optional; when it is missing everything still
works through ``_pykern`` at interpreted speed.  ``QC4_BACKEND`` overrides
the default ("compiled" or "python").
"""

import os

from . import _pykern

try:
    from . import _ckern
except ImportError:
    _ckern = None

COMPILED = "compiled"
PYTHON = "python"
ENV_VAR = "QC4_BACKEND"


def available_backends() -> tuple[str, ...]:
    """Backends usable in this installation, preferred first."""
    if _ckern is not None:
        return (COMPILED, PYTHON)
    return (PYTHON,)


def default_backend() -> str:
    """Environment override if set, else the fastest available backend."""
    name = os.environ.get(ENV_VAR)
    if name is not None:
        return resolve(name)
    return available_backends()[0]


def resolve(name: str | None) -> str:
    """Validate a backend name; None means the default."""
    if name is None:
        return default_backend()
    if name not in (COMPILED, PYTHON):
        raise ValueError(f"unknown backend {name!r}")
    if name == COMPILED and _ckern is None:
        raise ValueError("compiled backend requested but the extension is not built")
    return name


def kernels(name: str):
    """The kernel module for a resolved backend name."""
    return _ckern if name == COMPILED else _pykern
