"""Kernel backend selection.

The compiled ``_ckernels`` extension is used when it imports; otherwise the
pure-Python ``_pykernels`` module serves the same functions. Set
``PERMGEN_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import logging
import os

from . import _pykernels

logger = logging.getLogger(__name__)

_NAMES = ("orbit", "minimal_block", "tuple_orbit_size", "closure_size", "schreier_sims")


def _load():
    if os.environ.get("PERMGEN_PURE_PYTHON", "") not in ("", "0"):
        return _pykernels
    try:
        from . import _ckernels
    except ImportError as exc:  # pragma: no cover - depends on the build
        logger.debug("compiled kernels unavailable (%s); using pure Python", exc)
        return _pykernels
    return _ckernels


_impl = _load()
BACKEND: str = _impl.BACKEND

orbit = _impl.orbit
minimal_block = _impl.minimal_block
tuple_orbit_size = _impl.tuple_orbit_size
closure_size = _impl.closure_size
schreier_sims = _impl.schreier_sims


def backends():
    """All importable kernel modules, pure Python first."""
    mods = [_pykernels]
    try:
        from . import _ckernels
    except ImportError:  # pragma: no cover
        pass
    else:
        mods.append(_ckernels)
    return mods
