"""Kernel backend selection.

The compiled extension (``_fast``, Cython) and the pure-Python module
(``_pure``) implement the same two kernels with identical tie-breaking and
float accumulation order.  The compiled backend is preferred when it is
importable; set the environment variable ``FOGCACHE_PURE_KERNELS`` to any
non-empty value to force the pure backend.  The compiled clique kernel uses
single-word 64-bit masks, so clique calls fall back to pure Python for
graphs with more than 64 vertices either way.
"""

from __future__ import annotations

import os
from typing import Sequence

from . import _pure

_FAST = None
if not os.environ.get("FOGCACHE_PURE_KERNELS"):
    try:
        from . import _fast as _FAST  # type: ignore[no-redef]
    except ImportError:
        _FAST = None

BACKEND: str = "compiled" if _FAST is not None else "pure"

_CLIQUE_FAST_MAX_VERTICES = 64


def maximal_clique_masks(
    num_vertices: int, neighbor_masks: Sequence[int], table_masks: Sequence[int]
) -> list[int]:
    """Dispatch the maximal-clique kernel to the active backend."""
    if _FAST is not None and num_vertices <= _CLIQUE_FAST_MAX_VERTICES:
        return _FAST.maximal_clique_masks(num_vertices, list(neighbor_masks), list(table_masks))
    return _pure.maximal_clique_masks(num_vertices, neighbor_masks, table_masks)


def greedy_restart_mwis(
    conflict_masks: Sequence[int], weights: Sequence[float]
) -> tuple[list[int], float]:
    """Dispatch the restart-greedy kernel to the active backend."""
    if _FAST is not None:
        return _FAST.greedy_restart_mwis(list(conflict_masks), list(weights))
    return _pure.greedy_restart_mwis(conflict_masks, weights)
