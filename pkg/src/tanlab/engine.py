"""Exact-cover search engines over quarter-cell bitmasks.

Two interchangeable engines run the identical depth-first search (same
traversal order, same results): a pure-Python reference using big-int masks,
and a numba-compiled kernel over numpy arrays.  The kernel releases the GIL,
so candidate-level thread pools scale.

Selection: TANLAB_ENGINE = auto | numba | python (default auto, which uses
numba when importable and falls back to python otherwise).
"""

from __future__ import annotations

import os
import warnings

_ENV_VAR = "TANLAB_ENGINE"
_numba_mod = None
_numba_failed = False


def engine_name(override: str | None = None) -> str:
    choice = override or os.environ.get(_ENV_VAR, "auto")
    if choice not in ("auto", "numba", "python"):
        raise ValueError(f"unknown engine {choice!r}")
    if choice == "python":
        return "python"
    if _load_numba() is not None:
        return "numba"
    if choice == "numba":
        raise RuntimeError("numba engine requested but numba is unavailable")
    return "python"


def _load_numba():
    global _numba_mod, _numba_failed
    if _numba_mod is None and not _numba_failed:
        try:
            from . import _kernels_numba

            _numba_mod = _kernels_numba
        except ImportError as exc:  # pragma: no cover - depends on environment
            _numba_failed = True
            warnings.warn(f"numba kernels unavailable ({exc}); using python engine")
    return _numba_mod


def build_candidate_index(n_cells: int, masks: list[int]) -> list[list[int]]:
    """For each cell, ascending indices of the placements covering it."""
    cand: list[list[int]] = [[] for _ in range(n_cells)]
    for p, m in enumerate(masks):
        mm = m
        while mm:
            low = mm & -mm
            cand[low.bit_length() - 1].append(p)
            mm ^= low
    return cand


def search_python(
    n_cells: int,
    masks: list[int],
    group_of: list[int],
    group_mult: list[int],
    find_all: bool,
    cap: int,
) -> list[tuple[int, ...]]:
    full = (1 << n_cells) - 1
    cand = build_candidate_index(n_cells, masks)
    rem = list(group_mult)
    chosen: list[int] = []
    sols: list[tuple[int, ...]] = []

    def dfs(covered: int) -> bool:
        free = full & ~covered
        c = (free & -free).bit_length() - 1
        for p in cand[c]:
            m = masks[p]
            if m & covered:
                continue
            g = group_of[p]
            if rem[g] == 0:
                continue
            nxt = covered | m
            if nxt == full:
                sols.append(tuple(chosen) + (p,))
                if not find_all:
                    return True
                continue
            rem[g] -= 1
            chosen.append(p)
            stop = dfs(nxt)
            chosen.pop()
            rem[g] += 1
            if stop:
                return True
        return False

    if n_cells:
        dfs(0)
    return sols


def search_numba(
    n_cells: int,
    masks: list[int],
    group_of: list[int],
    group_mult: list[int],
    find_all: bool,
    cap: int,
) -> list[tuple[int, ...]]:
    import numpy as np

    mod = _load_numba()
    if mod is None:  # pragma: no cover - guarded by engine_name
        raise RuntimeError("numba engine unavailable")
    if n_cells > 62:
        raise ValueError("numba engine limited to 62 cells")
    k_total = sum(group_mult)
    cand = build_candidate_index(n_cells, masks)
    cand_start = np.zeros(n_cells + 1, np.int64)
    for c in range(n_cells):
        cand_start[c + 1] = cand_start[c] + len(cand[c])
    cand_flat = np.fromiter(
        (p for c in range(n_cells) for p in cand[c]), np.int64, count=int(cand_start[-1])
    )
    masks_arr = np.array(masks, np.int64)
    group_arr = np.array(group_of, np.int64)
    mult_arr = np.array(group_mult, np.int64)
    while True:
        out = np.zeros((cap, max(k_total, 1)), np.int64)
        n = mod.cover_search(
            n_cells, masks_arr, group_arr, cand_start, cand_flat, mult_arr,
            find_all, cap, out,
        )
        if n <= cap:
            return [tuple(int(x) for x in out[r]) for r in range(n)]
        cap *= 4  # overflowed the solution buffer; retry larger


def search(
    n_cells: int,
    masks: list[int],
    group_of: list[int],
    group_mult: list[int],
    find_all: bool,
    cap: int = 1 << 16,
    engine: str | None = None,
) -> list[tuple[int, ...]]:
    name = engine_name(engine)
    fn = search_numba if name == "numba" else search_python
    return fn(n_cells, masks, group_of, group_mult, find_all, cap)
