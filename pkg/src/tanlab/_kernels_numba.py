"""Numba-compiled inner loop of the exact-cover search.

Mirrors engine.search_python exactly: same candidate order, same traversal,
same first solution.  Masks fit in int64 because no region here exceeds 62
quarter-cells.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def cover_search(n_cells, masks, group_of, cand_start, cand_flat, group_mult,
                 find_all, cap, out):
    full = (np.int64(1) << np.int64(n_cells)) - np.int64(1)
    if full == 0:
        return 0
    k_total = out.shape[1]
    rem = group_mult.copy()
    pos = np.zeros(k_total, np.int64)
    end = np.zeros(k_total, np.int64)
    chosen = np.zeros(k_total, np.int64)
    covs = np.zeros(k_total + 1, np.int64)
    depth = 0
    nfound = 0
    pos[0] = cand_start[0]
    end[0] = cand_start[1]
    while True:
        if pos[depth] < end[depth]:
            p = cand_flat[pos[depth]]
            pos[depth] += 1
            m = masks[p]
            if (m & covs[depth]) != 0:
                continue
            g = group_of[p]
            if rem[g] == 0:
                continue
            cov = covs[depth] | m
            if cov == full:
                if nfound < cap:
                    for t in range(depth):
                        out[nfound, t] = chosen[t]
                    out[nfound, depth] = p
                nfound += 1
                if not find_all:
                    return nfound
                if nfound > cap:
                    return nfound
                continue
            chosen[depth] = p
            rem[g] -= 1
            depth += 1
            covs[depth] = cov
            c = 0
            while (cov >> c) & 1:
                c += 1
            pos[depth] = cand_start[c]
            end[depth] = cand_start[c + 1]
        else:
            if depth == 0:
                return nfound
            depth -= 1
            rem[group_of[chosen[depth]]] += 1
