"""Compiled 4-clique kernel.

Works on a degree-ordered orientation of the graph: vertices are relabelled
by rank (degree, then value) and each edge points from the lower to the
higher rank. Every 4-clique is then found exactly once, from its lowest-rank
vertex, and out-lists stay short even around the high-degree hubs.
"""

import numpy as np
from numba import njit


def vertex_index(vertices: np.ndarray, values: np.ndarray) -> np.ndarray:
    """Positions of ``values`` (all present) in the sorted ``vertices`` array.

    Uniform buckets over the value range narrow each lookup to a few
    entries, which beats a plain binary search on large graphs.
    """
    lo = int(vertices[0])
    span = int(vertices[-1]) - lo + 1
    shift = max(0, (span // max(1, vertices.size)).bit_length())
    edges = lo + (np.arange((span >> shift) + 2, dtype=np.int64) << shift)
    bucket_start = np.searchsorted(vertices, edges).astype(np.int64)
    return _bucket_lookup(vertices, bucket_start, lo, shift, values)


@njit(cache=True)
def _bucket_lookup(vertices, bucket_start, lo, shift, values):
    out = np.empty(values.size, dtype=np.int64)
    for i in range(values.size):
        v = values[i]
        b = (v - lo) >> shift
        a, z = bucket_start[b], bucket_start[b + 1]
        while a < z:
            mid = (a + z) >> 1
            if vertices[mid] < v:
                a = mid + 1
            else:
                z = mid
        out[i] = a
    return out


def orient_by_degree(offsets: np.ndarray, nbr_index: np.ndarray):
    """Return (rank_to_vertex, out_offsets, out_targets) with targets as ranks."""
    nv = offsets.size - 1
    deg = np.diff(offsets)
    rank_to_vertex = np.argsort(deg, kind="stable")
    rank = np.empty(nv, dtype=np.int64)
    rank[rank_to_vertex] = np.arange(nv, dtype=np.int64)
    src = rank[np.repeat(np.arange(nv, dtype=np.int64), deg)]
    dst = rank[nbr_index]
    up = src < dst
    key = src[up] * nv + dst[up]
    del src, dst, up
    key.sort()
    out_src = key // nv
    out_targets = key % nv
    out_offsets = np.zeros(nv + 1, dtype=np.int64)
    np.cumsum(np.bincount(out_src, minlength=nv), out=out_offsets[1:])
    return rank_to_vertex, out_offsets, out_targets


@njit(cache=True)
def _find(arr, lo, hi, x):
    end = hi
    while lo < hi:
        mid = (lo + hi) >> 1
        if arr[mid] < x:
            lo = mid + 1
        else:
            hi = mid
    return lo < end and arr[lo] == x


@njit(cache=True)
def oriented_four_cliques(out_offsets, out_targets):
    """4-cliques as rows of ranks (a, b, c, d) with a < b < c < d."""
    nv = out_offsets.size - 1
    cap = 64
    out = np.empty((cap, 4), dtype=np.int64)
    cnt = 0
    maxdeg = 0
    for i in range(nv):
        deg = out_offsets[i + 1] - out_offsets[i]
        if deg > maxdeg:
            maxdeg = deg
    cand = np.empty(maxdeg + 1, dtype=np.int64)
    for a in range(nv):
        alo, ahi = out_offsets[a], out_offsets[a + 1]
        if ahi - alo < 3:
            continue
        for p in range(alo, ahi):
            b = out_targets[p]
            blo, bhi = out_offsets[b], out_offsets[b + 1]
            # common out-neighbours of a and b (all ranked above b):
            # scan the shorter list, binary-search the longer
            nc = 0
            if ahi - (p + 1) <= bhi - blo:
                for i in range(p + 1, ahi):
                    x = out_targets[i]
                    if _find(out_targets, blo, bhi, x):
                        cand[nc] = x
                        nc += 1
            else:
                for j in range(blo, bhi):
                    x = out_targets[j]
                    if _find(out_targets, p + 1, ahi, x):
                        cand[nc] = x
                        nc += 1
            for s in range(nc):
                c = cand[s]
                clo, chi = out_offsets[c], out_offsets[c + 1]
                for t in range(s + 1, nc):
                    d = cand[t]
                    if _find(out_targets, clo, chi, d):
                        if cnt == cap:
                            cap *= 2
                            grown = np.empty((cap, 4), dtype=np.int64)
                            grown[:cnt] = out[:cnt]
                            out = grown
                        out[cnt, 0] = a
                        out[cnt, 1] = b
                        out[cnt, 2] = c
                        out[cnt, 3] = d
                        cnt += 1
    return out[:cnt]
