"""Pair-compatibility graph for a fixed n and 4-clique enumeration.

For fixed n, vertices are candidate elements and k -- l is an edge when
k*l + n is a perfect square. Edges are discovered from factorisations
d*q = m^2 - n with the smaller factor d walked over [1, k_max]; each
pair is also joined to its regular extension k + l + 2m.
"""

from __future__ import annotations

import bisect
from collections.abc import Iterator, Mapping
from dataclasses import dataclass

import numpy as np

from .arith import is_square, sqrt_residues, sqrt_residues_array
from .model import verify_dn

__all__ = [
    "SearchBounds",
    "PairGraph",
    "regular_extend",
    "build_graph",
    "find_quadruples",
    "four_cliques",
]

# int64 fast path is only taken when every intermediate fits with margin
_FAST_ROOT_LIMIT = 1 << 30
_FAST_VALUE_LIMIT = 1 << 60
# packed (lo, hi) keys need width**2 < 2**63
_PACK_LIMIT = 3 * 10**9


@dataclass(frozen=True)
class SearchBounds:
    m_max: int
    k_max: int
    l_max: int

    def __post_init__(self):
        if min(self.m_max, self.k_max, self.l_max) < 1:
            raise ValueError(f"bounds must be positive: {self}")
        if self.k_max > self.l_max:
            raise ValueError(f"k_max ({self.k_max}) exceeds l_max ({self.l_max})")


class _AdjacencyView(Mapping):
    def __init__(self, graph: "PairGraph"):
        self._g = graph

    def __getitem__(self, v):
        return self._g.neighbors(v, strict=True)

    def __iter__(self):
        return (int(v) for v in self._g.vertices)

    def __len__(self):
        return len(self._g.vertices)


@dataclass(frozen=True, eq=False)
class PairGraph:
    """CSR adjacency: ``neighbor_array[offsets[i]:offsets[i+1]]`` are the
    sorted neighbours of ``vertices[i]``; ``root_array`` runs parallel to it."""

    n: int
    vertices: np.ndarray
    offsets: np.ndarray
    neighbor_array: np.ndarray
    root_array: np.ndarray

    @classmethod
    def from_edges(cls, n: int, edges) -> "PairGraph":
        """Build from an iterable of (k, l, root); duplicates are merged."""
        canon = {}
        for k, l, root in edges:
            k, l = int(k), int(l)
            if k == l or k == 0 or l == 0:
                raise ValueError(f"invalid edge ({k}, {l})")
            canon[(min(k, l), max(k, l))] = int(root)
        directed = sorted([(k, l, t) for (k, l), t in canon.items()] +
                          [(l, k, t) for (k, l), t in canon.items()])
        return cls._from_sorted_directed(n, directed)

    @classmethod
    def _from_sorted_directed(cls, n, directed) -> "PairGraph":
        wide = any(abs(v) >= _FAST_VALUE_LIMIT for e in directed for v in e)
        dtype = object if wide else np.int64
        src = np.array([e[0] for e in directed], dtype=dtype)
        dst = np.array([e[1] for e in directed], dtype=dtype)
        roots = np.array([e[2] for e in directed], dtype=dtype)
        return cls._from_arrays(n, src, dst, roots)

    @classmethod
    def _from_arrays(cls, n, src, dst, roots) -> "PairGraph":
        # src/dst/roots are sorted by (src, dst) with no duplicates
        if src.size == 0:
            empty = np.empty(0, dtype=np.int64)
            return cls(n, empty, np.zeros(1, dtype=np.int64), empty, empty)
        change = np.ones(src.size, dtype=bool)
        change[1:] = src[1:] != src[:-1]
        starts = np.flatnonzero(change)
        vertices = src[starts]
        offsets = np.append(starts, src.size).astype(np.int64)
        return cls(n, vertices, offsets, dst, roots)

    # -- queries -----------------------------------------------------------

    def _index(self, v) -> int | None:
        i = int(np.searchsorted(self.vertices, v))
        if i < len(self.vertices) and self.vertices[i] == v:
            return i
        return None

    def neighbors(self, v, strict: bool = False) -> list[int]:
        i = self._index(v)
        if i is None:
            if strict:
                raise KeyError(v)
            return []
        return [int(x) for x in self.neighbor_array[self.offsets[i]:self.offsets[i + 1]]]

    def root(self, k, l) -> int | None:
        """Root of k*l + n if (k, l) is an edge, else None."""
        i = self._index(k)
        if i is None:
            return None
        lo, hi = int(self.offsets[i]), int(self.offsets[i + 1])
        j = lo + int(np.searchsorted(self.neighbor_array[lo:hi], l))
        if j < hi and self.neighbor_array[j] == l:
            return int(self.root_array[j])
        return None

    def has_edge(self, k, l) -> bool:
        return self.root(k, l) is not None

    @property
    def adjacency(self) -> Mapping:
        return _AdjacencyView(self)

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return len(self.neighbor_array) // 2

    def edges(self) -> Iterator[tuple[int, int, int]]:
        """Undirected edges (k, l, root) with k < l."""
        for i, v in enumerate(self.vertices):
            lo, hi = self.offsets[i], self.offsets[i + 1]
            for w, t in zip(self.neighbor_array[lo:hi], self.root_array[lo:hi]):
                if v < w:
                    yield int(v), int(w), int(t)

    def induced(self, keep) -> "PairGraph":
        keep = set(int(v) for v in keep)
        return PairGraph.from_edges(self.n, ((k, l, t) for k, l, t in self.edges()
                                             if k in keep and l in keep))


def regular_extend(k: int, l: int, n: int) -> set[int]:
    """Elements e with {k, l, e} a regular D(n)-triple: e = k + l +- 2*sqrt(kl + n)."""
    if k == l or k == 0 or l == 0:
        raise ValueError(f"need distinct nonzero elements, got ({k}, {l})")
    root = is_square(k * l + n)
    if root is None:
        raise ValueError(f"{k}*{l} + {n} is not a perfect square")
    return {e for e in (k + l + 2 * root, k + l - 2 * root) if e != 0 and e != k and e != l}


def _fits_fast_path(n: int, bounds: SearchBounds) -> bool:
    return (bounds.m_max < _FAST_ROOT_LIMIT and bounds.k_max < _FAST_ROOT_LIMIT
            and bounds.l_max < _FAST_VALUE_LIMIT and abs(n) < _FAST_VALUE_LIMIT)


def build_graph(n: int, bounds: SearchBounds, *, wide: bool = False) -> PairGraph:
    """Build the pair graph for ``n`` within ``bounds``.

    ``wide=True`` forces the arbitrary-precision path, which is otherwise
    used only when the int64 path could overflow.
    """
    if n == 0:
        raise ValueError("n = 0 is not searched by the graph method")
    if wide or not _fits_fast_path(n, bounds):
        return _build_graph_wide(n, bounds)
    return _build_graph_fast(n, bounds)


def _build_graph_fast(n: int, bounds: SearchBounds) -> PairGraph:
    m_max, l_max = bounds.m_max, bounds.l_max
    ks, ls, ts = [], [], []
    for d in range(1, bounds.k_max + 1):
        rs = sqrt_residues_array(n, d)
        if rs.size == 0:
            continue
        steps = np.arange(m_max // d + 1, dtype=np.int64) * d
        m = (steps[:, None] + rs[None, :]).ravel()
        m = m[m <= m_max]
        val = m * m - n
        nz = val != 0
        m, val = m[nz], val[nz]
        q = val // d
        keep = (np.abs(q) <= l_max) & (q != d)
        m, q = m[keep], q[keep]
        if m.size == 0:
            continue
        for sign in (1, -1):
            k = np.full(m.size, sign * d, dtype=np.int64)
            l = sign * q
            ks.append(k)
            ls.append(l)
            ts.append(m)
            # regular extension e = k + l + 2m: k*e + n = (k+m)^2, l*e + n = (l+m)^2
            e = k + l + 2 * m
            ok = (e != 0) & (e != k) & (e != l) & (np.abs(e) <= l_max)
            ks += [k[ok], l[ok]]
            ls += [e[ok], e[ok]]
            ts += [np.abs(k[ok] + m[ok]), np.abs(l[ok] + m[ok])]
    if not ks:
        return PairGraph._from_arrays(n, np.empty(0, np.int64), None, None)
    k = np.concatenate(ks)
    l = np.concatenate(ls)
    t = np.concatenate(ts)
    del ks, ls, ts
    lo = np.minimum(k, l)
    hi = np.maximum(k, l)
    del k, l
    if 2 * l_max + 1 <= _PACK_LIMIT:
        return _csr_from_packed_pairs(n, lo, hi, l_max)
    order = np.lexsort((hi, lo))
    lo, hi, t = lo[order], hi[order], t[order]
    uniq = np.ones(lo.size, dtype=bool)
    uniq[1:] = (lo[1:] != lo[:-1]) | (hi[1:] != hi[:-1])
    lo, hi, t = lo[uniq], hi[uniq], t[uniq]
    src = np.concatenate([lo, hi])
    dst = np.concatenate([hi, lo])
    roots = np.concatenate([t, t])
    del lo, hi, t
    order = np.lexsort((dst, src))
    return PairGraph._from_arrays(n, src[order], dst[order], roots[order])


def _csr_from_packed_pairs(n, lo, hi, l_max) -> PairGraph:
    # one int64 key per pair sorts far faster than a two-column lexsort
    width = 2 * l_max + 1
    key = np.unique((lo + l_max) * width + (hi + l_max))
    lo, hi = key // width, key % width
    del key
    key = np.concatenate([lo * width + hi, hi * width + lo])
    del lo, hi
    key.sort()
    src = key // width - l_max
    dst = key % width - l_max
    del key
    return PairGraph._from_arrays(n, src, dst, _exact_roots(src * dst + n))


def _exact_roots(vals: np.ndarray) -> np.ndarray:
    """Vectorised isqrt for int64 values known to be perfect squares."""
    r = np.sqrt(vals.astype(np.float64)).astype(np.int64)
    for _ in range(2):
        r -= r * r > vals
        r += (r + 1) * (r + 1) <= vals
    if not np.array_equal(r * r, vals):
        raise AssertionError("edge product is not a perfect square")
    return r


def _build_graph_wide(n: int, bounds: SearchBounds) -> PairGraph:
    m_max, l_max = bounds.m_max, bounds.l_max
    edges = {}

    def add(k, l, t):
        if k != l and k != 0 and l != 0 and abs(k) <= l_max and abs(l) <= l_max:
            edges[(min(k, l), max(k, l))] = t

    for d in range(1, bounds.k_max + 1):
        for r in sqrt_residues(n, d):
            for m in range(r, m_max + 1, d):
                val = m * m - n
                if val == 0:
                    continue
                q = val // d
                if abs(q) > l_max or q == d:
                    continue
                for k, l in ((d, q), (-d, -q)):
                    add(k, l, m)
                    e = k + l + 2 * m
                    if e != 0 and e != k and e != l and abs(e) <= l_max:
                        add(k, e, abs(k + m))
                        add(l, e, abs(l + m))
    return PairGraph.from_edges(n, ((k, l, t) for (k, l), t in edges.items()))


def _four_cliques_python(vertices, offsets, nbrs) -> list[tuple[int, int, int, int]]:
    """Same scheme as the compiled kernel, on Python ints."""
    vs = [int(v) for v in vertices]
    adj = [[int(x) for x in nbrs[offsets[i]:offsets[i + 1]]] for i in range(len(vs))]
    index = {v: i for i, v in enumerate(vs)}

    def contains(lst, x, lo=0):
        pos = bisect.bisect_left(lst, x, lo)
        return pos < len(lst) and lst[pos] == x

    out = []
    for i, u in enumerate(vs):
        nu = adj[i]
        ustart = bisect.bisect_right(nu, u)
        for a in range(ustart, len(nu)):
            v = nu[a]
            nv_ = adj[index[v]]
            vstart = bisect.bisect_right(nv_, v)
            if len(nu) - (a + 1) <= len(nv_) - vstart:
                cand = [w for w in nu[a + 1:] if contains(nv_, w, vstart)]
            else:
                cand = [w for w in nv_[vstart:] if contains(nu, w, a + 1)]
            for p, w in enumerate(cand):
                nw = adj[index[w]]
                for x in cand[p + 1:]:
                    if contains(nw, x):
                        out.append((u, v, w, x))
    return out


def four_cliques(graph: PairGraph, *, compiled: bool | None = None) -> list[tuple[int, int, int, int]]:
    """All 4-cliques as ascending 4-tuples (unverified, unordered)."""
    if graph.num_vertices == 0:
        return []
    if compiled is None:
        compiled = graph.vertices.dtype == np.int64
    if compiled:
        from ._kernels import orient_by_degree, oriented_four_cliques, vertex_index

        nbr_index = vertex_index(graph.vertices, graph.neighbor_array)
        rank_to_vertex, out_offsets, out_targets = orient_by_degree(graph.offsets, nbr_index)
        del nbr_index
        rows = oriented_four_cliques(out_offsets, out_targets)
        if rows.size == 0:
            return []
        quads = np.sort(graph.vertices[rank_to_vertex[rows]], axis=1)
        return [tuple(int(x) for x in row) for row in quads]
    return _four_cliques_python(graph.vertices, graph.offsets, graph.neighbor_array)


def find_quadruples(graph: PairGraph) -> list[tuple[int, int, int, int]]:
    """Every D(n)-quadruple in the graph, each re-verified, sorted lexicographically."""
    found = set(four_cliques(graph))
    for quad in found:
        witness = verify_dn(quad, graph.n)
        if not witness:
            raise AssertionError(f"graph edge invariant broken: {witness}")
    return sorted(found)
