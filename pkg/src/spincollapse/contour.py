"""Marching-squares contour extraction with deterministic polyline chaining.

Extracts the zero level set of a scalar field sampled on a rectangular grid
and chains the per-cell segments into connected polylines.  Saddle cells are
disambiguated by the cell-center average.  All iteration orders are fixed so
the output is bit-reproducible.
"""

from __future__ import annotations

import numpy as np

# edge keys: ("H", i, j) joins grid nodes (i, j)-(i+1, j)
#            ("V", i, j) joins grid nodes (i, j)-(i, j+1)

EdgeKey = tuple[str, int, int]


def _edge_point(kind: str, i: int, j: int, vals: np.ndarray,
                xs: np.ndarray, ys: np.ndarray) -> tuple[float, float]:
    if kind == "H":
        va, vb = vals[i, j], vals[i + 1, j]
        t = va / (va - vb)
        return (xs[i] + t * (xs[i + 1] - xs[i]), ys[j])
    va, vb = vals[i, j], vals[i, j + 1]
    t = va / (va - vb)
    return (xs[i], ys[j] + t * (ys[j + 1] - ys[j]))


def marching_squares(values: np.ndarray, xs: np.ndarray, ys: np.ndarray
                     ) -> list[list[tuple[float, float]]]:
    """Polylines of the zero level set of values[i, j] = F(xs[i], ys[j]).

    Returns a list of polylines, each a list of (x, y) vertices.  Open
    polylines end on the grid boundary; closed loops repeat no vertex.
    """
    vals = np.array(values, dtype=float)
    vals[vals == 0.0] = 1e-30  # break exact-zero corners deterministically
    pos = vals > 0.0

    cross_h = pos[:-1, :] != pos[1:, :]      # H edge (i, j), i < n-1
    cross_v = pos[:, :-1] != pos[:, 1:]      # V edge (i, j), j < m-1

    cell_any = (cross_h[:, :-1] | cross_h[:, 1:] |
                cross_v[:-1, :] | cross_v[1:, :])
    cells = np.argwhere(cell_any)

    segments: list[tuple[EdgeKey, EdgeKey]] = []
    for i, j in cells:
        bottom = ("H", i, j) if cross_h[i, j] else None
        top = ("H", i, j + 1) if cross_h[i, j + 1] else None
        left = ("V", i, j) if cross_v[i, j] else None
        right = ("V", i + 1, j) if cross_v[i + 1, j] else None
        crossed = [e for e in (bottom, right, top, left) if e is not None]
        if len(crossed) == 2:
            segments.append((crossed[0], crossed[1]))
        elif len(crossed) == 4:
            center = 0.25 * (vals[i, j] + vals[i + 1, j] +
                             vals[i, j + 1] + vals[i + 1, j + 1])
            if (center > 0.0) == pos[i, j]:
                # corners (i+1,j) and (i,j+1) are the isolated pair
                segments.append((bottom, right))
                segments.append((top, left))
            else:
                segments.append((bottom, left))
                segments.append((top, right))

    # adjacency between crossed edges
    adj: dict[EdgeKey, list[EdgeKey]] = {}
    for a, b in segments:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)

    points = {e: _edge_point(e[0], e[1], e[2], vals, xs, ys) for e in adj}

    visited: set[EdgeKey] = set()
    polylines: list[list[tuple[float, float]]] = []

    def walk(start: EdgeKey) -> list[EdgeKey]:
        chain = [start]
        visited.add(start)
        prev = None
        node = start
        while True:
            nxt = None
            for nb in adj[node]:
                if nb != prev and nb not in visited:
                    nxt = nb
                    break
            if nxt is None:
                break
            chain.append(nxt)
            visited.add(nxt)
            prev, node = node, nxt
        return chain

    keys = sorted(adj.keys())
    # open chains first: start from degree-1 edges
    for e in keys:
        if e not in visited and len(adj[e]) == 1:
            polylines.append([points[k] for k in walk(e)])
    # remaining are closed loops
    for e in keys:
        if e not in visited:
            chain = walk(e)
            poly = [points[k] for k in chain]
            if len(chain) > 2:
                poly.append(points[chain[0]])  # close the loop
            polylines.append(poly)
    return polylines
