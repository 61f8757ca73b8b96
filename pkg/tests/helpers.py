"""Shared graph builders for the test suite."""

from __future__ import annotations

import random

from peelbound.embed import PlaneGraph, build_plane_graph, connect_components
from peelbound.gen import gen_random_triangulation


def ring_chain(sizes: list[int], connected: bool = True) -> PlaneGraph:
    """Nested rings with per-ring vertex counts (innermost first).

    Same layout as the uniform nested-cycle generator: inner lone vertex 0,
    then the rings, then an outer lone vertex; ring walks pair up with their
    neighbours so the annuli nest.  With ``connected`` the components are
    joined by face-internal edges (adds no cycles).
    """
    k = len(sizes)
    n = sum(sizes) + 2
    edges: list[tuple[int, int]] = []
    rotation: list[list[int]] = [[] for _ in range(n)]
    base = 1
    for size in sizes:
        first = len(edges)
        for j in range(size):
            edges.append((base + j, base + (j + 1) % size))
        for j in range(size):
            rotation[base + j] = [first + (j - 1) % size, first + j]
        base += size
    faces: list[list[int]] = [[1, 2 * k]]
    for i in range(1, k):
        faces.append([2 * (i - 1), 2 * i + 1])
    faces.append([2 * (k - 1), 2 * k + 1])
    g = build_plane_graph(n, edges, rotation, faces=faces)
    return connect_components(g) if connected else g


def relabel(g: PlaneGraph, perm: list[int]) -> PlaneGraph:
    """Rename vertex v to perm[v]; edge, dart and walk ids are unchanged."""
    edges = []
    for e in range(g.m):
        u, v = g.edge_endpoints(e)
        edges.append((perm[u], perm[v]))
    rotation: list[list[int]] = [[] for _ in range(g.n)]
    for v in range(g.n):
        rotation[perm[v]] = g.rotation_edges(v)
    faces = None if g.connected else [list(grp) for grp in g.face_walks]
    meta = dict(g.meta) if g.meta else None
    return build_plane_graph(g.n, edges, rotation, faces=faces, meta=meta)


def thin_random_triangulation(n: int, seed: int, frac: float = 0.35) -> PlaneGraph:
    """Connected simple plane graph: a seeded triangulation minus a random
    batch of non-bridge edges (embedding kept, faces merge)."""
    tri = gen_random_triangulation(n, seed)
    rng = random.Random((seed << 8) ^ 0xBEEF)
    adj: list[set[int]] = [set() for _ in range(n)]
    for e in range(tri.m):
        u, v = tri.edge_endpoints(e)
        adj[u].add(v)
        adj[v].add(u)
    alive = [True] * tri.m
    order = list(range(tri.m))
    rng.shuffle(order)
    goal = int(frac * tri.m)
    removed = 0
    for e in order:
        if removed >= goal:
            break
        u, v = tri.edge_endpoints(e)
        adj[u].discard(v)
        adj[v].discard(u)
        if _reachable(adj, u, v):
            alive[e] = False
            removed += 1
        else:
            adj[u].add(v)
            adj[v].add(u)
    new_id = {}
    edges = []
    for e in range(tri.m):
        if alive[e]:
            new_id[e] = len(edges)
            edges.append(tri.edge_endpoints(e))
    rotation = [
        [new_id[e] for e in tri.rotation_edges(v) if alive[e]] for v in range(n)
    ]
    return build_plane_graph(n, edges, rotation)


def _reachable(adj: list[set[int]], src: int, dst: int) -> bool:
    seen = {src}
    stack = [src]
    while stack:
        v = stack.pop()
        if v == dst:
            return True
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return False


def is_bipartite(g: PlaneGraph) -> bool:
    color = [-1] * g.n
    for s in range(g.n):
        if color[s] >= 0:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            v = stack.pop()
            for d in g.rotation_darts(v):
                w = g.head(d)
                if color[w] < 0:
                    color[w] = color[v] ^ 1
                    stack.append(w)
                elif color[w] == color[v]:
                    return False
    return True
