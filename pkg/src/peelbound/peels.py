"""Layer decomposition, face augmentation, and the tree of peels.

Given a connected plane graph and a root vertex, vertices split into layers:
layer 0 is the root, layer i+1 is whatever sits on the merged outer region
once layers 0..i are deleted.  Layers come out of a single BFS over the
vertex/face incidence structure.  The augmentation adds, inside every face,
edges from each boundary occurrence of a non-minimum-layer vertex to one
minimum-layer vertex of that face, after which every non-root vertex has an
edge pointing one layer down.  The tree of peels has one node per connected
component of "layers >= i", storing the component's outer boundary; it is
built by walking component boundaries along faces, consuming each
layer-crossing dart exactly once.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .embed import PlaneGraph, _Builder, _finish_graph, radial_bfs

__all__ = [
    "Augmentation",
    "PeelContext",
    "TreeOfPeels",
    "augment",
    "build_tree_of_peels",
    "choose_root",
    "compute_layers",
    "peel_count_for_outerface",
]


# ---------------------------------------------------------------------------
# Root selection
# ---------------------------------------------------------------------------


def choose_root(g: PlaneGraph) -> int:
    """Lowest-index vertex that is not a cutvertex (exists in any connected graph)."""
    if not g.connected:
        raise ValueError("root selection requires a connected graph")
    if g.n <= 2:
        return 0
    is_cut = _articulation_flags(g)
    for v in range(g.n):
        if not is_cut[v]:
            return v
    raise AssertionError("every connected graph has a non-cutvertex")


def _articulation_flags(g: PlaneGraph) -> bytearray:
    """Cutvertex flags via iterative lowpoint DFS (multigraph-safe)."""
    n = g.n
    disc = array("i", [-1] * n)
    low = array("i", [0] * n)
    flags = bytearray(n)
    darts_at = [g.rotation_darts(v) for v in range(g.n)]
    timer = 0
    for start in range(n):
        if disc[start] >= 0:
            continue
        root_children = 0
        # stack entries: (vertex, incoming edge id, next dart index)
        stack = [(start, -1, 0)]
        disc[start] = low[start] = timer
        timer += 1
        while stack:
            v, in_edge, idx = stack[-1]
            if idx < len(darts_at[v]):
                stack[-1] = (v, in_edge, idx + 1)
                d = darts_at[v][idx]
                e = d >> 1
                w = g.head(d)
                if w == v or e == in_edge:
                    continue  # loop, or the tree edge we came in on
                if disc[w] < 0:
                    disc[w] = low[w] = timer
                    timer += 1
                    if v == start:
                        root_children += 1
                    stack.append((w, e, 0))
                else:
                    if disc[w] < low[v]:
                        low[v] = disc[w]
            else:
                stack.pop()
                if stack:
                    p = stack[-1][0]
                    if low[v] < low[p]:
                        low[p] = low[v]
                    if p != start and low[v] >= disc[p]:
                        flags[p] = 1
        if root_children >= 2:
            flags[start] = 1
    return flags


# ---------------------------------------------------------------------------
# Layers
# ---------------------------------------------------------------------------


@dataclass
class PeelContext:
    """A connected plane graph with its root and per-vertex layer numbers."""

    G: PlaneGraph
    root: int
    layer: np.ndarray  # int64, layer[root] == 0

    @property
    def depth(self) -> int:
        return int(self.layer.max()) if self.G.n else 0


def compute_layers(g: PlaneGraph, root: int) -> PeelContext:
    """Layer numbers from one vertex/face BFS (layer = half the BFS distance).

    The root should not be a cutvertex, so that layer 1 forms a single
    component; the layer numbers themselves do not depend on that.
    """
    if not g.connected:
        raise ValueError("layer computation requires a connected graph")
    if not (0 <= root < g.n):
        raise ValueError("root out of range")
    rd = radial_bfs(g, source_vertex=root)
    return PeelContext(G=g, root=root, layer=rd.vertex_dist // 2)


def peel_count_for_outerface(g: PlaneGraph, face: int) -> int:
    """Number of peels when ``face`` is the outerface."""
    if not g.connected:
        raise ValueError("peel counting requires a connected graph")
    rd = radial_bfs(g, source_face=face)
    return int(max((rd.vertex_dist + 1) // 2)) if g.n else 0


# ---------------------------------------------------------------------------
# Augmentation
# ---------------------------------------------------------------------------


@dataclass
class Augmentation:
    """Original graph plus down-edges so every non-root vertex descends.

    Edges with id >= ``original_edge_count`` were added by the augmentation.
    ``out_dart[v]`` is the smallest dart at v whose head lies one layer down
    (-1 for the root); following out_darts walks layer by layer to the root.
    """

    G: PlaneGraph
    H: PlaneGraph
    root: int
    layer: np.ndarray
    original_edge_count: int
    out_dart: np.ndarray

    def descends(self, d: int) -> bool:
        return bool(self.layer[self.H.origin(d)] == self.layer[self.H.head(d)] + 1)


def augment(ctx: PeelContext) -> Augmentation:
    """Add in-face edges to a minimum-layer vertex of every face.

    Inside face F with boundary walk d_0..d_{t-1}, pick the first walk vertex
    w whose layer is minimal on F; every other boundary occurrence at a
    strictly larger layer contributes one new edge to w, spliced into its own
    corner and stacked at w's corner.  Duplicates with existing edges are
    allowed (they cost at most deg(F) per face and change no distances).
    """
    g = ctx.G
    layer = ctx.layer.tolist()
    b = _Builder.from_graph(g)
    rn = b.rot_next
    eu, ev = b.eu, b.ev

    walk_flat = g.walk_flat
    walk_indptr = g.walk_indptr
    for f in range(g.dart_walk_count):
        darts = walk_flat[walk_indptr[f] : walk_indptr[f + 1]].tolist()
        t = len(darts)
        verts = [ev[d >> 1] if d & 1 else eu[d >> 1] for d in darts]
        lays = [layer[v] for v in verts]
        lmin = min(lays)
        j = lays.index(lmin)
        w = verts[j]
        anchor = darts[j - 1] ^ 1
        # Insert in cyclic walk order starting after the hub occurrence: each
        # chord cuts the face in two, and only the side holding the hub corner
        # keeps the occurrences that are still to come.
        for k in range(1, t):
            p = j + k
            if p >= t:
                p -= t
            if lays[p] == lmin:
                continue
            e = b._new_edge(verts[p], w)
            nd = 2 * e
            ndt = nd + 1
            prev_slot = darts[p - 1] ^ 1
            rn[prev_slot] = nd
            rn[nd] = darts[p]
            rn[ndt] = rn[anchor]
            rn[anchor] = ndt

    h = _finish_graph(b, meta=g.meta)
    assert h.connected, "augmentation must stay connected"

    m2 = 2 * h.m
    lay_np = ctx.layer
    orig = np.empty(m2, dtype=np.int64)
    head = np.empty(m2, dtype=np.int64)
    eu_np = np.frombuffer(h.eu, dtype=np.int32).astype(np.int64)
    ev_np = np.frombuffer(h.ev, dtype=np.int32).astype(np.int64)
    orig[0::2] = eu_np
    orig[1::2] = ev_np
    head[0::2] = ev_np
    head[1::2] = eu_np
    descend = lay_np[orig] == lay_np[head] + 1
    out_dart = np.full(g.n, m2, dtype=np.int64)
    cand = np.nonzero(descend)[0]
    np.minimum.at(out_dart, orig[cand], cand)
    missing = np.nonzero(out_dart == m2)[0]
    out_dart[out_dart == m2] = -1
    assert list(missing) == [ctx.root], (
        f"vertices without a descending edge after augmentation: {missing[:10]}"
    )

    return Augmentation(
        G=g,
        H=h,
        root=ctx.root,
        layer=ctx.layer,
        original_edge_count=g.m,
        out_dart=out_dart,
    )


# ---------------------------------------------------------------------------
# Tree of peels
# ---------------------------------------------------------------------------


@dataclass
class TreeOfPeels:
    """Components of "layers >= i", each storing its outer-boundary vertices.

    Node 0 is the root (stores only the graph root); node ids increase with
    depth and, within a depth, with the dart id that discovered them.
    """

    parent: list[int]
    depth: list[int]
    stored: list[list[int]]
    node_of: array  # per-vertex node id
    children: list[list[int]] = field(default_factory=list)
    weight: list[int] = field(default_factory=list)
    above: list[int] = field(default_factory=list)       # vertices at strict ancestors
    subtree_weight: list[int] = field(default_factory=list)

    @property
    def node_count(self) -> int:
        return len(self.parent)

    def is_interior(self, node: int) -> bool:
        return self.parent[node] >= 0 and bool(self.children[node])

    def interior_nodes(self) -> list[int]:
        return [x for x in range(self.node_count) if self.is_interior(x)]

    def tree_distance(self, a: int, b: int) -> int:
        da, db = self.depth[a], self.depth[b]
        dist = 0
        while da > db:
            a = self.parent[a]
            da -= 1
            dist += 1
        while db > da:
            b = self.parent[b]
            db -= 1
            dist += 1
        while a != b:
            a = self.parent[a]
            b = self.parent[b]
            dist += 2
        return dist

    def is_descendant(self, node: int, ancestor: int) -> bool:
        while self.depth[node] > self.depth[ancestor]:
            node = self.parent[node]
        return node == ancestor

    def to_records(self) -> list[dict]:
        return [
            {
                "node": i,
                "parent": self.parent[i],
                "depth": self.depth[i],
                "stored": list(self.stored[i]),
            }
            for i in range(self.node_count)
        ]


def build_tree_of_peels(aug: Augmentation) -> TreeOfPeels:
    """Trace component boundaries to build the tree (linear in graph size).

    For each not-yet-consumed dart that descends from layer i+1 to layer i,
    walk the face of the depth-(i+1) component that looks down on the lower
    layers: advance by rotating past (and consuming) descending darts,
    otherwise stepping along the boundary.  Visited origins form the node's
    stored set; its parent is the node storing the lower endpoint.
    """
    h = aug.H
    layer = aug.layer.tolist()
    rn = h.rot_next
    eu, ev = h.eu, h.ev
    m2 = 2 * h.m

    def origin(d: int) -> int:
        return ev[d >> 1] if d & 1 else eu[d >> 1]

    lay_np = aug.layer
    m2_ar = np.arange(m2, dtype=np.int64)
    orig_np = np.empty(m2, dtype=np.int64)
    head_np = np.empty(m2, dtype=np.int64)
    eu_np = np.frombuffer(h.eu, dtype=np.int32).astype(np.int64)
    ev_np = np.frombuffer(h.ev, dtype=np.int32).astype(np.int64)
    orig_np[0::2] = eu_np
    orig_np[1::2] = ev_np
    head_np[0::2] = ev_np
    head_np[1::2] = eu_np
    desc_mask = lay_np[orig_np] == lay_np[head_np] + 1
    desc_darts = m2_ar[desc_mask]
    # process by origin layer, then dart id (stable sort keeps id order)
    by_layer = desc_darts[np.argsort(lay_np[orig_np[desc_darts]], kind="stable")]

    consumed = bytearray(m2)
    node_of = array("i", [-1] * h.n)
    node_of[aug.root] = 0
    parent: list[int] = [-1]
    depth: list[int] = [0]
    stored: list[list[int]] = [[aug.root]]

    is_desc = desc_mask.tolist()

    for d0 in by_layer.tolist():
        if consumed[d0]:
            continue
        y = origin(d0)
        z = origin(d0 ^ 1)
        pz = node_of[z]
        assert pz >= 0, "parent node must exist before its children"
        nid = len(parent)
        parent.append(pz)
        depth.append(layer[y])
        verts: list[int] = []

        consumed[d0] = 1
        cur = rn[d0]
        while cur != d0 and is_desc[cur]:
            consumed[cur] = 1
            cur = rn[cur]
        if cur == d0:
            # every dart at y descends: isolated boundary vertex
            assert node_of[y] == -1
            node_of[y] = nid
            stored.append([y])
            continue

        q0 = cur
        q = q0
        lay_here = layer[y]
        while True:
            v = origin(q)
            if node_of[v] != nid:
                assert node_of[v] == -1, "walk crossed into another component"
                assert layer[v] == lay_here, "boundary walk left its layer"
                node_of[v] = nid
                verts.append(v)
            nxt = rn[q ^ 1]
            while is_desc[nxt]:
                consumed[nxt] = 1
                nxt = rn[nxt]
            q = nxt
            if q == q0:
                break
        stored.append(verts)

    tree = TreeOfPeels(parent=parent, depth=depth, stored=stored, node_of=node_of)
    _finish_tree(tree)
    assert sum(tree.weight) == h.n, "stored sets must partition the vertices"
    return tree


def _finish_tree(tree: TreeOfPeels) -> None:
    k = tree.node_count
    tree.children = [[] for _ in range(k)]
    for x in range(1, k):
        tree.children[tree.parent[x]].append(x)
    tree.weight = [len(s) for s in tree.stored]
    tree.above = [0] * k
    for x in range(1, k):  # parents precede children by construction
        p = tree.parent[x]
        tree.above[x] = tree.above[p] + tree.weight[p]
    tree.subtree_weight = list(tree.weight)
    for x in range(k - 1, 0, -1):
        tree.subtree_weight[tree.parent[x]] += tree.subtree_weight[x]
