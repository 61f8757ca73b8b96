"""Plane graphs with a fixed combinatorial (spherical) embedding.

A graph is stored as a rotation system over *darts*: edge ``e`` with endpoints
``(eu[e], ev[e])`` owns darts ``2e`` (eu -> ev) and ``2e + 1`` (ev -> eu).
``rot_next[d]`` is the next dart with the same origin, in slot order around
that vertex.  Faces are traced with ``face_next(d) = rot_next[twin(d)]``; the
traced face lies on a fixed side of every dart of its orbit (we read rotations
as clockwise, so the face is on the left, but the chirality is internal and
never observable).

Disconnected graphs need extra data: a face of the sphere may be bounded by
several closed walks (and may contain isolated vertices), and the grouping of
walks into faces is genuinely geometric information, so it is part of the
input.  Connected graphs have exactly one walk per face and the grouping is
implied.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

__all__ = [
    "GraphFormatError",
    "PlaneGraph",
    "RadialDistance",
    "build_plane_graph",
    "trace_faces",
    "radial_bfs",
    "connect_components",
    "insert_edge_in_face",
    "triangulate_preserving_embedding",
]


class GraphFormatError(ValueError):
    """Raised when an input document fails structural validation."""


# ---------------------------------------------------------------------------
# Core container
# ---------------------------------------------------------------------------


class PlaneGraph:
    """Immutable plane multigraph with traced faces.

    Construct through :func:`build_plane_graph` (validating) or the internal
    builder; do not mutate the arrays after construction -- operations that
    change the graph return a new instance.
    """

    __slots__ = (
        "n",
        "m",
        "eu",
        "ev",
        "rot_next",
        "rot_first",
        "walk_indptr",
        "walk_flat",
        "walk_of_dart",
        "lone_walk_vertex",
        "face_walks",
        "face_of_walk",
        "face_of_lone_vertex",
        "component_of",
        "component_count",
        "simple",
        "connected",
        "triangulated",
        "meta",
        "_csr_cache",
    )

    def __init__(self) -> None:  # populated by _finish_graph
        self.meta: dict = {}
        self._csr_cache = None

    # -- dart helpers ------------------------------------------------------

    def origin(self, d: int) -> int:
        return self.ev[d >> 1] if d & 1 else self.eu[d >> 1]

    def head(self, d: int) -> int:
        return self.eu[d >> 1] if d & 1 else self.ev[d >> 1]

    def dart_count(self) -> int:
        return 2 * self.m

    def rotation_darts(self, v: int) -> list[int]:
        """Darts with origin v, in slot order (possibly empty)."""
        first = self.rot_first[v]
        if first < 0:
            return []
        out = [first]
        d = self.rot_next[first]
        while d != first:
            out.append(d)
            d = self.rot_next[d]
        return out

    def rotation_edges(self, v: int) -> list[int]:
        return [d >> 1 for d in self.rotation_darts(v)]

    def degree(self, v: int) -> int:
        return len(self.rotation_darts(v))

    def edge_endpoints(self, e: int) -> tuple[int, int]:
        return (self.eu[e], self.ev[e])

    def edges(self) -> list[tuple[int, int]]:
        return [(self.eu[e], self.ev[e]) for e in range(self.m)]

    # -- walks and faces ---------------------------------------------------

    @property
    def walk_count(self) -> int:
        return len(self.walk_indptr) - 1 + len(self.lone_walk_vertex)

    @property
    def dart_walk_count(self) -> int:
        return len(self.walk_indptr) - 1

    def walk(self, w: int) -> list[int]:
        """Darts of walk w in trace order; [] for an isolated-vertex walk."""
        nd = self.dart_walk_count
        if w >= nd:
            return []
        return list(self.walk_flat[self.walk_indptr[w] : self.walk_indptr[w + 1]])

    def walk_vertices(self, w: int) -> list[int]:
        nd = self.dart_walk_count
        if w >= nd:
            return [self.lone_walk_vertex[w - nd]]
        return [self.origin(d) for d in self.walk(w)]

    @property
    def face_count(self) -> int:
        return len(self.face_walks)

    def face_darts(self, f: int) -> list[int]:
        out: list[int] = []
        for w in self.face_walks[f]:
            out.extend(self.walk(w))
        return out

    def face_degree(self, f: int) -> int:
        return len(self.face_darts(f))

    def face_vertices(self, f: int) -> list[int]:
        """Distinct vertices on face f, in boundary-walk discovery order."""
        seen: set[int] = set()
        out: list[int] = []
        nd = self.dart_walk_count
        for w in self.face_walks[f]:
            for v in self.walk_vertices(w):
                if v not in seen:
                    seen.add(v)
                    out.append(v)
        return out

    def face_of_dart(self, d: int) -> int:
        return self.face_of_walk[self.walk_of_dart[d]]

    def faces_of_vertex(self, v: int) -> list[int]:
        """Distinct incident faces in rotation order (isolated: its host face)."""
        if self.rot_first[v] < 0:
            return [self.face_of_lone_vertex[v]]
        seen: set[int] = set()
        out: list[int] = []
        for d in self.rotation_darts(v):
            f = self.face_of_dart(d)
            if f not in seen:
                seen.add(f)
                out.append(f)
        return out

    def first_face_of_vertex(self, v: int) -> int:
        return self.faces_of_vertex(v)[0]

    # -- adjacency ----------------------------------------------------------

    def adjacency_csr(self) -> tuple[np.ndarray, np.ndarray]:
        """(indptr, neighbors) with neighbors grouped by origin, edge order.

        Parallel edges and loops are kept as-is (a loop contributes its own
        vertex twice), which is what BFS wants.
        """
        if self._csr_cache is None:
            m2 = 2 * self.m
            orig = np.empty(m2, dtype=np.int64)
            eu = np.frombuffer(self.eu, dtype=np.int32).astype(np.int64)
            ev = np.frombuffer(self.ev, dtype=np.int32).astype(np.int64)
            orig[0::2] = eu
            orig[1::2] = ev
            heads = np.empty(m2, dtype=np.int64)
            heads[0::2] = ev
            heads[1::2] = eu
            order = np.argsort(orig, kind="stable")
            indptr = np.zeros(self.n + 1, dtype=np.int64)
            np.cumsum(np.bincount(orig, minlength=self.n), out=indptr[1:])
            self._csr_cache = (indptr, heads[order])
        return self._csr_cache

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return (
            f"PlaneGraph(n={self.n}, m={self.m}, faces={self.face_count}, "
            f"connected={self.connected}, simple={self.simple})"
        )


# ---------------------------------------------------------------------------
# Builder (internal): growable rotation system with O(1) corner splices
# ---------------------------------------------------------------------------


class _Builder:
    """Mutable rotation system used by generators and edge-insertion ops."""

    def __init__(self, n: int):
        self.n = n
        self.eu = array("i")
        self.ev = array("i")
        self.rot_next = array("i")
        self.rot_first = array("i", [-1] * n)

    @classmethod
    def from_graph(cls, g: PlaneGraph) -> "_Builder":
        b = cls.__new__(cls)
        b.n = g.n
        b.eu = array("i", g.eu)
        b.ev = array("i", g.ev)
        b.rot_next = array("i", g.rot_next)
        b.rot_first = array("i", g.rot_first)
        return b

    def new_vertex(self) -> int:
        self.rot_first.append(-1)
        self.n += 1
        return self.n - 1

    def _new_edge(self, u: int, v: int) -> int:
        e = len(self.eu)
        self.eu.append(u)
        self.ev.append(v)
        self.rot_next.append(-1)
        self.rot_next.append(-1)
        return e

    def add_chord(self, prev_u: int, at_u: int, prev_v: int, at_v: int) -> int:
        """Insert edge between two corners of one face.

        A corner is named by the walk dart that leaves it (``at_u``) plus the
        walk dart that enters it (``prev_u``); the new dart is spliced into the
        slot between ``twin(prev_u)`` and ``at_u``.  Returns the edge id.
        """
        rn = self.rot_next
        assert rn[prev_u ^ 1] == at_u and rn[prev_v ^ 1] == at_v, "not a corner"
        u = self.ev[prev_u >> 1] if prev_u & 1 == 0 else self.eu[prev_u >> 1]
        v = self.ev[prev_v >> 1] if prev_v & 1 == 0 else self.eu[prev_v >> 1]
        e = self._new_edge(u, v)
        rn[prev_u ^ 1] = 2 * e
        rn[2 * e] = at_u
        rn[prev_v ^ 1] = 2 * e + 1
        rn[2 * e + 1] = at_v
        return e

    def add_edge_at_corner_to_isolated(self, prev_u: int, at_u: int, v: int) -> int:
        """Insert edge from a corner to an isolated vertex inside the face."""
        rn = self.rot_next
        assert rn[prev_u ^ 1] == at_u, "not a corner"
        assert self.rot_first[v] < 0, "target vertex is not isolated"
        u = self.ev[prev_u >> 1] if prev_u & 1 == 0 else self.eu[prev_u >> 1]
        e = self._new_edge(u, v)
        rn[prev_u ^ 1] = 2 * e
        rn[2 * e] = at_u
        rn[2 * e + 1] = 2 * e + 1
        self.rot_first[v] = 2 * e + 1
        return e

    def add_isolated_pair(self, u: int, v: int) -> int:
        """Edge between two isolated vertices (used when seeding generators)."""
        assert self.rot_first[u] < 0 and self.rot_first[v] < 0
        e = self._new_edge(u, v)
        self.rot_next[2 * e] = 2 * e
        self.rot_next[2 * e + 1] = 2 * e + 1
        self.rot_first[u] = 2 * e
        self.rot_first[v] = 2 * e + 1
        return e

    def set_rotation(self, v: int, darts: Sequence[int]) -> None:
        """Install a full rotation for v (darts in slot order)."""
        if not darts:
            self.rot_first[v] = -1
            return
        self.rot_first[v] = darts[0]
        for a, bnext in zip(darts, list(darts[1:]) + [darts[0]]):
            self.rot_next[a] = bnext


# ---------------------------------------------------------------------------
# Walk tracing and finishing
# ---------------------------------------------------------------------------


def _trace_walks(rot_next: array, m2: int) -> tuple[array, array, array]:
    """Orbit decomposition of face_next; returns (indptr, flat, walk_of_dart)."""
    walk_of = array("i", bytes(4 * m2)) if m2 else array("i")
    for i in range(m2):
        walk_of[i] = -1
    flat = array("i")
    indptr = array("i", [0])
    rn = rot_next
    wid = 0
    append = flat.append
    for d0 in range(m2):
        if walk_of[d0] >= 0:
            continue
        d = d0
        while True:
            walk_of[d] = wid
            append(d)
            d = rn[d ^ 1]
            if d == d0:
                break
        indptr.append(len(flat))
        wid += 1
    return indptr, flat, walk_of


def _components(n: int, eu: array, ev: array) -> tuple[array, int]:
    """Connected-component labels via numpy frontier BFS (edges undirected)."""
    comp = array("i", bytes(4 * n)) if n else array("i")
    for i in range(n):
        comp[i] = -1
    if n == 0:
        return comp, 0
    comp_np = np.frombuffer(comp, dtype=np.int32)
    m = len(eu)
    if m:
        eu_np = np.frombuffer(eu, dtype=np.int32).astype(np.int64)
        ev_np = np.frombuffer(ev, dtype=np.int32).astype(np.int64)
        orig = np.concatenate([eu_np, ev_np])
        dest = np.concatenate([ev_np, eu_np])
        order = np.argsort(orig, kind="stable")
        dest = dest[order]
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(orig, minlength=n), out=indptr[1:])
    label = 0
    for seed in range(n):
        if comp_np[seed] >= 0:
            continue
        comp_np[seed] = label
        if m:
            frontier = np.array([seed], dtype=np.int64)
            while frontier.size:
                nbrs = _csr_gather(indptr, dest, frontier)
                nbrs = nbrs[comp_np[nbrs] < 0]
                if nbrs.size == 0:
                    break
                frontier = np.unique(nbrs)
                comp_np[frontier] = label
        label += 1
    return comp, label


def _csr_gather(indptr: np.ndarray, flat: np.ndarray, idx: np.ndarray) -> np.ndarray:
    """Concatenate flat[indptr[i]:indptr[i+1]] for i in idx."""
    counts = indptr[idx + 1] - indptr[idx]
    total = int(counts.sum())
    if total == 0:
        return np.empty(0, dtype=flat.dtype)
    starts = np.repeat(indptr[idx], counts)
    ends_excl = np.repeat(np.cumsum(counts) - counts, counts)
    pos = starts + (np.arange(total, dtype=np.int64) - ends_excl)
    return flat[pos]


def _finish_graph(
    b: _Builder,
    face_grouping: Optional[Sequence[Sequence[int]]] = None,
    meta: Optional[dict] = None,
) -> PlaneGraph:
    """Trace walks, resolve faces, validate Euler count, freeze the graph."""
    g = PlaneGraph()
    g.n = b.n
    g.m = len(b.eu)
    g.eu = b.eu
    g.ev = b.ev
    g.rot_next = b.rot_next
    g.rot_first = b.rot_first
    g.meta = dict(meta) if meta else {}
    g._csr_cache = None

    m2 = 2 * g.m
    indptr, flat, walk_of = _trace_walks(b.rot_next, m2)
    g.walk_indptr = indptr
    g.walk_flat = flat
    g.walk_of_dart = walk_of
    g.lone_walk_vertex = array(
        "i", [v for v in range(g.n) if b.rot_first[v] < 0]
    )

    comp, ncomp = _components(g.n, b.eu, b.ev)
    g.component_of = comp
    g.component_count = ncomp
    g.connected = ncomp <= 1

    n_dart_walks = len(indptr) - 1
    n_walks = n_dart_walks + len(g.lone_walk_vertex)

    if face_grouping is None:
        if not g.connected and g.n > 0:
            raise GraphFormatError(
                "disconnected graph requires an explicit face grouping"
            )
        face_walks = [(w,) for w in range(n_walks)]
    else:
        seen = array("i", [0] * n_walks)
        face_walks = []
        for group in face_grouping:
            group = tuple(int(w) for w in group)
            if not group:
                raise GraphFormatError("empty face in grouping")
            for w in group:
                if not (0 <= w < n_walks):
                    raise GraphFormatError(f"face grouping references walk {w}")
                if seen[w]:
                    raise GraphFormatError(f"walk {w} grouped twice")
                seen[w] = 1
            face_walks.append(group)
        if any(s == 0 for s in seen):
            raise GraphFormatError("face grouping does not cover all walks")

    g.face_walks = face_walks
    face_of_walk = array("i", bytes(4 * n_walks)) if n_walks else array("i")
    for f, group in enumerate(face_walks):
        for w in group:
            face_of_walk[w] = f
    g.face_of_walk = face_of_walk
    g.face_of_lone_vertex = {
        v: face_of_walk[n_dart_walks + i] for i, v in enumerate(g.lone_walk_vertex)
    }

    # Sphere check: n - m + f = 1 + c covers every component at once.
    if g.n > 0 and g.n - g.m + len(face_walks) != 1 + ncomp:
        raise GraphFormatError(
            "rotation system / face grouping is not spherical: "
            f"n={g.n} m={g.m} f={len(face_walks)} components={ncomp}"
        )

    # Simplicity: no loops, no parallel edges.
    simple = True
    pairs: set[tuple[int, int]] = set()
    for e in range(g.m):
        u, v = b.eu[e], b.ev[e]
        if u == v:
            simple = False
            break
        key = (u, v) if u < v else (v, u)
        if key in pairs:
            simple = False
            break
        pairs.add(key)
    g.simple = simple
    g.triangulated = bool(
        g.m > 0
        and all(
            len(group) == 1
            and indptr[group[0] + 1] - indptr[group[0]] == 3
            for group in face_walks
        )
        and not g.lone_walk_vertex
    )
    return g


# ---------------------------------------------------------------------------
# Public construction
# ---------------------------------------------------------------------------


def build_plane_graph(
    n: int,
    edges: Sequence[Sequence[int]],
    rotation: Sequence[Sequence[int]],
    faces: Optional[Sequence[Sequence[int]]] = None,
    flags: Optional[dict] = None,
    meta: Optional[dict] = None,
) -> PlaneGraph:
    """Validate and freeze a plane graph given edge-index rotations.

    ``rotation[v]`` lists incident edge ids in slot order; a loop's id appears
    twice.  ``faces`` groups walk ids (in trace discovery order) into faces and
    is required exactly when the graph is disconnected.  ``flags`` entries
    (simple/connected/triangulated), if given, are checked against reality.
    """
    if n < 0:
        raise GraphFormatError("negative vertex count")
    if len(rotation) != n:
        raise GraphFormatError(f"rotation has {len(rotation)} rows, expected {n}")

    b = _Builder(n)
    for e, pair in enumerate(edges):
        if len(pair) != 2:
            raise GraphFormatError(f"edge {e} is not a pair")
        u, v = int(pair[0]), int(pair[1])
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"edge {e} endpoint out of range")
        b._new_edge(u, v)

    m = len(b.eu)
    slot_used = array("i", [0] * m)  # occurrences consumed per edge
    for v in range(n):
        darts: list[int] = []
        for e in rotation[v]:
            e = int(e)
            if not (0 <= e < m):
                raise GraphFormatError(f"rotation of {v} references edge {e}")
            u0, v0 = b.eu[e], b.ev[e]
            if u0 == v0:
                if v != u0:
                    raise GraphFormatError(f"loop {e} listed at wrong vertex {v}")
                if slot_used[e] == 0:
                    darts.append(2 * e)
                elif slot_used[e] == 1:
                    darts.append(2 * e + 1)
                else:
                    raise GraphFormatError(f"loop {e} appears more than twice")
                slot_used[e] += 1
            else:
                if v == u0:
                    d = 2 * e
                elif v == v0:
                    d = 2 * e + 1
                else:
                    raise GraphFormatError(f"edge {e} listed at non-endpoint {v}")
                if slot_used[e] & (1 << (d & 1)):
                    raise GraphFormatError(
                        f"edge {e} appears twice in rotation of {v}"
                    )
                slot_used[e] |= 1 << (d & 1)
                darts.append(d)
        b.set_rotation(v, darts)

    for e in range(m):
        u0, v0 = b.eu[e], b.ev[e]
        ok = slot_used[e] == 2 if u0 == v0 else slot_used[e] == 3
        if not ok:
            raise GraphFormatError(f"edge {e} missing from some rotation")

    g = _finish_graph(b, face_grouping=faces, meta=meta)

    if flags:
        computed = {
            "simple": g.simple,
            "connected": g.connected,
            "triangulated": g.triangulated,
        }
        for key, val in flags.items():
            if key in computed and bool(val) != computed[key]:
                raise GraphFormatError(
                    f"flag {key}={val} contradicts computed {computed[key]}"
                )
    return g


def trace_faces(g: PlaneGraph) -> list[list[int]]:
    """Boundary walks in discovery order (darts; [] rows are lone vertices).

    The walks are precomputed at build time; this accessor exists so callers
    can rely on the numbering contract (ascending smallest dart id, then
    isolated vertices ascending).
    """
    return [g.walk(w) for w in range(g.walk_count)]


# ---------------------------------------------------------------------------
# Radial (vertex-face incidence) BFS
# ---------------------------------------------------------------------------


@dataclass
class RadialDistance:
    """BFS distances in the vertex/face incidence graph of a plane graph.

    Distances alternate parity: from a vertex source, vertices sit at even
    distance (layer = dist/2); from a face source, vertices sit at odd
    distance (peel = (dist+1)/2).
    """

    source_kind: str  # "vertex" | "face"
    source: int
    vertex_dist: np.ndarray
    face_dist: np.ndarray

    def vertex_layers(self) -> np.ndarray:
        assert self.source_kind == "vertex"
        return self.vertex_dist // 2

    def vertex_peels(self) -> np.ndarray:
        assert self.source_kind == "face"
        return (self.vertex_dist + 1) // 2


def _radial_arrays(g: PlaneGraph):
    """CSR views used by the alternating BFS (built per call; cheap)."""
    m2 = 2 * g.m
    if m2:
        dart_orig = np.empty(m2, dtype=np.int64)
        eu = np.frombuffer(g.eu, dtype=np.int32).astype(np.int64)
        ev = np.frombuffer(g.ev, dtype=np.int32).astype(np.int64)
        dart_orig[0::2] = eu
        dart_orig[1::2] = ev
        # vertex -> darts
        v_order = np.argsort(dart_orig, kind="stable")
        v_indptr = np.zeros(g.n + 1, dtype=np.int64)
        np.cumsum(np.bincount(dart_orig, minlength=g.n), out=v_indptr[1:])
        # dart -> face
        walk_of = np.frombuffer(g.walk_of_dart, dtype=np.int32).astype(np.int64)
        face_of_walk = np.frombuffer(g.face_of_walk, dtype=np.int32).astype(np.int64)
        dart_face = face_of_walk[walk_of]
        # face -> darts (walk_flat is grouped by walk; faces group walks)
        flat = np.frombuffer(g.walk_flat, dtype=np.int32).astype(np.int64)
        f_order_parts: list[np.ndarray] = []
        f_counts = np.zeros(g.face_count, dtype=np.int64)
        indptr = g.walk_indptr
        for f, group in enumerate(g.face_walks):
            cnt = 0
            for w in group:
                if w < g.dart_walk_count:
                    f_order_parts.append(flat[indptr[w] : indptr[w + 1]])
                    cnt += indptr[w + 1] - indptr[w]
            f_counts[f] = cnt
        f_flat = (
            np.concatenate(f_order_parts) if f_order_parts else np.empty(0, np.int64)
        )
        f_indptr = np.zeros(g.face_count + 1, dtype=np.int64)
        np.cumsum(f_counts, out=f_indptr[1:])
    else:
        dart_orig = np.empty(0, dtype=np.int64)
        v_order = np.empty(0, dtype=np.int64)
        v_indptr = np.zeros(g.n + 1, dtype=np.int64)
        dart_face = np.empty(0, dtype=np.int64)
        f_flat = np.empty(0, dtype=np.int64)
        f_indptr = np.zeros(g.face_count + 1, dtype=np.int64)
    return dart_orig, v_order, v_indptr, dart_face, f_flat, f_indptr


def radial_bfs(
    g: PlaneGraph,
    source_vertex: Optional[int] = None,
    source_face: Optional[int] = None,
) -> RadialDistance:
    """BFS over the vertex/face incidence structure from one source.

    Works for disconnected graphs too (the incidence graph of a spherical
    embedding is always connected); raises if some vertex or face is left
    unreached, which indicates a corrupt face grouping.
    """
    if (source_vertex is None) == (source_face is None):
        raise ValueError("exactly one of source_vertex / source_face required")

    dart_orig, v_order, v_indptr, dart_face, f_flat, f_indptr = _radial_arrays(g)
    vdist = np.full(g.n, -1, dtype=np.int64)
    fdist = np.full(g.face_count, -1, dtype=np.int64)

    # lone vertices attach to their host face (tiny counts, plain dicts)
    lone_by_face: dict[int, list[int]] = {}
    for v, f in g.face_of_lone_vertex.items():
        lone_by_face.setdefault(f, []).append(v)

    if source_vertex is not None:
        if not (0 <= source_vertex < g.n):
            raise ValueError("source vertex out of range")
        vdist[source_vertex] = 0
        vfront = np.array([source_vertex], dtype=np.int64)
        ffront = np.empty(0, dtype=np.int64)
        kind, src = "vertex", source_vertex
    else:
        if not (0 <= source_face < g.face_count):
            raise ValueError("source face out of range")
        fdist[source_face] = 0
        ffront = np.array([source_face], dtype=np.int64)
        vfront = np.empty(0, dtype=np.int64)
        kind, src = "face", source_face

    dist = 0
    while vfront.size or ffront.size:
        dist += 1
        if vfront.size:
            # vertices -> their incident faces
            darts = _csr_gather(v_indptr, v_order, vfront)
            cand = dart_face[darts] if darts.size else darts
            lone_faces = [
                g.face_of_lone_vertex[v]
                for v in vfront.tolist()
                if v in g.face_of_lone_vertex
            ]
            if lone_faces:
                cand = np.concatenate([cand, np.array(lone_faces, dtype=np.int64)])
            cand = cand[fdist[cand] < 0] if cand.size else cand
            ffront = np.unique(cand) if cand.size else cand
            fdist[ffront] = dist
            vfront = np.empty(0, dtype=np.int64)
        else:
            # faces -> their incident vertices
            darts = _csr_gather(f_indptr, f_flat, ffront)
            cand = dart_orig[darts] if darts.size else darts
            lone_vs: list[int] = []
            for f in ffront.tolist():
                lone_vs.extend(lone_by_face.get(f, ()))
            if lone_vs:
                cand = np.concatenate([cand, np.array(lone_vs, dtype=np.int64)])
            cand = cand[vdist[cand] < 0] if cand.size else cand
            vfront = np.unique(cand) if cand.size else cand
            vdist[vfront] = dist
            ffront = np.empty(0, dtype=np.int64)

    if g.n and (vdist < 0).any():
        raise GraphFormatError("radial BFS did not reach every vertex")
    if g.face_count and (fdist < 0).any():
        raise GraphFormatError("radial BFS did not reach every face")
    return RadialDistance(kind, src, vdist, fdist)


# ---------------------------------------------------------------------------
# Edge insertion inside a face
# ---------------------------------------------------------------------------


def _corner_of_occurrence(g: PlaneGraph, walk_darts: list[int], pos: int) -> tuple[int, int]:
    """(prev_dart, at_dart) naming the corner before walk position pos."""
    return walk_darts[pos - 1], walk_darts[pos]


def _find_occurrence(g: PlaneGraph, f: int, v: int) -> Optional[tuple[list[int], int]]:
    """First boundary occurrence of v on face f: (walk darts, position)."""
    for w in g.face_walks[f]:
        darts = g.walk(w)
        for i, d in enumerate(darts):
            if g.origin(d) == v:
                return darts, i
    return None


def insert_edge_in_face(g: PlaneGraph, u: int, v: int, face: int) -> PlaneGraph:
    """Return a new graph with edge (u, v) drawn inside the given face.

    Both endpoints must lie on the face (boundary walks or isolated vertices
    grouped into it).  Inserting within one walk splits the face in two;
    inserting across two walks of the same face merges them into one walk.
    When a split face carried additional walks or isolated vertices, they all
    stay with the side whose walk starts at the new u->v dart (the choice is
    free geometrically, so a fixed rule keeps the result deterministic).
    """
    if not (0 <= face < g.face_count):
        raise ValueError("face id out of range")
    b = _Builder.from_graph(g)

    u_iso = g.rot_first[u] < 0 and g.face_of_lone_vertex.get(u) == face
    v_iso = g.rot_first[v] < 0 and g.face_of_lone_vertex.get(v) == face

    if u_iso and v_iso:
        if u == v:
            raise ValueError("cannot add a loop at an isolated vertex")
        b.add_isolated_pair(u, v)
    elif v_iso or u_iso:
        if v_iso:
            a, iso = u, v
        else:
            a, iso = v, u
        occ = _find_occurrence(g, face, a)
        if occ is None:
            raise ValueError(f"vertex {a} is not on face {face}")
        darts, i = occ
        b.add_edge_at_corner_to_isolated(darts[i - 1], darts[i], iso)
    else:
        occ_u = _find_occurrence(g, face, u)
        occ_v = _find_occurrence(g, face, v)
        if occ_u is None or occ_v is None:
            raise ValueError(f"edge endpoints not on face {face}")
        darts_u, i = occ_u
        darts_v, j = occ_v
        if darts_u == darts_v and i == j:
            raise ValueError("cannot add a loop at a single corner")
        b.add_chord(darts_u[i - 1], darts_u[i], darts_v[j - 1], darts_v[j])

    grouping = _regroup_after_insert(g, b, face)
    return _finish_graph(b, face_grouping=grouping, meta=g.meta)


def _regroup_after_insert(
    g: PlaneGraph, b: _Builder, touched_face: int
) -> Optional[list[list[int]]]:
    """Carry the face grouping of g over to the mutated builder.

    Untouched faces keep their walk sets (walk ids are re-derived from any
    member dart).  The touched face is re-assembled from whatever the two new
    darts now lie on; if it split, the extra walks and isolated vertices stay
    with the side of the u->v dart.
    """
    m2_new = 2 * len(b.eu)
    indptr, flat, walk_of = _trace_walks(b.rot_next, m2_new)
    n_dart_walks = len(indptr) - 1
    lone = [v for v in range(b.n) if b.rot_first[v] < 0]
    lone_walk_id = {v: n_dart_walks + i for i, v in enumerate(lone)}
    n_walks = n_dart_walks + len(lone)

    new_c = m2_new - 2  # dart u -> v of the inserted edge
    new_c2 = m2_new - 1

    grouping: list[list[int]] = []
    for f in range(g.face_count):
        if f == touched_face:
            continue
        walks: list[int] = []
        for w in g.face_walks[f]:
            darts = g.walk(w)
            if darts:
                walks.append(int(walk_of[darts[0]]))
            else:
                (vtx,) = g.walk_vertices(w)
                walks.append(lone_walk_id[vtx])
        grouping.append(sorted(set(walks)))

    side_a = int(walk_of[new_c])
    side_b = int(walk_of[new_c2])
    if side_a == side_b:
        # walks merged (or spur to isolated vertex): one face
        group = {side_a}
        for w in g.face_walks[touched_face]:
            darts = g.walk(w)
            if darts:
                group.add(int(walk_of[darts[0]]))
            else:
                (vtx,) = g.walk_vertices(w)
                if b.rot_first[vtx] < 0:
                    group.add(lone_walk_id[vtx])
        grouping.append(sorted(group))
    else:
        # face split in two; extra walks ride along with side_a
        group_a = {side_a}
        group_b = {side_b}
        for w in g.face_walks[touched_face]:
            darts = g.walk(w)
            if darts:
                nw = int(walk_of[darts[0]])
                if nw not in group_b:
                    group_a.add(nw)
            else:
                (vtx,) = g.walk_vertices(w)
                group_a.add(lone_walk_id[vtx])
        grouping.append(sorted(group_a))
        grouping.append(sorted(group_b))

    covered = {w for gr in grouping for w in gr}
    assert covered == set(range(n_walks)), "face regrouping lost a walk"
    return grouping


# ---------------------------------------------------------------------------
# Connecting a disconnected embedding
# ---------------------------------------------------------------------------


def connect_components(g: PlaneGraph) -> PlaneGraph:
    """Add edges inside shared faces until the graph is connected.

    Every face's boundary walks get chained to the face's first walk (one new
    edge per extra walk, anchored at each walk's first vertex), which adds no
    cycles and therefore leaves every fence of the original graph intact.
    """
    if g.connected:
        return g
    out = g
    # Each pass re-traces; the face-sharing structure of a spherical embedding
    # is connected, so one sweep over the original faces suffices, but faces
    # are re-resolved by a representative dart after each insertion.
    anchors: list[tuple[int, int]] = []  # (representative vertex, other vertex)
    for f in range(g.face_count):
        walks = g.face_walks[f]
        if len(walks) <= 1:
            continue
        base_vertex = g.walk_vertices(walks[0])[0]
        for w in walks[1:]:
            anchors.append((base_vertex, g.walk_vertices(w)[0]))
    for base, other in anchors:
        if out.component_of[base] == out.component_of[other]:
            continue
        shared = _shared_face(out, base, other)
        out = insert_edge_in_face(out, base, other, shared)
    if not out.connected:
        raise GraphFormatError("face structure did not span all components")
    meta = dict(out.meta)
    out.meta = meta
    return out


def _shared_face(g: PlaneGraph, u: int, v: int) -> int:
    fu = g.faces_of_vertex(u)
    fv = set(g.faces_of_vertex(v))
    for f in fu:
        if f in fv:
            return f
    raise GraphFormatError(f"vertices {u} and {v} share no face")


# ---------------------------------------------------------------------------
# Triangulation preserving the embedding
# ---------------------------------------------------------------------------


def triangulate_preserving_embedding(g: PlaneGraph) -> PlaneGraph:
    """Add chords until every face is a triangle, keeping the graph simple.

    Works face by face on the traced boundary walks: repeatedly cut an ear
    (walk positions p, p+2) whose endpoints are distinct and non-adjacent;
    when no ear qualifies, fall back to any valid chord between two walk
    corners.  Repeated boundary vertices (cutvertices) disappear on the way,
    so no separate biconnectivity pass is needed.
    """
    if not g.connected:
        raise ValueError("triangulation requires a connected graph")
    if not g.simple:
        raise ValueError("triangulation requires a simple graph")
    if g.n < 3:
        raise ValueError("triangulation requires at least 3 vertices")

    b = _Builder.from_graph(g)
    adj: set[tuple[int, int]] = set()
    for e in range(g.m):
        u, v = g.eu[e], g.ev[e]
        adj.add((u, v) if u < v else (v, u))

    def origin(d: int) -> int:
        return b.ev[d >> 1] if d & 1 else b.eu[d >> 1]

    pending: list[list[int]] = [g.walk(w) for w in range(g.dart_walk_count)]
    while pending:
        walk = pending.pop()
        while len(walk) > 3:
            t = len(walk)
            verts = [origin(d) for d in walk]
            cut = None
            for p in range(t):
                q = (p + 2) % t
                a, c = verts[p], verts[q]
                if a == c:
                    continue
                key = (a, c) if a < c else (c, a)
                if key not in adj:
                    if q < p:  # ear wraps the list end; rotate so it doesn't
                        walk = walk[p:] + walk[:p]
                        verts = verts[p:] + verts[:p]
                        p, q = 0, 2
                    cut = (p, q, key)
                    break
            if cut is None:
                for p in range(t):
                    for q in range(p + 2, t):
                        if p == 0 and q == t - 1:
                            continue  # cyclically adjacent corners
                        a, c = verts[p], verts[q]
                        if a == c:
                            continue
                        key = (a, c) if a < c else (c, a)
                        if key not in adj:
                            cut = (p, q, key)
                            break
                    if cut:
                        break
            if cut is None:
                raise RuntimeError(
                    "face admits no chord; cannot triangulate while staying simple"
                )
            p, q, key = cut
            e = b.add_chord(walk[p - 1], walk[p], walk[q - 1], walk[q])
            adj.add(key)
            c_uv = 2 * e  # dart verts[p] -> verts[q]
            c_vu = 2 * e + 1
            if q > p:
                walk_a = [c_uv] + walk[q:] + walk[:p]
                walk_b = [c_vu] + walk[p:q]
            else:  # pragma: no cover - q > p by construction
                raise AssertionError
            if len(walk_b) > 3:
                pending.append(walk_b)
            else:
                assert len(walk_b) == 3
            walk = walk_a
        if walk:
            assert len(walk) in (2, 3)
            if len(walk) == 2:
                raise RuntimeError("cannot triangulate a bridge face of length 2")

    out = _finish_graph(b, meta=g.meta)
    assert out.simple and out.triangulated, "triangulation postcondition failed"
    assert out.m == 3 * out.n - 6
    return out
