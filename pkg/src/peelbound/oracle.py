"""Brute-force ground truth for peel decompositions and related invariants.

Everything here is deliberately definition-shaped and independent of the
fast pipeline: peel numbers come from literally deleting outer-face vertices
round by round (tracking face merges with a union-find over the original
faces), distances come from plain breadth-first search on adjacency lists,
and fence-girth comes from exhaustive simple-cycle enumeration plus a
Jordan-side test.  Costs are desk-scale by design.
"""

from __future__ import annotations

import math
import time
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Optional, Sequence, Union

from .embed import PlaneGraph, connect_components, radial_bfs, triangulate_preserving_embedding

__all__ = [
    "OracleBudgetError",
    "OracleReport",
    "SimpleBoundReport",
    "VerifyReport",
    "all_eccentricities",
    "bfs_distances",
    "diameter_exact",
    "eccentricity",
    "fence_girth_bruteforce",
    "fse_outerplanarity_bruteforce",
    "full_oracle_report",
    "girth_bruteforce",
    "layer_numbers_by_deletion",
    "peel_count_by_deletion",
    "peel_numbers_by_deletion",
    "radius_exact",
    "simple_bound_check",
    "verify_certificate",
]


class OracleBudgetError(RuntimeError):
    """An exhaustive search exceeded its step budget or size guard."""


def _as_graph(target) -> PlaneGraph:
    """Accept a PlaneGraph or anything carrying one in an ``H`` attribute."""
    if isinstance(target, PlaneGraph):
        return target
    h = getattr(target, "H", None)
    if isinstance(h, PlaneGraph):
        return h
    raise TypeError(f"expected PlaneGraph or augmentation, got {type(target)!r}")


# ---------------------------------------------------------------------------
# Plain BFS distances (pure python on adjacency lists, kept independent of
# the numpy machinery in embed on purpose)
# ---------------------------------------------------------------------------


def _adjacency(g: PlaneGraph) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(g.n)]
    for e in range(g.m):
        u, v = g.eu[e], g.ev[e]
        adj[u].append(v)
        if u != v:
            adj[v].append(u)
    return adj


def bfs_distances(g_or_aug, source: int, adj: Optional[list[list[int]]] = None) -> list[int]:
    """Hop distances from source; -1 where unreachable."""
    g = _as_graph(g_or_aug)
    if adj is None:
        adj = _adjacency(g)
    dist = [-1] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        v = queue.popleft()
        dv = dist[v]
        for w in adj[v]:
            if dist[w] < 0:
                dist[w] = dv + 1
                queue.append(w)
    return dist


def eccentricity(g_or_aug, v: int) -> int:
    g = _as_graph(g_or_aug)
    dist = bfs_distances(g, v)
    if min(dist) < 0:
        raise ValueError("eccentricity undefined: graph is disconnected")
    return max(dist)


def all_eccentricities(g_or_aug) -> list[int]:
    g = _as_graph(g_or_aug)
    adj = _adjacency(g)
    out = []
    for v in range(g.n):
        dist = bfs_distances(g, v, adj)
        if min(dist) < 0:
            raise ValueError("eccentricities undefined: graph is disconnected")
        out.append(max(dist))
    return out


def radius_exact(g_or_aug) -> tuple[int, int]:
    """(center vertex, radius); smallest vertex id wins ties."""
    eccs = all_eccentricities(g_or_aug)
    rad = min(eccs)
    return eccs.index(rad), rad


def diameter_exact(g_or_aug) -> int:
    return max(all_eccentricities(g_or_aug))


# ---------------------------------------------------------------------------
# Peel numbers by literal deletion
# ---------------------------------------------------------------------------


class _UnionFind:
    __slots__ = ("parent",)

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if ra > rb:
                ra, rb = rb, ra
            self.parent[rb] = ra


def _deletion_rounds(
    g: PlaneGraph,
    peel: list[int],
    uf: _UnionFind,
    dead_edge: list[bool],
    outer_face: int,
    first_round: int,
) -> int:
    """Delete outer-boundary vertices round by round; returns last round used.

    Deleting a vertex removes its edges; each removed edge merges the two
    faces on its sides.  A surviving vertex sits on the (merged) outer region
    exactly when one of its originally incident faces has been merged into it.
    """
    incident = [g.faces_of_vertex(v) for v in range(g.n)]
    edges_at = [g.rotation_edges(v) for v in range(g.n)]
    alive = [v for v in range(g.n) if peel[v] == 0]
    rnd = first_round - 1
    while alive:
        rnd += 1
        outer_root = uf.find(outer_face)
        root_of = [uf.find(f) for f in range(g.face_count)]
        sel = [v for v in alive if any(root_of[f] == outer_root for f in incident[v])]
        assert sel, "outer region lost all boundary vertices: corrupt embedding"
        for v in sel:
            peel[v] = rnd
            for e in edges_at[v]:
                if not dead_edge[e]:
                    dead_edge[e] = True
                    uf.union(g.face_of_dart(2 * e), g.face_of_dart(2 * e + 1))
        alive = [v for v in alive if peel[v] == 0]
    return rnd


def peel_numbers_by_deletion(g: PlaneGraph, outer_face: int) -> list[int]:
    """Peel index (1-based) of every vertex for the given outerface."""
    if not (0 <= outer_face < g.face_count):
        raise ValueError("outer face out of range")
    peel = [0] * g.n
    uf = _UnionFind(g.face_count)
    dead_edge = [False] * g.m
    _deletion_rounds(g, peel, uf, dead_edge, outer_face, first_round=1)
    return peel


def peel_count_by_deletion(g: PlaneGraph, outer_face: int) -> int:
    peel = peel_numbers_by_deletion(g, outer_face)
    return max(peel) if peel else 0


def layer_numbers_by_deletion(g: PlaneGraph, root: int) -> list[int]:
    """Layer index of every vertex: 0 for the root, then deletion rounds.

    Deleting the root merges all faces around it into one region, so the
    choice of face incident to the root is immaterial.
    """
    if not (0 <= root < g.n):
        raise ValueError("root out of range")
    peel = [0] * g.n
    uf = _UnionFind(g.face_count)
    dead_edge = [False] * g.m
    peel[root] = -1  # mark deleted; layer 0 in the result
    for e in g.rotation_edges(root):
        if not dead_edge[e]:
            dead_edge[e] = True
            uf.union(g.face_of_dart(2 * e), g.face_of_dart(2 * e + 1))
    outer = g.faces_of_vertex(root)[0]
    _deletion_rounds(g, peel, uf, dead_edge, outer, first_round=1)
    layers = [0 if p == -1 else p for p in peel]
    return layers


# ---------------------------------------------------------------------------
# fse-outerplanarity by exhaustion over outerfaces
# ---------------------------------------------------------------------------


@dataclass
class FseBruteResult:
    value: int
    face: int
    per_face: list[int]

    def __iter__(self):  # allow (value, face) unpacking
        return iter((self.value, self.face))


def fse_outerplanarity_bruteforce(
    g: PlaneGraph, cross_check: Optional[bool] = None, threads: int = 1
) -> FseBruteResult:
    """Minimum peel count over all outerfaces, by literal deletion.

    Disconnected graphs are connected first (inside their shared faces),
    which never increases the count of any face.  With ``cross_check`` on
    (default for n <= 200), every per-face count is recomputed through the
    vertex/face incidence BFS and the two routes must agree.  ``threads``
    fans the per-face counts over a pool; results are collected in face
    order, so the answer does not depend on the thread count.
    """
    if not g.connected:
        g = connect_components(g)
    if cross_check is None:
        cross_check = g.n <= 200

    def count_face(f: int) -> int:
        c = peel_count_by_deletion(g, f)
        if cross_check:
            rd = radial_bfs(g, source_face=f)
            via_radial = int(max((rd.vertex_dist + 1) // 2)) if g.n else 0
            assert via_radial == c, (
                f"peel-count routes disagree on face {f}: deletion={c} radial={via_radial}"
            )
        return c

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            counts = list(pool.map(count_face, range(g.face_count)))
    else:
        counts = [count_face(f) for f in range(g.face_count)]
    value = min(counts)
    return FseBruteResult(value, counts.index(value), counts)


# ---------------------------------------------------------------------------
# Fence-girth by cycle enumeration + side test
# ---------------------------------------------------------------------------


def _simple_cycles_of_length(g: PlaneGraph, L: int, budget: list[int]) -> Iterator[list[int]]:
    """Yield each simple cycle of exactly L edges once, as a dart sequence.

    Cycles are rooted at their smallest vertex and emitted in one canonical
    orientation (first dart id < twin of last dart).  Loops are length-1
    cycles; a pair of parallel edges is a length-2 cycle.
    """
    darts_at = [g.rotation_darts(v) for v in range(g.n)]
    on_path = [False] * g.n

    def extend(s: int, v: int, path: list[int], used_edges: set[int]) -> Iterator[list[int]]:
        budget[0] -= 1
        if budget[0] < 0:
            raise OracleBudgetError("cycle enumeration budget exhausted")
        for d in darts_at[v]:
            e = d >> 1
            if e in used_edges:
                continue
            w = g.head(d)
            if len(path) + 1 == L:
                if w == s:
                    if L == 1:
                        if d % 2 == 0:  # one orientation per loop
                            yield [d]
                    elif path[0] < (d ^ 1):  # one orientation per cycle
                        yield path + [d]
                continue
            if w <= s or on_path[w]:
                continue
            on_path[w] = True
            used_edges.add(e)
            path.append(d)
            yield from extend(s, w, path, used_edges)
            path.pop()
            used_edges.discard(e)
            on_path[w] = False

    for s in range(g.n):
        yield from extend(s, s, [], set())


def _is_fence(g: PlaneGraph, cycle: Sequence[int]) -> bool:
    """True when vertices exist strictly on both sides of the cycle."""
    cyc_edges = {d >> 1 for d in cycle}
    cyc_verts = {g.origin(d) for d in cycle}
    uf = _UnionFind(g.face_count)
    for e in range(g.m):
        if e not in cyc_edges:
            uf.union(g.face_of_dart(2 * e), g.face_of_dart(2 * e + 1))
    d0 = cycle[0]
    left = uf.find(g.face_of_dart(d0))
    right = uf.find(g.face_of_dart(d0 ^ 1))
    if left == right:
        return False
    seen_left = seen_right = False
    for v in range(g.n):
        if v in cyc_verts:
            continue
        side = uf.find(g.faces_of_vertex(v)[0])
        if side == left:
            seen_left = True
        elif side == right:
            seen_right = True
        if seen_left and seen_right:
            return True
    return False


def fence_girth_bruteforce(
    g: PlaneGraph,
    max_len: Optional[int] = None,
    budget: int = 5_000_000,
    force: bool = False,
) -> Union[int, float]:
    """Shortest length of a separating cycle, or math.inf if none exists.

    Exponential in the worst case; guarded to n <= 60 unless forced.
    """
    if g.n > 60 and not force:
        raise ValueError(f"fence-girth brute force guarded to n <= 60 (n={g.n})")
    if max_len is None:
        max_len = g.n  # a simple cycle repeats no vertex
    remaining = [budget]
    for L in range(1, max_len + 1):
        for cycle in _simple_cycles_of_length(g, L, remaining):
            if _is_fence(g, cycle):
                return L
    return math.inf


def girth_bruteforce(
    g: PlaneGraph, max_len: Optional[int] = None, budget: int = 5_000_000
) -> Union[int, float]:
    """Length of the shortest cycle (loops count 1), or math.inf if acyclic."""
    if max_len is None:
        max_len = g.n
    remaining = [budget]
    for L in range(1, max_len + 1):
        for _cycle in _simple_cycles_of_length(g, L, remaining):
            return L
    return math.inf


# ---------------------------------------------------------------------------
# The radius/triangulation bound
# ---------------------------------------------------------------------------


@dataclass
class SimpleBoundReport:
    bound: int
    outerface: int
    realized: int
    center: int
    radius: int
    radius_triangulated: int

    def __iter__(self):  # (bound, outerface) unpacking
        return iter((self.bound, self.outerface))


def simple_bound_check(g: PlaneGraph) -> SimpleBoundReport:
    """Certify peel count <= min(1 + rad(G), (n+26)//6) with a witness face.

    A minimum-eccentricity vertex of a triangulated supergraph is located,
    and any original face incident to it works as outerface: peels of the
    subgraph can only come earlier than in the triangulation.
    """
    if not g.connected:
        raise ValueError("bound check requires a connected graph")
    if not g.simple or g.n < 3:
        raise ValueError("bound check requires a simple graph on >= 3 vertices")
    t = g if g.triangulated else triangulate_preserving_embedding(g)
    _, rad_g = radius_exact(g)
    center, rad_t = radius_exact(t)
    bound = min(1 + rad_g, (g.n + 26) // 6)
    face = g.first_face_of_vertex(center)
    realized = peel_count_by_deletion(g, face)
    assert realized <= bound, (
        f"realized peel count {realized} exceeds certified bound {bound}"
    )
    return SimpleBoundReport(bound, face, realized, center, rad_g, rad_t)


# ---------------------------------------------------------------------------
# Certificate verification
# ---------------------------------------------------------------------------


@dataclass
class VerifyReport:
    ok: bool
    checks: list[tuple[str, bool, str]] = field(default_factory=list)

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append((name, passed, detail))
        self.ok = self.ok and passed


def _cert_get(cert, key: str):
    if isinstance(cert, Mapping):
        return cert.get(key)
    return getattr(cert, key, None)


def verify_certificate(cert, target) -> VerifyReport:
    """Recheck a center certificate by brute force.

    ``target`` is either the augmentation the certificate was issued for, or
    the original plane graph (in which case the decomposition pipeline is
    re-run deterministically to rebuild the augmentation).  Eccentricity of
    the center is rechecked in the augmented graph; the peel count of the
    chosen outerface is rechecked in the original graph.
    """
    from . import peels  # local import: the pipeline depends on embed, not on us

    report = VerifyReport(ok=True)
    s = _cert_get(cert, "center")
    if s is None:
        s = _cert_get(cert, "s")  # serialized form uses the short key
    bound = _cert_get(cert, "bound")
    outerface = _cert_get(cert, "outerface")
    if s is None or bound is None:
        report.add("fields", False, "certificate lacks center/bound")
        return report

    if isinstance(target, PlaneGraph):
        original = target
        if not target.connected:
            original = connect_components(target)
        root = peels.choose_root(original)
        ctx = peels.compute_layers(original, root)
        aug = peels.augment(ctx)
    else:
        aug = target
        original = aug.G

    n = _cert_get(cert, "n")
    if n is not None and n != original.n:
        report.add("size", False, f"certificate n={n} but graph has {original.n}")
        return report

    if not (0 <= int(s) < aug.H.n):
        report.add("center-range", False, f"center {s} out of range")
        return report

    ecc = eccentricity(aug.H, int(s))
    report.add(
        "eccentricity",
        ecc <= int(bound),
        f"ecc_H({s}) = {ecc} vs bound {bound}",
    )

    if outerface is not None:
        peel_bound = _cert_get(cert, "peel_bound")
        if peel_bound is None:
            peel_bound = int(bound) + 1
        if not (0 <= int(outerface) < original.face_count):
            report.add("outerface-range", False, f"face {outerface} out of range")
        else:
            rd = radial_bfs(original, source_face=int(outerface))
            count = int(max((rd.vertex_dist + 1) // 2)) if original.n else 0
            report.add(
                "peel-count",
                count <= int(peel_bound),
                f"peel count {count} vs bound {peel_bound}",
            )
    return report


# ---------------------------------------------------------------------------
# One-stop report (CLI `oracle` command)
# ---------------------------------------------------------------------------


@dataclass
class OracleReport:
    n: int
    m: int
    fse_outerplanarity: int
    best_outerface: int
    radius: int
    diameter: int
    eccentricities: list[int]
    fence_girth: Optional[Union[int, float]]
    fence_girth_skipped: bool
    connected_copy: bool
    runtimes: dict

    def to_dict(self) -> dict:
        fg = self.fence_girth
        if fg == math.inf:
            fg = "infinity"
        return {
            "n": self.n,
            "m": self.m,
            "fse_outerplanarity": self.fse_outerplanarity,
            "best_outerface": self.best_outerface,
            "radius": self.radius,
            "diameter": self.diameter,
            "eccentricities": self.eccentricities,
            "fence_girth": fg,
            "fence_girth_skipped": self.fence_girth_skipped,
            "connected_copy": self.connected_copy,
            "runtimes": {k: round(v, 6) for k, v in self.runtimes.items()},
        }


def full_oracle_report(
    g: PlaneGraph,
    fence_max_len: Optional[int] = None,
    fence_force: bool = False,
    fence_budget: int = 5_000_000,
    threads: int = 1,
) -> OracleReport:
    runtimes: dict[str, float] = {}
    connected_copy = not g.connected
    gc_ = g if g.connected else connect_components(g)

    t0 = time.perf_counter()
    fse = fse_outerplanarity_bruteforce(gc_, threads=threads)
    runtimes["fse"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    eccs = all_eccentricities(gc_)
    rad, diam = min(eccs), max(eccs)
    assert rad <= diam <= 2 * rad
    runtimes["distances"] = time.perf_counter() - t0

    fence: Optional[Union[int, float]] = None
    skipped = True
    if gc_.n <= 60 or fence_force:
        t0 = time.perf_counter()
        try:
            fence = fence_girth_bruteforce(
                gc_, max_len=fence_max_len, budget=fence_budget, force=fence_force
            )
            skipped = False
        except OracleBudgetError:
            fence = None
            skipped = True
        runtimes["fence_girth"] = time.perf_counter() - t0

    return OracleReport(
        n=g.n,
        m=g.m,
        fse_outerplanarity=fse.value,
        best_outerface=fse.face,
        radius=rad,
        diameter=diam,
        eccentricities=eccs,
        fence_girth=fence,
        fence_girth_skipped=skipped,
        connected_copy=connected_copy,
        runtimes=runtimes,
    )
