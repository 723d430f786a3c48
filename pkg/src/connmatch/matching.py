"""Maximum matchings, connected matchings and bipartite vertex covers."""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from .graph import ColoredMultipartiteGraph, GraphError, component_labels, components


@dataclass(frozen=True)
class MatchingCertificate:
    edges: tuple[tuple[int, int], ...]
    component_id: int | None = None

    @property
    def size(self) -> int:
        return len(self.edges)

    def vertices(self) -> set[int]:
        return {v for e in self.edges for v in e}

    def to_dict(self) -> dict:
        return {
            "size": self.size,
            "edges": [list(e) for e in self.edges],
            "component": self.component_id,
        }

    @classmethod
    def from_dict(cls, data: dict) -> MatchingCertificate:
        edges = tuple(tuple(sorted(map(int, e))) for e in data["edges"])
        cert = cls(edges, data.get("component"))
        if "size" in data and data["size"] != cert.size:
            raise ValueError(f"size {data['size']} disagrees with {cert.size} listed edges")
        return cert

    def validate(self, g: ColoredMultipartiteGraph, color: int) -> None:
        """Raise ``ValueError`` unless this is a color-``color`` matching of ``g``
        whose edges sit in the claimed component."""
        seen: set[int] = set()
        for u, v in self.edges:
            if color not in g.colors_of(u, v):
                raise ValueError(f"edge {(u, v)} is not a color-{color} edge")
            if u in seen or v in seen:
                raise ValueError(f"edge {(u, v)} shares a vertex with another matching edge")
            seen.update((u, v))
        if self.component_id is not None:
            labels = components(g, color).component_of
            stray = [v for v in seen if labels[v] != self.component_id]
            if stray:
                raise ValueError(f"vertices {sorted(stray)} lie outside component {self.component_id}")


@dataclass(frozen=True)
class CoverCertificate:
    vertices: frozenset[int]

    @property
    def size(self) -> int:
        return len(self.vertices)

    def to_dict(self) -> dict:
        return {"cover": sorted(self.vertices)}

    @classmethod
    def from_dict(cls, data: dict) -> CoverCertificate:
        return cls(frozenset(int(v) for v in data["cover"]))


def _blossom(n: int, nbrs: Sequence[Sequence[int]]) -> list[int]:
    """Edmonds' augmenting-path algorithm with blossom contraction.

    Returns ``mate`` with ``mate[v] == -1`` for exposed vertices.  O(n^3).
    """
    mate = [-1] * n
    # greedy start; the search below only has to fix what greedy missed
    for v in range(n):
        if mate[v] == -1:
            for w in nbrs[v]:
                if mate[w] == -1 and w != v:
                    mate[v], mate[w] = w, v
                    break

    def lca(a: int, b: int, base: list[int], parent: list[int]) -> int:
        on_path = [False] * n
        while True:
            a = base[a]
            on_path[a] = True
            if mate[a] == -1:
                break
            a = parent[mate[a]]
        while True:
            b = base[b]
            if on_path[b]:
                return b
            b = parent[mate[b]]

    def mark_path(v: int, b: int, child: int, base, parent, in_blossom) -> None:
        while base[v] != b:
            in_blossom[base[v]] = in_blossom[base[mate[v]]] = True
            parent[v] = child
            child = mate[v]
            v = parent[mate[v]]

    def find_augmenting(root: int) -> int:
        used = [False] * n
        parent = [-1] * n
        base = list(range(n))
        used[root] = True
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for to in nbrs[v]:
                if base[v] == base[to] or mate[v] == to:
                    continue
                if to == root or (mate[to] != -1 and parent[mate[to]] != -1):
                    cur = lca(v, to, base, parent)
                    in_blossom = [False] * n
                    mark_path(v, cur, to, base, parent, in_blossom)
                    mark_path(to, cur, v, base, parent, in_blossom)
                    for i in range(n):
                        if in_blossom[base[i]]:
                            base[i] = cur
                            if not used[i]:
                                used[i] = True
                                queue.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if mate[to] == -1:
                        return finish(to, parent)
                    used[mate[to]] = True
                    queue.append(mate[to])
        return -1

    def finish(v: int, parent: list[int]) -> int:
        end = v
        while v != -1:
            pv = parent[v]
            ppv = mate[pv]
            mate[v], mate[pv] = pv, v
            v = ppv
        return end

    for root in range(n):
        if mate[root] == -1 and nbrs[root]:
            find_augmenting(root)
    return mate


def maximum_matching(num_vertices: int, edges: Iterable[tuple[int, int]]) -> list[tuple[int, int]]:
    """Maximum matching of an arbitrary simple graph on ``0..num_vertices-1``.

    Edges come back as sorted ``(u, v)`` pairs with ``u < v``, ordered by ``u``.
    """
    nbrs: list[list[int]] = [[] for _ in range(num_vertices)]
    for u, v in edges:
        if u == v:
            continue
        nbrs[u].append(v)
        nbrs[v].append(u)
    for lst in nbrs:
        lst.sort()
    mate = _blossom(num_vertices, nbrs)
    return [(v, mate[v]) for v in range(num_vertices) if mate[v] > v]


def _induced_matching(adj: Sequence[int], vertices: int) -> list[tuple[int, int]]:
    """Maximum matching of the subgraph induced on bitset ``vertices``."""
    verts = [v for v in range(len(adj)) if vertices >> v & 1]
    local = {v: i for i, v in enumerate(verts)}
    nbrs = []
    for v in verts:
        row = adj[v] & vertices
        lst = []
        while row:
            low = row & -row
            lst.append(local[low.bit_length() - 1])
            row ^= low
        nbrs.append(lst)
    mate = _blossom(len(verts), nbrs)
    return [(verts[i], verts[mate[i]]) for i in range(len(verts)) if mate[i] > i]


def matching_number(adj: Sequence[int], vertices: int | None = None) -> int:
    """alpha' of a bitset-adjacency graph, optionally restricted to ``vertices``."""
    if vertices is None:
        vertices = (1 << len(adj)) - 1
    return len(_induced_matching(adj, vertices))


def connected_matching(adj: Sequence[int]) -> tuple[int | None, list[tuple[int, int]]]:
    """Largest matching inside a single component.

    Returns ``(component_id, edges)``; ties go to the lowest component id and
    an edgeless graph gives ``(None, [])``.
    """
    labels = component_labels(list(adj))
    best_id, best = None, []
    groups: dict[int, int] = {}
    for v, c in enumerate(labels):
        groups[c] = groups.get(c, 0) | 1 << v
    for cid in sorted(groups):
        members = groups[cid]
        if members & (members - 1) == 0:
            continue
        # a component on k vertices cannot beat the incumbent if floor(k/2) <= |best|
        if members.bit_count() // 2 <= len(best):
            continue
        edges = _induced_matching(adj, members)
        if len(edges) > len(best):
            best_id, best = cid, edges
    return best_id, best


def adjacency_from_mask(edge_pairs: Sequence[tuple[int, int]], num_vertices: int, mask: int) -> list[int]:
    adj = [0] * num_vertices
    k = 0
    while mask:
        if mask & 1:
            u, v = edge_pairs[k]
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        mask >>= 1
        k += 1
    return adj


def connected_matching_number(edge_pairs: Sequence[tuple[int, int]], num_vertices: int, mask: int) -> int:
    """alpha'_* of the spanning subgraph whose edges are the set bits of ``mask``."""
    return len(connected_matching(adjacency_from_mask(edge_pairs, num_vertices, mask))[1])


def max_matching(g: ColoredMultipartiteGraph, color: int) -> MatchingCertificate:
    g.check_color(color)
    return MatchingCertificate(tuple(maximum_matching(g.N, g.edges(color))))


def alpha_star(g: ColoredMultipartiteGraph, color: int) -> MatchingCertificate:
    """Largest connected matching of color class ``color``."""
    g.check_color(color)
    cid, edges = connected_matching(g.adjacency(color))
    return MatchingCertificate(tuple(sorted(edges)), cid)


def _hopcroft_karp(left: Sequence[int], right: Sequence[int], nbrs: dict[int, list[int]]) -> dict[int, int]:
    INF = float("inf")
    pair_l = {u: None for u in left}
    pair_r = {v: None for v in right}
    dist: dict[int, float] = {}

    def bfs() -> bool:
        queue = deque()
        for u in left:
            if pair_l[u] is None:
                dist[u] = 0
                queue.append(u)
            else:
                dist[u] = INF
        found = INF
        while queue:
            u = queue.popleft()
            if dist[u] < found:
                for v in nbrs[u]:
                    w = pair_r[v]
                    if w is None:
                        found = dist[u] + 1
                    elif dist[w] == INF:
                        dist[w] = dist[u] + 1
                        queue.append(w)
        return found != INF

    def dfs(u: int) -> bool:
        for v in nbrs[u]:
            w = pair_r[v]
            if w is None or (dist[w] == dist[u] + 1 and dfs(w)):
                pair_l[u], pair_r[v] = v, u
                return True
        dist[u] = INF
        return False

    while bfs():
        for u in left:
            if pair_l[u] is None:
                dfs(u)
    return {u: v for u, v in pair_l.items() if v is not None}


def konig_cover(
    g: ColoredMultipartiteGraph, left: Iterable[int], right: Iterable[int], color: int
) -> tuple[MatchingCertificate, CoverCertificate]:
    """Maximum matching and minimum vertex cover of the color-``color`` edges
    running between ``left`` and ``right``."""
    g.check_color(color)
    left, right = sorted(set(left)), sorted(set(right))
    if set(left) & set(right):
        raise GraphError(f"vertex sets overlap on {sorted(set(left) & set(right))}")
    adj = g.adjacency(color)
    nbrs = {u: [v for v in right if adj[u] >> v & 1] for u in left}
    match = _hopcroft_karp(left, right, nbrs)

    # alternating reachability from exposed left vertices
    mate_r = {v: u for u, v in match.items()}
    reach_l = {u for u in left if u not in match}
    reach_r: set[int] = set()
    queue = deque(reach_l)
    while queue:
        u = queue.popleft()
        for v in nbrs[u]:
            if v not in reach_r and match.get(u) != v:
                reach_r.add(v)
                w = mate_r.get(v)
                if w is not None and w not in reach_l:
                    reach_l.add(w)
                    queue.append(w)
    cover = frozenset((set(left) - reach_l) | reach_r)
    edges = tuple(sorted((min(u, v), max(u, v)) for u, v in match.items()))
    return MatchingCertificate(edges), CoverCertificate(cover)


def multipartite_matching_bound(part_counts: Iterable[int], defect: int = 0) -> int:
    """min(floor(S/2), S - m) - defect for part counts summing to S with max m.

    ``defect`` is the integer number of missing neighbors allowed per vertex
    (callers round the real-valued slack up).
    """
    counts = [int(k) for k in part_counts]
    if not counts or any(k < 1 for k in counts):
        raise ValueError(f"part counts must be positive, got {counts}")
    if defect < 0:
        raise ValueError("defect must be nonnegative")
    total = sum(counts)
    return min(total // 2, total - max(counts)) - defect
