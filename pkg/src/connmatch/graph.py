"""Edge-colored complete multipartite graphs.

Vertices are indexed ``0..N-1`` with the parts laid out contiguously in the
order of ``part_sizes``.  Cross-part pairs ``(u, v)`` with ``u < v`` are ranked
lexicographically; that rank is the edge index used everywhere (color words,
bitsets, JSON round trips).  Colors are numbered from 1.
"""

from __future__ import annotations

import itertools
import json
from bisect import bisect_right
from collections.abc import Callable, Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from functools import cached_property

MAX_COLORS = 3
DEFAULT_ENUMERATION_BUDGET = 1 << 26


class GraphError(ValueError):
    """Raised when a coloring violates the multipartite/coloring invariants."""


class BudgetExceeded(RuntimeError):
    """Raised when an exhaustive enumeration would exceed its budget."""


@dataclass(frozen=True)
class MultipartiteSpec:
    part_sizes: tuple[int, ...]

    def __post_init__(self):
        sizes = tuple(int(k) for k in self.part_sizes)
        object.__setattr__(self, "part_sizes", sizes)
        if not sizes:
            raise GraphError("part_sizes must be nonempty")
        if any(k < 1 for k in sizes):
            raise GraphError(f"part sizes must be positive, got {sizes}")
        if any(a < b for a, b in zip(sizes, sizes[1:])):
            raise GraphError(f"part sizes must be nonincreasing, got {sizes}")

    @classmethod
    def complete(cls, num_vertices: int) -> MultipartiteSpec:
        """K_N encoded as N singleton parts."""
        return cls((1,) * num_vertices)

    @property
    def N(self) -> int:
        return sum(self.part_sizes)

    @property
    def s(self) -> int:
        return len(self.part_sizes)

    @cached_property
    def offsets(self) -> tuple[int, ...]:
        return tuple(itertools.accumulate(self.part_sizes, initial=0))

    def part_of(self, v: int) -> int:
        """0-based index of the part holding vertex ``v``."""
        if not 0 <= v < self.N:
            raise GraphError(f"vertex {v} out of range for N={self.N}")
        return bisect_right(self.offsets, v) - 1

    def part(self, j: int) -> range:
        """Vertices of the 0-based part ``j``."""
        return range(self.offsets[j], self.offsets[j + 1])

    @cached_property
    def edge_pairs(self) -> tuple[tuple[int, int], ...]:
        """Cross-part pairs (u, v), u < v, in lexicographic order."""
        parts = [self.part_of(v) for v in range(self.N)]
        return tuple(
            (u, v)
            for u in range(self.N)
            for v in range(u + 1, self.N)
            if parts[u] != parts[v]
        )

    @cached_property
    def edge_index(self) -> dict[tuple[int, int], int]:
        return {pair: k for k, pair in enumerate(self.edge_pairs)}

    @property
    def num_edges(self) -> int:
        return len(self.edge_pairs)


def _normalize_pair(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class ColoredMultipartiteGraph:
    """A complete multipartite graph whose edges carry nonempty color sets.

    ``color_masks[c - 1]`` is the bitset (over edge indices) of edges that
    carry color ``c``.
    """

    spec: MultipartiteSpec
    num_colors: int
    color_masks: tuple[int, ...]
    overlap_allowed: bool = False

    def __post_init__(self):
        if self.num_colors not in (1, 2, 3):
            raise GraphError(f"num_colors must be 1, 2 or 3, got {self.num_colors}")
        if len(self.color_masks) != self.num_colors:
            raise GraphError("need exactly one mask per color")
        full = (1 << self.spec.num_edges) - 1
        union = 0
        total = 0
        for mask in self.color_masks:
            if mask < 0 or mask & ~full:
                raise GraphError("color mask refers to a nonexistent edge")
            union |= mask
            total += mask.bit_count()
        if union != full:
            missing = (~union & full).bit_length() - 1
            raise GraphError(f"edge {self.spec.edge_pairs[missing]} has an empty color set")
        if not self.overlap_allowed and total != self.spec.num_edges:
            raise GraphError("an edge carries more than one color but overlap_allowed is false")

    @property
    def N(self) -> int:
        return self.spec.N

    @property
    def edge_pairs(self) -> tuple[tuple[int, int], ...]:
        return self.spec.edge_pairs

    def check_color(self, color: int) -> None:
        if not 1 <= color <= self.num_colors:
            raise GraphError(f"color {color} out of range 1..{self.num_colors}")

    def mask(self, color: int) -> int:
        self.check_color(color)
        return self.color_masks[color - 1]

    def colors_of(self, u: int, v: int) -> frozenset[int]:
        pair = _normalize_pair(u, v)
        k = self.spec.edge_index.get(pair)
        if k is None:
            return frozenset()
        return frozenset(c + 1 for c, m in enumerate(self.color_masks) if m >> k & 1)

    def edges(self, color: int) -> list[tuple[int, int]]:
        mask = self.mask(color)
        return [pair for k, pair in enumerate(self.edge_pairs) if mask >> k & 1]

    def edge_count(self, color: int) -> int:
        return self.mask(color).bit_count()

    def adjacency(self, color: int) -> list[int]:
        """Neighbor bitsets (over vertices) of the color-``color`` subgraph."""
        adj = [0] * self.N
        for u, v in self.edges(color):
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return adj

    def union_adjacency(self) -> list[int]:
        adj = [0] * self.N
        for u, v in self.edge_pairs:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return adj

    def coloring_word(self) -> tuple[int, ...]:
        """Color of each edge in edge-index order (singleton colorings only)."""
        if sum(m.bit_count() for m in self.color_masks) != self.spec.num_edges:
            raise GraphError("coloring word undefined for overlapping colors")
        word = [0] * self.spec.num_edges
        for c, mask in enumerate(self.color_masks, start=1):
            for k in range(self.spec.num_edges):
                if mask >> k & 1:
                    word[k] = c
        return tuple(word)

    def permute_colors(self, order: Iterable[int]) -> ColoredMultipartiteGraph:
        """New graph whose color ``c`` is this graph's color ``order[c-1]``."""
        order = tuple(order)
        if sorted(order) != list(range(1, self.num_colors + 1)):
            raise GraphError(f"{order} is not a permutation of the colors")
        return ColoredMultipartiteGraph(
            self.spec, self.num_colors, tuple(self.color_masks[c - 1] for c in order),
            self.overlap_allowed,
        )

    def to_dict(self) -> dict:
        return {
            "parts": list(self.spec.part_sizes),
            "num_colors": self.num_colors,
            "overlap_allowed": self.overlap_allowed,
            "edges": [
                {"u": u, "v": v, "colors": sorted(self.colors_of(u, v))}
                for u, v in self.edge_pairs
            ],
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def from_masks(spec: MultipartiteSpec, masks: Iterable[int], overlap_allowed: bool = False) -> ColoredMultipartiteGraph:
    masks = tuple(masks)
    return ColoredMultipartiteGraph(spec, len(masks), masks, overlap_allowed)


def from_word(spec: MultipartiteSpec, word: Iterable[int], num_colors: int) -> ColoredMultipartiteGraph:
    """Singleton coloring from a color word in edge-index order."""
    word = tuple(word)
    if len(word) != spec.num_edges:
        raise GraphError(f"word has length {len(word)}, expected {spec.num_edges}")
    masks = [0] * num_colors
    for k, c in enumerate(word):
        if not 1 <= c <= num_colors:
            raise GraphError(f"color {c} out of range 1..{num_colors}")
        masks[c - 1] |= 1 << k
    return ColoredMultipartiteGraph(spec, num_colors, tuple(masks), False)


ColorAssignment = Callable[[int, int], Iterable[int]] | Mapping[tuple[int, int], Iterable[int]]


def build_complete(
    spec: MultipartiteSpec,
    color_assignment: ColorAssignment,
    num_colors: int = 2,
    overlap_allowed: bool = False,
) -> ColoredMultipartiteGraph:
    """Color every cross-part pair of ``spec``.

    ``color_assignment`` is either a callable ``(u, v) -> colors`` (queried
    with ``u < v``) or a mapping from pairs to color collections.  A mapping
    that mentions a same-part pair, or any pair that ends up with no color,
    raises :class:`GraphError`.
    """
    masks = [0] * num_colors

    if isinstance(color_assignment, Mapping):
        table = {}
        for pair, colors in color_assignment.items():
            u, v = _normalize_pair(*pair)
            if u == v or spec.part_of(u) == spec.part_of(v):
                raise GraphError(f"pair {(u, v)} lies inside one part and cannot be colored")
            table[(u, v)] = colors

        def lookup(u, v):
            return table.get((u, v), ())
    else:
        lookup = color_assignment

    for k, (u, v) in enumerate(spec.edge_pairs):
        colors = lookup(u, v)
        colors = {colors} if isinstance(colors, int) else set(colors)
        if not colors:
            raise GraphError(f"edge {(u, v)} has an empty color set")
        if len(colors) > 1 and not overlap_allowed:
            raise GraphError(f"edge {(u, v)} has colors {sorted(colors)} but overlap is not allowed")
        for c in colors:
            if not 1 <= c <= num_colors:
                raise GraphError(f"color {c} out of range 1..{num_colors}")
            masks[c - 1] |= 1 << k
    return ColoredMultipartiteGraph(spec, num_colors, tuple(masks), overlap_allowed)


def graph_from_edges(num_vertices: int, edges: Iterable[tuple[int, int]]) -> ColoredMultipartiteGraph:
    """Embed an arbitrary simple graph as color 1 of a 2-colored K_N.

    Color 2 holds the complement.  This is how general graphs reach the
    matching and decomposition routines.
    """
    spec = MultipartiteSpec.complete(num_vertices)
    mask = 0
    for u, v in edges:
        if u == v:
            raise GraphError(f"self-loop at {u}")
        mask |= 1 << spec.edge_index[_normalize_pair(u, v)]
    full = (1 << spec.num_edges) - 1
    return ColoredMultipartiteGraph(spec, 2, (mask, full & ~mask), False)


def load_graph(data: str | Mapping) -> ColoredMultipartiteGraph:
    """Parse the JSON graph format.  Every cross-part pair must be listed."""
    if isinstance(data, str):
        data = json.loads(data)
    try:
        spec = MultipartiteSpec(tuple(data["parts"]))
        num_colors = int(data["num_colors"])
        overlap = bool(data.get("overlap_allowed", False))
        raw_edges = data["edges"]
    except (KeyError, TypeError) as exc:
        raise GraphError(f"malformed graph JSON: {exc!r}") from exc
    assignment: dict[tuple[int, int], list[int]] = {}
    for entry in raw_edges:
        u, v = int(entry["u"]), int(entry["v"])
        if not (0 <= u < spec.N and 0 <= v < spec.N):
            raise GraphError(f"edge {(u, v)} has a vertex outside 0..{spec.N - 1}")
        pair = _normalize_pair(u, v)
        if pair in assignment:
            raise GraphError(f"edge {pair} listed twice")
        assignment[pair] = list(entry["colors"])
    for pair in spec.edge_pairs:
        if pair not in assignment:
            raise GraphError(f"cross-part edge {pair} missing from JSON")
    return build_complete(spec, assignment, num_colors, overlap)


@dataclass(frozen=True)
class ColorSubgraph:
    """Connected components of one color class.

    Component ids are assigned in order of each component's lowest vertex,
    so they are stable across calls.
    """

    parent: ColoredMultipartiteGraph
    color: int
    component_of: tuple[int, ...]
    component_sizes: tuple[int, ...] = field(default=())

    def members(self, cid: int) -> list[int]:
        return [v for v, c in enumerate(self.component_of) if c == cid]

    @property
    def num_components(self) -> int:
        return len(self.component_sizes)


def component_labels(adj: list[int], vertices: int | None = None) -> list[int]:
    """Label components of a bitset-adjacency graph; -1 outside ``vertices``."""
    n = len(adj)
    if vertices is None:
        vertices = (1 << n) - 1
    label = [-1] * n
    cid = 0
    for s in range(n):
        if not vertices >> s & 1 or label[s] != -1:
            continue
        seen = 1 << s
        frontier = seen
        while frontier:
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                nxt |= adj[low.bit_length() - 1]
                f ^= low
            nxt &= vertices & ~seen
            seen |= nxt
            frontier = nxt
        f = seen
        while f:
            low = f & -f
            label[low.bit_length() - 1] = cid
            f ^= low
        cid += 1
    return label


def components(g: ColoredMultipartiteGraph, color: int) -> ColorSubgraph:
    labels = component_labels(g.adjacency(color))
    sizes = [0] * (max(labels) + 1 if labels else 0)
    for c in labels:
        sizes[c] += 1
    return ColorSubgraph(g, color, tuple(labels), tuple(sizes))


def enumerate_colorings(
    spec: MultipartiteSpec,
    num_colors: int,
    budget: int = DEFAULT_ENUMERATION_BUDGET,
    fix_first_edge: bool = False,
) -> Iterator[ColoredMultipartiteGraph]:
    """Yield every singleton coloring of ``spec`` in lexicographic word order.

    With ``fix_first_edge`` the first edge is pinned to color 1, which is only
    sound for statements symmetric under permuting colors.
    """
    m = spec.num_edges
    total = num_colors ** m
    if fix_first_edge and m:
        total //= num_colors
    if total > budget:
        raise BudgetExceeded(f"{total} colorings exceed budget {budget}; use random sampling")
    first = [(1,)] if fix_first_edge and m else []
    rest = [range(1, num_colors + 1)] * (m - len(first))
    for word in itertools.product(*first, *rest):
        yield from_word(spec, word, num_colors)
