"""Gallai-Edmonds decomposition of a color class and a checker for its
structural guarantees."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .graph import ColoredMultipartiteGraph, component_labels
from .matching import _induced_matching, matching_number

DEFAULT_SUBSET_CAP = 12


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _mask(vertices) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class GEDecomposition:
    A: frozenset[int]
    C: frozenset[int]
    D: frozenset[int]
    d_components: tuple[tuple[int, ...], ...]
    matching_size: int

    @property
    def a(self) -> int:
        return len(self.A)

    @property
    def k(self) -> int:
        return len(self.d_components)

    @property
    def vertices(self) -> frozenset[int]:
        return self.A | self.C | self.D

    @property
    def deficiency(self) -> int:
        """Vertices left exposed by every maximum matching: k - a."""
        return self.k - self.a

    def to_dict(self) -> dict:
        return {
            "A": sorted(self.A),
            "C": sorted(self.C),
            "D_components": [list(c) for c in self.d_components],
        }


def _decompose(adj: list[int], vertices: int) -> GEDecomposition:
    nu = matching_number(adj, vertices)
    d_mask = 0
    for v in _bits(vertices):
        if matching_number(adj, vertices & ~(1 << v)) == nu:
            d_mask |= 1 << v
    a_mask = 0
    for v in _bits(vertices & ~d_mask):
        if adj[v] & d_mask:
            a_mask |= 1 << v
    c_mask = vertices & ~d_mask & ~a_mask

    labels = component_labels(adj, d_mask)
    groups: dict[int, list[int]] = {}
    for v in _bits(d_mask):
        groups.setdefault(labels[v], []).append(v)
    comps = sorted((tuple(g) for g in groups.values()), key=lambda c: (-len(c), c[0]))
    return GEDecomposition(
        frozenset(_bits(a_mask)), frozenset(_bits(c_mask)), frozenset(_bits(d_mask)),
        tuple(comps), nu,
    )


def ge_decompose(
    g: ColoredMultipartiteGraph, color: int, restrict_to=None
) -> GEDecomposition:
    """Decompose color class ``color`` (optionally the subgraph induced on
    ``restrict_to``) into (A, C, D).

    D is found by the direct test: v is in D iff deleting v leaves the
    maximum matching size unchanged.  ``d_components`` are ordered by size,
    largest first, ties broken by lowest vertex.
    """
    g.check_color(color)
    adj = g.adjacency(color)
    vertices = (1 << g.N) - 1 if restrict_to is None else _mask(restrict_to)
    return _decompose(adj, vertices)


def _factor_critical(adj: list[int], vertices: int) -> bool:
    count = vertices.bit_count()
    if count % 2 == 0:
        # even order always fails one side of the definition
        return False
    need = (count - 1) // 2
    return all(matching_number(adj, vertices & ~(1 << v)) == need for v in _bits(vertices))


def is_factor_critical(g: ColoredMultipartiteGraph, vertices, color: int) -> bool:
    """True iff the color-``color`` subgraph induced on ``vertices`` has no
    perfect matching but every single-vertex deletion leaves one."""
    g.check_color(color)
    return _factor_critical(g.adjacency(color), _mask(vertices))


@dataclass
class GEReport:
    passed: bool
    failed_clause: str | None = None
    detail: str = ""
    subsets_checked: int = 0
    sampled: bool = False
    matching: tuple[tuple[int, int], ...] = field(default=())

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "failed_clause": self.failed_clause,
            "detail": self.detail,
            "subsets_checked": self.subsets_checked,
            "sampled": self.sampled,
            "matching": [list(e) for e in self.matching],
        }


def verify_ge(
    dec: GEDecomposition,
    g: ColoredMultipartiteGraph,
    color: int,
    subset_cap: int = DEFAULT_SUBSET_CAP,
    samples: int = 4096,
    seed: int = 0,
) -> GEReport:
    """Check a decomposition against one freshly computed maximum matching.

    Clauses, in the order checked: ``partition``, ``a`` (C covered, A matched
    into distinct D-components), ``b`` (D-components factor-critical and
    near-perfectly matched), ``c`` (every nonempty S of A sees at least |S|+1
    D-components), ``deficiency`` (matching size = (|V| - k + a) / 2).

    Above ``subset_cap`` vertices in A, clause ``c`` is tested on ``samples``
    random subsets and the report is flagged ``sampled``.
    """
    g.check_color(color)
    adj = g.adjacency(color)
    verts = dec.vertices
    parts = [dec.A, dec.C, dec.D]
    if sum(map(len, parts)) != len(verts) or any(x & y for x in parts for y in parts if x is not y):
        return GEReport(False, "partition", "A, C, D are not pairwise disjoint")
    if set().union(*map(set, dec.d_components)) != set(dec.D) or sum(map(len, dec.d_components)) != len(dec.D):
        return GEReport(False, "partition", "d_components do not partition D")

    vmask = _mask(verts)
    edges = tuple(_induced_matching(adj, vmask))
    mate = {}
    for u, v in edges:
        mate[u], mate[v] = v, u
    report = GEReport(True, matching=edges)

    exposed_c = sorted(v for v in dec.C if v not in mate)
    if exposed_c:
        return _fail(report, "a", f"C vertices {exposed_c} are exposed")
    comp_of = {v: i for i, comp in enumerate(dec.d_components) for v in comp}
    used = set()
    for v in sorted(dec.A):
        w = mate.get(v)
        if w is None or w not in comp_of:
            return _fail(report, "a", f"A vertex {v} is not matched into D")
        if comp_of[w] in used:
            return _fail(report, "a", f"two A vertices matched into D-component {comp_of[w]}")
        used.add(comp_of[w])

    for i, comp in enumerate(dec.d_components):
        cmask = _mask(comp)
        if not _factor_critical(adj, cmask):
            return _fail(report, "b", f"D-component {i} {list(comp)} is not factor-critical")
        inside = sum(1 for u, v in edges if cmask >> u & 1 and cmask >> v & 1)
        if 2 * inside != len(comp) - 1:
            return _fail(report, "b", f"D-component {i} has {inside} matching edges, not near-perfect")

    a_list = sorted(dec.A)
    comp_masks = [_mask(c) for c in dec.d_components]
    nbr = {v: adj[v] for v in a_list}

    def hits(subset_bits: int) -> int:
        reach = 0
        for j, v in enumerate(a_list):
            if subset_bits >> j & 1:
                reach |= nbr[v]
        return sum(1 for cm in comp_masks if reach & cm)

    if len(a_list) <= subset_cap:
        candidates = range(1, 1 << len(a_list))
    else:
        report.sampled = True
        rng = random.Random(seed)
        candidates = (rng.randrange(1, 1 << len(a_list)) for _ in range(samples))
    for sub in candidates:
        report.subsets_checked += 1
        size = sub.bit_count()
        if hits(sub) < size + 1:
            chosen = [a_list[j] for j in range(len(a_list)) if sub >> j & 1]
            return _fail(report, "c", f"N({chosen}) meets fewer than {size + 1} D-components")

    if 2 * len(edges) != len(verts) - dec.k + dec.a:
        return _fail(report, "deficiency",
                     f"matching size {len(edges)} but (|V| - k + a)/2 = {(len(verts) - dec.k + dec.a) / 2}")
    return report


def _fail(report: GEReport, clause: str, detail: str) -> GEReport:
    report.passed = False
    report.failed_clause = clause
    report.detail = detail
    return report
