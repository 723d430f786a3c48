"""Colorings with no large monochromatic connected matching.

Color 1 plays the role of red and color 2 of blue throughout.
"""

from __future__ import annotations

import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .graph import (
    ColoredMultipartiteGraph,
    GraphError,
    MultipartiteSpec,
    build_complete,
    component_labels,
    from_word,
)
from .matching import _induced_matching, adjacency_from_mask, alpha_star
from .scan import ColoringScanner, word_digits
from .stability import BadPartitionCertificate, check_bad_partition, minimal_lambda

RED, BLUE = 1, 2


def figure1_coloring(n: int) -> ColoredMultipartiteGraph:
    """K_{3n-2} split as U1 (2n-1 vertices) then U2 (n-1 vertices).

    Edges between U1 and U2 are red, edges inside either set blue.  Red is
    covered by U2 and blue splits into two cliques, so neither color has a
    connected matching of size n.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    size_u1 = 2 * n - 1
    spec = MultipartiteSpec.complete(3 * n - 2)
    return build_complete(spec, lambda u, v: {RED if (u < size_u1) != (v < size_u1) else BLUE})


def figure2_coloring(n: int, n1: int) -> ColoredMultipartiteGraph:
    """K_N minus the edges inside U1, with N = n1 + 2n - 2.

    U1 is the independent part (vertices ``0..n1-1``), followed by U2 and U3
    of n-1 vertices each.  Every edge touching U2 is red (including the edges
    inside U2); the rest are blue.
    """
    if n < 1 or n1 < 1:
        raise ValueError("n and n1 must be at least 1")
    spec = MultipartiteSpec((n1,) + (1,) * (2 * n - 2))
    u2 = range(n1, n1 + n - 1)
    return build_complete(spec, lambda u, v: {RED if u in u2 or v in u2 else BLUE})


def _check_host(n: int, host: MultipartiteSpec) -> None:
    if n < 1:
        raise ValueError("n must be at least 1")
    N, n1 = host.N, host.part_sizes[0]
    if N < 3 * n - 1 or N - n1 < 2 * n - 1:
        raise GraphError(
            f"host {host.part_sizes} too small for n={n}: need N >= {3 * n - 1} "
            f"and N - n_1 >= {2 * n - 1}"
        )


def _report_lambda(g, n, cert) -> Fraction:
    lam = minimal_lambda(g, n, cert)
    # the definitions need lam > 0; one edge of slack is the smallest meaningful value
    return lam if lam > 0 else Fraction(1, n * n)


def bad_partition_witness(
    kind: int, n: int, host: MultipartiteSpec
) -> tuple[ColoredMultipartiteGraph, BadPartitionCertificate]:
    """Transplant an extremal coloring onto ``host`` together with a bad
    partition that certifies it.

    Kind 1: ``W2`` is the last ``n`` vertices; W1-W2 edges are red and the
    rest blue, giving a (lam, 2, 1)-bad partition.

    Kind 2: ``V_j`` is the first part, the remaining vertices are split in
    order into ``U2`` (first half, rounded up) and ``U1``; edges touching U2
    are red and the rest blue, giving a (lam, 1, 2)-bad partition.

    The reported lam is the smallest value at which every clause holds, or
    1/n^2 when every clause already holds at lam = 0.
    """
    _check_host(n, host)
    N = host.N
    if kind == 1:
        w2 = set(range(N - n, N))
        g = build_complete(host, lambda u, v: {RED if (u in w2) != (v in w2) else BLUE})
        cert = BadPartitionCertificate(1, 1, BLUE, n, W1=range(N - n), W2=sorted(w2))
    elif kind == 2:
        vj = list(host.part(0))
        rest = list(range(len(vj), N))
        if len(rest) < 2:
            raise GraphError(f"host {host.part_sizes} too small to split into U1 and U2")
        half = (len(rest) + 1) // 2
        u2, u1 = set(rest[:half]), rest[half:]
        g = build_complete(host, lambda u, v: {RED if u in u2 or v in u2 else BLUE})
        cert = BadPartitionCertificate(2, 1, RED, n, j=1, V_j=vj, U1=u1, U2=sorted(u2))
    else:
        raise ValueError(f"kind must be 1 or 2, got {kind}")
    cert = cert.with_lambda(_report_lambda(g, n, cert))
    check = check_bad_partition(g, n, cert)
    assert check.passed, check.failed
    return g, cert


# --------------------------------------------------------------------------
# three-color search


@dataclass
class SearchOutcome:
    graph: ColoredMultipartiteGraph | None
    evaluated: int
    method: str
    alpha_star: tuple[int, ...] | None = None

    @property
    def found(self) -> bool:
        return self.graph is not None

    def to_dict(self) -> dict:
        return {
            "found": self.found,
            "method": self.method,
            "evaluated": self.evaluated,
            "alpha_star": list(self.alpha_star) if self.alpha_star else None,
            "graph": self.graph.to_dict() if self.graph else None,
        }


def _class_energy(spec, mask, cap) -> tuple[int, int]:
    """(penalty, alpha'_*) of one color class.

    Every component whose matching number exceeds ``cap`` is penalized, and
    the squared matching numbers of all components smooth the landscape.
    """
    adj = adjacency_from_mask(spec.edge_pairs, spec.N, mask)
    groups: dict[int, int] = {}
    for v, c in enumerate(component_labels(adj)):
        groups[c] = groups.get(c, 0) | 1 << v
    penalty = best = 0
    for members in groups.values():
        if members & (members - 1) == 0:
            continue
        nu = len(_induced_matching(adj, members))
        best = max(best, nu)
        penalty += 10 * max(0, nu - cap) + nu * nu
    return penalty, best


def _energy(spec, word, n, memo) -> tuple[int, tuple[int, ...]]:
    masks = [0, 0, 0]
    for e, c in enumerate(word):
        masks[c - 1] |= 1 << e
    total, vals = 0, []
    for m in masks:
        if m not in memo:
            memo[m] = _class_energy(spec, m, n - 1)
        total += memo[m][0]
        vals.append(memo[m][1])
    return total, tuple(vals)


def _anneal(args) -> tuple[tuple[int, ...] | None, int]:
    n, budget, seed, t0, t1 = args
    spec = MultipartiteSpec.complete(4 * n - 3)
    m = spec.num_edges
    rng = random.Random(seed)
    word = [rng.randint(1, 3) for _ in range(m)]
    memo: dict[int, tuple[int, int]] = {}
    energy, vals = _energy(spec, word, n, memo)
    evaluated = 1
    while evaluated < budget:
        if max(vals) <= n - 1:
            return tuple(word), evaluated
        temp = t0 * (t1 / t0) ** (evaluated / budget)
        e = rng.randrange(m)
        old = word[e]
        word[e] = rng.choice([c for c in (1, 2, 3) if c != old])
        new_energy, new_vals = _energy(spec, word, n, memo)
        evaluated += 1
        delta = new_energy - energy
        if delta <= 0 or rng.random() < math.exp(-delta / temp):
            energy, vals = new_energy, new_vals
        else:
            word[e] = old
    if max(vals) <= n - 1:
        return tuple(word), evaluated
    return None, evaluated


def search_3color_lower_bound(
    n: int,
    budget: int = 200_000,
    seed: int = 0,
    threads: int = 1,
    restart_budget: int = 60_000,
) -> SearchOutcome:
    """Look for a 3-coloring of K_{4n-3} in which every color has connected
    matching number at most n - 1.

    Hosts on at most 5 vertices are enumerated in color-word order and the
    first success is returned.  Larger hosts use simulated annealing over
    colorings with restarts seeded ``seed, seed+1, ...``; the result is the
    first success in restart order.  ``budget`` caps the number of colorings
    evaluated; a miss is not evidence of nonexistence.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    spec = MultipartiteSpec.complete(4 * n - 3)
    if n == 1:
        return SearchOutcome(from_word(spec, (), 3), 0, "trivial", (0, 0, 0))
    if budget <= 0:
        return SearchOutcome(None, 0, "none")
    if spec.N <= 5:
        scanner = ColoringScanner(spec, (n, n, n))
        result = scanner.scan(0, min(budget, scanner.total))
        if result.first_failure is None:
            return SearchOutcome(None, result.checked, "exhaustive")
        g = from_word(spec, word_digits(result.first_failure, spec.num_edges, 3), 3)
        return SearchOutcome(g, result.checked, "exhaustive", _verified(g, n))

    per = min(restart_budget, budget)
    jobs = []
    left = budget
    r = 0
    while left > 0:
        jobs.append((n, min(per, left), seed + r, 3.0, 0.05))
        left -= per
        r += 1
    total = 0
    if threads > 1:
        with ProcessPoolExecutor(threads) as pool:
            results = list(pool.map(_anneal, jobs))
    else:
        results = (_anneal(job) for job in jobs)
    for word, used in results:
        total += used
        if word is not None:
            g = from_word(spec, word, 3)
            return SearchOutcome(g, total, "annealing", _verified(g, n))
    return SearchOutcome(None, total, "annealing")


def _verified(g: ColoredMultipartiteGraph, n: int) -> tuple[int, ...]:
    vals = tuple(alpha_star(g, c).size for c in (1, 2, 3))
    if max(vals) > n - 1:
        raise AssertionError(f"search returned a coloring with alpha'_* = {vals}")
    return vals
