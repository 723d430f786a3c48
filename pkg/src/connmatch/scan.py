"""Exhaustive and sampled scans over singleton colorings.

A scan looks for colorings in which *every* color class ``c`` has connected
matching number below its threshold ``x_c`` (a counterexample to "for some
c, alpha'_*(G_c) >= x_c").  Colorings are addressed by their word index: the
color word in edge-index order read as a base-``k`` numeral with the first
edge most significant and color ``c`` written as digit ``c - 1``.  Word-index
order is therefore lexicographic order of color words.

For hosts with few edges the connected matching number of every edge subset
is tabulated once, after which whole blocks of colorings are decided with
array lookups.  Larger hosts fall back to a per-coloring loop with a memo.
"""

from __future__ import annotations

from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .graph import MultipartiteSpec
from .matching import connected_matching_number

TABLE_MAX_EDGES = 16
CHUNK = 1 << 18


def word_digits(index: int, num_edges: int, num_colors: int) -> tuple[int, ...]:
    """Color word (colors 1..k) for a word index."""
    word = [0] * num_edges
    for e in range(num_edges - 1, -1, -1):
        index, d = divmod(index, num_colors)
        word[e] = d + 1
    return tuple(word)


def word_index(word: Sequence[int], num_colors: int) -> int:
    idx = 0
    for c in word:
        idx = idx * num_colors + (c - 1)
    return idx


def word_masks(word: Sequence[int], num_colors: int) -> tuple[int, ...]:
    masks = [0] * num_colors
    for e, c in enumerate(word):
        masks[c - 1] |= 1 << e
    return tuple(masks)


def alpha_star_table(spec: MultipartiteSpec, floor: int = 0) -> np.ndarray:
    """alpha'_* for every edge subset of ``spec`` (indexed by edge bitmask).

    Subsets with fewer than ``floor`` edges are not solved; their entry is the
    edge count, which is still below ``floor`` and so decides any threshold
    comparison against ``floor`` or more correctly.
    """
    m = spec.num_edges
    if m > TABLE_MAX_EDGES:
        raise ValueError(f"{m} edges is too many to tabulate (limit {TABLE_MAX_EDGES})")
    pairs, n = spec.edge_pairs, spec.N
    table = np.zeros(1 << m, dtype=np.int8)
    for mask in range(1 << m):
        count = mask.bit_count()
        table[mask] = count if count < floor else connected_matching_number(pairs, n, mask)
    return table


@dataclass
class ScanResult:
    checked: int
    first_failure: int | None


class ColoringScanner:
    """Decides, for colorings of one host, whether some color reaches its
    threshold."""

    def __init__(self, spec: MultipartiteSpec, thresholds: Sequence[int]):
        self.spec = spec
        self.thresholds = tuple(int(x) for x in thresholds)
        self.k = len(self.thresholds)
        self.m = spec.num_edges
        self.total = self.k ** self.m
        self._memo: dict[int, int] = {}
        self.reach = None
        if self.m <= TABLE_MAX_EDGES:
            table = alpha_star_table(spec, floor=min(self.thresholds))
            self.reach = [table >= x for x in self.thresholds]

    def alpha(self, mask: int) -> int:
        val = self._memo.get(mask)
        if val is None:
            val = connected_matching_number(self.spec.edge_pairs, self.spec.N, mask)
            self._memo[mask] = val
        return val

    def reaches(self, masks: Sequence[int]) -> bool:
        """Early exit in color order; a class with fewer than x_c edges is
        skipped without solving it."""
        for mask, x in zip(masks, self.thresholds):
            if mask.bit_count() < x:
                continue
            if self.alpha(mask) >= x:
                return True
        return False

    def _masks_for(self, indices: np.ndarray) -> list[np.ndarray]:
        idx = indices.astype(np.int64, copy=True)
        masks = [np.zeros(idx.shape, dtype=np.int64) for _ in range(self.k)]
        for e in range(self.m - 1, -1, -1):
            digit = idx % self.k
            idx //= self.k
            bit = np.int64(1) << np.int64(e)
            for c in range(self.k):
                masks[c] |= np.where(digit == c, bit, np.int64(0))
        return masks

    def reach_vector(self, indices: np.ndarray) -> np.ndarray:
        masks = self._masks_for(indices)
        ok = np.zeros(indices.shape, dtype=bool)
        for c in range(self.k):
            ok |= self.reach[c][masks[c]]
        return ok

    def scan(self, start: int, stop: int) -> ScanResult:
        """Check word indices ``start <= w < stop`` in order, stopping at the
        first counterexample."""
        if self.reach is not None:
            pos = start
            while pos < stop:
                end = min(stop, pos + CHUNK)
                ok = self.reach_vector(np.arange(pos, end, dtype=np.int64))
                bad = np.flatnonzero(~ok)
                if bad.size:
                    first = pos + int(bad[0])
                    return ScanResult(first - start + 1, first)
                pos = end
            return ScanResult(stop - start, None)
        for w in range(start, stop):
            if not self.reaches(word_masks(word_digits(w, self.m, self.k), self.k)):
                return ScanResult(w - start + 1, w)
        return ScanResult(stop - start, None)

    def failing_indices(self, start: int = 0, stop: int | None = None) -> np.ndarray:
        """All counterexample word indices in ``[start, stop)``."""
        stop = self.total if stop is None else stop
        if self.reach is None:
            return np.array(
                [w for w in range(start, stop)
                 if not self.reaches(word_masks(word_digits(w, self.m, self.k), self.k))],
                dtype=np.int64,
            )
        out = []
        for pos in range(start, stop, CHUNK):
            end = min(stop, pos + CHUNK)
            ok = self.reach_vector(np.arange(pos, end, dtype=np.int64))
            out.append(pos + np.flatnonzero(~ok))
        return np.concatenate(out) if out else np.zeros(0, dtype=np.int64)

    def sample(self, count: int, seed: int) -> tuple[int, tuple[int, ...] | None]:
        """Uniform random colorings from a PCG64 stream seeded with ``seed``.

        Returns the number examined and the first counterexample word, if any.
        """
        rng = np.random.Generator(np.random.PCG64(seed))
        done = 0
        while done < count:
            size = min(CHUNK, count - done)
            digits = rng.integers(0, self.k, size=(size, self.m), dtype=np.int64)
            if self.reach is not None:
                weights = np.int64(1) << np.arange(self.m, dtype=np.int64)
                ok = np.zeros(size, dtype=bool)
                for c in range(self.k):
                    masks = ((digits == c).astype(np.int64) * weights).sum(axis=1)
                    ok |= self.reach[c][masks]
                bad = np.flatnonzero(~ok)
                if bad.size:
                    row = int(bad[0])
                    return done + row + 1, tuple(int(d) + 1 for d in digits[row])
            else:
                for row in range(size):
                    word = tuple(int(d) + 1 for d in digits[row])
                    if not self.reaches(word_masks(word, self.k)):
                        return done + row + 1, word
            done += size
        return done, None


_WORKER: ColoringScanner | None = None


def _init_worker(scanner: ColoringScanner) -> None:
    global _WORKER
    _WORKER = scanner


def _scan_slice(bounds: tuple[int, int]) -> ScanResult:
    return _WORKER.scan(*bounds)


def parallel_scan(scanner: ColoringScanner, stop: int, threads: int = 1) -> ScanResult:
    """Scan word indices ``[0, stop)`` split into contiguous prefix slices.

    The reported counterexample is the one with the smallest word index and
    ``checked`` counts colorings up to and including it, so the result does
    not depend on ``threads``.
    """
    threads = max(1, min(threads, stop or 1))
    if threads == 1 or stop < 2 * CHUNK:
        return scanner.scan(0, stop)
    edges = np.linspace(0, stop, threads * 4 + 1, dtype=np.int64)
    slices = [(int(a), int(b)) for a, b in zip(edges, edges[1:]) if b > a]
    with ProcessPoolExecutor(threads, initializer=_init_worker, initargs=(scanner,)) as pool:
        results = list(pool.map(_scan_slice, slices))
    hits = [r.first_failure for r in results if r.first_failure is not None]
    if hits:
        first = min(hits)
        return ScanResult(first + 1, first)
    return ScanResult(stop, None)
