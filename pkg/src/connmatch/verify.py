"""Exhaustive and sampled checks of the two- and three-color connected
matching theorems on concrete instances."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from .extremal import figure1_coloring, figure2_coloring
from .graph import DEFAULT_ENUMERATION_BUDGET, MultipartiteSpec, from_word
from .matching import alpha_star
from .scan import ColoringScanner, parallel_scan, word_digits, word_masks

THM2 = "Thm2-multipartite"
THM3 = "Thm3-complete"
SPOT_CHECKS = 1000

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_INCONCLUSIVE, EXIT_USAGE = 0, 1, 2, 3


class PreconditionError(ValueError):
    """Instance violates the theorem's hypotheses and ``force`` was not set."""


@dataclass
class VerificationReport:
    statement: str
    params: dict
    mode: str
    colorings_checked: int
    total_colorings: int
    outcome: str  # holds | counterexample | sampled-no-counterexample | partial
    counterexample: dict | None = None
    wall_time: float = 0.0
    seed: int | None = None
    forced: bool = False
    preconditions: dict = field(default_factory=dict)
    spot_checks: int = 0

    @property
    def exit_code(self) -> int:
        if self.outcome == "holds":
            return EXIT_OK
        if self.outcome == "counterexample":
            return EXIT_COUNTEREXAMPLE
        return EXIT_INCONCLUSIVE

    def to_dict(self, include_time: bool = True) -> dict:
        d = {
            "statement": self.statement,
            "params": self.params,
            "mode": self.mode,
            "colorings_checked": self.colorings_checked,
            "total_colorings": self.total_colorings,
            "outcome": self.outcome,
            "counterexample": self.counterexample,
            "seed": self.seed,
            "forced": self.forced,
            "preconditions": self.preconditions,
            "spot_checks": self.spot_checks,
        }
        if include_time:
            d["wall_time"] = round(self.wall_time, 6)
        return d


def check_preconditions_thm2(spec: MultipartiteSpec, x1: int, x2: int) -> tuple[bool, list[str]]:
    """Test N >= 2*x1 + x2 - 1 and N - n_i >= x1 + x2 - 1 for every part.

    Returns ``(ok, reasons)`` with one reason per violated inequality.
    """
    if x1 < x2:
        raise ValueError(f"need x1 >= x2, got x1={x1}, x2={x2}")
    if x2 < 1:
        raise ValueError(f"need x2 >= 1, got {x2}")
    reasons = []
    N = spec.N
    if spec.s < 2:
        reasons.append(f"need s >= 2 parts, got {spec.s}")
    if N < 2 * x1 + x2 - 1:
        reasons.append(f"N = {N} < 2*x1 + x2 - 1 = {2 * x1 + x2 - 1}")
    for i, ni in enumerate(spec.part_sizes, start=1):
        if N - ni < x1 + x2 - 1:
            reasons.append(f"N - n_{i} = {N - ni} < x1 + x2 - 1 = {x1 + x2 - 1}")
    return not reasons, reasons


def _spot_check(scanner: ColoringScanner, seed: int, count: int) -> int:
    """Recompute the decision for random colorings directly with
    :func:`alpha_star` and compare with the scanner's fast path."""
    if count <= 0 or scanner.total == 0:
        return 0
    rng = random.Random(seed)
    spec, k = scanner.spec, scanner.k
    for _ in range(count):
        w = rng.randrange(scanner.total)
        word = word_digits(w, scanner.m, k)
        g = from_word(spec, word, k)
        direct = any(alpha_star(g, c).size >= x for c, x in enumerate(scanner.thresholds, start=1))
        fast = scanner.scan(w, w + 1).first_failure is None
        if direct != fast:
            raise AssertionError(f"fast path disagrees with alpha_star on word {word}")
    return count


def _run(
    statement: str,
    spec: MultipartiteSpec,
    thresholds: tuple[int, ...],
    params: dict,
    mode: str,
    budget: int,
    seed: int,
    threads: int,
    spot_checks: int,
) -> VerificationReport:
    start = time.perf_counter()
    k = len(thresholds)
    scanner = ColoringScanner(spec, thresholds)
    report = VerificationReport(statement, params, mode, 0, scanner.total, "", seed=seed)
    if mode == "exhaustive":
        stop = min(scanner.total, budget)
        result = parallel_scan(scanner, stop, threads)
        report.colorings_checked = result.checked
        if result.first_failure is not None:
            word = word_digits(result.first_failure, scanner.m, k)
            report.outcome = "counterexample"
            report.counterexample = _certify(spec, word, thresholds, result.first_failure)
        else:
            report.outcome = "holds" if stop == scanner.total else "partial"
    elif mode == "random":
        checked, word = scanner.sample(budget, seed)
        report.colorings_checked = checked
        if word is not None:
            report.outcome = "counterexample"
            report.counterexample = _certify(spec, word, thresholds, None)
        else:
            report.outcome = "sampled-no-counterexample"
    else:
        raise ValueError(f"unknown mode {mode!r}")
    report.spot_checks = _spot_check(scanner, seed, spot_checks)
    report.wall_time = time.perf_counter() - start
    return report


def _certify(spec, word, thresholds, index) -> dict:
    k = len(thresholds)
    g = from_word(spec, word, k)
    vals = [alpha_star(g, c).size for c in range(1, k + 1)]
    if any(v >= x for v, x in zip(vals, thresholds)):
        raise AssertionError(f"claimed counterexample {word} has alpha'_* = {vals}")
    return {
        "word_index": index,
        "word": list(word),
        "alpha_star": vals,
        "masks": list(word_masks(word, k)),
        "graph": g.to_dict(),
    }


def verify_thm2(
    spec: MultipartiteSpec,
    x1: int,
    x2: int,
    mode: str = "exhaustive",
    budget: int = DEFAULT_ENUMERATION_BUDGET,
    seed: int = 0,
    threads: int = 1,
    force: bool = False,
    spot_checks: int = SPOT_CHECKS,
) -> VerificationReport:
    """Check that every 2-coloring (edge partition) of ``spec`` has, for
    some color c, a connected matching of size ``x_c``.

    Exhaustive mode walks colorings in color-word order and reports the first
    counterexample.  It reports ``holds`` only after all 2^m colorings, and
    ``partial`` when ``budget`` stops it early.  Random mode draws ``budget``
    colorings and never claims ``holds``.  Instances that violate the
    hypotheses raise :class:`PreconditionError` unless ``force`` is set.
    """
    ok, reasons = check_preconditions_thm2(spec, x1, x2)
    if not ok and not force:
        raise PreconditionError("; ".join(reasons))
    params = {"parts": list(spec.part_sizes), "x": [x1, x2]}
    report = _run(THM2, spec, (x1, x2), params, mode, budget, seed, threads, spot_checks)
    report.forced = force
    report.preconditions = {"ok": ok, "reasons": reasons}
    return report


def verify_thm3(
    x1: int,
    x2: int,
    x3: int,
    mode: str = "exhaustive",
    budget: int = DEFAULT_ENUMERATION_BUDGET,
    seed: int = 0,
    threads: int = 1,
    spot_checks: int = SPOT_CHECKS,
) -> VerificationReport:
    """Check that every 3-coloring of K_N, N = 2*x1 + x2 + x3 - 2, has a
    color c with a connected matching of size ``x_c``."""
    if not (1 <= x2 <= x1 and 1 <= x3 <= x1):
        raise ValueError(f"need 1 <= x2, x3 <= x1, got {(x1, x2, x3)}")
    N = 2 * x1 + x2 + x3 - 2
    spec = MultipartiteSpec.complete(N)
    params = {"N": N, "x": [x1, x2, x3]}
    report = _run(THM3, spec, (x1, x2, x3), params, mode, budget, seed, threads, spot_checks)
    report.preconditions = {"ok": True, "reasons": []}
    return report


@dataclass
class SweepReport:
    n: int
    which: int
    entries: list[dict]

    @property
    def confirmed(self) -> bool:
        return all(e["below_n"] for e in self.entries)

    @property
    def exit_code(self) -> int:
        return EXIT_OK if self.confirmed else EXIT_COUNTEREXAMPLE

    def to_dict(self) -> dict:
        return {"n": self.n, "which": self.which, "confirmed": self.confirmed, "entries": self.entries}


def necessity_sweep(n: int, which: int, n1_values=None, cap: int = 12) -> SweepReport:
    """Measure both colors' connected matching numbers on the lower-bound
    colorings showing a size condition cannot be dropped.

    ``which=1`` uses the K_{3n-2} coloring; ``which=2`` uses the K_N minus
    clique coloring for each n1 in ``n1_values`` (default n, 2n, 3n).
    """
    if not 1 <= n <= cap:
        raise ValueError(f"n must be in 1..{cap}")
    entries = []
    if which == 1:
        builds = [({"n": n}, figure1_coloring(n))]
    elif which == 2:
        n1s = n1_values if n1_values is not None else (n, 2 * n, 3 * n)
        builds = [({"n": n, "n1": n1}, figure2_coloring(n, n1)) for n1 in n1s]
    else:
        raise ValueError(f"which must be 1 or 2, got {which}")
    for params, g in builds:
        vals = [alpha_star(g, c).size for c in (1, 2)]
        entries.append({**params, "N": g.N, "alpha_star": vals, "below_n": max(vals) < n})
    return SweepReport(n, which, entries)
