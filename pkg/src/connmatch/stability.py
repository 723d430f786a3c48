"""Suitability, bad partitions, and an audit of the stability statement at
desk-scale constants.

All inequalities are decided with :class:`fractions.Fraction` so boundary
cases such as ``|W_2| == (1 - lam) * n`` come out exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal

from .graph import ColoredMultipartiteGraph, component_labels
from .matching import alpha_star

OverlapPolicy = Literal["per_color", "exclusive"]
EXHAUSTIVE_LIMIT = 16
ALL_KINDS = ((1, 1), (2, 1), (1, 2), (2, 2))  # (color i, kind j)


class PartitionError(ValueError):
    """The blocks of a certificate do not partition V(G) as required."""


def as_fraction(x) -> Fraction:
    """Exact rational from an int, Fraction, decimal string or float repr."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(x)


def _mask(vertices) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# --------------------------------------------------------------------------
# suitability


@dataclass(frozen=True)
class SuitabilityParams:
    n: int
    s: int
    epsilon: Fraction
    gamma: Fraction | None = None
    strict: bool = False

    def __post_init__(self):
        object.__setattr__(self, "epsilon", as_fraction(self.epsilon))
        if self.gamma is not None:
            object.__setattr__(self, "gamma", as_fraction(self.gamma))
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.strict and self.violations():
            raise ValueError("strict regime violated: " + "; ".join(self.violations()))

    def violations(self) -> list[str]:
        """Unmet requirements of the regime in which the stability theorem is
        stated (n >= s >= 2, 0 < eps < gamma/1000 < 1/10^6, n > 100/gamma)."""
        out = []
        if not self.n >= self.s >= 2:
            out.append(f"need n >= s >= 2, got n={self.n}, s={self.s}")
        eps, gamma = self.epsilon, self.gamma
        if gamma is None:
            out.append("gamma not given")
            return out
        if not eps < gamma / 1000:
            out.append(f"need eps < gamma/1000, got eps={eps}, gamma={gamma}")
        if not gamma / 1000 < Fraction(1, 10**6):
            out.append(f"need gamma/1000 < 10^-6, got gamma={gamma}")
        if not self.n > 100 / gamma:
            out.append(f"need n > 100/gamma = {float(100 / gamma):g}, got n={self.n}")
        return out


@dataclass
class SuitabilityReport:
    s1_ok: bool
    s2_ok: bool
    tilde_sets: list[list[int]]
    tilde_total: int
    s3_ok: bool

    @property
    def suitable(self) -> bool:
        return self.s1_ok and self.s2_ok and self.s3_ok

    def to_dict(self) -> dict:
        return {
            "suitable": self.suitable,
            "s1_ok": self.s1_ok,
            "s2_ok": self.s2_ok,
            "s3_ok": self.s3_ok,
            "tilde_sets": self.tilde_sets,
            "tilde_total": self.tilde_total,
        }


def check_suitability(g: ColoredMultipartiteGraph, params: SuitabilityParams) -> SuitabilityReport:
    """Evaluate the three suitability conditions for a 2-colored host.

    Degrees are taken in the union of both colors.  A vertex of part ``V_i``
    is low when its degree is at most ``N - eps*n - n_i``.
    """
    if g.num_colors != 2:
        raise ValueError("suitability is defined for 2-colorings")
    sizes = g.spec.part_sizes
    N, n, eps = g.N, params.n, params.epsilon
    if params.s != g.spec.s:
        raise ValueError(f"params.s={params.s} but the host has {g.spec.s} parts")
    s1 = N >= 3 * n - 1
    s2 = N - sizes[0] >= 2 * n - 1
    union = [0] * N
    for m in g.color_masks:
        for k in _bits(m):
            u, v = g.edge_pairs[k]
            union[u] |= 1 << v
            union[v] |= 1 << u
    tilde = []
    for j, nj in enumerate(sizes):
        cutoff = N - eps * n - nj
        tilde.append([v for v in g.spec.part(j) if union[v].bit_count() <= cutoff])
    total = sum(map(len, tilde))
    return SuitabilityReport(s1, s2, tilde, total, total < eps * n)


# --------------------------------------------------------------------------
# bad partitions


@dataclass
class BadPartitionCertificate:
    """A claimed (lam, i, kind)-bad partition.

    Kind 1 uses ``W1``/``W2``.  Kind 2 uses ``j`` (1-based part index),
    ``V_j``, ``U1``, ``U2``.  ``measured`` is filled in by the checker.
    """

    kind: int
    lam: Fraction
    i: int
    n: int
    W1: tuple[int, ...] = ()
    W2: tuple[int, ...] = ()
    j: int | None = None
    V_j: tuple[int, ...] = ()
    U1: tuple[int, ...] = ()
    U2: tuple[int, ...] = ()
    measured: dict = field(default_factory=dict)

    def __post_init__(self):
        self.lam = as_fraction(self.lam)
        if self.kind not in (1, 2):
            raise ValueError(f"kind must be 1 or 2, got {self.kind}")
        if self.i not in (1, 2):
            raise ValueError(f"color i must be 1 or 2, got {self.i}")
        for name in ("W1", "W2", "V_j", "U1", "U2"):
            setattr(self, name, tuple(sorted(getattr(self, name))))

    def with_lambda(self, lam) -> BadPartitionCertificate:
        return BadPartitionCertificate(
            self.kind, lam, self.i, self.n, self.W1, self.W2, self.j, self.V_j, self.U1, self.U2,
        )

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "lambda": str(self.lam), "i": self.i, "n": self.n}
        if self.kind == 1:
            d.update(W1=list(self.W1), W2=list(self.W2))
        else:
            d.update(j=self.j, V_j=list(self.V_j), U1=list(self.U1), U2=list(self.U2))
        d["measured"] = {k: (str(v) if isinstance(v, Fraction) else v) for k, v in self.measured.items()}
        return d

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, data: dict) -> BadPartitionCertificate:
        kind = int(data["kind"])
        common = dict(kind=kind, lam=as_fraction(data["lambda"]), i=int(data["i"]), n=int(data["n"]))
        if kind == 1:
            cert = cls(**common, W1=data["W1"], W2=data["W2"])
        else:
            cert = cls(**common, j=int(data["j"]), V_j=data["V_j"], U1=data["U1"], U2=data["U2"])
        cert.measured = dict(data.get("measured", {}))
        return cert


@dataclass
class Clause:
    name: str
    lhs: Fraction
    op: str
    rhs: Fraction

    @property
    def ok(self) -> bool:
        return self.lhs <= self.rhs

    def to_dict(self) -> dict:
        return {"clause": self.name, "lhs": str(self.lhs), "op": self.op,
                "rhs": str(self.rhs), "ok": self.ok}


@dataclass
class BadPartitionCheck:
    passed: bool
    clauses: list[Clause]
    measured: dict

    @property
    def failed(self) -> list[str]:
        return [c.name for c in self.clauses if not c.ok]

    def to_dict(self) -> dict:
        return {"passed": self.passed, "failed": self.failed,
                "clauses": [c.to_dict() for c in self.clauses], "measured": self.measured}


class _ColorView:
    """Bitset adjacency of both colors under an overlap policy."""

    def __init__(self, g: ColoredMultipartiteGraph, overlap_policy: OverlapPolicy = "per_color"):
        if g.num_colors != 2:
            raise ValueError("bad partitions are defined for 2-colorings")
        if overlap_policy not in ("per_color", "exclusive"):
            raise ValueError(f"unknown overlap policy {overlap_policy!r}")
        m1, m2 = g.color_masks
        if overlap_policy == "exclusive":
            m1, m2 = m1 & ~m2, m2 & ~m1
        self.adj = {}
        for c, mask in ((1, m1), (2, m2)):
            adj = [0] * g.N
            for k in _bits(mask):
                u, v = g.edge_pairs[k]
                adj[u] |= 1 << v
                adj[v] |= 1 << u
            self.adj[c] = adj

    def between(self, color: int, x: int, y: int) -> int:
        adj = self.adj[color]
        return sum((adj[v] & y).bit_count() for v in _bits(x))

    def inside(self, color: int, x: int) -> int:
        return self.between(color, x, x) // 2


def _kind1_clauses(n: int, n1: int, lam: Fraction, w2: int, cross: int, inside: int) -> list[Clause]:
    bound = lam * n * n
    return [
        Clause("i-lower", (1 - lam) * n, "<=", Fraction(w2)),
        Clause("i-upper", Fraction(w2), "<=", (1 + lam) * n1),
        Clause("ii", Fraction(cross), "<=", bound),
        Clause("iii", Fraction(inside), "<=", bound),
    ]


def _kind2_clauses(n: int, lam: Fraction, nj: int, u1: int, u2: int, e1: int, e2: int) -> list[Clause]:
    bound = lam * n * n
    lo, hi = (1 - lam) * n, (1 + lam) * n
    return [
        Clause("i", Fraction(e1), "<=", bound),
        Clause("ii", Fraction(e2), "<=", bound),
        Clause("iii", lo, "<=", Fraction(nj)),
        Clause("iv-lower", lo, "<=", Fraction(u1)),
        Clause("iv-upper", Fraction(u1), "<=", hi),
        Clause("v-lower", lo, "<=", Fraction(u2)),
        Clause("v-upper", Fraction(u2), "<=", hi),
    ]


def _measure(g: ColoredMultipartiteGraph, cert: BadPartitionCertificate, view: _ColorView) -> dict:
    full = (1 << g.N) - 1
    other = 3 - cert.i
    if cert.kind == 1:
        w1, w2 = _mask(cert.W1), _mask(cert.W2)
        if w1 & w2 or w1 | w2 != full or len(cert.W1) + len(cert.W2) != g.N:
            raise PartitionError("W1, W2 do not partition V(G)")
        return {
            "W1_size": len(cert.W1),
            "W2_size": len(cert.W2),
            "n1": g.spec.part_sizes[0],
            "cross_edges_color_i": view.between(cert.i, w2, w1),
            "inside_W1_edges_other_color": view.inside(other, w1),
        }
    if cert.j is None or not 1 <= cert.j <= g.spec.s:
        raise PartitionError(f"part index j={cert.j} out of range 1..{g.spec.s}")
    if tuple(g.spec.part(cert.j - 1)) != cert.V_j:
        raise PartitionError(f"V_j is not part {cert.j} of the host")
    vj, u1, u2 = _mask(cert.V_j), _mask(cert.U1), _mask(cert.U2)
    if vj & u1 or vj & u2 or u1 & u2 or vj | u1 | u2 != full:
        raise PartitionError("V_j, U1, U2 do not partition V(G)")
    return {
        "n_j": len(cert.V_j),
        "U1_size": len(cert.U1),
        "U2_size": len(cert.U2),
        "Vj_U1_edges_color_i": view.between(cert.i, vj, u1),
        "Vj_U2_edges_other_color": view.between(other, vj, u2),
    }


def _clauses(cert: BadPartitionCertificate, measured: dict, lam: Fraction) -> list[Clause]:
    if cert.kind == 1:
        return _kind1_clauses(cert.n, measured["n1"], lam, measured["W2_size"],
                              measured["cross_edges_color_i"], measured["inside_W1_edges_other_color"])
    return _kind2_clauses(cert.n, lam, measured["n_j"], measured["U1_size"], measured["U2_size"],
                          measured["Vj_U1_edges_color_i"], measured["Vj_U2_edges_other_color"])


def check_bad_partition(
    g: ColoredMultipartiteGraph,
    n: int,
    cert: BadPartitionCertificate,
    overlap_policy: OverlapPolicy = "per_color",
) -> BadPartitionCheck:
    """Measure every quantity named by the certificate's definition on ``g``
    and test each inequality at ``cert.lam``.

    ``overlap_policy="per_color"`` counts an edge carrying both colors in
    both color classes; ``"exclusive"`` counts only single-colored edges.
    Fills ``cert.measured``.  Blocks that fail to partition V(G), or a kind-2
    ``V_j`` that is not part ``j``, raise :class:`PartitionError`.
    """
    if cert.n != n:
        raise ValueError(f"certificate is for n={cert.n}, checked against n={n}")
    if cert.lam <= 0:
        raise ValueError("lambda must be positive")
    view = _ColorView(g, overlap_policy)
    measured = _measure(g, cert, view)
    cert.measured = measured
    clauses = _clauses(cert, measured, cert.lam)
    return BadPartitionCheck(all(c.ok for c in clauses), clauses, measured)


def minimal_lambda(
    g: ColoredMultipartiteGraph, n: int, cert: BadPartitionCertificate,
    overlap_policy: OverlapPolicy = "per_color",
) -> Fraction:
    """Smallest lam >= 0 at which the certificate's partition satisfies every
    clause (0 means any positive lam works)."""
    m = _measure(g, cert, _ColorView(g, overlap_policy))
    n2 = Fraction(n * n)
    if cert.kind == 1:
        needs = [1 - Fraction(m["W2_size"], n), Fraction(m["W2_size"], m["n1"]) - 1,
                 m["cross_edges_color_i"] / n2, m["inside_W1_edges_other_color"] / n2]
    else:
        needs = [m["Vj_U1_edges_color_i"] / n2, m["Vj_U2_edges_other_color"] / n2,
                 1 - Fraction(m["n_j"], n)]
        for key in ("U1_size", "U2_size"):
            needs += [1 - Fraction(m[key], n), Fraction(m[key], n) - 1]
    return max([Fraction(0), *needs])


# --------------------------------------------------------------------------
# search


@dataclass
class SearchResult:
    certificate: BadPartitionCertificate | None
    exhaustive: bool
    candidates_checked: int = 0

    @property
    def found(self) -> bool:
        return self.certificate is not None

    @property
    def outcome(self) -> str:
        if self.found:
            return "found"
        return "not-found" if self.exhaustive else "inconclusive"

    def to_dict(self) -> dict:
        return {
            "outcome": self.outcome,
            "exhaustive": self.exhaustive,
            "candidates_checked": self.candidates_checked,
            "certificate": self.certificate.to_dict() if self.certificate else None,
        }


class _Searcher:
    def __init__(self, g, n, lam, overlap_policy):
        self.g, self.n, self.lam = g, n, as_fraction(lam)
        self.view = _ColorView(g, overlap_policy)
        self.full = (1 << g.N) - 1
        self.n1 = g.spec.part_sizes[0]
        self.bound = self.lam * n * n
        self.lo, self.hi = (1 - self.lam) * n, (1 + self.lam) * n
        self.checked = 0

    # kind 1 -------------------------------------------------------------
    def kind1_ok(self, i: int, w2: int) -> bool:
        self.checked += 1
        size = w2.bit_count()
        if not self.lo <= size <= (1 + self.lam) * self.n1:
            return False
        w1 = self.full & ~w2
        if self.view.between(i, w2, w1) > self.bound:
            return False
        return self.view.inside(3 - i, w1) <= self.bound

    def kind1_score(self, i: int, w2: int):
        w1 = self.full & ~w2
        size = w2.bit_count()
        n, n2 = self.n, self.n * self.n
        gaps = [
            (self.lo - size) / n,
            (size - (1 + self.lam) * self.n1) / n,
            (self.view.between(i, w2, w1) - self.bound) / n2,
            (self.view.inside(3 - i, w1) - self.bound) / n2,
        ]
        pos = [max(Fraction(0), x) for x in gaps]
        return max(pos), sum(pos)

    def kind1_cert(self, i: int, w2: int) -> BadPartitionCertificate:
        w1 = self.full & ~w2
        return BadPartitionCertificate(1, self.lam, i, self.n, W1=tuple(_bits(w1)), W2=tuple(_bits(w2)))

    # kind 2 -------------------------------------------------------------
    def kind2_ok(self, i: int, vj: int, u1: int, u2: int) -> bool:
        self.checked += 1
        if not (self.lo <= u1.bit_count() <= self.hi and self.lo <= u2.bit_count() <= self.hi):
            return False
        if self.view.between(i, vj, u1) > self.bound:
            return False
        return self.view.between(3 - i, vj, u2) <= self.bound

    def kind2_score(self, i: int, vj: int, u1: int, u2: int):
        n, n2 = self.n, self.n * self.n
        gaps = [(self.view.between(i, vj, u1) - self.bound) / n2,
                (self.view.between(3 - i, vj, u2) - self.bound) / n2]
        for u in (u1, u2):
            gaps += [(self.lo - u.bit_count()) / n, (u.bit_count() - self.hi) / n]
        pos = [max(Fraction(0), x) for x in gaps]
        return max(pos), sum(pos)

    def kind2_cert(self, i, j, vj, u1, u2) -> BadPartitionCertificate:
        return BadPartitionCertificate(2, self.lam, i, self.n, j=j, V_j=tuple(_bits(vj)),
                                       U1=tuple(_bits(u1)), U2=tuple(_bits(u2)))


def _local_search(start: int, free: int, score, max_rounds: int) -> int:
    """Greedy single-vertex flips inside ``free`` that lower ``score``."""
    cur, cur_score = start, score(start)
    for _ in range(max_rounds):
        if cur_score[0] == 0:
            return cur
        best, best_score = None, cur_score
        for v in _bits(free):
            cand = cur ^ (1 << v)
            sc = score(cand)
            if sc < best_score:
                best, best_score = cand, sc
        if best is None:
            return cur
        cur, cur_score = best, best_score
    return cur


def search_bad_partition(
    g: ColoredMultipartiteGraph,
    n: int,
    lam,
    kinds=ALL_KINDS,
    exhaustive_limit: int = EXHAUSTIVE_LIMIT,
    overlap_policy: OverlapPolicy = "per_color",
    max_rounds: int | None = None,
) -> SearchResult:
    """Look for a (lam, i, kind)-bad partition for each ``(i, kind)`` in
    ``kinds``, tried in the order (kind, i).

    Up to ``exhaustive_limit`` vertices every candidate partition is tried in
    increasing bitmask order and a miss is conclusive.  Beyond that a seeded
    local search runs and a miss is only inconclusive.
    """
    lam = as_fraction(lam)
    if lam <= 0:
        raise ValueError("lambda must be positive")
    kinds = sorted({(int(i), int(kd)) for i, kd in kinds}, key=lambda t: (t[1], t[0]))
    s = _Searcher(g, n, lam, overlap_policy)
    exhaustive = g.N <= exhaustive_limit
    rounds = max_rounds if max_rounds is not None else 4 * g.N
    parts = [_mask(g.spec.part(j)) for j in range(g.spec.s)]

    for i, kind in kinds:
        if kind == 1:
            if exhaustive:
                for w2 in range(1, s.full):
                    if s.kind1_ok(i, w2):
                        return _finish(g, n, s.kind1_cert(i, w2), s, True, overlap_policy)
                continue
            labels = component_labels(s.view.adj[i])
            sizes: dict[int, int] = {}
            for c in labels:
                sizes[c] = sizes.get(c, 0) + 1
            biggest = max(sizes, key=lambda c: (sizes[c], -c))
            seed = s.full & ~_mask(v for v, c in enumerate(labels) if c == biggest)
            w2 = _local_search(seed, s.full, lambda w: s.kind1_score(i, w), rounds)
            if s.kind1_ok(i, w2):
                return _finish(g, n, s.kind1_cert(i, w2), s, False, overlap_policy)
        else:
            for j, vj in enumerate(parts, start=1):
                rest = s.full & ~vj
                rest_bits = list(_bits(rest))
                if exhaustive:
                    for sub in range(1 << len(rest_bits)):
                        u1 = _mask(v for t, v in enumerate(rest_bits) if sub >> t & 1)
                        if s.kind2_ok(i, vj, u1, rest & ~u1):
                            return _finish(g, n, s.kind2_cert(i, j, vj, u1, rest & ~u1), s, True, overlap_policy)
                    continue
                adj_i, adj_o = s.view.adj[i], s.view.adj[3 - i]
                seed = _mask(u for u in rest_bits
                             if (adj_i[u] & vj).bit_count() <= (adj_o[u] & vj).bit_count())
                u1 = _local_search(seed, rest, lambda u: s.kind2_score(i, vj, u, rest & ~u), rounds)
                if s.kind2_ok(i, vj, u1, rest & ~u1):
                    return _finish(g, n, s.kind2_cert(i, j, vj, u1, rest & ~u1), s, False, overlap_policy)
    return SearchResult(None, exhaustive, s.checked)


def _finish(g, n, cert, searcher, exhaustive, overlap_policy) -> SearchResult:
    check = check_bad_partition(g, n, cert, overlap_policy)
    assert check.passed, check.failed
    return SearchResult(cert, exhaustive, searcher.checked)


# --------------------------------------------------------------------------
# audit


@dataclass
class AuditReport:
    n: int
    gamma: Fraction
    epsilon: Fraction
    lam: Fraction
    regime_violations: list[str]
    suitability: SuitabilityReport
    alpha_star: tuple[int, int]
    hypothesis_met: bool
    outcome: str
    matching: dict | None = None
    search: SearchResult | None = None

    @property
    def probative(self) -> bool:
        return not self.regime_violations

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "gamma": str(self.gamma),
            "epsilon": str(self.epsilon),
            "lambda": str(self.lam),
            "probative": self.probative,
            "regime_violations": self.regime_violations,
            "suitability": self.suitability.to_dict(),
            "alpha_star": list(self.alpha_star),
            "hypothesis_met": self.hypothesis_met,
            "outcome": self.outcome,
            "matching": self.matching,
            "search": self.search.to_dict() if self.search else None,
        }


def audit_stability(
    g: ColoredMultipartiteGraph,
    n: int,
    gamma,
    epsilon,
    lambda_factor=68,
    **search_kwargs,
) -> AuditReport:
    """Run the stability statement's check on one coloring.

    If some color has a connected matching larger than ``n(1 + gamma)`` the
    hypothesis fails and that matching is reported.  Otherwise a bad
    partition is searched for at ``lam = lambda_factor * gamma``.  Runs
    outside the theorem's constant regime are reported with
    ``probative = False``.
    """
    gamma, epsilon = as_fraction(gamma), as_fraction(epsilon)
    params = SuitabilityParams(n, g.spec.s, epsilon, gamma)
    suit = check_suitability(g, params)
    certs = [alpha_star(g, 1), alpha_star(g, 2)]
    sizes = (certs[0].size, certs[1].size)
    lam = as_fraction(lambda_factor) * gamma
    cap = n * (1 + gamma)
    report = AuditReport(n, gamma, epsilon, lam, params.violations(), suit, sizes,
                         max(sizes) <= cap, "")
    if not report.hypothesis_met:
        c = 0 if sizes[0] >= sizes[1] else 1
        report.outcome = "hypothesis-not-met"
        report.matching = {"color": c + 1, **certs[c].to_dict()}
        return report
    result = search_bad_partition(g, n, lam, **search_kwargs)
    report.search = result
    report.outcome = {"found": "bad-partition-found", "not-found": "no-bad-partition",
                      "inconclusive": "inconclusive"}[result.outcome]
    return report

