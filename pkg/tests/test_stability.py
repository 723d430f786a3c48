import random
from fractions import Fraction
from types import SimpleNamespace

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from connmatch import (
    BadPartitionCertificate,
    MultipartiteSpec,
    SuitabilityParams,
    audit_stability,
    bad_partition_witness,
    build_complete,
    check_bad_partition,
    check_suitability,
    from_word,
    search_bad_partition,
)
from connmatch.stability import PartitionError, as_fraction, minimal_lambda

K10 = MultipartiteSpec((10, 10, 10))


def all_red(spec):
    return build_complete(spec, lambda u, v: {1})


# suitability ---------------------------------------------------------------


def test_complete_tripartite_is_suitable():
    g = all_red(MultipartiteSpec((30, 30, 30)))
    rep = check_suitability(g, SuitabilityParams(30, 3, Fraction(1, 10)))
    assert rep.s1_ok and rep.s2_ok and rep.s3_ok
    assert rep.tilde_total == 0 and rep.suitable


def test_two_parts_fail_s2():
    g = all_red(MultipartiteSpec((30, 30)))
    rep = check_suitability(g, SuitabilityParams(30, 2, Fraction(1, 10)))
    assert not rep.s2_ok and not rep.suitable


def test_s1_s2_at_equality_pass():
    # N = 3n - 1 and N - n_1 = 2n - 1 exactly
    g = all_red(MultipartiteSpec((3, 3, 2)))
    rep = check_suitability(g, SuitabilityParams(3, 3, Fraction(1, 100)))
    assert rep.s1_ok and rep.s2_ok
    g = all_red(MultipartiteSpec((3, 2, 2)))
    assert not check_suitability(g, SuitabilityParams(3, 3, Fraction(1, 100))).s1_ok


def _sparse_host(spec, removed):
    """Stand-in with some cross pairs missing, which complete hosts cannot
    express; it exposes only what the suitability check reads."""
    idx = spec.edge_index
    mask = (1 << spec.num_edges) - 1
    for u, v in removed:
        mask &= ~(1 << idx[(u, v)])
    return SimpleNamespace(num_colors=2, spec=spec, N=spec.N, color_masks=(mask, 0),
                           edge_pairs=spec.edge_pairs)


def test_s3_is_strict():
    spec = MultipartiteSpec((10, 10, 10))
    params = SuitabilityParams(10, 3, Fraction(1, 5))  # eps * n = 2
    # vertices 0 and 1 each lose two edges, dropping to the cutoff N - 2 - 10
    g = _sparse_host(spec, [(0, 10), (0, 11), (1, 12), (1, 13)])
    rep = check_suitability(g, params)
    assert rep.tilde_sets == [[0, 1], [], []]
    assert rep.tilde_total == 2 and not rep.s3_ok
    g = _sparse_host(spec, [(0, 10), (0, 11)])
    rep = check_suitability(g, params)
    assert rep.tilde_total == 1 and rep.s3_ok


def test_params_validation():
    with pytest.raises(ValueError):
        SuitabilityParams(10, 3, 0)
    p = SuitabilityParams(10, 3, "0.01", gamma="0.1")
    assert len(p.violations()) == 3
    with pytest.raises(ValueError):
        SuitabilityParams(10, 3, "0.01", gamma="0.1", strict=True)
    ok = SuitabilityParams(10**9, 3, Fraction(1, 10**8), gamma=Fraction(1, 10**4), strict=True)
    assert ok.violations() == []
    assert as_fraction(0.1) == Fraction(1, 10)


def test_params_must_match_host():
    with pytest.raises(ValueError):
        check_suitability(all_red(K10), SuitabilityParams(10, 2, "0.1"))


# certificate checks --------------------------------------------------------


def test_kind1_witness_and_swapped_color():
    g, cert = bad_partition_witness(1, 10, K10)
    assert check_bad_partition(g, 10, cert).passed
    swapped = BadPartitionCertificate(1, cert.lam, 3 - cert.i, 10, W1=cert.W1, W2=cert.W2)
    res = check_bad_partition(g, 10, swapped)
    assert not res.passed and "ii" in res.failed
    assert res.measured["cross_edges_color_i"] == 200


def test_kind1_blocks_are_not_reordered():
    g, cert = bad_partition_witness(1, 10, K10)
    flipped = BadPartitionCertificate(1, cert.lam, cert.i, 10, W1=cert.W2, W2=cert.W1)
    res = check_bad_partition(g, 10, flipped)
    assert res.failed == ["i-upper"]
    assert res.measured["W2_size"] == 20


def test_kind2_empty_u1_fails_iv_lower():
    g, cert = bad_partition_witness(2, 10, K10)
    moved = BadPartitionCertificate(2, Fraction(1, 2), cert.i, 10, j=1, V_j=cert.V_j,
                                    U1=(), U2=cert.U1 + cert.U2)
    res = check_bad_partition(g, 10, moved)
    assert "iv-lower" in res.failed
    lower = next(c for c in res.clauses if c.name == "iv-lower")
    assert (lower.lhs, lower.rhs) == (5, 0)


def test_large_lambda_passes_trivially():
    # all 200 red cross edges fit under lam * n^2 once lam = 2
    g = all_red(K10)
    cert = BadPartitionCertificate(1, 2, 1, 10, W1=range(20), W2=range(20, 30))
    assert check_bad_partition(g, 10, cert).passed
    assert not check_bad_partition(g, 10, cert.with_lambda(Fraction(199, 100))).passed


def test_partition_errors():
    g = all_red(K10)
    with pytest.raises(PartitionError):
        check_bad_partition(g, 10, BadPartitionCertificate(1, 1, 1, 10, W1=range(10), W2=range(12, 30)))
    with pytest.raises(PartitionError):
        check_bad_partition(g, 10, BadPartitionCertificate(2, 1, 1, 10, j=1, V_j=range(1, 11),
                                                           U1=[0] + list(range(11, 20)), U2=range(20, 30)))
    with pytest.raises(ValueError):
        check_bad_partition(g, 9, BadPartitionCertificate(1, 1, 1, 10, W1=range(10), W2=range(10, 30)))


def test_overlap_policy():
    spec = MultipartiteSpec((2, 2))
    both = build_complete(spec, lambda u, v: {1, 2}, overlap_allowed=True)
    cert = BadPartitionCertificate(1, Fraction(1, 4), 1, 2, W1=(0, 1), W2=(2, 3))
    per = check_bad_partition(both, 2, cert, "per_color")
    excl = check_bad_partition(both, 2, cert, "exclusive")
    assert per.measured["cross_edges_color_i"] == 4
    assert excl.measured["cross_edges_color_i"] == 0


def test_certificate_json_round_trip():
    g, cert = bad_partition_witness(2, 10, K10)
    again = BadPartitionCertificate.from_dict(cert.to_dict())
    assert again.to_dict() == cert.to_dict()
    assert check_bad_partition(g, 10, again).passed


# search and audit ----------------------------------------------------------


def test_search_finds_kind1_on_witness():
    g, _ = bad_partition_witness(1, 10, K10)
    res = search_bad_partition(g, 10, "0.2")
    assert res.outcome == "found"
    assert check_bad_partition(g, 10, res.certificate).passed


def test_search_all_red_small_host_not_found():
    res = search_bad_partition(all_red(MultipartiteSpec((3, 3, 3))), 3, "0.01")
    assert res.outcome == "not-found" and res.exhaustive


def test_search_respects_kinds():
    g, _ = bad_partition_witness(2, 4, MultipartiteSpec((4, 4, 4)))
    res = search_bad_partition(g, 4, "0.3", kinds=[(1, 2)])
    assert res.found and res.certificate.kind == 2 and res.certificate.i == 1


def test_audit_hypothesis_not_met():
    rep = audit_stability(all_red(K10), 10, "0.2", "0.01")
    assert rep.outcome == "hypothesis-not-met"
    assert rep.matching["size"] == 15 and not rep.probative


def test_audit_on_kind2_witness():
    g, _ = bad_partition_witness(2, 10, K10)
    rep = audit_stability(g, 10, "0.1", "0.01")
    assert max(rep.alpha_star) <= 11
    assert rep.lam == Fraction(34, 5)
    assert rep.outcome == "bad-partition-found"


def test_audit_degenerate_n1():
    g = all_red(MultipartiteSpec((1, 1)))
    rep = audit_stability(g, 1, "0.5", "0.1")
    assert any("n >= s" in v for v in rep.regime_violations)
    assert rep.outcome in ("hypothesis-not-met", "bad-partition-found", "no-bad-partition")


def _random_graph(parts, seed):
    spec = MultipartiteSpec(parts)
    rng = random.Random(seed)
    return from_word(spec, [rng.randint(1, 2) for _ in range(spec.num_edges)], 2)


hosts = st.sampled_from([(2, 2, 2), (3, 2, 2), (3, 3, 2), (2, 2, 1, 1), (3, 3, 3)])
lambdas = st.fractions(min_value=Fraction(1, 50), max_value=Fraction(3, 2), max_denominator=50)


@settings(max_examples=40, deadline=None)
@given(hosts, st.integers(0, 2**32 - 1), st.integers(2, 3), lambdas)
def test_search_round_trip(parts, seed, n, lam):
    g = _random_graph(parts, seed)
    res = search_bad_partition(g, n, lam)
    if res.found:
        assert check_bad_partition(g, n, res.certificate).passed
        again = BadPartitionCertificate.from_dict(res.certificate.to_dict())
        assert check_bad_partition(g, n, again).passed
    else:
        assert res.exhaustive


@settings(max_examples=80, deadline=None)
@given(hosts, st.integers(0, 2**32 - 1), lambdas, lambdas, st.integers(1, 2), st.integers(1, 2))
def test_monotone_in_lambda(parts, seed, a, b, kind, i):
    lo, hi = min(a, b), max(a, b)
    g = _random_graph(parts, seed)
    rng = random.Random(seed)
    n = 3
    if kind == 1:
        w2 = [v for v in range(g.N) if rng.random() < 0.5]
        cert = BadPartitionCertificate(1, lo, i, n, W1=[v for v in range(g.N) if v not in w2], W2=w2)
    else:
        vj = list(g.spec.part(0))
        rest = [v for v in range(g.N) if v not in vj]
        u1 = [v for v in rest if rng.random() < 0.5]
        cert = BadPartitionCertificate(2, lo, i, n, j=1, V_j=vj, U1=u1, U2=[v for v in rest if v not in u1])
    if check_bad_partition(g, n, cert).passed:
        assert check_bad_partition(g, n, cert.with_lambda(hi)).passed
    lam_min = minimal_lambda(g, n, cert)
    if lam_min > 0:
        assert check_bad_partition(g, n, cert.with_lambda(lam_min)).passed
