import pytest

from connmatch import (
    MultipartiteSpec,
    alpha_star,
    check_preconditions_thm2,
    figure1_coloring,
    from_word,
    necessity_sweep,
    verify_thm2,
    verify_thm3,
)
from connmatch import scan
from connmatch.scan import ColoringScanner, parallel_scan, word_digits, word_index
from connmatch.verify import PreconditionError
from oracles import brute_connected_matching, is_isomorphic_colored


def test_preconditions():
    ok, reasons = check_preconditions_thm2(MultipartiteSpec((2, 1, 1)), 2, 1)
    assert ok and reasons == []
    ok, reasons = check_preconditions_thm2(MultipartiteSpec((1, 1, 1, 1)), 2, 2)
    assert not ok and any("2*x1 + x2 - 1" in r for r in reasons)
    ok, reasons = check_preconditions_thm2(MultipartiteSpec((4,)), 1, 1)
    assert not ok
    with pytest.raises(ValueError):
        check_preconditions_thm2(MultipartiteSpec((2, 2)), 1, 2)


def test_thm2_small_instances():
    rep = verify_thm2(MultipartiteSpec((2, 1, 1)), 2, 1)
    assert rep.outcome == "holds" and rep.colorings_checked == rep.total_colorings == 32
    rep = verify_thm2(MultipartiteSpec((1, 1, 1, 1, 1)), 2, 2)
    assert rep.outcome == "holds" and rep.colorings_checked == 1024
    assert rep.spot_checks == 1000


def test_brute_force_agrees_on_k211():
    # every 2-coloring of K_{2,1,1} has red >= 2 or blue >= 1
    spec = MultipartiteSpec((2, 1, 1))
    for idx in range(32):
        g = from_word(spec, word_digits(idx, 5, 2), 2)
        red = brute_connected_matching(4, g.edges(1))
        blue = brute_connected_matching(4, g.edges(2))
        assert red >= 2 or blue >= 1


def test_precondition_error_without_force():
    with pytest.raises(PreconditionError):
        verify_thm2(MultipartiteSpec((1, 1, 1, 1)), 2, 2)


def test_k4_counterexample_is_figure1():
    rep = verify_thm2(MultipartiteSpec((1, 1, 1, 1)), 2, 2, force=True)
    assert rep.outcome == "counterexample" and rep.exit_code == 1
    ce = rep.counterexample
    assert ce["word_index"] == 7 and ce["alpha_star"] == [1, 1]
    g = from_word(MultipartiteSpec((1, 1, 1, 1)), ce["word"], 2)
    assert is_isomorphic_colored(g, figure1_coloring(2))


def test_first_counterexample_is_minimal():
    spec = MultipartiteSpec((1, 1, 1, 1))
    scanner = ColoringScanner(spec, (2, 2))
    assert list(scanner.failing_indices()) == [7, 11, 21, 25, 38, 42, 52, 56]
    for idx in range(64):
        g = from_word(spec, word_digits(idx, 6, 2), 2)
        fails = all(brute_connected_matching(4, g.edges(c)) < 2 for c in (1, 2))
        assert fails == (idx in {7, 11, 21, 25, 38, 42, 52, 56})


def test_thm3_k5_counterexample_index():
    # K_5 with x=(2,2,2) sits below the N = 6 threshold
    spec = MultipartiteSpec.complete(5)
    res = ColoringScanner(spec, (2, 2, 2)).scan(0, 3**10)
    assert res.first_failure == 377
    word = word_digits(377, 10, 3)
    assert word == (1, 1, 1, 1, 2, 2, 2, 3, 3, 3)
    assert word_index(word, 3) == 377


def test_partial_and_random_modes():
    spec = MultipartiteSpec((1, 1, 1, 1, 1))
    rep = verify_thm2(spec, 2, 2, budget=100)
    assert rep.outcome == "partial" and rep.exit_code == 2
    rep = verify_thm2(spec, 2, 2, mode="random", budget=500, seed=7)
    assert rep.outcome == "sampled-no-counterexample" and rep.seed == 7
    rep = verify_thm2(MultipartiteSpec((1, 1, 1, 1)), 2, 2, mode="random", budget=500, force=True)
    assert rep.outcome == "counterexample"


def test_random_mode_is_seeded():
    spec = MultipartiteSpec((1, 1, 1, 1))
    a = verify_thm2(spec, 2, 2, mode="random", budget=300, seed=3, force=True)
    b = verify_thm2(spec, 2, 2, mode="random", budget=300, seed=3, force=True)
    assert a.to_dict(include_time=False) == b.to_dict(include_time=False)


def test_color_swap_symmetry():
    for parts in [(1, 1, 1, 1), (2, 1, 1), (2, 2), (1, 1, 1, 1, 1)]:
        spec = MultipartiteSpec(parts)
        scanner = ColoringScanner(spec, (2, 2))
        m = spec.num_edges
        fails = {tuple(word_digits(int(i), m, 2)) for i in scanner.failing_indices()}
        swapped = {tuple(3 - d for d in w) for w in fails}
        assert fails == swapped


def test_monotonicity_in_x():
    spec = MultipartiteSpec((1, 1, 1, 1, 1))
    assert verify_thm2(spec, 2, 2).outcome == "holds"
    for x1, x2 in [(2, 1), (1, 1)]:
        assert verify_thm2(spec, x1, x2, force=True).outcome == "holds"


def test_early_exit_soundness_direct():
    # every coloring the scanner accepts has some color reaching its threshold
    spec = MultipartiteSpec((2, 2, 1))
    scanner = ColoringScanner(spec, (2, 2))
    bad = set(int(i) for i in scanner.failing_indices())
    for idx in range(0, scanner.total, 7):
        g = from_word(spec, word_digits(idx, spec.num_edges, 2), 2)
        ok = alpha_star(g, 1).size >= 2 or alpha_star(g, 2).size >= 2
        assert ok == (idx not in bad)


def test_thread_count_does_not_change_reports(monkeypatch):
    monkeypatch.setattr(scan, "CHUNK", 64)
    spec = MultipartiteSpec((2, 2, 1))
    scanner = ColoringScanner(spec, (3, 3))
    single = parallel_scan(scanner, scanner.total, 1)
    multi = parallel_scan(scanner, scanner.total, 3)
    assert single == multi
    assert single.first_failure is not None
    spec4 = MultipartiteSpec((1, 1, 1, 1))
    one = verify_thm2(spec4, 2, 2, force=True, threads=1).to_dict(include_time=False)
    two = verify_thm2(spec4, 2, 2, force=True, threads=2).to_dict(include_time=False)
    assert one == two


def test_thm3_argument_check():
    with pytest.raises(ValueError):
        verify_thm3(1, 2, 1)


def test_necessity_sweeps():
    rep = necessity_sweep(2, 1)
    assert rep.confirmed and rep.entries[0]["alpha_star"] == [1, 1]
    rep = necessity_sweep(3, 2, [4])
    assert rep.entries[0]["alpha_star"] == [2, 2]
    rep = necessity_sweep(1, 1)
    assert rep.entries[0]["alpha_star"] == [0, 0]
    with pytest.raises(ValueError):
        necessity_sweep(13, 1)
