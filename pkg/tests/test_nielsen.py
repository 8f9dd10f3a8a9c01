import numpy as np
import pytest

from cbfree.automorphisms import apply, compose, from_images, random_aut
from cbfree.errors import IndexOutOfRange
from cbfree.nielsen import (
    InvertEntry,
    MoveLog,
    MultiplyEntry,
    SwapEntries,
    is_basis_of,
    log_to_automorphism,
    minimize_tuple,
    nielsen_reduce,
    replay,
)
from cbfree.stallings import build_graph, contains
from cbfree.words import EMPTY, generator, parse_word

W = parse_word


def lengths(t):
    return sum(len(w) for w in t)


def test_reduce_transvection_pair():
    reduced, log = nielsen_reduce((W("a1 a2"), W("a2")))
    assert reduced == (W("a1"), W("a2"))
    assert log.moves == (MultiplyEntry(entry=0, other=1, side="right", inverse=True),)
    assert log.dropped == 0


def test_reduce_already_reduced():
    t = (W("a1"), W("a2"), W("a3"))
    reduced, log = nielsen_reduce(t)
    assert reduced == t
    assert log.moves == ()


def test_reduce_preserves_subgroup_both_ways():
    t = (W("a1 a2"), W("a2 a1"))
    reduced, _ = nielsen_reduce(t)
    g_old = build_graph(t)
    g_new = build_graph(reduced)
    for w in t:
        assert contains(g_new, w)
    for w in reduced:
        assert contains(g_old, w)


def test_reduce_rejects_bad_input():
    with pytest.raises(ValueError):
        nielsen_reduce(())
    with pytest.raises(ValueError):
        nielsen_reduce((W("a1"), EMPTY))


def test_degenerate_entry_dropped_and_flagged():
    reduced, log = nielsen_reduce((W("a1"), W("a1")))
    assert reduced == (W("a1"),)
    assert log.dropped == 1
    assert replay((W("a1"), W("a1")), log) == reduced


def test_log_replay_reproduces_reduction_exactly():
    rng = np.random.default_rng(11)
    for trial in range(100):
        k = int(rng.integers(1, 5))
        t = []
        for _ in range(k):
            n = int(rng.integers(1, 9))
            out = []
            for _ in range(n):
                s = int(rng.integers(1, 4)) * (1 if rng.integers(2) else -1)
                if out and out[-1] == -s:
                    out.pop()
                else:
                    out.append(s)
            t.append(W(" ".join(f"a{x}" if x > 0 else f"a{-x}^-1" for x in out)) if out else generator(1))
        t = tuple(t)
        reduced, log = nielsen_reduce(t)
        assert replay(t, log) == reduced


def test_multiply_moves_strictly_decrease_total_length():
    rng = np.random.default_rng(12)
    for seed in range(60):
        phi = random_aut(seed, 5, 16)
        if phi.is_identity:
            continue
        t = phi.images
        reduced, log = nielsen_reduce(t)
        entries = list(t)
        total = lengths(entries)
        from cbfree.nielsen import apply_move

        for move in log.moves:
            apply_move(entries, move)
            new_total = lengths(entries)
            assert new_total <= total
            if isinstance(move, MultiplyEntry):
                assert new_total < total
            total = new_total


def test_is_basis_of_examples():
    assert is_basis_of((W("a1 a2"), W("a2")), 2) is True
    assert is_basis_of((W("a1"), W("a1^-1")), 1) is False
    assert is_basis_of((W("a1 a2 a1^-1"), W("a1")), 2) is True


def test_is_basis_of_membership_precondition():
    with pytest.raises(IndexOutOfRange):
        is_basis_of((W("a3"),), 2)


def test_basis_soundness_against_stallings():
    rng = np.random.default_rng(13)
    for seed in range(40):
        phi = random_aut(seed, 4, 10)
        m = phi.support
        if m == 0:
            continue
        t = phi.images
        assert is_basis_of(t, m)
        graph = build_graph(t)
        assert graph.rank == m
        for i in range(1, m + 1):
            assert contains(graph, generator(i))


def test_is_basis_of_wrong_size_or_subgroup():
    assert is_basis_of((W("a1"),), 2) is False
    assert is_basis_of((W("a1 a1"),), 1) is False
    assert is_basis_of((W("a1"), W("a2"), W("a1 a2")), 3) is False


def test_log_to_automorphism_examples():
    assert log_to_automorphism(MoveLog(()), 3).is_identity
    single = MoveLog((MultiplyEntry(entry=0, other=1, side="right", inverse=True),))
    aut = log_to_automorphism(single, 2)
    assert aut.image(1) == W("a1 a2^-1")
    assert aut.image(2) == W("a2")
    swap = MoveLog((SwapEntries(0, 1),))
    aut = log_to_automorphism(swap, 2)
    assert aut.image(1) == W("a2") and aut.image(2) == W("a1")


def test_log_to_automorphism_rejects_out_of_range():
    log = MoveLog((InvertEntry(2),))
    with pytest.raises(IndexOutOfRange):
        log_to_automorphism(log, 2)


def test_precomposition_law():
    # applying the log to phi's images equals the tuple of phi o E
    rng = np.random.default_rng(14)
    for seed in range(60):
        phi = random_aut(seed, 5, 14)
        n = phi.support
        if n == 0:
            continue
        reduced, log = nielsen_reduce(phi.images)
        e = log_to_automorphism(MoveLog(log.moves), n)
        composed = compose(phi, e)
        assert tuple(composed.image(i) for i in range(1, n + 1)) == reduced


def test_minimize_tuple_reaches_single_letters_on_bases():
    # weak greedy alone can stall; the crossing phase must finish the job
    stalled = 0
    for seed in range(120):
        phi = random_aut(seed, 6, 40)
        if phi.is_identity:
            continue
        weak, _ = nielsen_reduce(phi.images)
        if any(len(w) != 1 for w in weak):
            stalled += 1
        minimal, log = minimize_tuple(phi.images)
        assert log.dropped == 0
        assert all(len(w) == 1 for w in minimal)
    assert stalled > 0, "expected at least one stall to exercise the crossing phase"


def test_nielsen_invariance_of_membership():
    rng = np.random.default_rng(15)
    for trial in range(30):
        words = []
        for _ in range(int(rng.integers(2, 4))):
            n = int(rng.integers(1, 7))
            out = []
            for _ in range(n):
                s = int(rng.integers(1, 4)) * (1 if rng.integers(2) else -1)
                if out and out[-1] == -s:
                    out.pop()
                else:
                    out.append(s)
            if out:
                words.append(tuple(out))
        if not words:
            continue
        t = tuple(W(" ".join(f"a{x}" if x > 0 else f"a{-x}^-1" for x in w)) for w in words)
        reduced, log = nielsen_reduce(t)
        if not reduced:
            continue
        g1, g2 = build_graph(t), build_graph(reduced)
        for _ in range(20):
            n = int(rng.integers(0, 7))
            out = []
            for _ in range(n):
                s = int(rng.integers(1, 4)) * (1 if rng.integers(2) else -1)
                if out and out[-1] == -s:
                    out.pop()
                else:
                    out.append(s)
            probe = W(" ".join(f"a{x}" if x > 0 else f"a{-x}^-1" for x in out)) if out else EMPTY
            assert contains(g1, probe) == contains(g2, probe)
