import numpy as np
import pytest

from cbfree.automorphisms import apply, from_images, identity, invert, random_aut
from cbfree.errors import (
    CapExceeded,
    IndexOutOfRange,
    NotAPartialBasisError,
    SearchBudgetExceeded,
)
from cbfree.nielsen import is_basis_of
from cbfree.whitehead import (
    carry_to_standard,
    complement_basis,
    enumerate_whitehead,
)
from cbfree.words import Word, generator, parse_word
from oracles import make_canonical, class_orbit

W = parse_word


def test_enumerate_rank_one():
    moves = list(enumerate_whitehead(1))
    auts = [mv.aut for mv in moves]
    assert auts == [identity(), from_images([W("a1^-1")])]


def test_enumerate_rank_two_contents_and_dedup():
    moves = list(enumerate_whitehead(2))
    auts = [mv.aut for mv in moves]
    # 8 signed permutations + 4 multipliers x 3 cuts
    assert len(moves) == 20
    assert len(set(auts)) == 20
    assert from_images([W("a1 a2"), W("a2")]) in auts
    assert from_images([W("a2 a1"), W("a2")]) in auts


def test_enumerated_moves_are_valid_automorphisms():
    for m in (1, 2, 3):
        for mv in enumerate_whitehead(m):
            if mv.aut.support:
                assert from_images(list(mv.aut.images)) == mv.aut
            if mv.kind == "multiplier":
                assert mv.multiplier in mv.cut
                assert -mv.multiplier not in mv.cut


def test_enumerate_cap():
    with pytest.raises(CapExceeded):
        enumerate_whitehead(9)
    with pytest.raises(ValueError):
        enumerate_whitehead(0)


def test_carry_single_generator():
    assert carry_to_standard((W("a1"),), 2) == identity()


def test_carry_length_two_primitive():
    alpha = carry_to_standard((W("a1 a2"),), 2)
    assert alpha is not None
    assert apply(alpha, W("a1 a2")) == W("a1")
    assert from_images(list(alpha.images)) == alpha


def test_carry_square_is_not_primitive():
    assert carry_to_standard((W("a1 a1"),), 2) is None


def test_carry_index_and_cap_checks():
    with pytest.raises(IndexOutOfRange):
        carry_to_standard((W("a3"),), 2)
    with pytest.raises(CapExceeded):
        carry_to_standard((W("a1"),), 9)
    with pytest.raises(ValueError):
        carry_to_standard((W(""),), 2)


def test_carry_oversized_tuple():
    assert carry_to_standard((W("a1"), W("a2"), W("a1 a2")), 2) is None


def test_budget_exhaustion_is_distinct_from_no():
    commutator = W("a1 a2 a1^-1 a2^-1")
    with pytest.raises(SearchBudgetExceeded):
        carry_to_standard((commutator,), 2, budget=0)
    assert carry_to_standard((commutator,), 2) is None


def test_carry_witness_correctness_random():
    rng = np.random.default_rng(41)
    for trial in range(60):
        m = int(rng.integers(2, 5))
        n = int(rng.integers(1, m + 1))
        phi = random_aut(int(rng.integers(0, 10**6)), m, int(rng.integers(0, 14)))
        t = tuple(apply(phi, generator(i)) for i in range(1, n + 1))
        alpha = carry_to_standard(t, m)
        assert alpha is not None
        for i, w in enumerate(t, start=1):
            assert apply(alpha, w) == generator(i)


def test_complement_standard_prefix():
    assert complement_basis((W("a1"), W("a2")), 4) == (W("a3"), W("a4"))


def test_complement_examples():
    comp = complement_basis((W("a1 a2"),), 2)
    assert len(comp) == 1
    assert is_basis_of((W("a1 a2"),) + comp, 2)

    comp = complement_basis((W("a2"),), 2)
    assert len(comp) == 1
    assert is_basis_of((W("a2"),) + comp, 2)


def test_complement_full_basis_is_empty():
    assert complement_basis((W("a2"), W("a1")), 2) == ()


def test_complement_raises_on_non_partial_basis():
    with pytest.raises(NotAPartialBasisError):
        complement_basis((W("a1 a1"),), 2)


def test_complement_random_partial_bases():
    rng = np.random.default_rng(42)
    for trial in range(40):
        m = int(rng.integers(1, 5))
        n = int(rng.integers(0, m + 1))
        phi = random_aut(int(rng.integers(0, 10**6)), m, int(rng.integers(0, 12)))
        t = tuple(apply(phi, generator(i)) for i in range(1, n + 1))
        comp = complement_basis(t, m)
        assert len(comp) == m - n
        if m >= 1:
            assert is_basis_of(t + comp, m)


def test_small_scale_agreement_with_orbit_oracle():
    # exhaustive slice; the acceptance suite covers the full small range
    canon = make_canonical(2)
    oracle = {t for t in class_orbit(1, 2, 6) if sum(map(len, t)) <= 4}
    from oracles import all_tuples

    for total in (1, 2, 3, 4):
        for t in all_tuples(1, 2, total):
            words = tuple(Word(w) for w in t)
            verdict = carry_to_standard(words, 2) is not None
            assert verdict == (canon(t) in oracle), f"disagree on {t}"
