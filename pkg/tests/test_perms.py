"""Permutation core: reduction, containment, avoiders, text and JSON forms.

Avoider values are cross-checked against a brute-force filter of S_n, so
the pruned walker never gets to grade its own homework.
"""

import math
import random

import pytest

from patlab import (
    BadParameter,
    DuplicateValue,
    ParseError,
    PatternSet,
    ResourceLimit,
    all_perms,
    avoiders,
    contains,
    count_avoiders,
    format_perm,
    is_antichain,
    parse_perm,
    reduce_values,
)


class TestReduce:
    def test_basic(self):
        assert reduce_values((0.5, 0.1, 0.9)) == (2, 1, 3)
        assert reduce_values([10, 20, 15, 5]) == (2, 4, 3, 1)
        assert reduce_values((7,)) == (1,)

    def test_duplicate_rejected(self):
        with pytest.raises(DuplicateValue):
            reduce_values((1, 2, 1))

    def test_empty_rejected(self):
        with pytest.raises(BadParameter):
            reduce_values(())

    def test_idempotent_on_permutations(self):
        rng = random.Random(7)
        for _ in range(200):
            n = rng.randint(1, 8)
            p = list(range(1, n + 1))
            rng.shuffle(p)
            assert reduce_values(p) == tuple(p)


class TestContains:
    def test_window_hit(self):
        assert contains((1, 4, 2, 3), (3, 1, 2))
        assert contains((1, 4, 2, 3), (1, 4, 2, 3))

    def test_window_miss(self):
        # only contiguous windows count
        assert not contains((1, 4, 2, 3), (1, 2, 3))

    def test_longer_pattern_never_contained(self):
        assert not contains((2, 1), (1, 2, 3))

    def test_brute_force_agreement(self):
        rng = random.Random(11)
        for _ in range(100):
            n = rng.randint(3, 7)
            k = rng.randint(2, n)
            pi = list(range(1, n + 1))
            rng.shuffle(pi)
            sigma = list(range(1, k + 1))
            rng.shuffle(sigma)
            windows = {
                reduce_values(pi[i : i + k]) for i in range(n - k + 1)
            }
            assert contains(pi, sigma) == (tuple(sigma) in windows)


class TestAntichain:
    def test_incomparable_pair(self):
        assert is_antichain([(1, 3, 2), (2, 3, 1)])

    def test_same_length_always_incomparable(self):
        assert is_antichain([(1, 2), (2, 1)])

    def test_nested_pair(self):
        assert not is_antichain([(2, 1), (3, 2, 1)])

    def test_empty_and_singleton(self):
        assert is_antichain([])
        assert is_antichain([(1, 2, 3)])


def brute_avoiders(patterns, n):
    return {
        p
        for p in all_perms(n)
        if not any(contains(p, s) for s in patterns)
    }


class TestAvoiders:
    def test_no_patterns_gives_everything(self):
        assert count_avoiders([], 4) == 24
        assert len(avoiders([], 4)) == 24

    def test_single_descent_pattern(self):
        # only the ascending word has no 21 window
        assert set(avoiders([(2, 1)], 5)) == {(1, 2, 3, 4, 5)}

    def test_known_counts(self):
        assert count_avoiders([(3, 2, 1)], 4) == 17
        assert count_avoiders([(1, 3, 2), (2, 3, 1)], 10) == 512

    def test_length_one_pattern_kills_all(self):
        assert count_avoiders([(1,)], 4) == 0
        assert len(avoiders([(1,)], 4)) == 0

    def test_matches_brute_force(self):
        """The pruned prefix walker equals a plain filter of S_n."""
        rng = random.Random(23)
        for _ in range(20):
            npat = rng.randint(1, 3)
            pats = []
            for _ in range(npat):
                k = rng.randint(2, 4)
                s = list(range(1, k + 1))
                rng.shuffle(s)
                pats.append(tuple(s))
            n = rng.randint(1, 6)
            expected = brute_avoiders(pats, n)
            assert set(avoiders(pats, n)) == expected
            assert count_avoiders(pats, n) == len(expected)

    def test_downward_closure(self):
        """Every window of an avoider is itself an avoider."""
        pats = [(1, 3, 2), (3, 2, 1)]
        for n in range(3, 8):
            shorter = avoiders(pats, n - 1)
            for p in avoiders(pats, n):
                assert reduce_values(p[:-1]) in shorter
                assert reduce_values(p[1:]) in shorter

    def test_node_budget(self):
        with pytest.raises(ResourceLimit):
            count_avoiders([(1, 3, 2)], 8, node_budget=5)


class TestTextForms:
    def test_digit_form(self):
        assert format_perm((1, 4, 2, 3)) == "1423"
        assert parse_perm("1423") == (1, 4, 2, 3)

    def test_comma_form_for_wide_patterns(self):
        p = tuple(range(1, 11))
        text = format_perm(p)
        assert "," in text
        assert parse_perm(text) == p

    @pytest.mark.parametrize("bad", ["", "10", "1,0", "122", "13", "1,2,4"])
    def test_parse_rejects(self, bad):
        with pytest.raises(ParseError):
            parse_perm(bad)

    def test_round_trip_random(self):
        rng = random.Random(3)
        for _ in range(100):
            n = rng.randint(1, 13)
            p = list(range(1, n + 1))
            rng.shuffle(p)
            assert parse_perm(format_perm(tuple(p))) == tuple(p)


class TestPatternSet:
    def test_sorted_dedup(self):
        ps = PatternSet.from_perms(2, [(2, 1), (1, 2), (2, 1)])
        assert ps.patterns == ((1, 2), (2, 1))
        assert len(ps) == 2
        assert (2, 1) in ps

    def test_length_mismatch(self):
        with pytest.raises(BadParameter):
            PatternSet.from_perms(3, [(1, 2)])

    def test_json_round_trip(self):
        ps = PatternSet.from_perms(3, [(3, 1, 2), (1, 2, 3)])
        data = ps.to_json()
        assert data == {"n": 3, "patterns": ["123", "312"]}
        assert PatternSet.from_json(data) == ps

    def test_bad_json(self):
        with pytest.raises(ParseError):
            PatternSet.from_json({"patterns": ["12"]})
