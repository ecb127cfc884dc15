"""Self-checks for the brute-force oracles: the slow route must get the
easy, hand-checkable cases right before it is trusted to referee the fast
implementations."""

import pytest

from phylodeck.fixtures import load
from phylodeck.netcore import (
    is_binary,
    is_phylo_network,
    reticulation_number,
    validate,
)

from helpers import build
from oracles import (
    iso_dedup,
    iso_equivalent,
    naive_binary_universe,
    random_binary_network,
    random_binary_tree,
    random_tree,
)


class TestBruteForceIso:
    def test_identity(self):
        a = load("ladder_abcd")
        assert iso_equivalent(a, load("ladder_abcd"))

    def test_internal_renaming_is_invisible(self):
        a = build([("a", "p"), ("b", "p"), ("c", "q"), ("d", "q"), ("p", "q")])
        b = build(
            [("a", "z9"), ("b", "z9"), ("c", "k"), ("d", "k"), ("z9", "k")]
        )
        assert iso_equivalent(a, b)
        assert iso_equivalent(a, b, fix_labels=False)

    def test_label_swap_detected(self):
        assert not iso_equivalent(load("quartet_ab_cd"), load("quartet_ad_bc"))
        assert iso_equivalent(
            load("quartet_ab_cd"), load("quartet_ad_bc"), fix_labels=False
        )

    def test_ladder_pair(self):
        a, b = load("ladder_abcd"), load("ladder_abdc")
        assert not iso_equivalent(a, b)
        assert iso_equivalent(a, b, fix_labels=False)

    def test_square_pair(self):
        a, b = load("square_leaves"), load("square_leaves_swapped")
        assert not iso_equivalent(a, b)
        assert iso_equivalent(a, b, fix_labels=False)

    def test_asymmetric_pendant_distribution(self):
        a, b = load("threetriangles_a"), load("threetriangles_b")
        assert not iso_equivalent(a, b)
        # one pendant at the first hub vs two: even unlabeled they differ
        assert not iso_equivalent(a, b, fix_labels=False)

    def test_multiplicity_vs_loop(self):
        lollipop = build([("x", "u"), ("u", "u")], {"x": "x"})
        double = build([("x", "u"), ("x", "u")], {"x": "x"})
        assert not iso_equivalent(lollipop, double, fix_labels=False)

    def test_multiplicity_counts(self):
        theta = build([("u", "v")] * 3, {})
        double = build([("u", "v")] * 2, {})
        assert not iso_equivalent(theta, double, fix_labels=False)

    def test_generator_catalog_distinct(self):
        names = [
            "generator_l4_chain",
            "generator_l4_diamond",
            "generator_l4_necklace",
            "generator_l4_prism",
            "generator_l4_k33",
        ]
        gens = [load(n) for n in names]
        assert len(iso_dedup(gens, fix_labels=False)) == 5

    def test_dedup_collapses_copies(self):
        nets = [load("ladder_abcd"), load("ladder_abdc"), load("ladder_abcd")]
        assert len(iso_dedup(nets)) == 2


class TestNaiveUniverse:
    def test_three_leaves_level_one(self):
        u = naive_binary_universe(("a", "b", "c"), 1)
        assert len(u) == 2
        rets = sorted(reticulation_number(n) for n in u)
        assert rets == [0, 1]

    def test_four_leaves_trees_only(self):
        u = naive_binary_universe(("a", "b", "c", "d"), 0)
        assert len(u) == 3

    def test_four_leaves_level_one(self):
        # 3 quartet trees, 3 labeled squares, 6 triangles-with-cherry
        u = naive_binary_universe(("a", "b", "c", "d"), 1)
        assert len(u) == 12
        assert all(is_phylo_network(n) for n in u)
        assert all(is_binary(n) for n in u)

    def test_two_leaves(self):
        u = naive_binary_universe(("a", "b"), 0)
        assert len(u) == 1
        assert u[0].num_edges == 1


class TestRandomBuilders:
    def test_random_binary_tree(self, rng):
        for _ in range(25):
            t = random_binary_tree(list("abcdef"), rng)
            validate(t)
            assert reticulation_number(t) == 0
            assert is_binary(t)
            assert t.label_set == set("abcdef")

    def test_random_tree_multifurcating(self, rng):
        seen_nonbinary = False
        for _ in range(40):
            t = random_tree(list("abcdefg"), rng)
            validate(t)
            assert reticulation_number(t) == 0
            seen_nonbinary = seen_nonbinary or not is_binary(t)
        assert seen_nonbinary

    def test_random_binary_network(self, rng):
        for r in (1, 2, 3):
            for _ in range(10):
                n = random_binary_network(list("abcde"), r, rng)
                validate(n)
                assert reticulation_number(n) == r
                assert is_binary(n)
                assert is_phylo_network(n)
