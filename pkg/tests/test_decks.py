"""Deletion operators and deck builders.

Expected cards here were derived by hand on the fixture drawings and are
cross-checked against the brute-force isomorphism oracle; the randomized
repair engine in oracles.py exercises rule-order confluence.
"""

import itertools
import random

import pytest

from phylodeck.decks import (
    Deck,
    delete_leaf,
    edge_deck,
    edge_delete,
    edge_order,
    phylo_deck,
    phylo_delete_leaf,
    quarnet_on,
    quarnet_set,
    u_deck,
    x_deck,
)
from phylodeck.equiv import canonical_code, deck_equivalent, dedup, is_equivalent
from phylodeck.errors import (
    BadSubset,
    CollapsedToNothing,
    Disconnected,
    NoSuchEdge,
    NoSuchLeaf,
    TooFewLeaves,
)
from phylodeck.netcore import (
    PseudoNetwork,
    attach_leaf,
    display_tree,
    is_binary,
    is_phylo_network,
    is_tree,
    level,
    reticulation_number,
    splits,
    validate,
    validate_phylo,
)

from helpers import FIXTURE_PROFILE, build
from oracles import (
    iso_equivalent,
    random_binary_network,
    random_order_repair,
    recursive_quarnets,
)

PHYLO_FIXTURES = sorted(
    name for name in FIXTURE_PROFILE if not name.startswith("generator_")
)


def quartet(pair_one, pair_two):
    (a, b), (c, d) = pair_one, pair_two
    return build([(a, "g"), (b, "g"), (c, "h"), (d, "h"), ("g", "h")])


def triangle_with_leaves(x, y, z):
    return build(
        [(x, "t1"), (y, "t2"), (z, "t3"), ("t1", "t2"), ("t1", "t3"), ("t2", "t3")]
    )


def two_triangles_joined(pair_one, pair_two):
    """Two triangles, each carrying two pendant leaves, joined by a cut edge."""
    (a, b), (c, d) = pair_one, pair_two
    return build(
        [
            (a, "t1"), (b, "t2"),
            ("t1", "t2"), ("t1", "t3"), ("t2", "t3"),
            (c, "s1"), (d, "s2"),
            ("s1", "s2"), ("s1", "s3"), ("s2", "s3"),
            ("t3", "s3"),
        ]
    )


class TestDeleteLeaf:
    def test_demo_card_a_is_phylogenetic(self, load):
        card = delete_leaf(load("demo_level2"), "a")
        assert is_phylo_network(card)
        assert card.num_vertices == 12
        assert card.num_edges == 14
        assert card.label_set == frozenset("bcde")

    def test_demo_card_e_has_multi_edge(self, load):
        card = delete_leaf(load("demo_level2"), "e")
        assert max(mult for _, mult in card.edge_classes()) == 2
        assert not is_phylo_network(card)
        validate(card)

    def test_square_corner_card_is_triangle(self, load):
        card = delete_leaf(load("square_leaves"), "b")
        assert is_equivalent(card, triangle_with_leaves("a", "c", "d"))

    def test_triangle_pendant_card_has_parallel_pair(self, load):
        card = delete_leaf(load("triangle3"), "a")
        assert card.num_vertices == 4
        assert card.num_edges == 4
        assert max(mult for _, mult in card.edge_classes()) == 2

    def test_star_card_is_edge(self, load):
        card = delete_leaf(load("star3"), "a")
        assert is_equivalent(card, build([("b", "c")]))

    def test_two_leaf_edge_leaves_single_vertex(self):
        card = delete_leaf(build([("a", "b")]), "a")
        assert card.num_vertices == 1
        assert card.num_edges == 0
        assert card.label_set == frozenset("b")
        validate(card)

    def test_sole_leaf_collapses(self):
        lollipop = PseudoNetwork(
            [("a", "v"), ("v", "w"), ("v", "w")], labels={"a": "a"}
        )
        with pytest.raises(CollapsedToNothing):
            delete_leaf(lollipop, "a")

    def test_unknown_leaf(self, load):
        with pytest.raises(NoSuchLeaf):
            delete_leaf(load("star3"), "zzz")


class TestCardCounting:
    """Vertex/edge counts drop by two and level/reticulation survive deletion.

    The two-by-two drop needs a binary network: suppressing the deleted
    leaf's neighbour is what removes the second vertex and edge.
    """

    def test_binary_cards_drop_two(self, load):
        for name in PHYLO_FIXTURES:
            net = load(name)
            if not is_binary(net) or len(net.label_set) < 2:
                continue
            for x in sorted(net.label_set):
                card = delete_leaf(net, x)
                assert card.num_vertices == net.num_vertices - 2, (name, x)
                assert card.num_edges == net.num_edges - 2, (name, x)

    def test_nonbinary_center_drops_one(self):
        star4 = build(
            [("a", "c0"), ("b", "c0"), ("c", "c0"), ("d", "c0")]
        )
        card = delete_leaf(star4, "a")
        assert card.num_vertices == star4.num_vertices - 1
        assert card.num_edges == star4.num_edges - 1

    def test_level_and_reticulation_preserved(self, load):
        for name in PHYLO_FIXTURES:
            net = load(name)
            if len(net.label_set) < 2:
                continue
            for x in sorted(net.label_set):
                card = delete_leaf(net, x)
                assert reticulation_number(card) == reticulation_number(net), (name, x)
                assert level(card) == level(net), (name, x)

    def test_two_vertex_case(self):
        card = delete_leaf(build([("a", "b")]), "a")
        assert reticulation_number(card) == 0
        assert level(card) == 0

    def test_random_binary_networks(self, rng):
        for trial in range(12):
            net = random_binary_network("abcdef"[: rng.randint(4, 6)], rng.randint(0, 2), rng)
            for x in sorted(net.label_set):
                card = delete_leaf(net, x)
                assert card.num_vertices == net.num_vertices - 2
                assert card.num_edges == net.num_edges - 2
                assert reticulation_number(card) == reticulation_number(net)
                assert level(card) == level(net)


class TestLeafDecks:
    def test_deck_shape(self, load):
        deck = x_deck(load("demo_level2"))
        assert isinstance(deck, Deck)
        assert deck.kind == "leaf"
        assert len(deck) == 5
        assert sorted(deck.cards) == list("abcde")
        assert deck.origin_label_set == frozenset("abcde")

    def test_star_five_cards_all_equal_smaller_star(self):
        star5 = build([(x, "c0") for x in "abcde"])
        deck = x_deck(star5)
        assert len(deck) == 5
        for x, card in deck.cards.items():
            rest = sorted(star5.label_set - {x})
            assert is_equivalent(card, build([(y, "c0") for y in rest])), x

    def test_u_deck_subset(self, load):
        net = load("demo_level2")
        deck = u_deck(net, {"a", "b"})
        assert sorted(deck.cards) == ["a", "b"]
        full = x_deck(net)
        for x in "ab":
            assert is_equivalent(deck.cards[x], full.cards[x])
        assert deck.origin_label_set == frozenset("abcde")

    def test_u_deck_rejects_unknown_labels(self, load):
        with pytest.raises(BadSubset):
            u_deck(load("star3"), {"a", "zzz"})

    def test_ladder_pair_same_deck(self, load):
        d1, d2 = x_deck(load("ladder_abcd")), x_deck(load("ladder_abdc"))
        assert deck_equivalent(d1, d2, "indexed")
        assert deck_equivalent(d1, d2, "multiset")

    def test_square_pair_same_deck(self, load):
        d1 = x_deck(load("square_leaves"))
        d2 = x_deck(load("square_leaves_swapped"))
        assert deck_equivalent(d1, d2, "indexed")
        assert deck_equivalent(d1, d2, "multiset")

    def test_quartet_pair_same_deck(self, load):
        d1, d2 = x_deck(load("quartet_ab_cd")), x_deck(load("quartet_ad_bc"))
        assert deck_equivalent(d1, d2, "indexed")

    def test_hexapex_pair_same_deck(self, load):
        d1, d2 = x_deck(load("hexapex_abc")), x_deck(load("hexapex_acb"))
        assert deck_equivalent(d1, d2, "indexed")

    def test_threetriangles_pair_decks_differ(self, load):
        d1 = x_deck(load("threetriangles_a"))
        d2 = x_deck(load("threetriangles_b"))
        assert not deck_equivalent(d1, d2, "indexed")
        assert not deck_equivalent(d1, d2, "multiset")

    def test_hexchord_pair_decks_differ(self, load):
        d1, d2 = x_deck(load("hexchord_bcd")), x_deck(load("hexchord_bdc"))
        assert not deck_equivalent(d1, d2, "indexed")
        assert not deck_equivalent(d1, d2, "multiset")


class TestDisplayTreeCommutes:
    def test_on_fixtures(self, load):
        for name in PHYLO_FIXTURES:
            net = load(name)
            if len(net.label_set) < 2 or not is_phylo_network(net, min_leaves=0):
                continue
            shown = display_tree(net)
            for x in sorted(net.label_set):
                assert is_equivalent(
                    delete_leaf(shown, x), display_tree(delete_leaf(net, x))
                ), (name, x)

    def test_on_random_networks(self, rng):
        for trial in range(10):
            net = random_binary_network("abcde", rng.randint(0, 2), rng)
            shown = display_tree(net)
            for x in "abcde":
                assert is_equivalent(
                    delete_leaf(shown, x), display_tree(delete_leaf(net, x))
                )


class TestPhyloDeleteLeaf:
    def test_equals_plain_delete_when_card_already_phylo(self, load):
        net = load("square_leaves")
        for x in sorted(net.label_set):
            plain = delete_leaf(net, x)
            assert is_phylo_network(plain)
            assert is_equivalent(phylo_delete_leaf(net, x), plain)

    def test_twin_triangles_cards(self, load):
        net = load("twin_triangles")
        for x in sorted(net.label_set):
            plain = delete_leaf(net, x)
            assert not is_phylo_network(plain), x
            assert max(mult for _, mult in plain.edge_classes()) == 2
            rest = sorted(net.label_set - {x})
            assert is_equivalent(
                phylo_delete_leaf(net, x), triangle_with_leaves(*rest)
            ), x

    def test_triangle_chain_x_cards_all_non_phylo(self, load):
        net = load("triangle_chain")
        for x in sorted(net.label_set):
            assert not is_phylo_network(delete_leaf(net, x)), x

    def test_triangle_chain_cards_match_drawings(self, load):
        net = load("triangle_chain")
        card_a = phylo_delete_leaf(net, "a")
        assert is_equivalent(card_a, two_triangles_joined(("b", "e"), ("c", "d")))
        card_d = phylo_delete_leaf(net, "d")
        assert is_equivalent(card_d, two_triangles_joined(("b", "a"), ("e", "c")))

    def test_blob_collapse_rule(self):
        # Deleting z leaves a four-vertex blob with exactly two incident
        # cut-edges and no degree-2 vertex or parallel pair, so only the
        # blob-collapse rule can fire; everything then contracts to an edge.
        theta = build(
            [
                ("x", "m1"), ("y", "m2"), ("z", "m3"),
                ("u", "m1"), ("m1", "v"),
                ("u", "m2"), ("m2", "v"),
                ("u", "m3"), ("m3", "v"),
            ]
        )
        card = phylo_delete_leaf(theta, "z")
        assert is_equivalent(card, build([("x", "y")]))

    def test_theta_fixture_card(self, load):
        card = phylo_delete_leaf(load("theta_three_on_one_edge"), "a")
        assert is_equivalent(card, triangle_with_leaves("x", "y", "z"))

    def test_too_few_leaves(self):
        with pytest.raises(TooFewLeaves):
            phylo_delete_leaf(build([("a", "b")]), "a")

    def test_cards_are_valid_phylo_networks(self, load):
        for name in PHYLO_FIXTURES:
            net = load(name)
            if len(net.label_set) < 3:
                continue
            for x, card in phylo_deck(net).cards.items():
                validate_phylo(card, min_leaves=2)
                assert card.label_set == net.label_set - {x}, (name, x)

    def test_random_rule_order_confluence(self, load, rng):
        nets = [load(n) for n in ("demo_level2", "triangle_chain", "twin_triangles")]
        for _ in range(3):
            nets.append(random_binary_network("abcde", rng.randint(1, 2), rng))
        for net in nets:
            for x in sorted(net.label_set):
                expected = phylo_delete_leaf(net, x)
                for _ in range(4):
                    alt = random_order_repair(net, x, rng)
                    assert iso_equivalent(expected, alt)


class TestPhyloDeck:
    def test_square_and_twin_share_phylo_deck_but_not_x_deck(self, load):
        square, twin = load("square_leaves"), load("twin_triangles")
        assert not deck_equivalent(x_deck(square), x_deck(twin), "indexed")
        assert deck_equivalent(phylo_deck(square), phylo_deck(twin), "indexed")

    def test_twin_x_deck_differs_from_own_phylo_deck(self, load):
        twin = load("twin_triangles")
        plain, repaired = x_deck(twin), phylo_deck(twin)
        for x in sorted(twin.label_set):
            assert not is_equivalent(plain.cards[x], repaired.cards[x]), x

    def test_phylo_deck_equals_x_deck_when_cards_already_phylo(self, load):
        for name in ("square_leaves", "caterpillar5", "demo_level2"):
            net = load(name)
            plain, repaired = x_deck(net), phylo_deck(net)
            for x in sorted(net.label_set):
                if is_phylo_network(plain.cards[x]):
                    assert is_equivalent(plain.cards[x], repaired.cards[x]), (name, x)

    def test_tree_phylo_deck_equals_x_deck(self, load):
        tree = load("caterpillar5")
        assert deck_equivalent(x_deck(tree), phylo_deck(tree), "indexed")

    def test_deck_kind(self, load):
        deck = phylo_deck(load("triangle_chain"))
        assert deck.kind == "phylo"
        assert sorted(deck.cards) == list("abcde")


class TestEdgeDeletion:
    def test_pendant_edge_card_adds_isolated_vertex(self, load):
        net = load("demo_level2")
        v = net.leaf_vertex("a")
        (w,) = net.neighbors(v)
        card = edge_delete(net, (v, w))
        plain = delete_leaf(net, "a")
        expected = PseudoNetwork(
            plain.edge_multiset(),
            labels={**plain.labels, "iso": "a"},
            isolated=("iso",),
        )
        assert is_equivalent(card, expected)

    def test_multi_pair_deletion_merges(self):
        pair = build([("a", "p"), ("b", "q"), ("p", "q"), ("p", "q")])
        card = edge_delete(pair, ("p", "q"))
        assert is_equivalent(card, build([("a", "b")]))

    def test_cut_edge_yields_disconnected_card(self, load):
        card = edge_delete(load("demo_level2"), ("u4", "u5"))
        assert card.num_vertices == 12
        assert card.num_edges == 13
        with pytest.raises(Disconnected):
            validate(card)

    def test_quartet_internal_card_absent_from_other_deck(self, load):
        card = edge_delete(load("quartet_ab_cd"), ("p", "q"))
        assert card.num_vertices == 4
        assert card.num_edges == 2
        other = edge_deck(load("quartet_ad_bc"))
        assert not any(is_equivalent(card, c) for c in other.cards.values())

    def test_square_cycle_cards_vs_swapped_deck(self, load):
        square = load("square_leaves")
        other = edge_deck(load("square_leaves_swapped"))
        presence = {}
        for e in (("s1", "s2"), ("s1", "s3"), ("s2", "s4"), ("s3", "s4")):
            card = edge_delete(square, e)
            presence[e] = any(
                is_equivalent(card, c) for c in other.cards.values()
            )
        assert presence == {
            ("s1", "s2"): False,
            ("s1", "s3"): True,
            ("s2", "s4"): True,
            ("s3", "s4"): False,
        }

    def test_deck_indexed_by_edge_ordinal(self, load):
        net = load("demo_level2")
        deck = edge_deck(net)
        assert deck.kind == "edge"
        assert len(deck) == net.num_edges == 16
        assert sorted(deck.cards) == list(range(16))
        assert edge_order(net) == net.edge_multiset()

    def test_parallel_copies_share_their_card(self):
        pair = build([("a", "p"), ("b", "q"), ("p", "q"), ("p", "q")])
        order = edge_order(pair)
        deck = edge_deck(pair)
        ordinals = [i for i, e in enumerate(order) if e == ("p", "q")]
        assert len(ordinals) == 2
        assert deck.cards[ordinals[0]] is deck.cards[ordinals[1]]

    def test_no_such_edge(self, load):
        with pytest.raises(NoSuchEdge):
            edge_delete(load("star3"), ("b", "c"))


class TestQuarnets:
    def test_four_leaf_base_case(self, load):
        for name in ("quartet_ab_cd", "square_leaves", "ladder_abcd"):
            net = load(name)
            assert is_equivalent(quarnet_on(net, net.label_set), net)
            members = quarnet_set(net)
            assert len(members) == 1
            assert is_equivalent(members[0], net)

    def test_caterpillar_quartets(self, load):
        cat = load("caterpillar5")
        expected = {
            ("a", "b", "c", "d"): quartet(("a", "b"), ("c", "d")),
            ("a", "b", "c", "e"): quartet(("a", "b"), ("c", "e")),
            ("a", "b", "d", "e"): quartet(("a", "b"), ("d", "e")),
            ("a", "c", "d", "e"): quartet(("a", "c"), ("d", "e")),
            ("b", "c", "d", "e"): quartet(("b", "c"), ("d", "e")),
        }
        for subset, want in expected.items():
            assert is_equivalent(quarnet_on(cat, subset), want), subset

    def test_five_leaf_set_equals_phylo_deck_set(self, load):
        for name in ("triangle_chain", "caterpillar5", "demo_level2"):
            net = load(name)
            members = quarnet_set(net)
            assert len(members) <= 5
            from_deck = dedup(list(phylo_deck(net).cards.values()))
            assert sorted(map(canonical_code, members)) == sorted(
                map(canonical_code, from_deck)
            ), name

    def test_triangle_chain_contains_drawn_cards(self, load):
        members = quarnet_set(load("triangle_chain"))
        assert len(members) == 5
        card_a = two_triangles_joined(("b", "e"), ("c", "d"))
        card_d = two_triangles_joined(("b", "a"), ("e", "c"))
        assert any(is_equivalent(m, card_a) for m in members)
        assert any(is_equivalent(m, card_d) for m in members)

    def test_demo_complement_of_a(self, load):
        net = load("demo_level2")
        assert is_equivalent(
            quarnet_on(net, ("b", "c", "d", "e")), phylo_delete_leaf(net, "a")
        )

    def test_order_independence_on_six_leaves(self, load, rng):
        nets = []
        demo = load("demo_level2")
        nets.append(attach_leaf(demo, "f", demo.edge_multiset()[3]))
        for _ in range(2):
            nets.append(random_binary_network("abcdef", 2, rng))
        for net in nets:
            for subset in itertools.combinations(sorted(net.label_set), 4):
                gone = sorted(net.label_set - set(subset))
                forward = phylo_delete_leaf(
                    phylo_delete_leaf(net, gone[0]), gone[1]
                )
                backward = phylo_delete_leaf(
                    phylo_delete_leaf(net, gone[1]), gone[0]
                )
                assert is_equivalent(forward, backward), (subset, gone)
                assert is_equivalent(quarnet_on(net, subset), forward)

    def test_recursive_union_agrees(self, load, rng):
        targets = [load("triangle_chain"), load("demo_level2")]
        demo = load("demo_level2")
        targets.append(attach_leaf(demo, "f", demo.edge_multiset()[0]))
        targets.append(random_binary_network("abcdef", 1, rng))
        for net in targets:
            recursive = recursive_quarnets(net, phylo_delete_leaf)
            direct = quarnet_set(net)
            assert len(recursive) == len(direct)
            for q in recursive:
                assert any(is_equivalent(q, c) for c in direct)

    def test_tree_quarnets_are_displayed_quartets(self, rng):
        from oracles import random_binary_tree, random_tree

        for trial in range(6):
            labels = "abcdef"
            tree = (
                random_binary_tree(labels, rng)
                if trial % 2
                else random_tree(labels, rng)
            )
            for subset in itertools.combinations(labels, 4):
                q = quarnet_on(tree, subset)
                assert is_tree(q)
                restricted = {
                    r
                    for s in splits(tree)
                    if (r := s.restrict(set(subset))) is not None
                    and not r.is_trivial
                }
                direct = {s for s in splits(q) if not s.is_trivial}
                assert direct == restricted, (trial, subset)

    def test_errors(self, load):
        with pytest.raises(TooFewLeaves):
            quarnet_set(load("star3"))
        with pytest.raises(TooFewLeaves):
            quarnet_on(load("star3"), ("a", "b", "c"))
        net = load("demo_level2")
        with pytest.raises(BadSubset):
            quarnet_on(net, ("a", "b", "c"))
        with pytest.raises(BadSubset):
            quarnet_on(net, ("a", "b", "c", "zzz"))
