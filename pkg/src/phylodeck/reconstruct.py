"""Rebuilding networks from their decks.

Constructive algorithms (tree splits, two-card tree, decomposable join,
leaf-chain bridging), a generic attach-and-verify search, and the decision
procedures for the various reconstructibility notions.  Everything returns
plain :class:`~phylodeck.netcore.PseudoNetwork` values or a
:class:`ReconstructionReport`; nothing mutates its inputs.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

from .decks import (
    Deck,
    delete_leaf,
    edge_deck,
    phylo_deck,
    phylo_delete_leaf,
    quarnet_on,
    x_deck,
)
from .equiv import canonical_code, code_hex, dedup, is_equivalent
from .errors import (
    Ambiguous,
    AmbiguousDeck,
    BadSubset,
    EmptySubset,
    NetworkError,
    NoCandidate,
    NoChain,
    NotDecomposableDeck,
    NotTreeDeck,
    TooClose,
    TooFewLeaves,
    UniverseTooSmall,
)
from .netcore import (
    PseudoNetwork,
    Split,
    _adj_copy,
    _component_of,
    _remove_one_edge,
    attach_leaf,
    attach_leaf_at_vertex,
    cut_edges,
    display_tree,
    find_3_chains,
    is_binary,
    is_phylo_network,
    is_tree,
    reticulation_number,
    splits,
    suppress_all_degree2,
    tree_median,
    validate_phylo,
)

__all__ = [
    "ReconstructionReport",
    "attachments",
    "reconstructions_from_cards",
    "is_leaf_reconstructible",
    "reconstruction_number",
    "reconstruct_tree_from_deck",
    "reconstruct_tree_two_cards",
    "reconstruct_decomposable",
    "reconstruct_via_3chain",
    "is_edge_reconstructible",
    "reconstruct_from_quarnets",
    "is_phylo_deck_reconstructible",
]


@dataclass(frozen=True)
class ReconstructionReport:
    """Outcome of a reconstruction attempt.

    ``candidates`` lists the hex canonical codes of every network class that
    matches the examined cards; ``witness`` is a representative network when
    the class is unique.  ``subset`` records which deck indices were used, so
    a report is reproducible from the deck alone.
    """

    deck_id: str
    subset: tuple
    candidates: tuple
    unique: bool
    witness: PseudoNetwork | None
    method: str

    def __post_init__(self):
        if self.unique != (len(self.candidates) == 1):
            raise ValueError("unique must mirror a single candidate class")


def _deck_id(deck):
    return f"{deck.kind}:{','.join(sorted(deck.origin_label_set))}"


def _report(deck, subset, survivors, method):
    """Assemble a report from deduplicated candidate networks."""
    unique = len(survivors) == 1
    return ReconstructionReport(
        deck_id=_deck_id(deck),
        subset=tuple(sorted(subset, key=str)),
        candidates=tuple(sorted(code_hex(m) for m in survivors)),
        unique=unique,
        witness=survivors[0] if unique else None,
        method=method,
    )


# -- candidate generation ---------------------------------------------------------


def attachments(card, x, target_class="binary"):
    """All ways of re-inserting leaf ``x`` into a card.

    ``binary``: one candidate per edge copy (subdivide and hang the leaf).
    ``any``: additionally one candidate per unlabeled vertex of degree >= 3
    (the leaf joins the vertex directly, covering non-binary insertion
    points).  Isolated labeled vertices (single-vertex cards) accept a direct
    join in both modes.  Candidates that are not valid phylogenetic networks
    are dropped, as is any non-binary candidate in ``binary`` mode.
    """
    if target_class not in ("binary", "any"):
        raise ValueError(f"unknown target class {target_class!r}")
    raw = []
    for u, v in card.edge_multiset():
        raw.append(attach_leaf(card, x, (u, v)))
    labels = card.labels
    for v in card.vertices:
        deg = card.degree(v)
        if deg == 0 and v in labels:
            raw.append(attach_leaf_at_vertex(card, x, v))
        elif target_class == "any" and deg >= 3 and v not in labels:
            raw.append(attach_leaf_at_vertex(card, x, v))
    keep = []
    for cand in raw:
        if not is_phylo_network(cand):
            continue
        if target_class == "binary" and not is_binary(cand):
            continue
        keep.append(cand)
    return keep


def _redelete(net, index, kind):
    if kind == "leaf":
        return delete_leaf(net, index)
    if kind == "phylo":
        return phylo_delete_leaf(net, index)
    raise ValueError(f"cannot re-delete by index in a {kind!r} deck")


def reconstructions_from_cards(deck, subset, target_class="binary"):
    """Generic search: attach the base card's missing leaf every possible way,
    keep the candidates whose re-deleted cards match every card in ``subset``,
    and report the distinct classes found."""
    chosen = tuple(sorted(set(subset), key=str))
    if not chosen:
        raise EmptySubset("at least one card index is required")
    missing = [i for i in chosen if i not in deck.cards]
    if missing:
        raise BadSubset(f"indices not in the deck: {missing}")
    if deck.kind not in ("leaf", "phylo"):
        raise ValueError(f"cannot reconstruct from a {deck.kind!r} deck")
    base = min(chosen, key=lambda i: (deck.cards[i].num_edges, str(i)))
    survivors = []
    for cand in attachments(deck.cards[base], base, target_class):
        try:
            if all(
                is_equivalent(_redelete(cand, i, deck.kind), deck.cards[i])
                for i in chosen
            ):
                survivors.append(cand)
        except NetworkError:
            continue
    return _report(deck, chosen, dedup(survivors), "generic-search")


# -- reconstructibility and reconstruction number ----------------------------------


# Per-kind memo of card canonical codes, keyed by the owning network's own
# canonical code (equivalent networks share indexed leaf decks, so sharing
# the entry is sound).  Universe sweeps hit the same members repeatedly.
_CARD_CODE_MEMO = {"leaf": {}, "phylo": {}, "edge": {}}
_DECK_BUILDER = {"leaf": x_deck, "phylo": phylo_deck, "edge": edge_deck}


def _indexed_card_codes(net, kind):
    key = (kind, canonical_code(net))
    memo = _CARD_CODE_MEMO[kind]
    if key not in memo:
        deck = _DECK_BUILDER[kind](net)
        memo[key] = {i: canonical_code(c) for i, c in deck.cards.items()}
    return memo[key]


def _universe_members(net, universe):
    """Same-label-set members, with the membership guard."""
    if getattr(universe, "certified", True) is False:
        raise UniverseTooSmall(
            "the supplied universe is not certified to cover its class"
        )
    members = [m for m in universe if m.label_set == net.label_set]
    mine = canonical_code(net)
    if not any(canonical_code(m) == mine for m in members):
        raise UniverseTooSmall(
            "the supplied universe does not contain the network itself"
        )
    return members


def _universe_subset_report(deck, subset, members, kind):
    chosen = tuple(sorted(set(subset), key=str))
    if not chosen:
        raise EmptySubset("at least one card index is required")
    want = {i: canonical_code(deck.cards[i]) for i in chosen}
    survivors = []
    for m in members:
        codes = _indexed_card_codes(m, kind)
        if all(codes[i] == want[i] for i in chosen):
            survivors.append(m)
    return _report(deck, chosen, dedup(survivors), "universe-filter")


def _target_class_for(net):
    """Attachment mode for the generic search.

    Binary networks are compared against binary candidates only (the class
    the notion is usually stated for); everything else searches the
    unrestricted class.  Edge subdivision plus degree->=3-vertex insertion
    covers every way a leaf deletion can be undone, so both modes generate
    the complete candidate space for their class.
    """
    if not is_tree(net) and is_binary(net):
        return "binary"
    return "any"


def is_leaf_reconstructible(net, universe=None):
    """Whether the full leaf deck determines the network up to equivalence."""
    validate_phylo(net)
    deck = x_deck(net)
    if universe is not None:
        members = _universe_members(net, universe)
        report = _universe_subset_report(deck, deck.cards, members, "leaf")
    else:
        report = reconstructions_from_cards(
            deck, deck.cards, _target_class_for(net)
        )
    return report.unique


def reconstruction_number(net, universe=None, detail=False):
    """Smallest number of cards that determines the network; None when even
    the full deck is ambiguous.  With ``detail=True`` returns
    ``(number, report)`` so the winning card subset is reproducible.

    Subsets are tried in size order and lexicographically within a size; the
    first determining subset wins.
    """
    validate_phylo(net)
    deck = x_deck(net)
    labels = sorted(deck.cards)
    if universe is not None:
        members = _universe_members(net, universe)

        def subset_report(sub):
            return _universe_subset_report(deck, sub, members, "leaf")

    else:
        target = _target_class_for(net)

        def subset_report(sub):
            return reconstructions_from_cards(deck, sub, target)

    full = subset_report(labels)
    if not full.unique:
        return (None, None) if detail else None
    for size in range(1, len(labels) + 1):
        for sub in itertools.combinations(labels, size):
            report = subset_report(sub)
            if report.unique:
                return (size, report) if detail else size
    raise AssertionError("unreachable: the full deck was already unique")


# -- trees from their split sets ----------------------------------------------------


def _split_key(s):
    return (tuple(sorted(s.side_a)), tuple(sorted(s.side_b)))


def _tree_from_clusters(label_set, nontrivial_splits):
    """Build the tree realizing the given splits, or raise NotTreeDeck."""
    root = min(label_set)
    clusters = {frozenset((x,)) for x in label_set if x != root}
    for s in nontrivial_splits:
        clusters.add(frozenset(s.side_b if root in s.side_a else s.side_a))
    top = frozenset(label_set) - {root}
    clusters.add(top)
    for c1, c2 in itertools.combinations(clusters, 2):
        if c1 & c2 and not (c1 <= c2 or c2 <= c1):
            raise NotTreeDeck("the accepted splits are incompatible")
    names = {}
    for i, c in enumerate(sorted(clusters, key=lambda c: (len(c), sorted(c)))):
        names[c] = next(iter(c)) if len(c) == 1 else f"v{i}"
    edges = [(root, names[top])]
    for c in clusters:
        if c == top:
            continue
        parent = min((d for d in clusters if c < d), key=len)
        edges.append((names[c], names[parent]))
    labels = {x: x for x in label_set}
    return suppress_all_degree2(PseudoNetwork(edges, labels))


def reconstruct_tree_from_deck(deck):
    """Rebuild a tree from its full leaf deck by assembling the unique split
    set that restricts correctly onto every card."""
    if deck.kind not in ("leaf", "phylo"):
        raise ValueError(f"cannot rebuild a tree from a {deck.kind!r} deck")
    label_set = set(deck.origin_label_set)
    if set(deck.cards) != label_set:
        raise BadSubset("a full deck (one card per leaf) is required")
    for card in deck.cards.values():
        if reticulation_number(card) != 0:
            raise NotTreeDeck("a card is not a tree")
    if len(label_set) == 4:
        raise AmbiguousDeck(
            "every tree on four leaves has the same deck of three-leaf stars"
        )
    if len(label_set) < 4:
        # A tree this small is unique: an edge or a star.
        if len(label_set) == 2:
            a, b = sorted(label_set)
            tree = PseudoNetwork([(a, b)], {a: a, b: b})
        else:
            tree = PseudoNetwork(
                [(x, "hub") for x in sorted(label_set)],
                {x: x for x in label_set},
            )
        _verify_tree_deck(tree, deck)
        return tree
    card_splits = {x: splits(card) for x, card in deck.cards.items()}
    lifted = set()
    for x, card in deck.cards.items():
        for s in card_splits[x]:
            if s.is_trivial:
                continue
            lifted.add(Split.of(s.side_a | {x}, s.side_b))
            lifted.add(Split.of(s.side_a, s.side_b | {x}))
    accepted = []
    for cand in sorted(lifted, key=_split_key):
        ok = True
        for x in label_set:
            r = cand.restrict(label_set - {x})
            if r is None:
                ok = False
                break
            if r.is_trivial:
                continue
            if r not in card_splits[x]:
                ok = False
                break
        if ok:
            accepted.append(cand)
    tree = _tree_from_clusters(label_set, accepted)
    _verify_tree_deck(tree, deck)
    return tree


def _verify_tree_deck(tree, deck):
    mine = _indexed_card_codes(tree, "leaf")
    for x, card in deck.cards.items():
        if mine[x] != canonical_code(card):
            raise NotTreeDeck("no tree realizes these cards")


# -- two-card tree reconstruction ---------------------------------------------------


def _leaves_beyond(net, start, blocked):
    """Sorted labels of the leaves reachable from ``start`` without passing
    through the vertex ``blocked``."""
    labels = net.labels
    seen = {blocked, start}
    stack = [start]
    found = []
    while stack:
        v = stack.pop()
        if v in labels and net.degree(v) <= 1:
            found.append(labels[v])
        for w in net.neighbors(v):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return sorted(found)


def _locate(card_target, card_view, vertex, blocker, far_witness):
    """Find, inside ``card_target``, the vertex that appears as ``vertex`` in
    ``card_view`` (a neighbor of ``blocker`` there), using leaf witnesses."""
    label = card_view.label_of(vertex)
    if label is not None:
        return card_target.leaf_vertex(label)
    branches = [w for w in card_view.neighbors(vertex) if w != blocker]
    if len(branches) < 2:
        raise TooClose("an attachment endpoint cannot be pinned down")
    first = _leaves_beyond(card_view, branches[0], vertex)
    second = _leaves_beyond(card_view, branches[1], vertex)
    if not first or not second or not far_witness:
        raise TooClose("an attachment endpoint cannot be pinned down")
    return tree_median(card_target, first[0], second[0], far_witness[0])


def reconstruct_tree_two_cards(card_x, card_y, x, y):
    """Rebuild a tree from two of its cards.

    ``card_y`` shows where ``x`` sits: its neighbor there either came from a
    suppressed binary insertion point (re-subdivide the matching edge of
    ``card_x``, located through leaf medians) or survives as a vertex of
    degree >= 3 (join ``x`` to it directly).  Raises TooClose when the two
    deleted leaves are too near each other for the cards to determine the
    tree.
    """
    if reticulation_number(card_x) != 0 or reticulation_number(card_y) != 0:
        raise NotTreeDeck("both cards must be trees")
    if x in card_x.label_set or y in card_y.label_set or x == y:
        raise BadSubset("cards must omit exactly their own deleted leaf")
    if card_x.label_set - {y} != card_y.label_set - {x}:
        raise BadSubset("the two cards disagree on the remaining leaves")
    try:
        candidate = _two_card_candidate(card_x, card_y, x)
    except NetworkError as exc:
        raise TooClose(f"the cards do not determine the tree: {exc}") from exc
    if not is_equivalent(delete_leaf(candidate, x), card_x):
        raise TooClose("the rebuilt tree contradicts the first card")
    if not is_equivalent(delete_leaf(candidate, y), card_y):
        raise TooClose("the rebuilt tree contradicts the second card")
    return candidate


def _two_card_candidate(card_x, card_y, x):
    leaf_x = card_y.leaf_vertex(x)
    anchor = card_y.neighbors(leaf_x)[0]
    others = [v for v in card_y.neighbors(anchor) if v != leaf_x]
    if card_y.degree(anchor) == 3 and len(others) == 2:
        # The insertion point was suppressed out of card_x; find the edge.
        endpoints = []
        for p, q in (others, others[::-1]):
            far = _leaves_beyond(card_y, q, anchor)
            endpoints.append(_locate(card_x, card_y, p, anchor, far))
        u, v = endpoints
        return attach_leaf(card_x, x, (u, v))
    # The insertion point survives in card_x with degree >= 3; it is the
    # median of any three witness leaves taken from distinct branches.
    if len(others) < 3:
        raise TooClose("an attachment vertex cannot be pinned down")
    witnesses = [_leaves_beyond(card_y, n, anchor) for n in others[:3]]
    if not all(witnesses):
        raise TooClose("an attachment vertex cannot be pinned down")
    target = tree_median(
        card_x, witnesses[0][0], witnesses[1][0], witnesses[2][0]
    )
    return attach_leaf_at_vertex(card_x, x, target)


# -- decomposable networks ------------------------------------------------------------


def _far_piece(card, near_labels, far_labels):
    """The smallest component of ``card`` minus one cut-edge that carries
    exactly ``far_labels``; returns (piece, attachment vertex)."""
    labels = card.labels
    best = None
    for ce in cut_edges(card):
        u, v = ce.edge
        adj = _adj_copy(card)
        _remove_one_edge(adj, u, v)
        side = _component_of(adj, u)
        got = {labels[w] for w in side if w in labels}
        if got == far_labels:
            comp, anchor = side, u
        elif got == near_labels:
            comp, anchor = _component_of(adj, v), v
        else:
            continue
        if best is None or len(comp) < len(best[0]):
            best = (comp, anchor)
    if best is None:
        raise NotDecomposableDeck("no cut-edge induces the chosen split")
    comp, anchor = best
    edges = [(u, v) for u, v in card.edge_multiset() if u in comp and v in comp]
    piece_labels = {v: lab for v, lab in labels.items() if v in comp}
    return PseudoNetwork(edges, piece_labels), anchor


def reconstruct_decomposable(deck):
    """Rebuild a network that splits across a cut-edge into two halves.

    The display trees of the cards assemble into the network's display tree;
    any of its nontrivial splits then names two cards from which the two
    halves can be cut out whole and joined back with a single edge.
    """
    if deck.kind != "leaf":
        raise ValueError("a leaf deck is required")
    label_set = set(deck.origin_label_set)
    if set(deck.cards) != label_set:
        raise BadSubset("a full deck (one card per leaf) is required")
    with_cut = sum(
        1
        for card in deck.cards.values()
        if any(not ce.trivial for ce in cut_edges(card))
    )
    if with_cut < len(label_set) - 2:
        raise NotDecomposableDeck(
            f"only {with_cut} of {len(deck.cards)} cards have a nontrivial "
            "cut-edge"
        )
    tree_deck = Deck(
        "leaf",
        {x: display_tree(card) for x, card in deck.cards.items()},
        deck.origin_label_set,
    )
    try:
        skeleton = reconstruct_tree_from_deck(tree_deck)
    except (NotTreeDeck, AmbiguousDeck) as exc:
        raise NotDecomposableDeck(
            f"the cards' display trees do not assemble: {exc}"
        ) from exc
    nontrivial = sorted(
        (s for s in splits(skeleton) if not s.is_trivial), key=_split_key
    )
    if not nontrivial:
        raise NotDecomposableDeck("the display tree has no nontrivial split")
    chosen = nontrivial[0]
    side_a, side_b = set(chosen.side_a), set(chosen.side_b)
    first, second = min(side_a), min(side_b)
    piece_b, anchor_b = _far_piece(deck.cards[first], side_a - {first}, side_b)
    piece_a, anchor_a = _far_piece(deck.cards[second], side_b - {second}, side_a)
    edges = [(f"a.{u}", f"a.{v}") for u, v in piece_a.edge_multiset()]
    edges += [(f"b.{u}", f"b.{v}") for u, v in piece_b.edge_multiset()]
    edges.append((f"a.{anchor_a}", f"b.{anchor_b}"))
    labels = {f"a.{v}": lab for v, lab in piece_a.labels.items()}
    labels.update({f"b.{v}": lab for v, lab in piece_b.labels.items()})
    joined = PseudoNetwork(edges, labels)
    mine = {x: canonical_code(c) for x, c in x_deck(joined).cards.items()}
    for index, card in deck.cards.items():
        if mine[index] != canonical_code(card):
            raise NotDecomposableDeck(
                "the joined halves do not reproduce the deck"
            )
    return joined


# -- simple networks via leaf chains ---------------------------------------------------


def reconstruct_via_3chain(deck, chain, helper):
    """Rebuild a network from two cards using three consecutive leaves.

    ``chain`` = (x, y, z): three leaves hanging off a path of three vertices.
    The card missing ``y`` keeps the neighbors of ``x`` and ``z`` adjacent;
    re-subdividing that edge re-inserts ``y``.  The ``helper`` card only
    checks the result.
    """
    if deck.kind != "leaf":
        raise ValueError("a leaf deck is required")
    x, y, z = chain
    if x > z:
        x, z = z, x
    wanted = {x, y, z, helper}
    if helper in (x, y, z) or not wanted <= set(deck.cards):
        raise BadSubset(
            "chain and helper must be four distinct deck indices"
        )
    helper_card = deck.cards[helper]
    if (x, y, z) not in find_3_chains(helper_card):
        raise NoChain(
            f"({x}, {y}, {z}) is not a leaf chain of the {helper!r} card"
        )
    card_y = deck.cards[y]
    near_x = card_y.neighbors(card_y.leaf_vertex(x))[0]
    near_z = card_y.neighbors(card_y.leaf_vertex(z))[0]
    if near_x == near_z or not card_y.has_edge(near_x, near_z):
        raise NoChain("the chain neighbors are not bridged in the middle card")
    candidate = attach_leaf(card_y, y, (near_x, near_z))
    if not is_equivalent(delete_leaf(candidate, helper), helper_card):
        raise NoChain("the re-inserted leaf contradicts the helper card")
    return candidate


# -- edge decks -------------------------------------------------------------------------


def _edge_card_match(codes_a, codes_b):
    """Explicit per-card matching between two edge decks (greedy within
    equal-code groups); True when a full bijection exists."""
    remaining = {}
    for code in codes_b:
        remaining[code] = remaining.get(code, 0) + 1
    for code in codes_a:
        if not remaining.get(code):
            return False
        remaining[code] -= 1
    return all(count == 0 for count in remaining.values())


def is_edge_reconstructible(net, universe):
    """Whether the multiset of single-edge-deleted cards determines the
    network among all same-size networks of the certified universe."""
    validate_phylo(net)
    members = _universe_members(net, universe)
    mine_code = canonical_code(net)
    mine = sorted(_indexed_card_codes(net, "edge").values())
    for m in members:
        if m.num_edges != net.num_edges:
            continue
        if canonical_code(m) == mine_code:
            continue
        other = sorted(_indexed_card_codes(m, "edge").values())
        if other == mine and _edge_card_match(mine, other):
            return False
    return True


# -- quarnets and the phylogenetic deck ---------------------------------------------------


@functools.lru_cache(maxsize=8)
def _default_quarnet_universe(labels):
    from .enumerate import enumerate_networks

    return enumerate_networks(labels, max_level=3, max_ret=4)


def reconstruct_from_quarnets(quarnets, labels, universe=None):
    """Recover a network from its four-leaf subnetworks by filtering a
    universe of candidates (binary, level <= 3 by default); the survivor
    must be unique.  The quarnet list may cover only some of the 4-subsets;
    whatever is supplied constrains the filter."""
    label_set = frozenset(labels)
    if len(label_set) < 4:
        raise TooFewLeaves("at least four leaf labels are required")
    by_subset = {}
    for q in quarnets:
        subset = frozenset(q.label_set)
        if len(subset) != 4 or not subset <= label_set:
            raise BadSubset(
                f"quarnet on {sorted(q.label_set)} does not fit the label set"
            )
        if subset in by_subset and not is_equivalent(by_subset[subset], q):
            raise BadSubset(
                f"conflicting quarnets supplied for {sorted(subset)}"
            )
        by_subset[subset] = q
    if not by_subset:
        raise BadSubset("at least one quarnet is required")
    subsets = sorted(by_subset, key=sorted)
    if universe is None:
        universe = _default_quarnet_universe(tuple(sorted(label_set)))
    survivors = []
    for m in universe:
        if m.label_set != label_set:
            continue
        if all(
            is_equivalent(quarnet_on(m, s), by_subset[s]) for s in subsets
        ):
            survivors.append(m)
    survivors = dedup(survivors)
    if not survivors:
        raise NoCandidate("no universe member realizes these quarnets")
    if len(survivors) > 1:
        codes = tuple(code_hex(m) for m in survivors)
        err = Ambiguous(
            f"{len(survivors)} classes realize these quarnets: "
            + ", ".join(codes)
        )
        err.codes = codes
        raise err
    return survivors[0]


def is_phylo_deck_reconstructible(net, universe):
    """Whether the deck of repaired (phylogenetic) cards determines the
    network among the certified universe."""
    validate_phylo(net, min_leaves=3)
    members = _universe_members(net, universe)
    mine_code = canonical_code(net)
    mine = _indexed_card_codes(net, "phylo")
    for m in members:
        if canonical_code(m) == mine_code:
            continue
        if _indexed_card_codes(m, "phylo") == mine:
            return False
    return True
