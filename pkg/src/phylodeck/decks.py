"""Deletion operators and deck builders.

A deck is the indexed collection of cards obtained by deleting one element
at a time from a network: leaves (plain or with the phylogenetic repair
rules) or edges.  Cards are pseudo-networks; only the phylogenetic variant
guarantees phylogenetic cards.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .equiv import dedup
from .errors import (
    BadSubset,
    CollapsedToNothing,
    NoSuchEdge,
    TooFewLeaves,
)
from .netcore import (
    PseudoNetwork,
    _add_edge,
    _adj_copy,
    _fresh_names,
    _remove_one_edge,
    _remove_vertex,
    _suppress_adj,
    _vkey,
    blobs,
    cut_edges,
    validate_phylo,
)


@dataclass(frozen=True)
class Deck:
    """Cards indexed by deleted element (leaf label, or edge ordinal)."""

    kind: str  # "leaf" | "phylo" | "edge"
    cards: dict
    origin_label_set: frozenset

    def __len__(self):
        return len(self.cards)


# -- leaf deletion ---------------------------------------------------------------


def delete_leaf(net, x):
    """Remove pendant ``x`` with its edge and suppress degree-2 vertices."""
    v = net.leaf_vertex(x)
    if len(net._by_label) == 1:
        raise CollapsedToNothing(
            "deleting the only leaf leaves no labeled vertex"
        )
    adj = _adj_copy(net)
    _remove_vertex(adj, v)
    labels = {w: lab for w, lab in net._labels.items() if w != v}
    _suppress_adj(adj, labels)
    return PseudoNetwork._from_adj(adj, labels)


def u_deck(net, subset):
    """Deck of leaf-deletion cards for the given labels, indexed by label."""
    want = set(subset)
    extra = want - net.label_set
    if extra:
        raise BadSubset(f"labels not in the network: {sorted(extra)}")
    cards = {x: delete_leaf(net, x) for x in sorted(want)}
    return Deck("leaf", cards, frozenset(net.label_set))


def x_deck(net):
    """The full leaf-deletion deck, one card per leaf."""
    return u_deck(net, net.label_set)


# -- phylogenetic leaf deletion ----------------------------------------------------


def _blob_with_two_cut_edges(interim):
    bridges = [c.edge for c in cut_edges(interim)]
    for blob in blobs(interim):
        members = blob.vertices
        incident = sum(
            1 for u, w in bridges if u in members or w in members
        )
        if incident == 2:
            return blob
    return None


def _collapse_blob(adj, members):
    external = []
    for u in members:
        for w, mult in adj[u].items():
            if w not in members:
                external.extend((w,) * mult)
    for u in members:
        _remove_vertex(adj, u)
    fresh = _fresh_names(set(adj), "c", 1)[0]
    adj[fresh] = {}
    for w in external:
        _add_edge(adj, fresh, w)


def _phylo_fixpoint(adj, labels):
    """Apply, until none fires: (i) suppress degree-2 vertices, (ii) drop
    one edge of a parallel pair, (iii) collapse a blob with exactly two
    incident cut-edges.  Each rule lowers the edge count, so this stops."""
    while True:
        _suppress_adj(adj, labels)
        pair = None
        for u in sorted(adj, key=_vkey):
            for w in sorted(adj[u], key=_vkey):
                if u != w and adj[u][w] >= 2:
                    pair = (u, w)
                    break
            if pair:
                break
        if pair:
            _remove_one_edge(adj, *pair)
            continue
        interim = PseudoNetwork._from_adj(adj, labels)
        blob = _blob_with_two_cut_edges(interim)
        if blob is None:
            return
        _collapse_blob(adj, set(blob.vertices))


def phylo_delete_leaf(net, x):
    """Delete leaf ``x`` and repair until the card is phylogenetic again."""
    if len(net._by_label) < 3:
        raise TooFewLeaves(
            "phylogenetic deletion needs at least three leaves"
        )
    v = net.leaf_vertex(x)
    adj = _adj_copy(net)
    _remove_vertex(adj, v)
    labels = {w: lab for w, lab in net._labels.items() if w != v}
    _phylo_fixpoint(adj, labels)
    out = PseudoNetwork._from_adj(adj, labels)
    validate_phylo(out, min_leaves=2)
    return out


def phylo_deck(net):
    """Deck of phylogenetic leaf-deletion cards, one per leaf."""
    cards = {x: phylo_delete_leaf(net, x) for x in sorted(net.label_set)}
    return Deck("phylo", cards, frozenset(net.label_set))


# -- edge deletion ----------------------------------------------------------------


def edge_delete(net, edge):
    """Remove one copy of ``edge`` and suppress; the card may be a
    disconnected union (isolated labeled vertices included)."""
    u, v = edge
    if net.multiplicity(u, v) == 0:
        raise NoSuchEdge(f"no edge between {u!r} and {v!r}")
    adj = _adj_copy(net)
    _remove_one_edge(adj, u, v)
    labels = dict(net._labels)
    _suppress_adj(adj, labels)
    return PseudoNetwork._from_adj(adj, labels)


def edge_order(net):
    """The canonical edge ordering that indexes the edge-deck: edge classes
    sorted by endpoints, one entry per copy."""
    classes = sorted(
        net.edge_classes(),
        key=lambda item: (_vkey(item[0][0]), _vkey(item[0][1])),
    )
    out = []
    for (u, v), mult in classes:
        out.extend(((u, v),) * mult)
    return out


def edge_deck(net):
    """Deck of edge-deletion cards, indexed by ordinal in ``edge_order``."""
    cards = {}
    cache = {}
    for i, (u, v) in enumerate(edge_order(net)):
        if (u, v) not in cache:
            cache[(u, v)] = edge_delete(net, (u, v))
        cards[i] = cache[(u, v)]
    return Deck("edge", cards, frozenset(net.label_set))


# -- quarnets ---------------------------------------------------------------------


def quarnet_on(net, subset):
    """Restrict to four leaves by phylogenetic deletion of the others,
    ascending label order."""
    labels = net.label_set
    if len(labels) < 4:
        raise TooFewLeaves("quarnets need at least four leaves")
    want = set(subset)
    if len(want) != 4 or not want <= labels:
        raise BadSubset(f"need a 4-subset of {sorted(labels)}")
    current = net
    for lab in sorted(labels - want):
        current = phylo_delete_leaf(current, lab)
    return current


def quarnet_set(net):
    """All quarnets of the network, one representative per equivalence
    class, ordered by canonical code."""
    labels = sorted(net.label_set)
    if len(labels) < 4:
        raise TooFewLeaves("quarnets need at least four leaves")
    return dedup(
        quarnet_on(net, subset)
        for subset in itertools.combinations(labels, 4)
    )
