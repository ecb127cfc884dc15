"""Exhaustive generation of small network classes, up to equivalence.

This module produces *certified universes*: complete lists of networks of a
given class (binary networks under level/reticulation caps, or trees) on a
fixed leaf set, each class represented once.  The reconstruction module uses
these universes for filter-based checks, and :func:`verify_class` sweeps an
entire universe through the reconstruction predicates.

Everything here is deterministic: equal inputs give identical output lists,
sorted by canonical code.  Symmetry is handled purely by canonical-code
deduplication rather than by orbit bookkeeping, trading CPU for simplicity.

Completeness arguments (sketches; the test suite cross-checks them against
an independent naive generator at small sizes):

* ``enumerate_generators`` searches every 3-regular multigraph on the exact
  vertex count and keeps the 2-edge-connected ones.  Loops are excluded up
  front: a loop absorbs two of its vertex's three edge-ends, and the single
  remaining edge is then a bridge.
* ``enumerate_trees`` grows trees by inserting one leaf at a time.  Deleting
  the last-inserted leaf from any target tree yields a smaller tree, and the
  insertion that undoes the deletion is among those tried, so induction on
  the leaf count gives completeness (for nonbinary trees, insertion at an
  internal vertex undoes deletion of a leaf whose neighbor kept degree >= 3).
* ``enumerate_simple`` writes a single-blob network as its generator plus an
  assignment of leaves to positions along generator edges, which is exactly
  how such networks decompose; all assignments are tried.
* ``enumerate_networks`` composes a tree skeleton (the cut-edge structure,
  with every blob contracted to a vertex) with single-blob fillings of its
  internal vertices.  Contracting the blobs of any binary network yields a
  tree whose internal vertices are plain degree-3 vertices or contracted
  blobs, and a blob with d incident cut-edges is a single-blob network on d
  stub leaves, so the composition inverts the decomposition exactly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .decks import quarnet_on
from .equiv import canonical_code, code_hex, unlabeled_code
from .errors import BudgetExceeded, Infeasible
from .netcore import (
    Generator,
    PseudoNetwork,
    attach_leaf,
    attach_leaf_at_vertex,
    blobs,
    cut_edges,
    realize_placements,
    _component_of,
)

__all__ = [
    "UniverseSpec",
    "Universe",
    "MemberResult",
    "VerificationReport",
    "enumerate_generators",
    "enumerate_trees",
    "enumerate_simple",
    "enumerate_networks",
    "verify_class",
]


_ALPHABET = "abcdefghijklmnopqrstuvwxyz"

#: Checks verify_class knows how to run, in report column order.
CHECK_NAMES = ("leaf", "recon-number", "edge", "phylo", "quarnet")


def _as_labels(arg):
    """Normalize a leaf count or an iterable of labels to a sorted tuple."""
    if isinstance(arg, bool):
        raise ValueError("leaf count must be an integer, not a bool")
    if isinstance(arg, int):
        if arg < 0:
            raise ValueError("leaf count cannot be negative")
        if arg > len(_ALPHABET):
            raise BudgetExceeded(
                f"{arg} leaves exceeds the built-in label alphabet; "
                "pass explicit labels"
            )
        return tuple(_ALPHABET[:arg])
    labels = tuple(arg)
    if not all(isinstance(lab, str) and lab for lab in labels):
        raise ValueError("leaf labels must be non-empty strings")
    if len(set(labels)) != len(labels):
        raise ValueError("leaf labels must be distinct")
    return tuple(sorted(labels))


# --------------------------------------------------------------------------
# generators
# --------------------------------------------------------------------------

def enumerate_generators(k):
    """All generators of level ``k`` up to unlabeled isomorphism.

    A generator is a 3-regular 2-edge-connected multigraph; level ``k``
    pins the vertex count to ``2k - 2``.  Results are wrapped in
    :class:`~phylodeck.netcore.Generator` and sorted by unlabeled code.
    """
    if isinstance(k, bool) or not isinstance(k, int):
        raise ValueError("level must be an integer")
    if k < 2:
        raise ValueError("generators exist only for level >= 2")
    nv = 2 * k - 2
    names = [f"g{i}" for i in range(nv)]
    # Loops are excluded from the search: a loop uses two edge-ends of its
    # vertex, and the one remaining edge would be a bridge.
    slots = [(i, j) for i in range(nv) for j in range(i + 1, nv)]
    residual = [3] * nv
    found = {}

    def collect(mults):
        edges = []
        for (i, j), m in mults.items():
            edges.extend(((names[i], names[j]),) * m)
        net = PseudoNetwork(edges)
        if len(net._adj) != nv:
            return
        if len(_component_of(net._adj, names[0])) != nv:
            return
        if cut_edges(net):
            return
        pieces = blobs(net)
        if len(pieces) != 1 or len(pieces[0].vertices) != nv:
            return
        found.setdefault(unlabeled_code(net), net)

    def extend(s, mults):
        if s == len(slots):
            if not any(residual):
                collect(mults)
            return
        i, j = slots[s]
        # After slot (i, j) the vertex i only appears in later slots (i, j')
        # with j' > j, so when j is the last column i's degree must close.
        last_for_i = j == nv - 1
        hi = min(residual[i], residual[j])
        lo = residual[i] if last_for_i else 0
        if lo > hi:
            return
        for m in range(lo, hi + 1):
            if last_for_i and m != residual[i]:
                continue
            residual[i] -= m
            residual[j] -= m
            if m:
                mults[(i, j)] = m
            extend(s + 1, mults)
            if m:
                del mults[(i, j)]
            residual[i] += m
            residual[j] += m

    extend(0, {})
    return [Generator(net=found[c], level=k) for c in sorted(found)]


# --------------------------------------------------------------------------
# trees
# --------------------------------------------------------------------------

def enumerate_trees(n, binary=True):
    """All phylogenetic trees on ``n`` leaves (or the given labels).

    ``n`` may be a leaf count (labels default to 'a', 'b', ...) or an
    iterable of label strings.  With ``binary=True`` only degree-3 internal
    vertices are allowed; counts follow the double factorial (2n-5)!!.
    """
    labels = _as_labels(n)
    if len(labels) < 2:
        raise ValueError("a phylogenetic tree needs at least two leaves")
    first, second = labels[0], labels[1]
    trees = [PseudoNetwork([(first, second)], {first: first, second: second})]
    for x in labels[2:]:
        grown = {}
        for t in trees:
            for (u, v), _mult in t.edge_classes():
                cand = attach_leaf(t, x, (u, v))
                grown.setdefault(canonical_code(cand), cand)
            if not binary:
                for v in t.vertices:
                    if t.label_of(v) is None and t.degree(v) >= 3:
                        cand = attach_leaf_at_vertex(t, x, v)
                        grown.setdefault(canonical_code(cand), cand)
        trees = [grown[c] for c in sorted(grown)]
    return trees


# --------------------------------------------------------------------------
# simple (single-blob) networks
# --------------------------------------------------------------------------

def enumerate_simple(k, n):
    """All simple binary level-``k`` networks on the given leaves.

    A simple network is one blob plus pendant leaf edges.  For ``k >= 2``
    every such network is a generator with leaves placed along its edges;
    for ``k = 1`` it is a cycle carrying one pendant leaf per cycle vertex,
    so the cycle length equals the leaf count and at least three leaves are
    needed.  Fewer than three leaves admit no simple network at any level,
    because the blob would have fewer than three incident cut-edges.
    """
    if isinstance(k, bool) or not isinstance(k, int):
        raise ValueError("level must be an integer")
    labels = _as_labels(n)
    if k < 1 or not labels:
        raise Infeasible(
            f"no simple networks exist for level {k} with {len(labels)} leaves"
        )
    if len(labels) < 3:
        return []
    out = {}
    if k == 1:
        # Fix the first label's cycle position; rotations reach every
        # arrangement and reflections fall to the dedup.
        lead, rest = labels[0], labels[1:]
        for perm in itertools.permutations(rest):
            ring = (lead,) + perm
            size = len(ring)
            edges = []
            for i, lab in enumerate(ring):
                edges.append((f"c{i}", f"c{(i + 1) % size}"))
                edges.append((f"c{i}", lab))
            net = PseudoNetwork(edges, {lab: lab for lab in ring})
            out.setdefault(canonical_code(net), net)
    else:
        for gen in enumerate_generators(k):
            _place_leaves(gen, labels, out)
    return [out[c] for c in sorted(out)]


def _place_leaves(gen, labels, out):
    """Drop every arrangement of ``labels`` onto ``gen``'s edges into ``out``.

    Each leaf subdivides an edge copy; a parallel class of the generator may
    keep at most one unsubdivided copy, otherwise the result retains a
    multi-edge.  Past that filter every placement is a valid simple binary
    network of the generator's level: subdivision preserves 2-edge-
    connectivity and the cycle rank, pendant edges are the only cut-edges,
    and all degrees are 1 or 3.
    """
    classes = gen.net.edge_classes()
    copies = [(u, v, idx) for (u, v), mult in classes for idx in range(mult)]
    copy_ids_by_class = []
    base = 0
    for (_uv, mult) in classes:
        if mult >= 2:
            copy_ids_by_class.append(range(base, base + mult))
        base += mult
    for assign in itertools.product(range(len(copies)), repeat=len(labels)):
        groups = {}
        for lab, ci in zip(labels, assign):
            groups.setdefault(ci, []).append(lab)
        if any(
            sum(1 for ci in ids if ci not in groups) >= 2
            for ids in copy_ids_by_class
        ):
            continue
        items = sorted(groups.items())
        for orderings in itertools.product(
            *(itertools.permutations(g) for _ci, g in items)
        ):
            placements = {}
            for (ci, _g), seq in zip(items, orderings):
                u, v, idx = copies[ci]
                for pos, lab in enumerate(seq, start=1):
                    placements[lab] = ((u, v, idx), pos)
            net = realize_placements(gen, placements)
            out.setdefault(canonical_code(net), net)


# --------------------------------------------------------------------------
# composed universes
# --------------------------------------------------------------------------

_NET_CLASSES = ("binary", "tree", "nonbinary-tree")


@dataclass(frozen=True)
class UniverseSpec:
    """Parameters defining a class of networks on a fixed leaf count.

    ``certified`` asserts that generation provably covers the class; it is
    True for every parameter combination this module accepts (the budget
    guard rejects the rest), and consumers treat an uncertified universe as
    unusable for uniqueness claims.
    """

    n_leaves: int
    max_level: int = 0
    max_reticulation: int = 0
    net_class: str = "binary"
    certified: bool = True

    def __post_init__(self):
        if self.net_class not in _NET_CLASSES:
            raise ValueError(
                f"unknown network class {self.net_class!r}; "
                f"expected one of {_NET_CLASSES}"
            )
        if self.n_leaves < 2:
            raise ValueError("a universe needs at least two leaves")
        if self.max_level < 0 or self.max_reticulation < 0:
            raise ValueError("level and reticulation caps cannot be negative")


@dataclass(frozen=True)
class Universe:
    """A complete, deduplicated list of networks matching a UniverseSpec."""

    spec: UniverseSpec
    members: tuple

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def __getitem__(self, index):
        return self.members[index]

    @property
    def certified(self):
        return self.spec.certified


def _check_budget(spec):
    """Reject parameter ranges beyond desk scale.

    The reticulation cap is 4 in general; universes capped at level <= 2 may
    go up to 6 so that they are structurally complete (three blob slots of
    reticulation 2 each can occur on five or six leaves).
    """
    if spec.n_leaves > 6:
        raise BudgetExceeded("universes support at most 6 leaves")
    if spec.max_level > 4:
        raise BudgetExceeded("universes support level at most 4")
    ret_cap = 6 if spec.max_level <= 2 else 4
    if spec.max_reticulation > ret_cap:
        raise BudgetExceeded(
            f"reticulation cap {spec.max_reticulation} exceeds the supported "
            f"maximum of {ret_cap} for level <= {spec.max_level}"
        )


def enumerate_networks(spec, labels=None, *, max_level=None, max_ret=None,
                       net_class="binary", certified=True):
    """Build the certified universe described by ``spec``.

    ``spec`` is a :class:`UniverseSpec`, or a leaf count / label iterable
    combined with the keyword caps.  Members are deduplicated and sorted by
    canonical code.
    """
    if isinstance(spec, UniverseSpec):
        if labels is None:
            member_labels = _as_labels(spec.n_leaves)
        else:
            member_labels = _as_labels(labels)
            if len(member_labels) != spec.n_leaves:
                raise ValueError(
                    f"{len(member_labels)} labels given for a universe of "
                    f"{spec.n_leaves} leaves"
                )
    else:
        member_labels = _as_labels(spec)
        spec = UniverseSpec(
            n_leaves=len(member_labels),
            max_level=max_level or 0,
            max_reticulation=max_ret or 0,
            net_class=net_class,
            certified=certified,
        )
    _check_budget(spec)
    if spec.net_class == "tree":
        members = enumerate_trees(member_labels, binary=True)
    elif spec.net_class == "nonbinary-tree":
        members = enumerate_trees(member_labels, binary=False)
    else:
        members = _compose_binary(
            member_labels, spec.max_level, spec.max_reticulation
        )
    return Universe(spec=spec, members=tuple(members))


def _compose_binary(labels, max_level, max_ret):
    """All binary networks on ``labels`` with the given level/ret caps."""
    if max_level == 0 or max_ret == 0:
        return enumerate_trees(labels, binary=True)
    skeletons = enumerate_trees(labels, binary=False)
    blob_cache = {}

    def blob_options(k, d):
        if (k, d) not in blob_cache:
            stubs = tuple(f"s{i}" for i in range(1, d + 1))
            blob_cache[(k, d)] = enumerate_simple(k, stubs)
        return blob_cache[(k, d)]

    out = {}
    for skel in skeletons:
        internals = [v for v in skel.vertices if skel.label_of(v) is None]
        options = []
        feasible = True
        for v in internals:
            opts = [(0, None)] if skel.degree(v) == 3 else []
            for k in range(1, max_level + 1):
                opts.extend((k, blob) for blob in blob_options(k, skel.degree(v)))
            if not opts:
                feasible = False
                break
            options.append(opts)
        if not feasible:
            continue

        def assemble(i, budget, choice):
            if i == len(internals):
                net = _graft(skel, internals, choice)
                out.setdefault(canonical_code(net), net)
                return
            for k, blob in options[i]:
                if k > budget:
                    continue
                choice.append(blob)
                assemble(i + 1, budget - k, choice)
                choice.pop()

        assemble(0, max_ret, [])
    return [out[c] for c in sorted(out)]


def _graft(skel, internals, choice):
    """Replace chosen internal vertices of a tree skeleton by blobs.

    A blob on d stub leaves replaces a degree-d vertex: the i-th stub's
    pendant edge is rewired to the vertex's i-th neighbor (sorted order),
    and blob interiors are renamed ``<vertex>|<name>`` to stay unique.
    """
    edges = []
    port = {}
    for v, blob in zip(internals, choice):
        if blob is None:
            continue
        for i, nb in enumerate(skel.neighbors(v)):
            stub = blob.leaf_vertex(f"s{i + 1}")
            parent = blob.neighbors(stub)[0]
            port[(v, nb)] = f"{v}|{parent}"
        for (x, y), mult in blob.edge_classes():
            if blob.label_of(x) is not None or blob.label_of(y) is not None:
                continue
            edges.extend(((f"{v}|{x}", f"{v}|{y}"),) * mult)
    for (u, w), mult in skel.edge_classes():
        a = port.get((u, w), u)
        b = port.get((w, u), w)
        edges.extend(((a, b),) * mult)
    return PseudoNetwork(edges, skel.labels)


# --------------------------------------------------------------------------
# verification sweeps
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class MemberResult:
    """Per-network outcome of a verification sweep (None = check not run)."""

    code: str
    leaf_reconstructible: bool | None = None
    reconstruction_number: int | None = None
    edge_reconstructible: bool | None = None
    phylo_deck_reconstructible: bool | None = None
    quarnet_reconstructible: bool | None = None


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of verify_class: one row per universe member.

    ``counterexamples`` lists (code, check) pairs for members that failed a
    selected check; it is empty exactly when every check held everywhere.
    """

    spec: UniverseSpec
    checks: tuple
    total: int
    members: tuple
    counterexamples: tuple


def verify_class(spec, checks=("leaf",), labels=None):
    """Run the selected reconstruction checks over an entire universe.

    ``spec`` is a UniverseSpec (or an already-built Universe); ``checks``
    is an iterable drawn from ``CHECK_NAMES``:

    * ``leaf``: no other member shares the network's full indexed leaf deck.
    * ``recon-number``: smallest subset of deck indices that pins the
      network down uniquely within the universe (None when even the full
      deck is ambiguous, which also counts as a counterexample).
    * ``edge``: no other member shares the edge-deck card multiset.
    * ``phylo``: no other member shares the indexed phylogenetic deck.
    * ``quarnet``: no other member shares all quarnets.

    Within a certified universe these sweeps decide true reconstructibility
    for the class: the deck of a network determines its leaf count, level,
    and reticulation number, so every potential double lives inside the
    same universe.  The report is deterministic given the spec.
    """
    wanted = []
    for c in checks:
        if c not in CHECK_NAMES:
            raise ValueError(f"unknown check {c!r}; expected one of {CHECK_NAMES}")
        if c not in wanted:
            wanted.append(c)
    wanted.sort(key=CHECK_NAMES.index)

    universe = spec if isinstance(spec, Universe) else enumerate_networks(spec, labels)
    members = universe.members
    if not members:
        return VerificationReport(
            spec=universe.spec, checks=tuple(wanted), total=0,
            members=(), counterexamples=(),
        )

    from .reconstruct import _indexed_card_codes

    classes = [canonical_code(m) for m in members]
    order = sorted(range(len(members)), key=lambda i: classes[i])
    full = sorted(members[0].label_set)
    for m in members:
        if sorted(m.label_set) != full:
            raise ValueError("universe members carry different leaf sets")

    columns = {}

    if "leaf" in wanted or "recon-number" in wanted:
        card = [_indexed_card_codes(m, "leaf") for m in members]
        buckets = {x: {} for x in full}
        for i, codes in enumerate(card):
            for x in full:
                buckets[x].setdefault(codes[x], set()).add(i)

        def matching_classes(i, subset):
            pools = sorted(
                (buckets[x][card[i][x]] for x in subset), key=len
            )
            survivors = pools[0]
            for pool in pools[1:]:
                survivors = survivors & pool
                if len(survivors) == 1:
                    break
            return {classes[j] for j in survivors}

        leaf_ok = [len(matching_classes(i, full)) == 1 for i in range(len(members))]
        columns["leaf"] = leaf_ok
        if "recon-number" in wanted:
            numbers = []
            for i in range(len(members)):
                found = None
                if leaf_ok[i]:
                    for size in range(1, len(full) + 1):
                        for subset in itertools.combinations(full, size):
                            if len(matching_classes(i, subset)) == 1:
                                found = size
                                break
                        if found is not None:
                            break
                numbers.append(found)
            columns["recon-number"] = numbers

    if "edge" in wanted:
        groups = {}
        for i, m in enumerate(members):
            codes = _indexed_card_codes(m, "edge")
            key = (m.num_edges, tuple(sorted(codes.values())))
            groups.setdefault(key, set()).add(classes[i])
        columns["edge"] = [
            len(groups[(m.num_edges,
                        tuple(sorted(_indexed_card_codes(m, "edge").values())))]) == 1
            for m in members
        ]

    if "phylo" in wanted:
        groups = {}
        keys = []
        for i, m in enumerate(members):
            key = tuple(sorted(_indexed_card_codes(m, "phylo").items()))
            keys.append(key)
            groups.setdefault(key, set()).add(classes[i])
        columns["phylo"] = [len(groups[k]) == 1 for k in keys]

    if "quarnet" in wanted:
        groups = {}
        keys = []
        for i, m in enumerate(members):
            key = tuple(
                (subset, canonical_code(quarnet_on(m, subset)))
                for subset in itertools.combinations(full, 4)
            )
            keys.append(key)
            groups.setdefault(key, set()).add(classes[i])
        columns["quarnet"] = [len(groups[k]) == 1 for k in keys]

    field_of = {
        "leaf": "leaf_reconstructible",
        "recon-number": "reconstruction_number",
        "edge": "edge_reconstructible",
        "phylo": "phylo_deck_reconstructible",
        "quarnet": "quarnet_reconstructible",
    }
    rows = []
    counterexamples = []
    for i in order:
        kwargs = {"code": code_hex(members[i])}
        for c in wanted:
            value = columns[c][i]
            kwargs[field_of[c]] = value
            failed = value is None if c == "recon-number" else not value
            if failed:
                counterexamples.append((kwargs["code"], c))
        rows.append(MemberResult(**kwargs))
    return VerificationReport(
        spec=universe.spec,
        checks=tuple(wanted),
        total=len(members),
        members=tuple(rows),
        counterexamples=tuple(counterexamples),
    )
