"""Core graph model: pseudo-networks and their structural analyses.

A pseudo-network is a connected multigraph with no degree-2 vertices whose
degree-1 vertices each carry a distinct leaf label.  Loops are allowed and
add 2 to the degree of their vertex.  Networks are immutable; every operator
returns a fresh instance.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass

from .errors import (
    CollapsedToNothing,
    Degree2Vertex,
    Disconnected,
    DuplicateLabel,
    LabeledInternal,
    LevelTooLow,
    NoSuchEdge,
    NoSuchLeaf,
    NotATree,
    NotPhylogenetic,
    NotSimple,
    TooFewLeaves,
    UnlabeledLeaf,
)


def _vkey(v):
    """Sort key tolerant of mixed int/str vertex ids."""
    if isinstance(v, int):
        return (0, v, "")
    return (1, 0, str(v))


def _ekey(u, v):
    a, b = sorted((u, v), key=_vkey)
    return (a, b)


class PseudoNetwork:
    """Connected multigraph whose degree-1 vertices carry leaf labels.

    ``edges`` is an iterable of vertex-id pairs; repeated pairs encode
    multi-edges and ``(v, v)`` encodes a loop.  ``labels`` maps leaf vertex
    ids to label strings.  ``isolated`` lists vertices with no incident
    edges (needed for single-vertex networks and edge-deletion cards).

    Construction performs only cheap bookkeeping; full invariant checking
    lives in :func:`validate`.
    """

    __slots__ = ("_adj", "_labels", "_by_label", "_num_edges", "_cache")

    def __init__(self, edges, labels=None, isolated=()):
        adj = {}
        for v in isolated:
            adj.setdefault(v, {})
        num_edges = 0
        for u, v in edges:
            adj.setdefault(u, {})
            adj.setdefault(v, {})
            adj[u][v] = adj[u].get(v, 0) + 1
            if u != v:
                adj[v][u] = adj[v].get(u, 0) + 1
            num_edges += 1
        if not adj:
            raise ValueError("a pseudo-network needs at least one vertex")
        by_label = {}
        for v, lab in dict(labels or {}).items():
            if v not in adj:
                raise ValueError(f"labeled vertex {v!r} does not appear in the graph")
            if lab in by_label:
                raise DuplicateLabel(f"label {lab!r} is used by more than one vertex")
            by_label[lab] = v
        self._adj = adj
        self._labels = {v: lab for lab, v in by_label.items()}
        self._by_label = by_label
        self._num_edges = num_edges
        self._cache = {}

    @classmethod
    def _from_adj(cls, adj, labels):
        edges = []
        iso = []
        for u, nbrs in adj.items():
            if not nbrs:
                iso.append(u)
                continue
            for w, mult in nbrs.items():
                if _vkey(w) < _vkey(u):
                    continue
                edges.extend(((u, w),) * mult)
        labs = {v: lab for v, lab in labels.items() if v in adj}
        return cls(edges, labs, isolated=iso)

    # -- basic accessors ---------------------------------------------------

    @property
    def vertices(self):
        return tuple(sorted(self._adj, key=_vkey))

    @property
    def num_vertices(self):
        return len(self._adj)

    @property
    def num_edges(self):
        return self._num_edges

    @property
    def labels(self):
        """Mapping of leaf vertex id -> label."""
        return dict(self._labels)

    @property
    def label_set(self):
        return frozenset(self._by_label)

    def label_of(self, v):
        return self._labels.get(v)

    def leaf_vertex(self, label):
        try:
            return self._by_label[label]
        except KeyError:
            raise NoSuchLeaf(f"no leaf labeled {label!r}") from None

    def has_vertex(self, v):
        return v in self._adj

    def degree(self, v):
        nbrs = self._adj[v]
        return sum(nbrs.values()) + nbrs.get(v, 0)

    def neighbors(self, v):
        return tuple(sorted(self._adj[v], key=_vkey))

    def multiplicity(self, u, v):
        return self._adj.get(u, {}).get(v, 0)

    def has_edge(self, u, v):
        return self.multiplicity(u, v) > 0

    def edge_classes(self):
        """Distinct edges as ((u, v), multiplicity), u <= v, sorted."""
        out = []
        for u, nbrs in self._adj.items():
            for w, mult in nbrs.items():
                if _vkey(w) < _vkey(u):
                    continue
                out.append(((u, w), mult))
        out.sort(key=lambda item: (_vkey(item[0][0]), _vkey(item[0][1])))
        return out

    def edge_multiset(self):
        """Every edge copy as a (u, v) pair, u <= v, sorted, repeats adjacent."""
        out = []
        for (u, w), mult in self.edge_classes():
            out.extend(((u, w),) * mult)
        return out

    def __repr__(self):
        labs = ",".join(sorted(self._by_label))
        return (
            f"PseudoNetwork(|V|={self.num_vertices}, |E|={self.num_edges}, "
            f"X={{{labs}}})"
        )


# -- small mutable-adjacency helpers (package internal) ----------------------


def _adj_copy(net):
    return {v: dict(nbrs) for v, nbrs in net._adj.items()}


def _add_edge(adj, u, v):
    adj.setdefault(u, {})
    adj.setdefault(v, {})
    adj[u][v] = adj[u].get(v, 0) + 1
    if u != v:
        adj[v][u] = adj[v].get(u, 0) + 1


def _remove_one_edge(adj, u, v):
    adj[u][v] -= 1
    if adj[u][v] == 0:
        del adj[u][v]
    if u != v:
        adj[v][u] -= 1
        if adj[v][u] == 0:
            del adj[v][u]


def _remove_vertex(adj, v):
    for w in list(adj[v]):
        if w != v:
            del adj[w][v]
    del adj[v]


def _adj_degree(adj, v):
    nbrs = adj[v]
    return sum(nbrs.values()) + nbrs.get(v, 0)


def _suppress_adj(adj, labels):
    """Remove unlabeled degree-2 vertices in place until none remain.

    The result is independent of processing order: replacing a degree-2
    vertex never changes any other vertex's degree.
    """
    queue = deque(
        v for v in adj if v not in labels and _adj_degree(adj, v) == 2
    )
    while queue:
        v = queue.popleft()
        if v not in adj or _adj_degree(adj, v) != 2:
            continue
        nbrs = adj[v]
        if nbrs.get(v, 0):
            # lone loop: the vertex together with its loop evaporates
            del adj[v]
            continue
        ends = []
        for w, mult in nbrs.items():
            ends.extend((w,) * mult)
        u, w = ends
        _remove_vertex(adj, v)
        _add_edge(adj, u, w)
    if not adj:
        raise CollapsedToNothing("suppression emptied the graph")
    if len(adj) == 1:
        only = next(iter(adj))
        if only not in labels:
            raise CollapsedToNothing(
                "suppression left a single unlabeled vertex"
            )


def _fresh_names(taken, base, count):
    names = []
    i = 0
    while len(names) < count:
        name = f"{base}{i}"
        if name not in taken:
            names.append(name)
            taken.add(name)
        i += 1
    return names


# -- validation --------------------------------------------------------------


def validate(net, min_leaves=1):
    """Check all pseudo-network invariants; return the network unchanged."""
    adj = net._adj
    labels = net._labels
    for v in adj:
        deg = net.degree(v)
        if deg == 2:
            raise Degree2Vertex(f"vertex {v!r} has degree 2")
        if deg == 1 and v not in labels:
            raise UnlabeledLeaf(f"degree-1 vertex {v!r} carries no label")
        if deg >= 2 and v in labels:
            raise LabeledInternal(
                f"vertex {v!r} is labeled {labels[v]!r} but has degree {deg}"
            )
        if deg == 0 and v not in labels:
            if len(adj) > 1:
                raise Disconnected(f"vertex {v!r} is isolated")
            raise UnlabeledLeaf("a single unlabeled vertex is not a network")
    if deg0 := [v for v in adj if net.degree(v) == 0 and v in labels]:
        if len(adj) > 1:
            raise Disconnected(f"labeled vertex {deg0[0]!r} is isolated")
    seen = _component_of(adj, next(iter(adj)))
    if len(seen) != len(adj):
        raise Disconnected("the graph has more than one connected component")
    if len(net._by_label) < min_leaves:
        raise TooFewLeaves(
            f"{len(net._by_label)} leaves present, {min_leaves} required"
        )
    return net


def _component_of(adj, start):
    seen = {start}
    queue = deque((start,))
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


def _num_components(adj):
    seen = set()
    count = 0
    for v in adj:
        if v in seen:
            continue
        count += 1
        seen |= _component_of(adj, v)
    return count


def validate_phylo(net, min_leaves=2):
    """Check the phylogenetic-network refinement of the invariants.

    Beyond :func:`validate`: no multi-edges, no loops, and contracting every
    blob to a single point must already be a tree without degree-2 vertices.
    """
    validate(net, min_leaves=min_leaves)
    for (u, v), mult in net.edge_classes():
        if u == v:
            raise NotPhylogenetic(f"loop at vertex {u!r}")
        if mult > 1:
            raise NotPhylogenetic(f"multi-edge between {u!r} and {v!r}")
    adj_q, labels_q, _ = _blob_quotient(net)
    for v in adj_q:
        if _adj_degree(adj_q, v) == 2:
            raise NotPhylogenetic(
                "blob contraction leaves a degree-2 vertex; a blob has too "
                "few incident cut-edges"
            )
    return net


def is_phylo_network(net, min_leaves=2):
    try:
        validate_phylo(net, min_leaves=min_leaves)
    except Exception:
        return False
    return True


# -- suppression ---------------------------------------------------------------


def suppress_all_degree2(net):
    """Suppress every unlabeled degree-2 vertex (repeatedly; order-free).

    A degree-2 vertex with two distinct neighbors is replaced by an edge
    between them; one whose two edge-ends coincide yields a loop.  Raises
    CollapsedToNothing when nothing usable remains.
    """
    adj = _adj_copy(net)
    _suppress_adj(adj, net._labels)
    return PseudoNetwork._from_adj(adj, net._labels)


# -- biconnectivity: blobs, cut-edges, splits ---------------------------------


@dataclass(frozen=True)
class Blob:
    """A maximal 2-connected piece with at least two edges."""

    vertices: frozenset
    edges: tuple  # (u, v) pairs, u <= v, sorted, repeats for multi-edges

    @property
    def num_edges(self):
        return len(self.edges)

    @property
    def reticulation(self):
        return len(self.edges) - len(self.vertices) + 1


@dataclass(frozen=True)
class CutEdge:
    edge: tuple  # (u, v) with u <= v
    trivial: bool  # True when an endpoint is a leaf


@dataclass(frozen=True)
class Split:
    """An unordered bipartition of the label set."""

    side_a: frozenset
    side_b: frozenset

    @classmethod
    def of(cls, one, two):
        one = frozenset(one)
        two = frozenset(two)
        if not one or not two:
            raise ValueError("both sides of a split must be nonempty")
        if one & two:
            raise ValueError("split sides overlap")
        first, second = sorted(
            (one, two), key=lambda s: (len(s), tuple(sorted(s)))
        )
        return cls(first, second)

    @property
    def is_trivial(self):
        return min(len(self.side_a), len(self.side_b)) == 1

    @property
    def label_set(self):
        return self.side_a | self.side_b

    def restrict(self, labels):
        """Restriction to a sub-label-set, or None if one side empties."""
        a = self.side_a & labels
        b = self.side_b & labels
        if not a or not b:
            return None
        return Split.of(a, b)

    def __repr__(self):
        a = ",".join(sorted(self.side_a))
        b = ",".join(sorted(self.side_b))
        return f"Split({a}|{b})"


def _edge_incidence(adj):
    """Number every non-loop edge copy; return (copies, incidence lists)."""
    copies = []
    inc = {v: [] for v in adj}
    for u in adj:
        for w, mult in adj[u].items():
            if w == u or _vkey(w) < _vkey(u):
                continue
            for _ in range(mult):
                eid = len(copies)
                copies.append((u, w))
                inc[u].append((w, eid))
                inc[w].append((u, eid))
    return copies, inc


def _bcc_components(net):
    """Biconnected edge components (Hopcroft–Tarjan, iterative, multigraph).

    Returns (copies, components) where components are lists of copy indices.
    Loops are excluded: a loop belongs to no component.
    """
    adj = net._adj
    copies, inc = _edge_incidence(adj)
    disc = {}
    low = {}
    comps = []
    estack = []
    timer = itertools.count()
    for root in adj:
        if root in disc:
            continue
        disc[root] = low[root] = next(timer)
        frames = [(root, -1, iter(inc[root]))]
        while frames:
            v, parent_eid, edge_iter = frames[-1]
            descended = False
            for w, eid in edge_iter:
                if eid == parent_eid:
                    continue
                if w not in disc:
                    disc[w] = low[w] = next(timer)
                    estack.append(eid)
                    frames.append((w, eid, iter(inc[w])))
                    descended = True
                    break
                if disc[w] < disc[v]:
                    estack.append(eid)
                    if disc[w] < low[v]:
                        low[v] = disc[w]
            if descended:
                continue
            frames.pop()
            if frames:
                p = frames[-1][0]
                if low[v] < low[p]:
                    low[p] = low[v]
                if low[v] >= disc[p]:
                    comp = []
                    while True:
                        eid = estack.pop()
                        comp.append(eid)
                        if eid == parent_eid:
                            break
                    comps.append(comp)
    return copies, comps


def blobs(net):
    """All blobs: biconnected classes with >= 2 edges, deterministic order."""
    copies, comps = _bcc_components(net)
    out = []
    for comp in comps:
        if len(comp) < 2:
            continue
        pairs = sorted(
            (_ekey(*copies[eid]) for eid in comp),
            key=lambda e: (_vkey(e[0]), _vkey(e[1])),
        )
        verts = frozenset(v for e in pairs for v in e)
        out.append(Blob(vertices=verts, edges=tuple(pairs)))
    out.sort(key=lambda b: tuple(sorted(map(_vkey, b.vertices))))
    return out


def cut_edges(net):
    """All cut-edges, each tagged trivial (leaf endpoint) or nontrivial."""
    copies, comps = _bcc_components(net)
    labels = net._labels
    out = []
    for comp in comps:
        if len(comp) != 1:
            continue
        u, v = copies[comp[0]]
        trivial = u in labels or v in labels
        out.append(CutEdge(edge=_ekey(u, v), trivial=trivial))
    out.sort(key=lambda ce: (_vkey(ce.edge[0]), _vkey(ce.edge[1])))
    return out


def is_decomposable(net):
    """True when some cut-edge has no leaf endpoint."""
    return any(not ce.trivial for ce in cut_edges(net))


def is_simple(net):
    """True when the network has precisely one blob."""
    return len(blobs(net)) == 1


def splits(net):
    """The set of label bipartitions induced by the cut-edges."""
    out = set()
    for ce in cut_edges(net):
        u, v = ce.edge
        adj = _adj_copy(net)
        _remove_one_edge(adj, u, v)
        side_u = _component_of(adj, u)
        side_a = {lab for lab, lv in net._by_label.items() if lv in side_u}
        side_b = set(net._by_label) - side_a
        if side_a and side_b:
            out.add(Split.of(side_a, side_b))
    return out


def _blob_quotient(net):
    """Contract every blob to a point; no suppression.

    Returns (quotient adjacency, quotient labels, vertex -> class rep map).
    Class reps are fresh string names for internal classes; leaf vertices
    keep their own ids.
    """
    copies, comps = _bcc_components(net)
    parent = {v: v for v in net._adj}

    def find(v):
        root = v
        while parent[root] != root:
            root = parent[root]
        while parent[v] != root:
            parent[v], v = root, parent[v]
        return root

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    bridges = []
    for comp in comps:
        if len(comp) == 1:
            bridges.append(copies[comp[0]])
            continue
        it = iter(comp)
        first = copies[next(it)]
        for eid in it:
            u, v = copies[eid]
            union(first[0], u)
            union(first[0], v)
        union(first[0], first[1])
    classes = {}
    for v in net._adj:
        classes.setdefault(find(v), []).append(v)
    leaf_ids = set(net._labels)
    prefix = "t"
    while any(isinstance(v, str) and v.startswith(prefix) for v in leaf_ids):
        prefix += "t"
    internal = sorted(
        (rep for rep, members in classes.items() if not (len(members) == 1 and members[0] in leaf_ids)),
        key=lambda rep: min(map(_vkey, classes[rep])),
    )
    rep_name = {}
    for i, rep in enumerate(internal):
        rep_name[rep] = f"{prefix}{i}"
    for rep, members in classes.items():
        if rep not in rep_name:
            rep_name[rep] = members[0]
    class_of = {v: rep_name[find(v)] for v in net._adj}
    adj_q = {rep_name[rep]: {} for rep in classes}
    for u, v in bridges:
        _add_edge(adj_q, class_of[u], class_of[v])
    labels_q = {class_of[v]: lab for v, lab in net._labels.items()}
    return adj_q, labels_q, class_of


def display_tree(net):
    """Contract every blob, then suppress degree-2 vertices: the shown tree."""
    adj_q, labels_q, _ = _blob_quotient(net)
    _suppress_adj(adj_q, labels_q)
    return PseudoNetwork._from_adj(adj_q, labels_q)


# -- numeric invariants --------------------------------------------------------


def reticulation_number(net):
    """Cycle rank |E| - |V| + (number of components)."""
    return net.num_edges - net.num_vertices + _num_components(net._adj)


def level(net):
    """Largest blob reticulation number; 0 for trees."""
    bs = blobs(net)
    if not bs:
        return 0
    return max(b.reticulation for b in bs)


def is_binary(net):
    """True when every unlabeled vertex has degree exactly 3."""
    return all(
        net.degree(v) == 3 for v in net._adj if v not in net._labels
    )


def is_tree(net):
    return reticulation_number(net) == 0


# -- leaf chains and tree medians ----------------------------------------------


def find_3_chains(net):
    """Label triples (x, y, z) pendant on a path u1—u2—u3; x <= z."""
    by_label = net._by_label
    pend = {lab: net.neighbors(v)[0] for lab, v in by_label.items()
            if net.degree(v) == 1}
    out = []
    for y, u2 in pend.items():
        for x, z in itertools.combinations(sorted(pend), 2):
            if y in (x, z):
                continue
            u1, u3 = pend[x], pend[z]
            if len({u1, u2, u3}) != 3:
                continue
            if net.has_edge(u1, u2) and net.has_edge(u2, u3):
                out.append((x, y, z))
    return sorted(out)


def find_2_chains(net):
    """Label pairs (x, y), x < y, at path distance exactly 3."""
    by_label = net._by_label
    pend = {lab: net.neighbors(v)[0] for lab, v in by_label.items()
            if net.degree(v) == 1}
    out = []
    for x, y in itertools.combinations(sorted(pend), 2):
        u, w = pend[x], pend[y]
        if u != w and net.has_edge(u, w):
            out.append((x, y))
    return out


def _bfs_path(net, source, target):
    parent = {source: None}
    queue = deque((source,))
    while queue:
        v = queue.popleft()
        if v == target:
            path = []
            while v is not None:
                path.append(v)
                v = parent[v]
            return path[::-1]
        for w in net.neighbors(v):
            if w not in parent:
                parent[w] = v
                queue.append(w)
    raise Disconnected(f"no path between {source!r} and {target!r}")


def tree_median(tree, x, y, z):
    """The single vertex common to the three pairwise leaf paths of a tree."""
    if reticulation_number(tree) != 0:
        raise NotATree("median requires a tree")
    if len({x, y, z}) != 3:
        raise ValueError("median needs three distinct leaf labels")
    vx, vy, vz = (tree.leaf_vertex(lab) for lab in (x, y, z))
    pxy = set(_bfs_path(tree, vx, vy))
    pxz = set(_bfs_path(tree, vx, vz))
    pyz = set(_bfs_path(tree, vy, vz))
    meet = pxy & pxz & pyz
    if len(meet) != 1:
        raise NotATree("paths do not meet in a single vertex")
    return meet.pop()


# -- leaf attachment -------------------------------------------------------------


def attach_leaf(net, x, edge):
    """Subdivide ``edge`` and hang a new leaf labeled ``x`` on the new vertex."""
    if x in net._by_label:
        raise DuplicateLabel(f"label {x!r} already present")
    u, v = edge
    if net.multiplicity(u, v) == 0:
        raise NoSuchEdge(f"no edge between {u!r} and {v!r}")
    taken = set(net._adj)
    leaf_v = x if x not in taken else _fresh_names(taken | {x}, "n", 1)[0]
    taken.add(leaf_v)
    (mid,) = _fresh_names(taken, "n", 1)
    adj = _adj_copy(net)
    _remove_one_edge(adj, u, v)
    _add_edge(adj, u, mid)
    _add_edge(adj, mid, v)
    _add_edge(adj, mid, leaf_v)
    labels = dict(net._labels)
    labels[leaf_v] = x
    return PseudoNetwork._from_adj(adj, labels)


def attach_leaf_at_vertex(net, x, v):
    """Hang a new leaf labeled ``x`` directly on existing vertex ``v``.

    Valid when ``v`` has degree >= 3, or is an isolated labeled vertex —
    anything else fails validation of the result.
    """
    if x in net._by_label:
        raise DuplicateLabel(f"label {x!r} already present")
    if not net.has_vertex(v):
        raise NoSuchEdge(f"no vertex {v!r}")
    taken = set(net._adj)
    leaf_v = x if x not in taken else _fresh_names(taken | {x}, "n", 1)[0]
    adj = _adj_copy(net)
    _add_edge(adj, v, leaf_v)
    labels = dict(net._labels)
    labels[leaf_v] = x
    out = PseudoNetwork._from_adj(adj, labels)
    deg = out.degree(v)
    if v in net._labels:
        if deg != 1:
            raise LabeledInternal(
                f"attaching at {v!r} would bury its label {net._labels[v]!r}"
            )
    elif deg < 4:
        raise Degree2Vertex(
            f"attaching at {v!r} (degree {deg - 1}) would leave an invalid vertex"
        )
    return out


# -- generators -------------------------------------------------------------------


@dataclass(frozen=True)
class Generator:
    """A 3-regular, 2-connected, unlabeled multigraph of a given level."""

    net: PseudoNetwork
    level: int


def underlying_generator(net):
    """Strip all leaves off a simple binary network of level >= 2.

    Returns ``(generator, placements)`` where ``placements`` maps each leaf
    label to ``((ga, gb, copy_index), position)``: the canonical generator
    edge it subdivides and its 1-based position along that edge, counted
    from endpoint ``ga``.  Among all canonical relabelings, the one giving
    the lexicographically least overall placement description is chosen.
    """
    if not is_simple(net):
        raise NotSimple("generator extraction requires a simple network")
    if level(net) < 2:
        raise LevelTooLow("no generator below level 2")
    if not is_binary(net):
        raise ValueError("generator extraction requires a binary network")

    adj = _adj_copy(net)
    pendant_of = {}
    for v, lab in net._labels.items():
        (nbr,) = [w for w in adj[v] if w != v]
        pendant_of.setdefault(nbr, []).append(lab)
        _remove_vertex(adj, v)
    core = [v for v in adj if _adj_degree(adj, v) == 3]
    core_set = set(core)

    copies, inc = _edge_incidence(adj)
    loops = []
    for v in adj:
        loops.extend((v,) * adj[v].get(v, 0))

    sides = []  # (end_a, end_b, [subdivision vertices from end_a])
    used = set()
    for g in sorted(core_set, key=_vkey):
        for w, eid in sorted(inc[g], key=lambda p: (_vkey(p[0]), p[1])):
            if eid in used:
                continue
            used.add(eid)
            chain = []
            prev, cur = g, w
            while cur not in core_set:
                chain.append(cur)
                nxt = None
                for w2, eid2 in inc[cur]:
                    if eid2 not in used:
                        nxt = (w2, eid2)
                        break
                if nxt is None:
                    raise Disconnected("dangling chain while tracing generator")
                used.add(nxt[1])
                prev, cur = cur, nxt[0]
            sides.append((g, cur, chain))
    for v in loops:
        sides.append((v, v, []))

    def leaf_seq(chain):
        seq = []
        for s in chain:
            (lab,) = pendant_of[s]
            seq.append(lab)
        return tuple(seq)

    m = len(core)
    best = None
    for perm in itertools.permutations(range(m)):
        names = dict(zip(sorted(core_set, key=_vkey), perm))
        gen_edges = sorted(
            tuple(sorted((names[a], names[b]))) for a, b, _ in sides
        )
        oriented = []
        for a, b, chain in sides:
            na, nb = names[a], names[b]
            seq = leaf_seq(chain)
            if na > nb or (na == nb and seq[::-1] < seq):
                na, nb, seq = nb, na, seq[::-1]
            oriented.append(((na, nb), seq))
        by_pair = {}
        for pair, seq in sorted(oriented):
            by_pair.setdefault(pair, []).append(seq)
        placement_code = tuple(
            (pair, i, seq)
            for pair, seqs in sorted(by_pair.items())
            for i, seq in enumerate(seqs)
        )
        key = (gen_edges, placement_code)
        if best is None or key < best:
            best = key
    gen_edges, placement_code = best
    gen_net = PseudoNetwork(
        [(f"g{a}", f"g{b}") for a, b in gen_edges], {}
    )
    placements = {}
    for pair, i, seq in placement_code:
        for pos, lab in enumerate(seq, start=1):
            placements[lab] = ((f"g{pair[0]}", f"g{pair[1]}", i), pos)
    k = gen_net.num_edges - gen_net.num_vertices + 1
    return Generator(net=gen_net, level=k), placements


def realize_placements(generator, placements):
    """Build the simple network a generator + placement map describes."""
    gen = generator.net
    by_edge = {}
    for lab, ((ga, gb, idx), pos) in placements.items():
        by_edge.setdefault((ga, gb, idx), []).append((pos, lab))
    seqs = {}
    for key, items in by_edge.items():
        items.sort()
        if [p for p, _ in items] != list(range(1, len(items) + 1)):
            raise ValueError(f"positions along {key} are not 1..n")
        seqs[key] = [lab for _, lab in items]

    adj = {}
    labels = {}
    taken = set(gen._adj) | {lab for lab in placements}
    counter = itertools.count()

    def fresh():
        while True:
            name = f"s{next(counter)}"
            if name not in taken:
                taken.add(name)
                return name

    for v in gen._adj:
        adj.setdefault(v, {})
    for (u, v), mult in gen.edge_classes():
        for idx in range(mult):
            seq = seqs.pop((u, v, idx), [])
            prev = u
            for lab in seq:
                mid = fresh()
                leaf_v = lab if lab not in adj else fresh()
                _add_edge(adj, prev, mid)
                _add_edge(adj, mid, leaf_v)
                labels[leaf_v] = lab
                prev = mid
            _add_edge(adj, prev, v)
    if seqs:
        raise NoSuchEdge(f"placements refer to missing generator edges: {sorted(seqs)}")
    return PseudoNetwork._from_adj(adj, labels)
