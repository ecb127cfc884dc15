"""Pure-Python canonical-form kernel.

Works on an anonymized multigraph: ``n`` vertices named ``0..n-1``, edges
given as ``(i, j, mult)`` triples with ``i <= j`` (loops as ``i == j``), and
an initial integer coloring.  The canonical form is the lexicographically
least upper-triangle edge encoding over every leaf of an
individualization-refinement search tree, so two inputs get the same form
exactly when some color-preserving isomorphism links them.

The compiled kernel (when built) must produce byte-for-byte identical
results; this module is the reference implementation and the import-time
fallback.
"""

from __future__ import annotations


def _normalize(colors):
    order = sorted(set(colors))
    rank = {c: i for i, c in enumerate(order)}
    return [rank[c] for c in colors]


def _refine(n, nbrs, loops, colors):
    """Stable color refinement; signature = (old color, loop multiplicity,
    sorted neighbor (color, multiplicity) multiset).  Order-preserving:
    vertices in distinct colors never re-merge and keep relative order."""
    colors = _normalize(colors)
    while True:
        sigs = []
        for v in range(n):
            neigh = sorted((colors[w], m) for w, m in nbrs[v])
            sigs.append((colors[v], loops[v], tuple(neigh)))
        order = sorted(set(sigs))
        rank = {s: i for i, s in enumerate(order)}
        new = [rank[s] for s in sigs]
        if new == colors:
            return colors
        colors = new


def _encode(n, nbrs, loops, colors):
    """Read a discrete coloring off as a sorted upper-triangle edge tuple."""
    pos = colors  # discrete: color IS the canonical index
    rows = []
    for v in range(n):
        if loops[v]:
            rows.append((pos[v], pos[v], loops[v]))
        for w, m in nbrs[v]:
            a, b = pos[v], pos[w]
            if a <= b:
                rows.append((a, b, m))
    rows.sort()
    return tuple(rows)


def canonical_form(n, edge_mults, init_colors):
    """Lex-least discrete encoding over the individualization-refinement
    tree.  Returns a tuple of (i, j, mult) triples in canonical positions."""
    if n == 0:
        return ()
    nbrs = [[] for _ in range(n)]
    loops = [0] * n
    for i, j, m in edge_mults:
        if i == j:
            loops[i] += m
        else:
            nbrs[i].append((j, m))
            nbrs[j].append((i, m))

    best = [None]

    def search(colors):
        colors = _refine(n, nbrs, loops, colors)
        cells = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        target = None
        for c in sorted(cells):
            if len(cells[c]) > 1:
                if target is None or len(cells[c]) < len(cells[target]):
                    target = c
        if target is None:
            enc = _encode(n, nbrs, loops, colors)
            if best[0] is None or enc < best[0]:
                best[0] = enc
            return
        for v in cells[target]:
            branched = [2 * c for c in colors]
            branched[v] -= 1
            search(branched)

    search(list(init_colors))
    return best[0]
