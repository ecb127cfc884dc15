"""Equivalence of pseudo-networks via canonical codes.

Two networks are equivalent when a graph isomorphism between them maps each
labeled vertex to the vertex carrying the same label.  The decision is made
by comparing canonical byte codes, computed by color refinement seeded with
the leaf labels plus backtracking individualization (see ``_canon_py``).

A compiled kernel is used when available; the pure-Python kernel is the
fallback and the reference.  Both produce identical codes.
"""

from __future__ import annotations

from .errors import IndexMismatch
from .netcore import _vkey

try:  # pragma: no cover - exercised only when the extension is built
    from ._canonkernel import canonical_form as _kernel

    KERNEL = "compiled"
except ImportError:  # pragma: no cover
    from ._canon_py import canonical_form as _kernel

    KERNEL = "python"

_FORMAT_VERSION = b"1"


def _kernel_input(net, labeled):
    verts = sorted(net._adj, key=_vkey)
    idx = {v: i for i, v in enumerate(verts)}
    labels_sorted = sorted(net._by_label)
    if labeled:
        color_of = {net._by_label[lab]: i
                    for i, lab in enumerate(labels_sorted)}
        base = len(labels_sorted)
        init = [color_of.get(v, base) for v in verts]
    else:
        init = [0 if v in net._labels else 1 for v in verts]
    edge_mults = []
    for (u, w), mult in net.edge_classes():
        a, b = idx[u], idx[w]
        if a > b:
            a, b = b, a
        edge_mults.append((a, b, mult))
    return len(verts), edge_mults, init, labels_sorted


def _serialize(n, form, labels_sorted, labeled):
    head = [
        _FORMAT_VERSION,
        b"L" if labeled else b"U",
        str(n).encode(),
    ]
    if labeled:
        head.append(
            b";".join(f"{len(lab)}:{lab}".encode() for lab in labels_sorted)
        )
    else:
        head.append(str(len(labels_sorted)).encode())
    body = b",".join(f"{i}-{j}x{m}".encode() for i, j, m in form)
    return b"|".join(head) + b"|" + body


def canonical_code(net):
    """Byte code invariant under internal renaming: equal codes <=>
    equivalent networks."""
    return _code(net, labeled=True)


def _code(net, labeled):
    key = ("code", labeled)
    cached = net._cache.get(key)
    if cached is not None:
        return cached
    n, edge_mults, init, labels_sorted = _kernel_input(net, labeled)
    form = _kernel(n, edge_mults, init)
    code = _serialize(n, form, labels_sorted, labeled)
    net._cache[key] = code
    return code


def unlabeled_code(net):
    """Code ignoring label names (leaf/non-leaf status still matters).
    Internal helper for generator comparison and unlabeled-deck fixtures."""
    return _code(net, labeled=False)


def code_hex(net):
    """Lowercase hex rendering of the canonical code for JSON reports."""
    return canonical_code(net).hex()


def is_equivalent(a, b):
    return canonical_code(a) == canonical_code(b)


def deck_equivalent(d1, d2, mode="indexed"):
    """Compare two decks.

    ``indexed``: same index set and per-index equivalent cards.
    ``multiset``: equal sorted multisets of card codes (indices ignored).
    """
    if mode not in ("indexed", "multiset"):
        raise ValueError(f"unknown mode {mode!r}")
    c1, c2 = d1.cards, d2.cards
    if mode == "indexed":
        if set(c1) != set(c2):
            raise IndexMismatch(
                f"decks indexed by {sorted(map(str, c1))} vs "
                f"{sorted(map(str, c2))}"
            )
        return all(is_equivalent(c1[i], c2[i]) for i in c1)
    if len(c1) != len(c2):
        raise IndexMismatch(f"deck sizes {len(c1)} vs {len(c2)}")
    m1 = sorted(canonical_code(card) for card in c1.values())
    m2 = sorted(canonical_code(card) for card in c2.values())
    return m1 == m2


def dedup(nets):
    """One representative per equivalence class (first occurrence wins),
    output ordered by canonical code for schedule independence."""
    seen = {}
    for net in nets:
        code = canonical_code(net)
        if code not in seen:
            seen[code] = net
    return [seen[code] for code in sorted(seen)]
