"""Small shared helpers and frozen expectations for the test suite."""

from __future__ import annotations

from phylodeck.netcore import PseudoNetwork


def build(edges, leaf_labels=None, isolated=()):
    """Terse builder.  ``leaf_labels`` maps vertex -> label; by default every
    degree-<=1 vertex is labeled by its own name."""
    if leaf_labels is None:
        deg = {}
        for u, v in edges:
            deg[u] = deg.get(u, 0) + (2 if u == v else 1)
            if u != v:
                deg[v] = deg.get(v, 0) + 1
        for v in isolated:
            deg.setdefault(v, 0)
        leaf_labels = {v: v for v, d in deg.items() if d <= 1}
    return PseudoNetwork(edges, leaf_labels, isolated=isolated)


# Frozen structural profile of every bundled fixture:
# name -> (num_vertices, num_edges, reticulation_number, level,
#          is_binary, is_simple, num_blobs, num_nontrivial_cut_edges)
FIXTURE_PROFILE = {
    "caterpillar5": (8, 7, 0, 0, True, False, 0, 2),
    "demo_level2": (14, 16, 3, 2, True, False, 2, 1),
    "ladder_abcd": (10, 11, 2, 2, True, True, 1, 0),
    "ladder_abdc": (10, 11, 2, 2, True, True, 1, 0),
    "threetriangles_a": (13, 18, 6, 6, False, True, 1, 0),
    "threetriangles_b": (13, 18, 6, 6, False, True, 1, 0),
    "triangle_chain": (14, 16, 3, 1, True, False, 3, 2),
    "square_leaves": (8, 8, 1, 1, True, True, 1, 0),
    "square_leaves_swapped": (8, 8, 1, 1, True, True, 1, 0),
    "twin_triangles": (10, 11, 2, 1, True, False, 2, 1),
    "star3": (4, 3, 0, 0, True, False, 0, 0),
    "triangle3": (6, 6, 1, 1, True, True, 1, 0),
    "quartet_ab_cd": (6, 5, 0, 0, True, False, 0, 1),
    "quartet_ad_bc": (6, 5, 0, 0, True, False, 0, 1),
    "theta_three_on_one_edge": (10, 11, 2, 2, True, True, 1, 0),
    "hexchord_bcd": (10, 11, 2, 2, True, True, 1, 0),
    "hexchord_bdc": (10, 11, 2, 2, True, True, 1, 0),
    "hexapex_abc": (10, 12, 3, 3, True, True, 1, 0),
    "hexapex_acb": (10, 12, 3, 3, True, True, 1, 0),
    "generator_theta": (2, 3, 2, 2, True, True, 1, 0),
    "generator_l3_ladder": (4, 6, 3, 3, True, True, 1, 0),
    "generator_l3_k4": (4, 6, 3, 3, True, True, 1, 0),
    "generator_l4_chain": (6, 9, 4, 4, True, True, 1, 0),
    "generator_l4_diamond": (6, 9, 4, 4, True, True, 1, 0),
    "generator_l4_necklace": (6, 9, 4, 4, True, True, 1, 0),
    "generator_l4_prism": (6, 9, 4, 4, True, True, 1, 0),
    "generator_l4_k33": (6, 9, 4, 4, True, True, 1, 0),
}
