"""Decks, reconstruction and enumeration for unrooted phylogenetic networks."""

from .decks import (
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
from .enumerate import (
    MemberResult,
    Universe,
    UniverseSpec,
    VerificationReport,
    enumerate_generators,
    enumerate_networks,
    enumerate_simple,
    enumerate_trees,
    verify_class,
)
from .equiv import (
    canonical_code,
    code_hex,
    deck_equivalent,
    dedup,
    is_equivalent,
    unlabeled_code,
)
from .netcore import (
    Blob,
    CutEdge,
    Generator,
    PseudoNetwork,
    Split,
    attach_leaf,
    attach_leaf_at_vertex,
    blobs,
    cut_edges,
    display_tree,
    find_2_chains,
    find_3_chains,
    is_binary,
    is_decomposable,
    is_phylo_network,
    is_simple,
    is_tree,
    level,
    realize_placements,
    reticulation_number,
    splits,
    suppress_all_degree2,
    tree_median,
    underlying_generator,
    validate,
    validate_phylo,
)
from .reconstruct import (
    ReconstructionReport,
    attachments,
    is_edge_reconstructible,
    is_leaf_reconstructible,
    is_phylo_deck_reconstructible,
    reconstruct_decomposable,
    reconstruct_from_quarnets,
    reconstruct_tree_from_deck,
    reconstruct_tree_two_cards,
    reconstruct_via_3chain,
    reconstruction_number,
    reconstructions_from_cards,
)

__version__ = "0.1.0"

__all__ = [
    "Blob",
    "CutEdge",
    "Deck",
    "delete_leaf",
    "edge_deck",
    "edge_delete",
    "edge_order",
    "phylo_deck",
    "phylo_delete_leaf",
    "quarnet_on",
    "quarnet_set",
    "u_deck",
    "x_deck",
    "canonical_code",
    "code_hex",
    "deck_equivalent",
    "dedup",
    "is_equivalent",
    "unlabeled_code",
    "Generator",
    "PseudoNetwork",
    "Split",
    "attach_leaf",
    "attach_leaf_at_vertex",
    "blobs",
    "cut_edges",
    "display_tree",
    "find_2_chains",
    "find_3_chains",
    "is_binary",
    "is_decomposable",
    "is_phylo_network",
    "is_simple",
    "is_tree",
    "level",
    "realize_placements",
    "reticulation_number",
    "splits",
    "suppress_all_degree2",
    "tree_median",
    "underlying_generator",
    "validate",
    "validate_phylo",
    "MemberResult",
    "Universe",
    "UniverseSpec",
    "VerificationReport",
    "enumerate_generators",
    "enumerate_networks",
    "enumerate_simple",
    "enumerate_trees",
    "verify_class",
    "ReconstructionReport",
    "attachments",
    "is_edge_reconstructible",
    "is_leaf_reconstructible",
    "is_phylo_deck_reconstructible",
    "reconstruct_decomposable",
    "reconstruct_from_quarnets",
    "reconstruct_tree_from_deck",
    "reconstruct_tree_two_cards",
    "reconstruct_via_3chain",
    "reconstruction_number",
    "reconstructions_from_cards",
    "__version__",
]
