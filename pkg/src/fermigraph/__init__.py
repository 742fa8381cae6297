"""Spectral graph theory of strongly repulsive 1D fermionic mixtures.

The strong-coupling spin-chain matrix of a mixture ``nu`` is the Laplacian of
the weighted Schreier graph ``X(S_nu ⊂ S_N, S_C)``.  This package builds those
graphs, resolves their spectra by symmetry class with Young's orthogonal form,
and computes the gap of the full ``N!``-vertex problem from an ``N x N`` path
Laplacian.
"""

__version__ = "0.1.0"

from .combinatorics import (Partition, Tableau, conjugate, dominates, irrep_dimension, kostka_number,
                            partitions_of, semistandard_tableaux, standard_tableaux)
from .graph import (WeightedGraph, WeightedSchreierGraph, build_graph, cartesian_product, degree_profile,
                    export_graph, import_graph_json, is_bipartite)
from .irreps import (IrrepBlock, block_spectrum, classify_eigenvector, mixture_spectrum_by_symmetry,
                     young_orthogonal_block)
from .physics import (ContactReport, energy_at, ground_state, interchange_walk, lieb_mattis_table,
                      sign_flip_vector)
from .snippets import (Perm, Snippet, SnippetSpace, adjacent_swap, coset_representative, coset_sign,
                       enumerate_snippets, perm_sign)
from .spectral import (SpectrumMultiset, box_gap, extremal_eigenvalues, full_spectrum, hook_eigenvalues,
                       path_spectrum, spectral_gap)
from .weights import (WeightSet, box_weights, load_weights, random_weights, save_weights, uniform_weights)

__all__ = [
    "ContactReport", "IrrepBlock", "Partition", "Perm", "Snippet", "SnippetSpace", "SpectrumMultiset", "Tableau",
    "WeightSet", "WeightedGraph", "WeightedSchreierGraph", "adjacent_swap", "block_spectrum", "box_gap",
    "box_weights", "build_graph", "cartesian_product", "classify_eigenvector", "conjugate", "coset_representative",
    "coset_sign", "degree_profile", "dominates", "energy_at", "enumerate_snippets", "export_graph",
    "extremal_eigenvalues", "full_spectrum", "ground_state", "hook_eigenvalues", "import_graph_json",
    "interchange_walk", "irrep_dimension", "is_bipartite", "kostka_number", "lieb_mattis_table", "load_weights",
    "mixture_spectrum_by_symmetry", "partitions_of", "path_spectrum", "perm_sign", "random_weights",
    "save_weights", "semistandard_tableaux", "sign_flip_vector", "spectral_gap", "standard_tableaux",
    "uniform_weights", "young_orthogonal_block",
]
