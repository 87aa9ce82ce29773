"""Sparse directed-graph reductions for cardinality-based hypergraph cuts."""
from .cooc import CoocInstance, cooc_cut_value, gen_powerlaw, sparsify_complete, sparsify_cooc
from .dsfm import DSFMInstance, Solution, a_posteriori_ratio, evaluate_f, sparse_card
from .flownet import FlowNetwork, MinCutResult, directed_cut_value, max_flow_min_cut
from .gadget import augmented_cut_acb, augmented_cut_cb, expand_ccb, expand_kcg
from .plcover import (CCBParams, KCGParams, Line, PLCover, clique_cover, cover_to_ccb, cover_to_kcg,
                      find_best_cover, find_next, gscb_cover)
from .reduce import (AugmentedGraph, HyperEdge, Hypergraph, augmented_cut, build_sparsifier,
                     build_st_network, hypergraph_cut)
from .splitting import (GSCBFunction, SCBFunction, SplittingSpec, ValidationError, evaluate,
                        materialize_gscb, materialize_scb, parse_spec)

__version__ = "0.1.0"
