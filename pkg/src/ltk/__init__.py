"""Exact computations with Leibniz triple systems over the rationals.

Submodules: linalg (exact rational linear algebra), triple (triple
systems and their identities), embedding (the standard graded embedding
and its reduction), roots (root space decompositions), connect
(connections of roots), decompose (the decomposition theorem), formats
(JSON interchange), catalogue (named example systems), cli.
"""

from .catalogue import CATALOGUE_NAMES, CatalogueEntry, catalogue
from .connect import (
    Lambda0NotSymmetric,
    NotARoot,
    NotRootSubsystem,
    RootPartition,
    connect,
    connected_set,
    equivalence_classes,
    is_root_subsystem,
    subsystem_of,
    verify_chain,
)
from .decompose import (
    ClassIdeal,
    DecompositionReport,
    DirectSumReport,
    LambdaNotSymmetric,
    class_ideal,
    complement_u,
    decompose,
    direct_sum_check,
    verify_connection_lemmas,
    xi0,
)
from .embedding import (
    GradedLeibnizAlgebra,
    MasaVerdict,
    QuotientNotClosed,
    ReducedEmbedding,
    action_kernel,
    bracket_radical,
    centralizer,
    masa_search,
    masa_verify,
    reduce,
    standard_embedding,
    verify_embedding,
)
from .formats import (
    ParseError,
    load_masa,
    load_system,
    parse_masa,
    parse_system,
    save_system,
    serialize_masa,
    serialize_system,
)
from .linalg import Subspace
from .roots import (
    NotSplit,
    Root,
    SplitStructure,
    right_action,
    root_decompose,
    verify_containments,
    verify_split,
)
from .triple import (
    LeibnizAlgebra,
    TripleSystem,
    annihilator,
    change_basis,
    direct_sum,
    from_leibniz,
    is_ideal,
    is_lie,
    is_simple,
    j_ideal,
    verify_derived_identity,
    verify_identities,
)

__version__ = "1.0.0"
