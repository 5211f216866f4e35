"""Exact computations with finite-support coloured symmetric sequences."""
from .arithprod import boxtimes, eta
from .compose import associator, kleisli_compose, left_unitor, right_unitor
from .gset import GSet, orbit_quotient, validate_gset
from .interchange import (Interchange, Report, check_normality, check_oplax_axioms,
                          find_noninvertible, interchange_tau, mutation_detected)
from .perm import ColourSet, Permutation, act_word, compose, inverse, theta
from .seqfile import SeqFileError, parse_seq, read_seq, serialize_seq, write_seq
from .species import (analytic_eval, composite_analytic_check, dwyer_hess_count, rectangle_oracle,
                      species_E, species_E2, species_L, species_X)
from .symseq import (SeqMorphism, SymSeq, SymSeqError, cardinality_table, check_morphism,
                     identity_seq, new_symseq, transport)

__version__ = "0.1.0"

__all__ = [
    "ColourSet", "GSet", "Interchange", "Permutation", "Report", "SeqFileError", "SeqMorphism",
    "SymSeq", "SymSeqError", "act_word", "analytic_eval", "associator", "boxtimes",
    "cardinality_table", "check_morphism", "check_normality", "check_oplax_axioms", "compose",
    "composite_analytic_check", "dwyer_hess_count", "eta", "find_noninvertible", "identity_seq",
    "interchange_tau", "inverse", "kleisli_compose", "left_unitor", "mutation_detected",
    "new_symseq", "orbit_quotient", "parse_seq", "read_seq", "rectangle_oracle", "right_unitor",
    "serialize_seq", "species_E", "species_E2", "species_L", "species_X", "theta", "transport",
    "validate_gset", "write_seq",
]
