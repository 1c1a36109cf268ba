"""Free nilpotent groups of small class and rank, in Mal'cev coordinates."""

from .magnus import TruncatedSeries, magnus_evaluate
from .n23 import (
    IntMatrix2, N23Element, n23_apply_endomorphism, n23_axis_reduce, n23_commutator,
    n23_from_word, n23_invert, n23_inverting_matrix, n23_multiply, n23_power, n23_to_word,
    n23_verify_achirality_instance,
)
from .n32 import (
    N32Element, N32Quotient, check_moduli, default_moduli, n32_commutator, n32_from_word,
    n32_invert, n32_multiply, n32_power, n32_quotient_endomorphism_check, n32_to_word,
    n32_witness_element,
)
from .search import CongruenceCertificate, SearchResult, n32_congruence_certificate, n32_witness_search

__all__ = [
    "TruncatedSeries", "magnus_evaluate",
    "IntMatrix2", "N23Element", "n23_apply_endomorphism", "n23_axis_reduce", "n23_commutator",
    "n23_from_word", "n23_invert", "n23_inverting_matrix", "n23_multiply", "n23_power",
    "n23_to_word", "n23_verify_achirality_instance",
    "N32Element", "N32Quotient", "check_moduli", "default_moduli", "n32_commutator",
    "n32_from_word", "n32_invert", "n32_multiply", "n32_power", "n32_quotient_endomorphism_check",
    "n32_to_word", "n32_witness_element",
    "CongruenceCertificate", "SearchResult", "n32_congruence_certificate", "n32_witness_search",
]
