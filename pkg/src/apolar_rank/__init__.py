"""Ranks of homogeneous polynomials through apolarity and flat extensions."""

__version__ = "0.1.0"

from .apolarity import (GradedComponent, HilbertVector, apolar_component, colon_with_maximal,
                        derivative_closure, hilbert_function, inverse_system_dimension,
                        is_apolar)
from .catalecticant import (CatalecticantMatrix, build, catalecticant_rank, gamma_member,
                            rank_sequence)
from .errors import (ApolarError, ContainmentError, DegreeError, FlatExtensionError,
                     InconsistencyError, NotConnectedError, ParseError, PreconditionError,
                     RecoveryError)
from .flat import (FlatExtensionCertificate, MonomialSet, TruncatedFunctional, extend,
                   flat_test, greedy_basis, hankel, truncate)
from .hierarchy import (RankReport, SchemeBound, corpus_run, load_corpus, rank_report,
                        scheme_length_lower_bound, sylvester_binary_rank)
from .monomial import (EpsilonFamily, WaringDecomposition, separating_cubic_family, monomial_border_family,
                       monomial_border_size, monomial_rank, monomial_waring, verify)
from .parser import parse
from .polynomial import (DualElement, LinearForm, PointDiffTerm, Polynomial, apolar_product,
                         dual_of, primal_of)
from .recovery import GeneralizedDecomposition, recover, verify_generalized
from .scalars import Cyclotomic
from .search import SearchResult, extension_rank_search

__all__ = [
    "ApolarError", "CatalecticantMatrix", "ContainmentError", "Cyclotomic", "DegreeError",
    "DualElement", "EpsilonFamily", "FlatExtensionCertificate", "FlatExtensionError",
    "GeneralizedDecomposition", "GradedComponent", "HilbertVector", "InconsistencyError",
    "LinearForm", "MonomialSet", "NotConnectedError", "ParseError", "PointDiffTerm",
    "Polynomial", "PreconditionError", "RankReport", "RecoveryError", "SchemeBound",
    "SearchResult", "TruncatedFunctional", "WaringDecomposition", "apolar_component",
    "apolar_product", "build", "catalecticant_rank", "colon_with_maximal", "corpus_run",
    "derivative_closure", "dual_of", "extend", "extension_rank_search", "flat_test",
    "gamma_member", "greedy_basis", "hankel", "hilbert_function", "inverse_system_dimension",
    "is_apolar", "separating_cubic_family", "load_corpus", "monomial_border_family",
    "monomial_border_size", "monomial_rank", "monomial_waring", "parse", "primal_of",
    "rank_report", "rank_sequence", "recover", "scheme_length_lower_bound",
    "sylvester_binary_rank", "truncate", "verify", "verify_generalized",
]
