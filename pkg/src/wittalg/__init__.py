"""Exact computations in the Witt algebra W and the one-sided Witt algebra.

The main entry points are re-exported here; see the submodules for the rest.
"""

from .derivations import (associated_graded_derivation, derivation_space, graded_derivation_space,
                          h1_dim, h1_formula, verify_relation)
from .errors import DomainError, ParseError, VerificationFailure, WindowExhausted, WittError
from .exact import LaurentPoly, Poly
from .extensions import (Character, classify_characters, embed_extension, extension_bracket,
                         extension_chain)
from .isomorphism import (Automorphism, IsoWitness, NoRationalWitness, NotIsomorphic,
                          apply_automorphism, automorphism_group, decide_isomorphic,
                          transport_subalgebra)
from .lfg import (LfgAlgebra, base_f_expansion, ideal_generator, lfg_contains, lfg_derivation_space,
                  lfg_iso, minimal_g)
from .subalgebra import (FinCodimSubalgebra, derived_series_term, from_generators, from_sandwich,
                         is_submodule_check, normalizer, parse_subalgebra, submodule, w_geq)
from .witt import ONE_SIDED, TWO_SIDED, AlgebraKind, GradedWindow, WittElement, bracket, e

__version__ = "0.1.0"
