"""Finite Bol magmas, Bol loops and strongly right alternative rings as Cayley tables."""

from ._accel import backend, set_backend, use_backend
from .errors import (BolmagError, BudgetExceeded, FormatError, InvalidRing, NoNeutral, NonUniqueInverse,
                     NotAlternative, NotBol, NotClosed, NotInvertible, NotStronglyRightAlternative,
                     NoUnity, TheoremViolation)
from .magma import (CayleyTable, InvertibleSet, PropertyReport, Translation, check_flexible,
                    check_moufang, check_right_bol, closure_defect, compose, find_neutral,
                    invertible_set, is_loop, jloop, left_translation, lemma_lr_check, power,
                    product_right_inverse, right_translation, torsion_witness,
                    verify_left_product_inverse, verify_translation_lemmas)
from .ring import (FinRing, check_left_alternative, check_right_alternative,
                   check_strongly_right_alternative, circle_magma, moufang_corollary_check,
                   quasiregular_bol_loop, quasiregular_set, residue_ring, unit_bol_loop, units,
                   validate_ring, zero_ring, zorn_gf2)
from .search import (SearchResult, SearchSpec, canonical_form, enumerate_structures, hunt_conjecture,
                     hunt_separating_rings, verify_corpus)

__version__ = "0.1.0"
