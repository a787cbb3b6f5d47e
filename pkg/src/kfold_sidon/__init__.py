"""Constructions, verifiers, bounds and exhaustive search for k-fold Sidon sets."""

__version__ = "0.1.0"

from .bounds import BoundReport, check_lemma21, diff_counts, group_bound, sidon_zn_bound, thm12_bound
from .construct import (
    ConstructionParams,
    CycleDecomposition,
    bose_chowla,
    cycle_decompose,
    lindstrom,
    prune,
    short_cycle_bound,
    theorem14_construct,
)
from .equations import InvariantEquation, dilate_equation, enumerate_kfold_equations, genus, is_trivial_solution
from .ring_field import GaloisField, factorize, field_mul, field_pow, find_generator, find_irreducible
from .search import SearchResult, SearchTask, greedy_seed, max_set
from .verify import ResidueSet, Violation, verify_dilate_family, verify_dilate_family_oracle, verify_kfold
