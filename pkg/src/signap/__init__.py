"""Sign pattern matrices that allow algebraic positivity.

Structure checks on sign patterns, the block constructions that preserve
positive eigenvector pairs, a certified realization engine, and a
brute-force oracle for small orders.
"""
from .constructions import (Chord, Cycle, EarChord, EigenTriple, Plain,
                            SplitEntry, SplitTerminal, attach_cycle_negative,
                            attach_cycle_positive, contract_pair,
                            expand_component, split_leading_diagonal)
from .errors import (EngineInvariantBroken, InputError, NumericalFailure,
                     SignApError, VerdictError)
from .oracle import (conjecture_probe, enumerate_patterns, necessary_filter,
                     search_witness)
from .pattern import (Sign, SignPattern, parse_pattern, pattern_from_rows,
                      permute, plus_and_reversed_minus, sample_qualitative,
                      sign_of)
from .realizer import (Realization, realize, realize_zero_diagonal,
                       split_positive_diagonals, sufficient_condition_holds)
from .spectral import (Verdict, WitnessPolynomial, find_eigen_triple,
                       perturb_to_superpattern, realize_base_cycle,
                       verify_algebraic_positivity, witness_polynomial)
from .structure import (Digraph, color_arcs, digraph_of,
                        irreducible_components, is_ap_irreducible,
                        is_minimally_ap_irreducible, minimal_ap_subpattern,
                        nested_sequence)

__version__ = "0.1.0"

__all__ = [
    "Chord", "Cycle", "EarChord", "EigenTriple", "Plain", "SplitEntry", "SplitTerminal",
    "attach_cycle_negative", "attach_cycle_positive", "contract_pair",
    "expand_component", "split_leading_diagonal",
    "EngineInvariantBroken", "InputError", "NumericalFailure", "SignApError", "VerdictError",
    "conjecture_probe", "enumerate_patterns", "necessary_filter", "search_witness",
    "Sign", "SignPattern", "parse_pattern", "pattern_from_rows", "permute",
    "plus_and_reversed_minus", "sample_qualitative", "sign_of",
    "Realization", "realize", "realize_zero_diagonal", "split_positive_diagonals",
    "sufficient_condition_holds",
    "Verdict", "WitnessPolynomial", "find_eigen_triple", "perturb_to_superpattern",
    "realize_base_cycle", "verify_algebraic_positivity", "witness_polynomial",
    "Digraph", "color_arcs", "digraph_of", "irreducible_components",
    "is_ap_irreducible", "is_minimally_ap_irreducible", "minimal_ap_subpattern",
    "nested_sequence",
]
