"""Reversible Watson-Crick automata: modelling, reversibility checks,
simulation, constructions and bounded language comparison."""

from .analyze import (ComplexityRow, EquivReport, bounded_equiv, complexity_table,
                      indegree_audit, words_upto)
from .construct import (gen_lk_corrected, gen_lk_verbatim, lk_member, nfa_to_wka_repaired,
                        nfa_to_wka_verbatim, transition_order)
from .model import (LEFT, RIGHT, ComplementarityRelation, MachineError, Marker, Nfa, RevWka,
                    complements, is_strongly_reversible, validate_nfa, validate_wka)
from .reversibility import (Violation, check_backward_determinism, check_move_uniformity,
                            validate_reversible)
from .simulate import (SimConfig, accepts, accepts_exhaustive, config_graph, enumerate_complements,
                       lazy_successors, nfa_accepts, run_fixed)

__version__ = "0.1.0"
