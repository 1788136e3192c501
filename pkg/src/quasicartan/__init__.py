"""Exact-arithmetic toolkit for quiver mutation and quasi-Cartan companions."""

from .companion import (Companion, CompanionBasis, Inertia, enumerate_fully_compatible,
                        flip_sign, gram, gram_companion, inertia, is_admissible,
                        is_companion, is_fully_compatible, is_k_compatible,
                        is_positive_semidefinite, lift_basis, make_vector,
                        mutate_companion, reflect_basis, sign_equivalent,
                        sign_normal_form)
from .mutclass import (CapExceeded, MutationClassReport, certify_symmetric_twin,
                       enumerate_class, is_mutation_finite)
from .quiver import (ChordlessCycle, Quiver, canonical_form, canonical_perms,
                     chordless_cycles, is_isomorphic, mutate_quiver, mutate_sequence,
                     quiver_from_arrows, subquiver)
from .surface import (SurfaceSpec, Triangulation, admissible_companion_basis,
                      build_triangulation, flip, flip_sequence,
                      naive_companion_basis, quiver_from_triangulation)
from .weyl import (ReflectionRep, RelationInstance, build_rep, find_relation_instances,
                   reflection_matrix, verify_relations, word_order)

__version__ = "0.1.0"
