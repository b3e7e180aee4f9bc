"""Exact computation with finite Godel algebras and their natural and Esakia duals."""

from .algebra import (Chain, GodelAlgebra, Homomorphism, TwoHom, adjoin_bottom, algebra_iso, gamma,
                      heyting_from_lattice, hom_set, homomorphisms, hu_dual, iota, make_chain,
                      omega_compose, product_algebra, trivial_algebra, variety_index, vk_algebra)
from .constructions import (AmalgamCertificate, VFormation, admits_amalgamation, coproduct_in_G,
                            coproduct_in_Gn, find_failing_vformation, free_algebra, fullness_witness,
                            is_embedding_dual, pushout)
from .errors import (GodelError, InputError, InternalInconsistency, NotGodelError, ResourceError,
                     StructuralError, VarietyError)
from .natural import (DualStructure, PartialOp, SigmaSignature, StructureMorphism, all_signatures,
                      check_duality, closed_substructures, dual_map, dual_space, endos, evaluate_E,
                      partial_endos, power_structure, product_structure, structure_iso)
from .poset import Forest, Poset, enumerate_forests, iso_check
from .translation import F_sigma, F_sigma_morphism, G_sigma, cover_classes, roundtrip_check, sim_classes

__version__ = "0.1.0"

__all__ = [
    "Chain", "GodelAlgebra", "Homomorphism", "TwoHom", "adjoin_bottom", "algebra_iso", "gamma",
    "heyting_from_lattice", "hom_set", "homomorphisms", "hu_dual", "iota", "make_chain",
    "omega_compose", "product_algebra", "trivial_algebra", "variety_index", "vk_algebra",
    "AmalgamCertificate", "VFormation", "admits_amalgamation", "coproduct_in_G", "coproduct_in_Gn",
    "find_failing_vformation", "free_algebra", "fullness_witness", "is_embedding_dual", "pushout",
    "GodelError", "InputError", "InternalInconsistency", "NotGodelError", "ResourceError",
    "StructuralError", "VarietyError", "DualStructure", "PartialOp", "SigmaSignature",
    "StructureMorphism", "all_signatures", "check_duality", "closed_substructures", "dual_map",
    "dual_space", "endos", "evaluate_E", "partial_endos", "power_structure", "product_structure",
    "structure_iso", "Forest", "Poset", "enumerate_forests", "iso_check", "F_sigma",
    "F_sigma_morphism", "G_sigma", "cover_classes", "roundtrip_check", "sim_classes",
]
