"""Structure of subgroups of finite direct products.

Cores, touch classes, connected and cohesive decompositions, structural
isomorphisms between projection quotients, presentations by homomorphisms
and pullbacks, over groups stored as Cayley tables.
"""
from .decomposition import (Decomposition, cohesive_blocks, connected_components,
                            is_cohesive, is_connected, is_s_weakly_smashed, is_smashed,
                            lemma12_split)
from .errors import (HomomorphismError, InputError, NormalityError, PreconditionError,
                     ResourceError, SubdirectError, TheoremViolation)
from .goursat import (GoursatData, IsoSystem, SplitData, StructuralIso, block_system,
                      construct_from_goursat, construct_from_split, goursat_data,
                      naturality_check, pullback_construct, smashed_system, split_data,
                      structural_iso_split, structural_iso_two, trivialE_iso_system)
from .groups import (GroupTable, Homomorphism, QuotientGroup, SubgroupSet, closure, cosets,
                     enumerate_subgroups, extend_hom, hom, image, is_normal, kernel, quotient,
                     verify_iso)
from .presentation import (HomPresentation, PullbackData, canonical_presentation,
                           cor39_triple, cor41_smashed_check, example24_representation,
                           first_iso_check, from_pullback, is_terse, lemma35_verify, present,
                           prop30_quotients, prop40_split_check, tersify, to_pullback)
from .product import (E_subgroup, I_subgroup, L_subgroup, ProductGroup, ProductSubgroup,
                      core, core_as_ordered_product, direct_product, from_coords, generate,
                      project, touch_classes, variation_space)
from .dsl import SpecDocument, parse_spec

__version__ = "0.1.0"
